"""The metric suite: NCF/NCC/rcf/rcc for source clones, NCA/NCG/rca/rcg/CI
for asset clones, plus clone class / group size distributions.

Ratios are carried as exact rationals and rendered as percentages with two
decimals, rounding half up.
"""

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, getcontext
from fractions import Fraction

from .errors import UndefinedMetricError

getcontext().prec = 50

CLASS_SIZE_BUCKETS = ("2", "[3,10]", "[11,100]", ">100")


def percent(value, decimals=2) -> str:
    """Render a ratio as a percentage string, round-half-up."""
    if isinstance(value, Fraction):
        dec = Decimal(value.numerator) * 100 / Decimal(value.denominator)
    else:
        dec = Decimal(repr(float(value))) * 100
    quantum = Decimal(1).scaleb(-decimals)
    return f"{dec.quantize(quantum, rounding=ROUND_HALF_UP)}%"


@dataclass(frozen=True)
class SourceCloneMetrics:
    clone_type: str
    ncf: int
    ncc: int
    total_functions: int
    rcf: Fraction
    rcc: Fraction

    @property
    def rcf_percent(self):
        return percent(self.rcf)

    @property
    def rcc_percent(self):
        return percent(self.rcc)


@dataclass(frozen=True)
class AssetCloneMetrics:
    nca: int
    ncg: int
    total_assets: int
    rca: Fraction
    rcg: Fraction
    ci: float
    group_size_buckets: dict

    @property
    def rca_percent(self):
        return percent(self.rca)

    @property
    def rcg_percent(self):
        return percent(self.rcg)

    @property
    def ci_percent(self):
        return percent(self.ci)


@dataclass(frozen=True)
class SizeDistribution:
    buckets: tuple  # ordered (label, count) pairs
    total: int

    def as_dict(self):
        return dict(self.buckets)


def clone_function_count(pairs) -> int:
    """NCF: distinct fragments appearing as an endpoint of any clone pair."""
    endpoints = set()
    for p in pairs:
        endpoints.add(p.a)
        endpoints.add(p.b)
    return len(endpoints)


def compute_source_metrics(classes, pairs, total_functions, clone_type="") -> SourceCloneMetrics:
    if total_functions == 0:
        raise UndefinedMetricError("rcf/rcc undefined with zero functions")
    ncf = clone_function_count(pairs)
    ncc = len(classes)
    return SourceCloneMetrics(
        clone_type=str(clone_type),
        ncf=ncf,
        ncc=ncc,
        total_functions=total_functions,
        rcf=Fraction(ncf, total_functions),
        rcc=Fraction(ncc, total_functions),
    )


def compute_asset_metrics(groups, clone_files, records, total_assets,
                          ordered_pair_sum=False) -> AssetCloneMetrics:
    from .assets import clone_index, group_size_buckets

    if total_assets == 0:
        raise UndefinedMetricError("rca/rcg undefined with zero asset files")
    nca = len(clone_files)
    ncg = len(groups)
    return AssetCloneMetrics(
        nca=nca,
        ncg=ncg,
        total_assets=total_assets,
        rca=Fraction(nca, total_assets),
        rcg=Fraction(ncg, total_assets),
        ci=clone_index(records, total_assets, ordered_pair_sum=ordered_pair_sum),
        group_size_buckets=group_size_buckets(groups),
    )


def class_size_distribution(classes) -> SizeDistribution:
    """Bucket clone class sizes into {2, [3,10], [11,100], >100}."""
    classes = list(classes)
    counts = {label: 0 for label in CLASS_SIZE_BUCKETS}
    for c in classes:
        size = len(c)
        if size == 2:
            counts["2"] += 1
        elif size <= 10:
            counts["[3,10]"] += 1
        elif size <= 100:
            counts["[11,100]"] += 1
        else:
            counts[">100"] += 1
    return SizeDistribution(
        buckets=tuple((label, counts[label]) for label in CLASS_SIZE_BUCKETS),
        total=len(classes),
    )
