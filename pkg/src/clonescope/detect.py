"""Clone pair detection over normalized fragments for the six configurations."""

import enum
import itertools
from collections import defaultdict
from dataclasses import dataclass, field

from .normalize import Renaming
from .similarity import fragment_similarity

DEFAULT_DISSIMILARITY = 0.3
DEFAULT_MIN_LINES = 10
DEFAULT_MAX_LINES = 2500


class CloneType(enum.Enum):
    T1 = "t1"
    T2 = "t2"
    T2C = "t2c"
    T3_1 = "t3-1"
    T3_2 = "t3-2"
    T3_2C = "t3-2c"


_RENAMING_BY_TYPE = {
    CloneType.T1: Renaming.NONE,
    CloneType.T2: Renaming.BLIND,
    CloneType.T2C: Renaming.CONSISTENT,
    CloneType.T3_1: Renaming.NONE,
    CloneType.T3_2: Renaming.BLIND,
    CloneType.T3_2C: Renaming.CONSISTENT,
}

_NEAR_MISS_TYPES = {CloneType.T3_1, CloneType.T3_2, CloneType.T3_2C}


@dataclass(frozen=True)
class DetectionConfig:
    """One of the six detection configurations.

    Renaming mode is fixed by the clone type; the dissimilarity threshold is
    0 for exact types and configurable (default 0.3) for near-miss types.
    """

    clone_type: CloneType
    dissimilarity_threshold: float = field(default=None)
    min_lines: int = DEFAULT_MIN_LINES
    max_lines: int = DEFAULT_MAX_LINES

    def __post_init__(self):
        if isinstance(self.clone_type, str):
            object.__setattr__(self, "clone_type", CloneType(self.clone_type.lower()))
        if self.dissimilarity_threshold is None:
            default = DEFAULT_DISSIMILARITY if self.is_near_miss else 0.0
            object.__setattr__(self, "dissimilarity_threshold", default)
        if self.is_near_miss:
            if not 0.0 < self.dissimilarity_threshold <= 1.0:
                raise ValueError("near-miss dissimilarity threshold must be in (0, 1]")
        elif self.dissimilarity_threshold != 0.0:
            raise ValueError(f"{self.clone_type.value} requires dissimilarity 0")

    @property
    def is_near_miss(self):
        return self.clone_type in _NEAR_MISS_TYPES

    @property
    def renaming(self) -> Renaming:
        return _RENAMING_BY_TYPE[self.clone_type]

    @property
    def similarity_threshold(self) -> float:
        return 1.0 - self.dissimilarity_threshold


@dataclass(frozen=True)
class ClonePair:
    a: str
    b: str
    similarity: float

    def __post_init__(self):
        if self.a >= self.b:
            raise ValueError("pair endpoints must satisfy a < b")


def detect_clone_pairs(frags, config: DetectionConfig) -> list:
    """All unordered fragment pairs exceeding the config's similarity bound.

    Exact types (dissimilarity 0) pair fragments whose normalized line
    sequences are identical; near-miss types pair fragments with
    similarity strictly greater than 1 - dissimilarity. Output sorted by
    (a, b); a fragment never pairs with itself.
    """
    from collections import Counter

    frags = sorted(frags, key=lambda f: f.fragment_id)
    groups = defaultdict(list)
    for f in frags:
        groups[f.lines].append(f)
    distinct = list(groups.items())

    pairs = []
    for _, members in distinct:
        for fa, fb in itertools.combinations(members, 2):
            pairs.append(ClonePair(fa.fragment_id, fb.fragment_id, 1.0))

    if config.is_near_miss:
        tau = config.similarity_threshold
        counters = [Counter(lines) for lines, _ in distinct]
        for i, j in itertools.combinations(range(len(distinct)), 2):
            la, lb = len(distinct[i][0]), len(distinct[j][0])
            longest = max(la, lb)
            if longest == 0 or min(la, lb) / longest <= tau:
                continue
            # LCS length never exceeds the multiset intersection of the lines
            shared = sum((counters[i] & counters[j]).values())
            if shared / longest <= tau:
                continue
            sim = fragment_similarity(distinct[i][1][0], distinct[j][1][0])
            if sim > tau:
                for fa in distinct[i][1]:
                    for fb in distinct[j][1]:
                        a, b = sorted((fa.fragment_id, fb.fragment_id))
                        pairs.append(ClonePair(a, b, sim))
    pairs.sort(key=lambda p: (p.a, p.b))
    return pairs
