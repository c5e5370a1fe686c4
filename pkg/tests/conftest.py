"""Shared fixtures: synthetic C# corpora with planted clones of known types."""

import random

import pytest

from clonescope.ingest import Language, SourceUnit


def make_function(name, var, acc, literals):
    """A C# function whose body statements carry the given literals.

    Normalized line count is len(literals) + 3 (header, statements, return,
    closing brace).
    """
    lines = [f"int {name}(int {var}) {{", f"    int {acc} = {literals[0]};"]
    for lit in literals[1:]:
        lines.append(f"    {acc} += {var} * {lit};")
    lines.append(f"    return {acc};")
    lines.append("}")
    return "\n".join(lines)


class PlantedCorpus:
    """Builds fragments with known clone relations.

    Every base uses a disjoint range of integer literals, so distinct bases
    never pair accidentally, even under blind renaming.
    """

    def __init__(self, statements_per_function=17):
        self.statements = statements_per_function
        self.sources = []
        self._next_literal = 10_000
        self._counter = 0

    @property
    def normalized_size(self):
        return self.statements + 3

    def _literals(self, n=None):
        n = n or self.statements
        lits = list(range(self._next_literal, self._next_literal + n))
        self._next_literal += n + 100
        return lits

    def _add(self, name, var, acc, literals):
        self._counter += 1
        path = f"src/f{self._counter:04d}.cs"
        self.sources.append(
            (path, make_function(name, var, acc, literals))
        )
        return path, literals

    def add_base(self):
        lits = self._literals()
        return self._add(f"fn{lits[0]}", "v", "acc", lits)

    def add_exact_copy(self, literals):
        # same identifiers, same literals, different file
        return self._add(f"fn{literals[0]}", "v", "acc", literals)[0]

    def add_renamed_copy(self, literals):
        # consistent renaming of every identifier
        return self._add(f"g{literals[0]}", "w", "total", literals)[0]

    def add_edited_copy(self, literals, changed):
        # replace `changed` statement literals with fresh ones; identifiers and
        # the header line stay intact, so similarity is exactly (N - changed) / N
        fresh = self._literals(changed)
        edited = list(literals)
        for idx in range(changed):
            edited[idx] = fresh[idx]
        return self._add(f"fn{literals[0]}", "v", "acc", edited)[0]

    def units(self):
        return [SourceUnit(path, Language.CSHARP, text) for path, text in self.sources]


def make_swapped_pair_source():
    """Two functions identical under blind renaming but not under consistent:
    the second uses its parameters in swapped order."""
    a = "int fswap(int a, int b) {\n"
    b = "int gswap(int c, int d) {\n"
    body_a = ["    int r = a + b;"] + [f"    r += a * {i};    r -= b * {i};" for i in range(9)]
    body_b = ["    int r = d + c;"] + [f"    r += c * {i};    r -= d * {i};" for i in range(9)]
    a += "\n".join(body_a) + "\n    return r;\n}"
    b += "\n".join(body_b) + "\n    return r;\n}"
    return a, b


def random_planted_corpus(seed, min_fragments=100):
    """A randomized corpus mixing exact, renamed, swapped-usage and edited
    variants; used by the subsumption property suite."""
    rng = random.Random(seed)
    corpus = PlantedCorpus(statements_per_function=rng.randint(10, 24))
    while corpus._counter < min_fragments:
        _, lits = corpus.add_base()
        for _ in range(rng.randint(0, 3)):
            kind = rng.choice(["exact", "renamed", "edited"])
            if kind == "exact":
                corpus.add_exact_copy(lits)
            elif kind == "renamed":
                corpus.add_renamed_copy(lits)
            else:
                corpus.add_edited_copy(lits, rng.randint(1, corpus.statements))
    swapped_a, swapped_b = make_swapped_pair_source()
    units = corpus.units()
    units.append(SourceUnit("src/swap_a.cs", Language.CSHARP, swapped_a))
    units.append(SourceUnit("src/swap_b.cs", Language.CSHARP, swapped_b))
    return units


@pytest.fixture
def planted_corpus():
    return PlantedCorpus()
