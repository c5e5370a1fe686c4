"""Clustering of similarity edges into clone classes / clone groups.

Two modes: Components (connected components of the pair graph, the practical
default) and Cliques (exact maximal-clique semantics, for small inputs and
verification).
"""

import enum
from dataclasses import dataclass

from .errors import CliqueGuardError

CLIQUE_EDGE_LIMIT = 10_000


class ClusteringMode(enum.Enum):
    COMPONENTS = "components"
    CLIQUES = "cliques"


@dataclass(frozen=True)
class CloneCluster:
    members: tuple
    mode: ClusteringMode

    def __post_init__(self):
        if len(self.members) < 2:
            raise ValueError("a clone class needs at least 2 members")

    def __len__(self):
        return len(self.members)


def _edges(pairs):
    """Accept ClonePair-likes (a, b attrs) or 2-tuples."""
    for p in pairs:
        if hasattr(p, "a"):
            yield p.a, p.b
        else:
            yield p[0], p[1]


def _connected_components(edges):
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b in edges:
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    components = {}
    for node in parent:
        components.setdefault(find(node), []).append(node)
    return [sorted(members) for members in components.values()]


def _maximal_cliques(edges):
    adjacency = {}
    edge_count = 0
    for a, b in edges:
        if b not in adjacency.setdefault(a, set()):
            edge_count += 1
        adjacency[a].add(b)
        adjacency.setdefault(b, set()).add(a)
    if edge_count > CLIQUE_EDGE_LIMIT:
        raise CliqueGuardError(
            f"{edge_count} edges exceeds the clique-enumeration limit of "
            f"{CLIQUE_EDGE_LIMIT}; use Components mode"
        )

    cliques = []

    def expand(current, candidates, excluded):
        # Bron-Kerbosch with pivoting
        if not candidates and not excluded:
            if len(current) >= 2:
                cliques.append(sorted(current))
            return
        pivot = max(candidates | excluded, key=lambda v: len(adjacency[v] & candidates))
        for v in sorted(candidates - adjacency[pivot]):
            expand(
                current | {v},
                candidates & adjacency[v],
                excluded & adjacency[v],
            )
            candidates = candidates - {v}
            excluded = excluded | {v}

    if adjacency:
        expand(frozenset(), set(adjacency), set())
    return cliques


def cluster_pairs(pairs, mode=ClusteringMode.COMPONENTS) -> list:
    """Cluster similarity edges; returns CloneClusters sorted by smallest member."""
    if isinstance(mode, str):
        mode = ClusteringMode(mode.lower())
    edges = list(_edges(pairs))
    if mode is ClusteringMode.COMPONENTS:
        raw = _connected_components(edges)
    else:
        raw = _maximal_cliques(edges)
    raw.sort()
    return [CloneCluster(tuple(members), mode) for members in raw]


# Clone classes (source fragments) and clone groups (asset files) share the
# same clustering semantics.
cluster_clone_classes = cluster_pairs
cluster_clone_groups_edges = cluster_pairs
