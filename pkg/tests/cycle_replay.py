"""Exhaustive residual-cover sweeps for the cycle-with-chords procedure.

A configuration is a cycle ``x1..xm`` (vertices ``1..m``) plus chords from
``x1`` to interior vertices.  Lists sit exactly at the procedure's
thresholds: three colors on ``x1`` and on chord endpoints, two elsewhere.
Colors come from ``{0, 1, 2, 3}``.

Every cross matching on every cycle edge and chord is tried.  When the
product of all partial matchings is too large, only maximal matchings
(saturating the smaller fiber) are enumerated; a transversal-finding
procedure that succeeds against a maximal matching faces at least the same
constraints in every sub-matching, and the procedure's per-step guarantee
(enough colors left after removing matched partners) is monotone in the
matching.
"""

from itertools import combinations, product
from math import prod

from dpkit.cover import Cover, ResidualResult
from dpkit.plane_graph import edge_key

from helpers import full_matchings, partial_matchings

PARTIAL_LIMIT = 200_000


def configurations(max_m=6, max_chords=2):
    """Yield ``(cycle, chord_endpoints)``."""
    for m in range(1, max_m + 1):
        cycle = tuple(range(1, m + 1))
        interior = cycle[2:-1]
        for r in range(0, max_chords + 1):
            for ends in combinations(interior, r):
                yield cycle, ends


def threshold_lists(cycle, ends):
    if len(cycle) == 1:
        return {cycle[0]: frozenset({0})}
    x1 = cycle[0]
    return {x: frozenset(range(3 if x == x1 or x in ends else 2)) for x in cycle}


def config_edges(cycle, ends):
    m = len(cycle)
    if m == 1:
        return []
    if m == 2:
        return [edge_key(cycle[0], cycle[1])]
    es = [edge_key(cycle[i], cycle[(i + 1) % m]) for i in range(m)]
    es += [edge_key(cycle[0], y) for y in ends]
    return es


def matching_options(lists, edges, mode):
    fn = partial_matchings if mode == "partial" else full_matchings
    return [fn(lists[u], lists[v]) for u, v in edges]


def sweep_mode(cycle, ends):
    lists = threshold_lists(cycle, ends)
    edges = config_edges(cycle, ends)
    size = prod(len(o) for o in matching_options(lists, edges, "partial"))
    return "partial" if size <= PARTIAL_LIMIT else "maximal"


def residual_covers(cycle, ends, mode=None):
    """Every residual instance of one configuration, as ResidualResult."""
    mode = mode or sweep_mode(cycle, ends)
    lists = threshold_lists(cycle, ends)
    edges = config_edges(cycle, ends)
    for combo in product(*matching_options(lists, edges, mode)):
        h = Cover(lists, dict(zip(edges, combo)))
        yield ResidualResult(lists, h)


def instance_count(cycle, ends, mode=None):
    mode = mode or sweep_mode(cycle, ends)
    lists = threshold_lists(cycle, ends)
    return prod(len(o) for o in matching_options(lists, config_edges(cycle, ends), mode))
