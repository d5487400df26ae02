"""Transversal search, DP-k-colorability and the reducibility colorings.

``find_transversal`` is a plain backtracking search with forward checking.
``is_dp_k_colorable`` runs it over every normalized full cover of a graph
(or over a random sample when the family is too large).  ``lemma3_color``
is the explicit coloring procedure for a cycle with chords from one vertex
under residual list-size bounds; it never searches.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from dpkit.cover import (
    Cover,
    CoverEnumeration,
    ResidualResult,
    Transversal,
    cover_from_permutations,
    random_assignment,
)
from dpkit.plane_graph import edge_key, vkey

YES, NO, UNKNOWN = "Yes", "No", "Unknown"


class Lemma3PreconditionError(ValueError):
    """Residual list sizes or structure do not meet the procedure's thresholds."""


class UnreachableError(RuntimeError):
    """The coloring procedure got stuck; this would refute its correctness argument."""


@dataclass
class SearchStats:
    nodes: int = 0
    searches: int = 0


@dataclass
class Verdict:
    status: str
    witness: Cover | None = None
    covers_checked: int = 0
    total_covers: int = 0
    truncated: bool = False
    sampled: int | None = None
    searches: int = 0
    nodes_expanded: int = 0

    def to_dict(self) -> dict:
        from dpkit.io import cover_to_dict

        out = {
            "status": self.status,
            "covers_checked": self.covers_checked,
            "total_covers": self.total_covers,
            "truncated": self.truncated,
            "searches": self.searches,
            "nodes_expanded": self.nodes_expanded,
        }
        if self.sampled is not None:
            out["sampled"] = self.sampled
        if self.witness is not None:
            out["witness"] = cover_to_dict(self.witness)
        return out


def find_transversal(h: Cover, stats: SearchStats | None = None) -> Transversal | None:
    """An independent transversal of ``h``, or ``None`` if there is none.

    Deterministic: the next fiber is the one with fewest remaining colors
    (ties by vertex id), colors are tried in ascending order, and each pick
    removes its matched partners from the unpicked fibers.
    """
    stats = stats if stats is not None else SearchStats()
    stats.searches += 1
    if any(not cs for cs in h.lists.values()):
        return None
    verts = sorted(h.lists, key=vkey)
    domains = {v: set(h.lists[v]) for v in verts}
    partners = h.partners
    picks: dict = {}

    def extend() -> bool:
        if len(picks) == len(verts):
            return True
        v = min((u for u in verts if u not in picks), key=lambda u: (len(domains[u]), vkey(u)))
        for c in sorted(domains[v]):
            stats.nodes += 1
            removed = []
            dead = False
            for w, b in partners.get((v, c), ()):
                if w != v and w not in picks and b in domains[w]:
                    domains[w].discard(b)
                    removed.append((w, b))
                    if not domains[w]:
                        dead = True
            if not dead:
                picks[v] = c
                if extend():
                    return True
                del picks[v]
            for w, b in removed:
                domains[w].add(b)
        return False

    return Transversal(dict(picks)) if extend() else None


class _CachedSolver:
    """Decides solvability of covers from one enumeration family.

    All covers of the family agree on the tree edges, so a transversal found
    for one cover stays valid for another unless it collides on a free edge.
    Recent transversals are re-checked first and a fresh search only runs
    when none of them fits.
    """

    def __init__(self, enum: CoverEnumeration, stats: SearchStats, size: int = 16):
        self.enum = enum
        self.stats = stats
        self.cache: deque = deque(maxlen=size)

    def cover(self, combo) -> Cover:
        return cover_from_permutations(self.enum.graph, self.enum.k, dict(zip(self.enum.free, combo)))

    def solvable(self, combo) -> bool:
        free = self.enum.free
        for i, picks in enumerate(self.cache):
            for (u, v), p in zip(free, combo):
                if p[picks[u]] == picks[v]:
                    break
            else:
                if i:
                    del self.cache[i]
                    self.cache.appendleft(picks)
                return True
        t = find_transversal(self.cover(combo), self.stats)
        if t is None:
            return False
        self.cache.appendleft(t.picks)
        return True


def is_dp_k_colorable(g, k: int, budget: int = 10**6, samples: int = 1000, seed: int = 0) -> Verdict:
    """Decide DP-k-colorability of ``g`` by exhausting its normalized full covers.

    Returns ``Yes`` when all ``k!**(|E|-|V|+1)`` covers have a transversal,
    ``No`` with the first failing cover as witness, and ``Unknown`` when the
    family exceeds ``budget``; in that case ``samples`` random covers are
    tried instead and a failure among them still yields ``No``.
    """
    enum = CoverEnumeration(g, k, budget)
    stats = SearchStats()
    solver = _CachedSolver(enum, stats)
    verdict = Verdict(UNKNOWN, total_covers=enum.total, truncated=enum.truncated)

    if not enum.truncated:
        for combo in enum.assignments():
            verdict.covers_checked += 1
            if not solver.solvable(combo):
                verdict.status = NO
                verdict.witness = solver.cover(combo)
                break
        else:
            verdict.status = YES
    else:
        rng = random.Random(seed)
        verdict.sampled = 0
        for _ in range(samples):
            combo = random_assignment(enum.free, k, rng)
            verdict.sampled += 1
            verdict.covers_checked += 1
            if not solver.solvable(combo):
                verdict.status = NO
                verdict.witness = solver.cover(combo)
                break
    verdict.searches = stats.searches
    verdict.nodes_expanded = stats.nodes
    return verdict


# ---------------------------------------------------------------------------
# Cycle-with-chords coloring
# ---------------------------------------------------------------------------


def _chord_endpoints(x1, chords) -> set:
    ends = set()
    for ch in chords:
        if isinstance(ch, (tuple, list)) and len(ch) == 2:
            a, b = ch
            if x1 not in (a, b):
                raise Lemma3PreconditionError(f"chord {ch!r} does not start at {x1!r}")
            ends.add(b if a == x1 else a)
        else:
            ends.add(ch)
    return ends


def check_lemma3_bounds(rr: ResidualResult, config: tuple) -> bool:
    """Whether residual list sizes meet the thresholds of the cycle procedure.

    ``config`` is ``(cycle, chords)`` with ``cycle = (x1, ..., xm)`` and
    chords given as endpoints or as pairs ``(x1, xi)``.  A single vertex
    needs one color; otherwise ``x1`` and every chord endpoint need 3 and
    each remaining vertex needs 2.
    """
    cycle, chords = config
    cycle = list(cycle)
    if not cycle or len(set(cycle)) != len(cycle) or set(rr.lists) != set(cycle):
        return False
    x1 = cycle[0]
    if len(cycle) == 1:
        return len(rr.lists[x1]) >= 1
    try:
        ends = _chord_endpoints(x1, chords)
    except Lemma3PreconditionError:
        return False
    if not ends <= set(cycle[2:-1]):
        return False
    for x in cycle:
        need = 3 if (x == x1 or x in ends) else 2
        if len(rr.lists[x]) < need:
            return False
    return True


def lemma3_color(f_cycle: Sequence, chords: Sequence, rr: ResidualResult) -> Transversal:
    """Color a cycle ``x1..xm`` with chords from ``x1`` without backtracking.

    Picks the smallest color of ``x1`` that leaves ``xm`` at least two usable
    colors, then colors ``x2, ..., xm`` in order, each taking its smallest
    color not matched to an earlier pick.

    Raises:
        Lemma3PreconditionError: bounds not met, or the residual cover has
            cross edges outside the cycle and chords.
        UnreachableError: the procedure got stuck.
    """
    xs = list(f_cycle)
    if not check_lemma3_bounds(rr, (xs, chords)):
        raise Lemma3PreconditionError("residual list sizes below the procedure's thresholds")
    h = rr.cover
    lists: Mapping = rr.lists
    x1 = xs[0]
    m = len(xs)
    if m == 1:
        return Transversal({x1: min(lists[x1])})

    ends = _chord_endpoints(x1, chords)
    allowed = {edge_key(xs[i], xs[(i + 1) % m]) for i in range(m)} | {edge_key(x1, y) for y in ends}
    for e, pairs in h.matchings.items():
        if pairs and edge_key(*e) not in allowed:
            raise Lemma3PreconditionError(f"cover edge on {e!r}, which is neither a cycle edge nor a chord")

    xm = xs[-1]
    start = None
    for c in sorted(lists[x1]):
        lost = {b for a, b in h.oriented(x1, xm) if a == c}
        if len(lists[xm] - lost) >= 2:
            start = c
            break
    if start is None:
        raise UnreachableError(f"no color of {x1!r} leaves {xm!r} two options")

    picks = {x1: start}
    for x in xs[1:]:
        blocked = set()
        for w, c in picks.items():
            blocked.update(b for a, b in h.oriented(w, x) if a == c)
        avail = sorted(lists[x] - blocked)
        if not avail:
            raise UnreachableError(f"no color left for {x!r}")
        picks[x] = avail[0]
    return Transversal(picks)
