"""List assignments, covers and residual covers.

A cover of a graph ``G`` with list assignment ``L`` has one *fiber*
``{v} x L(v)`` per vertex; each fiber is a clique and each edge ``uv`` of
``G`` carries a (possibly partial) matching between the fibers of ``u`` and
``v``.  :class:`Cover` stores only the lists and the cross matchings, the
fiber cliques being implicit.  :class:`CoverGraph` is the explicit graph
form used when a cover has to be checked clause by clause.

Colors are small integers.  Matching pairs are stored oriented along the
canonical edge key, i.e. ``(color of u, color of v)`` for ``u < v``.
"""

from __future__ import annotations

import random
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product
from math import factorial
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple

from dpkit.plane_graph import edge_key, vkey

Vertex = Hashable
Color = int


# ---------------------------------------------------------------------------
# Graph and cover containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleGraph:
    """An unembedded graph, for operations that never look at faces."""

    vertices: tuple
    edges: tuple

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable = ()) -> "SimpleGraph":
        es = {edge_key(u, v) for u, v in edges}
        if any(u == v for u, v in es):
            raise ValueError("loops are not allowed")
        vs = set(vertices) | {x for e in es for x in e}
        return cls(tuple(sorted(vs, key=vkey)), tuple(sorted(es, key=_ekey)))

    @cached_property
    def _adj(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def neighbors(self, v: Vertex) -> frozenset:
        return self._adj[v]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self._adj.get(u, ())

    def degree(self, v: Vertex) -> int:
        return len(self._adj[v])


def _ekey(e) -> tuple:
    return (vkey(e[0]), vkey(e[1]))


def _orient(e, pairs, u):
    """Matching pairs of edge ``e`` re-oriented as ``(color of u, color of other)``."""
    if e[0] == u:
        return list(pairs)
    return [(b, a) for a, b in pairs]


class CoverGraph(NamedTuple):
    """Explicit cover graph: cover vertices ``(v, c)`` and undirected edges."""

    vertices: frozenset
    edges: frozenset  # of frozenset({(u, c), (v, c')})


@dataclass(frozen=True)
class Cover:
    lists: Mapping[Vertex, frozenset]
    matchings: Mapping[tuple, frozenset]

    @classmethod
    def build(cls, lists: Mapping, matchings: Mapping) -> "Cover":
        """Normalize keys and orientation; ``matchings`` may use either edge orientation."""
        ls = {v: frozenset(cs) for v, cs in lists.items()}
        ms = {}
        for (u, v), pairs in matchings.items():
            e = edge_key(u, v)
            oriented = frozenset(_orient(e, pairs, u))
            ms[e] = ms.get(e, frozenset()) | oriented
        return cls(ls, ms)

    @cached_property
    def partners(self) -> dict:
        """Cover vertex -> tuple of cover vertices joined to it by a cross edge."""
        adj = defaultdict(list)
        for (u, v), pairs in self.matchings.items():
            for a, b in pairs:
                adj[(u, a)].append((v, b))
                adj[(v, b)].append((u, a))
        return {x: tuple(ys) for x, ys in adj.items()}

    def fiber(self, v: Vertex) -> list:
        return [(v, c) for c in sorted(self.lists[v])]

    def oriented(self, u: Vertex, v: Vertex) -> list:
        """Pairs of the matching on ``uv`` as ``(color of u, color of v)``."""
        e = edge_key(u, v)
        return _orient(e, self.matchings.get(e, ()), u)

    def to_graph(self) -> CoverGraph:
        fibers = defaultdict(set)
        for v, cs in self.lists.items():
            fibers[v].update(cs)
        edges = set()
        for (u, v), pairs in self.matchings.items():
            for a, b in pairs:
                fibers[u].add(a)
                fibers[v].add(b)
                edges.add(frozenset({(u, a), (v, b)}))
        for v, cs in fibers.items():
            for a, b in combinations(cs, 2):
                edges.add(frozenset({(v, a), (v, b)}))
        verts = frozenset((v, c) for v, cs in fibers.items() for c in cs)
        return CoverGraph(verts, frozenset(edges))


@dataclass(frozen=True)
class Transversal:
    """One chosen color per fiber (possibly only for some fibers)."""

    picks: Mapping[Vertex, Color]

    def cover_vertices(self) -> set:
        return set(self.picks.items())

    def __len__(self):
        return len(self.picks)


def transversal_problems(h: Cover, t: Transversal, full: bool = True) -> list:
    """Reasons ``t`` is not an independent transversal of ``h`` (empty if it is)."""
    problems = []
    for v, c in t.picks.items():
        if v not in h.lists:
            problems.append(f"pick for unknown vertex {v!r}")
        elif c not in h.lists[v]:
            problems.append(f"color {c!r} not in the list of {v!r}")
    if full:
        missing = [v for v in h.lists if v not in t.picks]
        if missing:
            problems.append(f"no pick for {missing!r}")
    for (u, v), pairs in h.matchings.items():
        if u in t.picks and v in t.picks and (t.picks[u], t.picks[v]) in pairs:
            problems.append(f"picks ({u!r},{t.picks[u]!r}) and ({v!r},{t.picks[v]!r}) are joined")
    return problems


def is_transversal(h: Cover, t: Transversal, full: bool = True) -> bool:
    return not transversal_problems(h, t, full)


@dataclass(frozen=True)
class ResidualResult:
    lists: Mapping[Vertex, frozenset]
    cover: Cover
    outside: Transversal = field(default_factory=lambda: Transversal({}))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class CoverReport:
    """Violated cover clauses ("i" to "iv") with a witness for each."""

    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def clause(self):
        """The first violated clause, or ``None``."""
        return self.violations[0][0] if self.violations else None

    @property
    def clauses(self) -> set:
        return {c for c, _ in self.violations}

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [{"clause": c, "witness": w} for c, w in self.violations]}


def validate_cover(g, lists: Mapping, h) -> CoverReport:
    """Check ``h`` against the four clauses defining a cover of ``(g, lists)``.

    ``h`` is a :class:`Cover` or an explicit :class:`CoverGraph`.  All
    violated clauses are reported, each with its first witness; nothing is
    raised.
    """
    hg = h.to_graph() if isinstance(h, Cover) else h
    report = CoverReport()
    verts = set(g.vertices)

    expected = {(v, c) for v in verts for c in lists.get(v, ())}
    missing_lists = sorted((v for v in verts if v not in lists), key=vkey)
    extra = hg.vertices - expected
    lacking = expected - hg.vertices
    if missing_lists:
        report.violations.append(("i", {"vertices_without_list": missing_lists}))
    elif extra or lacking:
        report.violations.append(
            ("i", {"unexpected": sorted(map(list, extra), key=str), "missing": sorted(map(list, lacking), key=str)})
        )

    fibers = defaultdict(set)
    for v, c in hg.vertices:
        fibers[v].add(c)
    loose_edges = [e for e in hg.edges if not all(x in hg.vertices for x in e)]
    if loose_edges and not report.violations:
        report.violations.append(("i", {"edge_endpoint_not_in_H": [sorted(map(list, loose_edges[0]), key=str)]}))

    for v in sorted(fibers, key=vkey):
        cs = sorted(fibers[v])
        gap = next(((a, b) for a, b in combinations(cs, 2) if frozenset({(v, a), (v, b)}) not in hg.edges), None)
        if gap is not None:
            report.violations.append(("ii", {"vertex": v, "non_adjacent_colors": list(gap)}))
            break

    seen = defaultdict(set)  # (edge, cover vertex) -> partners
    bad_iii = None
    bad_iv = None
    for e in sorted(hg.edges, key=lambda e: sorted(map(str, e))):
        x, y = sorted(e, key=lambda p: (vkey(p[0]), p[1]))
        if len(e) != 2 or x[0] == y[0]:
            continue
        if g.has_edge(x[0], y[0]):
            ge = edge_key(x[0], y[0])
            seen[(ge, x)].add(y)
            seen[(ge, y)].add(x)
            if bad_iii is None and (len(seen[(ge, x)]) > 1 or len(seen[(ge, y)]) > 1):
                z = x if len(seen[(ge, x)]) > 1 else y
                bad_iii = {"edge": list(ge), "cover_vertex": list(z), "partners": sorted(map(list, seen[(ge, z)]))}
        elif bad_iv is None:
            bad_iv = {"vertices": [x[0], y[0]], "cover_edge": [list(x), list(y)]}
    if bad_iii:
        report.violations.append(("iii", bad_iii))
    if bad_iv:
        report.violations.append(("iv", bad_iv))
    return report


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def uniform_lists(g, k: int) -> dict:
    return {v: frozenset(range(k)) for v in g.vertices}


def identity_cover(g, lists: Mapping) -> Cover:
    """The cover matching equal colors across every edge (ordinary list coloring)."""
    ls = {v: frozenset(lists[v]) for v in g.vertices}
    ms = {}
    for u, v in g.edges:
        e = edge_key(u, v)
        ms[e] = frozenset((c, c) for c in ls[u] & ls[v])
    return Cover(ls, ms)


def restrict_cover(h: Cover, keep: Mapping) -> Cover:
    """Induced subcover on the cover vertices ``{(v, c) : c in keep[v]}``."""
    ls = {v: frozenset(cs) for v, cs in keep.items()}
    ms = {}
    for (u, v), pairs in h.matchings.items():
        if u in ls and v in ls:
            ms[(u, v)] = frozenset((a, b) for a, b in pairs if a in ls[u] and b in ls[v])
    return Cover(ls, ms)


def bfs_tree(g) -> list:
    """Spanning tree edges ``(parent, child)`` in BFS order from the lowest vertex."""
    if not g.vertices:
        return []
    root = min(g.vertices, key=vkey)
    seen = {root}
    order = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in sorted(g.neighbors(v), key=vkey):
            if u not in seen:
                seen.add(u)
                order.append((v, u))
                queue.append(u)
    if len(seen) != len(g.vertices):
        raise ValueError("graph is disconnected")
    return order


def _fresh(used: set) -> int:
    c = 0
    while c in used:
        c += 1
    return c


def gauge(g, h: Cover, tree=None) -> tuple:
    """Normalize ``h`` and also return the per-fiber relabeling used.

    Returns ``(cover, relabel)`` where ``relabel[v]`` maps old colors of ``v``
    to new ones.
    """
    tree = bfs_tree(g) if tree is None else list(tree)
    tree_vs = {x for e in tree for x in e}
    if len(tree) != len(g.vertices) - 1 or (tree and tree_vs != set(g.vertices)):
        raise ValueError("tree does not span the graph")
    for p, c in tree:
        if not g.has_edge(p, c):
            raise ValueError(f"tree edge {p!r}-{c!r} is not a graph edge")

    relabel = {}
    placed = set()
    pending = list(tree)
    root = tree[0][0] if tree else g.vertices[0]
    relabel[root] = {c: c for c in h.lists[root]}
    placed.add(root)
    while pending:
        progress = False
        for p, c in list(pending):
            if p not in placed and c in placed:
                p, c = c, p
            if p not in placed:
                continue
            sigma = {}
            for a, b in h.oriented(p, c):
                sigma[b] = relabel[p][a]
            used = set(sigma.values())
            for b in sorted(h.lists[c] - sigma.keys()):
                nb = b if b not in used else _fresh(used)
                sigma[b] = nb
                used.add(nb)
            relabel[c] = sigma
            placed.add(c)
            pending.remove((p, c) if (p, c) in pending else (c, p))
            progress = True
        if not progress:
            raise ValueError("tree is not connected")

    ls = {v: frozenset(relabel[v][c] for c in h.lists[v]) for v in h.lists}
    ms = {(u, v): frozenset((relabel[u][a], relabel[v][b]) for a, b in pairs) for (u, v), pairs in h.matchings.items()}
    return Cover(ls, ms), relabel


def normalize_cover(g, h: Cover, tree=None) -> Cover:
    """Relabel fibers so every spanning-tree matching is the identity on its matched part.

    The result is isomorphic to ``h`` (only colors are renamed), so it has a
    transversal iff ``h`` does.
    """
    return gauge(g, h, tree)[0]


# ---------------------------------------------------------------------------
# Enumeration and sampling of full-matching covers
# ---------------------------------------------------------------------------


def free_edges(g, tree=None) -> list:
    tree = bfs_tree(g) if tree is None else tree
    t = {edge_key(*e) for e in tree}
    return [e for e in sorted((edge_key(*e) for e in g.edges), key=_ekey) if e not in t]


def cover_from_permutations(g, k: int, perms: dict) -> Cover:
    """Full cover with identity matchings except ``perms[e]`` on the listed edges.

    ``perms[(u, v)][c]`` is the color of ``v`` matched to color ``c`` of ``u``.
    """
    ls = {v: frozenset(range(k)) for v in g.vertices}
    ident = frozenset((c, c) for c in range(k))
    ms = {}
    for e in g.edges:
        e = edge_key(*e)
        p = perms.get(e)
        ms[e] = ident if p is None else frozenset(enumerate(p))
    return Cover(ls, ms)


class CoverEnumeration:
    """Iterable over the normalized full covers of ``g`` with ``k`` colors.

    Tree edges carry the identity, every other edge each of the ``k!``
    permutations, giving ``total = k!**(|E|-|V|+1)`` covers.  At most
    ``budget`` of them are produced; ``truncated`` tells whether that cut
    anything off.
    """

    def __init__(self, g, k: int, budget: int):
        if k < 1:
            raise ValueError("k must be at least 1")
        if budget < 1:
            raise ValueError("budget must be at least 1")
        self.graph = g
        self.k = k
        self.budget = budget
        self.tree = bfs_tree(g)
        self.free = free_edges(g, self.tree)
        self.total = factorial(k) ** len(self.free)
        self.truncated = self.total > budget

    def __len__(self):
        return min(self.total, self.budget)

    def assignments(self) -> Iterator[tuple]:
        """Permutation tuples, one per free edge, in enumeration order."""
        perms = list(permutations(range(self.k)))
        for i, combo in enumerate(product(perms, repeat=len(self.free))):
            if i >= self.budget:
                return
            yield combo

    def __iter__(self) -> Iterator[Cover]:
        for combo in self.assignments():
            yield cover_from_permutations(self.graph, self.k, dict(zip(self.free, combo)))


def enumerate_covers(g, k: int, budget: int) -> CoverEnumeration:
    return CoverEnumeration(g, k, budget)


def random_assignment(free: list, k: int, rng: random.Random) -> tuple:
    out = []
    for _ in free:
        p = list(range(k))
        rng.shuffle(p)
        out.append(tuple(p))
    return tuple(out)


def random_cover(g, k: int, seed) -> Cover:
    """Normalized full cover with uniformly random permutations on non-tree edges."""
    if k < 1:
        raise ValueError("k must be at least 1")
    free = free_edges(g)
    rng = random.Random(seed)
    return cover_from_permutations(g, k, dict(zip(free, random_assignment(free, k, rng))))


# ---------------------------------------------------------------------------
# Residual covers
# ---------------------------------------------------------------------------


def residual_restrict(g, h: Cover, lists: Mapping, f_vertices: Iterable, colored: Transversal, f_edges=None):
    """Residual lists and cover on ``F`` after coloring ``G - F`` with ``colored``.

    A color ``c'`` of ``x`` in ``F`` is dropped when ``(x, c')`` is matched to
    the pick of some neighbour of ``x`` outside ``F``.  The residual cover is
    the subcover of ``h`` induced by the surviving cover vertices.

    Raises:
        ValueError: if ``colored`` is not an independent transversal of
            ``G - F``, or ``f_edges`` is given and is not the edge set induced
            by ``f_vertices``.
    """
    f = set(f_vertices)
    if not f <= set(g.vertices):
        raise ValueError("F contains vertices outside the graph")
    if f_edges is not None:
        induced = {edge_key(u, v) for u, v in g.edges if u in f and v in f}
        if {edge_key(*e) for e in f_edges} != induced:
            raise ValueError("F is not an induced subgraph")
    outside = [v for v in g.vertices if v not in f]
    if set(colored.picks) != set(outside):
        raise ValueError("colored must pick exactly the vertices of G - F")
    sub = restrict_cover(h, {v: lists[v] for v in outside})
    problems = transversal_problems(sub, colored)
    if problems:
        raise ValueError("colored is not an independent transversal: " + problems[0])

    residual = {}
    for x in f:
        blocked = set()
        for u in g.neighbors(x):
            if u in f:
                continue
            pick = colored.picks[u]
            blocked.update(b for a, b in h.oriented(u, x) if a == pick)
        residual[x] = frozenset(lists[x]) - blocked
    return ResidualResult(residual, restrict_cover(h, residual), colored)
