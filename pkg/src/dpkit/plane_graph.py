"""Plane graphs given by rotation systems.

A plane graph is stored as a rotation system: for every vertex the cyclic
(clockwise) order of its neighbours.  Faces are recovered by tracing: the
dart following ``(u, v)`` on a face boundary is ``(v, w)`` where ``w`` is the
rotation successor of ``u`` around ``v``.

Besides construction this module answers the structural questions the
discharging argument depends on: short cycles and their adjacency, the
forbidden "i-cycle adjacent to a j-cycle and a k-cycle" pattern, chorded
cycle configurations ``C(m,n)`` / ``C(l,m,n)``, vertex profiles (including
the *flaw* predicate) and a combined structural audit.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

Vertex = Hashable
Edge = tuple  # (u, v) with vkey(u) <= vkey(v)


class EmbeddingError(ValueError):
    """Raised when rotation data does not describe a connected plane graph."""


def vkey(v: Vertex) -> tuple:
    """Sort key that tolerates a mix of integer and string vertex ids."""
    return (isinstance(v, str), v)


def edge_key(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if vkey(u) <= vkey(v) else (v, u)


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    """A face, described by its boundary walk.

    ``boundary`` lists the tail vertex of each dart in walk order, so a vertex
    or edge met twice by the walk (cut vertices, bridges) appears twice and
    contributes twice to ``degree``.
    """

    id: int
    boundary: tuple

    @property
    def degree(self) -> int:
        return len(self.boundary)

    @property
    def darts(self) -> tuple:
        b = self.boundary
        return tuple((b[i], b[(i + 1) % len(b)]) for i in range(len(b)))


@dataclass(frozen=True)
class Cycle:
    """A simple cycle, stored in canonical form.

    The canonical vertex sequence starts at the smallest vertex and proceeds
    towards the smaller of its two cycle neighbours, so two ``Cycle`` objects
    compare equal iff they describe the same cycle.
    """

    vertices: tuple

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(vs) >= 3:
            i = min(range(len(vs)), key=lambda j: vkey(vs[j]))
            vs = vs[i:] + vs[:i]
            if vkey(vs[-1]) < vkey(vs[1]):
                vs = (vs[0],) + tuple(reversed(vs[1:]))
        object.__setattr__(self, "vertices", vs)

    @property
    def length(self) -> int:
        return len(self.vertices)

    @cached_property
    def edges(self) -> frozenset:
        vs = self.vertices
        return frozenset(edge_key(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class VertexProfile:
    vertex: Vertex
    degree: int
    incident_face_degrees: tuple
    neighbor_degrees: tuple
    is_flaw: bool


@dataclass(frozen=True)
class ConfigWitness:
    """A concrete occurrence of a forbidden pattern or a chorded configuration.

    kind is ``"ForbiddenPattern"``, ``"Cmn"`` or ``"Clmn"``.  For the pattern,
    ``cycles`` holds the i-cycle followed by the adjacent j- and k-cycles and
    ``params`` is ``(i, j, k)``.  For chord configurations ``cycles`` holds the
    outer cycle, ``chords`` the chords and ``parts`` the vertex sequences of the
    internal regions, the middle region of ``C(l,m,n)`` listed second.
    """

    kind: str
    params: tuple
    cycles: tuple = ()
    chords: tuple = ()
    parts: tuple = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": list(self.params),
            "cycles": [list(c.vertices) for c in self.cycles],
            "chords": [list(e) for e in self.chords],
            "parts": [list(p) for p in self.parts],
        }


@dataclass(frozen=True)
class PlaneGraph:
    """Connected plane graph.  Build instances with :func:`build_plane_graph`."""

    rotation: Mapping[Vertex, tuple]
    faces: tuple
    dart_face: Mapping[tuple, int] = field(repr=False)

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted(self.rotation, key=vkey))

    @cached_property
    def edges(self) -> tuple:
        es = {edge_key(u, v) for u, nbrs in self.rotation.items() for v in nbrs}
        return tuple(sorted(es, key=lambda e: (vkey(e[0]), vkey(e[1]))))

    @cached_property
    def _adj(self) -> dict:
        return {v: frozenset(nbrs) for v, nbrs in self.rotation.items()}

    def neighbors(self, v: Vertex) -> frozenset:
        return self._adj[v]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self._adj.get(u, ())

    def degree(self, v: Vertex) -> int:
        return len(self.rotation[v])

    def faces_at(self, v: Vertex) -> list:
        """Faces around ``v``, one entry per angle in rotation order."""
        return [self.faces[self.dart_face[(u, v)]] for u in self.rotation[v]]

    def adjacent_faces(self, f: Face) -> list:
        """The face across each boundary edge of ``f``, in boundary order."""
        return [self.faces[self.dart_face[(b, a)]] for a, b in f.darts]

    def to_dict(self) -> dict:
        return {"rotation": {str(v): list(self.rotation[v]) for v in self.vertices}}


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def build_plane_graph(rotation: Mapping[Vertex, Sequence[Vertex]]) -> PlaneGraph:
    """Build a plane graph from rotation data and trace its faces.

    Raises:
        EmbeddingError: on asymmetric rotations, loops or multi-edges,
            disconnected input, or an Euler characteristic other than 2
            (an embedding of positive genus).
    """
    rot = {v: tuple(nbrs) for v, nbrs in rotation.items()}
    if not rot:
        raise EmbeddingError("empty graph")
    for v, nbrs in rot.items():
        if v in nbrs:
            raise EmbeddingError(f"loop at vertex {v!r}")
        if len(set(nbrs)) != len(nbrs):
            raise EmbeddingError(f"multi-edge at vertex {v!r}")
        for u in nbrs:
            if u not in rot:
                raise EmbeddingError(f"asymmetric rotation: {u!r} (neighbour of {v!r}) is not a vertex")
            if v not in rot[u]:
                raise EmbeddingError(f"asymmetric rotation: {u!r} in rotation({v!r}) but not vice versa")

    start = min(rot, key=vkey)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in rot[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    if len(seen) != len(rot):
        raise EmbeddingError("disconnected input")

    pos = {v: {u: i for i, u in enumerate(nbrs)} for v, nbrs in rot.items()}
    darts = sorted(((u, v) for u in rot for v in rot[u]), key=lambda d: (vkey(d[0]), vkey(d[1])))
    dart_face: dict = {}
    faces = []
    for d in darts:
        if d in dart_face:
            continue
        fid = len(faces)
        boundary = []
        u, v = d
        while (u, v) not in dart_face:
            dart_face[(u, v)] = fid
            boundary.append(u)
            nbrs = rot[v]
            u, v = v, nbrs[(pos[v][u] + 1) % len(nbrs)]
        faces.append(Face(fid, tuple(boundary)))
    if not faces:
        faces.append(Face(0, ()))

    n_v = len(rot)
    n_e = len(darts) // 2
    if n_v - n_e + len(faces) != 2:
        raise EmbeddingError(
            f"Euler violation: |V|-|E|+|F| = {n_v}-{n_e}+{len(faces)} = {n_v - n_e + len(faces)} != 2"
        )
    return PlaneGraph(rotation=rot, faces=tuple(faces), dart_face=dart_face)


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------


def enumerate_short_cycles(g, max_len: int = 5) -> list:
    """All simple cycles of length 3..max_len, each reported once.

    Works on anything exposing ``vertices`` and ``neighbors(v)``, so an
    unembedded :class:`dpkit.cover.SimpleGraph` is accepted too.
    """
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    order = {v: i for i, v in enumerate(sorted(g.vertices, key=vkey))}
    adj = {v: sorted(g.neighbors(v), key=order.__getitem__) for v in order}
    found = []

    for s, si in order.items():
        path = [s]
        on_path = {s}
        stack = [iter(adj[s])]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if w == s:
                if len(path) >= 3 and order[path[1]] < order[path[-1]]:
                    found.append(Cycle(tuple(path)))
            elif order[w] > si and w not in on_path and len(path) < max_len:
                path.append(w)
                on_path.add(w)
                stack.append(iter(adj[w]))
    found.sort(key=lambda c: (c.length, [order[v] for v in c.vertices]))
    return found


def cycles_adjacent(a: Cycle, b: Cycle) -> bool:
    """Two distinct cycles are adjacent when they share at least one edge."""
    return a != b and not a.edges.isdisjoint(b.edges)


def forbidden_pattern_witness(g, lengths: Iterable[int] = (3, 4, 5)):
    """Find an i-cycle adjacent to both a j-cycle and a k-cycle.

    Every assignment of ``lengths`` to ``(i, j, k)`` is tried, with ``{j, k}``
    unordered.  Returns a ``ConfigWitness`` or ``None`` when the graph has no
    such pattern.
    """
    lengths = tuple(sorted(set(lengths)))
    if len(lengths) != 3:
        raise ValueError("lengths must be three distinct cycle lengths")
    cycles = enumerate_short_cycles(g, max(lengths))
    by_edge = defaultdict(list)
    for c in cycles:
        for e in c.edges:
            by_edge[e].append(c)

    for i in lengths:
        j, k = (x for x in lengths if x != i)
        for c in cycles:
            if c.length != i:
                continue
            found = {}
            for e in sorted(c.edges, key=lambda e: (vkey(e[0]), vkey(e[1]))):
                for d in by_edge[e]:
                    if d.length in (j, k) and d.length not in found and d != c:
                        found[d.length] = d
            if j in found and k in found:
                return ConfigWitness("ForbiddenPattern", (i, j, k), cycles=(c, found[j], found[k]))
    return None


def _split(poly: list, a: int, b: int) -> tuple:
    """Split a polygon (list of labels) along the diagonal joining ``a`` and ``b``."""
    i, j = sorted((poly.index(a), poly.index(b)))
    return poly[i : j + 1], poly[j:] + poly[: i + 1]


def find_chord_configs(g, spec: Sequence[int]) -> list:
    """All occurrences of ``C(m,n)`` (``spec=(m, n)``) or ``C(l,m,n)``.

    ``C(m,n)`` is an ``(m+n-2)``-cycle with one chord cutting it into cycles
    of lengths ``m`` and ``n``.  ``C(l,m,n)`` is an ``(l+m+n-4)``-cycle with
    two non-crossing chords cutting it into cycles of lengths ``l``, ``m``,
    ``n``, where the middle region (the one bounded by both chords) has
    length ``m``.  Chords may or may not share an endpoint, so both
    realizations are matched.  Occurrences are subgraphs; further chords of
    the host graph are allowed.
    """
    spec = tuple(spec)
    if len(spec) not in (2, 3) or min(spec) < 3:
        raise ValueError("spec must be (m, n) or (l, m, n) with entries >= 3")
    total = sum(spec) - 2 * (len(spec) - 1)
    out = []
    for cyc in enumerate_short_cycles(g, total):
        if cyc.length != total:
            continue
        vs = cyc.vertices
        idx = list(range(total))
        chords = [
            (p, q)
            for p, q in combinations(idx, 2)
            if (q - p) % total not in (1, total - 1) and g.has_edge(vs[p], vs[q])
        ]
        if len(spec) == 2:
            m, n = spec
            for p, q in chords:
                r1, r2 = _split(idx, p, q)
                if sorted((len(r1), len(r2))) == sorted((m, n)):
                    out.append(
                        ConfigWitness(
                            "Cmn",
                            spec,
                            cycles=(cyc,),
                            chords=(edge_key(vs[p], vs[q]),),
                            parts=tuple(tuple(vs[t] for t in r) for r in (r1, r2)),
                        )
                    )
            continue
        l, m, n = spec
        for (p1, q1), (p2, q2) in combinations(chords, 2):
            r1, r2 = _split(idx, p1, q1)
            if p2 in r1 and q2 in r1:
                inner, outer = r1, r2
            elif p2 in r2 and q2 in r2:
                inner, outer = r2, r1
            else:
                continue  # crossing chords
            s1, s2 = _split(inner, p2, q2)
            middle, side = (s1, s2) if (p1 in s1 and q1 in s1) else (s2, s1)
            if len(middle) != m or sorted((len(outer), len(side))) != sorted((l, n)):
                continue
            out.append(
                ConfigWitness(
                    "Clmn",
                    spec,
                    cycles=(cyc,),
                    chords=(edge_key(vs[p1], vs[q1]), edge_key(vs[p2], vs[q2])),
                    parts=tuple(tuple(vs[t] for t in r) for r in (outer, middle, side)),
                )
            )
    return out


# ---------------------------------------------------------------------------
# Vertex profiles and the structural audit
# ---------------------------------------------------------------------------


def matches_pattern(values: Sequence[int], pattern: Sequence[str]) -> bool:
    """Whether a multiset of degrees matches a pattern like ``("4", "4", "5+")``.

    ``"d"`` means exactly d, ``"d+"`` at least d and ``"d-"`` at most d; the
    assignment of values to slots is free ("in any order").
    """
    return _matches(tuple(sorted(values)), tuple(pattern))


_pattern_cache: dict = {}


def _matches(values: tuple, pattern: tuple) -> bool:
    key = (values, pattern)
    hit = _pattern_cache.get(key)
    if hit is not None:
        return hit
    if len(values) != len(pattern):
        result = False
    else:
        slots = []
        for p in pattern:
            if p.endswith("+"):
                slots.append((int(p[:-1]), 10**9))
            elif p.endswith("-"):
                slots.append((0, int(p[:-1])))
            else:
                slots.append((int(p), int(p)))
        # interval/point matching: sorted points, each takes the open slot
        # containing it with the smallest upper end
        free = sorted(slots, key=lambda s: s[1])
        result = True
        for x in values:
            for i, (lo, hi) in enumerate(free):
                if lo <= x <= hi:
                    del free[i]
                    break
            else:
                result = False
                break
    _pattern_cache[key] = result
    return result


def is_flaw(g: PlaneGraph, v: Vertex) -> bool:
    """A 4-vertex whose incident faces have degrees 3, 3, 5 and at least 5."""
    return g.degree(v) == 4 and matches_pattern([f.degree for f in g.faces_at(v)], ("3", "3", "5", "5+"))


def vertex_profile(g: PlaneGraph, v: Vertex) -> VertexProfile:
    face_degrees = tuple(sorted(f.degree for f in g.faces_at(v)))
    return VertexProfile(
        vertex=v,
        degree=g.degree(v),
        incident_face_degrees=face_degrees,
        neighbor_degrees=tuple(sorted(g.degree(u) for u in g.rotation[v])),
        is_flaw=g.degree(v) == 4 and matches_pattern(face_degrees, ("3", "3", "5", "5+")),
    )


@dataclass
class CheckResult:
    passed: bool
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "witnesses": self.witnesses}


@dataclass
class StructuralReport:
    """Outcome of :func:`structural_audit`, one entry per check."""

    checks: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failed(self) -> list:
        return [name for name, c in self.checks.items() if not c.passed]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": {k: v.to_dict() for k, v in self.checks.items()}}


AUDITED_CONFIGS = ((3, 4), (3, 3, 3), (3, 3, 5))


def structural_audit(g: PlaneGraph) -> StructuralReport:
    """Check the structure a minimal counterexample is known to have.

    Checks, in order: minimum degree at least 4; every n-vertex (n >= 2) on at
    most n-2 triangular faces; every 6-vertex has at least two incident faces
    carrying two or more 5+-vertices; and one check per forbidden chord
    configuration C(3,4), C(3,3,3), C(3,3,5).
    """
    checks = {}
    low = [v for v in g.vertices if g.degree(v) < 4]
    checks["min_degree"] = CheckResult(not low, [{"vertex": v, "degree": g.degree(v)} for v in low])

    bad = []
    for v in g.vertices:
        d = g.degree(v)
        if d < 2:
            continue
        tri = sum(1 for f in g.faces_at(v) if f.degree == 3)
        if tri > d - 2:
            bad.append({"vertex": v, "degree": d, "triangles": tri})
    checks["triangle_incidence"] = CheckResult(not bad, bad)

    bad = []
    for v in g.vertices:
        if g.degree(v) != 6:
            continue
        rich = sum(1 for f in g.faces_at(v) if len({u for u in f.boundary if g.degree(u) >= 5}) >= 2)
        if rich < 2:
            bad.append({"vertex": v, "rich_faces": rich})
    checks["six_vertex_faces"] = CheckResult(not bad, bad)

    for spec in AUDITED_CONFIGS:
        name = "no_C(" + ",".join(map(str, spec)) + ")"
        occ = find_chord_configs(g, spec)
        checks[name] = CheckResult(not occ, [w.to_dict() for w in occ[:1]])
    return StructuralReport(checks)

