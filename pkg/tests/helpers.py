"""Graph constructors, corpus access and brute-force oracles for the tests.

The oracles deliberately avoid the package's own search code: they enumerate
vertex sequences or color assignments exhaustively.
"""

import json
import math
from functools import lru_cache
from itertools import combinations, permutations, product
from pathlib import Path

import networkx as nx

from dpkit.cover import Cover
from dpkit.io import graph_from_dict, iter_corpus
from dpkit.plane_graph import build_plane_graph

DATA = Path(__file__).parent / "data"
CORPUS = DATA / "corpus"


def rot_from_coords(coords, edges):
    """Rotation (clockwise) of a straight-line drawing."""
    nbrs = {v: [] for v in coords}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot = {}
    for v, ns in nbrs.items():
        x, y = coords[v]
        rot[v] = sorted(ns, key=lambda u: -math.atan2(coords[u][1] - y, coords[u][0] - x))
    return rot


def rot_from_nx(h):
    ok, emb = nx.check_planarity(h)
    assert ok
    return {v: list(emb.neighbors_cw_order(v)) for v in h}


def plane(rotation):
    return build_plane_graph(rotation)


def cycle(n):
    return plane({i: [(i - 1) % n, (i + 1) % n] for i in range(n)})


def polygon(n, r=1.0):
    return {i: (r * math.cos(2 * math.pi * i / n), r * math.sin(2 * math.pi * i / n)) for i in range(n)}


def k4():
    coords = {0: (0, 0), 1: (0, 2), 2: (-2, -1), 3: (2, -1)}
    return plane(rot_from_coords(coords, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)]))


def c34():
    """5-cycle 1..5 with the chord 1-3."""
    coords = {i + 1: p for i, p in polygon(5).items()}
    return plane(rot_from_coords(coords, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)]))


def c333():
    """5-cycle 1..5 with chords 1-3 and 1-4."""
    coords = {i + 1: p for i, p in polygon(5).items()}
    return plane(rot_from_coords(coords, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3), (1, 4)]))


def chorded_cycle(n, chords):
    coords = polygon(n)
    edges = [(i, (i + 1) % n) for i in range(n)] + list(chords)
    return plane(rot_from_coords(coords, edges))


def two_triangles():
    coords = {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (5, 0), 4: (6, 0), 5: (5, 1)}
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (1, 3)]
    return plane(rot_from_coords(coords, edges))


def cube():
    return plane(rot_from_nx(nx.convert_node_labels_to_integers(nx.hypercube_graph(3))))


def icosahedron():
    return plane(rot_from_nx(nx.icosahedral_graph()))


def octahedron():
    return plane(rot_from_nx(nx.octahedral_graph()))


def grid(rows, cols):
    coords = {r * cols + c: (c, -r) for r in range(rows) for c in range(cols)}
    edges = [(r * cols + c, r * cols + c + 1) for r in range(rows) for c in range(cols - 1)]
    edges += [(r * cols + c, (r + 1) * cols + c) for r in range(rows - 1) for c in range(cols)]
    return plane(rot_from_coords(coords, edges))


def flaw_example():
    """A 4-vertex ``v`` on faces of degrees 3, 3, 5 and 6."""
    coords = {
        "v": (0, 0), "a": (-1, 1), "b": (0, 1), "c": (1, 1), "d": (0, -1),
        "p": (2, 0), "q": (1, -1), "r": (-1, -2), "s": (-2, -1), "t": (-2, 0.5),
    }
    edges = [
        ("v", "a"), ("v", "b"), ("v", "c"), ("v", "d"), ("a", "b"), ("b", "c"),
        ("c", "p"), ("p", "q"), ("q", "d"), ("d", "r"), ("r", "s"), ("s", "t"), ("t", "a"),
    ]
    return plane(rot_from_coords(coords, edges))


def load_fixture(name):
    rec = json.loads((DATA / "graphs" / name).read_text())
    return graph_from_dict(rec), rec


@lru_cache(maxsize=None)
def corpus(max_n=8):
    """All corpus graphs with at most ``max_n`` vertices, as (name, graph)."""
    out = []
    for name, rec in iter_corpus(CORPUS):
        if int(name.split("_")[0][1:]) <= max_n:
            out.append((name, graph_from_dict(rec)))
    return tuple(out)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def brute_cycles(g, max_len):
    """Every simple cycle of length 3..max_len, as a frozenset of edges."""
    found = set()
    vs = list(g.vertices)
    for length in range(3, max_len + 1):
        for seq in permutations(vs, length):
            if all(g.has_edge(seq[i], seq[(i + 1) % length]) for i in range(length)):
                found.add(frozenset(frozenset((seq[i], seq[(i + 1) % length])) for i in range(length)))
    return found


def count_faces(rotation):
    """Orbits of the face permutation on darts, computed from scratch."""
    succ = {}
    for v, ns in rotation.items():
        for i, u in enumerate(ns):
            succ[(u, v)] = (v, ns[(i + 1) % len(ns)])
    seen = set()
    orbits = 0
    for d in succ:
        if d in seen:
            continue
        orbits += 1
        while d not in seen:
            seen.add(d)
            d = succ[d]
    return orbits if succ else 1


def brute_transversals(h: Cover):
    """All independent transversals, by trying every combination of picks."""
    verts = list(h.lists)
    out = []
    for combo in product(*(sorted(h.lists[v]) for v in verts)):
        picks = dict(zip(verts, combo))
        if all((picks[u], picks[v]) not in pairs for (u, v), pairs in h.matchings.items()):
            out.append(picks)
    return out


def brute_has_transversal(h: Cover):
    verts = list(h.lists)
    for combo in product(*(sorted(h.lists[v]) for v in verts)):
        picks = dict(zip(verts, combo))
        if all((picks[u], picks[v]) not in pairs for (u, v), pairs in h.matchings.items()):
            return True
    return False


def brute_list_colorable(g, lists):
    verts = list(g.vertices)
    for combo in product(*(sorted(lists[v]) for v in verts)):
        col = dict(zip(verts, combo))
        if all(col[u] != col[v] for u, v in g.edges):
            return True
    return False


def partial_matchings(a, b):
    """Every matching (including the empty one) between color sets ``a`` and ``b``."""
    a, b = sorted(a), sorted(b)
    out = []
    for r in range(min(len(a), len(b)) + 1):
        for xs in combinations(a, r):
            for ys in permutations(b, r):
                out.append(frozenset(zip(xs, ys)))
    return out


def full_matchings(a, b):
    """Matchings saturating the smaller side."""
    a, b = sorted(a), sorted(b)
    r = min(len(a), len(b))
    out = []
    for xs in combinations(a, r):
        for ys in permutations(b, r):
            out.append(frozenset(zip(xs, ys)))
    return out
