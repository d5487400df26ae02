"""Search random straight-line plane graphs for incidences of rarely used rules.

Random point sets are triangulated (Delaunay) and thinned by deleting random
edges while staying connected; the rotation comes from the drawing.  The
smallest graph found for each requested rule is written to
tests/data/graphs/rule_<id>.json.
"""

import json
import math
import random
import sys
from pathlib import Path

import numpy as np
from scipy.spatial import Delaunay

from dpkit.discharging import _incidences, _Rules
from dpkit.plane_graph import EmbeddingError, build_plane_graph

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "graphs"


def rotation_from_drawing(pts, edges):
    nbrs = {i: [] for i in range(len(pts))}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot = {}
    for v, ns in nbrs.items():
        x, y = pts[v]
        rot[v] = sorted(ns, key=lambda u: -math.atan2(pts[u][1] - y, pts[u][0] - x))
    return rot


def random_graph(rng, n, keep):
    pts = rng.random((n, 2))
    tri = Delaunay(pts)
    edges = set()
    for s in tri.simplices:
        for i in range(3):
            a, b = sorted((int(s[i]), int(s[(i + 1) % 3])))
            edges.add((a, b))
    edges = sorted(edges)
    kept = [e for e in edges if rng.random() < keep]
    return pts, kept


def main(targets):
    rng = np.random.default_rng(7)
    best = {}
    for trial in range(20000):
        n = int(rng.integers(8, 16))
        pts, edges = random_graph(rng, n, float(rng.uniform(0.55, 0.9)))
        used = sorted({x for e in edges for x in e})
        relabel = {v: i for i, v in enumerate(used)}
        rot = rotation_from_drawing([pts[v] for v in used], [(relabel[a], relabel[b]) for a, b in edges])
        try:
            g = build_plane_graph(rot)
        except EmbeddingError:
            continue
        rules = _Rules(g)
        for f, v in _incidences(g):
            r = rules.decide(v, f).rule.value
            if r in targets and (r not in best or len(g.vertices) < len(best[r][0].vertices)):
                best[r] = (g, v, f.id)
    for r, (g, v, fid) in sorted(best.items()):
        path = OUT / f"rule_{r.replace('.', '_')}.json"
        rec = {"name": f"rule {r}", "vertex": v, "face": fid, **g.to_dict()}
        path.write_text(json.dumps(rec, sort_keys=True) + "\n")
        print(r, len(g.vertices), "vertices ->", path.name)


if __name__ == "__main__":
    main(set(sys.argv[1:]) or {"R3.2a", "R3.2b", "R3.2c", "R3.3a"})
