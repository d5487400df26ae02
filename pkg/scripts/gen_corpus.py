"""Generate the fixture corpus of connected planar graphs.

Writes one JSON-lines file per vertex count into ``tests/data/corpus``.
Each line is ``{"name": ..., "rotation": {...}}`` where the rotation is a
clockwise neighbour order taken from a planar embedding computed by
networkx.  One embedding per isomorphism class.

Graphs on at most 7 vertices come from the networkx graph atlas.  The
8-vertex classes are produced by attaching a new vertex to every connected
7-vertex planar graph in all possible ways and deduplicating up to
isomorphism.  Every connected graph has a non-cut vertex, so this reaches
all of them.

Usage:  python scripts/gen_corpus.py [--max-n 8]
"""

import argparse
import itertools
import json
from collections import defaultdict
from pathlib import Path

import networkx as nx

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "corpus"


def rotation_of(g):
    ok, emb = nx.check_planarity(g)
    assert ok
    return {str(v): [int(u) for u in emb.neighbors_cw_order(v)] for v in sorted(g)}


def atlas_classes(n):
    return [
        g
        for g in nx.graph_atlas_g()
        if g.number_of_nodes() == n and nx.is_connected(g) and nx.check_planarity(g)[0]
    ]


def extend_classes(smaller):
    buckets = defaultdict(list)
    for base in smaller:
        n = base.number_of_nodes()
        for r in range(1, n + 1):
            for nbrs in itertools.combinations(range(n), r):
                g = base.copy()
                g.add_edges_from((n, u) for u in nbrs)
                if not nx.check_planarity(g)[0]:
                    continue
                key = (
                    g.number_of_edges(),
                    tuple(sorted(d for _, d in g.degree())),
                    nx.weisfeiler_lehman_graph_hash(g, iterations=3),
                )
                bucket = buckets[key]
                if not any(nx.is_isomorphic(g, h) for h in bucket):
                    bucket.append(g)
    out = [g for key in sorted(buckets) for g in buckets[key]]
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=8)
    args = parser.parse_args()

    OUT.mkdir(parents=True, exist_ok=True)
    classes = {}
    for n in range(1, min(args.max_n, 7) + 1):
        classes[n] = atlas_classes(n)
    for n in range(8, args.max_n + 1):
        classes[n] = extend_classes(classes[n - 1])

    for n, graphs in classes.items():
        graphs = sorted(graphs, key=lambda g: (g.number_of_edges(), sorted(g.edges())))
        path = OUT / f"n{n}.jsonl"
        with path.open("w") as fh:
            for i, g in enumerate(graphs):
                g = nx.convert_node_labels_to_integers(g)
                record = {"name": f"n{n}_{i:04d}", "rotation": rotation_of(g)}
                fh.write(json.dumps(record, sort_keys=True) + "\n")
        print(f"n={n}: {len(graphs)} graphs -> {path.name}")


if __name__ == "__main__":
    main()
