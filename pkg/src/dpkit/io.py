"""JSON formats for graphs, covers and graph corpora."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterator

from dpkit.cover import Cover, SimpleGraph
from dpkit.plane_graph import build_plane_graph, vkey


class GraphFormatError(ValueError):
    """Input file is not valid JSON or lacks the expected structure."""


def _id_mapper(names):
    """Vertex names arrive as strings; all-integer name sets become ints."""
    names = [str(n) for n in names]
    try:
        ints = [int(n) for n in names]
    except ValueError:
        return str
    if all(str(i) == n for i, n in zip(ints, names)):
        return lambda x: int(str(x))
    return str


def graph_from_dict(data: dict, require_embedding: bool = True):
    """Build a :class:`PlaneGraph` from ``{"rotation": ...}``.

    Without ``require_embedding`` an ``{"edges": [[u, v], ...]}`` record is
    also accepted and yields a :class:`SimpleGraph`.
    """
    if not isinstance(data, dict):
        raise GraphFormatError("graph record must be a JSON object")
    if "rotation" in data:
        rot = data["rotation"]
        if not isinstance(rot, dict) or not all(isinstance(ns, list) for ns in rot.values()):
            raise GraphFormatError('"rotation" must map vertex names to neighbour arrays')
        conv = _id_mapper(list(rot) + [n for ns in rot.values() for n in ns])
        return build_plane_graph({conv(v): [conv(u) for u in ns] for v, ns in rot.items()})
    if "edges" in data:
        if require_embedding:
            raise GraphFormatError("this operation needs faces; supply a \"rotation\" embedding")
        edges = data["edges"]
        extra = data.get("vertices", [])
        if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) == 2 for e in edges):
            raise GraphFormatError('"edges" must be an array of [u, v] pairs')
        conv = _id_mapper([x for e in edges for x in e] + list(extra))
        return SimpleGraph.from_edges([(conv(u), conv(v)) for u, v in edges], [conv(v) for v in extra])
    raise GraphFormatError('graph record needs a "rotation" (or "edges") field')


def load_graph(path, require_embedding: bool = True):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError) as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"malformed JSON in {path}: {exc}") from exc
    return graph_from_dict(data, require_embedding)


def iter_corpus(directory) -> Iterator[tuple]:
    """Yield ``(name, record_or_exception)`` for every graph under ``directory``.

    ``*.json`` files hold one graph each (named by the file stem unless the
    record has a ``"name"``); ``*.jsonl`` files hold one record per line.
    Unparseable entries are yielded as the exception rather than raised.
    """
    root = Path(directory)
    for path in sorted(root.iterdir()):
        if path.suffix == ".json":
            try:
                rec = json.loads(path.read_text())
                yield (rec.get("name", path.stem) if isinstance(rec, dict) else path.stem), rec
            except (OSError, ValueError) as exc:
                yield path.stem, GraphFormatError(f"malformed JSON in {path.name}: {exc}")
        elif path.suffix == ".jsonl":
            for i, line in enumerate(path.read_text().splitlines()):
                if not line.strip():
                    continue
                name = f"{path.stem}:{i}"
                try:
                    rec = json.loads(line)
                    yield (rec.get("name", name) if isinstance(rec, dict) else name), rec
                except ValueError as exc:
                    yield name, GraphFormatError(f"malformed JSON at {path.name}:{i + 1}: {exc}")


# ---------------------------------------------------------------------------
# Covers
# ---------------------------------------------------------------------------


def cover_to_dict(h: Cover) -> dict:
    """Canonical JSON form: edges sorted, pairs sorted by first component."""
    edges = sorted(h.matchings, key=lambda e: (vkey(e[0]), vkey(e[1])))
    return {
        "lists": {str(v): sorted(h.lists[v]) for v in sorted(h.lists, key=vkey)},
        "matchings": [{"edge": list(e), "pairs": [list(p) for p in sorted(h.matchings[e])]} for e in edges],
    }


def cover_from_dict(data: dict) -> Cover:
    """Parse a cover; non-integer color labels are mapped to 0, 1, ... in sorted order."""
    try:
        lists = data["lists"]
        matchings = data.get("matchings", [])
        conv = _id_mapper(list(lists) + [x for m in matchings for x in m["edge"]])
        labels = {c for cs in lists.values() for c in cs} | {c for m in matchings for p in m["pairs"] for c in p}
        if all(isinstance(c, int) for c in labels):
            cmap = {c: c for c in labels}
        else:
            cmap = {c: i for i, c in enumerate(sorted(labels, key=str))}
        ls = {conv(v): [cmap[c] for c in cs] for v, cs in lists.items()}
        ms = {}
        for m in matchings:
            u, v = (conv(x) for x in m["edge"])
            ms[(u, v)] = [(cmap[a], cmap[b]) for a, b in m["pairs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed cover: {exc}") from exc
    return Cover.build(ls, ms)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str)
