"""Command-line front end.

Subcommands::

    dpkit check     --graph G.json            hypothesis / structure check
    dpkit solve     --graph G.json --k 4      DP-k-colorability verdict
    dpkit discharge --graph G.json            discharging replay and audit
    dpkit corpus    --corpus DIR --k 4        sweep a directory of graphs

Exit codes: 0 success / property holds, 1 property fails (witness found,
No verdict, broken charge balance), 2 input error, 3 Unknown verdict.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from dpkit import __version__
from dpkit.discharging import audit_charges
from dpkit.io import GraphFormatError, cover_to_dict, dumps, graph_from_dict, iter_corpus, load_graph
from dpkit.plane_graph import (
    AUDITED_CONFIGS,
    EmbeddingError,
    PlaneGraph,
    enumerate_short_cycles,
    find_chord_configs,
    forbidden_pattern_witness,
    structural_audit,
)
from dpkit.solver import NO, UNKNOWN, YES, is_dp_k_colorable

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    graph: str | None = None
    corpus: str | None = None
    k: int = 4
    budget: int = 10**6
    samples: int = 1000
    seed: int = 0
    format: str = "json"
    max_cycle_len: int = 5
    witness_out: str | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.max_cycle_len < 3:
            raise ValueError("max cycle length must be at least 3")


def _emit(cfg: RunConfig, report: dict, out) -> None:
    report = {"version": __version__, "config": asdict(cfg), **report}
    if cfg.format == "json":
        out.write(dumps(report) + "\n")
    else:
        out.write(_render_text(report))


def _render_text(report: dict, indent: str = "") -> str:
    lines = []
    for key, val in report.items():
        if key in ("config", "transfers", "final", "structure", "witness", "results"):
            continue
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render_text(val, indent + "  ").rstrip("\n"))
        elif isinstance(val, list):
            lines.append(f"{indent}{key}: {len(val)} item(s)")
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(line for line in lines if line) + "\n"


# ---------------------------------------------------------------------------
# Per-graph pipelines (shared by the single-graph commands and the sweep)
# ---------------------------------------------------------------------------


def check_report(g, max_cycle_len: int = 5) -> dict:
    wit = forbidden_pattern_witness(g)
    census = Counter(c.length for c in enumerate_short_cycles(g, max_cycle_len))
    rep = {
        "hypothesis_satisfied": wit is None,
        "witness": wit.to_dict() if wit else None,
        "cycle_census": {str(n): census[n] for n in sorted(census)},
    }
    if isinstance(g, PlaneGraph):
        rep["chord_configs"] = {
            "C(" + ",".join(map(str, s)) + ")": len(find_chord_configs(g, s)) for s in AUDITED_CONFIGS
        }
        rep["structure"] = structural_audit(g).to_dict()
    return rep


def _sweep_one(args) -> dict:
    name, rec, cfg = args
    out = {"name": name}
    try:
        if isinstance(rec, Exception):
            raise rec
        g = graph_from_dict(rec)
    except (GraphFormatError, EmbeddingError) as exc:
        out["error"] = str(exc)
        return out
    out["n"] = len(g.vertices)
    out["m"] = len(g.edges)
    wit = forbidden_pattern_witness(g)
    out["hypothesis_satisfied"] = wit is None
    if wit is not None:
        out["witness"] = wit.to_dict()
    else:
        v = is_dp_k_colorable(g, cfg.k, cfg.budget, cfg.samples, cfg.seed)
        out["dp"] = {"status": v.status, "covers_checked": v.covers_checked, "sampled": v.sampled}
        if v.witness is not None:
            out["dp"]["witness"] = cover_to_dict(v.witness)
    rep = audit_charges(g)
    out["discharge"] = {
        "conserved": rep.conserved,
        "negatives": len(rep.negatives),
        "structurally_clean": rep.structurally_clean,
        "proof_contradicting": rep.proof_contradicting,
    }
    return out


def _workers() -> int:
    env = os.environ.get("DPKIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_check(cfg: RunConfig, out=sys.stdout) -> int:
    try:
        g = load_graph(cfg.graph, require_embedding=False)
    except (GraphFormatError, EmbeddingError) as exc:
        _emit(cfg, {"error": str(exc)}, out)
        return EXIT_INPUT
    rep = check_report(g, cfg.max_cycle_len)
    _emit(cfg, rep, out)
    return EXIT_OK if rep["hypothesis_satisfied"] else EXIT_FAIL


def cmd_solve(cfg: RunConfig, out=sys.stdout) -> int:
    try:
        g = load_graph(cfg.graph, require_embedding=False)
    except (GraphFormatError, EmbeddingError) as exc:
        _emit(cfg, {"error": str(exc)}, out)
        return EXIT_INPUT
    verdict = is_dp_k_colorable(g, cfg.k, cfg.budget, cfg.samples, cfg.seed)
    if verdict.witness is not None and cfg.witness_out:
        Path(cfg.witness_out).write_text(dumps(cover_to_dict(verdict.witness)) + "\n")
    _emit(cfg, {"verdict": verdict.to_dict()}, out)
    return {YES: EXIT_OK, NO: EXIT_FAIL, UNKNOWN: EXIT_UNKNOWN}[verdict.status]


def cmd_discharge(cfg: RunConfig, out=sys.stdout) -> int:
    try:
        g = load_graph(cfg.graph, require_embedding=True)
    except (GraphFormatError, EmbeddingError) as exc:
        _emit(cfg, {"error": str(exc)}, out)
        return EXIT_INPUT
    rep = audit_charges(g)
    _emit(cfg, {"discharge": rep.to_dict()}, out)
    return EXIT_OK if rep.conserved and not rep.proof_contradicting else EXIT_FAIL


def cmd_corpus(cfg: RunConfig, out=sys.stdout) -> int:
    root = Path(cfg.corpus) if cfg.corpus else None
    if root is None or not root.is_dir():
        _emit(cfg, {"error": f"not a directory: {cfg.corpus}"}, out)
        return EXIT_INPUT
    items = [(name, rec, cfg) for name, rec in iter_corpus(root)]
    if not items:
        _emit(cfg, {"error": f"no graph files in {root}"}, out)
        return EXIT_INPUT

    workers = min(_workers(), len(items))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_one, items, chunksize=16))
    else:
        results = [_sweep_one(it) for it in items]

    summary = Counter()
    violations = []
    for r in results:
        summary["graphs"] += 1
        if "error" in r:
            summary["errors"] += 1
            continue
        if r["hypothesis_satisfied"]:
            summary["hypothesis_satisfied"] += 1
            summary["dp_" + r["dp"]["status"].lower()] += 1
            if r["dp"]["status"] == NO:
                violations.append(r["name"])
        else:
            summary["hypothesis_violated"] += 1
        d = r["discharge"]
        summary["conserved"] += d["conserved"]
        summary["structurally_clean"] += d["structurally_clean"]
        summary["with_negative_charge"] += d["negatives"] > 0
        if d["proof_contradicting"] or not d["conserved"]:
            violations.append(r["name"])
    _emit(cfg, {"summary": dict(sorted(summary.items())), "violations": violations, "results": results}, out)
    return EXIT_OK if not violations else EXIT_FAIL


COMMANDS = {"check": cmd_check, "solve": cmd_solve, "discharge": cmd_discharge, "corpus": cmd_corpus}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpkit", description="DP-coloring toolkit for plane graphs")
    parser.add_argument("--version", action="version", version=f"dpkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "corpus":
            p.add_argument("--corpus", required=True, metavar="DIR")
        else:
            p.add_argument("--graph", required=True, metavar="PATH")
        p.add_argument("--k", type=int, default=4)
        p.add_argument("--budget", type=int, default=10**6)
        p.add_argument("--samples", type=int, default=1000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--max-cycle-len", type=int, default=5)
        if name == "solve":
            p.add_argument("--witness-out", metavar="PATH")
    return parser


def main(argv=None, out=sys.stdout) -> int:
    args = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    try:
        cfg = RunConfig(**fields)
    except ValueError as exc:
        print(f"dpkit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return COMMANDS[cfg.command](cfg, out)


if __name__ == "__main__":
    sys.exit(main())
