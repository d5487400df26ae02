"""Exact replay of the discharging argument on a concrete plane graph.

Initial charges are ``2d(v) - 6`` on vertices and ``d(f) - 6`` on faces,
which sum to -12 on any connected plane graph.  Vertices then send charge
to incident 3-, 4- and 5-faces according to the rule table below.  All
arithmetic is in :class:`fractions.Fraction`.

Rule ids, by face degree and vertex degree:

=======  ==========  =====================================================
face     vertex      branches (first match wins, "otherwise" last)
=======  ==========  =====================================================
3        4           R1.1a flaw on (4,5+,5+): 3/5;  R1.1b flaw on (4,4,5+):
                     4/5;  R1.1c otherwise: 1
3        5+          R1.2a (4,4,5+) with two flaws: 7/5;  R1.2b (4,4+,5+)
                     with one flaw: 6/5;  R1.2c otherwise: 1
4        4+          R2: 1/2
5        4           R3.1a flaw, all neighbours 4: 0;  R3.1b flaw, one 5+
                     neighbour: 1/10;  R3.1c flaw, two or more: 1/5;
                     R3.1d faces (3,4,5,5): 1/5;  R3.1e otherwise: 1/3
5        5           R3.2a (4,4,4,4,5), all adjacent faces 4-: 7/10;
                     R3.2b (4,4,4,4,5), an adjacent 5+-face: 3/5;
                     R3.2c (4,4,4,5,5+), the 5+-vertices consecutive: 2/5;
                     R3.2d otherwise: 3/10
5        6+          R3.3a (4,4,4,4,6+): 4/5;  R3.3b another 5+-vertex on
                     the face: 2/5;  no fallback
=======  ==========  =====================================================

Vertices of degree at most 3 and faces of degree 6 or more take no part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property

from dpkit.plane_graph import Face, PlaneGraph, is_flaw, matches_pattern, structural_audit, vkey

F = Fraction
TOTAL = F(-12)


class Rule(str, Enum):
    R1_1a = "R1.1a"
    R1_1b = "R1.1b"
    R1_1c = "R1.1c"
    R1_2a = "R1.2a"
    R1_2b = "R1.2b"
    R1_2c = "R1.2c"
    R2 = "R2"
    R3_1a = "R3.1a"
    R3_1b = "R3.1b"
    R3_1c = "R3.1c"
    R3_1d = "R3.1d"
    R3_1e = "R3.1e"
    R3_2a = "R3.2a"
    R3_2b = "R3.2b"
    R3_2c = "R3.2c"
    R3_2d = "R3.2d"
    R3_3a = "R3.3a"
    R3_3b = "R3.3b"
    NONE = "NONE"

    def __str__(self):
        return self.value


AMOUNT = {
    Rule.R1_1a: F(3, 5),
    Rule.R1_1b: F(4, 5),
    Rule.R1_1c: F(1),
    Rule.R1_2a: F(7, 5),
    Rule.R1_2b: F(6, 5),
    Rule.R1_2c: F(1),
    Rule.R2: F(1, 2),
    Rule.R3_1a: F(0),
    Rule.R3_1b: F(1, 10),
    Rule.R3_1c: F(1, 5),
    Rule.R3_1d: F(1, 5),
    Rule.R3_1e: F(1, 3),
    Rule.R3_2a: F(7, 10),
    Rule.R3_2b: F(3, 5),
    Rule.R3_2c: F(2, 5),
    Rule.R3_2d: F(3, 10),
    Rule.R3_3a: F(4, 5),
    Rule.R3_3b: F(2, 5),
    Rule.NONE: F(0),
}

# R3.2c reads "(4,4,4,5,5+)-face whose two 5+-vertices are consecutive on f"
INTERPRETED = {Rule.R3_2c: "two 5+-vertices taken as consecutive on the face boundary"}


def fstr(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class ChargeLedger:
    vertex_charge: dict
    face_charge: dict

    def total(self) -> Fraction:
        return sum(self.vertex_charge.values(), F(0)) + sum(self.face_charge.values(), F(0))

    def copy(self) -> "ChargeLedger":
        return ChargeLedger(dict(self.vertex_charge), dict(self.face_charge))

    def to_dict(self) -> dict:
        return {
            "vertices": {str(v): fstr(c) for v, c in self.vertex_charge.items()},
            "faces": {str(f): fstr(c) for f, c in self.face_charge.items()},
            "total": fstr(self.total()),
        }


@dataclass(frozen=True)
class Transfer:
    source: object
    face: int
    amount: Fraction
    rule: Rule

    def to_dict(self) -> dict:
        return {"from": self.source, "to": self.face, "amount": fstr(self.amount), "rule": self.rule.value}


@dataclass(frozen=True)
class Decision:
    """Outcome of rule evaluation for one vertex-face incidence."""

    amount: Fraction
    rule: Rule
    matched: tuple  # every non-fallback branch whose condition held
    in_domain: bool  # some rule family covers this (vertex, face) pair


class _Rules:
    """Rule evaluation against one graph, with per-graph caches."""

    def __init__(self, g: PlaneGraph):
        self.g = g

    @cached_property
    def flaws(self) -> frozenset:
        return frozenset(v for v in self.g.vertices if is_flaw(self.g, v))

    def decide(self, v, f: Face) -> Decision:
        g = self.g
        dv = g.degree(v)
        df = f.degree
        degs = [g.degree(u) for u in f.boundary]
        if df == 3 and dv == 4:
            flaw = v in self.flaws
            branches = [
                (Rule.R1_1a, flaw and matches_pattern(degs, ("4", "5+", "5+"))),
                (Rule.R1_1b, flaw and matches_pattern(degs, ("4", "4", "5+"))),
            ]
            fallback = Rule.R1_1c
        elif df == 3 and dv >= 5:
            n_flaw = len({u for u in f.boundary if u in self.flaws})
            branches = [
                (Rule.R1_2a, matches_pattern(degs, ("4", "4", "5+")) and n_flaw == 2),
                (Rule.R1_2b, matches_pattern(degs, ("4", "4+", "5+")) and n_flaw == 1),
            ]
            fallback = Rule.R1_2c
        elif df == 4 and dv >= 4:
            branches = []
            fallback = Rule.R2
        elif df == 5 and dv == 4:
            flaw = v in self.flaws
            nbr = [g.degree(u) for u in g.rotation[v]]
            big = sum(1 for d in nbr if d >= 5)
            branches = [
                (Rule.R3_1a, flaw and all(d == 4 for d in nbr)),
                (Rule.R3_1b, flaw and big == 1),
                (Rule.R3_1c, flaw and big >= 2),
                (Rule.R3_1d, matches_pattern([h.degree for h in g.faces_at(v)], ("3", "5", "5", "4"))),
            ]
            fallback = Rule.R3_1e
        elif df == 5 and dv == 5:
            around = [h.degree for h in g.adjacent_faces(f)]
            one_big = matches_pattern(degs, ("4", "4", "4", "4", "5"))
            branches = [
                (Rule.R3_2a, one_big and all(d <= 4 for d in around)),
                (Rule.R3_2b, one_big and any(d >= 5 for d in around)),
                (Rule.R3_2c, matches_pattern(degs, ("4", "4", "4", "5", "5+")) and _big_pair_consecutive(degs)),
            ]
            fallback = Rule.R3_2d
        elif df == 5 and dv >= 6:
            branches = [
                (Rule.R3_3a, matches_pattern(degs, ("4", "4", "4", "4", "6+"))),
                (Rule.R3_3b, any(g.degree(u) >= 5 for u in f.boundary if u != v)),
            ]
            fallback = Rule.NONE
        else:
            return Decision(F(0), Rule.NONE, (), False)

        matched = tuple(r for r, ok in branches if ok)
        rule = matched[0] if matched else fallback
        return Decision(AMOUNT[rule], rule, matched, True)


def _big_pair_consecutive(degs: list) -> bool:
    pos = [i for i, d in enumerate(degs) if d >= 5]
    if len(pos) != 2:
        return False
    gap = (pos[1] - pos[0]) % len(degs)
    return gap in (1, len(degs) - 1)


def _face(g: PlaneGraph, f) -> Face:
    return f if isinstance(f, Face) else g.faces[f]


def initial_charges(g: PlaneGraph) -> ChargeLedger:
    return ChargeLedger(
        {v: F(2 * g.degree(v) - 6) for v in g.vertices},
        {f.id: F(f.degree - 6) for f in g.faces},
    )


def transfer_amount(g: PlaneGraph, v, f) -> tuple:
    """Charge ``v`` sends to the incident face ``f`` and the rule responsible.

    Raises:
        ValueError: if ``v`` is not on the boundary of ``f``.
    """
    face = _face(g, f)
    if v not in face.boundary:
        raise ValueError(f"vertex {v!r} is not incident to face {face.id}")
    d = _Rules(g).decide(v, face)
    return d.amount, d.rule


def _incidences(g: PlaneGraph):
    """(face, vertex) pairs in (face id, vertex id) order, once per boundary occurrence."""
    for f in g.faces:
        for v in sorted(f.boundary, key=vkey):
            yield f, v


def apply_discharging(g: PlaneGraph) -> tuple:
    """Final charges and the log of every nonzero transfer."""
    rules = _Rules(g)
    ledger = initial_charges(g)
    log = []
    for f, v in _incidences(g):
        d = rules.decide(v, f)
        if d.amount:
            ledger.vertex_charge[v] -= d.amount
            ledger.face_charge[f.id] += d.amount
            log.append(Transfer(v, f.id, d.amount, d.rule))
    return ledger, log


@dataclass
class DischargeReport:
    initial: ChargeLedger
    final: ChargeLedger
    transfers: list
    negatives: list = field(default_factory=list)
    unmatched: list = field(default_factory=list)
    multi_matched: list = field(default_factory=list)
    interpretation_flags: list = field(default_factory=list)
    structure: object = None

    @property
    def conserved(self) -> bool:
        return self.initial.total() == TOTAL and self.final.total() == TOTAL

    @property
    def structurally_clean(self) -> bool:
        return self.structure is not None and self.structure.passed

    @property
    def proof_contradicting(self) -> bool:
        """A negative final charge on a graph with all the structure of a minimal counterexample."""
        return self.structurally_clean and bool(self.negatives)

    def to_dict(self) -> dict:
        return {
            "conserved": self.conserved,
            "initial_total": fstr(self.initial.total()),
            "final_total": fstr(self.final.total()),
            "negatives": self.negatives,
            "unmatched": self.unmatched,
            "multi_matched": self.multi_matched,
            "interpretation_flags": self.interpretation_flags,
            "structurally_clean": self.structurally_clean,
            "proof_contradicting": self.proof_contradicting,
            "structure": self.structure.to_dict() if self.structure is not None else None,
            "final": self.final.to_dict(),
            "transfers": [t.to_dict() for t in self.transfers],
        }


def audit_charges(g: PlaneGraph, structure=None) -> DischargeReport:
    """Run the discharging and report conservation, negative charges and rule coverage.

    ``structure`` may pass a precomputed :func:`structural_audit` result.
    """
    rules = _Rules(g)
    initial = initial_charges(g)
    final, log = apply_discharging(g)
    report = DischargeReport(initial, final, log)
    report.structure = structure if structure is not None else structural_audit(g)

    for v in g.vertices:
        if final.vertex_charge[v] < 0:
            report.negatives.append({"element": "vertex", "id": v, "charge": fstr(final.vertex_charge[v])})
    for f in g.faces:
        if final.face_charge[f.id] < 0:
            report.negatives.append({"element": "face", "id": f.id, "charge": fstr(final.face_charge[f.id])})

    flagged = set()
    for f, v in _incidences(g):
        d = rules.decide(v, f)
        if d.in_domain and d.rule is Rule.NONE:
            report.unmatched.append({"vertex": v, "face": f.id})
        if len(d.matched) > 1:
            report.multi_matched.append({"vertex": v, "face": f.id, "rules": [r.value for r in d.matched]})
        if d.rule in INTERPRETED and d.rule not in flagged:
            flagged.add(d.rule)
            report.interpretation_flags.append({"rule": d.rule.value, "reading": INTERPRETED[d.rule]})
    return report
