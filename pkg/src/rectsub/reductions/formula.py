"""Rectilinear planar 3SAT instances: parsing, layout validation, brute force.

Variables sit left to right on a horizontal line; every clause hangs above
(``top``) or below (``bottom``) it and reaches its three variables through
vertical legs. Each variable offers clause slots on both sides, filled left
to right in the order the legs meet the variable.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

from ..io import SchemaError, dumps

SIDES = ("top", "bottom")


class LayoutInvalid(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Clause:
    literals: tuple[int, int, int]
    side: str

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(sorted(abs(l) for l in self.literals))

    @property
    def span(self) -> tuple[int, int]:
        v = self.variables
        return v[0], v[-1]

    def sign(self, var: int) -> bool:
        """True when ``var`` occurs positively."""
        for l in self.literals:
            if abs(l) == var:
                return l > 0
        raise KeyError(var)

    def satisfied(self, assignment) -> bool:
        return any(assignment[abs(l) - 1] == (l > 0) for l in self.literals)


@dataclass(frozen=True)
class Rp3SatInstance:
    n: int
    clauses: tuple[Clause, ...]

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied(self, assignment) -> bool:
        return all(c.satisfied(assignment) for c in self.clauses)

    def mirrored(self) -> "Rp3SatInstance":
        flip = {"top": "bottom", "bottom": "top"}
        return Rp3SatInstance(self.n, tuple(Clause(c.literals, flip[c.side]) for c in self.clauses))

    @cached_property
    def layout(self) -> "Layout":
        return Layout.of(self)


def parse_formula(text: str | dict) -> Rp3SatInstance:
    doc = json.loads(text) if isinstance(text, str) else text
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    for key in ("variables", "clauses"):
        if key not in doc:
            raise SchemaError(key, "missing required field")
    n = doc["variables"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise SchemaError("variables", "expected a non-negative integer")
    if not isinstance(doc["clauses"], list):
        raise SchemaError("clauses", "expected a list")
    clauses = []
    for k, c in enumerate(doc["clauses"]):
        path = f"clauses[{k}]"
        if not isinstance(c, dict):
            raise SchemaError(path, "expected an object")
        for key in ("literals", "side"):
            if key not in c:
                raise SchemaError(f"{path}.{key}", "missing required field")
        lits = c["literals"]
        if not isinstance(lits, list) or any(isinstance(l, bool) or not isinstance(l, int) for l in lits):
            raise SchemaError(f"{path}.literals", "expected a list of integers")
        if c["side"] not in SIDES:
            raise SchemaError(f"{path}.side", f"expected 'top' or 'bottom', got {c['side']!r}")
        clauses.append(Clause(tuple(lits), c["side"]))
    return Rp3SatInstance(n, tuple(clauses))


def serialize_formula(inst: Rp3SatInstance) -> str:
    return dumps(
        {
            "variables": inst.n,
            "clauses": [{"literals": list(c.literals), "side": c.side} for c in inst.clauses],
        }
    )


def sat_brute_force(inst: Rp3SatInstance, max_vars: int = 24) -> tuple[bool, list[tuple[bool, ...]]]:
    """All satisfying assignments, as tuples ``(x1, ..., xn)``."""
    if inst.n > max_vars:
        raise TooLarge(f"{inst.n} variables exceeds the brute-force limit of {max_vars}")
    witnesses = [
        a for a in itertools.product((False, True), repeat=inst.n) if inst.satisfied(a)
    ]
    return bool(witnesses), witnesses


@dataclass(frozen=True)
class Layout:
    """Slot and nesting-depth assignment for every clause.

    ``slot[(c, v)]`` is the 1-based slot clause ``c`` occupies on variable
    ``v`` (on the clause's side); ``depth[c]`` is 1 for innermost clauses.
    Legs are ordered along the line by ``(variable, slot)``.
    """

    slot: dict
    depth: tuple[int, ...]
    violations: tuple[str, ...]

    @classmethod
    def of(cls, inst: Rp3SatInstance) -> "Layout":
        violations = _malformed(inst)
        if violations:
            return cls({}, (), tuple(violations))
        slot: dict[tuple[int, int], int] = {}
        for side in SIDES:
            for v in range(1, inst.n + 1):
                here = [k for k, c in enumerate(inst.clauses) if c.side == side and v in c.variables]
                here.sort(key=lambda k: _leg_order(inst.clauses[k], k, v))
                for pos, k in enumerate(here, start=1):
                    slot[(k, v)] = pos

        def extent(k):
            a, b = inst.clauses[k].span
            return (a, slot[(k, a)]), (b, slot[(k, b)])

        depth = [1] * inst.m
        for side in SIDES:
            ks = [k for k, c in enumerate(inst.clauses) if c.side == side]
            ks.sort(key=lambda k: _extent_width(extent(k)))
            for a_, b_ in itertools.combinations(ks, 2):
                ca, cb = inst.clauses[a_], inst.clauses[b_]
                (p, q), (r, s) = ca.span, cb.span
                if p < r < q < s or r < p < s < q:
                    violations.append(f"clauses {a_} and {b_} have non-laminar spans {ca.span} and {cb.span}")
            for outer in ks:
                lo, hi = extent(outer)
                for inner in ks:
                    if inner == outer:
                        continue
                    ilo, ihi = extent(inner)
                    if lo < ilo and ihi < hi:
                        depth[outer] = max(depth[outer], depth[inner] + 1)
                        for v in inst.clauses[outer].variables:
                            if ilo <= (v, slot[(outer, v)]) <= ihi:
                                violations.append(
                                    f"leg of clause {outer} to x{v} crosses clause {inner}"
                                )
                    elif outer < inner and (lo < ilo <= hi < ihi or ilo < lo <= ihi < hi):
                        violations.append(f"clauses {outer} and {inner} cross")
        return cls(slot, tuple(depth), tuple(dict.fromkeys(violations)))


def _leg_order(c: Clause, k: int, v: int):
    a, b = c.span
    width = b - a
    if b == v:  # legs arriving from the left: inner clauses first
        return (0, width, -k)
    if a == v:  # legs leaving to the right: outer clauses first
        return (2, -width, k)
    return (1, width, k)


def _extent_width(ext):
    (a, sa), (b, sb) = ext
    return (b - a, sb - sa)


def _malformed(inst: Rp3SatInstance) -> list[str]:
    out = []
    if inst.n < 1:
        out.append("formula needs at least one variable")
    for k, c in enumerate(inst.clauses):
        if len(c.literals) != 3:
            out.append(f"clause {k} has {len(c.literals)} literals, expected 3")
            continue
        if any(l == 0 or abs(l) > inst.n for l in c.literals):
            out.append(f"clause {k} references a variable outside 1..{inst.n}")
        elif len(set(abs(l) for l in c.literals)) != 3:
            out.append(f"clause {k} repeats a variable")
        if c.side not in SIDES:
            out.append(f"clause {k} has unknown side {c.side!r}")
    return out


def validate_layout(inst: Rp3SatInstance) -> list[str]:
    """Violations preventing a crossing-free embedding; empty when valid."""
    return list(inst.layout.violations)
