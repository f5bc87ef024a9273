"""Exact generalized Pauli (Weyl-Heisenberg) operators on n qudits.

A :class:`PauliOp` is ``eta^phase * (X^a1 Z^b1) (x) ... (x) (X^an Z^bn)`` with
``eta = exp(i pi / d)``, so ``omega = eta^2``. Everything is integer arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .arrangement import Arrangement, ValidationError, _check_keys, _int, _load_json
from .complex2 import CellComplex2


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PauliOp:
    d: int
    phase: int
    sites: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", self.phase % (2 * self.d))
        object.__setattr__(self, "sites", tuple((a % self.d, b % self.d) for a, b in self.sites))

    @property
    def n(self) -> int:
        return len(self.sites)

    @classmethod
    def identity(cls, n: int, d: int) -> "PauliOp":
        return cls(d, 0, ((0, 0),) * n)

    @classmethod
    def scalar(cls, n: int, d: int, k: int) -> "PauliOp":
        """``omega^k`` times the identity."""
        return cls(d, 2 * k, ((0, 0),) * n)

    @classmethod
    def single(cls, n: int, d: int, site: int, a: int, b: int, phase: int = 0) -> "PauliOp":
        sites = [(0, 0)] * n
        sites[site] = (a, b)
        return cls(d, phase, tuple(sites))

    def _check(self, other: "PauliOp") -> None:
        if self.n != other.n or self.d != other.d:
            raise DimensionMismatch(f"cannot combine (n={self.n}, d={self.d}) with (n={other.n}, d={other.d})")

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        self._check(other)
        # Z^b X^a' = omega^(a' b) X^a' Z^b, and omega = eta^2
        phase = self.phase + other.phase + 2 * sum(b * a2 for (_, b), (a2, _) in zip(self.sites, other.sites))
        sites = tuple((a + a2, b + b2) for (a, b), (a2, b2) in zip(self.sites, other.sites))
        return PauliOp(self.d, phase, sites)

    def inverse(self) -> "PauliOp":
        # (X^a Z^b)^-1 = Z^-b X^-a = omega^(ab) X^-a Z^-b
        phase = -self.phase + 2 * sum(a * b for a, b in self.sites)
        return PauliOp(self.d, phase, tuple((-a, -b) for a, b in self.sites))

    def __pow__(self, k: int) -> "PauliOp":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = PauliOp.identity(self.n, self.d)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_scalar(self) -> bool:
        return all(a == 0 and b == 0 for a, b in self.sites)

    def omega_power(self) -> int | None:
        """k with ``self == omega^k * I``, or None when not such a scalar."""
        if not self.is_scalar() or self.phase % 2:
            return None
        return self.phase // 2

    def equals_omega(self, k: int) -> bool:
        return self.is_scalar() and self.phase == (2 * k) % (2 * self.d)

    def commutator_exponent(self, other: "PauliOp") -> int:
        """k with ``self * other = omega^k * other * self``."""
        self._check(other)
        return sum(b * a2 - a * b2 for (a, b), (a2, b2) in zip(self.sites, other.sites)) % self.d

    def commutes_with(self, other: "PauliOp") -> bool:
        return self.commutator_exponent(other) == 0

    def to_dict(self) -> dict[str, Any]:
        return {"phase": self.phase, "sites": [list(s) for s in self.sites]}


def commutator(p: PauliOp, q: PauliOp) -> PauliOp:
    return p * q * p.inverse() * q.inverse()


def order_divides_d(p: PauliOp) -> bool:
    return (p ** p.d) == PauliOp.identity(p.n, p.d)


@dataclass(frozen=True)
class OperatorAssignment:
    n: int
    d: int
    ops: Mapping[str, PauliOp] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for label, op in self.ops.items():
            if op.n != self.n or op.d != self.d:
                raise DimensionMismatch(f"operator {label!r} has n={op.n}, d={op.d}; expected n={self.n}, d={self.d}")

    def __getitem__(self, label: str) -> PauliOp:
        return self.ops[label]

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "d": self.d, "ops": {k: v.to_dict() for k, v in self.ops.items()}}


def assignment_from_dict(doc: Any) -> OperatorAssignment:
    _check_keys(doc, {"n", "d", "ops"}, {"n", "d", "ops"}, "$")
    n = _int(doc.get("n"), "$.n")
    d = _int(doc.get("d"), "$.d")
    if n < 1 or d < 2:
        raise ValidationError("need n >= 1 and d >= 2", "$")
    raw = doc.get("ops")
    if not isinstance(raw, dict):
        raise ValidationError("ops must be an object", "$.ops")
    ops = {}
    for label, spec in raw.items():
        path = f"$.ops.{label}"
        _check_keys(spec, {"phase", "sites"}, {"sites"}, path)
        phase = _int(spec.get("phase", 0), path + ".phase")
        sites = spec.get("sites")
        if not isinstance(sites, list) or len(sites) != n:
            raise ValidationError(f"sites must be a list of {n} pairs", path + ".sites")
        pairs = []
        for k, s in enumerate(sites):
            if not isinstance(s, list) or len(s) != 2:
                raise ValidationError("site must be [a, b]", f"{path}.sites[{k}]")
            pairs.append((_int(s[0], f"{path}.sites[{k}][0]"), _int(s[1], f"{path}.sites[{k}][1]")))
        ops[label] = PauliOp(d, phase, tuple(pairs))
    return OperatorAssignment(n, d, ops)


def parse_operators(document: str | bytes) -> OperatorAssignment:
    return assignment_from_dict(_load_json(document))


def serialize_operators(t: OperatorAssignment) -> str:
    return json.dumps(t.to_dict(), indent=2)


def load_operators(path) -> OperatorAssignment:
    with open(path, "rb") as fh:
        return parse_operators(fh.read())


# --- verification ----------------------------------------------------------------


def signed_product(t: OperatorAssignment, steps: Iterable[tuple[str, int]]) -> PauliOp:
    out = PauliOp.identity(t.n, t.d)
    for label, eps in steps:
        out = out * (t[label] if eps == 1 else t[label].inverse())
    return out


def _coverage(arr: Arrangement, t: OperatorAssignment) -> list[str]:
    out = []
    if t.d != arr.d:
        out.append(f"operator modulus d={t.d} differs from arrangement d={arr.d}")
    out += [f"label {a}: no operator assigned" for a in arr.labels if a not in t.ops]
    return out


def verify_operator_realization(arr: Arrangement, t: OperatorAssignment) -> list[str]:
    """Empty list when ``t`` is an operator realization of ``arr``."""
    bad = _coverage(arr, t)
    if bad:
        return bad
    for a in arr.labels:
        if not order_divides_d(t[a]):
            bad.append(f"label {a}: operator does not satisfy T^d = I")
    for c in arr.contexts:
        prod = signed_product(t, c.word())
        if not prod.equals_omega(c.tau):
            bad.append(f"context {c.id}: product is {_describe(prod)}, expected omega^{c.tau}")
    return bad


def verify_quantum_realization(arr: Arrangement, t: OperatorAssignment) -> list[str]:
    bad = verify_operator_realization(arr, t)
    if _coverage(arr, t):
        return bad
    for c in arr.contexts:
        labels = c.labels
        for i, a in enumerate(labels):
            for b in labels[i + 1:]:
                if not t[a].commutes_with(t[b]):
                    bad.append(f"context {c.id}: {a} and {b} do not commute")
    return bad


def _describe(p: PauliOp) -> str:
    if p.is_scalar():
        k = p.omega_power()
        return f"omega^{k}" if k is not None else f"eta^{p.phase}"
    return "a non-scalar operator"


def path_operator(t: OperatorAssignment, x: CellComplex2, path: Iterable[tuple[str, int]]) -> PauliOp:
    """Ordered product over an edge path; edge ids are the labels of ``t``."""
    path = tuple(path)
    prev = None
    for step in path:
        if step[0] not in x.edge_map:
            raise ValueError(f"unknown edge {step[0]!r}")
        s, e = x.step_endpoints(step)
        if prev is not None and s != prev:
            raise ValueError(f"path breaks at edge {step[0]!r}: {prev} is not {s}")
        prev = e
    return signed_product(t, path)


def check_face_identity(t: OperatorAssignment, x: CellComplex2, arr: Arrangement) -> list[str]:
    bad = []
    for f in x.faces:
        op = path_operator(t, x, f.word)
        tau = arr.context(f.context).tau
        if not op.equals_omega(tau):
            bad.append(f"face {f.context}: boundary operator is {_describe(op)}, expected omega^{tau}")
    return bad


def power_realization(t: OperatorAssignment, arr: Arrangement, m: int) -> tuple[OperatorAssignment, Arrangement]:
    bad = verify_quantum_realization(arr, t)
    if bad:
        raise ValueError("not a quantum realization: " + "; ".join(bad))
    ops = {a: t[a] ** m for a in arr.labels}
    return OperatorAssignment(t.n, t.d, ops), arr.with_tau([m * c.tau for c in arr.contexts])
