"""Splitting a constraint system over the prime powers of d and gluing solutions back."""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement
from .homology import ClassicalSolution


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial division; returns [(p, alpha), ...] with p increasing."""
    if n < 1:
        raise ValueError("need a positive integer")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            out.append((p, a))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class PrimeComponent:
    p: int
    alpha: int
    modulus: int  # p ** alpha
    cofactor: int  # d / modulus
    weight: int  # cofactor^-1 mod modulus


@dataclass(frozen=True)
class PrimePlan:
    d: int
    components: tuple[PrimeComponent, ...]

    def identity_holds(self) -> bool:
        return sum(c.cofactor * c.weight for c in self.components) % self.d == 1 % self.d

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "components": [
                {"p": c.p, "alpha": c.alpha, "modulus": c.modulus, "cofactor": c.cofactor, "weight": c.weight}
                for c in self.components
            ],
        }


def prime_plan(d: int) -> PrimePlan:
    comps = []
    for p, a in factorize(d):
        q = p**a
        dj = d // q
        w = pow(dj % q, -1, q)
        comps.append(PrimeComponent(p, a, q, dj, w))
    return PrimePlan(d, tuple(comps))


def decompose(arr: Arrangement) -> tuple[PrimePlan, list[Arrangement]]:
    plan = prime_plan(arr.d)
    parts = [arr.with_tau([c.cofactor * t for t in arr.tau()], d=c.modulus) for c in plan.components]
    return plan, parts


def glue(solutions: list[ClassicalSolution], plan: PrimePlan) -> ClassicalSolution:
    """Combine per-component solutions into one mod d.

    Component j solves the system scaled by its cofactor d_j, so its values
    are d_j times the wanted residues mod p_j^alpha_j. Multiplying by the
    weight w_j undoes the scaling, and d_j w_j is the idempotent that places
    the result in that component: c = sum_j (d_j w_j) (w_j c_j) mod d.
    """
    if len(solutions) != len(plan.components):
        raise ValueError("one solution per prime component is required")
    labels = set(solutions[0].c) if solutions else set()
    if any(set(s.c) != labels for s in solutions):
        raise ValueError("component solutions have different label sets")
    d = plan.d
    out = {a: 0 for a in (solutions[0].c if solutions else {})}
    for comp, sol in zip(plan.components, solutions):
        e = comp.cofactor * comp.weight
        for a, v in sol.c.items():
            out[a] = (out[a] + e * comp.weight * v) % d
    return ClassicalSolution(c=out)
