"""The two-term chain complex Z_d[M] -> Z_d[L] of an arrangement and dc = tau."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .arrangement import Arrangement
from .intlinalg import (
    Matrix,
    ModObstruction,
    SmithForm,
    howell_form,
    kernel_mod,
    lex_min_in_coset,
    smith_normal_form,
    solve_mod,
    transpose,
)


@dataclass(frozen=True)
class ChainData:
    """Boundary matrix (rows = labels, columns = contexts) and its Smith form over Z.

    ``smith_t`` is the Smith form of the transpose, i.e. of the coboundary
    Z[L] -> Z[M]; both are computed over Z once and reused for every modulus.
    """

    labels: tuple[str, ...]
    contexts: tuple[str, ...]
    boundary: Matrix
    d: int
    smith: SmithForm
    smith_t: SmithForm

    @property
    def coboundary(self) -> Matrix:
        return transpose(self.boundary, len(self.contexts)) if self.labels else [[] for _ in self.contexts]


def chain_from_matrix(labels, contexts, boundary: Matrix, d: int) -> ChainData:
    nl, nc = len(labels), len(contexts)
    sf = smith_normal_form(boundary, nl, nc)
    # U B V = S  =>  V^T B^T U^T = S^T
    sf_t = SmithForm(U=transpose(sf.V, nc), S=transpose(sf.S, nc), V=transpose(sf.U, nl))
    return ChainData(
        labels=tuple(labels),
        contexts=tuple(contexts),
        boundary=boundary,
        d=d,
        smith=sf,
        smith_t=sf_t,
    )


def boundary_matrix(arr: Arrangement) -> Matrix:
    index = {a: i for i, a in enumerate(arr.labels)}
    b = [[0] * len(arr.contexts) for _ in arr.labels]
    for j, c in enumerate(arr.contexts):
        for e in c.elements:
            b[index[e.label]][j] += e.sign
    return b


def build_chain(arr: Arrangement) -> ChainData:
    return chain_from_matrix(arr.labels, arr.context_ids, boundary_matrix(arr), arr.d)


@dataclass(frozen=True)
class ClassicalSolution:
    c: dict[str, int]

    def values(self, labels) -> list[int]:
        return [self.c[a] for a in labels]


@dataclass(frozen=True)
class Infeasible:
    """``witness`` is a context-indexed y with y.coboundary == 0 and y.tau != 0 (mod d)."""

    witness: dict[str, int] | None = None


@dataclass(frozen=True)
class TooLarge:
    candidates: int
    cap: int


def check_classical(arr: Arrangement, c: dict[str, int]) -> bool:
    """Direct evaluation of every context equation."""
    return all(
        sum(e.sign * c[e.label] for e in ctx.elements) % arr.d == ctx.tau % arr.d
        for ctx in arr.contexts
    )


def check_witness(arr: Arrangement, y: dict[str, int]) -> bool:
    d = arr.d
    col = {a: 0 for a in arr.labels}
    for ctx in arr.contexts:
        for e in ctx.elements:
            col[e.label] += y[ctx.id] * e.sign
    if any(v % d for v in col.values()):
        return False
    return sum(y[ctx.id] * ctx.tau for ctx in arr.contexts) % d != 0


def solve_classical(arr: Arrangement, chain: ChainData | None = None) -> ClassicalSolution | Infeasible:
    """Solve dc = tau over Z_d.

    The returned solution is the lexicographically smallest one with respect
    to the label order of the arrangement.
    """
    chain = chain or build_chain(arr)
    d = arr.d
    n = len(arr.labels)
    res = solve_mod(chain.coboundary, arr.tau(), d, n, sf=chain.smith_t)
    if isinstance(res, ModObstruction):
        return Infeasible(witness=dict(zip(arr.context_ids, res.y)))
    kernel = kernel_mod(chain.coboundary, d, n, sf=chain.smith_t)
    x = lex_min_in_coset(res.x, howell_form(kernel, n, d), d)
    return ClassicalSolution(c=dict(zip(arr.labels, x)))


def brute_force_classical(arr: Arrangement, cap: int = 4096) -> ClassicalSolution | Infeasible | TooLarge:
    """Exhaustive search in lexicographic order; independent of the Smith-form path."""
    total = arr.d ** len(arr.labels)
    if total > cap:
        return TooLarge(candidates=total, cap=cap)
    index = {a: i for i, a in enumerate(arr.labels)}
    rows = [([(index[e.label], e.sign) for e in ctx.elements], ctx.tau) for ctx in arr.contexts]
    d = arr.d
    for cand in itertools.product(range(d), repeat=len(arr.labels)):
        if all(sum(s * cand[i] for i, s in row) % d == t for row, t in rows):
            return ClassicalSolution(c=dict(zip(arr.labels, cand)))
    return Infeasible()


def cohomology_rank(chain: ChainData, d: int | None = None) -> list[int]:
    """Cyclic factors of H^2 = coker(coboundary) over Z_d, trivial factors dropped.

    Each Smith diagonal entry s contributes Z_gcd(s, d); every context beyond
    the rank contributes a full Z_d.
    """
    d = chain.d if d is None else d
    diag = chain.smith_t.diagonal
    factors = []
    for i in range(len(chain.contexts)):
        s = diag[i] if i < len(diag) else 0
        g = gcd(s, d)
        if g > 1:
            factors.append(g)
    return sorted(factors)
