"""Exact integer linear algebra: Smith normal form and linear systems over Z_d.

Matrices are plain lists of lists of Python ints so that entries never
overflow; everything here is small enough that numpy buys nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def det(a: Matrix) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == S`` with U, V unimodular and S diagonal.

    The diagonal entries are non-negative and each divides the next.
    """

    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        n = min(len(self.U), len(self.V))
        return [self.S[i][i] for i in range(n)]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def smith_normal_form(a: Matrix, nrows: int | None = None, ncols: int | None = None) -> SmithForm:
    """Smith normal form over Z with unimodular transforms.

    ``nrows``/``ncols`` are only needed to disambiguate empty matrices.
    """
    m = len(a) if nrows is None else nrows
    n = (len(a[0]) if a else 0) if ncols is None else ncols
    s = [list(row) for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i: int, j: int) -> None:
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, k: int) -> None:
        # row[dst] += k * row[src]
        if k:
            s[dst] = [x + k * y for x, y in zip(s[dst], s[src])]
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, k: int) -> None:
        if k:
            for row in s:
                row[dst] += k * row[src]
            for row in v:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        # pick the smallest nonzero entry in the trailing block as pivot
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = s[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return _finish(u, s, v, m, n)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = s[t][t]
            done = True
            for i in range(t + 1, m):
                q = s[i][t] // p
                add_row(i, t, -q)
                if s[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = s[t][j] // p
                add_col(j, t, -q)
                if s[t][j]:
                    done = False
            if not done:
                continue
            # divisibility: pivot must divide every remaining entry
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return _finish(u, s, v, m, n)


def _finish(u: Matrix, s: Matrix, v: Matrix, m: int, n: int) -> SmithForm:
    for t in range(min(m, n)):
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return SmithForm(U=u, S=s, V=v)


def inverse_unimodular(a: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix via its Smith form."""
    n = len(a)
    sf = smith_normal_form(a, n, n)
    # U A V = S = diag(+-1) -> A^-1 = V S^-1 U, and S^-1 = S
    if any(abs(x) != 1 for x in sf.diagonal):
        raise ValueError("matrix is not unimodular")
    return matmul(matmul(sf.V, sf.S), sf.U)


def invariant_factors(a: Matrix, nrows: int, ncols: int) -> list[int]:
    """Invariant factors of coker(a: Z^ncols -> Z^nrows), 0 for a free summand.

    Trivial factors (1) are dropped; torsion first, then free part.
    """
    sf = smith_normal_form(a, nrows, ncols)
    diag = sf.diagonal
    torsion = [x for x in diag if x > 1]
    free = nrows - sf.rank
    return torsion + [0] * free


# --- linear systems over Z_d -------------------------------------------------


@dataclass(frozen=True)
class ModSolution:
    x: list[int]


@dataclass(frozen=True)
class ModObstruction:
    """Row vector ``y`` with ``y @ A == 0`` and ``y @ b != 0`` (mod d)."""

    y: list[int]


def _unit_multiplier(a: int, n: int) -> int:
    """A unit u mod n with u*a == gcd(a, n) (mod n)."""
    a %= n
    g = gcd(a, n)
    if a == 0:
        return 1
    n1 = n // g
    base = pow(a // g, -1, n1) if n1 > 1 else 0
    u = base
    while gcd(u, n) != 1:
        u += n1
    return u % n


def solve_mod(a: Matrix, b: list[int], d: int, ncols: int, sf: SmithForm | None = None):
    """Solve ``A x == b (mod d)``.

    Returns :class:`ModSolution` (some solution, not normalized) or
    :class:`ModObstruction`. ``sf`` may carry a precomputed Smith form of A.
    """
    m = len(a)
    if sf is None:
        sf = smith_normal_form(a, m, ncols)
    # U A V = S  =>  S (V^-1 x) = U b
    ub = [x % d for x in matvec(sf.U, b)] if m else []
    y = [0] * ncols
    diag = sf.diagonal
    for i in range(m):
        s_i = diag[i] if i < len(diag) else 0
        g = gcd(s_i, d)
        if ub[i] % g:
            # obstruction: (d/g) * row i of U
            k = d // g
            return ModObstruction(y=[(k * x) % d for x in sf.U[i]])
        if s_i % d and i < ncols:
            y[i] = (ub[i] // g) * pow((s_i // g) % (d // g), -1, d // g) % (d // g) if d // g > 1 else 0
    x = [v % d for v in matvec(sf.V, y)] if ncols else []
    return ModSolution(x=x)


def kernel_mod(a: Matrix, d: int, ncols: int, sf: SmithForm | None = None) -> Matrix:
    """Generators (as rows) of ``{x : A x == 0 mod d}``."""
    m = len(a)
    if sf is None:
        sf = smith_normal_form(a, m, ncols)
    diag = sf.diagonal
    gens = []
    for j in range(ncols):
        s_j = diag[j] if j < len(diag) else 0
        step = d // gcd(s_j, d)
        if step % d == 0:
            continue
        gens.append([(step * sf.V[i][j]) % d for i in range(ncols)])
    return gens


def howell_form(rows: Matrix, ncols: int, d: int) -> Matrix:
    """Howell normal form of the Z_d-row-span of ``rows``.

    Each returned row has a leading entry that divides d; a vector of the
    span whose first k entries vanish is a combination of the rows whose
    pivot lies beyond column k.
    """
    work = [[x % d for x in r] for r in rows if any(x % d for x in r)]
    out: Matrix = []
    for col in range(ncols):
        piv = [r for r in work if r[col] % d]
        rest = [r for r in work if not r[col] % d]
        if not piv:
            work = rest
            continue
        p = piv[0]
        for r in piv[1:]:
            # combine p and r with a unimodular 2x2 so that r[col] -> 0
            a, b = p[col], r[col]
            g, s, t = _xgcd(a, b)
            p_new = [(s * x + t * y) % d for x, y in zip(p, r)]
            r_new = [((b // g) * x - (a // g) * y) % d for x, y in zip(p, r)]
            p = p_new
            if any(r_new):
                rest.append(r_new)
        u = _unit_multiplier(p[col], d)
        p = [(u * x) % d for x in p]
        g = p[col]
        ann = [((d // g) * x) % d for x in p]
        if any(ann):
            rest.append(ann)
        out.append(p)
        work = rest
    # reduce entries above pivots
    for i, r in enumerate(out):
        c = _lead(r)
        for k in range(i):
            q = out[k][c] // r[c]
            if q:
                out[k] = [(x - q * y) % d for x, y in zip(out[k], r)]
    return out


def _lead(row: list[int]) -> int:
    return next(i for i, x in enumerate(row) if x)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def lex_min_in_coset(x: list[int], howell: Matrix, d: int) -> list[int]:
    """Lexicographically smallest element of ``x + span(howell)`` mod d."""
    x = [v % d for v in x]
    for r in howell:
        c = _lead(r)
        q = x[c] // r[c]
        if q:
            x = [(v - q * w) % d for v, w in zip(x, r)]
    return x
