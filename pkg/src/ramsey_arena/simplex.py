"""Exact rational simplex.

Dense two-phase tableau over exact rationals with Bland's rule, so every
solve terminates and every reported optimum is a true vertex.  gmpy2.mpq
does the pivoting arithmetic when available (it is much faster than
Fraction); all public values are fractions.Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

try:
    from gmpy2 import mpq as _q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _q = Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _to_q(x) -> "_q":
    if isinstance(x, Fraction):
        return _q(x.numerator, x.denominator)
    return _q(x)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass
class StandardResult:
    status: str
    x: Optional[List[Fraction]]
    objective: Optional[Fraction]
    basis: Optional[List[int]]


def solve_standard(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction],
                   c: Sequence[Fraction]) -> StandardResult:
    """min c.x  s.t.  A x = b, x >= 0, by two-phase tableau simplex."""
    m = len(A)
    n = len(c)
    rows = [[_to_q(v) for v in row] for row in A]
    rhs = [_to_q(v) for v in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    zero = _q(0)
    one = _q(1)
    # tableau columns: n structural + m artificial + rhs
    width = n + m + 1
    tab = []
    for i in range(m):
        row = rows[i] + [zero] * m + [rhs[i]]
        row[n + i] = one
        tab.append(row)
    basis = [n + i for i in range(m)]

    def pivot(r: int, col: int) -> None:
        prow = tab[r]
        inv = one / prow[col]
        tab[r] = [v * inv for v in prow]
        prow = tab[r]
        for i in range(len(tab)):
            if i != r and tab[i][col] != 0:
                f = tab[i][col]
                tab[i] = [a - f * p for a, p in zip(tab[i], prow)]
        basis[r] = col

    def run_phase(cost: List["_q"], allowed: int) -> None:
        # reduced cost row z = cost - cost_B . tab
        while True:
            z = list(cost[:allowed])
            obj = zero
            for i, bi in enumerate(basis):
                cb = cost[bi]
                if cb != 0:
                    row = tab[i]
                    for j in range(allowed):
                        z[j] -= cb * row[j]
                    obj -= cb * row[-1]
            enter = next((j for j in range(allowed)
                          if j not in basis and z[j] < 0), None)  # Bland: smallest index
            if enter is None:
                return
            leave = None
            best = None
            for i in range(len(tab)):
                a = tab[i][enter]
                if a > 0:
                    ratio = tab[i][-1] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave is None:
                raise _Unbounded()
            pivot(leave, enter)

    class _Unbounded(Exception):
        pass

    # phase 1
    cost1 = [zero] * n + [one] * m + [zero]
    try:
        run_phase(cost1, n + m)
    except _Unbounded:  # pragma: no cover - phase 1 is always bounded below by 0
        raise AssertionError("phase 1 cannot be unbounded")
    infeas = sum((tab[i][-1] for i, bi in enumerate(basis) if bi >= n), zero)
    if infeas != 0:
        return StandardResult(INFEASIBLE, None, None, None)
    # drive remaining artificials out of the basis where possible
    for i, bi in enumerate(basis):
        if bi >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is not None:
                pivot(i, col)
    # phase 2 (artificial columns stay but are never re-entered)
    cost2 = [_to_q(v) for v in c] + [zero] * m + [zero]
    try:
        run_phase(cost2, n)
    except _Unbounded:
        return StandardResult(UNBOUNDED, None, None, None)
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = _to_fraction(tab[i][-1])
    objective = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return StandardResult(OPTIMAL, x, objective, list(basis))


def solve_linear_system(A: Sequence[Sequence[Fraction]],
                        b: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One exact solution of A x = b (least-constrained variables get 0),
    or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[_to_q(v) for v in row] + [_to_q(b[i])] for i, row in enumerate(A)]
    pivots = []
    r = 0
    for col in range(n):
        sel = next((i for i in range(r, m) if M[i][col] != 0), None)
        if sel is None:
            continue
        M[r], M[sel] = M[sel], M[r]
        inv = _q(1) / M[r][col]
        M[r] = [v * inv for v in M[r]]
        for i in range(m):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * p for a, p in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i][-1] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = _to_fraction(M[i][-1])
    return x
