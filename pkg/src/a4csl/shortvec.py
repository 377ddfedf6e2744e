"""Exact short-vector enumeration for positive definite integer forms.

enumerate_form walks all integer vectors x with F(x) = x^T G x equal to (or
at most) a target, for a symmetric positive definite integer Gram matrix G.
The quadratic form is completed into a sum of weighted squares by an exact
LDL decomposition over Fractions once per Gram matrix; the depth-first
search itself runs on rescaled integers only, so the enumeration is exact
and provably complete (no floating point, no epsilon).

Vectors come in +-pairs; exactly one representative per pair is produced
(the one whose highest-index nonzero coordinate is positive).  The zero
vector is never produced.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm

from .errors import BudgetError, DomainError


class NodeBudget:
    """Mutable node counter shared by possibly-nested enumerations."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0


@lru_cache(maxsize=64)
def _prepared(gram: tuple[tuple[int, ...], ...]):
    """LDL data rescaled to integers: weights W, row denominators UD,
    scaled off-diagonal rows UN and the global multiplier M with
    M * F(x) = sum_i W[i] * (x[i]*UD[i] + sum_{j>i} UN[i][j]*x[j])^2.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    d: list[Fraction] = []
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        di = a[i][i] - sum(d[k] * u[k][i] * u[k][i] for k in range(i))
        if di <= 0:
            raise DomainError("form is not positive definite")
        d.append(di)
        u[i][i] = Fraction(1)
        for j in range(i + 1, n):
            u[i][j] = (a[i][j] - sum(d[k] * u[k][i] * u[k][j] for k in range(i))) / di
    ud = [lcm(*(u[i][j].denominator for j in range(i, n))) for i in range(n)]
    un = [
        tuple(int(u[i][j] * ud[i]) if j > i else 0 for j in range(n))
        for i in range(n)
    ]
    m = lcm(*(d[i].denominator * ud[i] * ud[i] for i in range(n)))
    w = [m * d[i].numerator // (d[i].denominator * ud[i] * ud[i]) for i in range(n)]
    return tuple(w), tuple(ud), tuple(un), m


def enumerate_form(gram, target: int, *, equal: bool = True, budget: NodeBudget | None = None):
    """Yield (x, F(x)) with F(x) == target (equal=True) or 0 < F(x) <= target."""
    n = len(gram)
    w, ud, un, m = _prepared(tuple(tuple(int(v) for v in row) for row in gram))
    if target < 0 or (equal and target == 0):
        return
    limit = budget.limit - budget.used if budget is not None else None
    used = 0

    x = [0] * n
    rem = [0] * (n + 1)  # scaled remaining budget entering each level
    rem[n] = target * m
    cnum = [0] * n
    cur = [0] * n
    high = [0] * n
    zpref = [True] * (n + 1)  # x[lvl+1:] all zero?
    lvl = n - 1
    entering = True
    try:
        while True:
            if entering:
                used += 1
                if limit is not None and used > limit:
                    raise BudgetError(f"enumeration exceeded {budget.limit} nodes")
                rr = rem[lvl + 1]
                cn = 0
                row = un[lvl]
                for j in range(lvl + 1, n):
                    xj = x[j]
                    if xj:
                        cn += row[j] * xj
                cnum[lvl] = cn
                s = isqrt(rr // w[lvl])
                udl = ud[lvl]
                lo = -((s + cn) // udl)
                hi = (s - cn) // udl
                if zpref[lvl + 1] and lo < 0:
                    lo = 0
                if lvl == 0 and equal:
                    # Solve w0 * v^2 == rr exactly instead of scanning.
                    q, r = divmod(rr, w[0])
                    if r == 0:
                        v = isqrt(q)
                        if v * v == q:
                            for vc in (v, -v) if v else (0,):
                                num = vc - cn
                                if num % udl == 0:
                                    x0 = num // udl
                                    if lo <= x0 <= hi and not (zpref[1] and x0 == 0):
                                        x[0] = x0
                                        yield tuple(x), target
                    # fall through to backtrack
                    cur[lvl] = 1
                    high[lvl] = 0
                else:
                    cur[lvl] = lo
                    high[lvl] = hi
                entering = False
                continue

            if cur[lvl] > high[lvl]:
                lvl += 1
                if lvl == n:
                    return
                continue

            xl = cur[lvl]
            cur[lvl] = xl + 1
            v = xl * ud[lvl] + cnum[lvl]
            term = w[lvl] * v * v
            rr = rem[lvl + 1] - term
            # in range by construction, but guard exactness for lvl iteration
            if rr < 0:
                continue
            x[lvl] = xl
            if lvl == 0:
                if not (zpref[1] and xl == 0):
                    yield tuple(x), target - rr // m
                continue
            rem[lvl] = rr
            zpref[lvl] = zpref[lvl + 1] and xl == 0
            lvl -= 1
            entering = True
    finally:
        if budget is not None:
            budget.used += used


def enumerate_two_forms(
    gram1,
    target1: int,
    gram2,
    target2: int,
    *,
    budget: NodeBudget | None = None,
):
    """Yield x with F1(x) == target1 and F2(x) == target2, both forms positive
    definite.  The DFS prunes on both quadrics at every level, which is far
    tighter than enumerating one form and filtering the other."""
    n = len(gram1)
    w1, ud1, un1, m1 = _prepared(tuple(tuple(int(v) for v in row) for row in gram1))
    w2, ud2, un2, m2 = _prepared(tuple(tuple(int(v) for v in row) for row in gram2))
    if target1 <= 0 or target2 <= 0:
        return
    limit = budget.limit - budget.used if budget is not None else None
    used = 0

    x = [0] * n
    rem1 = [0] * (n + 1)
    rem2 = [0] * (n + 1)
    rem1[n] = target1 * m1
    rem2[n] = target2 * m2
    c1 = [0] * n
    c2 = [0] * n
    cur = [0] * n
    high = [0] * n
    zpref = [True] * (n + 1)
    lvl = n - 1
    entering = True
    try:
        while True:
            if entering:
                used += 1
                if limit is not None and used > limit:
                    raise BudgetError(f"enumeration exceeded {budget.limit} nodes")
                cn1 = 0
                row = un1[lvl]
                for j in range(lvl + 1, n):
                    if x[j]:
                        cn1 += row[j] * x[j]
                c1[lvl] = cn1
                cn2 = 0
                row = un2[lvl]
                for j in range(lvl + 1, n):
                    if x[j]:
                        cn2 += row[j] * x[j]
                c2[lvl] = cn2
                s1 = isqrt(rem1[lvl + 1] // w1[lvl])
                s2 = isqrt(rem2[lvl + 1] // w2[lvl])
                u1, u2 = ud1[lvl], ud2[lvl]
                lo = max(-((s1 + cn1) // u1), -((s2 + cn2) // u2))
                hi = min((s1 - cn1) // u1, (s2 - cn2) // u2)
                if zpref[lvl + 1] and lo < 0:
                    lo = 0
                if lvl == 0:
                    q, r = divmod(rem1[1], w1[0])
                    if r == 0:
                        v = isqrt(q)
                        if v * v == q:
                            for vc in (v, -v) if v else (0,):
                                num = vc - cn1
                                if num % u1 == 0:
                                    x0 = num // u1
                                    if lo <= x0 <= hi and not (zpref[1] and x0 == 0):
                                        v2 = x0 * u2 + cn2
                                        if w2[0] * v2 * v2 == rem2[1]:
                                            x[0] = x0
                                            yield tuple(x)
                    cur[lvl] = 1
                    high[lvl] = 0
                else:
                    cur[lvl] = lo
                    high[lvl] = hi
                entering = False
                continue

            if cur[lvl] > high[lvl]:
                lvl += 1
                if lvl == n:
                    return
                continue

            xl = cur[lvl]
            cur[lvl] = xl + 1
            v1 = xl * ud1[lvl] + c1[lvl]
            r1 = rem1[lvl + 1] - w1[lvl] * v1 * v1
            if r1 < 0:
                continue
            v2 = xl * ud2[lvl] + c2[lvl]
            r2 = rem2[lvl + 1] - w2[lvl] * v2 * v2
            if r2 < 0:
                continue
            x[lvl] = xl
            rem1[lvl] = r1
            rem2[lvl] = r2
            zpref[lvl] = zpref[lvl + 1] and xl == 0
            lvl -= 1
            entering = True
    finally:
        if budget is not None:
            budget.used += used


def eval_form(gram, x) -> int:
    """x^T G x for an integer symmetric matrix G."""
    total = 0
    n = len(x)
    for i in range(n):
        xi = x[i]
        if not xi:
            continue
        row = gram[i]
        total += row[i] * xi * xi
        for j in range(i + 1, n):
            if x[j]:
                total += 2 * row[j] * xi * x[j]
    return total


def gram_of_basis(gram, rows):
    """Gram matrix B G B^T of lattice vectors given as integer rows."""
    n = len(rows)
    dim = len(gram)
    gb = [[sum(gram[i][j] * r[j] for j in range(dim)) for i in range(dim)] for r in rows]
    return tuple(
        tuple(sum(rows[a][i] * gb[b][i] for i in range(dim)) for b in range(n))
        for a in range(n)
    )
