"""Integer-matrix workhorses: row Hermite normal form, kernels, intersections.

Matrices are lists/tuples of integer row vectors; lattices are row spans.
The HNF convention is row-style echelon: pivots strictly to the right as
rows descend, positive pivots, entries above a pivot reduced into
[0, pivot).  Zero rows are dropped, so the HNF is a canonical basis of the
row lattice and two lattices are equal iff their HNFs are identical.
"""

from __future__ import annotations

from .errors import DomainError


def hnf(rows) -> list[list[int]]:
    """Canonical row Hermite normal form of the integer row span."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        # Reduce column c below row r to a single nonzero entry via gcd steps.
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    ai, ar = a[i], a[r]
                    for j in range(c, n):
                        ai[j] -= q * ar[j]
                    if ai[c]:
                        done = False
            if done:
                break
        if r < m and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            p = a[r][c]
            for i in range(r):
                q = a[i][c] // p
                if q:
                    ai, ar = a[i], a[r]
                    for j in range(c, n):
                        ai[j] -= q * ar[j]
            r += 1
    return [row for row in a[:r]]


def hnf_square(rows, n: int) -> tuple[tuple[int, ...], ...]:
    """HNF of a full-rank lattice in Z^n; raises if the rank is lower."""
    h = hnf(rows)
    if len(h) != n:
        raise DomainError(f"expected rank {n}, got {len(h)}")
    return tuple(tuple(r) for r in h)


def left_kernel(rows) -> list[list[int]]:
    """Basis (in HNF) of {c : sum_i c_i * rows[i] = 0} over Z."""
    a = [list(r) for r in rows]
    m = len(a)
    if m == 0:
        return []
    n = len(a[0])
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    ai, ar, ui, ur = a[i], a[r], u[i], u[r]
                    for j in range(c, n):
                        ai[j] -= q * ar[j]
                    for j in range(m):
                        ui[j] -= q * ur[j]
                    if ai[c]:
                        done = False
            if done:
                break
        if r < m and a[r][c]:
            r += 1
    kernel = [u[i] for i in range(r, m)]
    return hnf(kernel)


def intersect_rows(rows_a, rows_b) -> list[list[int]]:
    """HNF basis of the intersection of two integer row lattices in Z^n."""
    a = [list(r) for r in rows_a]
    b = [list(r) for r in rows_b]
    if not a or not b:
        return []
    ker = left_kernel(a + b)
    ma = len(a)
    n = len(a[0])
    gens = []
    for c in ker:
        v = [0] * n
        for i in range(ma):
            if c[i]:
                for j in range(n):
                    v[j] += c[i] * a[i][j]
        gens.append(v)
    return hnf(gens)


def contains(hnf_rows, vec) -> bool:
    """Membership of an integer vector in the row lattice given by an HNF."""
    v = list(vec)
    n = len(v)
    for row in hnf_rows:
        c = next(j for j in range(n) if row[j])
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            for j in range(c, n):
                v[j] -= q * row[j]
    return not any(v)


def diagonal_product(hnf_rows) -> int:
    """Index of a full-rank HNF lattice in Z^n (product of pivots)."""
    out = 1
    for i, row in enumerate(hnf_rows):
        out *= row[i]
    return out
