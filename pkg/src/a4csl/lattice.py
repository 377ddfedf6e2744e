"""The lattice L (the A4 root lattice scaled by 1/sqrt2) and its sublattices.

L is spanned by four fixed twist-invariant icosians b1..b4; its Gram matrix
is exactly half the A4 Cartan matrix.  All sublattices are stored in
L-coordinates as canonical 4x4 integer HNFs, so lattice equality is HNF
equality and every index is a diagonal product.  Intersections are
computed by one integer-kernel code path that also serves the rank-8
module case (module intersected with the rational span of L).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .field import KNum
from .hnf import hnf_square, diagonal_product, intersect_rows, left_kernel, contains as hnf_contains
from .icosian import Icosian, Rank8Module
from .quaternion import Quat

L_BASIS = (
    Quat.of(1, 0, 0, 0),
    Quat(KNum(Fraction(-1, 2), 0), KNum(Fraction(1, 2), 0), KNum(Fraction(1, 2), 0), KNum(Fraction(1, 2), 0)),
    Quat.of(0, -1, 0, 0),
    Quat(
        KNum(0, 0),
        KNum(Fraction(1, 2), 0),
        KNum(Fraction(-1, 2), Fraction(1, 2)),
        KNum(0, Fraction(-1, 2)),
    ),
)

B_ICO = tuple(Icosian.from_quat(b) for b in L_BASIS)
assert all(b is not None for b in B_ICO), "L basis must lie in I"
B_ZC = tuple(b.zc for b in B_ICO)


def inner_product_k(x: Quat, y: Quat) -> KNum:
    """Componentwise bilinear form sum x_i y_i in K."""
    out = KNum.of(0)
    for xc, yc in zip(x.components(), y.components()):
        out = out + xc * yc
    return out


def inner_product(x: Quat, y: Quat) -> Fraction:
    """Euclidean inner product; requires the K-value to be rational."""
    v = inner_product_k(x, y)
    if v.b != 0:
        raise DomainError(f"inner product {v} is not rational")
    return v.a


GRAM = tuple(tuple(inner_product(bi, bj) for bj in L_BASIS) for bi in L_BASIS)


def _invert_frac(mat):
    n = len(mat)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _det_frac(mat) -> Fraction:
    n = len(mat)
    a = [[Fraction(v) for v in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return det


GRAM_DET = _det_frac(GRAM)
GRAM_INV = tuple(tuple(row) for row in _invert_frac(GRAM))

# Integer inverse of the leading 4x4 block of B_ZC (unimodular by choice of
# basis order), used for the fast integer coordinate path.
_LEAD = [[B_ZC[i][j] for j in range(4)] for i in range(4)]
assert abs(_det_frac(_LEAD)) == 1, "leading block of the L basis must be unimodular"
_LEAD_INV = tuple(
    tuple(int(v) for v in row) for row in _invert_frac(_LEAD)
)


def int_L_coords(x: Icosian) -> tuple[int, int, int, int] | None:
    """L-coordinates of an icosian lying in L, else None."""
    zc = x.zc
    v = [0, 0, 0, 0]
    for c in range(4):
        zcc = zc[c]
        if zcc:
            for i in range(4):
                v[i] += zcc * _LEAD_INV[c][i]
    for j in range(8):
        if sum(v[i] * B_ZC[i][j] for i in range(4)) != zc[j]:
            return None
    return tuple(v)


_MB = [[None] * 4 for _ in range(8)]  # rational 8x4: (a,b)-parts of b_j components
for _j in range(4):
    for _i, _comp in enumerate(L_BASIS[_j].components()):
        _MB[2 * _i][_j] = _comp.a
        _MB[2 * _i + 1][_j] = _comp.b


def to_L_coords(x: Quat) -> tuple[Fraction, Fraction, Fraction, Fraction] | None:
    """Exact coordinates of x in the L basis, or None if x is outside the
    rational span of L (equivalently, not twist-invariant)."""
    vec = []
    for comp in x.components():
        vec.append(comp.a)
        vec.append(comp.b)
    a = [[Fraction(_MB[r][c]) for c in range(4)] + [Fraction(vec[r])] for r in range(8)]
    cols = []
    row = 0
    for col in range(4):
        piv = next((r for r in range(row, 8) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        p = a[row][col]
        a[row] = [v / p for v in a[row]]
        for r in range(8):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[row])]
        cols.append(col)
        row += 1
    if len(cols) != 4:
        return None
    for r in range(row, 8):
        if a[r][4] != 0:
            return None
    sol = [Fraction(0)] * 4
    for r, col in enumerate(cols):
        sol[col] = a[r][4]
    return tuple(sol)


@dataclass(frozen=True, slots=True)
class SublatticeL:
    """A finite-index sublattice of L as a canonical 4x4 HNF in L-coordinates."""

    hnf: tuple[tuple[int, ...], ...]

    @classmethod
    def from_integer_rows(cls, rows) -> "SublatticeL":
        return cls(hnf_square(rows, 4))

    @classmethod
    def from_rational_rows(cls, rows) -> "SublatticeL":
        out = []
        for r in rows:
            row = []
            for v in r:
                fv = Fraction(v)
                if fv.denominator != 1:
                    raise DomainError(f"non-integer L-coordinate {fv}")
                row.append(int(fv))
            out.append(row)
        return cls.from_integer_rows(out)

    @classmethod
    def full(cls) -> "SublatticeL":
        return cls(tuple(tuple(int(i == j) for j in range(4)) for i in range(4)))

    @property
    def index(self) -> int:
        return diagonal_product(self.hnf)

    def scaled(self, k: int) -> "SublatticeL":
        if k <= 0:
            raise DomainError("scale factor must be positive")
        return SublatticeL(tuple(tuple(k * v for v in row) for row in self.hnf))

    def contains_vector(self, vec) -> bool:
        return hnf_contains(self.hnf, vec)

    def contains(self, other: "SublatticeL") -> bool:
        return all(self.contains_vector(r) for r in other.hnf)

    def to_json(self) -> dict:
        return {"hnf": [v for row in self.hnf for v in row], "index": self.index}

    @classmethod
    def from_json(cls, data) -> "SublatticeL":
        flat = data["hnf"]
        if len(flat) != 16:
            raise DomainError("sublattice HNF must have 16 entries")
        rows = [flat[4 * i : 4 * i + 4] for i in range(4)]
        lat = cls.from_integer_rows(rows)
        if lat.index != data["index"]:
            raise DomainError(
                f"declared index {data['index']} does not match HNF index {lat.index}"
            )
        return lat


def hnf4(rows) -> SublatticeL:
    return SublatticeL.from_rational_rows(rows)


def intersect(a: SublatticeL, b: SublatticeL) -> SublatticeL:
    return SublatticeL.from_integer_rows(intersect_rows(a.hnf, b.hnf))


def lattice_sum(a: SublatticeL, b: SublatticeL) -> SublatticeL:
    return SublatticeL.from_integer_rows(list(a.hnf) + list(b.hnf))


def dual_L() -> tuple[tuple[Fraction, ...], ...]:
    """The dual basis of L in L-coordinates (rows of the inverse Gram)."""
    return GRAM_INV


def module_to_L(mod: Rank8Module) -> SublatticeL:
    """Intersection of a full rank-8 submodule of I with L, in L-coordinates."""
    rows = list(mod.rows) + [list(r) for r in B_ZC]
    kernel = left_kernel(rows)
    gens = []
    for c in kernel:
        zc = [0] * 8
        for i in range(8):
            if c[i]:
                for k in range(8):
                    zc[k] += c[i] * mod.rows[i][k]
        coords = int_L_coords(Icosian(tuple(zc)))
        assert coords is not None, "kernel vector must land in L"
        gens.append(coords)
    if len(gens) < 4:
        raise DomainError("module meets L in rank < 4")
    return SublatticeL.from_integer_rows(gens)


def phi_plus_image(q: Icosian) -> SublatticeL:
    """The lattice phi_plus(q I) = {q x + twist(q x)}, as a sublattice of L."""
    if q.is_zero():
        raise DomainError("phi_plus image of zero is not a lattice")
    from .icosian import ZB_ICO

    rows = []
    for zb in ZB_ICO:
        y = (q * zb).phi_plus()
        coords = int_L_coords(y)
        if coords is None:
            raise DomainError("phi_plus image escaped L; input was not an icosian")
        rows.append(coords)
    return SublatticeL.from_integer_rows(rows)


def conjugation_matrix_L() -> tuple[tuple[int, ...], ...]:
    """Matrix of quaternion conjugation restricted to L (column convention)."""
    cols = []
    for b in B_ICO:
        coords = int_L_coords(b.conj())
        assert coords is not None, "conjugation must preserve L"
        cols.append(coords)
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))


def is_g_orthogonal(mat) -> bool:
    """M^T G M == G, exactly."""
    n = 4
    mt_g = [[sum(Fraction(mat[k][i]) * GRAM[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            v = sum(mt_g[i][k] * Fraction(mat[k][j]) for k in range(n))
            if v != GRAM[i][j]:
                return False
    return True
