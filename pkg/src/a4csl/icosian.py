"""The icosian ring I: a maximal order of H(Q(sqrt5)) of o-rank 4, Z-rank 8.

The o-module basis is the classical one:

    e1 = (1,0,0,0),  e2 = (0,1,0,0),
    e3 = (1,1,1,1)/2,  e4 = (1-tau, tau, 0, 1)/2,

and the fixed Z-basis is (e1..e4, tau*e1..tau*e4) in that order.  An
Icosian stores its integer coordinate 8-vector with respect to that
Z-basis; multiplication, twist and conjugation act through precomputed
integer structure tables, so bulk arithmetic never touches rationals.

The 120 icosians of reduced norm 1 form the binary icosahedral group; the
full unit group of I is {+-tau^k} times these.  Right ideals q*I are
handled as rank-8 Z-modules in Hermite normal form, which makes ideal
equality, sums and indices canonical.  glcd(p, beta) produces a generator
of p*I + beta*I (class number one guarantees one exists), found by exact
short-vector enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import DomainError
from .field import (
    KNum,
    OInt,
    SQRT5,
    ZERO_O,
    gcd_o,
    lcm_o,
    sqrt_o,
    unit_normalize,
)
from .hnf import diagonal_product, hnf_square, contains as hnf_contains
from .quaternion import Quat
from .shortvec import NodeBudget, enumerate_form, eval_form, gram_of_basis

_H = Fraction(1, 2)

BASIS = (
    Quat.of(1, 0, 0, 0),
    Quat.of(0, 1, 0, 0),
    Quat(KNum(_H, 0), KNum(_H, 0), KNum(_H, 0), KNum(_H, 0)),
    Quat(KNum(_H, -_H), KNum(0, _H), KNum(0, 0), KNum(_H, 0)),
)
_TAU_K = KNum(Fraction(0), Fraction(1))
ZBASIS_QUATS = BASIS + tuple(b.scale(_TAU_K) for b in BASIS)


def _invert_kmat(mat):
    n = len(mat)
    aug = [list(row) + [KNum.of(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if not aug[r][col].is_zero())
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# Columns of the membership system: component i of basis quaternion j.
_MEMBER = [[BASIS[j].components()[i] for j in range(4)] for i in range(4)]
_MINV = _invert_kmat(_MEMBER)


def _o_coords_of_quat(q: Quat) -> tuple[KNum, KNum, KNum, KNum]:
    comps = q.components()
    out = []
    for j in range(4):
        acc = KNum.of(0)
        for i in range(4):
            acc = acc + _MINV[j][i] * comps[i]
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Icosian:
    """An element of I by its integer coordinates over the fixed Z-basis."""

    zc: tuple[int, int, int, int, int, int, int, int]

    @classmethod
    def from_coords(cls, coords) -> "Icosian":
        c = tuple(coords)
        return cls((c[0].a, c[1].a, c[2].a, c[3].a, c[0].b, c[1].b, c[2].b, c[3].b))

    @classmethod
    def from_quat(cls, q: Quat) -> "Icosian | None":
        coords = _o_coords_of_quat(q)
        if not all(c.is_integral() for c in coords):
            return None
        return cls.from_coords(tuple(c.to_oint() for c in coords))

    @classmethod
    def from_o(cls, x: OInt) -> "Icosian":
        return cls((x.a, 0, 0, 0, x.b, 0, 0, 0))

    @classmethod
    def from_int(cls, n: int) -> "Icosian":
        return cls((n, 0, 0, 0, 0, 0, 0, 0))

    def coords(self) -> tuple[OInt, OInt, OInt, OInt]:
        z = self.zc
        return (OInt(z[0], z[4]), OInt(z[1], z[5]), OInt(z[2], z[6]), OInt(z[3], z[7]))

    def quat(self) -> Quat:
        out = Quat.of(0)
        for x, zb in zip(self.zc, ZBASIS_QUATS):
            if x:
                out = out + zb.scale(x)
        return out

    def __add__(self, other: "Icosian") -> "Icosian":
        return Icosian(tuple(a + b for a, b in zip(self.zc, other.zc)))

    def __sub__(self, other: "Icosian") -> "Icosian":
        return Icosian(tuple(a - b for a, b in zip(self.zc, other.zc)))

    def __neg__(self) -> "Icosian":
        return Icosian(tuple(-a for a in self.zc))

    def __mul__(self, other: "Icosian") -> "Icosian":
        if not isinstance(other, Icosian):
            return NotImplemented
        out = [0] * 8
        oz = other.zc
        for i, xi in enumerate(self.zc):
            if xi:
                mrow = _MUL[i]
                for j, yj in enumerate(oz):
                    if yj:
                        s = xi * yj
                        t = mrow[j]
                        for k in range(8):
                            if t[k]:
                                out[k] += s * t[k]
        return Icosian(tuple(out))

    def scale_o(self, s: OInt) -> "Icosian":
        return Icosian.from_coords(tuple(s * c for c in self.coords()))

    def conj(self) -> "Icosian":
        return Icosian(_apply8(self.zc, _CJ8))

    def twist(self) -> "Icosian":
        return Icosian(_apply8(self.zc, _TW8))

    def phi_plus(self) -> "Icosian":
        return self + self.twist()

    def nr(self) -> OInt:
        c = self.coords()
        total = ZERO_O
        for i in range(4):
            ci = c[i]
            if ci.is_zero():
                continue
            total = total + ci * ci
            for j in range(i + 1, 4):
                if not c[j].is_zero():
                    total = total + _TRG4[i][j] * ci * c[j]
        return total

    def tr_q(self) -> OInt:
        total = ZERO_O
        for ci, t in zip(self.coords(), _TR4):
            total = total + ci * t
        return total

    def trace_norm(self) -> int:
        """Tr(nr(q)) = nr(q) + nr(q)', the positive definite Z^8 form."""
        return self.nr().trace()

    def is_zero(self) -> bool:
        return not any(self.zc)

    def content(self) -> OInt:
        if self.is_zero():
            raise DomainError("zero icosian has no content")
        g = None
        for c in self.coords():
            if c.is_zero():
                continue
            g = c if g is None else gcd_o(g, c)
        return unit_normalize(g)[0]

    def is_primitive(self) -> bool:
        return self.content().is_unit()

    def primitive_part(self) -> "Icosian":
        g = self.content()
        if g.is_unit():
            return self
        return Icosian.from_coords(tuple(c.exact_div(g) for c in self.coords()))

    def is_admissible(self) -> bool:
        if self.is_zero():
            raise DomainError("zero icosian is not admissible")
        n = self.nr().abs_norm()
        r = isqrt(n)
        return r * r == n

    def is_unit(self) -> bool:
        return self.nr().is_unit()

    def to_json(self) -> dict:
        from .quaternion import format_quat
        from .field import format_oint

        return {
            "quat": format_quat(self.quat()),
            "coords": [format_oint(c) for c in self.coords()],
        }

    def __str__(self) -> str:
        from .quaternion import format_quat

        return format_quat(self.quat())


def _apply8(x, mat) -> tuple[int, ...]:
    out = [0] * 8
    for xi, row in zip(x, mat):
        if xi:
            for k in range(8):
                if row[k]:
                    out[k] += xi * row[k]
    return tuple(out)


def _zc_of_quat_strict(q: Quat) -> tuple[int, ...]:
    ico = Icosian.from_quat(q)
    assert ico is not None, f"expected an icosian, got {q}"
    return ico.zc


# Structure tables (integer, built once).
_MUL = tuple(
    tuple(_zc_of_quat_strict(ZBASIS_QUATS[i] * ZBASIS_QUATS[j]) for j in range(8))
    for i in range(8)
)
_TW8 = tuple(_zc_of_quat_strict(zb.twist()) for zb in ZBASIS_QUATS)
_CJ8 = tuple(_zc_of_quat_strict(zb.conj()) for zb in ZBASIS_QUATS)

_TRG4 = [[None] * 4 for _ in range(4)]
for _i in range(4):
    for _j in range(4):
        _TRG4[_i][_j] = (BASIS[_i] * BASIS[_j].conj()).tr().to_oint()
    assert BASIS[_i].nr() == KNum.of(1)
_TR4 = tuple(b.tr().to_oint() for b in BASIS)

ZB_ICO = tuple(Icosian(tuple(int(i == j) for j in range(8))) for i in range(8))

# Doubled bilinear tables on the Z-basis: tr(zb_i * conj(zb_j)) in o, plus its
# a-part, b-part and rational trace.  x^T NORM_A_GRAM x == 2 * (a of nr(x)),
# x^T TRACE_GRAM x == 2 * Tr(nr(x)).
_TRG8 = tuple(
    tuple((ZBASIS_QUATS[i] * ZBASIS_QUATS[j].conj()).tr().to_oint() for j in range(8))
    for i in range(8)
)
NORM_A_GRAM = tuple(tuple(w.a for w in row) for row in _TRG8)
NORM_B_GRAM = tuple(tuple(w.b for w in row) for row in _TRG8)
TRACE_GRAM = tuple(tuple(w.trace() for w in row) for row in _TRG8)


def to_icosian(q: Quat) -> Icosian | None:
    """Membership test: the o-coordinates of q if q is an icosian, else None."""
    return Icosian.from_quat(q)


def is_primitive(p: Icosian) -> bool:
    return p.is_primitive()


def is_admissible(q: Icosian) -> bool:
    return q.is_admissible()


def den(q: Icosian) -> int:
    """The denominator |q q~| of a primitive admissible icosian."""
    if q.is_zero():
        raise DomainError("zero icosian has no denominator")
    if not q.is_primitive():
        raise DomainError("den requires a primitive icosian")
    n = q.nr().abs_norm()
    r = isqrt(n)
    if r * r != n:
        raise DomainError("icosian is not admissible (norm of nr is not a square)")
    return r


def extension(q: Icosian) -> tuple[Icosian, OInt]:
    """The extension (alpha_q * q, alpha_q) of a primitive admissible icosian.

    alpha_q = sqrt(lcm(nr q, nr q') / nr q); the lcm standardisation makes
    the quotient an exact square in o and nr(alpha_q * q) a positive
    rational integer.
    """
    if q.is_zero():
        raise DomainError("cannot extend zero")
    if not q.is_primitive():
        raise DomainError("extension requires a primitive icosian")
    if not q.is_admissible():
        raise DomainError("extension requires an admissible icosian")
    m = q.nr()
    lam = lcm_o(m, m.conj())
    assert lam.b == 0 and lam.a > 0, f"lcm of admissible norms must be rational: {lam}"
    alpha = sqrt_o(lam.exact_div(m))
    assert alpha is not None, "quotient of standardised lcm must be a square"
    return q.scale_o(alpha), alpha


def sigma_index(q: Icosian) -> int:
    """The coincidence index lcm(nr q, nr q') of a primitive admissible q."""
    if q.is_zero():
        raise DomainError("zero icosian has no index")
    if not q.is_primitive():
        raise DomainError("sigma requires a primitive icosian")
    if not q.is_admissible():
        raise DomainError("sigma requires an admissible icosian")
    m = q.nr()
    lam = lcm_o(m, m.conj())
    assert lam.b == 0 and lam.a > 0
    return lam.a


def is_unit(q: Icosian) -> bool:
    return q.is_unit()


@lru_cache(maxsize=1)
def unit_group() -> tuple[Icosian, ...]:
    """The 120 icosians of reduced norm 1 (binary icosahedral group)."""
    gens = [ZB_ICO[1], ZB_ICO[2], ZB_ICO[3]]
    seen = {ZB_ICO[0].zc}
    frontier = [ZB_ICO[0]]
    while frontier:
        fresh = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y.zc not in seen:
                    seen.add(y.zc)
                    fresh.append(y)
        frontier = fresh
    assert len(seen) == 120, f"unit closure has {len(seen)} elements"
    return tuple(Icosian(z) for z in sorted(seen))


@lru_cache(maxsize=1)
def unit_right_mul_matrices() -> tuple[tuple[tuple[int, ...], ...], ...]:
    """8x8 integer matrices of right multiplication by each norm-1 unit."""
    return tuple(
        tuple((zb * u).zc for zb in ZB_ICO) for u in unit_group()
    )


def same_right_ideal(r: Icosian, s: Icosian) -> bool:
    """rI == sI, i.e. s^-1 r is a unit of I."""
    if r.is_zero() or s.is_zero():
        raise DomainError("right ideals need nonzero generators")
    u = Icosian.from_quat(s.quat().inverse() * r.quat())
    return u is not None and u.is_unit()


@dataclass(frozen=True, slots=True)
class Rank8Module:
    """A full rank-8 Z-submodule of I as a canonical 8x8 HNF."""

    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "Rank8Module":
        return cls(hnf_square(rows, 8))

    def index(self) -> int:
        return diagonal_product(self.rows)

    def contains(self, x: Icosian) -> bool:
        return hnf_contains(self.rows, x.zc)

    def sum(self, other: "Rank8Module") -> "Rank8Module":
        return Rank8Module.from_rows(list(self.rows) + list(other.rows))

    def basis(self) -> tuple[Icosian, ...]:
        return tuple(Icosian(r) for r in self.rows)

    def to_json(self) -> list[int]:
        return [v for row in self.rows for v in row]


def right_ideal(generators) -> Rank8Module:
    """HNF of sum g*I over the generators."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise DomainError("right ideal needs a nonzero generator")
    rows = [(g * zb).zc for g in gens for zb in ZB_ICO]
    return Rank8Module.from_rows(rows)


def left_ideal_rows(g: Icosian) -> list[tuple[int, ...]]:
    """Z-generators of I*g."""
    if g.is_zero():
        raise DomainError("left ideal needs a nonzero generator")
    return [(zb * g).zc for zb in ZB_ICO]


def left_divides(d: Icosian, x: Icosian) -> bool:
    """d^-1 x in I."""
    return Icosian.from_quat(d.quat().inverse() * x.quat()) is not None


def glcd(p: Icosian, beta: OInt) -> Icosian:
    """Greatest left common divisor: a generator d with d*I = p*I + beta*I.

    Unique up to right units; the returned representative is deterministic:
    among generators of minimal trace norm, the one whose coordinate vector
    is lexicographically smallest with first nonzero coordinate positive.
    """
    if p.is_zero() or beta.is_zero():
        raise DomainError("glcd requires nonzero arguments")
    mod = right_ideal([p, Icosian.from_o(beta)])
    idx = mod.index()
    v = isqrt(idx)
    assert v * v == idx, "right-ideal index must be a square"
    # Some generator associate has Tr(nr) <= sqrt(5 v); enumerate that ball.
    q8max = isqrt(5 * v)
    if q8max * q8max < 5 * v:
        q8max += 1
    gram = gram_of_basis(TRACE_GRAM, mod.rows)
    cands = []
    for coeffs, val in enumerate_form(gram, 2 * q8max, equal=False):
        zc = [0] * 8
        for ci, row in zip(coeffs, mod.rows):
            if ci:
                for k in range(8):
                    zc[k] += ci * row[k]
        cand = Icosian(tuple(zc))
        if cand.nr().abs_norm() == v:
            cands.append((val, _sign_canonical(cand.zc)))
    cands.sort()
    best = None
    best_val = None
    for val, zc in cands:
        if best_val is not None and val > best_val:
            break
        cand = Icosian(zc)
        if right_ideal([cand]).rows == mod.rows:
            if best is None or zc < best:
                best = zc
                best_val = val
    assert best is not None, "principal generator must exist (class number one)"
    return Icosian(best)


def _sign_canonical(zc) -> tuple[int, ...]:
    for v in zc:
        if v > 0:
            return tuple(zc)
        if v < 0:
            return tuple(-x for x in zc)
    return tuple(zc)


def glcd_equal(d1: Icosian, d2: Icosian) -> bool:
    """Equality as left divisors: d1*I == d2*I."""
    return same_right_ideal(d1, d2)
