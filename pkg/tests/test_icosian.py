import random
from math import isqrt

import pytest

from a4csl.errors import DomainError
from a4csl.field import OInt, TAU, lcm_o, unit_normalize
from a4csl.icosian import (
    BASIS,
    Icosian,
    Rank8Module,
    ZB_ICO,
    den,
    extension,
    glcd,
    glcd_equal,
    is_admissible,
    is_primitive,
    is_unit,
    left_divides,
    left_ideal_rows,
    right_ideal,
    same_right_ideal,
    to_icosian,
    unit_group,
)
from a4csl.quaternion import Quat, parse_quat

rng = random.Random(31337)

R_ICO = to_icosian(parse_quat("(t,2*t,0,0)"))
S_ICO = to_icosian(parse_quat("(1+t,t,t,1)"))


def rand_icosian(span=3):
    return Icosian(tuple(rng.randint(-span, span) for _ in range(8)))


def test_membership_examples():
    assert R_ICO is not None
    assert R_ICO.coords() == (OInt(0, 1), OInt(0, 2), OInt(0, 0), OInt(0, 0))
    half = to_icosian(parse_quat("(1/2,1/2,1/2,1/2)"))
    assert half is not None
    assert half.coords() == (OInt(0, 0), OInt(0, 0), OInt(1, 0), OInt(0, 0))
    assert to_icosian(parse_quat("(1/2,0,0,0)")) is None


def test_membership_matches_quat():
    for _ in range(200):
        x = rand_icosian()
        back = to_icosian(x.quat())
        assert back == x


def test_icosian_ring_closure_and_integrality():
    for i in range(8):
        for j in range(8):
            prod = ZB_ICO[i] * ZB_ICO[j]
            assert to_icosian(ZB_ICO[i].quat() * ZB_ICO[j].quat()) == prod
    for _ in range(200):
        x, y = rand_icosian(), rand_icosian()
        assert (x * y).quat() == x.quat() * y.quat()
        n = x.nr()
        assert n.to_knum() == x.quat().nr()  # nr lands in o
        assert x.tr_q().to_knum() == x.quat().tr()


def test_twist_stability():
    # twist maps the ring into itself (the basis images are integral)
    for zb in ZB_ICO:
        assert to_icosian(zb.quat().twist()) == zb.twist()
    for _ in range(200):
        x = rand_icosian()
        assert x.twist().quat() == x.quat().twist()
        assert x.twist().twist() == x


def test_primitivity_examples():
    assert is_primitive(R_ICO)
    # scaling by a unit of o (tau) keeps the content a unit; scaling by a
    # non-unit does not
    assert is_primitive(R_ICO.scale_o(TAU))
    assert not is_primitive(R_ICO.scale_o(OInt(2, 0)))
    assert not is_primitive(R_ICO.scale_o(OInt(-1, 2)))  # sqrt5 scaling
    assert is_primitive(Icosian.from_int(1))
    with pytest.raises(DomainError):
        Icosian.from_int(0).content()


def test_admissibility_and_den():
    assert is_admissible(R_ICO) and den(R_ICO) == 5
    one = Icosian.from_int(1)
    assert is_admissible(one) and den(one) == 1
    tau_scalar = Icosian.from_o(TAU)
    assert is_admissible(tau_scalar)
    assert den(tau_scalar.primitive_part()) == 1
    with pytest.raises(DomainError):
        den(R_ICO.scale_o(OInt(2, 0)))  # not primitive


def test_den_squared_is_norm_of_nr():
    for _ in range(300):
        x = rand_icosian()
        if x.is_zero() or not x.is_primitive():
            continue
        n = x.nr().abs_norm()
        if is_admissible(x):
            assert den(x) ** 2 == n
        else:
            assert isqrt(n) ** 2 != n


def test_extension_examples():
    q_alpha, alpha = extension(R_ICO)
    assert alpha == OInt(-1, 1)
    assert q_alpha == to_icosian(parse_quat("(1,2,0,0)"))
    one = Icosian.from_int(1)
    assert extension(one) == (one, OInt(1, 0))
    s_alpha, s_a = extension(S_ICO)
    assert s_a == OInt(-1, 1)
    assert s_alpha.nr() == OInt(5, 0)


def test_extension_pair_relations():
    for q in [R_ICO, S_ICO] + [rand_icosian() for _ in range(200)]:
        if q.is_zero() or not q.is_primitive():
            continue
        if not is_admissible(q):
            continue
        q_alpha, alpha = extension(q)
        m = q.nr()
        lam = lcm_o(m, m.conj())
        assert q_alpha.nr() == lam and lam.b == 0 and lam.a > 0
        # twisting the input conjugates alpha, up to the sign convention
        t_alpha, t_a = extension(q.twist())
        assert t_a in (alpha.conj(), -alpha.conj())
        assert q_alpha.twist().nr() == lam


def test_unit_group_structure():
    units = unit_group()
    assert len(units) == 120
    keys = {u.zc for u in units}
    sample = rng.sample(units, 20)
    for u in sample:
        assert u.nr() == OInt(1, 0)
        assert (u.quat().inverse()) == to_icosian(u.quat().inverse()).quat()
        assert to_icosian(u.quat().inverse()).zc in keys
        for v in rng.sample(units, 10):
            assert (u * v).zc in keys


def test_is_unit_examples():
    assert is_unit(ZB_ICO[1])  # i
    assert is_unit(to_icosian(parse_quat("(1/2,1/2,1/2,1/2)")))
    assert not is_unit(R_ICO)
    assert is_unit(Icosian.from_o(TAU))  # unit of o, nr = tau^2


def test_same_right_ideal():
    for u in rng.sample(unit_group(), 10):
        assert same_right_ideal(R_ICO, R_ICO * u)
    assert not same_right_ideal(R_ICO, S_ICO)
    assert same_right_ideal(R_ICO, R_ICO.scale_o(TAU))
    with pytest.raises(DomainError):
        same_right_ideal(R_ICO, Icosian.from_int(0))


def test_right_ideal_examples():
    full = right_ideal([Icosian.from_int(1)])
    assert full.index() == 1
    rid = right_ideal([R_ICO])
    assert rid.index() == R_ICO.nr().abs_norm() ** 2 == 625
    again = right_ideal([R_ICO, Icosian.from_int(1)])
    assert again.index() == 1
    # closed under right multiplication by I
    for zb in ZB_ICO:
        for b in rid.basis():
            assert rid.contains(b * zb)


def test_glcd_examples():
    one = Icosian.from_int(1)
    d = glcd(R_ICO, OInt(1, 0))
    assert glcd_equal(d, one)
    beta = OInt(3, 1)
    u = rng.choice(unit_group())
    d2 = glcd(Icosian.from_o(beta) * u, beta)
    assert glcd_equal(d2, Icosian.from_o(beta))

    d3 = glcd(R_ICO, OInt(5, 0))
    mod = right_ideal([R_ICO, Icosian.from_o(OInt(5, 0))])
    assert right_ideal([d3]).rows == mod.rows
    assert left_divides(d3, R_ICO)
    assert left_divides(d3, Icosian.from_o(OInt(5, 0)))
    with pytest.raises(DomainError):
        glcd(R_ICO, OInt(0, 0))


def test_glcd_random_properties():
    for _ in range(25):
        p = rand_icosian(2)
        if p.is_zero():
            continue
        beta = OInt(rng.randint(1, 4), rng.randint(0, 2))
        if beta.is_zero():
            continue
        d = glcd(p, beta)
        mod = right_ideal([p, Icosian.from_o(beta)])
        assert right_ideal([d]).rows == mod.rows
        assert left_divides(d, p) and left_divides(d, Icosian.from_o(beta))
        # deterministic representative
        assert glcd(p, beta) == d


def test_glcd_equal_examples():
    d = glcd(R_ICO, OInt(5, 0))
    u = rng.choice(unit_group())
    assert glcd_equal(d, d * u)
    assert not glcd_equal(Icosian.from_int(1), R_ICO)
    assert glcd_equal(Icosian.from_int(2), ZB_ICO[1].scale_o(OInt(2, 0)))


def test_rank8_module_sum():
    a = right_ideal([R_ICO])
    b = right_ideal([S_ICO])
    s = a.sum(b)
    assert s.index() <= min(a.index(), b.index())
    for row in a.rows:
        assert s.contains(Icosian(row))


def test_module_json():
    m = right_ideal([R_ICO])
    flat = m.to_json()
    assert len(flat) == 64
    assert Rank8Module.from_rows([flat[8 * i : 8 * i + 8] for i in range(8)]) == m
