import random

import pytest

from a4csl.errors import BudgetError, DomainError
from a4csl.field import OInt, factor_int, factor_o, is_prime, lcm_o, unit_normalize
from a4csl.icosian import Icosian, TRACE_GRAM, unit_right_mul_matrices
from a4csl.counting import (
    NodeBudget,
    census,
    census_csv,
    census_table,
    class_reps_for_norm,
    dirichlet_coeffs,
    enumerate_rotations,
    euler_product_coeffs,
    f,
    f_prime_power,
    icosians_with_norm,
    norm_candidates,
)
from a4csl.shortvec import enumerate_form

rng = random.Random(8128)

PRINTED_SERIES = [1, 5, 10, 20, 6, 50, 50, 80, 90, 30, 144]


def test_f_prime_power_examples():
    assert f_prime_power(5, 1) == 6
    assert f_prime_power(2, 2) == 20
    assert f_prime_power(11, 1) == 144
    assert f_prime_power(3, 2) == 90
    with pytest.raises(DomainError):
        f_prime_power(6, 1)


def test_f_prime_power_split_branch_is_integral():
    for p in range(2, 200):
        if not is_prime(p) or p % 5 not in (1, 4):
            continue
        for r in range(1, 7):
            assert f_prime_power(p, r) > 0  # integrality asserted inside


def test_f_examples():
    assert f(1) == 1
    assert f(6) == 50
    assert f(10) == 30
    assert f(6) == f(2) * f(3)


def test_dirichlet_examples():
    assert dirichlet_coeffs(11) == PRINTED_SERIES
    assert dirichlet_coeffs(1) == [1]
    assert dirichlet_coeffs(8) == PRINTED_SERIES[:8]


def test_euler_product_agreement_to_50():
    direct = [f(n) for n in range(1, 51)]
    assert euler_product_coeffs(50) == direct


def test_norm_candidates():
    assert norm_candidates(1) == [OInt(1, 0)]
    assert norm_candidates(2) == [OInt(2, 0)]
    assert norm_candidates(5) == [OInt(5, 0)]
    for m in norm_candidates(11 * 11):
        assert m.is_totally_positive()
        assert lcm_o(m, m.conj()) == OInt(121, 0)
    assert len(norm_candidates(121)) == 3  # pi^2, 121, pi'^2


def test_icosians_with_norm_counts():
    # nr = 1: the 120 units, i.e. 60 +-pairs
    assert len(icosians_with_norm(OInt(1, 0))) == 60
    vecs = icosians_with_norm(OInt(2, 0))
    assert all(Icosian(v).nr() == OInt(2, 0) for v in vecs)
    # 5 classes x 120 units, halved by sign symmetry
    assert len(vecs) == 5 * 60


def test_enumerate_rotations_examples():
    reps1 = enumerate_rotations(1)
    assert len(reps1) == 1 and reps1[0].is_unit()
    assert len(enumerate_rotations(2)) == 5
    reps5 = enumerate_rotations(5)
    assert len(reps5) == 30
    for q in reps5:
        assert q.is_primitive() and q.is_admissible()


def test_census_examples():
    assert census(3).csl_count == 10
    assert census(4).csl_count == 20
    c11 = census(11)
    assert c11.csl_count == 144 and c11.match


def test_census_multiplicativity_seen_in_counts():
    assert census(6).csl_count == census(2).csl_count * census(3).csl_count == 50


def test_census_table_and_csv():
    rows, truncated = census_table(4)
    assert not truncated
    text = census_csv(rows)
    assert text.splitlines()[0] == "n,rotation_classes,csl_count,f_formula,match"
    assert text.splitlines()[2] == "2,5,5,5,true"


def test_budget_enforced():
    with pytest.raises(BudgetError):
        enumerate_rotations(11, budget=NodeBudget(50))
    rows, truncated = census_table(9, budget=NodeBudget(2000))
    assert truncated and len(rows) < 9


def test_threads_deterministic():
    seq = enumerate_rotations(10, threads=1)
    par = enumerate_rotations(10, threads=3)
    assert [q.zc for q in seq] == [q.zc for q in par]


# -- independent oracles ----------------------------------------------------


def _canonical_class_key(q: Icosian):
    """Canonical form of the right-ideal class of q: scale nr into the
    fundamental tau^2 window, then minimise over the unit orbit."""
    from a4csl.field import TAU, TAU_INV

    m = q.nr()
    y, k, _s = unit_normalize(m)
    if y.field_norm() < 0:
        k -= 1
    assert k % 2 == 0
    j = -(k // 2)
    scale = TAU if j >= 0 else TAU_INV
    for _ in range(abs(j)):
        q = q.scale_o(scale)
    orbit = set()
    for mat in unit_right_mul_matrices():
        o = tuple(
            sum(q.zc[i] * mat[i][c] for i in range(8) if q.zc[i]) for c in range(8)
        )
        orbit.add(o)
        orbit.add(tuple(-v for v in o))
    return min(orbit)


def _sigma_of_primitive(p):
    if not p.is_admissible():
        return None
    m = p.nr()
    lam = lcm_o(m, m.conj())
    assert lam.b == 0
    return lam.a


NMAX_ORACLE = 12


@pytest.fixture(scope="module")
def reps_by_index():
    return {n: enumerate_rotations(n) for n in range(1, NMAX_ORACLE + 1)}


def test_enumeration_complete_vs_exhaustive_scan(reps_by_index):
    """Every rotation class of index n <= 12 is hit: compare against one raw
    scan of all icosians with trace norm at most 2n.  Imprimitive vectors are
    skipped; a class found through one is also found through its balanced
    primitive representative, which the same ball contains."""
    from math import isqrt

    from a4csl.icosian import NORM_A_GRAM, NORM_B_GRAM
    from a4csl.shortvec import eval_form

    mats = unit_right_mul_matrices()
    slow = {n: set() for n in range(1, NMAX_ORACLE + 1)}
    seen = set()
    for vec, val in enumerate_form(TRACE_GRAM, 4 * NMAX_ORACLE, equal=False):
        if vec in seen:
            continue
        na = eval_form(NORM_A_GRAM, vec) // 2
        nb = eval_form(NORM_B_GRAM, vec) // 2
        m = OInt(na, nb)
        nn = m.abs_norm()
        if isqrt(nn) ** 2 != nn:
            continue  # not admissible
        lam = lcm_o(m, m.conj())
        if lam.b != 0 or lam.a > NMAX_ORACLE:
            continue
        if val // 2 > 2 * lam.a:
            continue  # outside the per-index ball
        q = Icosian(vec)
        if not q.is_primitive():
            continue
        slow[lam.a].add(_canonical_class_key(q))
        for mat in mats:
            o = tuple(sum(vec[i] * mat[i][c] for i in range(8) if vec[i]) for c in range(8))
            seen.add(o)
            seen.add(tuple(-v for v in o))
    for n in range(1, NMAX_ORACLE + 1):
        fast = {_canonical_class_key(q) for q in reps_by_index[n]}
        assert fast == slow[n], f"enumeration incomplete or unsound at n={n}"


def _primitive_ideal_count(n: int) -> int:
    """Right-ideal classes with coincidence index n, from the local ideal
    counts of a maximal order split at every finite place."""
    total = 0
    for m in norm_candidates(n):
        cnt = 1
        for prime, e, _tag in factor_o(m).factors:
            np = prime.abs_norm()
            full = sum(np**i for i in range(e + 1))
            below = sum(np**i for i in range(e - 1)) if e >= 2 else 0
            cnt *= full - below
        total += cnt
    return total


def test_rotation_class_counts_match_ideal_zeta(reps_by_index):
    for n in range(1, NMAX_ORACLE + 1):
        assert len(reps_by_index[n]) == _primitive_ideal_count(n)
