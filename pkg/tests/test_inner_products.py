from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from sklab.exact import LAM, LAMP, ONE, P, RHO, RatFunc, mu
from sklab.inner_products import (
    UNITARITY,
    InnerProductMatrix,
    c_old_target,
    det_mp,
    det_mp_cofactor_rational,
    det_mp_factored,
    discriminant,
    discriminant_factored,
    exact_rank,
    g_inner,
    g_inner_closed_form,
    leading_minor3,
    leading_minor3_factored,
    mp_entry,
    mp_suite,
    oldform_relation,
    point,
    rank_at,
    sample_generic_points,
    sample_sk_points,
    sk_point,
    sk_rank_check,
    sk_substitute,
    wp_basis_coeffs,
)

MU = mu()


def test_entry_13():
    assert mp_entry(1, 3) == RatFunc(P**3 * RHO**-1 * LAM, MU)


def test_entry_22():
    assert mp_entry(2, 2) == RatFunc(P**2 * (P - 1) * LAM**2 + RHO**2 * P**-4 * MU, MU)


def test_entry_33_is_one():
    assert mp_entry(3, 3) == 1


def test_entry_index_range():
    with pytest.raises(IndexError):
        mp_entry(0, 2)


def test_matrix_symmetric():
    m = InnerProductMatrix.build()
    for i in range(1, 5):
        for j in range(1, 5):
            assert m[i, j] == m[j, i]
    assert m[1, 1] == 1


def test_unitarity_closure_is_an_involution():
    for target, source in UNITARITY.items():
        assert mp_entry(*target) == mp_entry(*source)
        # applying the involution again lands back on an entry with the same value
        back = UNITARITY.get(source, source)
        assert mp_entry(*back) == mp_entry(*source)


def test_det_matches_factored_form():
    assert det_mp() == det_mp_factored()


def test_minor_matches_factored_form():
    assert leading_minor3() == leading_minor3_factored()


def test_det_two_routes_at_point():
    pt = point(2, 4, 1, 1)
    assert det_mp().evaluate(pt) == det_mp_cofactor_rational().evaluate(pt)


def test_det_vanishes_under_sk_relation():
    assert sk_substitute(det_mp()).is_zero()


def test_minor_survives_sk_relation():
    assert not sk_substitute(leading_minor3()).is_zero()


def test_rank_three_at_sk_example():
    assert rank_at(sk_point(3, 10, 3**9 + 3**8 + 10)) == 3


def test_rank_four_at_generic_example():
    assert rank_at(point(3, 10, 1, 1)) == 4


def _sympy_rank(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).rank()


@pytest.mark.parametrize("seed", [0, 1])
def test_rank_agrees_with_sympy_oracle(seed):
    m = InnerProductMatrix.build()
    for pt in sample_sk_points(10, seed) + sample_generic_points(10, seed):
        rows = m.numeric(pt)
        assert exact_rank(rows) == _sympy_rank(rows)


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5))
def test_exact_rank_property(rows):
    fr = [[Fraction(x, 3) for x in r] for r in rows]
    assert exact_rank(fr) == sympy.Matrix(rows).rank()


def test_rank_report():
    rep = sk_rank_check(100, 0)
    assert rep.passed
    assert rep.details["sk_rank_histogram"] == {"3": 100}
    assert rep.details["generic_rank_histogram"] == {"4": 100}


def test_sk_samples_respect_deligne_interval():
    for pt in sample_sk_points(50, 3):
        p = pt["p"]
        k = next(k for k in range(1, 20) if p**k == pt["rho"])
        lam_f = pt["lam"] - p ** (k - 1) - p ** (k - 2)
        assert abs(lam_f) <= 2 * p ** (k - 1.5)


def test_discriminant_vanishes_on_sk():
    assert sk_substitute(discriminant()).is_zero()
    assert discriminant() == discriminant_factored()


def test_c_old_cross_multiplied():
    a, b, _, _ = oldform_relation()
    cross = -b * RatFunc(RHO * P**-2 - LAM) - 2 * a
    assert sk_substitute(cross).is_zero()


def test_c_old_numeric():
    lam = 2**9 + 2**8 - 10
    pt = sk_point(2, 10, lam)
    c = oldform_relation()[3].evaluate(pt)
    assert c == Fraction(1, 2**8 - lam)
    assert c == c_old_target().evaluate(pt)


@pytest.mark.parametrize("ij", [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)])
def test_g_inner_closed_forms(ij):
    assert g_inner(*ij) == g_inner_closed_form(*ij)


def test_g11_example():
    assert g_inner(1, 1) == RatFunc(1 + P**-2) - RatFunc(2 * LAM * P**2, RHO * MU)


def test_g_inner_symmetric():
    for i in range(1, 4):
        for j in range(1, 4):
            assert g_inner(i, j) == g_inner(j, i)


def test_a_plus_numerator_is_bilinear():
    data = wp_basis_coeffs()
    g = data.g_inner
    norm_plus = g[0][0] + 2 * g[0][2] + g[2][2]
    assert data.a_plus * norm_plus == g_inner(2, 1) + g_inner(2, 3)


def test_plus_minus_orthogonal():
    assert wp_basis_coeffs().plus_minus.is_zero()


def test_a_plus_at_sk_point_finite():
    pt = sk_point(3, 10, 3**9 + 3**8 + 10)
    val = wp_basis_coeffs().a_plus.evaluate(pt)
    assert isinstance(val, Fraction)


def test_suite_all_pass():
    reps = mp_suite(20, 0)
    assert all(r.passed for r in reps.values()), {k: r.outcome for k, r in reps.items()}


@given(st.sampled_from([2, 3, 5, 7]), st.sampled_from([4, 6, 8, 10, 12]), st.integers(-50, 50))
def test_sk_point_det_zero(p, k, lam_f):
    pt = sk_point(p, k, lam_f + p ** (k - 1) + p ** (k - 2))
    assert det_mp().evaluate(pt) == 0


def test_lamp_unused_outside_relation():
    assert sk_substitute(RatFunc(LAMP)) != RatFunc(LAMP)
    assert sk_substitute(RatFunc(ONE)) == 1
