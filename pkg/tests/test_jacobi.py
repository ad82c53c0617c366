import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sklab.arith import divisors, gcd
from sklab.exact import LAM, cusp_eigenform, hecke_eigenvalue
from sklab.jacobi import (
    PrecisionError,
    SiegelCoeffTable,
    characterization_check,
    cohen_H,
    hurwitz_class_number,
    jacobi_eisenstein,
    jacobi_eval,
    jacobi_hecke_eigenvalue,
    lift_coefficient,
    lift_hecke_eigenvalue,
    lift_index_set,
    maass_check,
    petersson_transfer,
    quarter_shift_identities,
    sk_lift,
    spinor_coeffs,
    theta_decompose,
    vm_coeff,
    vm_coeff_at,
    vm_direct_eval,
    vm_fourier_eval,
)


def _reduced_forms_count(D):
    """Independent enumeration over all (a, b, c) boxes."""
    total = Fraction(0)
    for a in range(1, D + 1):
        for b in range(-a, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if not (abs(b) <= a <= c):
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            w = Fraction(1, 3) if (a == b == c) else Fraction(1, 2) if (b == 0 and a == c) else 1
            total += w
    return total


# ---------------------------------------------------------------- class numbers


def test_hurwitz_small_values():
    assert hurwitz_class_number(3) == Fraction(1, 3)
    assert hurwitz_class_number(4) == Fraction(1, 2)
    assert hurwitz_class_number(1) == 0
    assert hurwitz_class_number(0) == Fraction(-1, 12)


def test_hurwitz_negative_rejected():
    with pytest.raises(ValueError):
        hurwitz_class_number(-3)


@pytest.mark.parametrize("D", range(1, 101))
def test_hurwitz_matches_enumeration_and_cohen(D):
    h = hurwitz_class_number(D)
    assert h == _reduced_forms_count(D)
    assert cohen_H(1, D) == h


def test_cohen_values():
    assert cohen_H(3, 3) == Fraction(-2, 9)
    assert cohen_H(3, 0) == Fraction(-1, 252)


@given(st.integers(2, 5), st.integers(1, 200))
def test_cohen_congruence_vanishing(r, n):
    if ((-1) ** r * n) % 4 in (2, 3):
        assert cohen_H(r, n) == 0


# ---------------------------------------------------------------- Eisenstein and cusp forms


def test_e41_first_coefficients():
    e = jacobi_eisenstein(4, 40)
    assert e.c(0) == 1 and e.c(3) == 56 and e.c(4) == 126


def test_e61_first_coefficients():
    e = jacobi_eisenstein(6, 40)
    assert e.c(0) == 1 and e.c(3) == -88 and e.c(4) == -330


def test_e41_reduction_consistent():
    e = jacobi_eisenstein(4, 100)
    h0 = cohen_H(3, 0)
    assert e.reduction_consistent(lambda n, r: cohen_H(3, 4 * n - r * r) / h0)


def test_eisenstein_bound():
    with pytest.raises(ValueError):
        jacobi_eisenstein(4, 401)


def test_phi10_normalization(phi10):
    assert phi10.c(3) == 1
    assert phi10.c(0) == 0


def test_phi10_regression_ratio(phi10):
    assert phi10.c(4) / phi10.c(3) == -2


def test_phi10_coefficients(phi10):
    assert [phi10.c(D) for D in (0, 3, 4, 7, 8, 11, 12)] == [0, 1, -2, -16, 36, 99, -272]


def test_phi12_coefficients(phi12):
    assert [phi12.c(D) for D in (0, 3, 4, 7, 8, 11, 12)] == [0, 1, 10, -88, -132, 1275, 736]


def test_precision_error(phi10):
    with pytest.raises(PrecisionError):
        phi10.coeff(60, 0)


@pytest.mark.parametrize("p", [2, 3])
def test_hecke_consistency_phi10(phi10, p):
    assert jacobi_hecke_eigenvalue(phi10, p) == hecke_eigenvalue(cusp_eigenform(18), p)


@pytest.mark.parametrize("p", [2, 3])
def test_hecke_consistency_phi12(phi12, p):
    assert jacobi_hecke_eigenvalue(phi12, p) == hecke_eigenvalue(cusp_eigenform(22), p)


# ---------------------------------------------------------------- theta decomposition


def test_theta_parity_split(phi10):
    h0, h1 = theta_decompose(phi10)
    assert all(D % 4 == 3 for D in h1)
    assert all(D % 4 == 0 for D in h0)


def test_theta_first_nonzero(phi10):
    h0, h1 = theta_decompose(phi10)
    assert min(D for D, c in {**h0, **h1}.items() if c) == 3


def test_quarter_shift_identities(phi10, phi12):
    assert quarter_shift_identities(phi10)
    assert quarter_shift_identities(phi12)


# ---------------------------------------------------------------- index raising


def test_vm_identity(phi10):
    v1 = vm_coeff(phi10, 1)
    assert dict(v1.table) == dict(phi10.table)


def test_vm_content_one(phi10):
    assert vm_coeff_at(phi10, 2, 1, 0) == phi10.coeff(2, 0)


def test_vm_content_two(phi10):
    assert vm_coeff_at(phi10, 2, 2, 2) == phi10.c(12) + 2**9 * phi10.c(3)


def test_vm_reduction_consistent(phi10):
    for m in (2, 3, 4):
        vm = vm_coeff(phi10, m)
        assert vm.reduction_consistent(lambda n, r: vm_coeff_at(phi10, m, n, r))


def test_vm_direct_m1(phi10):
    tau, z = 0.1 + 1.2j, 0.3 + 0.2j
    a = vm_direct_eval(phi10, 1, tau, z)
    b = jacobi_eval(phi10, tau, z)
    assert abs(a - b) <= 1e-10 * abs(b)


def test_vm_two_routes_m2_cusp(phi12):
    # phi_10 vanishes identically at z = 0, so the weight-12 form carries this check
    tau = 2j
    a = vm_direct_eval(phi12, 2, tau, 0j)
    b = vm_fourier_eval(phi12, 2, tau, 0j)
    assert abs(a - b) <= 1e-8 * abs(b)


def test_phi10_vanishes_to_second_order_at_z_zero(phi10):
    eps = 1e-3
    ratio = jacobi_eval(phi10, 1.3j, 2 * eps) / jacobi_eval(phi10, 1.3j, eps)
    assert abs(ratio - 4) < 1e-4


def test_vm_two_routes_m3(phi10):
    tau, z = 1.5j, 0.1 + 0.2j
    a = vm_direct_eval(phi10, 3, tau, z)
    b = vm_fourier_eval(phi10, 3, tau, z)
    assert abs(a - b) <= 1e-6 * abs(b)


def test_vm_direct_needs_height(phi10):
    with pytest.raises(ValueError):
        vm_direct_eval(phi10, 2, 0.3j, 0j)


@settings(max_examples=15)
@given(
    st.integers(1, 6),
    st.floats(-0.5, 0.5),
    st.floats(1.0, 2.0),
    st.floats(0, 1),
    st.floats(-0.5, 0.5),
)
def test_vm_two_routes_property(phi12, m, u, v, x, b):
    tau = complex(u, v)
    z = x + b * tau
    try:
        a = vm_direct_eval(phi12, m, tau, z, rel_tol=1e-8)
        f = vm_fourier_eval(phi12, m, tau, z, rel_tol=1e-8)
    except PrecisionError:
        # near a zero of the form the truncation cannot be certified
        assume(False)
    assert abs(a - f) <= 1e-6 * abs(f)


def test_invariant_translation(phi10):
    from sklab.analytic import invariant_phi

    tau, z = 0.2 + 1.1j, 0.15 + 0.3j
    base = invariant_phi(phi10, tau, z)
    assert abs(invariant_phi(phi10, tau, z + 1) - base) <= 1e-9 * base
    assert abs(invariant_phi(phi10, tau, z + tau) - base) <= 1e-8 * base


# ---------------------------------------------------------------- lift


def test_lift_examples(phi10):
    assert lift_coefficient(phi10, 1, 1, 1) == phi10.c(3)
    assert lift_coefficient(phi10, 2, 2, 2) == phi10.c(12) + 2**9 * phi10.c(3)


@given(st.integers(1, 12), st.integers(-8, 8), st.integers(1, 12))
def test_lift_symmetry(n, r, m):
    from sklab.jacobi import jacobi_cusp_basis

    phi = jacobi_cusp_basis(10, 200)
    if 4 * n * m - r * r <= 200:
        assert lift_coefficient(phi, n, r, m) == lift_coefficient(phi, m, r, n)
        assert lift_coefficient(phi, n, r, m) == lift_coefficient(phi, n, -r, m)


def test_lift_non_positive_is_zero(phi10):
    assert lift_coefficient(phi10, 1, 2, 1) == 0
    assert lift_coefficient(phi10, 1, 3, 1) == 0


def test_index_set_closed_under_maass_map():
    idx = set(lift_index_set(60))
    for n, r, m in idx:
        for d in divisors(gcd(gcd(n, abs(r)), m)):
            assert (n * m // (d * d), r // d, 1) in idx


def test_maass_passes_on_lift(phi10):
    rep = maass_check(sk_lift(phi10, 100))
    assert rep.passed
    assert rep.details["checked"] > 100
    assert rep.details["skipped_missing"] == 0


def test_maass_detects_perturbation(phi10):
    table = sk_lift(phi10, 100)
    entries = dict(table.entries)
    entries[(2, 2, 2)] += 1
    rep = maass_check(SiegelCoeffTable(10, 1, 100, entries))
    assert not rep.passed
    assert rep.details["first_violation"] == [2, 2, 2]


def test_maass_empty_table():
    assert maass_check(SiegelCoeffTable(10, 1, 0, {})).passed


def test_table_json_roundtrip(phi12):
    t = sk_lift(phi12, 40)
    back = SiegelCoeffTable.from_json(t.to_json())
    assert back.entries == t.entries and back.weight == 12


@pytest.mark.parametrize("k,p,expect", [(10, 2, 240), (10, 3, 21960), (12, 2, 2784), (12, 3, 107352)])
def test_lift_eigenvalue(phi10, phi12, k, p, expect):
    phi = phi10 if k == 10 else phi12
    assert lift_hecke_eigenvalue(phi, p) == expect
    assert lift_hecke_eigenvalue(phi, p, (1, 0, 1)) == expect


# ---------------------------------------------------------------- Euler data


def test_spinor_lambda_p():
    e = spinor_coeffs(-528, 2, 10)
    assert e.lam_F[1] == 240
    assert e.lam_F[0] == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_characterization_symbolic(p):
    rep = characterization_check(spinor_coeffs(None, p, 10))
    assert rep.passed


def test_characterization_fully_symbolic():
    assert characterization_check(spinor_coeffs(None, None, None)).passed


def test_characterization_degenerate():
    assert characterization_check(spinor_coeffs(0, 3, 10)).passed


def test_characterization_detects_wrong_normalization():
    e = spinor_coeffs(None, 2, 10)
    bad = type(e)(e.p, e.k, e.lam_f, (e.lam_F[0], e.lam_F[1], e.lam_F[2] + LAM, *e.lam_F[3:]))
    assert not characterization_check(bad).passed


def test_spinor_jmax_limit():
    with pytest.raises(ValueError):
        spinor_coeffs(None, 2, 10, jmax=5)


@given(st.integers(-2000, 2000), st.sampled_from([2, 3, 5, 7]), st.sampled_from([6, 8, 10, 12]))
def test_spinor_numeric_specialization(lam_f, p, k):
    e = spinor_coeffs(lam_f, p, k)
    s = p ** (k - 1) + p ** (k - 2)
    lp = lam_f + s
    assert e.lam_F[1] == lp
    assert e.lam_F[2] == lp * lp - s * lp + p ** (2 * k - 2)


# ---------------------------------------------------------------- Petersson transfer


def test_petersson_transfer_level_one():
    k, L = 10, 1.2
    expect = (4 * math.pi) ** k * math.pi**2 / (math.pi**2 / 6) / (math.gamma(k) * L)
    assert math.isclose(petersson_transfer(1.0, k, 1, L), expect, rel_tol=1e-14)


def test_petersson_transfer_linear():
    assert math.isclose(petersson_transfer(2.0, 12, 6, 1.1), 2 * petersson_transfer(1.0, 12, 6, 1.1), rel_tol=1e-14)


def test_petersson_transfer_level_six():
    euler = 1.0
    for p in (2, 3):
        euler *= (1 - 1 / p) ** -2 * (1 + 1 / p) ** -1
    ratio = petersson_transfer(1.0, 12, 6, 1.1) / petersson_transfer(1.0, 12, 1, 1.1)
    assert math.isclose(ratio, euler / 36, rel_tol=1e-14)


def test_petersson_transfer_errors():
    with pytest.raises(ValueError):
        petersson_transfer(-1.0, 12, 1, 1.0)
    with pytest.raises(ValueError):
        petersson_transfer(1.0, 12, 4, 1.0)
