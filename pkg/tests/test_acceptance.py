"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""
import random
import time

import numpy as np
import pytest

from sklab import analytic, hecke, inner_products, jacobi, kernels
from sklab.exact import cusp_eigenform, hecke_eigenvalue

# pinned tolerances
VM_RTOL = 1e-6
BERGMAN_RTOL = 1e-4
AUTOMORPHY_RTOL = 1e-8
SCAN_DRIFT = 0.01
PETERSSON_RTOL = 1e-4
RUNTIME_S = {1: 5.0, 2: 10.0, 4: 30.0, 6: 60.0}


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def test_criterion_1_hecke_identities(report):
    t0 = time.perf_counter()
    reps = {name: hecke.verify_identity(name) for name in hecke.IDENTITIES}
    dt = time.perf_counter() - t0
    failed = [n for n, r in reps.items() if not (r.passed and r.details["holds"])]
    ok = not failed and dt < RUNTIME_S[1]
    report(1, ok, f"identities={list(reps)} failed={failed} runtime={dt:.2f}s (limit {RUNTIME_S[1]}s)")


def test_criterion_2_inner_product_matrix(report):
    t0 = time.perf_counter()
    reps = inner_products.mp_suite(100, 0)
    dt = time.perf_counter() - t0
    rank = reps["sk_rank"].details
    parts = {
        "det": reps["det_factored"].passed,
        "minor": reps["minor3_factored"].passed,
        "sk_det_zero": reps["det_vanishes_on_sk"].passed,
        "sk_disc_zero": reps["discriminant_vanishes_on_sk"].passed,
        "rank3x100": rank["sk_rank_histogram"] == {"3": 100},
        "rank4x100": rank["generic_rank_histogram"] == {"4": 100},
    }
    ok = all(parts.values()) and dt < RUNTIME_S[2]
    report(2, ok, f"{parts} runtime={dt:.2f}s (limit {RUNTIME_S[2]}s)")


def test_criterion_3_g_inner_cross_validation(report):
    pairs = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
    bad = [ij for ij in pairs if inner_products.g_inner(*ij) != inner_products.g_inner_closed_form(*ij)]
    report(3, not bad, f"pairs={len(pairs)} mismatched={bad}")


def test_criterion_4_sk_lift(report):
    t0 = time.perf_counter()
    maass = {}
    for k in (10, 12):
        phi = jacobi.jacobi_cusp_basis(k, 200)
        rep = jacobi.maass_check(jacobi.sk_lift(phi, 200))
        maass[k] = (rep.passed, rep.details["checked"])
    chars = {p: jacobi.characterization_check(jacobi.spinor_coeffs(None, p, 10)).passed for p in (2, 3, 5)}
    a2 = hecke_eigenvalue(cusp_eigenform(18), 2)
    lam_F2 = jacobi.spinor_coeffs(a2, 2, 10).lam_F[1]
    dt = time.perf_counter() - t0
    ok = (
        all(p and n >= 100 for p, n in maass.values())
        and all(chars.values())
        and a2 == -528
        and lam_F2 == 240
        and dt < RUNTIME_S[4]
    )
    report(4, ok, f"maass={maass} characterization={chars} a(2)={a2} lambda_F(2)={lam_F2} runtime={dt:.2f}s")


def test_criterion_5_index_raising_two_routes(report):
    phi = jacobi.jacobi_cusp_basis(10, 200)
    rng = random.Random(5)
    worst = 0.0
    for m in range(1, 7):
        for _ in range(20):
            tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(1.0, 2.0))
            z = rng.uniform(0, 1) + rng.uniform(-0.5, 0.5) * tau
            a = jacobi.vm_direct_eval(phi, m, tau, z, rel_tol=1e-8)
            b = jacobi.vm_fourier_eval(phi, m, tau, z, rel_tol=1e-8)
            worst = max(worst, abs(a - b) / abs(b))
    report(5, worst <= VM_RTOL, f"m=1..6 x 20 points, worst relative gap {worst:.2e} (tol {VM_RTOL})")


def test_criterion_6_counting(report):
    t0 = time.perf_counter()
    rng = random.Random(6)
    zeros = 0
    for _ in range(50):
        N = rng.choice([1, 2, 3, 5])
        q = analytic.CountQuery(
            analytic.UpperHalfPoint(rng.uniform(-0.5, 0.5), rng.uniform(1 / N, 2)), rng.randint(1, 6), N, 1.5
        )
        zeros += analytic.count_C(q) == 0
    at_i = analytic.count_C(analytic.CountQuery(analytic.UpperHalfPoint(0, 1), 1, 1, 2.0001))
    monotone = True
    for _ in range(20):
        N = rng.choice([1, 2, 3])
        pt = analytic.UpperHalfPoint(rng.uniform(-0.5, 0.5), rng.uniform(1 / N, 2))
        m = rng.randint(1, 4)
        c3 = analytic.count_C(analytic.CountQuery(pt, m, N, 3.0))
        c4 = analytic.count_C(analytic.CountQuery(pt, m, N, 4.0))
        monotone &= c3 <= c4
    scan = analytic.count_ratio_scan()
    dt = time.perf_counter() - t0
    ok = zeros == 50 and at_i == 2 and monotone and scan["max_ratio"] <= analytic.COUNT_RATIO_CONSTANT
    ok = ok and dt < RUNTIME_S[6]
    report(
        6,
        ok,
        f"delta=1.5 zero on {zeros}/50, count(i)={at_i}, monotone={monotone}, "
        f"max ratio {scan['max_ratio']:.4f} <= {analytic.COUNT_RATIO_CONSTANT} over {scan['queries']} queries, "
        f"runtime={dt:.1f}s",
    )


def test_criterion_7_bergman(report):
    rng = np.random.default_rng(7)
    pts = []
    while len(pts) < 20:
        t = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 3.0))
        if abs(t) >= 1:
            pts.append(t)
    two_route = max(
        abs(kernels.bergman_geometric(12, 1, t).value - kernels.bergman_spectral_delta(t))
        / kernels.bergman_spectral_delta(t)
        for t in pts
    )
    auto = 0.0
    for t in pts[:5]:
        base = kernels.bergman_geometric(12, 1, t).value
        for g in kernels.gamma0_samples(1, 2, rng):
            auto = max(auto, abs(kernels.bergman_geometric(12, 1, g.act(t)).value - base) / base)
    grid = {"u_range": [-0.5, 0.5], "v_range": [0.87, 3.0], "steps": [8, 8]}
    a = kernels.bergman_scan(12, 1, grid)["max_value"]
    b = kernels.bergman_scan(12, 1, grid, cutoff_scale=2.0)["max_value"]
    drift = abs(a - b) / a
    ok = two_route <= BERGMAN_RTOL and auto <= AUTOMORPHY_RTOL and drift <= SCAN_DRIFT
    report(7, ok, f"two-route {two_route:.2e} (tol {BERGMAN_RTOL}), automorphy {auto:.2e} (tol {AUTOMORPHY_RTOL}), "
           f"scan max {a:.5f} drift {drift:.2e} (tol {SCAN_DRIFT})")


def test_criterion_8_poincare(report):
    s113 = kernels.kloosterman_exact(1, 3, 1)
    Ns = list(range(1, 51))
    env = kernels.poincare_envelope(12, Ns)
    decays = kernels.envelope_decays(Ns, env)
    p = kernels.poincare_coeff(12, 1, 1)["value"]
    q = kernels.petersson_first_coefficient(12, 1.0, kernels.delta_norm())
    rel = abs(p - q) / abs(q)
    ok = s113 == [-1] and decays and rel <= PETERSSON_RTOL
    envs = ", ".join(f"{env[N - 1]:.1e}" for N in (1, 2, 4, 8, 16, 32))
    report(8, ok, f"S(1,1,3)={s113[0] if len(s113) == 1 else s113}, envelope at N=1..32 doubling [{envs}] decays={decays}, "
           f"Petersson identity rel {rel:.1e} (tol {PETERSSON_RTOL})")


def test_criterion_9_declared_out_of_reach(capsys):
    with capsys.disabled():
        print("\nCRITERION 9: SKIP  asymptotic sup-norm exponents and L-value average are declared not reproducible")
    pytest.skip("declared not reproducible at desk scale")
