"""Bergman kernels, Poincare coefficients and Petersson norms in double precision."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from .analytic import Mat2, parallel_map
from .arith import divisors, factorize, gcd, is_squarefree, xgcd
from .exact import QSeries, delta as delta_series


class ToleranceError(RuntimeError):
    pass


class QuadratureError(RuntimeError):
    pass


# ---------------------------------------------------------------- q-expansions


def qseries_eval(f: QSeries, tau: complex) -> complex:
    q = cmath.exp(2j * math.pi * tau)
    coeffs = np.array([float(c) for c in f.coeffs])
    powers = q ** np.arange(len(coeffs))
    return complex(np.dot(coeffs, powers))


# ---------------------------------------------------------------- Petersson norm

_DELTA = delta_series(64)


@lru_cache(maxsize=None)
def _gauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def petersson_norm_numeric(f: QSeries, k: int, nodes: int = 48, rtol: float = 1e-6) -> float:
    """Petersson norm with a doubling check on the quadrature."""
    coarse = _petersson_norm(f, k, nodes)
    fine = _petersson_norm(f, k, 2 * nodes)
    if abs(fine - coarse) > rtol * abs(fine):
        raise QuadratureError(f"quadrature not converged: {coarse!r} vs {fine!r}")
    return fine


def _petersson_norm(f: QSeries, k: int, nodes: int) -> float:
    """Integral of v^k |f|^2 dmu over the standard fundamental domain.

    The part v >= 1 is done exactly in u through orthogonality of the Fourier
    modes, which leaves incomplete gamma values. The cap between the unit
    circle and v = 1 uses a tensor Gauss-Legendre rule.
    """
    if f.level != 1:
        raise ValueError("level one only")
    if f.coeffs[0] != 0:
        raise ValueError("f must be cuspidal")
    a = np.array([float(c) for c in f.coeffs])
    n = np.arange(len(a))
    upper = 0.0
    for i in range(1, len(a)):
        if a[i]:
            x = 4 * math.pi * i
            upper += a[i] ** 2 * special.gammaincc(k - 1, x) * special.gamma(k - 1) / x ** (k - 1)
    xs, ws = _gauss(nodes)
    # u in [0, 1/2] by symmetry |f(-u+iv)| = |f(u+iv)| for real coefficients
    us = 0.25 * (xs + 1)
    wu = 0.25 * ws
    cap = 0.0
    for u, w1 in zip(us, wu):
        lo = math.sqrt(1 - u * u)
        vs = lo + (1 - lo) * 0.5 * (xs + 1)
        wv = (1 - lo) * 0.5 * ws
        taus = u + 1j * vs
        q = np.exp(2j * math.pi * taus)
        vals = np.polyval(a[::-1], q)  # sum a_n q^n
        cap += w1 * float(np.sum(wv * vs ** (k - 2) * np.abs(vals) ** 2))
    return upper + 2 * cap


@lru_cache(maxsize=None)
def delta_norm() -> float:
    return petersson_norm_numeric(_DELTA, 12, nodes=32)


# ---------------------------------------------------------------- Bergman kernel


def bergman_spectral_delta(tau: complex) -> float:
    v = tau.imag
    return v**12 * abs(qseries_eval(_DELTA, tau)) ** 2 / delta_norm()


def bergman_constant(k: int) -> float:
    return (k - 1) / (4 * math.pi)


@dataclass(frozen=True)
class BergmanValue:
    value: float
    imag_residual: float
    tail_bound: float
    cutoff: float
    pairs: int


def _nsum_bound(k: int, w2: float) -> float:
    """Bound S with |sum_n (w + n)^{-k}| <= S w2^{-k} when |Re w| <= 1/2 and Im w <= w2."""
    n = np.arange(1, 4000)
    return 1 + 2 * float(np.sum((1 + ((n - 0.5) / w2) ** 2) ** (-k / 2)))


def _outer_tail(k: int, tau: complex, cutoff: float) -> float:
    # pairs with |j| > R >= 1 + |tau| have Im(gamma tau) <= v, each term is at most
    # 2^k S(2v) |j|^{-k}, and #{|j| <= r} <= 4 pi r^2 / v for r >= 1 + |tau|
    v = tau.imag
    if cutoff < 1 + abs(tau):
        return math.inf
    lattice = 4 * math.pi * k * cutoff ** (2 - k) / (v * (k - 2))
    return bergman_constant(k) * 2.0**k * _nsum_bound(k, 2 * v) * lattice


def _pairs(N: int, tau: complex, cutoff: float):
    v = tau.imag
    for c in range(0, int(cutoff / v) + 1, N):
        if c == 0:
            yield 0, 1
            continue
        half = math.sqrt(max(0.0, cutoff**2 - (c * v) ** 2))
        for d in range(math.ceil(-c * tau.real - half), math.floor(-c * tau.real + half) + 1):
            if gcd(c, d) == 1:
                yield c, d


def auto_cutoff(k: int, tau: complex, tol: float) -> float:
    cutoff = 1 + abs(tau)
    while _outer_tail(k, tau, cutoff) > tol:
        cutoff *= 1.1
    return cutoff


def bergman_geometric(k: int, N: int, tau: complex, cutoff: float | None = None, tol: float = 1e-10) -> BergmanValue:
    """c_k sum over Gamma_0(N)/{+-1} of (2 i v / j)^k (gamma tau - conj tau)^{-k}, c_k = (k-1)/(4 pi).

    Bottom rows (c, d) with |c tau + d| <= cutoff are summed exactly up to a
    per-row truncation of the translation sum. The reported tail bound covers
    both truncations.
    """
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    v = tau.imag
    if cutoff is None:
        cutoff = auto_cutoff(k, tau, tol / 2)
    outer = _outer_tail(k, tau, cutoff)
    if outer > tol:
        raise ToleranceError(f"cutoff {cutoff} too small: tail bound {outer:.2e} exceeds {tol:.1e}")
    n_est = math.pi * (cutoff + 1 + abs(tau)) ** 2 / v + 1
    per_row = tol / (2 * n_est * bergman_constant(k))
    total = 0j
    inner = 0.0
    rows = 0
    for c, d in _pairs(N, tau, cutoff):
        rows += 1
        if c == 0:
            g = Mat2(1, 0, 0, 1)
        else:
            sgn, x, y = xgcd(d, -c)  # d x - c y = +-1
            g = Mat2(sgn * x, sgn * y, c, d)
        j = g.j(tau)
        scale = (2 * v / abs(j)) ** k
        M = math.ceil(0.5 + (2 * scale / ((k - 1) * per_row)) ** (1 / (k - 1)))
        w = g.act(tau) - tau.conjugate()
        w = w - round(w.real)
        ns = np.arange(-M, M + 1)
        total += (2j * v / j) ** k * np.sum((w + ns) ** (-float(k)))
        inner += scale * 2 * (M - 0.5) ** (1 - k) / (k - 1)
    value = bergman_constant(k) * total
    err = outer + bergman_constant(k) * inner
    return BergmanValue(value.real, abs(value.imag), err, cutoff, rows)


def cusp_block(k: int, tau: complex, tol: float = 1e-12) -> float:
    """The (c, d) = (0, 1) row alone."""
    v = tau.imag
    scale = (2 * v) ** k
    M = math.ceil(0.5 + (2 * scale / ((k - 1) * tol)) ** (1 / (k - 1)))
    ns = np.arange(-M, M + 1)
    s = np.sum((2j * v + ns) ** (-float(k)))
    return float((bergman_constant(k) * (2j * v) ** k * s).real)


def cc1_majorant(k: int, N: int, tau: complex, cutoff: float = 60.0, damped: bool = False) -> float:
    """Sum over coprime (c, d), N | c, modulo sign, of |c tau + d|^{-k}.

    With ``damped`` the summand is (|j| + 1/|j|)^{-k} instead.
    """
    total = 0.0
    for c, d in _pairs(N, tau, cutoff):
        j = abs(c * tau + d)
        total += (j + 1 / j) ** (-k) if damped else j ** (-k)
    return total


def majorant_constant(k: int, v: float) -> float:
    """C with kernel(tau) <= C * damped majorant for tau in the standard domain.

    There every row has Im(gamma tau) <= v, so the translation sum is at
    most S(2 v) (v + v_1)^{-k} and the row contributes at most
    c_k 2^k S(2 v) (|j| + 1/|j|)^{-k}.
    """
    return bergman_constant(k) * 2.0**k * _nsum_bound(k, 2 * v)


def gamma0_samples(N: int, count: int, rng) -> list[Mat2]:
    """Random elements of Gamma_0(N) with small entries."""
    out = []
    while len(out) < count:
        c = N * int(rng.integers(-3, 4))
        d = int(rng.integers(-6, 7))
        if (c, d) == (0, 0) or gcd(c, d) != 1:
            continue
        sgn, a, b = xgcd(d, -c)  # a d - b c = +-1
        t = int(rng.integers(-3, 4))
        out.append(Mat2(sgn * a + t * c, sgn * b + t * d, c, d))
    return out


def bergman_scan(k: int, N: int, grid: dict, cutoff_scale: float = 1.0) -> dict:
    """max of the geometric kernel over a grid of the standard domain."""
    us = np.linspace(grid["u_range"][0], grid["u_range"][1], grid["steps"][0])
    vs = np.linspace(grid["v_range"][0], grid["v_range"][1], grid["steps"][1])
    pts = [complex(u, v) for u in us for v in vs if abs(complex(u, v)) >= 1 - 1e-12]
    tol = float(grid.get("tol", 1e-8))

    def f(t):
        cut = auto_cutoff(k, t, tol / 2) * cutoff_scale
        return bergman_geometric(k, N, t, cutoff=cut, tol=tol)

    vals = parallel_map(f, pts)
    i = int(np.argmax([b.value for b in vals]))
    return {
        "max_value": vals[i].value,
        "argmax": [pts[i].real, pts[i].imag],
        "tail_bound": max(b.tail_bound for b in vals),
        "points": len(pts),
    }


# ---------------------------------------------------------------- Kloosterman and Poincare


def kloosterman(n: int, c: int, m: int | None = None) -> float:
    """S(m, n; c) = sum over a mod c, (a, c) = 1, of e((a m + a^-1 n)/c); m defaults to n."""
    if c < 1:
        raise ValueError("c must be positive")
    m = n if m is None else m
    if c == 1:
        return 1.0
    total = 0.0
    for a in range(1, c):
        if gcd(a, c) == 1:
            total += math.cos(2 * math.pi * ((a * m + pow(a, -1, c) * n) % c) / c)
    return total


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n):
        if d < n:
            poly = _poly_div_exact(poly, list(_cyclotomic(d)))
    return tuple(poly)


def _poly_div_exact(a: list[int], b: list[int]) -> list[int]:
    a = a[:]
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = a[i + len(b) - 1] // b[-1]
        out[i] = q
        for j, bj in enumerate(b):
            a[i + j] -= q * bj
    if any(a):
        raise ArithmeticError("inexact division")
    return out


def kloosterman_exact(n: int, c: int, m: int | None = None) -> list[int]:
    """S(m, n; c) as an element of Z[zeta_c], reduced modulo the cyclotomic polynomial.

    A constant result is returned as a one-element list.
    """
    m = n if m is None else m
    if c == 1:
        return [1]
    counts = [0] * c
    for a in range(1, c):
        if gcd(a, c) == 1:
            counts[(a * m + pow(a, -1, c) * n) % c] += 1
    phi = _cyclotomic(c)
    deg = len(phi) - 1
    rem = counts[:]
    for i in range(len(rem) - 1, deg - 1, -1):
        q = rem[i]
        if q:
            for j, pj in enumerate(phi):
                rem[i - deg + j] -= q * pj
    rem = rem[:deg] if deg else [0]
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    return rem


def bessel_j(order: float, x: float) -> float:
    return float(special.jv(order, x))


def bessel_bound(order: float, x: float) -> float:
    return min(1.0, (x / 2) ** order / math.gamma(order + 1))


def poincare_coeff(k: int, N: int, n: int, c_max: int | None = None, tol: float = 1e-8) -> dict:
    """Normalized first-coefficient sum 1 + 2 pi i^{-k} sum_{N | c} S(n, n; c)/c J_{k-1}(4 pi n/c)."""
    if k % 2:
        raise ValueError("k must be even")

    def tail(cm: int) -> float:
        # |S| <= c and J bounded via bessel_bound
        return 2 * math.pi * (2 * math.pi * n) ** (k - 1) / math.gamma(k) * cm ** (2 - k) / (k - 2)

    if c_max is None:
        c_max = N
        while tail(c_max) > tol:
            c_max += N
    if tail(c_max) > tol:
        raise ToleranceError("c_max too small for the requested tolerance")
    s = 0.0
    for c in range(N, c_max + 1, N):
        s += kloosterman(n, c) / c * bessel_j(k - 1, 4 * math.pi * n / c)
    sign = (-1) ** (k // 2)  # i^{-k}
    return {
        "value": 1 + 2 * math.pi * sign * s,
        "deviation": abs(2 * math.pi * s),
        "c_max": c_max,
        "tail_bound": tail(c_max),
    }


def poincare_scan(grid: dict) -> dict:
    """Deviation |p_{k,N}(n) - 1| over a range of levels."""
    k = int(grid.get("k", 12))
    n = int(grid.get("n", 1))
    lo, hi = grid.get("N_range", [1, 50])
    Ns = list(range(int(lo), int(hi) + 1))
    rows = [poincare_coeff(k, N, n) for N in Ns]
    devs = [r["deviation"] for r in rows]
    env = [max(devs[i:]) for i in range(len(devs))]
    i = int(np.argmax(devs))
    return {
        "levels": Ns,
        "deviation": devs,
        "envelope": env,
        "max_value": devs[i],
        "argmax": Ns[i],
        "tail_bound": max(r["tail_bound"] for r in rows),
    }


def envelope_decays(Ns: list[int], env: list[float]) -> bool:
    """max over N >= N0 strictly decreases each time N0 doubles."""
    pos = {N: i for i, N in enumerate(Ns)}
    N0 = Ns[0]
    while 2 * N0 in pos:
        if not env[pos[2 * N0]] < env[pos[N0]]:
            return False
        N0 *= 2
    return True


def petersson_first_coefficient(k: int, a1: float, norm: float) -> float:
    """Gamma(k-1)/(4 pi)^{k-1} |a(1)|^2/<f, f> for a one-dimensional space."""
    return math.gamma(k - 1) / (4 * math.pi) ** (k - 1) * a1**2 / norm


def poincare_envelope(k: int, Ns, n: int = 1) -> list[float]:
    """max_{N' >= N} |p_{k,N'}(n) - 1| over the given levels."""
    devs = [poincare_coeff(k, N, n)["deviation"] for N in Ns]
    return [max(devs[i:]) for i in range(len(devs))]


# ---------------------------------------------------------------- coset representatives


def coset_reps_gamma0(N: int) -> list[Mat2]:
    """Representatives A_{q,j} of Gamma_0(N) \\ SL_2(Z), N square-free."""
    if not is_squarefree(N):
        raise ValueError("N must be square-free")
    reps = []
    for q in divisors(N):
        r = N // q
        # beta r - q gamma = 1
        g, x, y = xgcd(r, q)
        assert g == 1
        beta, gamma = x, -y
        left = Mat2(beta, 1, q * gamma, r)
        for j in range(q):
            reps.append(left @ Mat2(0, -1, 1, j))
    return reps


def gamma0_index(N: int) -> int:
    idx = N
    for p, _ in factorize(N) if N > 1 else ():
        idx = idx * (p + 1) // p
    return idx


def same_coset(g: Mat2, h: Mat2, N: int) -> bool:
    return (g @ h.inverse()).in_gamma0(N)
