"""Theta invariants, the A_g cocycle and the matrix-counting functions."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .arith import divisors, gcd
from .jacobi import JacobiForm, PrecisionError, jacobi_eval, theta_m


class BudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class UpperHalfPoint:
    u: float
    v: float
    z: complex | None = None

    def __post_init__(self):
        if not self.v > 0:
            raise ValueError("v must be positive")

    @property
    def tau(self) -> complex:
        return complex(self.u, self.v)


@dataclass(frozen=True)
class Mat2:
    a: float
    b: float
    c: float
    d: float

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        det = self.det
        if isinstance(det, int) and abs(det) == 1:
            return Mat2(self.d * det, -self.b * det, -self.c * det, self.a * det)
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def act(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def j(self, tau: complex) -> complex:
        return self.c * tau + self.d

    def in_gamma0(self, N: int) -> bool:
        ints = all(float(x).is_integer() for x in (self.a, self.b, self.c, self.d))
        return ints and self.det == 1 and int(self.c) % N == 0

    def as_float(self) -> "Mat2":
        return Mat2(float(self.a), float(self.b), float(self.c), float(self.d))


IDENTITY = Mat2(1, 0, 0, 1)
S_MATRIX = Mat2(0, -1, 1, 0)
T_MATRIX = Mat2(1, 1, 0, 1)


# ---------------------------------------------------------------- theta


def theta_eval(mu: int, tau: complex, z: complex, tol: float = 1e-15) -> complex:
    """theta_mu(tau, z) = sum_{n = mu mod 2} e(n^2 tau/4) e(n z)."""
    if mu not in (0, 1):
        raise ValueError("mu is 0 or 1")
    return theta_m(1, mu, tau, z, tol)


def vartheta(tau: complex, z: complex, tol: float = 1e-15) -> float:
    return abs(theta_eval(0, tau, z, tol)) ** 2 + abs(theta_eval(1, tau, z, tol)) ** 2


def vartheta_fixed(tau: complex, z: complex, nmax: int) -> float:
    """Same quantity summed over a fixed symmetric window |n| <= nmax."""
    n = np.arange(-nmax, nmax + 1)
    terms = np.exp(2j * np.pi * (n * n * tau / 4 + n * z))
    t0 = terms[n % 2 == 0].sum()
    t1 = terms[n % 2 == 1].sum()
    return float(abs(t0) ** 2 + abs(t1) ** 2)


def invariant_phi(phi: JacobiForm, tau: complex, z: complex) -> float:
    """v^{k/2} exp(-2 pi m y^2/v) |phi(tau, z)|."""
    v, y = tau.imag, z.imag
    val = jacobi_eval(phi, tau, z)
    return v ** (phi.weight / 2) * math.exp(-2 * math.pi * phi.index * y * y / v) * abs(val)


def jacobi_grid(u_range, v_range, steps) -> list[tuple[complex, complex]]:
    """Points (tau, z) of the standard domain times the z-torus.

    tau runs over a u x v grid clipped to |tau| >= 1; z = a + b tau with
    a, b on a square grid in [0, 1).
    """
    nu, nv, nz = steps
    us = np.linspace(u_range[0], u_range[1], nu)
    vs = np.linspace(v_range[0], v_range[1], nv)
    ab = np.arange(nz) / nz
    pts = []
    for u in us:
        for v in vs:
            tau = complex(u, v)
            if abs(tau) < 1 - 1e-12:
                continue
            for a in ab:
                for b in ab:
                    pts.append((tau, complex(a) + b * tau))
    return pts


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SKLAB_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Sequence) -> list:
    """Order-preserving map, threaded when SKLAB_THREADS > 1."""
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def varth_scan(grid: dict, weight_exponent: float = 4 * math.pi, tol: float = 1e-15) -> dict:
    """max of exp(-c y^2/v) * vartheta over a grid; c defaults to 4 pi.

    With z = a + b tau one has y^2/v = b^2 v, and vartheta grows like
    exp(4 pi b^2 v) off the lattice of zeros, so 4 pi is the exponent that
    makes the product bounded.
    """
    pts = jacobi_grid(grid["u_range"], grid["v_range"], grid["steps"])

    def f(pt):
        tau, z = pt
        return math.exp(-weight_exponent * z.imag**2 / tau.imag) * vartheta(tau, z, tol)

    vals = parallel_map(f, pts)
    i = int(np.argmax(vals))
    tau, z = pts[i]
    return {"max_value": float(vals[i]), "argmax": {"tau": [tau.real, tau.imag], "z": [z.real, z.imag]}, "points": len(pts), "tail_bound": tol}


# ---------------------------------------------------------------- A_g


def a_g(g: Mat2, tau: complex, w: complex | None = None) -> complex:
    """(g tau - conj(w)) j(g, tau) / Im(w); w defaults to tau."""
    w = tau if w is None else w
    if tau.imag <= 0 or w.imag <= 0:
        raise ValueError("points must lie in the upper half plane")
    g = g.as_float()
    return (g.act(tau) - w.conjugate()) * g.j(tau) / w.imag


def alpha_matrix(m: int, d: int, b: int) -> Mat2:
    return Mat2(m // d, b, 0, d)


def b_window(d: int, dp: int) -> range:
    """b with dp^2/d + d < b <= dp^2/d + 2d (exactly d integers)."""
    lo = Fraction(dp * dp, d) + d
    return range(math.floor(lo) + 1, math.floor(lo + d) + 1)


def bprime_window(dp: int) -> range:
    return range(dp)


@dataclass(frozen=True)
class CountQuery:
    tau: UpperHalfPoint
    m: int
    N: int
    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        if self.m < 1 or self.N < 1:
            raise ValueError("m and N must be positive")


SLACK = 2.0
BUDGET = 10**7


def _conj_entries(m, d, b, dp, bp, A0, B0, c, D0):
    """Entries of beta^{-1} gamma alpha as floats."""
    a = m // d
    ap = m // dp
    Ag = (dp * A0 - bp * c) * a / m
    Bg = (dp * (A0 * b + B0 * d) - bp * (c * b + D0 * d)) / m
    Cg = ap * c * a / m
    Dg = ap * (c * b + D0 * d) / m
    return Ag, Bg, Cg, Dg


def _abs_a(Ag, Bg, Cg, Dg, tau: complex) -> float:
    j = Cg * tau + Dg
    gt = (Ag * tau + Bg) / j
    return abs((gt - tau.conjugate()) * j / tau.imag)


def count_C(q: CountQuery, *, budget: int = BUDGET, return_triples: bool = False):
    """Number of (gamma mod +-1, alpha, beta) with |A_{beta^-1 gamma alpha}(tau)| < delta.

    gamma runs over Gamma_0(N), alpha = [[m/d, b], [0, d]] and
    beta = [[m/d', b'], [0, d']] with b, b' in fixed residue windows.
    """
    tau = q.tau.tau
    u, v = tau.real, tau.imag
    m, N, delta = q.m, q.N, q.delta
    count = 0
    work = 0
    triples = []
    for d in divisors(m):
        for dp in divisors(m):
            # lower-left entry of g is m c/(d d'); |C_g| v <= |j| < delta
            cmax = int(SLACK * delta * d * dp / (m * v)) + 1
            for b in b_window(d, dp):
                for bp in bprime_window(dp):
                    for c in range(0, cmax + 1, N):
                        Cg = m * c / (d * dp)
                        dlim = SLACK * (delta + abs(Cg) * abs(u))
                        # D_g = (c b + D0 d)/d'
                        lo = math.floor((-dlim * dp - c * b) / d) - 1
                        hi = math.ceil((dlim * dp - c * b) / d) + 1
                        if c == 0:
                            d_range: Iterable[int] = (1,)
                        else:
                            d_range = range(lo, hi + 1)
                        for D0 in d_range:
                            if c and gcd(c, D0) != 1:
                                continue
                            work += 1
                            if work > budget:
                                raise BudgetError("enumeration budget exceeded")
                            Dg = (c * b + D0 * d) / dp
                            jj = abs(Cg * tau + Dg)
                            if jj + 1 / jj >= delta:
                                continue
                            if c == 0:
                                A0, B0 = 1, 0
                            else:
                                A0 = pow(D0, -1, c) if c > 1 else 0
                                B0 = (A0 * D0 - 1) // c
                            # T^t gamma shifts g tau by t d'^2/m
                            Ag, Bg, Cg0, Dg0 = _conj_entries(m, d, b, dp, bp, A0, B0, c, D0)
                            base = ((Ag * tau + Bg) / (Cg0 * tau + Dg0)).real
                            step = dp * dp / m
                            reach = SLACK * delta * v / jj + step
                            t_lo = math.floor((u - reach - base) / step)
                            t_hi = math.ceil((u + reach - base) / step)
                            for t in range(t_lo, t_hi + 1):
                                work += 1
                                A1, B1 = A0 + t * c, B0 + t * D0
                                ent = _conj_entries(m, d, b, dp, bp, A1, B1, c, D0)
                                if _abs_a(*ent, tau) < delta:
                                    count += 1
                                    if return_triples:
                                        triples.append(((A1, B1, c, D0), (d, b), (dp, bp)))
    return triples if return_triples else count


def count_C_bruteforce(q: CountQuery, box: int) -> int:
    """Reference count over all gamma with entries bounded by ``box``."""
    tau = q.tau.tau
    m, N, delta = q.m, q.N, q.delta
    total = 0
    for d in divisors(m):
        for dp in divisors(m):
            for b in b_window(d, dp):
                for bp in bprime_window(dp):
                    for c in range(0, box + 1, N):
                        for D0 in range(-box, box + 1):
                            if c == 0 and D0 != 1:
                                continue
                            for A0 in range(-box, box + 1):
                                if c == 0 and A0 != 1:
                                    continue
                                if c == 0:
                                    b_vals = range(-box, box + 1)
                                else:
                                    if (A0 * D0 - 1) % c:
                                        continue
                                    b_vals = ((A0 * D0 - 1) // c,)
                                for B0 in b_vals:
                                    if _abs_a(*_conj_entries(m, d, b, dp, bp, A0, B0, c, D0), tau) < delta:
                                        total += 1
    return total


def count_bound_shape(m: int, N: int, delta: float) -> float:
    """delta^3 + (m + m^2 delta/N) delta^4 / N."""
    return delta**3 + (m + m * m * delta / N) * delta**4 / N


# fitted once over the default CountGrid (worst ratio 1.0388), asserted thereafter
COUNT_RATIO_CONSTANT = 1.05


@dataclass(frozen=True)
class CountGrid:
    levels: tuple[int, ...] = (1, 2, 3, 5)
    ms: tuple[int, ...] = (1, 2, 3, 4, 5, 6)
    deltas: tuple[float, ...] = (2.5, 4.0, 8.0, 16.0)
    u: float = 0.23

    def heights(self, N: int) -> tuple[float, ...]:
        return (1 / N, 1.0, 2.0)

    def queries(self) -> list[CountQuery]:
        return [
            CountQuery(UpperHalfPoint(self.u, v), m, N, delta)
            for N in self.levels
            for v in self.heights(N)
            for m in self.ms
            for delta in self.deltas
        ]


def count_ratio_scan(grid: CountGrid = CountGrid()) -> dict:
    """max over the grid of count_C / count_bound_shape."""
    qs = grid.queries()
    ratios = parallel_map(lambda q: count_C(q) / count_bound_shape(q.m, q.N, q.delta), qs)
    i = max(range(len(qs)), key=ratios.__getitem__)
    q = qs[i]
    return {
        "max_ratio": ratios[i],
        "argmax": {"u": q.tau.u, "v": q.tau.v, "m": q.m, "N": q.N, "delta": q.delta},
        "queries": len(qs),
    }


# ---------------------------------------------------------------- lattice count


def count_CY(Y: Sequence[Sequence[float]], bound: float, *, budget: int = BUDGET) -> int:
    """Half-integral positive definite T = [[t1, r/2], [r/2, t2]] with tr(TY) <= bound."""
    y11, y12, y22 = float(Y[0][0]), float(Y[0][1]), float(Y[1][1])
    if y11 <= 0 or y11 * y22 - y12 * y12 <= 0:
        raise ValueError("Y must be positive definite")
    if abs(2 * y12) > y11 + 1e-12 or y11 > y22 + 1e-12:
        raise ValueError("Y must be Minkowski reduced")
    # tr(TY) >= (t1 y11 + t2 y22)(1 - |y12|/sqrt(y11 y22)) for positive T
    shrink = 1 - abs(y12) / math.sqrt(y11 * y22)
    t1max = int(bound / (y11 * shrink)) + 1
    t2max = int(bound / (y22 * shrink)) + 1
    if t1max * t2max > budget:
        raise BudgetError("enumeration budget exceeded")
    count = 0
    for t1 in range(1, t1max + 1):
        for t2 in range(1, t2max + 1):
            rmax = math.isqrt(4 * t1 * t2 - 1)
            for r in range(-rmax, rmax + 1):
                if t1 * y11 + r * y12 + t2 * y22 <= bound + 1e-12:
                    count += 1
    return count


def count_CY_reference(Y, bound: float) -> float:
    """det(Y)^{-3/2} scaling reference."""
    det = Y[0][0] * Y[1][1] - Y[0][1] * Y[1][0]
    return det**-1.5


__all__ = [
    "COUNT_RATIO_CONSTANT",
    "CountGrid",
    "count_ratio_scan",
    "UpperHalfPoint",
    "Mat2",
    "IDENTITY",
    "S_MATRIX",
    "T_MATRIX",
    "theta_eval",
    "vartheta",
    "vartheta_fixed",
    "invariant_phi",
    "jacobi_grid",
    "varth_scan",
    "a_g",
    "alpha_matrix",
    "b_window",
    "CountQuery",
    "count_C",
    "count_C_bruteforce",
    "count_bound_shape",
    "count_CY",
    "count_CY_reference",
    "BudgetError",
    "PrecisionError",
    "parallel_map",
]
