"""Jacobi forms at level one, their index-raising operators and lifts.

Coefficients of an index-m form are stored by discriminant class: the pair
(D, r mod 2m) with D = 4nm - r^2. Siegel coefficients of a lift are keyed by
(n, r, m) for T = [[n, r/2], [r/2, m]].
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .arith import divisors, fundamental_split, gcd, is_squarefree, kronecker, moebius, factorize
from .exact import (
    LAM,
    ONE,
    P,
    RHO,
    QSeries,
    SymExpr,
    bernoulli,
    bernoulli_poly,
    eisenstein,
    sigma,
)
from .report import NumericReport, outcome, timer


class PrecisionError(ValueError):
    """Raised when a coefficient beyond the stored bound is requested."""


# ---------------------------------------------------------------- class numbers


def hurwitz_class_number(D: int) -> Fraction:
    """Weighted count of reduced positive forms of discriminant -D; H(0) = -1/12."""
    if D < 0:
        raise ValueError("D must be non-negative")
    if D == 0:
        return Fraction(-1, 12)
    if D % 4 not in (0, 3):
        return Fraction(0)
    total = Fraction(0)
    a = 1
    while 3 * a * a <= D:
        for b in range(-a + 1, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if a == b == c:
                total += Fraction(1, 3)
            elif b == 0 and a == c:
                total += Fraction(1, 2)
            else:
                total += 1
        a += 1
    return total


def generalized_bernoulli(r: int, d0: int) -> Fraction:
    """B_{r, chi} for the quadratic character of fundamental discriminant d0."""
    f = abs(d0)
    s = sum(
        (kronecker(d0, a) * bernoulli_poly(r, Fraction(a, f)) for a in range(1, f + 1)),
        Fraction(0),
    )
    return Fraction(f) ** (r - 1) * s


def dirichlet_l_negative(r: int, d0: int) -> Fraction:
    """L(1 - r, chi_{d0}) = -B_{r,chi}/r, exact."""
    if d0 == 1:
        return -bernoulli(r) / r  # zeta(1 - r), with B_1 convention irrelevant for r >= 2
    return -generalized_bernoulli(r, d0) / r


@lru_cache(maxsize=None)
def cohen_H(r: int, n: int) -> Fraction:
    """Cohen's generalized class number H(r, n)."""
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    if n == 0:
        return -bernoulli(2 * r) / (2 * r)  # zeta(1 - 2r)
    d = (-1) ** r * n
    if d % 4 not in (0, 1):
        return Fraction(0)
    d0, f = fundamental_split(d)
    lval = dirichlet_l_negative(r, d0)
    s = sum(
        (moebius(e) * kronecker(d0, e) * e ** (r - 1) * sigma(f // e, 2 * r - 1) for e in divisors(f)),
        0,
    )
    return lval * s


# ---------------------------------------------------------------- Jacobi forms


def _class_key(D: int, r: int, m: int) -> tuple[int, int]:
    return D, r % (2 * m)


def _reps(D: int, m: int) -> Iterable[int]:
    """Residues rho mod 2m with D = -rho^2 mod 4m."""
    return (rho for rho in range(2 * m) if (D + rho * rho) % (4 * m) == 0)


@dataclass(frozen=True)
class JacobiForm:
    weight: int
    index: int
    level: int
    dmax: int
    table: Mapping[tuple[int, int], Fraction] = field(repr=False)

    def coeff(self, n: int, r: int) -> Fraction:
        D = 4 * n * self.index - r * r
        if D < 0:
            return Fraction(0)
        if D > self.dmax:
            raise PrecisionError(f"discriminant {D} beyond stored bound {self.dmax}")
        return self.table.get(_class_key(D, r, self.index), Fraction(0))

    def c(self, D: int) -> Fraction:
        """Coefficient by discriminant alone (index one)."""
        if self.index != 1:
            raise ValueError("discriminant-only view needs index 1")
        if D < 0 or D % 4 in (1, 2):
            return Fraction(0)
        r = D % 2
        return self.coeff((D + r) // 4, r)

    def scale(self, c) -> "JacobiForm":
        c = Fraction(c)
        return JacobiForm(self.weight, self.index, self.level, self.dmax, {k: c * v for k, v in self.table.items()})

    def __sub__(self, other: "JacobiForm") -> "JacobiForm":
        if (self.weight, self.index, self.level) != (other.weight, other.index, other.level):
            raise ValueError("incompatible Jacobi forms")
        keys = set(self.table) | set(other.table)
        dmax = min(self.dmax, other.dmax)
        tab = {k: self.table.get(k, Fraction(0)) - other.table.get(k, Fraction(0)) for k in keys if k[0] <= dmax}
        return JacobiForm(self.weight, self.index, self.level, dmax, {k: v for k, v in tab.items() if v})

    def items(self):
        """(n, r, coefficient) with reduced r in (-m, m] for every stored class."""
        m = self.index
        out = []
        for (D, rho), c in sorted(self.table.items()):
            r = rho if rho <= m else rho - 2 * m
            out.append(((D + r * r) // (4 * m), r, c))
        return out

    def to_json(self) -> list[dict]:
        return [
            {"n": n, "r": r, "num": str(c.numerator), "den": str(c.denominator)}
            for n, r, c in sorted(self.items())
            if c
        ]

    @classmethod
    def from_json(cls, data, weight: int, index: int = 1, level: int = 1, dmax: int | None = None):
        tab = {}
        for row in data:
            n, r = int(row["n"]), int(row["r"])
            tab[_class_key(4 * n * index - r * r, r, index)] = Fraction(int(row["num"]), int(row["den"]))
        bound = dmax if dmax is not None else max((k[0] for k in tab), default=0)
        return cls(weight, index, level, bound, tab)

    def reduction_consistent(self, formula: Callable[[int, int], Fraction] | None = None) -> bool:
        """Check that coefficients depend only on (D, r mod 2m).

        Every stored class must satisfy D = -r^2 mod 4m. With ``formula``, every
        representative (n, r) of every class up to the bound is evaluated and
        compared against the stored value.
        """
        m = self.index
        if any((D + rho * rho) % (4 * m) for D, rho in self.table):
            return False
        if formula is None:
            return True
        for n in range(self.dmax // (4 * m) + m + 2):
            rmax = math.isqrt(4 * n * m)
            for r in range(-rmax, rmax + 1):
                D = 4 * n * m - r * r
                if D <= self.dmax and formula(n, r) != self.coeff(n, r):
                    return False
        return True


def from_discriminants(weight: int, dmax: int, c: Callable[[int], Fraction]) -> JacobiForm:
    tab = {}
    for D in range(dmax + 1):
        if D % 4 in (0, 3):
            val = Fraction(c(D))
            if val:
                tab[(D, D % 2)] = val
    return JacobiForm(weight, 1, 1, dmax, tab)


def times_qseries(f: QSeries, phi: JacobiForm) -> JacobiForm:
    """Product of an elliptic form in tau with an index-one Jacobi form."""
    if phi.index != 1:
        raise ValueError("only index one is supported")
    need = phi.dmax // 4 + 1
    if f.precision < need:
        raise PrecisionError("q-series precision too small for this bound")

    def coeff(D: int) -> Fraction:
        return sum((f.coeffs[j] * phi.c(D - 4 * j) for j in range(D // 4 + 1)), Fraction(0))

    return from_discriminants(phi.weight + f.weight, phi.dmax, coeff)


def jacobi_eisenstein(k: int, dmax: int) -> JacobiForm:
    if k not in (4, 6):
        raise ValueError("Jacobi Eisenstein series are provided for k = 4, 6")
    if dmax > 400:
        raise ValueError("desk-scale bound is dmax <= 400")
    h0 = cohen_H(k - 1, 0)
    return from_discriminants(k, dmax, lambda D: cohen_H(k - 1, D) / h0)


class ConventionError(ValueError):
    pass


def jacobi_cusp_basis(k: int, dmax: int) -> JacobiForm:
    """The cusp form spanning J_{k,1} for k = 10, 12, normalized to c(3) = 1."""
    prec = dmax // 4 + 2
    e41, e61 = jacobi_eisenstein(4, dmax), jacobi_eisenstein(6, dmax)
    e4, e6 = eisenstein(4, prec), eisenstein(6, prec)
    if k == 10:
        phi = times_qseries(e6, e41) - times_qseries(e4, e61)
    elif k == 12:
        phi = times_qseries(e4 * e4, e41) - times_qseries(e6, e61)
    else:
        raise ValueError("cusp forms are provided for k = 10, 12")
    if phi.c(0) != 0:
        raise ConventionError("combination is not cuspidal")
    return phi.scale(1 / phi.c(3))


def jacobi_hecke_image(phi: JacobiForm, p: int) -> dict[int, Fraction]:
    """Coefficients c*(D) of phi|T_p for index one, wherever p^2 D fits."""
    k = phi.weight
    out = {}
    for D in range(1, phi.dmax // (p * p) + 1):
        if D % 4 not in (0, 3):
            continue
        val = phi.c(p * p * D) + kronecker(-D, p) * p ** (k - 2) * phi.c(D)
        if D % (p * p) == 0:
            val += p ** (2 * k - 3) * phi.c(D // (p * p))
        out[D] = val
    return out


def jacobi_hecke_eigenvalue(phi: JacobiForm, p: int) -> Fraction:
    img = jacobi_hecke_image(phi, p)
    lam = img[3] / phi.c(3)
    for D, val in img.items():
        if val != lam * phi.c(D):
            raise ValueError(f"not an eigenform at p={p}: mismatch at D={D}")
    return lam


# ---------------------------------------------------------------- theta decomposition


def theta_decompose(phi: JacobiForm) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
    """Theta components h_0, h_1 as maps D -> c(D) (exponent D/4)."""
    if phi.index != 1:
        raise ValueError("theta_decompose expects index 1")
    h0, h1 = {}, {}
    for (D, rho), c in phi.table.items():
        if (D + rho * rho) % 4:
            raise ValueError("inconsistent index-one reduction")
        (h0 if rho == 0 else h1)[D] = c
    return dict(sorted(h0.items())), dict(sorted(h1.items()))


Gauss = tuple[Fraction, Fraction]  # a + b i


def _i_power(e: int) -> Gauss:
    return [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)), (Fraction(-1), Fraction(0)), (Fraction(0), Fraction(-1))][e % 4]


def quarter_shift(phi: JacobiForm, sign: int) -> dict[int, Gauss]:
    """Coefficients of h((tau + sign)/4) in powers q^{D/4}, where h = sum c(D) q^D."""
    out = {}
    for D in range(phi.dmax + 1):
        c = phi.c(D)
        if c:
            re, im = _i_power(sign * D)
            out[D] = (c * re, c * im)
    return out


def quarter_shift_identities(phi: JacobiForm) -> bool:
    """h_0 = (h_- + h_+)/2 and h_1 = (h_- - h_+)/(2i) as formal series."""
    h0, h1 = theta_decompose(phi)
    minus, plus = quarter_shift(phi, -1), quarter_shift(phi, 1)
    zero = (Fraction(0), Fraction(0))
    for D in range(phi.dmax + 1):
        a, b = minus.get(D, zero), plus.get(D, zero)
        s = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        # (x + iy)/(2i) = (y - ix)/2
        dx, dy = a[0] - b[0], a[1] - b[1]
        t = (dy / 2, -dx / 2)
        if s != (h0.get(D, Fraction(0)), Fraction(0)):
            return False
        if t != (h1.get(D, Fraction(0)), Fraction(0)):
            return False
    return True


# ---------------------------------------------------------------- index raising


def vm_coeff_at(phi: JacobiForm, m: int, n: int, r: int) -> Fraction:
    """c_{phi|V_m}(n, r) = sum_{a | (n, r, m)} a^{k-1} c_phi(nm/a^2, r/a)."""
    k = phi.weight
    return sum(
        (a ** (k - 1) * phi.coeff(n * m // (a * a), r // a) for a in divisors(gcd(gcd(n, r), m))),
        Fraction(0),
    )


def vm_coeff(phi: JacobiForm, m: int) -> JacobiForm:
    """Coefficients of phi|V_m for an index-one form of level one."""
    if phi.index != 1:
        raise ValueError("vm_coeff expects index 1")
    if phi.level != 1:
        raise ValueError("vm_coeff is implemented for level one")
    tab = {}
    for D in range(phi.dmax + 1):
        for rho in _reps(D, m):
            r = rho if rho <= m else rho - 2 * m
            val = vm_coeff_at(phi, m, (D + r * r) // (4 * m), r)
            if val:
                tab[(D, rho)] = val
    return JacobiForm(phi.weight, m, 1, phi.dmax, tab)


# ---------------------------------------------------------------- numerics


def theta_m(m: int, mu: int, tau: complex, z: complex, tol: float = 1e-15, budget: int = 100000) -> complex:
    """sum over r = mu mod 2m of q^{r^2/4m} zeta^r, truncated with a Gaussian tail bound."""
    v, y = tau.imag, z.imag
    if v <= 0:
        raise ValueError("tau must lie in the upper half plane")
    # |term| = exp(2 pi m y^2/v) exp(-pi v (r + 2 m y/v)^2 / (2m))
    center = -2 * m * y / v
    width = math.sqrt(2 * m * max(0.0, -math.log(tol) + 2 * math.pi * m * y * y / v + 5) / (math.pi * v)) + 2 * m
    lo, hi = math.floor(center - width), math.ceil(center + width)
    if (hi - lo) / (2 * m) > budget:
        raise PrecisionError("theta tail bound unachievable within the term budget")
    start = lo + ((mu - lo) % (2 * m))
    total = 0j
    for r in range(start, hi + 1, 2 * m):
        total += cmath.exp(2j * math.pi * (r * r * tau / (4 * m) + r * z))
    return total


def _coefficient_growth(phi: JacobiForm) -> float:
    best = 0.0
    for (D, _), c in phi.table.items():
        if D:
            best = max(best, abs(float(c)) / D ** (phi.weight / 2))
    return best


def jacobi_eval(phi: JacobiForm, tau: complex, z: complex, rel_tol: float = 1e-9) -> complex:
    """Evaluate an index-m Jacobi form through its theta decomposition."""
    m = phi.index
    v = tau.imag
    h = {}
    for (D, rho), c in phi.table.items():
        h[rho] = h.get(rho, 0j) + float(c) * cmath.exp(2j * math.pi * D * tau / (4 * m))
    value = sum((hv * theta_m(m, rho, tau, z) for rho, hv in h.items()), 0j)
    # tail of the h-sums: c(D) <= C D^{k/2}, times the largest theta
    growth = _coefficient_growth(phi)
    decay = math.exp(-math.pi * v / (2 * m))
    tail = 0.0
    D = phi.dmax + 1
    term = growth * D ** (phi.weight / 2) * decay**D
    while term > 1e-300 and D < phi.dmax + 100000:
        tail += term
        D += 1
        term = growth * D ** (phi.weight / 2) * decay**D
    theta_size = math.exp(2 * math.pi * m * z.imag**2 / v) * (1 + math.sqrt(2 * m / v)) * 2 * m
    tail *= theta_size
    if tail > rel_tol * max(abs(value), 1e-300):
        raise PrecisionError(f"truncation tail {tail:.3e} exceeds tolerance at |value|={abs(value):.3e}")
    return value


def vm_direct_eval(phi: JacobiForm, m: int, tau: complex, z: complex, rel_tol: float = 1e-9) -> complex:
    """(phi|V_m)(tau, z) through the coset sum over upper triangular matrices."""
    if tau.imag < 0.5:
        raise ValueError("need Im(tau) >= 0.5")
    if phi.level != 1:
        raise ValueError("coset sum implemented for level one")
    k = phi.weight
    total = 0j
    for d in divisors(m):
        a = m // d
        for b in range(d):
            total += d ** (-k) * jacobi_eval(phi, (a * tau + b) / d, a * z, rel_tol)
    return m ** (k - 1) * total


def vm_fourier_eval(phi: JacobiForm, m: int, tau: complex, z: complex, rel_tol: float = 1e-9) -> complex:
    return jacobi_eval(vm_coeff(phi, m), tau, z, rel_tol)


# ---------------------------------------------------------------- Siegel side


def lift_coefficient(phi: JacobiForm, n: int, r: int, m: int) -> Fraction:
    """A(n, r, m) = sum_{a | (n, r, m)} a^{k-1} c((4nm - r^2)/a^2)."""
    D = 4 * n * m - r * r
    if D <= 0:
        return Fraction(0)
    k = phi.weight
    return sum((a ** (k - 1) * phi.c(D // (a * a)) for a in divisors(gcd(gcd(n, abs(r)), m))), Fraction(0))


@dataclass(frozen=True)
class SiegelCoeffTable:
    weight: int
    level: int
    dmax: int
    entries: Mapping[tuple[int, int, int], Fraction] = field(repr=False)

    def __len__(self):
        return len(self.entries)

    def get(self, n: int, r: int, m: int) -> Fraction | None:
        if 4 * n * m - r * r <= 0:
            return Fraction(0)
        return self.entries.get((n, r, m))

    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "level": self.level,
            "dmax": self.dmax,
            "entries": [
                {"n": n, "r": r, "m": m, "num": str(c.numerator), "den": str(c.denominator)}
                for (n, r, m), c in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SiegelCoeffTable":
        entries = {
            (int(e["n"]), int(e["r"]), int(e["m"])): Fraction(int(e["num"]), int(e["den"]))
            for e in data["entries"]
        }
        return cls(int(data["weight"]), int(data.get("level", 1)), int(data["dmax"]), entries)


def lift_index_set(dmax: int) -> list[tuple[int, int, int]]:
    """Positive T with det(2T) <= dmax and nm <= dmax.

    The second condition keeps the set finite and closed under T -> (nm/d^2, r/d, 1).
    """
    out = []
    for n in range(1, dmax + 1):
        for m in range(1, dmax // n + 1):
            rmax = math.isqrt(4 * n * m - 1)
            for r in range(-rmax, rmax + 1):
                if 4 * n * m - r * r <= dmax:
                    out.append((n, r, m))
    return out


def sk_lift(phi: JacobiForm, dmax: int | None = None) -> SiegelCoeffTable:
    if phi.index != 1 or phi.level != 1:
        raise ValueError("lift implemented for index one, level one")
    dmax = phi.dmax if dmax is None else dmax
    if dmax > phi.dmax:
        raise PrecisionError("requested bound exceeds the Jacobi form's precision")
    entries = {t: lift_coefficient(phi, *t) for t in lift_index_set(dmax)}
    return SiegelCoeffTable(phi.weight, 1, dmax, entries)


def maass_check(table: SiegelCoeffTable) -> NumericReport:
    """A(n,r,m) = sum_{d | (n,r,m)} d^{k-1} A(nm/d^2, r/d, 1) at every stored T."""
    k = table.weight
    checked = skipped = 0
    first_bad = None
    with timer() as t:
        for (n, r, m), val in sorted(table.entries.items()):
            rhs = Fraction(0)
            missing = False
            for d in divisors(gcd(gcd(n, abs(r)), m)):
                a = table.get(n * m // (d * d), r // d, 1)
                if a is None:
                    missing = True
                    break
                rhs += d ** (k - 1) * a
            if missing:
                skipped += 1
                continue
            checked += 1
            if rhs != val:
                first_bad = [n, r, m]
                break
    return NumericReport(
        command="check maass",
        inputs={"weight": k, "dmax": table.dmax, "entries": len(table)},
        outcome=outcome(first_bad is None),
        details={"checked": checked, "skipped_missing": skipped, "first_violation": first_bad},
        max_deviation=0.0 if first_bad is None else None,
        runtime_ms=t["ms"],
    )


def _sublattice_forms(n: int, r: int, m: int, p: int) -> Iterable[tuple[int, int, int]]:
    """Binary forms Q(alpha x) for the p + 1 index-p sublattices."""
    alphas = [((p, b), (0, 1)) for b in range(p)] + [((1, 0), (0, p))]
    for (a11, a12), (a21, a22) in alphas:
        # columns (a11, a21), (a12, a22)
        q1 = n * a11 * a11 + r * a11 * a21 + m * a21 * a21
        q2 = n * a12 * a12 + r * a12 * a22 + m * a22 * a22
        cross = 2 * n * a11 * a12 + r * (a11 * a22 + a12 * a21) + 2 * m * a21 * a22
        yield q1, cross, q2


def lift_hecke_eigenvalue(phi: JacobiForm, p: int, T: tuple[int, int, int] = (1, 1, 1)) -> Fraction:
    """Eigenvalue of the degree-two T(p) on the lift, read off at T."""
    k = phi.weight
    n, r, m = T

    def A(a, b, c):
        return lift_coefficient(phi, a, b, c)

    total = A(p * n, p * r, p * m)
    for q1, cross, q2 in _sublattice_forms(n, r, m, p):
        if q1 % p == 0 and cross % p == 0 and q2 % p == 0:
            total += p ** (k - 2) * A(q1 // p, cross // p, q2 // p)
    if n % p == 0 and r % p == 0 and m % p == 0:
        total += p ** (2 * k - 3) * A(n // p, r // p, m // p)
    base = A(n, r, m)
    if base == 0:
        raise ValueError("coefficient at T vanishes")
    return total / base


# ---------------------------------------------------------------- Euler factors


@dataclass(frozen=True)
class EulerData:
    p: int | None
    k: int | None
    lam_f: SymExpr
    lam_F: tuple[SymExpr, ...]


def _p_rho(p: int | None, k: int | None) -> tuple[SymExpr, SymExpr]:
    if p is None:
        return P, RHO
    return SymExpr.const(p), SymExpr.const(Fraction(p) ** k)


def spinor_coeffs(lam_f: SymExpr | int | None, p: int | None, k: int | None, jmax: int = 4) -> EulerData:
    """lambda_F(p^j), j <= jmax, from the degree-four spinor Euler factor.

    The Satake pair of the lift is {p^{k-1}, p^{k-2}, alpha, beta} with
    alpha + beta = lam_f and alpha beta = p^{2k-3}; the eigenvalue series is
    the spinor series times (1 - p^{2k-4} X^2). ``p=None`` keeps p and rho = p^k
    symbolic; ``lam_f=None`` uses the symbol lam for lambda_f(p).
    """
    if jmax > 4:
        raise ValueError("jmax <= 4")
    lf = LAM if lam_f is None else SymExpr.coerce(lam_f)
    pp, rho = _p_rho(p, k)
    pinv = pp.inverse() if pp.is_unit() else None
    s = rho * pinv + rho * pinv**2
    t = rho**2 * pinv**3
    # Q(X) = (1 - s X + t X^2)(1 - lf X + t X^2)
    q = _poly_mul([ONE, -s, t], [ONE, -lf, t])
    inv = [ONE]
    for j in range(1, jmax + 1):
        acc = SymExpr()
        for i in range(1, min(j, len(q) - 1) + 1):
            acc = acc - q[i] * inv[j - i]
        inv.append(acc)
    num = [ONE, SymExpr(), -(rho**2) * pinv**4]
    series = _poly_mul(num, inv)[: jmax + 1]
    return EulerData(p, k, lf, tuple(series))


def _poly_mul(a: list[SymExpr], b: list[SymExpr]) -> list[SymExpr]:
    out = [SymExpr() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def characterization_check(e: EulerData) -> NumericReport:
    pp, rho = _p_rho(e.p, e.k)
    pinv = pp.inverse()
    s = rho * pinv + rho * pinv**2
    with timer() as t:
        lp = e.lam_F[1]
        target = lp * lp - s * lp + rho**2 * pinv**2
        first = (lp - (e.lam_f + s)).is_zero()
        second = (e.lam_F[2] - target).is_zero()
    return NumericReport(
        command="check characterization",
        inputs={"p": e.p, "k": e.k, "lam_f": e.lam_f.to_json()},
        outcome=outcome(first and second and e.lam_F[0] == ONE),
        details={
            "lambda_F_p_matches": first,
            "lambda_F_p2_identity": second,
            "lambda_F": [x.to_json() for x in e.lam_F],
            "normalization": "arithmetic; eigenvalue series = L_spin(X) * (1 - p^{2k-4} X^2)",
        },
        max_deviation=0.0 if (first and second) else None,
        runtime_ms=t["ms"],
    )


# ---------------------------------------------------------------- Petersson transfer


def _zeta2() -> float:
    return math.pi**2 / 6


def petersson_transfer(normF_sq: float, k: int, N: int, L_k_f: float) -> float:
    """<phi_F, phi_F> in terms of <F, F> at square-free level N."""
    if normF_sq <= 0 or L_k_f <= 0 or N < 1:
        raise ValueError("inputs must be positive")
    if not is_squarefree(N):
        raise ValueError("N must be square-free")
    euler = 1.0
    for q, _ in factorize(N) if N > 1 else ():
        euler *= (1 - 1 / q) ** -2 * (1 + 1 / q) ** -1
    const = (4 * math.pi) ** k * math.pi**2 / _zeta2() / (math.gamma(k) * L_k_f)
    return const * N**-2 * euler * normF_sq
