"""The 4x4 Petersson matrix of a degree-two eigenform and its old translates.

Basis order is (F, F|U(p), F|W_p, F|U(p)W_p). Entries are scalar factors
relative to <F, F>, as rational functions in p, rho = p^k, lam = lambda_F(p)
and lamp = lambda'_F(p). All quantities are treated as real.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import LAM, LAMP, ONE, P, RHO, RatFunc, SymExpr, mu
from .report import NumericReport, outcome, timer

_PI = P**-1
_RI = RHO**-1
MU = mu()

# lambda'_F(p) for a lift, in terms of lambda_F(p)
SK_LAMP = (RHO * _PI + RHO * _PI**2) * LAM - RHO**2 * _PI**2


def _entry_table() -> dict[tuple[int, int], RatFunc]:
    e: dict[tuple[int, int], RatFunc] = {}
    e[1, 1] = RatFunc(ONE)
    e[1, 2] = RatFunc(P**3 * LAM, MU)
    e[1, 3] = RatFunc(P**3 * _RI * LAM, MU)
    e[2, 2] = RatFunc(P**2 * (P - 1) * LAM**2 + RHO**2 * _PI**4 * MU, MU)
    e[2, 3] = RatFunc(
        P**3 * _RI * (LAM**2 - (1 + _PI) * LAMP + RHO**2 * _PI**5 * (P + 1)), MU
    )
    e[2, 4] = RatFunc(
        LAM * P**3 * _RI * (LAM**2 - (2 + _PI) * LAMP + RHO**2 * _PI**5 * (P + 1) * (P + 2)),
        MU,
    )
    # W_p is an isometric involution
    e[3, 3] = e[1, 1]
    e[4, 4] = e[2, 2]
    e[3, 4] = e[1, 2]
    e[1, 4] = e[2, 3]
    return e


_ENTRIES = _entry_table()

# which entry each unitarity-closed entry is copied from
UNITARITY = {(3, 3): (1, 1), (4, 4): (2, 2), (3, 4): (1, 2), (1, 4): (2, 3)}


def mp_entry(i: int, j: int) -> RatFunc:
    if not (1 <= i <= 4 and 1 <= j <= 4):
        raise IndexError("indices run over 1..4")
    return _ENTRIES[min(i, j), max(i, j)]


@dataclass(frozen=True)
class InnerProductMatrix:
    entries: tuple[tuple[RatFunc, ...], ...]

    @classmethod
    def build(cls) -> "InnerProductMatrix":
        return cls(tuple(tuple(mp_entry(i, j) for j in range(1, 5)) for i in range(1, 5)))

    def __getitem__(self, ij: tuple[int, int]) -> RatFunc:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def numeric(self, point: dict) -> list[list[Fraction]]:
        return [[x.evaluate(point) for x in row] for row in self.entries]


def _det(rows: Sequence[Sequence[RatFunc]]) -> RatFunc:
    """Cofactor expansion along the first row."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = RatFunc(SymExpr())
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _as_common_den(rows: Sequence[Sequence[RatFunc]]) -> tuple[list[list[SymExpr]], SymExpr]:
    # every entry has denominator 1 or MU; clear it
    out = []
    for row in rows:
        new = []
        for x in row:
            if x.den == ONE:
                new.append(x.num * MU)
            elif x.den == MU:
                new.append(x.num)
            else:
                raise ValueError("unexpected denominator")
        out.append(new)
    return out, MU


def _poly_det(rows: list[list[SymExpr]]) -> SymExpr:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = SymExpr()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * _poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_mp() -> RatFunc:
    rows, d = _as_common_den(InnerProductMatrix.build().entries)
    return RatFunc(_poly_det(rows), d**4)


def leading_minor3() -> RatFunc:
    rows, d = _as_common_den([r[:3] for r in InnerProductMatrix.build().entries[:3]])
    return RatFunc(_poly_det(rows), d**3)


def det_mp_cofactor_rational() -> RatFunc:
    """Same determinant through rational-function cofactor expansion."""
    return _det(InnerProductMatrix.build().entries)


def _quartic_core() -> SymExpr:
    return P**5 * LAM**2 - P**4 * (P + 1) ** 2 * LAMP + (P**2 + 2) * (P + 1) ** 2 * RHO**2


def det_mp_factored() -> RatFunc:
    s = RHO * _PI + RHO * _PI**2
    x = _quartic_core()
    num = x**2 * (LAMP + s * LAM + RHO**2 * _PI**2) * (LAMP - s * LAM + RHO**2 * _PI**2)
    return RatFunc(num, RHO**4 * (P**2 + 1) ** 4 * (P + 1) ** 4)


def leading_minor3_factored() -> RatFunc:
    num = -(P * LAM**2 - (P**2 + 1) * LAMP - RHO**2 * _PI**2 - RHO**2) * _quartic_core()
    return RatFunc(num, RHO**2 * (P**2 + 1) * MU**2)


def sk_substitute(x: RatFunc | SymExpr):
    return x.substitute("lamp", SK_LAMP)


# ---------------------------------------------------------------- rank


def exact_rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    # scale to integers so every pivot step stays in Z
    scaled = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        scaled.append([int(x * den) for x in row])
    a = scaled
    m, n = len(a), len(a[0]) if a else 0
    rank, prev = 0, 1
    col = 0
    while rank < m and col < n:
        piv = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, m):
            for c in range(col + 1, n):
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) // prev
            a[r][col] = 0
        prev = a[rank][col]
        rank += 1
        col += 1
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def point(p: int, k: int, lam, lamp) -> dict:
    return {"p": p, "rho": p**k, "lam": Fraction(lam), "lamp": Fraction(lamp)}


def sk_point(p: int, k: int, lam) -> dict:
    lam = Fraction(lam)
    rho = p**k
    return point(p, k, lam, Fraction(rho, p) * lam + Fraction(rho, p * p) * lam - Fraction(rho * rho, p * p))


def rank_at(pt: dict) -> int:
    return exact_rank(InnerProductMatrix.build().numeric(pt))


_PRIMES = (2, 3, 5, 7, 11)
_WEIGHTS = (4, 6, 8, 10, 12)


def sample_sk_points(n: int, seed: int) -> list[dict]:
    """Lift parameters: lambda_F(p) = lambda_f(p) + p^{k-1} + p^{k-2} with
    lambda_f(p) an integer inside the Deligne interval."""
    rng = random.Random(seed)
    pts = []
    for _ in range(n):
        p, k = rng.choice(_PRIMES), rng.choice(_WEIGHTS)
        bound = int(2 * p ** (k - 1.5))
        lam_f = rng.randint(-bound, bound)
        pts.append(sk_point(p, k, lam_f + p ** (k - 1) + p ** (k - 2)))
    return pts


def sample_generic_points(n: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    pts = []
    for _ in range(n):
        p, k = rng.choice(_PRIMES), rng.choice(_WEIGHTS)
        big = p**k
        pts.append(point(p, k, rng.randint(-big, big), rng.randint(-big, big)))
    return pts


# ---------------------------------------------------------------- relations


def oldform_relation() -> tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
    """Coefficients of the quadratic whose double root gives F1 + c F2 = F3 + c F4."""
    e = mp_entry
    a = 2 * (e(2, 2) - e(2, 4))
    b = 4 * (e(1, 2) - e(2, 3))
    c = 2 * (1 - e(1, 3))
    c_old = -b / (2 * a)
    return a, b, c, c_old


def c_old_target() -> RatFunc:
    return RatFunc(ONE, RHO * _PI**2 - LAM)


def discriminant() -> RatFunc:
    a, b, c, _ = oldform_relation()
    return b * b - 4 * a * c


def discriminant_factored() -> RatFunc:
    s = RHO * _PI + RHO * _PI**2
    num = 16 * (-LAMP + s * LAM - RHO**2 * _PI**2) * _quartic_core()
    return RatFunc(num, RHO**2 * MU**2)


# the old-basis vectors in terms of (F1, F2, F3, F4)
G_VECTORS: dict[int, tuple[SymExpr, ...]] = {
    1: (ONE, SymExpr(), -_PI, SymExpr()),
    2: (-RHO * _PI, ONE, SymExpr(), SymExpr()),
    3: (-_PI, SymExpr(), ONE, SymExpr()),
}


def _pair(u: Sequence[SymExpr], w: Sequence[SymExpr]) -> RatFunc:
    total = RatFunc(SymExpr())
    for i, a in enumerate(u):
        if a.is_zero():
            continue
        for j, b in enumerate(w):
            if not b.is_zero():
                total = total + RatFunc(a * b) * mp_entry(i + 1, j + 1)
    return total


def g_inner(i: int, j: int) -> RatFunc:
    if not (1 <= i <= 3 and 1 <= j <= 3):
        raise IndexError("indices run over 1..3")
    return _pair(G_VECTORS[i], G_VECTORS[j])


def g_inner_closed_form(i: int, j: int) -> RatFunc:
    """Closed-form pairings of the old basis, keyed by unordered index pair."""
    i, j = min(i, j), max(i, j)
    rp2 = RHO * _PI**2  # p^{k-2}
    if (i, j) in ((1, 1), (3, 3)):
        return RatFunc(1 + _PI**2) - RatFunc(2 * LAM, MU * rp2)
    if (i, j) == (1, 2):
        return (
            RatFunc(LAMP, RHO * _PI * (P**2 + 1))
            - RatFunc(LAM**2, MU * rp2)
            + RatFunc(P * LAM, P + 1)
            - RatFunc(RHO * _PI**3 * (P**4 + P**2 + 1), P**2 + 1)
        )
    if (i, j) == (1, 3):
        return RatFunc(P * _RI * LAM, P + 1) - RatFunc(2 * _PI)
    if (i, j) == (2, 2):
        return RatFunc(P**2 * (P - 1) * LAM**2 - 2 * RHO * P**2 * LAM, MU) + RatFunc(
            RHO**2 * _PI**4 + RHO**2 * _PI**2
        )
    if (i, j) == (2, 3):
        return (
            RatFunc(LAM**2, MU * RHO * _PI**3)
            - RatFunc(2 * P**2 * LAM, MU)
            - RatFunc(LAMP, rp2 * (P**2 + 1))
            + RatFunc(rp2 * (P**2 + 2), P**2 + 1)
        )
    raise IndexError("indices run over 1..3")


@dataclass(frozen=True)
class OldBasisData:
    g_inner: tuple[tuple[RatFunc, ...], ...]
    a_plus: RatFunc
    a_minus: RatFunc
    c_old: RatFunc
    plus_minus: RatFunc  # <G+, G->, identically zero


def wp_basis_coeffs() -> OldBasisData:
    g = tuple(tuple(g_inner(i, j) for j in range(1, 4)) for i in range(1, 4))
    g11, g13, g33 = g[0][0], g[0][2], g[2][2]
    g21, g23 = g[1][0], g[1][2]
    norm_plus = g11 + 2 * g13 + g33
    norm_minus = g11 - 2 * g13 + g33
    for nm in (norm_plus, norm_minus):
        if nm.is_zero():
            raise ZeroDivisionError("norm of a W_p-eigenvector vanishes identically")
    return OldBasisData(
        g_inner=g,
        a_plus=(g21 + g23) / norm_plus,
        a_minus=(g21 - g23) / norm_minus,
        c_old=oldform_relation()[3],
        plus_minus=g11 - g33,
    )


# ---------------------------------------------------------------- report


def sk_rank_check(n_points: int = 100, seed: int = 0) -> NumericReport:
    with timer() as t:
        det_sk = sk_substitute(det_mp())
        minor_sk = sk_substitute(leading_minor3())
        sk_ranks = [rank_at(pt) for pt in sample_sk_points(n_points, seed)]
        gen_ranks = [rank_at(pt) for pt in sample_generic_points(n_points, seed + 1)]
    checks = {
        "det_vanishes_on_sk": det_sk.is_zero(),
        "minor_nonzero_on_sk": not minor_sk.is_zero(),
        "rank3_at_sk_points": all(r == 3 for r in sk_ranks),
        "rank4_at_generic_points": all(r == 4 for r in gen_ranks),
    }
    return NumericReport(
        command="verify mp sk_rank",
        inputs={"n_points": n_points, "seed": seed},
        outcome=outcome(all(checks.values())),
        details={
            "checks": checks,
            "sk_rank_histogram": _hist(sk_ranks),
            "generic_rank_histogram": _hist(gen_ranks),
        },
        max_deviation=0.0,
        runtime_ms=t["ms"],
    )


def _hist(xs: list[int]) -> dict[str, int]:
    out: dict[str, int] = {}
    for x in xs:
        out[str(x)] = out.get(str(x), 0) + 1
    return out


def mp_suite(n_points: int = 100, seed: int = 0) -> dict[str, NumericReport]:
    """All exact checks on the inner-product matrix, one report each."""
    reports: dict[str, NumericReport] = {}

    def add(name: str, ok: bool, **details):
        reports[name] = NumericReport(
            command=f"verify mp {name}", inputs={}, outcome=outcome(ok), details=details, max_deviation=0.0
        )

    with timer() as t:
        add("det_factored", det_mp() == det_mp_factored())
        add("minor3_factored", leading_minor3() == leading_minor3_factored())
        add("discriminant_factored", discriminant() == discriminant_factored())
        add("det_vanishes_on_sk", sk_substitute(det_mp()).is_zero())
        add("discriminant_vanishes_on_sk", sk_substitute(discriminant()).is_zero())
        _, b, _, _ = oldform_relation()
        a = oldform_relation()[0]
        cross = sk_substitute(-b * RatFunc(RHO * _PI**2 - LAM) - 2 * a)
        add("c_old_closed_form_on_sk", cross.is_zero())
        mismatched = [
            f"{i}{j}" for i in range(1, 4) for j in range(i, 4) if g_inner(i, j) != g_inner_closed_form(i, j)
        ]
        add("g_inner_closed_forms", not mismatched, mismatched=mismatched)
        data = wp_basis_coeffs()
        add("g_plus_minus_orthogonal", data.plus_minus.is_zero())
    for r in reports.values():
        r.runtime_ms = t["ms"] // max(1, len(reports))
    reports["sk_rank"] = sk_rank_check(n_points, seed)
    return reports
