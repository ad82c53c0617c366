"""Degree-two symplectic Hecke operators at powers of p via Satake images.

Every double coset is represented by its image, a Laurent polynomial in the
Satake parameters x0, x1, x2 with coefficients in Laurent polynomials of p.
Operator identities then become polynomial identities checked by expansion.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import ONE, P, X0, X1, X2, SymExpr, mu, sym_substitute
from .report import NumericReport, outcome, timer

SYMBOLS = (
    "TS_p",
    "TS_p2",
    "TSprime_p",
    "TS_1pp2p",
    "TS_11p2p2",
    "TS_pppp",
    "TS_11p3p3",
    "US_USstar_Tr",
)

IDENTITIES = ("I1", "I2", "I3", "I4", "I5", "degree")

_PINV = P**-1


@dataclass(frozen=True)
class WeylOrbit:
    seed: tuple[int, int]
    members: frozenset[tuple[int, int]]


def weyl_orbit(a1: int, a2: int) -> WeylOrbit:
    """Orbit of exponent pairs for the cube of the similitude-p operator.

    On monomials x0^3 x1^b1 x2^b2 the Weyl group acts by swapping b1, b2 and by
    the reflections b -> 3 - b in either coordinate.
    """
    if a1 not in (0, 1) or a2 not in (0, 1):
        raise ValueError("orbit seeds are pairs of bits")
    seen = {(a1, a2)}
    frontier = [(a1, a2)]
    while frontier:
        b1, b2 = frontier.pop()
        for img in ((b2, b1), (3 - b1, b2), (b1, 3 - b2)):
            if img not in seen:
                seen.add(img)
                frontier.append(img)
    return WeylOrbit((a1, a2), frozenset(seen))


def _orbit_sum(a1: int, a2: int) -> SymExpr:
    return sum((X1**b1 * X2**b2 for b1, b2 in sorted(weyl_orbit(a1, a2).members)), SymExpr())


@lru_cache(maxsize=None)
def satake_image(symbol: str) -> SymExpr:
    if symbol == "TS_p":
        return X0 * (1 + X1) * (1 + X2)
    if symbol == "TS_pppp":
        return _PINV**3 * X0**2 * X1 * X2
    if symbol == "TS_1pp2p":
        return X0**2 * ((P**2 - 1) * _PINV**3 * X1 * X2 + _PINV * (X1 + X2) * (1 + X1 * X2))
    if symbol == "TS_11p2p2":
        r = (P - 1) * _PINV
        return X0**2 * (
            (1 + X1**2) * (1 + X2**2) + r * (X1 + X2) * (1 + X1 * X2) + 2 * r * X1 * X2
        )
    if symbol == "TS_p2":
        return satake_image("TS_11p2p2") + satake_image("TS_1pp2p") + satake_image("TS_pppp")
    if symbol == "TSprime_p":
        return satake_image("TS_p") ** 2 - satake_image("TS_p2")
    if symbol == "TS_11p3p3":
        return X0**3 * (
            _orbit_sum(0, 0)
            + (P - 1) * _PINV * _orbit_sum(0, 1)
            + (P - 1) * (2 * P - 1) * _PINV**2 * _orbit_sum(1, 1)
        )
    if symbol == "US_USstar_Tr":
        # image of the adjoint product, as reduced to T_S(p)^2 and T_S(p,p,p,p)
        return P**2 * (P - 1) * satake_image("TS_p") ** 2 + (
            P**3 * mu() - P**2 * (P**4 - 1)
        ) * satake_image("TS_pppp")
    raise KeyError(f"uncatalogued symbol {symbol!r}")


@lru_cache(maxsize=None)
def degree(symbol: str) -> SymExpr:
    """Number of single cosets in the double coset, as a polynomial in p."""
    m = mu()
    table = {
        "TS_p": m,
        "TS_pppp": ONE,
        "TS_1pp2p": P * m,
        "TS_11p2p2": P**3 * m,
        "TS_p2": P**3 * m + P * m + 1,
        "TSprime_p": m * m - (P**3 * m + P * m + 1),
        "TS_11p3p3": P**3 * mu_p2(),
        "US_USstar_Tr": P**6 * m,
    }
    if symbol not in table:
        raise KeyError(f"uncatalogued symbol {symbol!r}")
    return table[symbol]


def mu_p2() -> SymExpr:
    """Index of the level-p^2 subgroup relative to level 1, per unit level."""
    return P**3 * mu()


def degree_via_image(symbol: str) -> SymExpr:
    """Degree read off by specializing the Satake parameters to (1, p, p^2)."""
    e = satake_image(symbol)
    for var, val in (("x0", ONE), ("x1", P), ("x2", P**2)):
        e = sym_substitute(e, var, val)
    return e


def i4_coefficients() -> tuple[SymExpr, SymExpr, SymExpr]:
    return P**4 - P**2, P**3 - P**2, mu_p2()


def identity_sides(name: str) -> tuple[SymExpr, SymExpr]:
    t = satake_image
    tp, tq = t("TS_p"), t("TSprime_p")
    if name == "I1":
        return tq, P * t("TS_1pp2p") + P * (1 + P + P**2) * t("TS_pppp")
    if name == "I2":
        return t("TS_11p2p2"), tp**2 - (1 + _PINV) * tq + P * (P + 1) * t("TS_pppp")
    if name == "I3":
        return t("TS_1pp2p"), _PINV * tq - (1 + P + P**2) * t("TS_pppp")
    if name == "I4":
        c1, c2, c3 = i4_coefficients()
        return c1 * t("TS_1pp2p") + c2 * t("TS_11p2p2") + c3 * t("TS_pppp"), t("US_USstar_Tr")
    if name == "I5":
        rhs = tp * (tp**2 - (2 + _PINV) * tq + P * (P + 1) * (P + 2) * t("TS_pppp"))
        return t("TS_11p3p3"), rhs
    if name == "degree":
        c1, c2, c3 = i4_coefficients()
        return degree("US_USstar_Tr"), c1 * degree("TS_1pp2p") + c2 * degree("TS_11p2p2") + c3
    raise KeyError(f"unknown identity {name!r}")


def verify_identity(name: str) -> NumericReport:
    with timer() as t:
        lhs, rhs = identity_sides(name)
        diff = lhs - rhs
    return NumericReport(
        command=f"verify hecke {name}",
        inputs={"identity": name},
        outcome=outcome(diff.is_zero()),
        details={
            "identity": name,
            "holds": diff.is_zero(),
            "lhs_terms": lhs.to_json(),
            "rhs_terms": rhs.to_json(),
            "difference_terms": diff.to_json(),
        },
        max_deviation=0.0 if diff.is_zero() else float(len(diff.terms)),
        runtime_ms=t["ms"],
    )


def identity_at_prime(name: str, p: int, x: tuple[Fraction, Fraction, Fraction]) -> bool:
    """Evaluate both sides at a numeric prime and Satake point."""
    lhs, rhs = identity_sides(name)
    point = {"p": p, "rho": 1, "lam": 0, "lamp": 0, "x0": x[0], "x1": x[1], "x2": x[2]}
    return lhs.evaluate(point) == rhs.evaluate(point)


__all__ = [
    "SYMBOLS",
    "IDENTITIES",
    "WeylOrbit",
    "weyl_orbit",
    "satake_image",
    "degree",
    "degree_via_image",
    "mu_p2",
    "identity_sides",
    "verify_identity",
    "identity_at_prime",
]
