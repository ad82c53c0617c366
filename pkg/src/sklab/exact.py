"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`. Symbolic quantities live in
:class:`SymExpr`, a Laurent polynomial in the fixed alphabet ``VARS``, where
``rho`` stands for ``p**k`` so that statements uniform in the weight become a
single polynomial identity. Quotients by non-monomial denominators (such as
``(p+1)(p^2+1)``) are carried as :class:`RatFunc` pairs and compared by
cross-multiplication. :class:`QSeries` holds truncated q-expansions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

VARS: tuple[str, ...] = ("p", "rho", "lam", "lamp", "x0", "x1", "x2")
NVARS = len(VARS)
_INDEX = {name: i for i, name in enumerate(VARS)}
# variables that must keep non-negative exponents
_POLY_ONLY = frozenset({_INDEX["lam"], _INDEX["lamp"], _INDEX["x0"]})

Scalar = Union[int, Fraction]
Exponent = tuple[int, ...]


class SymbolicError(ValueError):
    pass


def _frac(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


_ZERO_EXP: Exponent = (0,) * NVARS


class SymExpr:
    """Multivariate Laurent polynomial with rational coefficients.

    Immutable. Terms with zero coefficient are never stored, so equality of
    two expressions is equality of their term maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None):
        clean: dict[Exponent, Fraction] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != NVARS:
                raise SymbolicError(f"exponent tuple must have length {NVARS}")
            c = _frac(coef)
            if c:
                for i in _POLY_ONLY:
                    if exp[i] < 0:
                        raise SymbolicError(f"negative exponent for {VARS[i]}")
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self._terms = {e: clean[e] for e in sorted(clean) if clean[e]}
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c: Scalar) -> "SymExpr":
        return cls({_ZERO_EXP: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "SymExpr":
        exp = [0] * NVARS
        exp[_INDEX[name]] = power
        return cls({tuple(exp): 1})

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction]) -> "SymExpr":
        obj = cls.__new__(cls)
        obj._terms = {e: terms[e] for e in sorted(terms) if terms[e]}
        obj._hash = None
        return obj

    @staticmethod
    def coerce(x: "SymExpr | Scalar") -> "SymExpr":
        return x if isinstance(x, SymExpr) else SymExpr.const(x)

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """True for a single monomial in the invertible variables."""
        if len(self._terms) != 1:
            return False
        (exp,) = self._terms
        return all(exp[i] == 0 for i in _POLY_ONLY)

    def variables(self) -> set[str]:
        return {VARS[i] for exp in self._terms for i, e in enumerate(exp) if e}

    # ring structure
    def __add__(self, other):
        other = SymExpr.coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return SymExpr._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SymExpr._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-SymExpr.coerce(other))

    def __rsub__(self, other):
        return SymExpr.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, SymExpr):
            c = _frac(other)
            return SymExpr._raw({e: v * c for e, v in self._terms.items()})
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return SymExpr._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a rational or by a unit monomial."""
        if not isinstance(other, SymExpr):
            return self * (1 / _frac(other))
        return self * other.inverse()

    def inverse(self) -> "SymExpr":
        if not self.is_unit():
            raise SymbolicError("only unit monomials are invertible")
        ((exp, c),) = self._terms.items()
        return SymExpr._raw({tuple(-e for e in exp): 1 / c})

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = SymExpr.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymExpr.const(other)
        if not isinstance(other, SymExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "SymExpr(0)"
        parts = []
        for exp, c in self._terms.items():
            mono = "*".join(
                VARS[i] if e == 1 else f"{VARS[i]}^{e}" for i, e in enumerate(exp) if e
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return "SymExpr(" + " + ".join(parts) + ")"

    # evaluation and substitution
    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        return sym_eval(self, assignment)

    def substitute(self, var: str, replacement: "SymExpr | Scalar") -> "SymExpr":
        return sym_substitute(self, var, replacement)

    def degree_in(self, var: str) -> int:
        i = _INDEX[var]
        return max((exp[i] for exp in self._terms), default=0)

    def to_json(self) -> list[dict]:
        return [
            {"exponents": list(exp), "num": str(c.numerator), "den": str(c.denominator)}
            for exp, c in self._terms.items()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "SymExpr":
        return cls(
            {tuple(t["exponents"]): Fraction(int(t["num"]), int(t["den"])) for t in data}
        )


def sym_eval(e: SymExpr, assignment: Mapping[str, Scalar]) -> Fraction:
    """Exact value of ``e`` under a full assignment of its variables."""
    needed = e.variables()
    missing = needed - set(assignment)
    if missing:
        raise SymbolicError(f"missing variables: {sorted(missing)}")
    values = {name: _frac(v) for name, v in assignment.items()}
    total = Fraction(0)
    for exp, c in e._terms.items():
        term = c
        for i, k in enumerate(exp):
            if k == 0:
                continue
            x = values[VARS[i]]
            if k < 0 and x == 0:
                raise SymbolicError(f"zero raised to a negative power ({VARS[i]})")
            term *= x**k
        total += term
    return total


def sym_substitute(e: SymExpr, var: str, replacement: "SymExpr | Scalar") -> SymExpr:
    """Replace every occurrence of ``var`` by ``replacement``."""
    rep = SymExpr.coerce(replacement)
    i = _INDEX[var]
    if any(exp[i] < 0 for exp in e._terms) and not rep.is_unit():
        raise SymbolicError(f"{var} occurs with a negative power; replacement must be a unit")
    powers: dict[int, SymExpr] = {}
    out = SymExpr()
    for exp, c in e._terms.items():
        k = exp[i]
        if k not in powers:
            powers[k] = rep**k
        rest = list(exp)
        rest[i] = 0
        out = out + SymExpr._raw({tuple(rest): c}) * powers[k]
    return out


# named generators used throughout
P = SymExpr.var("p")
RHO = SymExpr.var("rho")
LAM = SymExpr.var("lam")
LAMP = SymExpr.var("lamp")
X0, X1, X2 = SymExpr.var("x0"), SymExpr.var("x1"), SymExpr.var("x2")
ONE = SymExpr.const(1)


def mu(x: SymExpr = P) -> SymExpr:
    """The index polynomial (x+1)(x^2+1)."""
    return (x + 1) * (x * x + 1)


@dataclass(frozen=True, eq=False)
class RatFunc:
    """Quotient ``num/den`` of two Laurent polynomials, den nonzero."""

    num: SymExpr
    den: SymExpr = ONE

    def __post_init__(self):
        object.__setattr__(self, "num", SymExpr.coerce(self.num))
        object.__setattr__(self, "den", SymExpr.coerce(self.den))
        if self.den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")

    @staticmethod
    def coerce(x) -> "RatFunc":
        return x if isinstance(x, RatFunc) else RatFunc(SymExpr.coerce(x))

    def __add__(self, other):
        o = RatFunc.coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den**-n, self.num**-n) if n else RatFunc(ONE)
        return RatFunc(self.num**n, self.den**n)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    __hash__ = None  # equality is up to cross-multiplication

    def substitute(self, var: str, replacement) -> "RatFunc":
        return RatFunc(sym_substitute(self.num, var, replacement), sym_substitute(self.den, var, replacement))

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        d = sym_eval(self.den, assignment)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return sym_eval(self.num, assignment) / d

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


# ---------------------------------------------------------------- q-series


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    b = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(_binom(m + 1, j) * b[j] for j in range(m))
        b.append(-s / (m + 1))
    return b[n]


@lru_cache(maxsize=None)
def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    return sum((_binom(n, j) * bernoulli(j) * x ** (n - j) for j in range(n + 1)), Fraction(0))


def sigma(n: int, r: int) -> int:
    """Divisor power sum sigma_r(n)."""
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**r
            e = n // d
            if e != d:
                total += e**r
        d += 1
    return total


DEFAULT_PRECISION = 32


@dataclass(frozen=True)
class QSeries:
    """Truncated q-expansion sum_{n < precision} coeffs[n] q^n."""

    weight: int
    level: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))
        if self.level < 1 or not self.coeffs:
            raise ValueError("level and precision must be positive")

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def _check(self, other: "QSeries"):
        if self.level != other.level:
            raise ValueError("incompatible levels")

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        if self.weight != other.weight:
            raise ValueError("cannot add q-series of different weights")
        n = min(self.precision, other.precision)
        return QSeries(self.weight, self.level, tuple(self.coeffs[i] + other.coeffs[i] for i in range(n)))

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "QSeries":
        c = _frac(c)
        return QSeries(self.weight, self.level, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        return qseries_mul(self, other)

    def __pow__(self, n: int) -> "QSeries":
        return qseries_pow(self, n)

    def truncate(self, precision: int) -> "QSeries":
        return QSeries(self.weight, self.level, self.coeffs[:precision])


def qseries_mul(a: QSeries, b: QSeries) -> QSeries:
    a._check(b)
    n = min(a.precision, b.precision)
    ac, bc = a.coeffs, b.coeffs
    out = [Fraction(0)] * n
    for i in range(n):
        if ac[i]:
            ai = ac[i]
            for j in range(n - i):
                if bc[j]:
                    out[i + j] += ai * bc[j]
    return QSeries(a.weight + b.weight, a.level, tuple(out))


def qseries_pow(a: QSeries, n: int) -> QSeries:
    if n < 0:
        raise ValueError("negative powers of q-series are not supported")
    result = QSeries(0, a.level, (Fraction(1),) + (Fraction(0),) * (a.precision - 1))
    base = a
    while n:
        if n & 1:
            result = qseries_mul(result, base)
        base = qseries_mul(base, base)
        n >>= 1
    return result


def eisenstein(k: int, precision: int = DEFAULT_PRECISION) -> QSeries:
    """Level-one Eisenstein series normalized to constant term 1."""
    if k < 4 or k % 2:
        raise ValueError("weight must be even and at least 4")
    factor = Fraction(-2 * k) / bernoulli(k)
    coeffs = [Fraction(1)] + [factor * sigma(n, k - 1) for n in range(1, precision)]
    return QSeries(k, 1, tuple(coeffs))


def delta(precision: int = DEFAULT_PRECISION) -> QSeries:
    """The discriminant form (E4^3 - E6^2)/1728."""
    e4, e6 = eisenstein(4, precision), eisenstein(6, precision)
    return (qseries_pow(e4, 3) - qseries_pow(e6, 2)).scale(Fraction(1, 1728))


def hecke_eigenvalue(f: QSeries, p: int) -> Fraction:
    """a(p)/a(1) of a normalized cuspidal eigenform."""
    if f.coeffs[1] == 0:
        raise ValueError("first coefficient vanishes")
    return f.coeffs[p] / f.coeffs[1]


def cusp_eigenform(weight: int, precision: int = DEFAULT_PRECISION) -> QSeries:
    """The normalized cusp form in a one-dimensional level-one space, as Delta * E_{weight-12}."""
    if weight not in (12, 16, 18, 20, 22, 26):
        raise ValueError(f"weight {weight}: cusp space is not one-dimensional")
    d = delta(precision)
    if weight == 12:
        return d
    rest = weight - 12
    if rest == 8:
        e = qseries_pow(eisenstein(4, precision), 2)
    elif rest == 10:
        e = qseries_mul(eisenstein(4, precision), eisenstein(6, precision))
    elif rest == 14:
        e = qseries_mul(qseries_pow(eisenstein(4, precision), 2), eisenstein(6, precision))
    else:
        e = eisenstein(rest, precision)
    return qseries_mul(e, d)
