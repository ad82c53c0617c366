"""Small integer helpers shared by the exact and numeric modules."""
from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    if n == 0:
        raise ValueError("cannot factor zero")
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factorize(n):
        divs = [d * q**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for _, e in factorize(n))


def moebius(n: int) -> int:
    fs = factorize(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out twos
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def fundamental_split(d: int) -> tuple[int, int]:
    """Write a discriminant d = d0 * f^2 with d0 fundamental."""
    if d == 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a nonzero discriminant")
    sign = -1 if d < 0 else 1
    core, f = sign, 1
    for q, e in factorize(d):
        core *= q ** (e % 2)
        f *= q ** (e // 2)
    if core % 4 != 1:
        core *= 4
        f //= 2
    assert core * f * f == d
    return core, f


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a x + b y = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


__all__ = [
    "gcd",
    "isqrt",
    "factorize",
    "divisors",
    "is_squarefree",
    "moebius",
    "is_prime",
    "kronecker",
    "fundamental_split",
    "xgcd",
]
