"""Exact integer primitives: modular powers, multiplicative order, primality, LCM."""

from __future__ import annotations

import math
import random
from collections.abc import Iterable

UINT64_MAX = (1 << 64) - 1

# Deterministic for every n < 3.3e24, which covers the 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Below this bound the order is found by scanning; above it by divisor descent.
ORDER_SCAN_LIMIT = 10_000


def check_modulus(m: int) -> int:
    """Validate an odd modulus >= 3 (2 must be invertible)."""
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError(f"modulus must be an int, got {type(m).__name__}")
    if m < 3 or m % 2 == 0:
        raise ValueError(f"modulus must be odd and >= 3, got {m}")
    if m > UINT64_MAX:
        raise OverflowError(f"modulus {m} exceeds 64 bits")
    return m


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """Return ``base**exponent mod modulus`` in ``[0, modulus)``."""
    if modulus < 1:
        raise ValueError(f"modulus must be >= 1, got {modulus}")
    if base < 0 or exponent < 0:
        raise ValueError("base and exponent must be non-negative")
    return pow(base, exponent, modulus)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test, exact below 2**64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        c = rng.randrange(1, n)
        f = lambda x: (x * x + c) % n  # noqa: E731
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n: int) -> dict[int, int]:
    """Prime factorization ``{prime: exponent}`` of ``n >= 1``."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    factors: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    rng = random.Random(n)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return dict(sorted(factors.items()))


def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def mult_order(a: int, m: int) -> int:
    """Smallest ``t >= 1`` with ``a**t == 1 (mod m)``.

    For ``a = 2`` this is the period of the binary d-sequence of ``m``.
    """
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if math.gcd(a, m) != 1:
        raise ValueError(f"gcd({a}, {m}) != 1, order undefined")
    if m == 1:
        return 1
    a %= m
    if m <= ORDER_SCAN_LIMIT:
        t, x = 1, a
        while x != 1:
            x = x * a % m
            t += 1
        return t
    # divisor descent from the totient
    t = totient(m)
    for p, e in factorize(t).items():
        for _ in range(e):
            if pow(a, t // p, m) == 1:
                t //= p
            else:
                break
    return t


def lcm_many(values: Iterable[int]) -> int:
    """Exact LCM of positive integers; raises OverflowError beyond 64 bits."""
    values = list(values)
    if not values:
        raise ValueError("lcm of an empty list")
    acc = 1
    for v in values:
        if v < 1:
            raise ValueError(f"lcm requires positive integers, got {v}")
        acc = acc // math.gcd(acc, v) * v
        if acc > UINT64_MAX:
            raise OverflowError(f"lcm exceeds 64 bits while folding {v}")
    return acc


def is_primitive_root(a: int, p: int) -> bool:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return mult_order(a, p) == p - 1
