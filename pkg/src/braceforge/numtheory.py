"""Exact modular arithmetic: primitive roots, the averaging unit xi, inverses, binomials."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache


def is_prime(n: int) -> bool:
    # trial division; inputs are desk-scale
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power_decompose(m: int) -> tuple[int, int]:
    """Return ``(p, j)`` with ``m == p**j``; raise if ``m`` is not a prime power."""
    if m < 2:
        raise ValueError(f"{m} is not a prime power")
    fs = prime_factors(m)
    if len(fs) != 1:
        raise ValueError(f"{m} is not a prime power")
    p = fs[0]
    j = 0
    while m > 1:
        m //= p
        j += 1
    return p, j


def ilog(p: int, m: int) -> int:
    """Exact ``log_p(m)`` for ``m`` a power of ``p``."""
    j = 0
    while m > 1:
        if m % p:
            raise ValueError(f"{m} is not a power of {p}")
        m //= p
        j += 1
    return j


@dataclass(frozen=True)
class ModulusCtx:
    p: int
    max_exponent: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p == 2:
            raise ValueError("p must be odd (p > 2)")
        if self.max_exponent < 1:
            raise ValueError("max_exponent must be positive")

    def modulus(self, e: int) -> int:
        if e < 0 or e > max(self.max_exponent, self.p):
            raise ValueError(f"exponent {e} outside working range")
        return self.p**e


def multiplicative_order(g: int, m: int) -> int:
    if math.gcd(g, m) != 1:
        raise ValueError(f"{g} is not a unit mod {m}")
    k, x = 1, g % m
    while x != 1 % m:
        x = x * g % m
        k += 1
    return k


def primitive_root_mod(m: int) -> int:
    """Smallest primitive root modulo an odd prime power ``m``."""
    try:
        p, j = prime_power_decompose(m)
    except ValueError:
        raise ValueError(f"modulus {m} must be a power of an odd prime") from None
    if p == 2:
        raise ValueError("primitive roots are only provided for odd primes (p > 2)")
    phi = p ** (j - 1) * (p - 1)
    qs = prime_factors(phi)
    for g in range(2, m):
        if g % p == 0:
            continue
        if all(pow(g, phi // q, m) != 1 for q in qs):
            return g
    raise AssertionError("unreachable: odd prime powers have primitive roots")


@dataclass(frozen=True)
class Xi:
    """The unit ``gamma ** p**(p-1)`` modulo ``p**p``.

    It has multiplicative order dividing ``p-1`` modulo ``p**p`` while none of
    its powers ``xi**j`` with ``0 < j < p-1`` is ``1`` modulo ``p``.
    """

    p: int
    gamma: int
    value: int

    @property
    def modulus(self) -> int:
        return self.p**self.p

    def reduced(self, e: int) -> int:
        """``xi`` modulo ``p**e``; only meaningful for ``e <= p``."""
        if e > self.p:
            raise ValueError("xi is only fixed modulo p**p")
        return self.value % self.p**e

    def powers(self, e: int, count: int | None = None) -> list[int]:
        """``[xi**0, ..., xi**(count-1)]`` modulo ``p**e`` (``count`` defaults to p)."""
        m = self.p**e
        x = self.reduced(e)
        count = self.p if count is None else count
        out, cur = [], 1 % m
        for _ in range(count):
            out.append(cur)
            cur = cur * x % m
        return out


@cache
def xi(p: int) -> Xi:
    if p == 2:
        raise ValueError("xi requires an odd prime (p > 2)")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    m = p**p
    gamma = primitive_root_mod(m)
    return Xi(p=p, gamma=gamma, value=pow(gamma, p ** (p - 1), m))


def inv_mod(x: int, m: int) -> int:
    if math.gcd(x, m) != 1:
        raise ValueError(f"{x} is non-invertible modulo {m}")
    return pow(x, -1, m)


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def inverse_factorials(count: int, m: int) -> list[int]:
    """``[1/0!, 1/1!, ..., 1/(count-1)!]`` modulo ``m``."""
    return [inv_mod(math.factorial(i), m) for i in range(count)]


def geometric_unit(p: int, top: int) -> int:
    """``-(1 + p + ... + p**top)`` as a Python integer."""
    return -sum(p**i for i in range(top + 1))
