"""Galois-conjugacy classes of finite-order characters of a rank-two
p-adic group, with conductor and degree bookkeeping.

A class is determined by the exact orders (p^r, p^s) of the pair of root
values (w1, w2) and, when both orders are nontrivial, a unit exponent e
locating the second root against the first.  The Galois action is
simultaneous exponentiation (w1, w2) -> (w1^u, w2^u), and each orbit
contains exactly one representative of the canonical shape below, so e is
already canonical.  Orbits have size phi(p^max(r,s)).
"""
from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_PRECISION
from .errors import InvalidInput
from .padic import CyclotomicNumber, euler_phi_p_power


@dataclass(frozen=True, order=True)
class CharacterClass:
    """Canonical class representative.

    When r >= s the representative is (zeta_M, zeta_M^(e * p^(M-s))) with
    M = max(r, s); when r < s it is (zeta_M^(e * p^(M-r)), zeta_M).  The
    exponent e is a unit mod p^min(r,s) and is omitted (None) when either
    order is trivial.
    """

    prime: int
    r: int
    s: int
    e: int | None = None

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise ValueError("orders must be non-negative")
        lo = min(self.r, self.s)
        if lo == 0:
            if self.e is not None:
                raise ValueError("e must be omitted when min(r, s) = 0")
        else:
            mod = self.prime**lo
            if self.e is None or self.e % self.prime == 0 or not (0 < self.e < mod):
                raise ValueError(f"e must be a reduced unit mod {self.prime}^{lo}")

    @property
    def level(self) -> int:
        return max(self.r, self.s)

    @property
    def is_trivial(self) -> bool:
        return self.r == 0 and self.s == 0

    def degree(self) -> int:
        """Degree of the field generated by the values; equals the orbit size."""
        return euler_phi_p_power(self.prime, self.level)

    def exponents(self) -> tuple[int, int]:
        """zeta-exponents (a, b) of the canonical (w1, w2) at level max(r, s)."""
        p, M = self.prime, self.level
        if M == 0:
            return (0, 0)
        if self.r >= self.s:
            a = 1
            b = 0 if self.s == 0 else self.e * p ** (M - self.s)
        else:
            a = 0 if self.r == 0 else self.e * p ** (M - self.r)
            b = 1
        return (a, b)

    def realize(self, modulus_exponent: int = DEFAULT_PRECISION) -> tuple[CyclotomicNumber, CyclotomicNumber]:
        """The canonical root pair (w1, w2) in the level-max(r,s) ring."""
        a, b = self.exponents()
        M = self.level
        return (
            CyclotomicNumber.zeta_power(a, self.prime, M, modulus_exponent),
            CyclotomicNumber.zeta_power(b, self.prime, M, modulus_exponent),
        )

    def apply_galois(self, u: int) -> "CharacterClass":
        """Class of (w1^u, w2^u); canonicalization makes this the identity."""
        if u % self.prime == 0:
            raise ValueError("Galois exponent must be a unit")
        a, b = self.exponents()
        return class_from_pair(self.prime, self.level, a * u, b * u)

    def literal(self) -> str:
        if self.e is None:
            return f"{self.r},{self.s}"
        return f"{self.r},{self.s},{self.e}"

    @classmethod
    def from_literal(cls, prime: int, text: str) -> "CharacterClass":
        parts = text.split(",")
        try:
            nums = [int(x) for x in parts]
        except ValueError as exc:
            raise InvalidInput(f"bad class literal {text!r}") from exc
        if len(nums) == 2:
            return cls(prime, nums[0], nums[1])
        if len(nums) == 3:
            return cls(prime, nums[0], nums[1], nums[2])
        raise InvalidInput(f"bad class literal {text!r}")


def _order_exponent(p: int, level: int, exponent: int) -> int:
    """Exact order exponent t of zeta_{p^level}^exponent (order p^t)."""
    e = exponent % p**level
    if e == 0:
        return 0
    t = level
    while t > 0 and e % p == 0:
        e //= p
        t -= 1
    return t


def class_from_pair(p: int, level: int, a: int, b: int) -> CharacterClass:
    """Canonical class of the pair (zeta^a, zeta^b) at the given level."""
    pm = p**level
    a %= pm
    b %= pm
    r = _order_exponent(p, level, a)
    s = _order_exponent(p, level, b)
    if min(r, s) == 0:
        return CharacterClass(p, r, s)
    if r >= s:
        a0 = (a // p ** (level - r)) % p**r
        inv = pow(a0, -1, p**s)
        e = (b // p ** (level - s)) * inv % p**s
    else:
        b0 = (b // p ** (level - s)) % p**s
        inv = pow(b0, -1, p**r)
        e = (a // p ** (level - r)) * inv % p**r
    return CharacterClass(p, r, s, e)


def enumerate_classes(p: int, n: int) -> list[CharacterClass]:
    """All classes with max(r, s) <= n, in lexicographic (r, s, e) order.
    Degrees sum to p^(2n)."""
    if n < 0:
        raise ValueError("level must be non-negative")
    out: list[CharacterClass] = []
    for r in range(n + 1):
        for s in range(n + 1):
            lo = min(r, s)
            if lo == 0:
                out.append(CharacterClass(p, r, s))
            else:
                out.extend(
                    CharacterClass(p, r, s, e)
                    for e in range(1, p**lo)
                    if e % p != 0
                )
    return out


def new_classes(p: int, n: int) -> list[CharacterClass]:
    """Classes at level n that are not at level n - 1 (max(r, s) = n)."""
    if n < 1:
        raise ValueError("level must be >= 1")
    return [c for c in enumerate_classes(p, n) if c.level == n]


def class_degree(theta: CharacterClass) -> int:
    return theta.degree()
