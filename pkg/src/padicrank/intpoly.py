"""Dense integer-polynomial helpers shared by the ring and series layers.

Polynomials are plain lists of ints, constant term first.  Callers decide
whether coefficients are exact integers or residues mod p^N.
"""
from __future__ import annotations


def vp(x: int, p: int) -> int | None:
    """p-adic valuation of an integer; None for 0."""
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def trim(coeffs: list[int]) -> list[int]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


def add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def neg(a: list[int]) -> list[int]:
    return [-c for c in a]


def scale(a: list[int], c: int) -> list[int]:
    if c == 0:
        return []
    return [c * x for x in a]


def mul(a: list[int], b: list[int], degree_cap: int | None = None) -> list[int]:
    if not a or not b:
        return []
    top = len(a) + len(b) - 2
    if degree_cap is not None:
        top = min(top, degree_cap)
    out = [0] * (top + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > top:
            continue
        jmax = min(len(b) - 1, top - i)
        for j in range(jmax + 1):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return trim(out)


def reduce_mod(a: list[int], modulus: int) -> list[int]:
    return trim([c % modulus for c in a])


def divide_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials with monic divisor."""
    num = list(num)
    if not den or den[-1] != 1:
        raise ValueError("divisor must be monic")
    dn, dd = len(num) - 1, len(den) - 1
    if dn < dd:
        raise ValueError("degree of numerator below divisor")
    q = [0] * (dn - dd + 1)
    for d in range(dn, dd - 1, -1):
        c = num[d]
        q[d - dd] = c
        if c:
            for j, dj in enumerate(den):
                num[j + d - dd] -= c * dj
    if any(num):
        raise ValueError("division not exact")
    return trim(q)


def taylor_shift(coeffs: list[int], shift: int, modulus: int | None = None) -> list[int]:
    """Coefficients of f(X + shift), via in-place synthetic Horner."""
    g = list(coeffs)
    n = len(g)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            g[j] += shift * g[j + 1]
            if modulus is not None:
                g[j] %= modulus
    return g
