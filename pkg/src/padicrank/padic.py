"""Exact capped-precision arithmetic in Z_p and the cyclotomic rings Z_p[mu_{p^m}].

Every stored scalar is a residue mod p^N.  Elements of Z_p[mu_{p^m}] are
coefficient vectors of length phi(p^m) modulo the p^m-th cyclotomic
polynomial Psi(X) = sum_{j<p} X^{j p^{m-1}}.

Valuations are computed two independent ways:

* primary: expand in powers of the uniformizer pi = zeta - 1.  Writing
  x = g(pi) with g = f(1 + Y), the terms g_i * pi^i have pairwise distinct
  valuations v_p(g_i) + i/phi (the fractional parts differ), so the
  valuation of x is exactly the minimum.  This certifies any valuation
  below N regardless of the level.
* oracle: ord_p(Norm(x)) / phi(p^m), with the norm obtained as the
  determinant of the multiplication-by-x matrix.  Its certification
  ceiling is N / phi(p^m), so it is used for cross-checks at small levels.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from . import intpoly
from .config import DEFAULT_GUARD, DEFAULT_PRECISION, tau
from .errors import PrecisionExhausted


def euler_phi_p_power(p: int, m: int) -> int:
    """phi(p^m); 1 for m = 0."""
    return 1 if m == 0 else p ** (m - 1) * (p - 1)


@total_ordering
class Valuation:
    """Exact non-negative rational valuation, with an infinite marker.

    Denominators are divisors of phi(p^m); values compare and add as exact
    rationals.
    """

    __slots__ = ("_frac",)

    def __init__(self, value: Fraction | int | None):
        if value is None:
            self._frac = None
        else:
            f = Fraction(value)
            if f < 0:
                raise ValueError(f"valuations are non-negative, got {f}")
            self._frac = f

    @classmethod
    def infinite(cls) -> "Valuation":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self._frac is None

    @property
    def fraction(self) -> Fraction:
        if self._frac is None:
            raise ValueError("infinite valuation has no finite value")
        return self._frac

    @property
    def numerator(self) -> int:
        return self.fraction.numerator

    @property
    def denominator(self) -> int:
        return self.fraction.denominator

    def __add__(self, other: "Valuation | Fraction | int") -> "Valuation":
        o = other if isinstance(other, Valuation) else Valuation(other)
        if self.is_infinite or o.is_infinite:
            return Valuation.infinite()
        return Valuation(self._frac + o._frac)

    __radd__ = __add__

    def __sub__(self, other: "Valuation | Fraction | int") -> Fraction:
        """Exact difference of two finite valuations (may be negative)."""
        o = other if isinstance(other, Valuation) else Valuation(other)
        return self.fraction - o.fraction

    def __eq__(self, other) -> bool:
        if isinstance(other, Valuation):
            return self._frac == other._frac
        if isinstance(other, (int, Fraction)):
            return self._frac == Fraction(other)
        return NotImplemented

    def __lt__(self, other) -> bool:
        o = other if isinstance(other, Valuation) else Valuation(other)
        if self.is_infinite:
            return False
        if o.is_infinite:
            return True
        return self._frac < o._frac

    def __hash__(self):
        return hash(self._frac)

    def __repr__(self):
        if self.is_infinite:
            return "Valuation(inf)"
        return f"Valuation({self._frac})"

    def __str__(self):
        if self.is_infinite:
            return "inf"
        return f"{self._frac.numerator}/{self._frac.denominator}"


class PadicInt:
    """Residue mod p^N with exact ring operations."""

    __slots__ = ("prime", "modulus_exponent", "residue")

    def __init__(self, value: int, prime: int, modulus_exponent: int = DEFAULT_PRECISION):
        if prime < 3 or prime % 2 == 0:
            raise ValueError(f"prime must be odd, got {prime}")
        if modulus_exponent < 1:
            raise ValueError("modulus exponent must be positive")
        self.prime = prime
        self.modulus_exponent = modulus_exponent
        self.residue = value % prime**modulus_exponent

    def _check(self, other: "PadicInt"):
        if (self.prime, self.modulus_exponent) != (other.prime, other.modulus_exponent):
            raise ValueError("mixed p-adic contexts")

    def _wrap(self, value: int) -> "PadicInt":
        return PadicInt(value, self.prime, self.modulus_exponent)

    def __add__(self, other):
        if isinstance(other, int):
            return self._wrap(self.residue + other)
        self._check(other)
        return self._wrap(self.residue + other.residue)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self._wrap(self.residue - other)
        self._check(other)
        return self._wrap(self.residue - other.residue)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._wrap(self.residue * other)
        self._check(other)
        return self._wrap(self.residue * other.residue)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.residue)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.residue == other % self.prime**self.modulus_exponent
        if isinstance(other, PadicInt):
            return (self.prime, self.modulus_exponent, self.residue) == (
                other.prime,
                other.modulus_exponent,
                other.residue,
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.prime, self.modulus_exponent, self.residue))

    def valuation(self) -> int | None:
        """Largest k <= N with p^k | residue; None when the residue is 0 (>= N)."""
        if self.residue == 0:
            return None
        return intpoly.vp(self.residue, self.prime)

    def is_unit(self) -> bool:
        return self.residue % self.prime != 0

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise ZeroDivisionError("not a unit mod p")
        return self._wrap(pow(self.residue, -1, self.prime**self.modulus_exponent))

    def __repr__(self):
        return f"PadicInt({self.residue} mod {self.prime}^{self.modulus_exponent})"


def cyclo_poly(p: int, m: int) -> list[int]:
    """The p^m-th cyclotomic polynomial Psi(X) = sum_{j<p} X^{j p^{m-1}},
    as a dense integer coefficient list (monic, degree phi(p^m))."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    if m < 1:
        raise ValueError("level must be >= 1")
    deg = euler_phi_p_power(p, m)
    coeffs = [0] * (deg + 1)
    for j in range(p):
        coeffs[j * p ** (m - 1)] = 1
    return coeffs


class CyclotomicNumber:
    """Element of Z_p[X]/(Psi_{p^m}(X)) at precision p^N.

    coeffs is the dense residue vector of length phi(p^m) (length 1 when
    m = 0, i.e. plain Z_p).  Instances are immutable by convention.
    """

    __slots__ = ("prime", "modulus_exponent", "level", "coeffs")

    def __init__(self, coeffs, prime: int, level: int, modulus_exponent: int = DEFAULT_PRECISION):
        deg = euler_phi_p_power(prime, level)
        pN = prime**modulus_exponent
        vec = [c % pN for c in coeffs]
        if len(vec) > deg:
            raise ValueError("coefficient vector longer than phi(p^m)")
        vec += [0] * (deg - len(vec))
        self.prime = prime
        self.level = level
        self.modulus_exponent = modulus_exponent
        self.coeffs = tuple(vec)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_int(cls, value: int, prime: int, level: int = 0,
                 modulus_exponent: int = DEFAULT_PRECISION) -> "CyclotomicNumber":
        return cls([value], prime, level, modulus_exponent)

    @classmethod
    def zeta_power(cls, k: int, prime: int, level: int,
                   modulus_exponent: int = DEFAULT_PRECISION) -> "CyclotomicNumber":
        """zeta^k where zeta is the distinguished primitive p^level-th root."""
        if level == 0:
            return cls.from_int(1, prime, 0, modulus_exponent)
        pm = prime**level
        vec = [0] * pm
        vec[k % pm] = 1
        return cls(_fold(vec, prime, level), prime, level, modulus_exponent)

    @classmethod
    def from_exponent_vector(cls, vec, prime: int, level: int,
                             modulus_exponent: int = DEFAULT_PRECISION) -> "CyclotomicNumber":
        """Build from a coefficient vector indexed by zeta-exponents < p^level."""
        return cls(_fold(list(vec), prime, level), prime, level, modulus_exponent)

    # -- ring structure -----------------------------------------------

    def _check(self, other: "CyclotomicNumber"):
        if (self.prime, self.level, self.modulus_exponent) != (
            other.prime,
            other.level,
            other.modulus_exponent,
        ):
            raise ValueError("mixed cyclotomic contexts")

    def _wrap(self, coeffs) -> "CyclotomicNumber":
        return CyclotomicNumber(coeffs, self.prime, self.level, self.modulus_exponent)

    def __add__(self, other):
        if isinstance(other, int):
            vec = list(self.coeffs)
            vec[0] += other
            return self._wrap(vec)
        self._check(other)
        return self._wrap([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            vec = list(self.coeffs)
            vec[0] -= other
            return self._wrap(vec)
        self._check(other)
        return self._wrap([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self._wrap([-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self._wrap([a * other for a in self.coeffs])
        self._check(other)
        if self.level == 0:
            return self._wrap([self.coeffs[0] * other.coeffs[0]])
        pm = self.prime**self.level
        out = [0] * pm
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = i + j
                        out[k if k < pm else k - pm] += a * b
        return self._wrap(_fold(out, self.prime, self.level))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not supported")
        result = CyclotomicNumber.from_int(1, self.prime, self.level, self.modulus_exponent)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return (
                self.prime == other.prime
                and self.level == other.level
                and self.modulus_exponent == other.modulus_exponent
                and self.coeffs == other.coeffs
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.prime, self.level, self.modulus_exponent, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def conjugate(self, u: int) -> "CyclotomicNumber":
        """Galois conjugate zeta -> zeta^u (u a unit mod p^level)."""
        if self.level == 0:
            return self
        pm = self.prime**self.level
        if u % self.prime == 0:
            raise ValueError("conjugation exponent must be a unit")
        vec = [0] * pm
        for i, a in enumerate(self.coeffs):
            if a:
                vec[(i * u) % pm] += a
        return self._wrap(_fold(vec, self.prime, self.level))

    # -- valuations ---------------------------------------------------

    def raw_valuation(self) -> Valuation | None:
        """Exact valuation when certifiable below N; None when the element
        is zero mod every visible digit (true valuation >= N)."""
        p, m = self.prime, self.level
        if m == 0:
            v = intpoly.vp(self.coeffs[0], p)
            return None if v is None else Valuation(v)
        deg = euler_phi_p_power(p, m)
        shifted = intpoly.taylor_shift(list(self.coeffs), 1, p**self.modulus_exponent)
        best: Fraction | None = None
        for i, gi in enumerate(shifted):
            v = intpoly.vp(gi, p)
            if v is not None:
                cand = Fraction(v) + Fraction(i, deg)
                if best is None or cand < best:
                    best = cand
        return None if best is None else Valuation(best)

    def valuation_via_norm(self) -> Valuation | None:
        """Independent oracle: ord_p(Norm)/phi via the determinant of the
        multiplication matrix.  None when the determinant saturates, i.e.
        the norm valuation reaches N (ceiling N/phi on the element)."""
        p, m, N = self.prime, self.level, self.modulus_exponent
        if m == 0:
            return self.raw_valuation()
        deg = euler_phi_p_power(p, m)
        cols = []
        shifted = self
        x_image = CyclotomicNumber.zeta_power(1, p, m, N)
        for _ in range(deg):
            cols.append(list(shifted.coeffs))
            shifted = shifted * x_image
        rows = [[cols[j][i] for j in range(deg)] for i in range(deg)]
        vdet = _det_valuation_mod_pN(rows, p, N)
        if vdet is None:
            return None
        return Valuation(Fraction(vdet, deg))

    def __repr__(self):
        return (
            f"CyclotomicNumber(level={self.level}, p={self.prime}, "
            f"N={self.modulus_exponent}, coeffs={list(self.coeffs)!r})"
        )


def _fold(vec: list[int], p: int, m: int) -> list[int]:
    """Reduce a coefficient vector with exponents < p^m modulo Psi_{p^m}.

    Uses X^phi = -sum_{j<p-1} X^{j p^{m-1}}; the replacement exponents are
    strictly smaller, so a single descending sweep terminates.
    """
    deg = euler_phi_p_power(p, m)
    pm = p**m
    v = list(vec) + [0] * (pm - len(vec))
    step = p ** (m - 1)
    for d in range(pm - 1, deg - 1, -1):
        c = v[d]
        if c:
            v[d] = 0
            base = d - deg
            for j in range(p - 1):
                v[j * step + base] -= c
    return v[:deg]


def _det_valuation_mod_pN(rows: list[list[int]], p: int, N: int) -> int | None:
    """ord_p of the determinant of an integer matrix known mod p^N.

    Valuation-pivoted elimination; each pivot p^a * u kills its column
    exactly mod p^N.  Returns None when the determinant is indistinguishable
    from 0 mod p^N.
    """
    n = len(rows)
    pN = p**N
    m = [[x % pN for x in row] for row in rows]
    total = 0
    for k in range(n):
        piv_i = piv_j = -1
        piv_v = None
        for i in range(k, n):
            for j in range(k, n):
                v = intpoly.vp(m[i][j], p)
                if v is not None and (piv_v is None or v < piv_v):
                    piv_i, piv_j, piv_v = i, j, v
            if piv_v == 0:
                break
        if piv_v is None:
            return None
        if piv_i != k:
            m[k], m[piv_i] = m[piv_i], m[k]
        if piv_j != k:
            for row in m:
                row[k], row[piv_j] = row[piv_j], row[k]
        total += piv_v
        if total >= N:
            return None
        pivot = m[k][k]
        unit = pivot // p**piv_v
        unit_inv = pow(unit, -1, pN)
        for i in range(k + 1, n):
            e = m[i][k]
            if e:
                t = (e // p**piv_v) * unit_inv % pN
                mi, mk = m[i], m[k]
                for j in range(k, n):
                    mi[j] = (mi[j] - t * mk[j]) % pN
    return total


def cyclo_embed(x: CyclotomicNumber, target_level: int) -> CyclotomicNumber:
    """Image of x under zeta_{p^m} -> (zeta_{p^M})^{p^(M-m)}, M >= m."""
    m, M = x.level, target_level
    if M < m:
        raise ValueError(f"cannot embed level {m} into lower level {M}")
    if M == m:
        return x
    p = x.prime
    if m == 0:
        return CyclotomicNumber.from_int(x.coeffs[0], p, M, x.modulus_exponent)
    stride = p ** (M - m)
    vec = [0] * p**M
    for i, a in enumerate(x.coeffs):
        if a:
            vec[i * stride] += a
    return CyclotomicNumber.from_exponent_vector(vec, p, M, x.modulus_exponent)


def cyclo_valuation(x: CyclotomicNumber, guard: int = DEFAULT_GUARD) -> Valuation:
    """Exact valuation of x; raises PrecisionExhausted when the value is
    numerically zero (valuation >= tau = N - guard)."""
    v = x.raw_valuation()
    threshold = tau(x.modulus_exponent, guard)
    if v is None or v >= Valuation(threshold):
        raise PrecisionExhausted(
            f"valuation at or above tau={threshold}: indistinguishable from zero"
        )
    return v


def numeric_valuation(x: CyclotomicNumber, guard: int = DEFAULT_GUARD) -> Valuation | None:
    """Like cyclo_valuation but returns None (zero marker) instead of raising."""
    v = x.raw_valuation()
    threshold = tau(x.modulus_exponent, guard)
    if v is None or v >= Valuation(threshold):
        return None
    return v
