"""Truncated one- and two-variable power series over Z/p^N, the standard
tower polynomials omega_n / Phi_n / omega_n^{+,-}, evaluation at finite-order
characters, Weierstrass preparation, and exact valuation profiles.

Series live in T = gamma - 1 (one variable) or T_p = gamma_p - 1,
T_q = gamma_q - 1 (two variables).  A series with trunc=None is an exact
polynomial: no discarded terms exist.  A truncated series only certifies
coefficients up to its truncation degree.

Evaluation at a character sends T to w - 1 where w is the corresponding
root of unity; it is computed without ring multiplications by expanding
(zeta^a - 1)^i binomially into zeta-exponent space and folding once.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import intpoly
from .characters import CharacterClass
from .config import DEFAULT_GUARD, DEFAULT_PRECISION, tau
from .errors import NotAUnitSeries, TruncationInsufficient
from .padic import CyclotomicNumber, euler_phi_p_power

_KARATSUBA_CUTOFF = 40_000


def _mul_mod(a: list[int], b: list[int], p_power: int, degree_cap: int | None = None) -> list[int]:
    """Product of residue polynomials mod p_power; Kronecker substitution
    for large operands (coefficients packed into one big integer)."""
    if not a or not b:
        return []
    if len(a) * len(b) < _KARATSUBA_CUTOFF:
        out = intpoly.mul(a, b, degree_cap)
        return [c % p_power for c in out]
    # pack base must exceed max coefficient of the product:
    # coefficients < p_power, at most min(len) terms per convolution sum
    limit = p_power * p_power * min(len(a), len(b))
    nbytes = (limit.bit_length() + 15) // 8  # headroom byte keeps digits clean
    base_bits = nbytes * 8
    ia = sum((c % p_power) << (base_bits * i) for i, c in enumerate(a))
    ib = sum((c % p_power) << (base_bits * i) for i, c in enumerate(b))
    prod = ia * ib
    top = len(a) + len(b) - 2
    if degree_cap is not None:
        top = min(top, degree_cap)
    raw = prod.to_bytes(nbytes * (len(a) + len(b)), "little")
    out = [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") % p_power
        for i in range(top + 1)
    ]
    return intpoly.trim(out)


def _batch_inverse(values: list[int], modulus: int) -> list[int]:
    """Inverses of units mod modulus via Montgomery batch inversion."""
    prefix = [1]
    for v in values:
        prefix.append(prefix[-1] * v % modulus)
    inv_all = pow(prefix[-1], -1, modulus)
    out = [0] * len(values)
    for i in range(len(values) - 1, -1, -1):
        out[i] = prefix[i] * inv_all % modulus
        inv_all = inv_all * values[i] % modulus
    return out


def _binomial_row_mod(e: int, p: int, precision: int) -> list[int]:
    """[C(e, k) mod p^N for k = 0..e], tracking the p-part exactly so the
    incremental quotient stays well-defined mod p^N."""
    pN = p**precision
    units = []
    exps = []
    for k in range(1, e + 1):
        x, a = k, 0
        while x % p == 0:
            x //= p
            a += 1
        units.append(x % pN)
        exps.append(a)
    invs = _batch_inverse(units, pN) if units else []
    row = [1] * (e + 1)
    u, a = 1, 0
    for k in range(e):
        # C(e, k+1) = C(e, k) * (e - k) / (k + 1)
        x, alpha = e - k, 0
        while x % p == 0:
            x //= p
            alpha += 1
        u = u * (x % pN) % pN * invs[k] % pN
        a += alpha - exps[k]
        row[k + 1] = u * pow(p, a, pN) % pN if a < precision else 0
    return row


# ----------------------------------------------------------------------
# series types
# ----------------------------------------------------------------------

class OneVarSeries:
    """Dense series in T over Z/p^N, truncated at degree `trunc`
    (None = exact polynomial)."""

    __slots__ = ("prime", "modulus_exponent", "coeffs", "trunc")

    def __init__(self, coeffs, prime: int, modulus_exponent: int = DEFAULT_PRECISION,
                 trunc: int | None = None):
        pN = prime**modulus_exponent
        vec = [c % pN for c in coeffs]
        if trunc is not None:
            vec = vec[: trunc + 1]
        self.prime = prime
        self.modulus_exponent = modulus_exponent
        self.coeffs = tuple(intpoly.trim(vec))
        self.trunc = trunc

    @classmethod
    def monomial(cls, degree: int, prime: int, coeff: int = 1,
                 modulus_exponent: int = DEFAULT_PRECISION) -> "OneVarSeries":
        return cls([0] * degree + [coeff], prime, modulus_exponent)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "OneVarSeries"):
        if (self.prime, self.modulus_exponent) != (other.prime, other.modulus_exponent):
            raise ValueError("mixed series contexts")

    @staticmethod
    def _join_trunc(a: int | None, b: int | None) -> int | None:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other):
        if isinstance(other, int):
            vec = list(self.coeffs) or [0]
            vec[0] += other
            return OneVarSeries(vec, self.prime, self.modulus_exponent, self.trunc)
        self._check(other)
        return OneVarSeries(
            intpoly.add(list(self.coeffs), list(other.coeffs)),
            self.prime, self.modulus_exponent,
            self._join_trunc(self.trunc, other.trunc),
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return OneVarSeries([-c for c in self.coeffs], self.prime,
                            self.modulus_exponent, self.trunc)

    def __mul__(self, other):
        pN = self.prime**self.modulus_exponent
        if isinstance(other, int):
            return OneVarSeries([c * other for c in self.coeffs], self.prime,
                                self.modulus_exponent, self.trunc)
        self._check(other)
        t = self._join_trunc(self.trunc, other.trunc)
        prod = _mul_mod(list(self.coeffs), list(other.coeffs), pN, t)
        return OneVarSeries(prod, self.prime, self.modulus_exponent, t)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, OneVarSeries):
            return (self.prime, self.modulus_exponent, self.coeffs) == (
                other.prime, other.modulus_exponent, other.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash((self.prime, self.modulus_exponent, self.coeffs))

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def evaluate_scalar(self, t: int) -> int:
        """Horner evaluation at an integer point, mod p^N."""
        pN = self.prime**self.modulus_exponent
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * t + c) % pN
        return acc

    def __repr__(self):
        body = ", ".join(f"{c}*T^{i}" for i, c in enumerate(self.coeffs) if c) or "0"
        cap = "" if self.trunc is None else f" + O(T^{self.trunc + 1})"
        return f"OneVarSeries({body}{cap}; p={self.prime}, N={self.modulus_exponent})"


class TwoVarSeries:
    """Sparse series in T_p, T_q over Z/p^N; terms maps (i, j) -> residue.
    trunc is a pair of truncation degrees, or None for exact polynomials."""

    __slots__ = ("prime", "modulus_exponent", "terms", "trunc")

    def __init__(self, terms, prime: int, modulus_exponent: int = DEFAULT_PRECISION,
                 trunc: tuple[int, int] | None = None):
        pN = prime**modulus_exponent
        clean: dict[tuple[int, int], int] = {}
        for (i, j), c in dict(terms).items():
            if trunc is not None and (i > trunc[0] or j > trunc[1]):
                continue
            r = c % pN
            if r:
                clean[(int(i), int(j))] = r
        self.prime = prime
        self.modulus_exponent = modulus_exponent
        self.terms = clean
        self.trunc = trunc

    @classmethod
    def constant(cls, value: int, prime: int,
                 modulus_exponent: int = DEFAULT_PRECISION) -> "TwoVarSeries":
        return cls({(0, 0): value}, prime, modulus_exponent)

    @classmethod
    def monomial(cls, i: int, j: int, prime: int, coeff: int = 1,
                 modulus_exponent: int = DEFAULT_PRECISION) -> "TwoVarSeries":
        return cls({(i, j): coeff}, prime, modulus_exponent)

    @classmethod
    def from_one_var(cls, f: OneVarSeries, var: str) -> "TwoVarSeries":
        if var not in ("Tp", "Tq"):
            raise ValueError("var must be 'Tp' or 'Tq'")
        terms = {((i, 0) if var == "Tp" else (0, i)): c for i, c in enumerate(f.coeffs) if c}
        trunc = None if f.trunc is None else (
            (f.trunc, 0) if var == "Tp" else (0, f.trunc))
        return cls(terms, f.prime, f.modulus_exponent, trunc)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "TwoVarSeries"):
        if (self.prime, self.modulus_exponent) != (other.prime, other.modulus_exponent):
            raise ValueError("mixed series contexts")

    @staticmethod
    def _join_trunc(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return (min(a[0], b[0]), min(a[1], b[1]))

    def __add__(self, other):
        if isinstance(other, int):
            other = TwoVarSeries.constant(other, self.prime, self.modulus_exponent)
        self._check(other)
        merged = dict(self.terms)
        for key, c in other.terms.items():
            merged[key] = merged.get(key, 0) + c
        return TwoVarSeries(merged, self.prime, self.modulus_exponent,
                            self._join_trunc(self.trunc, other.trunc))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TwoVarSeries({k: -c for k, c in self.terms.items()},
                            self.prime, self.modulus_exponent, self.trunc)

    def __mul__(self, other):
        if isinstance(other, int):
            return TwoVarSeries({k: c * other for k, c in self.terms.items()},
                                self.prime, self.modulus_exponent, self.trunc)
        self._check(other)
        t = self._join_trunc(self.trunc, other.trunc)
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                if t is not None and (key[0] > t[0] or key[1] > t[1]):
                    continue
                out[key] = out.get(key, 0) + c1 * c2
        return TwoVarSeries(out, self.prime, self.modulus_exponent, t)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, TwoVarSeries):
            return (self.prime, self.modulus_exponent, self.terms) == (
                other.prime, other.modulus_exponent, other.terms)
        return NotImplemented

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        return [(i, j, self.terms[(i, j)]) for (i, j) in sorted(self.terms)]

    def __repr__(self):
        body = " + ".join(f"{c}*Tp^{i}*Tq^{j}" for i, j, c in self.sorted_terms()) or "0"
        return f"TwoVarSeries({body}; p={self.prime}, N={self.modulus_exponent})"


# ----------------------------------------------------------------------
# tower polynomials
# ----------------------------------------------------------------------

def omega(p: int, n: int, modulus_exponent: int = DEFAULT_PRECISION) -> OneVarSeries:
    """omega_n(X) = (1+X)^{p^n} - 1, an exact polynomial of degree p^n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    row = _binomial_row_mod(p**n, p, modulus_exponent)
    row[0] = 0
    return OneVarSeries(row, p, modulus_exponent)


def phi_poly(p: int, n: int, modulus_exponent: int = DEFAULT_PRECISION) -> OneVarSeries:
    """Phi_n(X) = omega_n / omega_{n-1} = Psi_{p^n}(1+X), degree phi(p^n),
    constant term p."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pN = p**modulus_exponent
    deg = euler_phi_p_power(p, n)
    out = [0] * (deg + 1)
    for j in range(p):
        e = j * p ** (n - 1)
        if e == 0:
            out[0] += 1
            continue
        row = _binomial_row_mod(e, p, modulus_exponent)
        for k, c in enumerate(row):
            out[k] = (out[k] + c) % pN
    return OneVarSeries(out, p, modulus_exponent)


def omega_pm(p: int, n: int, sign: str, modulus_exponent: int = DEFAULT_PRECISION) -> OneVarSeries:
    """omega_n^+ = X * prod_{even i <= n} Phi_i, omega_n^- with odd i.
    Satisfies omega_n^+ * omega_n^- = X * omega_n."""
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    if n < 0:
        raise ValueError("n must be >= 0")
    parity = 0 if sign == "+" else 1
    out = OneVarSeries.monomial(1, p, 1, modulus_exponent)
    for i in range(1, n + 1):
        if i % 2 == parity:
            out = out * phi_poly(p, i, modulus_exponent)
    return out


# ----------------------------------------------------------------------
# evaluation at characters
# ----------------------------------------------------------------------

def _check_truncation(trunc_degree: int | None, p: int, level: int,
                      precision: int, guard: int):
    if trunc_degree is None:
        return
    deg = euler_phi_p_power(p, level)
    if Fraction(trunc_degree, deg) < tau(precision, guard):
        raise TruncationInsufficient(
            f"truncation degree {trunc_degree} certifies discarded terms only "
            f"to valuation {trunc_degree}/{deg}, below tau"
        )


def eval_one_var_at_root(f: OneVarSeries, exponent: int, level: int,
                         guard: int = DEFAULT_GUARD) -> CyclotomicNumber:
    """Value of f at w - 1 where w = zeta^exponent in the level-`level` ring."""
    p, N = f.prime, f.modulus_exponent
    _check_truncation(f.trunc, p, level, N, guard)
    pN = p**N
    if level == 0:
        return CyclotomicNumber.from_int(f.coefficient(0), p, 0, N)
    # f(w - 1) = h(w) with h(Z) = f(Z - 1)
    h = intpoly.taylor_shift(list(f.coeffs), -1, pN)
    pm = p**level
    vec = [0] * pm
    for k, c in enumerate(h):
        if c:
            vec[(k * exponent) % pm] += c
    return CyclotomicNumber.from_exponent_vector(vec, p, level, N)


def eval_two_var_at_roots(F: TwoVarSeries, exp1: int, exp2: int, level: int,
                          guard: int = DEFAULT_GUARD) -> CyclotomicNumber:
    """Value of F at (w1 - 1, w2 - 1), wi = zeta^{exp_i} at the given level."""
    p, N = F.prime, F.modulus_exponent
    if F.trunc is not None:
        _check_truncation(min(F.trunc), p, level, N, guard)
    pN = p**N
    if level == 0:
        return CyclotomicNumber.from_int(F.terms.get((0, 0), 0), p, 0, N)
    pm = p**level
    vec = [0] * pm
    for (i, j), c in F.terms.items():
        # (zeta^a - 1)^i (zeta^b - 1)^j expanded binomially
        for k in range(i + 1):
            ck = comb(i, k) * (1 if (i - k) % 2 == 0 else -1)
            base = (k * exp1) % pm
            for t in range(j + 1):
                coef = c * ck * comb(j, t) * (1 if (j - t) % 2 == 0 else -1)
                vec[(base + t * exp2) % pm] += coef
    vec = [x % pN for x in vec]
    return CyclotomicNumber.from_exponent_vector(vec, p, level, N)


def eval_at_character(F: "TwoVarSeries | OneVarSeries", theta: CharacterClass,
                      var: str = "Tp", guard: int = DEFAULT_GUARD) -> CyclotomicNumber:
    """Value of F at the canonical representative of theta, in the ring at
    level max(r, s).  One-variable series evaluate at the root selected by
    `var` ("Tp" -> w1, "Tq" -> w2)."""
    a, b = theta.exponents()
    level = theta.level
    if isinstance(F, OneVarSeries):
        return eval_one_var_at_root(F, a if var == "Tp" else b, level, guard)
    return eval_two_var_at_roots(F, a, b, level, guard)


# ----------------------------------------------------------------------
# Weierstrass preparation
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class WeierstrassFactorization:
    """f = p^p_power * unit * distinguished mod (p^N, T^(D+1))."""

    p_power: int
    unit: OneVarSeries
    distinguished: OneVarSeries

    @property
    def lam(self) -> int:
        return self.distinguished.degree


def _series_inverse(coeffs: list[int], cap: int, p_power: int) -> list[int]:
    """Inverse of a series with unit constant term, through degree cap."""
    c0_inv = pow(coeffs[0], -1, p_power)
    inv = [c0_inv] + [0] * cap
    for k in range(1, cap + 1):
        acc = 0
        for i in range(1, min(k, len(coeffs) - 1) + 1):
            acc += coeffs[i] * inv[k - i]
        inv[k] = (-c0_inv * acc) % p_power
    return inv


def weierstrass_prepare(f: OneVarSeries, guard: int = DEFAULT_GUARD) -> WeierstrassFactorization:
    """Classical successive-approximation preparation at precision p^N.

    Strips the exact power of p first; raises NotAUnitSeries when no unit
    coefficient remains within the working truncation.
    """
    p, N = f.prime, f.modulus_exponent
    pN = p**N
    if f.is_zero():
        raise NotAUnitSeries("zero series cannot be prepared")
    mu = min(v for v in (intpoly.vp(c, p) for c in f.coeffs) if v is not None)
    if mu >= tau(N, guard):
        raise NotAUnitSeries(f"series content p^{mu} is beyond the guard threshold")
    stripped = [c // p**mu for c in f.coeffs]
    lam = next((i for i, c in enumerate(stripped) if c % p != 0), None)
    if lam is None:
        raise NotAUnitSeries("no unit coefficient within precision")
    out_cap = f.trunc if f.trunc is not None else max(f.degree, lam)
    # the truncated division only pins (q, r) mod p^(cap - lam); work deep
    # enough that the factors are canonical mod p^N
    cap = max(out_cap, lam + N + 4)

    # Weierstrass division of T^lam by the stripped series
    f_high = stripped[lam:]
    f_high_inv = _series_inverse(f_high, cap, pN)
    target = [0] * lam + [1]  # T^lam
    q = [0] * (cap + 1)
    r = list(target) + [0] * (cap + 1 - len(target))
    for _ in range(N + 2):
        high = r[lam: cap + 1]
        if not any(high):
            break
        t = _mul_mod(high, f_high_inv, pN, cap - lam)
        t += [0] * (cap - lam + 1 - len(t))
        for i, ti in enumerate(t):
            q[i] = (q[i] + ti) % pN
        qf = _mul_mod(q, stripped, pN, cap)
        qf += [0] * (cap + 1 - len(qf))
        r = [(a - b) % pN for a, b in zip(target + [0] * (cap + 1 - len(target)), qf)]
    distinguished = [(-c) % pN for c in r[:lam]] + [1]
    unit = _series_inverse(q, cap, pN)[: out_cap + 1]
    return WeierstrassFactorization(
        p_power=mu,
        unit=OneVarSeries(unit, p, N, trunc=out_cap),
        distinguished=OneVarSeries(distinguished, p, N),
    )


def distinguished_degree_by_newton(f: OneVarSeries) -> int:
    """Number of roots of positive valuation, read off the Newton polygon
    (total horizontal length of the strictly negative slopes of the lower
    convex hull of (i, v_p(c_i))).  Independent check on preparation."""
    p = f.prime
    pts = [(i, intpoly.vp(c, p)) for i, c in enumerate(f.coeffs)]
    pts = [(i, v) for i, v in pts if v is not None]
    if not pts:
        raise ValueError("zero series has no Newton polygon")
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the new chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    length = 0
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if y2 < y1:
            length += x2 - x1
        else:
            break
    return length


# ----------------------------------------------------------------------
# valuation profiles
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ProfileFit:
    """Exact valuation law ord_p F(theta) = a + b_i/phi(p^r) + c_i/phi(p^s)
    on the two off-diagonal regions (i=1: r > s, i=2: s > r)."""

    a: int
    b1: int
    c1: int
    b2: int
    c2: int
    n0: int
    gap: int
    residual_ok: bool


def _solve_profile(points: list[tuple[int, int]], vals, p: int):
    """Exact 3-parameter solve a + b/phi(p^r) + c/phi(p^s) on three
    independent points; returns (a, b, c) Fractions or None."""
    from itertools import combinations

    def basis(r, s):
        return (Fraction(1), Fraction(1, euler_phi_p_power(p, r)),
                Fraction(1, euler_phi_p_power(p, s)))

    for trio in combinations(points[:12], 3):
        rows = [basis(r, s) for r, s in trio]
        rhs = [vals[pt] for pt in trio]
        det = (
            rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
        )
        if det == 0:
            continue
        sol = []
        for col in range(3):
            m = [list(r) for r in rows]
            for i in range(3):
                m[i][col] = rhs[i]
            d = (
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            )
            sol.append(d / det)
        return tuple(sol)
    return None


def valuation_profile(F: TwoVarSeries, r_range, s_range, gap_min: int = 1,
                      guard: int = DEFAULT_GUARD) -> ProfileFit:
    """Fit the exact valuation law on characters of orders (p^r, p^s) over
    the grid, solving on three points per region and verifying the rest.

    Reports the smallest (n0, gap) making the law exact on every in-region
    point; residual_ok=False when no in-range fit exists (the law only
    holds asymptotically).
    """
    if F.is_zero():
        raise ValueError("profile of the zero series is undefined")
    p = F.prime
    rs = sorted(set(r_range))
    ss = sorted(set(s_range))
    if any(x < 1 for x in rs + ss):
        raise ValueError("grid orders must be >= 1")
    vals: dict[tuple[int, int], Fraction | None] = {}

    def value_at(r, s):
        if (r, s) not in vals:
            theta = CharacterClass(p, r, s, 1)
            from .padic import numeric_valuation
            v = numeric_valuation(eval_two_var_at_roots(
                F, *theta.exponents(), theta.level, guard), guard)
            vals[(r, s)] = None if v is None else v.fraction
        return vals[(r, s)]

    lo = min(rs + ss)
    hi = max(rs + ss)
    for n0 in range(lo, hi):
        for gap in range(gap_min, hi - n0 + 1):
            region1 = [(r, s) for r in rs for s in ss
                       if r >= n0 and s >= n0 and r - s >= gap]
            region2 = [(r, s) for r in rs for s in ss
                       if r >= n0 and s >= n0 and s - r >= gap]
            if len(region1) < 3 or len(region2) < 3:
                continue
            if any(value_at(r, s) is None for r, s in region1 + region2):
                continue
            fit1 = _solve_profile(region1, vals, p)
            fit2 = _solve_profile(region2, vals, p)
            if fit1 is None or fit2 is None:
                continue
            a1, b1, c1 = fit1
            a2, b2, c2 = fit2
            if any(x.denominator != 1 for x in (a1, b1, c1, a2, b2, c2)):
                continue
            if a1 != a2:
                continue
            ok = all(
                vals[(r, s)] == a1 + Fraction(b1, euler_phi_p_power(p, r))
                + Fraction(c1, euler_phi_p_power(p, s))
                for r, s in region1
            ) and all(
                vals[(r, s)] == a2 + Fraction(b2, euler_phi_p_power(p, r))
                + Fraction(c2, euler_phi_p_power(p, s))
                for r, s in region2
            )
            if ok:
                return ProfileFit(int(a1), int(b1), int(c1), int(b2), int(c2),
                                  n0, gap, True)
    return ProfileFit(0, 0, 0, 0, 0, hi, gap_min, False)
