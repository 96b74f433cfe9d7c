"""Z_p-rank of level-n coinvariants of finitely presented two-variable
Iwasawa modules, computed two independent ways, plus the quadratic growth
fit rank_n = r * p^(2n) + O(p^n).

direct: eliminate the relation lattice over Z/p^N on the monomial basis
{Tp^i Tq^j : i, j < p^n} per generator, the level ideal being
(omega_n(Tp), omega_n(Tq)); free rank = columns minus pivots whose
valuation stays below tau.

charsum: decompose by the characters of level n and count, per conjugacy
class, deg(theta) * (g - rank of the evaluated relation matrix) over the
residue field of the class.

A pivot whose valuation falls in the guard band [tau - 4, tau) makes the
zero/nonzero call ambiguous and raises PrecisionExhausted.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intpoly
from .characters import enumerate_classes
from .config import DEFAULT_GUARD, SENSITIVITY_BAND, tau
from .errors import PrecisionExhausted, SizeCapExceeded
from .padic import CyclotomicNumber
from .series import TwoVarSeries, eval_two_var_at_roots, omega

DEFAULT_SIZE_CAP = 20_000


@dataclass(frozen=True)
class LambdaPresentation:
    """Module Lambda^g / <relations>, each relation a length-g vector of
    two-variable series."""

    prime: int
    modulus_exponent: int
    generators: int
    relations: tuple[tuple[TwoVarSeries, ...], ...]

    def __post_init__(self):
        if self.generators < 1:
            raise ValueError("need at least one generator")
        for rel in self.relations:
            if len(rel) != self.generators:
                raise ValueError("relation length must equal the generator count")
            for s in rel:
                if (s.prime, s.modulus_exponent) != (self.prime, self.modulus_exponent):
                    raise ValueError("relation series in a different context")

    @classmethod
    def free_module(cls, prime: int, modulus_exponent: int, generators: int = 1):
        return cls(prime, modulus_exponent, generators, ())

    @classmethod
    def cyclic(cls, relation: TwoVarSeries):
        return cls(relation.prime, relation.modulus_exponent, 1, ((relation,),))

    def direct_sum(self, other: "LambdaPresentation") -> "LambdaPresentation":
        if (self.prime, self.modulus_exponent) != (other.prime, other.modulus_exponent):
            raise ValueError("mixed contexts")
        g = self.generators + other.generators
        zero = TwoVarSeries({}, self.prime, self.modulus_exponent)
        rels = [rel + (zero,) * other.generators for rel in self.relations]
        rels += [(zero,) * self.generators + rel for rel in other.relations]
        return LambdaPresentation(self.prime, self.modulus_exponent, g, tuple(rels))


# ----------------------------------------------------------------------
# direct elimination
# ----------------------------------------------------------------------

def _pivot_count_mod_pN(rows: list[list[int]], p: int, N: int, guard: int) -> int:
    """Number of elimination pivots with valuation below tau, with
    valuation-minimal pivoting over Z/p^N."""
    threshold = tau(N, guard)
    pN = p**N
    nrows = len(rows)
    if nrows == 0:
        return 0
    ncols = len(rows[0])
    m = [row[:] for row in rows]
    rank = 0
    r = 0
    while r < nrows and r < ncols:
        piv_i = piv_j = -1
        piv_v = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                v = intpoly.vp(m[i][j], p)
                if v is not None and (piv_v is None or v < piv_v):
                    piv_i, piv_j, piv_v = i, j, v
            if piv_v == 0:
                break
        if piv_v is None or piv_v >= threshold:
            if piv_v is not None and piv_v < threshold + guard:
                # a visible value at or above tau: genuinely ambiguous
                raise PrecisionExhausted(
                    f"pivot valuation {piv_v} at tau={threshold}: rerun at higher N"
                )
            break
        if piv_v >= threshold - SENSITIVITY_BAND:
            raise PrecisionExhausted(
                f"pivot valuation {piv_v} inside guard band "
                f"[{threshold - SENSITIVITY_BAND}, {threshold}): rerun at higher N"
            )
        if piv_i != r:
            m[r], m[piv_i] = m[piv_i], m[r]
        if piv_j != r:
            for row in m:
                row[r], row[piv_j] = row[piv_j], row[r]
        unit_inv = pow(m[r][r] // p**piv_v, -1, pN)
        for i in range(r + 1, nrows):
            e = m[i][r]
            if e:
                t = (e // p**piv_v) * unit_inv % pN
                mi, mr = m[i], m[r]
                for j in range(r, ncols):
                    mi[j] = (mi[j] - t * mr[j]) % pN
        rank += 1
        r += 1
    return rank


def _monomial_power_table(p: int, n: int, N: int, max_exp: int) -> list[list[int]]:
    """Reduced coefficient vectors of X^e in Z/p^N[X]/(omega_n) for e <= max_exp."""
    pN = p**N
    D = p**n
    om = omega(p, n, N).coeffs
    wrap = [(-om[k]) % pN for k in range(D)]  # X^D = sum_k wrap[k] X^k
    table = []
    for e in range(max_exp + 1):
        if e < D:
            vec = [0] * D
            vec[e] = 1
        else:
            prev = table[e - 1]
            top = prev[D - 1]
            vec = [0] + prev[: D - 1]
            if top:
                vec = [(vec[k] + top * wrap[k]) % pN for k in range(D)]
        table.append(vec)
    return table


def _quotient_ring_rows(M: LambdaPresentation, n: int) -> tuple[list[list[int]], int]:
    """Relation rows on the monomial basis of (Lambda / level-n ideal)^g."""
    p, N, g = M.prime, M.modulus_exponent, M.generators
    pN = p**N
    D = p**n
    max_i = max((i for rel in M.relations for s in rel for (i, _) in s.terms), default=0)
    max_j = max((j for rel in M.relations for s in rel for (_, j) in s.terms), default=0)
    table = _monomial_power_table(p, n, N, max(max_i, max_j) + D)
    ncols = D * D * g
    rows = []
    for rel in M.relations:
        for a in range(D):
            for b in range(D):
                row = [0] * ncols
                for k, s in enumerate(rel):
                    base = k * D * D
                    for (i, j), c in s.terms.items():
                        pvec = table[i + a]
                        qvec = table[j + b]
                        for ii, pa in enumerate(pvec):
                            if pa:
                                cpa = c * pa
                                off = base + ii * D
                                for jj, qb in enumerate(qvec):
                                    if qb:
                                        row[off + jj] = (row[off + jj] + cpa * qb) % pN
                rows.append(row)
    return rows, ncols


def coinv_rank_direct(M: LambdaPresentation, n: int,
                      size_cap: int = DEFAULT_SIZE_CAP,
                      guard: int = DEFAULT_GUARD) -> int:
    """Free rank of the level-n coinvariants by elimination over Z/p^N."""
    p = M.prime
    dim = p ** (2 * n) * M.generators
    if dim > size_cap:
        raise SizeCapExceeded(f"p^(2n)*g = {dim} exceeds cap {size_cap}")
    if not M.relations:
        return dim
    rows, ncols = _quotient_ring_rows(M, n)
    pivots = _pivot_count_mod_pN(rows, p, M.modulus_exponent, guard)
    return ncols - pivots


# ----------------------------------------------------------------------
# character-sum method
# ----------------------------------------------------------------------

def _field_rank(matrix: list[list[CyclotomicNumber]], guard: int) -> int:
    """Rank of a matrix over the fraction field of the class ring, by
    fraction-free elimination with valuation-aware pivoting."""
    if not matrix:
        return 0
    nrows, ncols = len(matrix), len(matrix[0])
    m = [row[:] for row in matrix]
    rank = 0
    r = 0
    while r < nrows and r < ncols:
        piv_i = piv_j = -1
        piv_v = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                x = m[i][j]
                raw = x.raw_valuation()
                if raw is None:
                    continue
                N = x.modulus_exponent
                threshold = tau(N, guard)
                if raw.fraction >= threshold:
                    if raw.fraction < threshold + guard:
                        raise PrecisionExhausted(
                            f"entry valuation {raw.fraction} at tau: ambiguous")
                    continue
                if raw.fraction >= threshold - SENSITIVITY_BAND:
                    raise PrecisionExhausted(
                        f"entry valuation {raw.fraction} inside the guard band")
                if piv_v is None or raw.fraction < piv_v:
                    piv_i, piv_j, piv_v = i, j, raw.fraction
        if piv_v is None:
            break
        if piv_i != r:
            m[r], m[piv_i] = m[piv_i], m[r]
        if piv_j != r:
            for row in m:
                row[r], row[piv_j] = row[piv_j], row[r]
        piv = m[r][r]
        for i in range(r + 1, nrows):
            e = m[i][r]
            if not e.is_zero():
                m[i] = [piv * m[i][j] - e * m[r][j] for j in range(ncols)]
        rank += 1
        r += 1
    return rank


def coinv_rank_charsum(M: LambdaPresentation, n: int,
                       guard: int = DEFAULT_GUARD) -> int:
    """Free rank of the level-n coinvariants as a sum over character
    classes of deg(theta) * (g - rank of the evaluated relations)."""
    p, g = M.prime, M.generators
    total = 0
    for theta in enumerate_classes(p, n):
        if M.relations:
            a, b = theta.exponents()
            matrix = [
                [eval_two_var_at_roots(s, a, b, theta.level, guard) for s in rel]
                for rel in M.relations
            ]
            rk = _field_rank(matrix, guard)
        else:
            rk = 0
        total += theta.degree() * (g - rk)
    return total


# ----------------------------------------------------------------------
# growth fit
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RankFit:
    """rank_n = r * p^(2n) + O(p^n): estimated r and the exact residual
    bound max |rank_n - r p^(2n)| / p^n over the fitted levels."""

    r_estimate: Fraction
    ranks: tuple[tuple[int, int], ...]
    residual_bound: Fraction


def harris_fit(M: LambdaPresentation, n_max: int, method: str = "charsum",
               size_cap: int = DEFAULT_SIZE_CAP,
               guard: int = DEFAULT_GUARD) -> RankFit:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if method not in ("charsum", "direct"):
        raise ValueError("method must be 'charsum' or 'direct'")
    p = M.prime
    ranks = []
    for n in range(n_max + 1):
        if method == "direct":
            rk = coinv_rank_direct(M, n, size_cap, guard)
        else:
            rk = coinv_rank_charsum(M, n, guard)
        ranks.append((n, rk))
    top_n, top_rank = ranks[-1]
    x = Fraction(top_rank, p ** (2 * top_n))
    nearest = round(x)
    r_est = Fraction(nearest) if abs(x - nearest) <= Fraction(1, p**top_n) else x
    residual = max(
        Fraction(abs(rk - r_est * p ** (2 * n)), p**n) if n > 0
        else Fraction(abs(rk - r_est))
        for n, rk in ranks
    )
    return RankFit(r_est, tuple(ranks), residual)
