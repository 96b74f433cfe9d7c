"""The 2x2 transfer matrices, the first-row pair (H_sharp, H_flat), their
exact valuations at canonical characters, and truncations of the matrix
limit A^(k+1) C_k ... C_1.

Convention handling: the product order (descending vs ascending index) and
the sharp/flat column pairing are resolvable switches.  resolve_convention
picks the candidate reproducing the closed-form valuation table and reports
any level where no candidate does, with exact computed values, instead of
resolving silently.

Sign of the lower-left entry: with +Phi_n the evaluated truncations
oscillate and the limit does not exist; with -Phi_n one has
C_j(eta) = A^(-1) exactly for j above the conductor level, so the
truncations are stationary from that level on.  mlog_truncation therefore
defaults to phi_sign=-1; h_row keeps +1, matching the stated recursion
(valuations are sign-independent since the expansion terms have pairwise
distinct valuations).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import intpoly
from .config import DEFAULT_GUARD, DEFAULT_PRECISION
from .padic import CyclotomicNumber, Valuation, cyclo_valuation
from .series import OneVarSeries, eval_one_var_at_root, phi_poly


@dataclass(frozen=True, order=True)
class Convention:
    order: str = "desc"        # "desc": C_n ... C_1; "asc": C_1 ... C_n
    pairing: str = "standard"  # "standard": sharp = first entry; "swapped"

    def __post_init__(self):
        if self.order not in ("desc", "asc"):
            raise ValueError("order must be 'desc' or 'asc'")
        if self.pairing not in ("standard", "swapped"):
            raise ValueError("pairing must be 'standard' or 'swapped'")

    def label(self) -> str:
        return f"{self.order}/{self.pairing}"


DEFAULT_CONVENTION = Convention()
CANDIDATE_CONVENTIONS = (
    Convention("desc", "standard"),
    Convention("desc", "swapped"),
    Convention("asc", "standard"),
    Convention("asc", "swapped"),
)


@dataclass(frozen=True)
class CMatrix:
    """[[a_p, 1], [phi_sign * Phi_n, 0]] with polynomial entries."""

    prime: int
    a_p: int
    index: int
    entries: tuple[tuple[OneVarSeries, OneVarSeries], tuple[OneVarSeries, OneVarSeries]]
    phi_sign: int = 1

    def evaluate(self, exponent: int, level: int) -> list[list[CyclotomicNumber]]:
        return [
            [eval_one_var_at_root(e, exponent, level) for e in row]
            for row in self.entries
        ]


def _validate_ap(p: int, a_p: int):
    if a_p % p != 0 or a_p == 0:
        raise ValueError(f"a_p must be a nonzero multiple of p, got a_p={a_p}, p={p}")


def c_matrix(p: int, a_p: int, n: int, phi_sign: int = 1,
             modulus_exponent: int = DEFAULT_PRECISION) -> CMatrix:
    _validate_ap(p, a_p)
    if n < 1:
        raise ValueError("n must be >= 1")
    if phi_sign not in (1, -1):
        raise ValueError("phi_sign must be +1 or -1")
    const = lambda c: OneVarSeries([c], p, modulus_exponent)
    phi = phi_poly(p, n, modulus_exponent) * phi_sign
    return CMatrix(p, a_p, n, ((const(a_p), const(1)), (phi, const(0))), phi_sign)


@dataclass(frozen=True)
class HRow:
    """First row (H_sharp, H_flat) of the convention-resolved product of
    C_n, ..., C_1."""

    level: int
    H_sharp: OneVarSeries
    H_flat: OneVarSeries
    convention: Convention = DEFAULT_CONVENTION


def h_row(p: int, a_p: int, n: int, convention: Convention = DEFAULT_CONVENTION,
          phi_sign: int = 1, modulus_exponent: int = DEFAULT_PRECISION) -> HRow:
    """First-row pair at level n.  Under the default (descending) convention
    the pair satisfies H_n = a_p H_{n-1} + Phi_{n-1} H_{n-2} with
    (H_sharp_1, H_flat_1) = (a_p, 1)."""
    _validate_ap(p, a_p)
    if n < 1:
        raise ValueError("n must be >= 1")
    const = lambda c: OneVarSeries([c], p, modulus_exponent)
    if convention.order == "desc":
        prev2 = (const(1), const(0))
        cur = (const(a_p), const(1))
        for k in range(2, n + 1):
            phi = phi_poly(p, k - 1, modulus_exponent) * phi_sign
            cur, prev2 = (
                (cur[0] * a_p + phi * prev2[0], cur[1] * a_p + phi * prev2[1]),
                cur,
            )
    else:
        x, y = const(a_p), const(1)
        for k in range(2, n + 1):
            phi = phi_poly(p, k, modulus_exponent) * phi_sign
            x, y = x * a_p + phi * y, x
        cur = (x, y)
    sharp, flat = cur if convention.pairing == "standard" else (cur[1], cur[0])
    return HRow(n, sharp, flat, convention)


def h_valuation_direct(p: int, a_p: int, n: int,
                       convention: Convention = DEFAULT_CONVENTION,
                       modulus_exponent: int = DEFAULT_PRECISION,
                       guard: int = DEFAULT_GUARD) -> tuple[Valuation, Valuation]:
    """Exact valuations of (H_sharp, H_flat) at the canonical character of
    conductor p^(n+1), i.e. gamma -> primitive p^n-th root of unity."""
    row = h_row(p, a_p, n, convention, modulus_exponent=modulus_exponent)
    vs = cyclo_valuation(eval_one_var_at_root(row.H_sharp, 1, n, guard), guard)
    vf = cyclo_valuation(eval_one_var_at_root(row.H_flat, 1, n, guard), guard)
    return (vs, vf)


def h_valuation_formula(p: int, n: int) -> tuple[Valuation, Valuation]:
    """The closed-form valuation table (stated for ord_p(a_p) = 1):

        sharp: n odd:  1 + sum_{i=1}^{(n-1)/2} p^(1-2i)
               n even:     sum_{i=1}^{n/2}     p^(1-2i)
        flat:  n odd:      sum_{i=1}^{(n-1)/2} p^(-2i)
               n even: 1 + sum_{i=1}^{n/2-1}   p^(-2i)
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n % 2 == 1:
        sharp = 1 + sum(Fraction(1, p ** (2 * i - 1)) for i in range(1, (n - 1) // 2 + 1))
        flat = Fraction(0) + sum(Fraction(1, p ** (2 * i)) for i in range(1, (n - 1) // 2 + 1))
    else:
        sharp = Fraction(0) + sum(Fraction(1, p ** (2 * i - 1)) for i in range(1, n // 2 + 1))
        flat = 1 + sum(Fraction(1, p ** (2 * i)) for i in range(1, n // 2))
    return (Valuation(sharp), Valuation(flat))


@dataclass(frozen=True)
class ConventionResolution:
    """Outcome of the build-time convention search against the closed-form
    table.  When no candidate matches every level, `chosen` is the candidate
    with the most matching levels and `irreconcilable` lists the exact
    computed-vs-formula pairs for its failing levels."""

    prime: int
    a_p: int
    chosen: Convention
    matched_levels: tuple[int, ...]
    irreconcilable: dict[int, tuple[tuple[Valuation, Valuation], tuple[Valuation, Valuation]]]
    per_candidate: dict[Convention, tuple[int, ...]] = field(default_factory=dict)

    @property
    def fully_resolved(self) -> bool:
        return not self.irreconcilable


def resolve_convention(p: int, a_p: int, n_max: int = 6,
                       modulus_exponent: int = DEFAULT_PRECISION,
                       guard: int = DEFAULT_GUARD) -> ConventionResolution:
    _validate_ap(p, a_p)
    formula = {n: h_valuation_formula(p, n) for n in range(1, n_max + 1)}
    direct: dict[Convention, dict[int, tuple[Valuation, Valuation]]] = {}
    per_candidate: dict[Convention, tuple[int, ...]] = {}
    for conv in CANDIDATE_CONVENTIONS:
        table = {
            n: h_valuation_direct(p, a_p, n, conv, modulus_exponent, guard)
            for n in range(1, n_max + 1)
        }
        direct[conv] = table
        per_candidate[conv] = tuple(n for n in table if table[n] == formula[n])
    full = [c for c in CANDIDATE_CONVENTIONS if len(per_candidate[c]) == n_max]
    if len(full) == 1:
        chosen = full[0]
    else:
        # no (or ambiguous) full match: deterministic best candidate
        chosen = max(CANDIDATE_CONVENTIONS,
                     key=lambda c: (len(per_candidate[c]), c == DEFAULT_CONVENTION))
    irreconcilable = {
        n: (direct[chosen][n], formula[n])
        for n in range(1, n_max + 1)
        if direct[chosen][n] != formula[n]
    }
    return ConventionResolution(p, a_p, chosen, per_candidate[chosen],
                                irreconcilable, per_candidate)


# ----------------------------------------------------------------------
# truncations of the matrix limit
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ScaledMatrix:
    """2x2 integral-series matrix with a global exponent shift:
    value = p^(-shift) * entries.  Canonical form strips common p-content
    from the entries into the shift (shift >= 0)."""

    prime: int
    shift: int
    entries: tuple[tuple[OneVarSeries, OneVarSeries], tuple[OneVarSeries, OneVarSeries]]

    def evaluate(self, exponent: int, level: int) -> "EvaluatedScaledMatrix":
        vals = tuple(
            tuple(eval_one_var_at_root(e, exponent, level) for e in row)
            for row in self.entries
        )
        return EvaluatedScaledMatrix(self.prime, self.shift, vals)


@dataclass(frozen=True)
class EvaluatedScaledMatrix:
    prime: int
    shift: int
    values: tuple[tuple[CyclotomicNumber, CyclotomicNumber], tuple[CyclotomicNumber, CyclotomicNumber]]

    def entry_valuations(self) -> list[list[Fraction | None]]:
        """Entry valuations as exact rationals (may be negative); None when
        numerically zero."""
        out = []
        for row in self.values:
            line = []
            for v in row:
                raw = v.raw_valuation()
                line.append(None if raw is None else raw.fraction - self.shift)
            out.append(line)
        return out

    def difference_valuations(self, other: "EvaluatedScaledMatrix") -> list[list[Fraction | None]]:
        """Valuations of self - other, entrywise, aligning the shifts."""
        p = self.prime
        emax = max(self.shift, other.shift)
        out = []
        for i in range(2):
            line = []
            for j in range(2):
                a = self.values[i][j] * p ** (emax - self.shift)
                b = other.values[i][j] * p ** (emax - other.shift)
                raw = (a - b).raw_valuation()
                line.append(None if raw is None else raw.fraction - emax)
            out.append(line)
        return out


def _mat_mul(A, B):
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            row.append(A[i][0] * B[0][j] + A[i][1] * B[1][j])
        out.append(tuple(row))
    return tuple(out)


def mlog_truncation(p: int, a_p: int, k: int, phi_sign: int = -1,
                    modulus_exponent: int = DEFAULT_PRECISION) -> ScaledMatrix:
    """A^(k+1) C_k ... C_1 in canonical scaled form (k = 0 gives A).

    Internally computed at precision N + k + 1 so that content stripping
    never eats into the requested N digits.
    """
    _validate_ap(p, a_p)
    if k < 0:
        raise ValueError("k must be >= 0")
    work_N = modulus_exponent + k + 1
    const = lambda c: OneVarSeries([c], p, work_N)
    a_int = ((const(0), const(-1)), (const(p), const(a_p)))
    prod = ((const(1), const(0)), (const(0), const(1)))
    for j in range(k, 0, -1):
        cj = c_matrix(p, a_p, j, phi_sign, work_N).entries
        prod = _mat_mul(prod, cj) if j != k else cj
    for _ in range(k + 1):
        prod = _mat_mul(a_int, prod)
    shift = k + 1
    content = None
    for row in prod:
        for e in row:
            for c in e.coeffs:
                v = intpoly.vp(c, p)
                if v is not None and (content is None or v < content):
                    content = v
    strip = min(content if content is not None else shift, shift)
    final = []
    for row in prod:
        new_row = []
        for e in row:
            coeffs = [c // p**strip for c in e.coeffs]
            new_row.append(OneVarSeries(coeffs, p, modulus_exponent))
        final.append(tuple(new_row))
    return ScaledMatrix(p, shift - strip, tuple(final))
