"""From eight Coleman-image series, evaluate the four determinants at each
character class, decide vanishing, count the exceptional set Xi_n per level,
and accumulate the O(p^n) rank bound.

Per class theta of orders (p^r, p^s), both nontrivial, the tested quantity
is the four-term sum

    sum over signs  H_{p,o,r}(w1) * H_{q,b,s}(w2) * detCol_{ob}(theta),

which equals the determinant of the 2x2 matrix of per-prime combined
Coleman values.  Classes with a trivial coordinate (r = 0 or s = 0) are
outside the criterion's reach; they are excluded from Xi and surfaced
separately in the report.

The optional twist multiplies the prime-p combination by w2^-(r+1) and the
prime-q combination by w1^-(s+1) (a group-element translation); this scales
values by roots of unity and leaves every valuation and verdict unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import CharacterClass, class_degree, new_classes
from .config import DEFAULT_GUARD, SENSITIVITY_BAND, tau
from .errors import TorsionAssumptionViolated
from .logmatrix import DEFAULT_CONVENTION, Convention, h_row
from .padic import CyclotomicNumber, Valuation
from .parallel import ordered_map
from .series import TwoVarSeries, eval_one_var_at_root, eval_two_var_at_roots

PRIME_LABELS = ("p", "q")
SIGNS = ("sharp", "flat")
CLASS_LABELS = ("c1", "c2")

NONVANISHING = "nonvanishing"
VANISHING_RANK_1 = "vanishing_rank_1"
VANISHING_RANK_2 = "vanishing_rank_2"


def col_key(prime_label: str, sign: str, cls: str) -> str:
    return f"{prime_label}_{sign}_{cls}"


class ColemanScenario:
    """Eight two-variable Coleman-image series plus (p, a_p) and the twist
    switch.  Load-time validity: at least one of the four determinants is a
    nonzero series within truncation."""

    __slots__ = ("prime", "a_p", "modulus_exponent", "twist", "col", "convention")

    def __init__(self, prime: int, a_p: int, col: dict[str, TwoVarSeries],
                 twist: bool = False, modulus_exponent: int | None = None,
                 convention: Convention = DEFAULT_CONVENTION):
        if a_p == 0 or a_p % prime != 0:
            raise ValueError(f"a_p must be a nonzero multiple of p, got {a_p}")
        keys = {col_key(pl, sg, cl) for pl in PRIME_LABELS for sg in SIGNS for cl in CLASS_LABELS}
        if set(col) != keys:
            missing = sorted(keys - set(col))
            extra = sorted(set(col) - keys)
            raise ValueError(f"scenario needs exactly the eight Coleman series; "
                             f"missing {missing}, extra {extra}")
        exps = {s.modulus_exponent for s in col.values()}
        if modulus_exponent is not None:
            exps.add(modulus_exponent)
        primes = {s.prime for s in col.values()} | {prime}
        if len(exps) != 1 or len(primes) != 1:
            raise ValueError("Coleman series must share one (p, N) context")
        self.prime = prime
        self.a_p = a_p
        self.modulus_exponent = exps.pop()
        self.twist = twist
        self.col = dict(col)
        self.convention = convention
        if all(det_col(self, o, b).is_zero() for o in SIGNS for b in SIGNS):
            raise TorsionAssumptionViolated(
                "all four Coleman determinants vanish within truncation")

    def series(self, prime_label: str, sign: str, cls: str) -> TwoVarSeries:
        return self.col[col_key(prime_label, sign, cls)]


def det_col(scenario: ColemanScenario, circ: str, bullet: str) -> TwoVarSeries:
    """Col_{p,circ}(c1) Col_{q,bullet}(c2) - Col_{p,circ}(c2) Col_{q,bullet}(c1)."""
    if circ not in SIGNS or bullet not in SIGNS:
        raise ValueError("signs must be 'sharp' or 'flat'")
    return (
        scenario.series("p", circ, "c1") * scenario.series("q", bullet, "c2")
        - scenario.series("p", circ, "c2") * scenario.series("q", bullet, "c1")
    )


@dataclass(frozen=True)
class VanishingVerdict:
    """Per-class summand valuations (None marks a numerically zero
    determinant value), the vanishing verdict, and whether the non-zero
    summand valuations are pairwise distinct."""

    theta: CharacterClass
    summands: dict[tuple[str, str], Valuation | None]
    verdict: str | None
    distinct: bool
    indeterminate: bool = False


class _ClassContext:
    """All evaluated pieces of a scenario at one character class."""

    def __init__(self, scenario: ColemanScenario, theta: CharacterClass,
                 guard: int = DEFAULT_GUARD):
        if theta.r < 1 or theta.s < 1:
            raise ValueError(
                "the vanishing criterion needs both coordinates ramified "
                f"(r, s >= 1), got {theta.literal()}"
            )
        p, N = scenario.prime, scenario.modulus_exponent
        a, b = theta.exponents()
        level = theta.level
        self.theta = theta
        self.guard = guard
        row_p = h_row(p, scenario.a_p, theta.r, scenario.convention, modulus_exponent=N)
        row_q = h_row(p, scenario.a_p, theta.s, scenario.convention, modulus_exponent=N)
        self.h_p = {
            "sharp": eval_one_var_at_root(row_p.H_sharp, a, level, guard),
            "flat": eval_one_var_at_root(row_p.H_flat, a, level, guard),
        }
        self.h_q = {
            "sharp": eval_one_var_at_root(row_q.H_sharp, b, level, guard),
            "flat": eval_one_var_at_root(row_q.H_flat, b, level, guard),
        }
        self.colvals = {
            (pl, sg, cl): eval_two_var_at_roots(scenario.series(pl, sg, cl), a, b, level, guard)
            for pl in PRIME_LABELS for sg in SIGNS for cl in CLASS_LABELS
        }
        self.detvals = {
            (o, bu): eval_two_var_at_roots(det_col(scenario, o, bu), a, b, level, guard)
            for o in SIGNS for bu in SIGNS
        }
        if scenario.twist:
            pm = p**level
            self.twist_p = CyclotomicNumber.zeta_power(-b * (theta.r + 1) % pm, p, level, N)
            self.twist_q = CyclotomicNumber.zeta_power(-a * (theta.s + 1) % pm, p, level, N)
        else:
            one = CyclotomicNumber.from_int(1, p, level, N)
            self.twist_p = one
            self.twist_q = one

    def summand(self, circ: str, bullet: str) -> CyclotomicNumber:
        return (self.h_p[circ] * self.h_q[bullet] * self.detvals[(circ, bullet)]
                * self.twist_p * self.twist_q)

    def four_term_sum(self) -> CyclotomicNumber:
        total = None
        for o in SIGNS:
            for bu in SIGNS:
                term = self.summand(o, bu)
                total = term if total is None else total + term
        return total

    def underline_value(self, prime_label: str, cls: str) -> CyclotomicNumber:
        h = self.h_p if prime_label == "p" else self.h_q
        acc = None
        for sg in SIGNS:
            term = h[sg] * self.colvals[(prime_label, sg, cls)]
            acc = term if acc is None else acc + term
        twist = self.twist_p if prime_label == "p" else self.twist_q
        return acc * twist


def underline_matrix_at(scenario: ColemanScenario, theta: CharacterClass,
                        guard: int = DEFAULT_GUARD):
    """2x2 matrix of per-prime combined Coleman values, rows indexed by the
    classes c1, c2; its determinant equals the four-term sum."""
    ctx = _ClassContext(scenario, theta, guard)
    return tuple(
        (ctx.underline_value("p", cl), ctx.underline_value("q", cl))
        for cl in CLASS_LABELS
    )


def underline_col_det_at(scenario: ColemanScenario, theta: CharacterClass,
                         guard: int = DEFAULT_GUARD) -> CyclotomicNumber:
    """The four-term sum evaluated at theta."""
    return _ClassContext(scenario, theta, guard).four_term_sum()


def _numeric(value: CyclotomicNumber, guard: int) -> Valuation | None:
    v = value.raw_valuation()
    if v is None or v >= Valuation(tau(value.modulus_exponent, guard)):
        return None
    return v


def summand_valuations(scenario: ColemanScenario, theta: CharacterClass,
                       guard: int = DEFAULT_GUARD) -> VanishingVerdict:
    """Valuations of the four summands (zero-marker None where the summand
    is numerically zero) and the pairwise-distinctness flag; verdict unset."""
    ctx = _ClassContext(scenario, theta, guard)
    summands = {
        (o, bu): _numeric(ctx.summand(o, bu), guard)
        for o in SIGNS for bu in SIGNS
    }
    finite = [v for v in summands.values() if v is not None]
    distinct = len({v.fraction for v in finite}) == len(finite)
    return VanishingVerdict(theta, summands, None, distinct)


def vanishing_test(scenario: ColemanScenario, theta: CharacterClass,
                   guard: int = DEFAULT_GUARD) -> VanishingVerdict:
    """Nonvanishing when the four-term sum has valuation below tau; else
    vanishing with rank 2 exactly when both per-class value vectors are
    numerically zero.  A valuation inside the guard band cannot be decided
    and is counted pessimistically (rank 2) with the indeterminate flag."""
    ctx = _ClassContext(scenario, theta, guard)
    partial = summand_valuations(scenario, theta, guard)
    total = ctx.four_term_sum()
    v = total.raw_valuation()
    threshold = tau(total.modulus_exponent, guard)
    if v is not None and v < Valuation(threshold - SENSITIVITY_BAND):
        return VanishingVerdict(theta, partial.summands, NONVANISHING, partial.distinct)
    indeterminate = v is not None and v < Valuation(threshold)
    vectors_zero = all(
        _numeric(ctx.underline_value(pl, cl), guard) is None
        for pl in PRIME_LABELS for cl in CLASS_LABELS
    )
    if indeterminate:
        verdict = VANISHING_RANK_2
    else:
        verdict = VANISHING_RANK_2 if vectors_zero else VANISHING_RANK_1
    return VanishingVerdict(theta, partial.summands, verdict, partial.distinct, indeterminate)


def count_xi(scenario: ColemanScenario, n: int, guard: int = DEFAULT_GUARD,
             threads: int = 1) -> list[CharacterClass]:
    """The classes new at level n (both coordinates ramified) where the
    determinant vanishes, in canonical order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    interior = [t for t in new_classes(scenario.prime, n) if t.r >= 1 and t.s >= 1]
    verdicts = ordered_map(lambda t: vanishing_test(scenario, t, guard),
                           interior, threads)
    return [t for t, v in zip(interior, verdicts) if v.verdict != NONVANISHING]


@dataclass(frozen=True)
class LevelReport:
    n: int
    xi: tuple[CharacterClass, ...]
    C_n: int
    jump_bound: int
    B_n: int
    boundary_excluded: tuple[CharacterClass, ...]
    indeterminate: tuple[CharacterClass, ...] = ()


@dataclass(frozen=True)
class RankReport:
    """Per-level exceptional sets and the accumulated bound B_n, normalized
    to B_0 = 0 (the unknowable level-zero offset is not asserted)."""

    prime: int
    a_p: int
    twist: bool
    levels: tuple[LevelReport, ...]
    max_C: int
    growth_constant: Fraction
    precision_flagged: bool = False

    def level(self, n: int) -> LevelReport:
        return self.levels[n - 1]


def cumulative_bound(scenario: ColemanScenario, n_max: int,
                     guard: int = DEFAULT_GUARD, threads: int = 1) -> RankReport:
    """B_n = B_{n-1} + sum_{theta in Xi_n} 2 deg(theta), with the smallest
    constant C such that B_n <= C * p^n over the computed levels."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    p = scenario.prime
    levels = []
    B = 0
    flagged = False
    for n in range(1, n_max + 1):
        boundary = [t for t in new_classes(p, n) if t.r < 1 or t.s < 1]
        interior = [t for t in new_classes(p, n) if t.r >= 1 and t.s >= 1]
        verdicts = ordered_map(lambda t: vanishing_test(scenario, t, guard),
                               interior, threads)
        xi = []
        indet = []
        for theta, verdict in zip(interior, verdicts):
            if verdict.verdict != NONVANISHING:
                xi.append(theta)
                if verdict.indeterminate:
                    indet.append(theta)
                    flagged = True
        jump = sum(2 * class_degree(t) for t in xi)
        B += jump
        levels.append(LevelReport(n, tuple(xi), len(xi), jump, B,
                                  tuple(boundary), tuple(indet)))
    growth = max((Fraction(lv.B_n, p**lv.n) for lv in levels), default=Fraction(0))
    return RankReport(p, scenario.a_p, scenario.twist, tuple(levels),
                      max((lv.C_n for lv in levels), default=0), growth, flagged)
