"""Exact p-adic arithmetic over two-variable Iwasawa towers: cyclotomic
rings with certified valuations, tower polynomials and character evaluation,
logarithm-matrix valuation tables, coinvariant ranks, and the cumulative
O(p^n) rank bound driven by Coleman-image determinants."""

from .characters import CharacterClass, class_degree, enumerate_classes, new_classes
from .config import DEFAULT_GUARD, DEFAULT_PRECISION, tau
from .errors import (InvalidInput, NotAUnitSeries, PadicRankError,
                     PrecisionExhausted, SizeCapExceeded,
                     TorsionAssumptionViolated, TruncationInsufficient)
from .estimator import (ColemanScenario, RankReport, VanishingVerdict,
                        count_xi, cumulative_bound, det_col,
                        summand_valuations, underline_col_det_at,
                        vanishing_test)
from .logmatrix import (CMatrix, Convention, HRow, ScaledMatrix, c_matrix,
                        h_row, h_valuation_direct, h_valuation_formula,
                        mlog_truncation, resolve_convention)
from .padic import (CyclotomicNumber, PadicInt, Valuation, cyclo_embed,
                    cyclo_poly, cyclo_valuation, numeric_valuation)
from .ranks import (LambdaPresentation, RankFit, coinv_rank_charsum,
                    coinv_rank_direct, harris_fit)
from .series import (OneVarSeries, ProfileFit, TwoVarSeries, eval_at_character,
                     omega, omega_pm, phi_poly, valuation_profile,
                     weierstrass_prepare)

__version__ = "0.1.0"

__all__ = [
    "CMatrix", "CharacterClass", "ColemanScenario", "Convention",
    "CyclotomicNumber", "HRow", "InvalidInput", "LambdaPresentation",
    "NotAUnitSeries", "OneVarSeries", "PadicInt", "PadicRankError",
    "PrecisionExhausted", "ProfileFit", "RankFit", "RankReport",
    "ScaledMatrix", "SizeCapExceeded", "TorsionAssumptionViolated",
    "TruncationInsufficient", "TwoVarSeries", "Valuation", "VanishingVerdict",
    "DEFAULT_GUARD", "DEFAULT_PRECISION", "c_matrix", "class_degree",
    "coinv_rank_charsum", "coinv_rank_direct", "count_xi", "cumulative_bound",
    "cyclo_embed", "cyclo_poly", "cyclo_valuation", "det_col",
    "enumerate_classes", "eval_at_character", "h_row", "h_valuation_direct",
    "h_valuation_formula", "harris_fit", "mlog_truncation", "new_classes",
    "numeric_valuation", "omega", "omega_pm", "phi_poly", "resolve_convention",
    "summand_valuations", "tau", "underline_col_det_at", "valuation_profile",
    "vanishing_test", "weierstrass_prepare",
]
