"""File formats: series, module presentations, Coleman scenarios, reports.

All numbers serialize as decimal strings (coefficients) or exact "num/den"
strings (valuations); output is byte-deterministic (sorted keys, fixed
separators, lexicographic term order) and files are written via
temp-then-rename so failures never leave partial output.
"""
from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction

from .config import DEFAULT_PRECISION
from .errors import InvalidInput
from .estimator import (CLASS_LABELS, PRIME_LABELS, SIGNS, ColemanScenario,
                        RankReport, col_key)
from .padic import Valuation
from .ranks import LambdaPresentation
from .series import OneVarSeries, TwoVarSeries


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".padicrank-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fraction_str(v: Valuation | Fraction | None) -> str:
    if v is None:
        return "inf"
    if isinstance(v, Valuation):
        if v.is_infinite:
            return "inf"
        v = v.fraction
    return f"{v.numerator}/{v.denominator}"


# ----------------------------------------------------------------------
# series
# ----------------------------------------------------------------------

def series_to_obj(s: OneVarSeries | TwoVarSeries) -> dict:
    if isinstance(s, OneVarSeries):
        return {
            "p": s.prime,
            "precision": s.modulus_exponent,
            "vars": ["T"],
            "terms": [[i, str(c)] for i, c in enumerate(s.coeffs) if c],
        }
    return {
        "p": s.prime,
        "precision": s.modulus_exponent,
        "vars": ["Tp", "Tq"],
        "terms": [[i, j, str(c)] for i, j, c in s.sorted_terms()],
    }


def series_from_obj(obj: dict) -> OneVarSeries | TwoVarSeries:
    try:
        p = int(obj["p"])
        precision = int(obj.get("precision", DEFAULT_PRECISION))
        variables = list(obj["vars"])
        terms = obj["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed series object: {exc}") from exc
    if variables == ["T"]:
        coeffs: dict[int, int] = {}
        for entry in terms:
            if len(entry) != 2:
                raise InvalidInput(f"one-variable term must be [i, coeff]: {entry}")
            i, c = int(entry[0]), int(str(entry[1]))
            coeffs[i] = coeffs.get(i, 0) + c
        top = max(coeffs, default=-1)
        dense = [coeffs.get(i, 0) for i in range(top + 1)]
        return OneVarSeries(dense, p, precision)
    if variables == ["Tp", "Tq"]:
        out: dict[tuple[int, int], int] = {}
        for entry in terms:
            if len(entry) != 3:
                raise InvalidInput(f"two-variable term must be [i, j, coeff]: {entry}")
            key = (int(entry[0]), int(entry[1]))
            out[key] = out.get(key, 0) + int(str(entry[2]))
        return TwoVarSeries(out, p, precision)
    raise InvalidInput(f"unsupported variable list {variables}")


def load_series(path: str) -> OneVarSeries | TwoVarSeries:
    return series_from_obj(_load_json(path))


# ----------------------------------------------------------------------
# module presentations
# ----------------------------------------------------------------------

def presentation_to_obj(M: LambdaPresentation) -> dict:
    return {
        "p": M.prime,
        "precision": M.modulus_exponent,
        "generators": M.generators,
        "relations": [[series_to_obj(s) for s in rel] for rel in M.relations],
    }


def presentation_from_obj(obj: dict) -> LambdaPresentation:
    try:
        p = int(obj["p"])
        precision = int(obj.get("precision", DEFAULT_PRECISION))
        g = int(obj["generators"])
        raw_relations = obj.get("relations", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed presentation: {exc}") from exc
    relations = []
    for rel in raw_relations:
        vec = []
        for entry in rel:
            s = series_from_obj(entry)
            if isinstance(s, OneVarSeries):
                s = TwoVarSeries.from_one_var(s, "Tp")
            if (s.prime, s.modulus_exponent) != (p, precision):
                raise InvalidInput("relation series context differs from header")
            vec.append(s)
        relations.append(tuple(vec))
    try:
        return LambdaPresentation(p, precision, g, tuple(relations))
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc


def load_presentation(path: str) -> LambdaPresentation:
    return presentation_from_obj(_load_json(path))


# ----------------------------------------------------------------------
# scenarios
# ----------------------------------------------------------------------

def scenario_to_obj(s: ColemanScenario) -> dict:
    return {
        "p": s.prime,
        "ap": s.a_p,
        "precision": s.modulus_exponent,
        "twist": s.twist,
        "col": {key: series_to_obj(series) for key, series in s.col.items()},
    }


def scenario_from_obj(obj: dict) -> ColemanScenario:
    try:
        p = int(obj["p"])
        a_p = int(obj["ap"])
        precision = int(obj.get("precision", DEFAULT_PRECISION))
        twist = bool(obj.get("twist", False))
        col_raw = obj["col"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed scenario: {exc}") from exc
    col = {}
    for pl in PRIME_LABELS:
        for sg in SIGNS:
            for cl in CLASS_LABELS:
                key = col_key(pl, sg, cl)
                if key not in col_raw:
                    raise InvalidInput(f"scenario is missing Coleman series {key!r}")
                s = series_from_obj(col_raw[key])
                if isinstance(s, OneVarSeries):
                    s = TwoVarSeries.from_one_var(s, "Tp" if pl == "p" else "Tq")
                if (s.prime, s.modulus_exponent) != (p, precision):
                    raise InvalidInput(f"series {key!r} context differs from header")
                col[key] = s
    try:
        return ColemanScenario(p, a_p, col, twist, precision)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc


def load_scenario(path: str) -> ColemanScenario:
    return scenario_from_obj(_load_json(path))


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------

def rank_report_to_obj(report: RankReport) -> dict:
    return {
        "p": report.prime,
        "ap": report.a_p,
        "twist": report.twist,
        "max_C": report.max_C,
        "growth_constant": fraction_str(report.growth_constant),
        "precision_flagged": report.precision_flagged,
        "baseline": "B_0 = 0; the level-zero offset is reported as 0 and not asserted",
        "levels": [
            {
                "n": lv.n,
                "C_n": lv.C_n,
                "jump_bound": lv.jump_bound,
                "B_n": lv.B_n,
                "xi": [t.literal() for t in lv.xi],
                "boundary_excluded": [t.literal() for t in lv.boundary_excluded],
                "indeterminate": [t.literal() for t in lv.indeterminate],
            }
            for lv in report.levels
        ],
    }


def rank_report_to_csv(report: RankReport) -> str:
    lines = ["n,C_n,jump_bound,B_n"]
    for lv in report.levels:
        lines.append(f"{lv.n},{lv.C_n},{lv.jump_bound},{lv.B_n}")
    return "\n".join(lines) + "\n"


def _load_json(path: str) -> dict:
    try:
        with open(path) as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
