"""JSON and TSV rendering of analyses.

Reports are plain dicts built in a fixed key order so that repeated runs
serialise byte-identically.  Residuals are the only floating values and are
rendered as strings with three significant digits.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np

from .codes import (
    Code,
    check_weight_form,
    dual_hamming_distance,
    is_projective,
    is_proper_hom,
    is_regular,
    two_weight_profile,
)
from .graph import SrgReport


def residual(x: float) -> str:
    return f"{x:.3g}"


def jsonable(obj):
    if isinstance(obj, dict):
        return {str(jsonable(k)) if not isinstance(k, str) else k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf"
        return obj
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    return obj


def dumps(report: dict) -> str:
    return json.dumps(jsonable(report), indent=2) + "\n"


def distribution(d: dict[int, int] | None):
    if d is None:
        return None
    return {str(w): m for w, m in sorted(d.items())}


def weight_form_dict(wf) -> dict:
    return {
        "holds": wf.holds,
        "t": wf.t,
        "u": wf.u,
        "divisor_condition": wf.divisor_holds,
        "d": wf.d,
        "t_prime": wf.t_prime,
    }


def code_report(C: Code, warnings: list[str] | None = None) -> dict:
    spec = C.spec
    reg = is_regular(C.generator, spec)
    proj = is_projective(C.generator, spec)
    profile = two_weight_profile(C)
    dd = dual_hamming_distance(C)
    out = {
        "ring": {"p": spec.p, "k": spec.k, "q": spec.q},
        "length": C.n,
        "rows": C.ell,
        "generator": C.generator.tolist(),
        "size": C.size,
        "shape": list(C.form.shape),
        "dual_size": spec.q**C.n // C.size,
        "dual_distance": dd,
        "hamming_distribution": distribution(C.hamming_distribution),
        "hom_distribution": distribution(C.hom_distribution),
        "regular": {"holds": reg.holds, "first_violating_column": reg.witness},
        "projective": {"holds": proj.holds, "first_violating_pair": proj.witness},
        "proper": is_proper_hom(C),
        "two_weight": list(profile) if profile else None,
        "weight_form": weight_form_dict(check_weight_form(*profile, C.size, spec.p)) if profile else None,
    }
    if warnings:
        out["warnings"] = list(warnings)
    return out


def srg_dict(rep: SrgReport) -> dict:
    m = rep.measurement
    return {
        "vertices": rep.vertices,
        "degree": rep.degree,
        "degree_formula": {
            "holds": rep.degree_formula.holds,
            "measured": rep.degree_formula.measured,
            "expected": rep.degree_formula.expected,
        },
        "verdict": rep.verdict,
        "parameters": list(m.parameters) if m and m.parameters else None,
        "witness": (m.witness if m and not m.strongly_regular else None),
        "reason": (m.reason if m and not m.strongly_regular else None),
        "pair_scan": m.pair_scan if m else None,
        "spectrum": {
            "closed_form": {str(e): c for e, c in rep.closed_form_spectrum.items()},
            "simple_graph": {str(e): c for e, c in rep.simple_spectrum.items()},
            "closed_form_residual": residual(rep.closed_form_residual),
            "simple_graph_residual": residual(rep.simple_residual),
            "restricted_source": rep.eigenvalue_source,
            "restricted": list(rep.restricted) if rep.restricted else None,
        },
        "relations": rep.relations,
        "dual_weights": list(rep.dual_weights) if rep.dual_weights else None,
        "lambda_mu_identities": rep.lambda_mu,
        "lambda_mu_note": rep.lambda_mu_note,
        "lambda_comparison": rep.lambda_comparison,
        "notes": rep.notes,
    }


def flatten(report: dict, prefix: str = "") -> list[tuple[str, str]]:
    rows = []
    for key, val in jsonable(report).items():
        name = f"{prefix}{key}"
        if isinstance(val, dict) and val:
            rows.extend(flatten(val, name + "."))
        else:
            rows.append((name, json.dumps(val) if not isinstance(val, str) else val))
    return rows


def key_value_tsv(report: dict) -> str:
    return "".join(f"{k}\t{v}\n" for k, v in flatten(report))


def table_tsv(header: list[str], rows: list[list]) -> str:
    lines = ["\t".join(header)]
    lines.extend("\t".join(str(jsonable(c)) for c in row) for row in rows)
    return "\n".join(lines) + "\n"
