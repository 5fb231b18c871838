# src/reports.py - Assemble and render the full analysis report for one fan

import json
import logging
from fractions import Fraction
from typing import Dict, List, Optional

import pandas as pd

from config import TOOL_NAME, __version__
from fan import Fan, validate
from gamma2 import Gamma2Report, classify_gamma2
from singularities import gorenstein_report
from utils import fan_digest
from walls import is_fano

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def rational(value: Fraction) -> str:
    """Exact p/q text (integers without a denominator)"""
    return str(Fraction(value))


def _gamma2_section(report: Gamma2Report) -> Dict:
    return {
        "verdict": report.verdict,
        "values": [
            {
                "label": e.label,
                "tau": list(e.tau.ray_indices),
                "value": rational(e.value),
                "sign": e.sign,
                "method": e.method,
                "exact": None if e.exact is None else rational(e.exact),
            }
            for e in report.entries
        ],
        "violations": list(report.violations),
        "reason": report.reason,
    }


def build_report(fan: Fan, deep: Optional[bool] = None, samples: Optional[int] = None,
                 seed: Optional[int] = None) -> Dict:
    """Structural, singularity, Fano and gamma_2 sections plus provenance, as plain JSON data"""
    validation = validate(fan, deep=deep, samples=samples, seed=seed)
    report = {
        "schema_version": SCHEMA_VERSION,
        "provenance": {"tool": TOOL_NAME, "version": __version__, "input_sha256": fan_digest(fan)},
        "structural": {
            "valid": validation.valid,
            "dim": fan.dim,
            "rho": fan.picard_number,
            "n_rays": fan.n_rays,
            "n_max_cones": len(fan.max_cones),
            "deep": validation.deep,
            "failures": [{"kind": f.kind, "detail": f.detail, "cones": [list(c) for c in f.cones]}
                         for f in validation.failures],
        },
        "singularity": None,
        "fano": None,
        "gamma2": None,
    }
    if not validation.valid:
        return report

    singularities = gorenstein_report(fan)
    report["singularity"] = {
        "terminal": singularities.terminal,
        "gorenstein": singularities.gorenstein,
        "gorenstein_index": singularities.gorenstein_index,
        "singular_cones": [list(c.ray_indices) for c in singularities.singular_cones],
        "cones": [
            {"cone": list(c.cone.ray_indices), "multiplicity": c.multiplicity, "terminal": c.terminal,
             "dual_vector": [rational(x) for x in c.dual_vector]}
            for c in singularities.cones
        ],
    }
    fano = is_fano(fan)
    report["fano"] = {"is_fano": fano.is_fano, "min_wall_sum": fano.min_wall_sum}
    report["gamma2"] = _gamma2_section(classify_gamma2(fan))
    logger.debug("report for %s: verdict %s", report["provenance"]["input_sha256"][:12],
                 report["gamma2"]["verdict"])
    return report


def has_violations(report: Dict) -> bool:
    return bool(report.get("gamma2") and report["gamma2"]["violations"])


def render_json(report: Dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _table(rows: List[Dict]) -> str:
    if not rows:
        return "  (none)"
    return pd.DataFrame(rows).to_string(index=False)


def render_text(report: Dict) -> str:
    s = report["structural"]
    lines = [f"📊 Fan: d={s['dim']}, ρ={s['rho']}, {s['n_rays']} rays, {s['n_max_cones']} maximal cones"]
    if not s["valid"]:
        lines.append("❌ Invalid fan:")
        lines.append(_table(s["failures"]))
        return "\n".join(lines) + "\n"
    lines.append(f"✅ Valid complete simplicial fan (deep check: {'on' if s['deep'] else 'off'})")

    sing = report["singularity"]
    lines.append(f"🔍 Terminal: {sing['terminal']}   Gorenstein index: {sing['gorenstein_index']}")
    lines.append("   Singular cones: " + (", ".join(str(c) for c in sing["singular_cones"]) or "none"))
    lines.append(f"🔍 Fano: {report['fano']['is_fano']} (min wall sum {report['fano']['min_wall_sum']})")

    g = report["gamma2"]
    lines.append(f"γ₂ verdict: {g['verdict']}")
    if g["values"]:
        lines.append(_table([{k: v for k, v in e.items() if k != "exact"} for e in g["values"]]))
    if g["reason"]:
        lines.append(f"⚠️  {g['reason']}")
    for v in g["violations"]:
        lines.append(f"❌ {v}")
    return "\n".join(lines) + "\n"
