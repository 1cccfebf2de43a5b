"""Full verification report for one model matrix or a CSS pair."""

from __future__ import annotations

from .gf2 import GirthAtLeast, expand, gf2_product_is_zero, gf2_rank, tanner_girth
from .model import ModelMatrix, girth6_violations, regularity, twisted_violations

DEFAULT_GIRTH_CAP = 12


def _girth_out(g) -> int | str:
    return str(g) if isinstance(g, GirthAtLeast) else int(g)


def _single(mc: ModelMatrix, girth_cap: int) -> tuple[dict, object]:
    h = expand(mc)
    viol = girth6_violations(mc)
    reg = regularity(mc)
    circ = mc.P if mc.P > 1 else None
    rep = {
        "J": mc.J,
        "L": mc.L,
        "P": mc.P,
        "girth6": not viol,
        "girth6_violations": [list(v) for v in viol],
        "regular": list(reg) if reg else None,
        "girth": _girth_out(tanner_girth(h, cap=girth_cap, circulant=circ)),
        "rank": gf2_rank(h),
    }
    return rep, h


def verification_report(mc: ModelMatrix, md: ModelMatrix | None = None, girth_cap: int = DEFAULT_GIRTH_CAP) -> dict:
    """Model-level and expanded-level checks.  ``ok`` is the conjunction of
    every condition that applies: girth >= 6 for each matrix and, for a pair,
    the orthogonality condition at both levels."""
    rep_c, hc = _single(mc, girth_cap)
    out: dict = {"C": rep_c}
    ok = rep_c["girth6"]
    if md is not None:
        rep_d, hd = _single(md, girth_cap)
        viol = twisted_violations(mc, md)
        product_zero = gf2_product_is_zero(hc, hd)
        n = hc.n_cols
        out["D"] = rep_d
        out["twisted"] = not viol
        out["twisted_violations"] = [list(v) for v in viol]
        out["product_zero"] = product_zero
        out["n"] = n
        if product_zero:
            k = n - rep_c["rank"] - rep_d["rank"]
            out["logical_qubits"] = k
            out["quantum_rate"] = k / n
            out["quantum_rate_exact"] = f"{k}/{n}"
        ok = ok and rep_d["girth6"] and not viol and product_zero
    out["ok"] = bool(ok)
    return out
