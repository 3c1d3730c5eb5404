"""JSON and CSV renderings of coefficient tables."""

from __future__ import annotations

import csv
import io
import json

from .moments import JacobiCoefficients
from .numerics import EXACT, float_mode
from .weight import WeightParams

CSV_HEADER = ("n", "a_sq", "b")


def to_document(p: WeightParams, mode, coeffs: JacobiCoefficients) -> dict:
    """``{"params", "mode", "coeffs"}``; the last row (n = N+1) carries ``"b": null``."""
    render = mode.render
    return {
        "params": {"N": p.N, "alpha": EXACT.render(p.alpha), "c": EXACT.render(p.c)},
        "mode": mode.tag,
        "coeffs": [
            {"n": n, "a_sq": render(a), "b": None if bn is None else render(bn)} for n, a, bn in coeffs.rows()
        ],
    }


def to_json(p: WeightParams, mode, coeffs: JacobiCoefficients) -> str:
    return json.dumps(to_document(p, mode, coeffs), indent=2) + "\n"


def decimal(value, digits: int) -> str:
    """Decimal rendering for plotting; exact values are rounded once."""
    m = float_mode(max(64, int(digits * 3.33) + 16))
    return m.ctx.nstr(m.convert(value), digits)


def to_csv(coeffs: JacobiCoefficients, digits: int = 17, extra: dict | None = None) -> str:
    """CSV with header ``n,a_sq,b`` (plus optional extra columns keyed by name)."""
    extra = extra or {}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    names = list(extra)
    w.writerow(list(CSV_HEADER) + names)
    for n, a, bn in coeffs.rows():
        row = [n, decimal(a, digits), "" if bn is None else decimal(bn, digits)]
        for name in names:
            col = extra[name][n]
            row.append("" if col is None else decimal(col, digits))
        w.writerow(row)
    return buf.getvalue()


def from_document(doc: dict) -> tuple[WeightParams, JacobiCoefficients]:
    """Inverse of ``to_document`` for exact-mode documents."""
    if doc["mode"] != "exact":
        raise ValueError("only exact documents can be read back losslessly")
    prm = doc["params"]
    p = WeightParams(prm["N"], EXACT.parse(prm["alpha"]), EXACT.parse(prm["c"]))
    rows = doc["coeffs"]
    a_sq = tuple(EXACT.parse(r["a_sq"]) for r in rows)
    b = tuple(EXACT.parse(r["b"]) for r in rows if r["b"] is not None)
    return p, JacobiCoefficients(a_sq, b)
