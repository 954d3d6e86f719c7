"""Serialisation of curvature results: JSON lines and CSV, with every
rational written as an exact ``p/q`` string."""

from __future__ import annotations

import csv
import io
import json
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Literal

from .curvature import CurvatureResult, closed_form_applicable
from .graph import Graph
from .partition import CLASS_NAMES, R_CLASSES, CorePartition, components_of_R, refine_counts

OutputFormat = Literal["json", "csv"]
CSV_HEADER = ("edge_u", "edge_v", "W", "kappa", "method", "W_plus", "W_zero", "W_minus")


def rational(value: Fraction | int | None) -> str | None:
    """Canonical ``p/q`` form; integers drop the denominator."""
    if value is None:
        return None
    return str(Fraction(value))


def decimal_display(value: Fraction, digits: int = 12) -> float:
    with localcontext() as ctx:
        ctx.prec = digits
        return float(Decimal(value.numerator) / Decimal(value.denominator))


def curvature_record(g: Graph, res: CurvatureResult) -> dict:
    u, v = res.edge
    breakdown = None
    if res.W_plus is not None:
        breakdown = {
            "W_plus": rational(res.W_plus),
            "W_zero": rational(res.W_zero),
            "W_minus": rational(res.W_minus),
            "components": [{"w0": rational(a), "wminus": rational(b)} for a, b in res.components or []],
        }
    return {
        "edge": [g.label(u), g.label(v)],
        "d_u": res.d_u,
        "d_v": res.d_v,
        "counts": dict(res.counts),
        "W": rational(res.W),
        "kappa": rational(res.kappa),
        "kappa_decimal": decimal_display(res.kappa),
        "method": res.method,
        "breakdown": breakdown,
    }


def csv_row(record: dict) -> list[str]:
    b = record.get("breakdown") or {}
    return [
        record["edge"][0],
        record["edge"][1],
        record["W"] if record["W"] is not None else "",
        record["kappa"],
        record["method"],
        b.get("W_plus") or "",
        b.get("W_zero") or "",
        b.get("W_minus") or "",
    ]


def emit(records: Iterable[dict], fmt: OutputFormat = "json") -> str:
    """JSON lines, or CSV with a fixed header; an empty input gives an
    empty stream or the header alone."""
    if fmt == "json":
        return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(csv_row(r))
        return buf.getvalue()
    raise ValueError(f"unknown output format {fmt!r}")


def partition_record(g: Graph, part: CorePartition) -> dict:
    comps = components_of_R(g, part)
    labels = lambda vs: sorted(g.label(a) for a in vs)
    record: dict = {"edge": [g.label(part.u), g.label(part.v)], "d_u": part.d_u, "d_v": part.d_v}
    record.update({name: labels(getattr(part, name)) for name in CLASS_NAMES})
    record["components"] = [{name: labels(getattr(c, name)) for name in R_CLASSES} for c in comps]
    record["refined"] = refine_counts(part, comps, g).as_dict()
    record["closed_form_applicable"] = closed_form_applicable(comps)
    return record
