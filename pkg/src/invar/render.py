"""Report documents: conversion of results to plain data, and text / json output."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from invar.cyclotomic import CycNum
from invar.invariants import GradedPresentation, symbol_names
from invar.matrix import CycMatrix
from invar.poly import Poly, format_monomial, format_poly

SCHEMA_VERSION = "1"


def fmt_matrix(M: CycMatrix) -> str:
    return "[" + "; ".join(", ".join(str(x) for x in M.row(i)) for i in range(M.rows)) + "]"


def fmt_point(v: Sequence[CycNum]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def fmt_scalar(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, CycNum):
        return str(x)
    return x


def fmt_symbol_monomial(u: Sequence[int], symbols: Sequence[str]) -> str:
    return format_monomial(u, symbols) or "1"


def fmt_binomial(lhs, rhs, symbols) -> str:
    return f"{fmt_symbol_monomial(lhs, symbols)} - {fmt_symbol_monomial(rhs, symbols)}"


def presentation_doc(p: GradedPresentation) -> dict:
    syms = p.symbol_space.names if p.symbol_space else symbol_names(len(p.generators))
    return {
        "generators": [
            {"symbol": s, "poly": str(f), "bidegree": list(b)}
            for s, (f, b) in zip(syms, p.generators)
        ],
        "relations": [
            {"relation": format_poly(r), "bidegree": list(b)}
            for r, b in zip(p.relations, p.relation_bidegrees)
        ],
        "generator_cap": list(p.generator_cap),
        "relation_cap": p.relation_cap,
        "complete_generators": p.complete_generators,
    }


def poly_list(ps: Sequence[Poly]) -> list[str]:
    return [str(p) for p in ps]


# -- output ---------------------------------------------------------------


def render_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def _scalar_text(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _is_flat(v) -> bool:
    return not isinstance(v, (dict, list))


def _lines(key, v, indent: int, out: list[str]):
    pad = "  " * indent
    head = f"{pad}{key}:" if key is not None else None
    if _is_flat(v):
        out.append(f"{head} {_scalar_text(v)}" if head else f"{pad}{_scalar_text(v)}")
        return
    if isinstance(v, list):
        if all(_is_flat(x) for x in v) and sum(len(_scalar_text(x)) for x in v) < 70:
            body = ", ".join(_scalar_text(x) for x in v) if v else "(none)"
            out.append(f"{head} {body}" if head else f"{pad}{body}")
            return
        if head:
            out.append(head)
        for x in v:
            if _is_flat(x) or (isinstance(x, list) and all(_is_flat(y) for y in x)):
                _lines(None, x, indent + 1, out)
                out[-1] = out[-1].replace("  " * (indent + 1), "  " * (indent + 1) + "- ", 1)
            elif isinstance(x, dict) and all(_is_flat(y) or _short_list(y) for y in x.values()):
                out.append("  " * (indent + 1) + "- " + _inline(x))
            else:
                out.append("  " * (indent + 1) + "-")
                for k in _order(x):
                    _lines(k, x[k], indent + 2, out)
        return
    if head:
        out.append(head)
    for k in _order(v):
        _lines(k, v[k], indent + 1 if head else indent, out)


def _short_list(v) -> bool:
    return isinstance(v, list) and all(_is_flat(y) for y in v) and len(v) <= 8


def _inline(d: dict) -> str:
    """One-line form of a flat record; presentations read as ``A = X^2``."""
    def val(v):
        return ",".join(_scalar_text(y) for y in v) if isinstance(v, list) else _scalar_text(v)

    head = ""
    rest = dict(d)
    if "symbol" in rest:
        body = rest.pop("poly", None) or rest.pop("monomial", None)
        head = f"{rest.pop('symbol')} = {body}"
    elif "relation" in rest:
        head = rest.pop("relation")
    tail = "  ".join(f"{k}={val(rest[k])}" for k in _order(rest))
    if head and tail:
        return f"{head}  [{tail}]"
    return head or tail


def _order(d: dict) -> list:
    return sorted(d)


def render_text(doc: dict) -> str:
    out: list[str] = []
    title = doc.get("command")
    if title:
        out.append(f"== {title} ({doc.get('source', '')}) ==")
    for k in _order(doc):
        if k in ("command", "source", "schema_version"):
            continue
        _lines(k, doc[k], 0, out)
    return "\n".join(out)
