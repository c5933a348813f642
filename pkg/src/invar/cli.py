"""Command-line front end: ``invar <source> ... <command>``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Callable

from invar.builtins import BUILTINS, Setting, named_rep, toric_setting
from invar.cyclotomic import lcm
from invar.errors import BudgetExceeded, InvarError, ValidationError
from invar.geometry import fiber_report, fiberflat_diagnostic, fixed_space_atlas, point_singular, singularity_report
from invar.groups import (
    Representation,
    close_group,
    defining_rep,
    inner_product,
    is_irreducible,
    product_rep,
    quotient,
)
from invar.inputfile import parse_entry, parse_session
from invar.invariants import (
    InvariantEngine,
    covariant_generators,
    molien,
    sym_vs_invariant,
    symbol_names,
)
from invar.poly import PolySpace, format_monomial
from invar.reflections import (
    OVER_C_NOTICE,
    discriminant,
    fundamental_group,
    mirror_data,
    pi1_surjection,
    reflection_report,
)
from invar.render import (
    SCHEMA_VERSION,
    fmt_binomial,
    fmt_matrix,
    fmt_point,
    fmt_scalar,
    fmt_symbol_monomial,
    presentation_doc,
    render_json,
    render_text,
)
from invar.snf import diagonal, smith_normal_form
from invar.toric import (
    AbelianGrading,
    binomial_relations,
    character_decomposition,
    hilbert_basis,
    nilpotency_oracle,
    normalization_check,
    pullback_check,
    vertex_fiber,
)

EXIT_OK, EXIT_VALIDATION, EXIT_BUDGET = 0, 2, 3


# -- argument parsing helpers ----------------------------------------------


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise ValidationError(f"expected comma-separated integers: {text!r}") from None


def _pair(text: str) -> tuple[int, int]:
    v = _ints(text)
    if len(v) != 2:
        raise ValidationError(f"expected two integers a,b: {text!r}")
    return v[0], v[1]


def _weights(text: str | None, r: int) -> tuple[tuple[int, ...], ...]:
    """``1,2,3`` for cyclic D; ``1,0;0,1`` (one weight per ';') for several factors."""
    if not text:
        return ()
    if r == 1 and ";" not in text:
        return tuple((w,) for w in _ints(text))
    out = tuple(tuple(_ints(part)) for part in text.split(";"))
    if any(len(w) != r for w in out):
        raise ValidationError(f"each weight needs {r} components: {text!r}")
    return out


@dataclass
class Context:
    setting: Setting
    source: str
    args: argparse.Namespace

    @property
    def beta(self) -> Representation:
        return self.setting.beta

    @property
    def rho(self) -> Representation | None:
        return self.setting.rho

    def need_rho(self) -> Representation:
        if self.setting.rho is None:
            raise ValidationError("this command needs a representation rho")
        return self.setting.rho

    def need_grading(self) -> AbelianGrading:
        if self.setting.grading is None:
            raise ValidationError("this command needs a toric (diagonal abelian) source")
        return self.setting.grading

    @property
    def level(self) -> int:
        lv = self.beta.level
        if self.rho is not None:
            lv = lcm(lv, self.rho.level)
        return lv

    def point(self, text: str | None, dim: int, what: str = "--point"):
        if text is None:
            raise ValidationError(f"{what} is required")
        pt = tuple(parse_entry(x, self.level) for x in text.split(","))
        if len(pt) != dim:
            raise ValidationError(f"{what} needs {dim} coordinates")
        return pt


# -- sources ----------------------------------------------------------------


def setting_from_toric(args) -> Setting:
    factors = tuple(_ints(args.factors))
    if not factors or any(k < 1 for k in factors):
        raise ValidationError("--factors must list positive invariant factors")
    g = AbelianGrading(factors, _weights(args.xw, len(factors)), _weights(args.ww, len(factors)))
    return toric_setting("toric", g, {"factors": list(factors), "xw": args.xw, "ww": args.ww})


def setting_from_builtin(args) -> Setting:
    name = args.name
    if name not in BUILTINS:
        raise ValidationError(f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTINS))}")
    need = lambda v, flag: v if v is not None else _missing(flag, name)  # noqa: E731
    if name == "cyclic":
        rho = _ints(args.rho) if args.rho else None
        return BUILTINS[name](need(args.k, "--k"), _ints(need(args.weights, "--weights")), rho)
    if name in ("cyclicone", "asingularity"):
        return BUILTINS[name](need(args.k, "--k"), need(args.l, "--l"))
    if name == "klein":
        return BUILTINS[name](args.variant or 1)
    if name in ("sym3", "s3-reflection"):
        return BUILTINS[name](args.rho or "none")
    if name == "regular":
        return BUILTINS[name](need(args.k, "--k"))
    return BUILTINS[name]()


def _missing(flag, name):
    raise ValidationError(f"builtin {name} needs {flag}")


def setting_from_file(args) -> Setting:
    try:
        with open(args.path, encoding="utf-8") as fh:
            sf = parse_session(fh.read())
    except OSError as exc:
        raise ValidationError(f"cannot read {args.path}: {exc}") from None
    G = close_group(sf.beta)
    beta = defining_rep(G)
    rho = None
    if sf.rho is not None:
        rho = Representation.from_generators(G, sf.rho, "rho")
    elif sf.rho_name:
        rho = named_rep(G, beta, sf.rho_name)
    s = Setting("file", G, beta, rho, None, [], {"path": args.path})
    if sf.x_names or sf.w_names:
        s.params["names"] = (sf.x_names, sf.w_names)
    return s


def _apply_level(s: Setting, level: int | None) -> Setting:
    if not level:
        return s
    if level < 1:
        raise ValidationError("--level must be positive")
    L = lcm(level, s.beta.level if s.rho is None else lcm(s.beta.level, s.rho.level))
    s.beta = s.beta.lift(L)
    if s.rho is not None:
        s.rho = s.rho.lift(L)
    return s


def _space(ctx: Context) -> PolySpace:
    names = ctx.setting.params.get("names")
    d = ctx.beta.dim
    m = ctx.rho.dim if ctx.rho is not None else 0
    std = PolySpace.standard(d, m, ctx.level)
    if not names:
        return std
    xs = names[0] or std.x_vars
    ws = names[1] or std.w_vars
    if len(xs) != d or len(ws) != m:
        raise ValidationError("variable names do not match the dimensions")
    return PolySpace(tuple(xs), tuple(ws), ctx.level)


def _engine(ctx: Context, with_rho: bool = True) -> InvariantEngine:
    rho = ctx.rho if with_rho else None
    space = _space(ctx)
    if rho is None:
        space = PolySpace(space.x_vars, (), space.level)
    return InvariantEngine(ctx.beta, rho, space)


# -- commands ---------------------------------------------------------------


def cmd_group(ctx: Context) -> dict:
    G = ctx.setting.group
    q = quotient(G, G.trivial_subgroup())
    orders: dict[int, int] = {}
    for i in range(G.order):
        o = G.element_order(i)
        orders[o] = orders.get(o, 0) + 1
    return {
        "order": G.order,
        "level": ctx.level,
        "dimension": ctx.beta.dim,
        "generators": [fmt_matrix(G.elements[i]) for i in G.generator_indices],
        "abelian": G.is_abelian,
        "structure": q.describe(),
        "element_orders": {str(k): v for k, v in sorted(orders.items())},
        "conjugacy_classes": len(G.conjugacy_classes),
        "beta_faithful": ctx.beta.is_faithful(),
    }


def _rep_doc(r: Representation, irr: list[Representation]) -> dict:
    doc = {
        "dimension": r.dim,
        "values": [str(v) for v in r.character.values],
        "irreducible": is_irreducible(r),
        "faithful": r.is_faithful(),
    }
    if irr:
        doc["decomposition"] = {i.name or f"irr{t}": fmt_scalar(inner_product(r, i)) for t, i in enumerate(irr)}
    return doc


def cmd_character(ctx: Context) -> dict:
    irr = ctx.setting.irreducibles
    doc = {"beta": _rep_doc(ctx.beta, irr)}
    if ctx.rho is not None:
        doc["rho"] = _rep_doc(ctx.rho, irr)
    if irr:
        doc["irreducibles"] = [i.name for i in irr]
    return doc


def cmd_invariants(ctx: Context) -> dict:
    eng = _engine(ctx)
    a = ctx.args
    if a.bidegree:
        x, w = _pair(a.bidegree)
        basis = eng.basis(x, w)
        key = {"bidegree": [x, w]}
    else:
        n = a.degree if a.degree is not None else 2
        basis = eng.total_basis(n)
        key = {"degree": n}
    return {**key, "variables": list(eng.space.names), "dimension": len(basis), "basis": [str(f) for f in basis]}


def _caps(ctx: Context):
    a = ctx.args
    if a.caps:
        return _pair(a.caps)
    return a.cap


def cmd_algebra(ctx: Context) -> dict:
    eng = _engine(ctx)
    pres = eng.min_generators(_caps(ctx), ctx.args.relation_cap)
    doc = presentation_doc(pres)
    doc["variables"] = list(eng.space.names)
    return doc


def _toric_names(g: AbelianGrading) -> tuple[str, ...]:
    return PolySpace.standard(g.d, g.m).names


def _hb_doc(g: AbelianGrading, rel_cap: int | None) -> dict:
    hb = hilbert_basis(g)
    names = _toric_names(g)
    syms = symbol_names(len(hb.generators))
    rels = binomial_relations(hb, rel_cap or 4)
    return {
        "generators": [{"symbol": s, "monomial": format_monomial(v, names), "exponents": list(v)}
                       for s, v in zip(syms, hb.generators)],
        "relations": [fmt_binomial(b.lhs, b.rhs, syms) for b in rels],
        "relation_cap": rel_cap or 4,
        "degree_bound": hb.degree_bound_used,
    }


def cmd_hilbert_basis(ctx: Context) -> dict:
    return _hb_doc(ctx.need_grading(), ctx.args.relation_cap)


def cmd_relations(ctx: Context) -> dict:
    doc = _hb_doc(ctx.need_grading(), ctx.args.relation_cap)
    return {"relations": doc["relations"], "relation_cap": doc["relation_cap"],
            "generators": {g["symbol"]: g["monomial"] for g in doc["generators"]}}


def cmd_vertex_fiber(ctx: Context) -> dict:
    g = ctx.need_grading()
    cap = ctx.args.cap or 3
    rep = vertex_fiber(g, cap)
    names = _toric_names(g)
    return {
        "cap": cap,
        "assoc_graded_dims": rep.assoc_graded_dims,
        "trunc_dims": rep.trunc_dims,
        "dim_mod_m_cap": rep.trunc_dims[-1],
        "reduction_generators": [format_monomial(v, names) for v in rep.reduction_generators],
        "nilpotent_witnesses": [{"monomial": format_monomial(v, names), "exponent": t}
                                for v, t in rep.nilpotent_witnesses],
    }


def cmd_character_decomp(ctx: Context) -> dict:
    g = ctx.need_grading()
    caps = _pair(ctx.args.caps) if ctx.args.caps else (ctx.args.cap or 3, ctx.args.cap or 3)
    names = _toric_names(g)
    xn, wn = names[:g.d], names[g.d:]
    pieces = character_decomposition(g, caps)
    return {
        "caps": list(caps),
        "pieces": [
            {"lambda": list(lam),
             "x_monomials": [format_monomial(v, xn) or "1" for v in p.x_monomials],
             "w_monomials": [format_monomial(v, wn) or "1" for v in p.w_monomials]}
            for lam, p in sorted(pieces.items())
        ],
    }


def cmd_fiber(ctx: Context) -> dict:
    rho = ctx.need_rho()
    pt = ctx.point(ctx.args.point, ctx.beta.dim)
    rep = fiber_report(ctx.beta, rho, pt)
    doc = {
        "point": fmt_point(rep.point),
        "stabilizer_order": rep.stabilizer_order,
        "rho_restricted_trivial": rep.rho_restricted_trivial,
        "reduced": rep.reduced,
        "fiber_dimension": rep.fiber_dim,
        "geometric_fiber": {"group_order": rep.restricted_image_order,
                            "description": f"A^{rep.fiber_dim} modulo a group of order {rep.restricted_image_order}"},
    }
    g = ctx.setting.grading
    if g is not None:
        support = [i for i, x in enumerate(rep.point) if x]
        wit = nilpotency_oracle(g, support)
        doc["nilpotency_oracle"] = {"nonreduced": bool(wit), "witness_count": len(wit)}
    return doc


def cmd_singularities(ctx: Context) -> dict:
    if ctx.args.point is None:
        atlas = fixed_space_atlas(ctx.beta)
        return {
            "small": atlas.small,
            "note": atlas.note,
            "fixed_spaces": [{"element": e.element, "dimension": len(e.basis),
                              "basis": [fmt_point(v) for v in e.basis]} for e in atlas.entries],
        }
    rho = ctx.need_rho()
    pt = ctx.point(ctx.args.point, ctx.beta.dim)
    rep = singularity_report(ctx.beta, rho, pt)
    doc = {
        "point": fmt_point(pt),
        "stabilizer_order": len(rep.stabilizer),
        "contains_singular": rep.contains_singular,
        "zero_section_singular": rep.zero_section_singular,
        "all_singular": rep.all_singular,
        "notice": rep.notice,
    }
    if ctx.args.vpoint is not None:
        v = ctx.point(ctx.args.vpoint, rho.dim, "--vpoint")
        doc["vpoint"] = fmt_point(v)
        doc["vpoint_singular"] = point_singular(ctx.beta, rho, pt, v)
    return doc


def cmd_pi1(ctx: Context) -> dict:
    base = fundamental_group(ctx.beta)
    doc = {"base": {"order": base.order, "structure": base.describe(),
                    "invariant_factors": list(base.invariant_factors)},
           "notice": OVER_C_NOTICE}
    if ctx.rho is not None:
        s = pi1_surjection(ctx.beta, ctx.rho)
        doc["total"] = {"order": s.total.order, "structure": s.total.describe(),
                        "invariant_factors": list(s.total.invariant_factors)}
        doc["surjection"] = list(s.coset_map)
    return doc


def _refl_doc(r: Representation) -> dict:
    rep = reflection_report(r)
    return {"reflections": list(rep.reflections), "reflection_subgroup_order": rep.refl_subgroup.order,
            "small": rep.is_small, "reflection_group": rep.is_reflection_group, "faithful": rep.faithful}


def cmd_reflections(ctx: Context) -> dict:
    doc = {"beta": _refl_doc(ctx.beta)}
    md = mirror_data(ctx.beta)
    space = PolySpace(_space(ctx).x_vars, (), ctx.beta.level)
    doc["mirrors"] = [{"form": fmt_point(f), "nu": nu} for f, nu in md.mirrors]
    doc["discriminant"] = str(discriminant(md, space))
    if ctx.rho is not None:
        doc["beta_x_rho"] = _refl_doc(product_rep(ctx.beta, ctx.rho))
    return doc


def cmd_molien(ctx: Context) -> dict:
    trunc = ctx.args.trunc if ctx.args.trunc is not None else 6
    if ctx.rho is None:
        ser = molien(ctx.beta, trunc)
        return {"trunc": trunc, "coefficients": [fmt_scalar(c) for c in ser.as_list()]}
    from invar.groups import product_rep
    ser = molien(product_rep(ctx.beta, ctx.rho), trunc, bigraded=True, split=ctx.beta.dim)
    return {"trunc": trunc, "bigraded": True,
            "coefficients": {f"{a},{b}": fmt_scalar(c) for (a, b), c in sorted(ser.coefficients.items())}}


def cmd_compare_sym(ctx: Context) -> dict:
    rho = ctx.need_rho()
    caps = _pair(ctx.args.caps) if ctx.args.caps else None
    rep = sym_vs_invariant(ctx.beta, rho, caps)
    return {
        "caps": list(rep.caps),
        "per_degree": [{"n": p.n, "mu": p.mu, "surjective": p.surjective, "expected_mu": p.expected_mu}
                       for p in rep.per_degree],
        "first_failure": rep.first_failure,
        "witness": str(rep.witness) if rep.witness is not None else None,
        "witness_bidegree": list(rep.witness_bidegree) if rep.witness_bidegree else None,
        "covariant_degrees": rep.covariant_degrees,
        "reflection_beta": rep.reflection_beta,
        "hilbert_ok": rep.hilbert_ok,
        "notes": rep.notes,
    }


def cmd_covariants(ctx: Context) -> dict:
    rho = ctx.need_rho()
    mod = covariant_generators(ctx.beta, rho, ctx.args.cap)
    return {"rank": mod.rank, "degrees": mod.degrees,
            "generators": [[str(c) for c in vec] for vec in mod.generators]}


def _cert_doc(c, syms) -> dict:
    return {"multiple": c.multiple, "decomposition": fmt_symbol_monomial(c.decomposition, syms)}


def cmd_check_normalization(ctx: Context) -> dict:
    g1 = ctx.need_grading()
    ww2 = ctx.args.ww2
    g2 = g1 if ww2 is None else g1.with_w(_weights(ww2, len(g1.factors)))
    v = normalization_check(g1, g2, ctx.args.cap)
    d = g1.d
    names = PolySpace.standard(d, g1.m + g2.m).names
    syms = symbol_names(len(v.tensor_generators))
    wit = dict(v.lattice_witnesses)
    return {
        "is_normalization": v.is_normalization,
        "tensor_generators": [format_monomial(h, names) for h in v.tensor_generators],
        "product_generators": [format_monomial(h, names) for h in v.product_generators],
        "not_in_tensor_image": [
            {"monomial": format_monomial(h, names),
             "integrality": next(_cert_doc(c, syms) for c in v.integrality if c.generator == h),
             "lattice_witness": list(wit[h]) if wit.get(h) is not None else None}
            for h in v.non_surjective
        ],
        "tensor_symbols": {s: format_monomial(h, names) for s, h in zip(syms, v.tensor_generators)},
        "search_bound": v.search_bound,
        "notes": v.notes,
    }


def cmd_check_pullback(ctx: Context) -> dict:
    g = ctx.need_grading()
    v = pullback_check(g)
    names = _toric_names(g)
    syms = [format_monomial(h, names) for h in v.image_generators]
    return {
        "is_normalization": v.is_normalization,
        "image_generators": syms,
        "certificates": [{"variable": format_monomial(c.generator, names), "multiple": c.multiple,
                          "decomposition": format_monomial(c.decomposition, [f"({s})" for s in syms])}
                         for c in v.integrality],
        "lattice_witnesses": [{"variable": format_monomial(e, names), "coefficients": list(w) if w else None}
                              for e, w in v.lattice_witnesses],
        "notes": v.notes,
    }


COMMANDS: dict[str, Callable[[Context], dict]] = {
    "group": cmd_group,
    "character": cmd_character,
    "invariants": cmd_invariants,
    "algebra": cmd_algebra,
    "min-generators": cmd_algebra,
    "hilbert-basis": cmd_hilbert_basis,
    "relations": cmd_relations,
    "vertex-fiber": cmd_vertex_fiber,
    "character-decomp": cmd_character_decomp,
    "fiber": cmd_fiber,
    "singularities": cmd_singularities,
    "pi1": cmd_pi1,
    "reflections": cmd_reflections,
    "molien": cmd_molien,
    "compare-sym": cmd_compare_sym,
    "covariants": cmd_covariants,
    "check-normalization": cmd_check_normalization,
    "check-pullback": cmd_check_pullback,
}


# -- gallery -----------------------------------------------------------------

GALLERY: dict[str, list[str]] = {
    "cyclicone-2-1": ["toric", "--factors", "2", "--xw", "1", "--ww", "1", "hilbert-basis"],
    "cyclicone-3-1": ["builtin", "cyclicone", "--k", "3", "--l", "1", "hilbert-basis"],
    "cyclicone-3-2": ["builtin", "cyclicone", "--k", "3", "--l", "2", "hilbert-basis"],
    "cyclicone5": ["builtin", "cyclicone", "--k", "5", "--l", "2", "hilbert-basis"],
    "cyclicone5-l3": ["builtin", "cyclicone", "--k", "5", "--l", "3", "hilbert-basis"],
    "cyclicone5-fiber": ["builtin", "cyclicone", "--k", "5", "--l", "2", "vertex-fiber"],
    "cyclicone5-l3-fiber": ["builtin", "cyclicone", "--k", "5", "--l", "3", "vertex-fiber"],
    "cyclicone-pi1": ["builtin", "cyclicone", "--k", "6", "--l", "2", "pi1"],
    "cyclicone-compare": ["builtin", "cyclicone", "--k", "5", "--l", "2", "compare-sym", "--caps", "5,3"],
    "cyclicone-product": ["builtin", "cyclicone", "--k", "2", "--l", "1", "check-normalization"],
    "cyclicone-pullback": ["builtin", "cyclicone", "--k", "3", "--l", "2", "check-pullback"],
    "toric11.1": ["builtin", "toric11.1", "hilbert-basis"],
    "toric11.1-fiber": ["builtin", "toric11.1", "vertex-fiber"],
    "asingularity-3-1": ["builtin", "asingularity", "--k", "3", "--l", "1", "hilbert-basis"],
    "klein-1": ["builtin", "klein", "--variant", "1", "hilbert-basis"],
    "klein-2": ["builtin", "klein", "--variant", "2", "hilbert-basis"],
    "klein-1-pi1": ["builtin", "klein", "--variant", "1", "pi1"],
    "klein-2-pi1": ["builtin", "klein", "--variant", "2", "pi1"],
    "cyclic4reflection": ["builtin", "cyclic4reflection", "algebra"],
    "cyclic4reflection-pi1": ["builtin", "cyclic", "--k", "4", "--weights", "2,1", "--rho", "1", "pi1"],
    "cyclic4reflection-singular": ["builtin", "cyclic4reflection", "singularities", "--point", "1,0"],
    "sym3-sign-algebra": ["builtin", "sym3", "--rho", "sign", "algebra"],
    "sym3-invariants": ["builtin", "sym3", "min-generators"],
    "sym3-molien": ["builtin", "sym3", "--rho", "sign", "molien", "--trunc", "4"],
    "s3-reflection": ["builtin", "s3-reflection", "reflections"],
    "s3-reflection-det": ["builtin", "s3-reflection", "--rho", "det", "algebra"],
    "regular-z2": ["builtin", "regular", "--k", "2", "character"],
    "regular-z3": ["builtin", "regular", "--k", "3", "compare-sym", "--caps", "3,2"],
}


def run_gallery_entry(name: str, fmt: str = "json") -> str:
    if name not in GALLERY:
        raise ValidationError(f"unknown gallery entry {name!r}")
    doc = build_document(build_parser().parse_args(GALLERY[name] + ["--format", fmt]))
    return render_json(doc) if fmt == "json" else render_text(doc)


# -- parser and main ---------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cap", type=int, help="degree cap (generators, vertex-fiber power, search bound)")
    p.add_argument("--caps", help="bidegree caps a,b")
    p.add_argument("--relation-cap", type=int, help="cap on the total degree of relations")
    p.add_argument("--level", type=int, help="raise the cyclotomic level")
    p.add_argument("--point", help="comma-separated coordinates of a point of A^d")
    p.add_argument("--vpoint", help="comma-separated coordinates of a point of A^m")
    p.add_argument("--degree", type=int)
    p.add_argument("--bidegree")
    p.add_argument("--trunc", type=int)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="invar", description="Invariant rings and invariant algebras of finite groups.")
    sub = parser.add_subparsers(dest="source", required=True)

    t = sub.add_parser("toric", parents=[common], help="diagonal action of a finite abelian group")
    t.add_argument("--factors", required=True, help="invariant factors of D, e.g. 2 or 2,2")
    t.add_argument("--xw", required=True, help="X weights: 1,2 (cyclic) or 1,0;0,1")
    t.add_argument("--ww", help="W weights (same syntax)")
    t.add_argument("--ww2", help="second set of W weights for check-normalization")
    t.add_argument("command", choices=sorted(COMMANDS))

    b = sub.add_parser("builtin", parents=[common], help="a named example")
    b.add_argument("name")
    b.add_argument("--k", type=int)
    b.add_argument("--l", type=int)
    b.add_argument("--weights")
    b.add_argument("--rho")
    b.add_argument("--variant", type=int)
    b.add_argument("--ww2")
    b.add_argument("command", choices=sorted(COMMANDS))

    f = sub.add_parser("file", parents=[common], help="read generators from a session file")
    f.add_argument("path")
    f.add_argument("command", choices=sorted(COMMANDS))
    f.set_defaults(ww2=None)

    g = sub.add_parser("gallery", help="list or run the example gallery")
    g.add_argument("entry", nargs="?", help="entry name, or 'all'")
    g.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("smith", help="Smith normal form of an integer matrix")
    s.add_argument("matrix", help="rows separated by ';', entries by ','")
    s.add_argument("--format", choices=("text", "json"), default="text")

    d = sub.add_parser("diagnose-fiberflat", help="generator-count test for fiberflatness")
    d.add_argument("--rank", type=int, required=True)
    d.add_argument("--mu", type=int, required=True)
    d.add_argument("--dim", type=int, required=True)
    d.add_argument("--isolated-nonfree-locus", action="store_true")
    d.add_argument("--sym-irreducible", action="store_true")
    d.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _source_label(args) -> str:
    if args.source == "builtin":
        return f"builtin {args.name}"
    if args.source == "file":
        return f"file {args.path}"
    return args.source


def build_document(args) -> dict:
    if args.source == "smith":
        rows = [_ints(r) for r in args.matrix.split(";")]
        if len({len(r) for r in rows}) != 1:
            raise ValidationError("ragged matrix")
        _, D, _ = smith_normal_form(rows)
        body = {"diagonal": diagonal(D), "invariant_factors": [x for x in diagonal(D) if x != 1]}
        return {"schema_version": SCHEMA_VERSION, "command": "smith", "source": "matrix", **body}
    if args.source == "diagnose-fiberflat":
        v = fiberflat_diagnostic(args.rank, args.mu, args.dim, args.isolated_nonfree_locus, args.sym_irreducible)
        body = {"verdict": v.verdict, "rank": v.rank, "mu": v.mu, "dim": v.d, "flags": v.flags}
        return {"schema_version": SCHEMA_VERSION, "command": "diagnose-fiberflat", "source": "numbers", **body}
    if args.source == "toric":
        setting = setting_from_toric(args)
    elif args.source == "builtin":
        setting = setting_from_builtin(args)
    else:
        setting = setting_from_file(args)
    setting = _apply_level(setting, args.level)
    for flag in ("cap", "relation_cap", "trunc", "degree"):
        v = getattr(args, flag, None)
        if v is not None and v < (0 if flag in ("trunc", "degree") else 1):
            raise ValidationError(f"--{flag.replace('_', '-')} must be positive")
    ctx = Context(setting, _source_label(args), args)
    body = COMMANDS[args.command](ctx)
    return {"schema_version": SCHEMA_VERSION, "command": args.command, "source": ctx.source,
            "params": {k: v for k, v in setting.params.items() if k != "names"}, "result": body}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_VALIDATION
    try:
        if args.source == "gallery":
            if not args.entry:
                for name in sorted(GALLERY):
                    print(f"{name}: invar {' '.join(GALLERY[name])}")
                return EXIT_OK
            names = sorted(GALLERY) if args.entry == "all" else [args.entry]
            for name in names:
                print(run_gallery_entry(name, args.format))
            return EXIT_OK
        doc = build_document(args)
    except BudgetExceeded as exc:
        print(f"invar: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValidationError, InvarError) as exc:
        print(f"invar: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(render_json(doc) if args.format == "json" else render_text(doc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
