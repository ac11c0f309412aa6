"""Command-line frontend.

Subcommands: type, classify, enumerate, codim, tangent, surface, veronese,
opening, morin, family, normal-form, batch.  Reports are printed to stdout
in a deterministic order; ``--format structured`` emits JSON instead of
plain ``key: value`` lines.

Exit codes: 0 on success, 2 on guard/validation failures (bad documents,
violated preconditions, unsupported patterns), 3 when the analysis ends in
an inconclusive or unclassified verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .classify import SingularityClass, classify, normal_form
from .curves import NotFiniteTypeError, NotFiniteTypeUpTo, TypeSequence, curve_type
from .germdoc import (
    GermDocumentError,
    build_curve,
    build_matrix,
    build_surface,
    parse_document,
    split_documents,
)
from .jets import JetDomainError, TruncationMismatch
from .mesh import sample_map, write_obj
from .strata import CurveClass, codimension, enumerate_generic
from .surfaces import (
    ClosednessError,
    LegendreConditionError,
    OrdinaryPointClass,
    SajiTag,
    SymMatrix3,
    VeroneseVerdict,
    complete_to_legendre,
    ordinary_point_class,
    saji_verdict,
    transversal_slice,
    veronese_membership,
)
from .tangency import (
    DivisibilityError,
    GeneratingFamilyError,
    NotFrontalUpTo,
    generating_family_tangent,
    grassmann_lift,
    lift_verified_order,
    morin_versal_opening,
    opening_check,
    tangent_map,
)

Report = List[Tuple[str, object]]

OK, GUARD, INCONCLUSIVE = 0, 2, 3

_GUARD_ERRORS = (
    GermDocumentError,
    ClosednessError,
    LegendreConditionError,
    GeneratingFamilyError,
    DivisibilityError,
    TruncationMismatch,
    JetDomainError,
    ValueError,
    ZeroDivisionError,
    OSError,
)

_SINGULARITY_SLUGS = {
    "cuspidal-edge": SingularityClass.CUSPIDAL_EDGE,
    "folded-umbrella": SingularityClass.FOLDED_UMBRELLA,
    "open-folded-umbrella": SingularityClass.OPEN_FOLDED_UMBRELLA,
    "swallowtail": SingularityClass.SWALLOWTAIL,
    "open-swallowtail": SingularityClass.OPEN_SWALLOWTAIL,
    "mond-surface": SingularityClass.MOND_SURFACE,
    "open-mond-surface": SingularityClass.OPEN_MOND_SURFACE,
    "unfurled-mond-surface": SingularityClass.UNFURLED_MOND_SURFACE,
    "generic-folded-pleat": SingularityClass.GENERIC_FOLDED_PLEAT,
}

_VERONESE_TEXT = {
    VeroneseVerdict.ON_SURFACE: "on S",
    VeroneseVerdict.IN_TANGENT: "in Tan(S)",
    VeroneseVerdict.IN_SECANT_ONLY: "in Sec(S) \\ Tan(S)",
    VeroneseVerdict.OUTSIDE: "outside Sec(S)",
}


def _read_input(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as handle:
        return handle.read()


def _parse_type(text: str) -> TypeSequence:
    try:
        entries = tuple(int(tok) for tok in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise GermDocumentError(f"cannot parse type {text!r}")
    return TypeSequence(entries)


def _class_for(args, type_length: int) -> CurveClass:
    name = getattr(args, "curve_class", None) or "plain"
    if name == "contact":
        n = getattr(args, "n", None)
        if n is None:
            if type_length % 2 == 0 or type_length < 3:
                raise GermDocumentError(
                    "contact types have odd length 2n+1 >= 3; pass --n explicitly"
                )
            n = (type_length - 1) // 2
        return CurveClass.contact_osculating(n)
    N = getattr(args, "N", None)
    if N is None:
        N = type_length - 1
    if name == "plain":
        return CurveClass.plain(N)
    if name == "tangent":
        return CurveClass.tangent_framed(N)
    if name == "tpn":
        return CurveClass.tpn_framed(N)
    if name == "osculating":
        return CurveClass.osculating_framed(N)
    if name == "flag":
        k = getattr(args, "k", None)
        if k is None:
            raise GermDocumentError("--class flag needs --k")
        return CurveClass.flag(N, k)
    raise GermDocumentError(f"unknown curve class {name!r}")


def _extend_to_ambient(A: TypeSequence, ambient: Optional[int]) -> TypeSequence:
    if ambient is None or ambient == len(A):
        return A
    if ambient < len(A):
        raise GermDocumentError("ambient dimension below the type length")
    tail = list(A.entries)
    while len(tail) < ambient:
        tail.append(tail[-1] + 1)
    return TypeSequence(tuple(tail))


# --------------------------------------------------------------------------
# subcommand handlers
# --------------------------------------------------------------------------


def _cmd_type(args) -> Tuple[int, Report]:
    germ = build_curve(parse_document(_read_input(args.input)))
    verdict = curve_type(germ)
    report: Report = [("command", "type"), ("ambient", germ.ambient_dim)]
    if isinstance(verdict, NotFiniteTypeUpTo):
        report.append(("verdict", f"not finite type up to truncation {verdict.truncation}"))
        report.append(
            ("caveat", "finite type is undecidable at fixed truncation; raise it to retest")
        )
        return INCONCLUSIVE, report
    report.append(("type", verdict.render()))
    return OK, report


def _cmd_classify(args) -> Tuple[int, Report]:
    if args.type:
        A = _parse_type(args.type)
    else:
        germ = build_curve(parse_document(_read_input(args.input)))
        verdict = curve_type(germ)
        if isinstance(verdict, NotFiniteTypeUpTo):
            return INCONCLUSIVE, [
                ("command", "classify"),
                ("verdict", f"not finite type up to truncation {verdict.truncation}"),
            ]
        A = verdict
    A = _extend_to_ambient(A, args.ambient)
    cls = _class_for(args, len(A))
    result = classify(A, cls)
    report: Report = [
        ("command", "classify"),
        ("type", A.render()),
        ("class", cls.describe()),
        ("singularity", result.singularity.value),
        ("generic", "yes" if result.generic else "no"),
    ]
    if result.caveat:
        report.append(("caveat", result.caveat))
    code = INCONCLUSIVE if result.singularity is SingularityClass.UNCLASSIFIED else OK
    return code, report


def _cmd_enumerate(args) -> Tuple[int, Report]:
    if args.curve_class == "contact":
        if args.n is None:
            raise GermDocumentError("enumerate --class contact needs --n")
        cls = CurveClass.contact_osculating(args.n)
    else:
        if args.N is None:
            raise GermDocumentError("enumerate needs --N")
        cls = _class_for(args, args.N + 1)
    types = enumerate_generic(cls)
    report: Report = [
        ("command", "enumerate"),
        ("class", cls.describe()),
        ("count", len(types)),
        ("types", [A.render() for A in types]),
    ]
    return OK, report


def _cmd_codim(args) -> Tuple[int, Report]:
    A = _parse_type(args.type)
    cls = _class_for(args, len(A))
    value = codimension(A, cls)
    return OK, [
        ("command", "codim"),
        ("type", A.render()),
        ("class", cls.describe()),
        ("codimension", value),
    ]


def _parse_range(text: str) -> Tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise GermDocumentError("range must look like '-1:1'")


def _parse_coords(text: str) -> Tuple[int, int, int]:
    try:
        a, b, c = (int(x) for x in text.split(","))
        return a, b, c
    except ValueError:
        raise GermDocumentError("coords must look like '1,2,3'")


def _cmd_tangent(args) -> Tuple[int, Report]:
    germ = build_curve(parse_document(_read_input(args.input)))
    report: Report = [("command", "tangent"), ("ambient", germ.ambient_dim)]
    try:
        tmap = tangent_map(germ)
    except NotFiniteTypeError as exc:
        report.append(("verdict", str(exc)))
        return INCONCLUSIVE, report
    except DivisibilityError as exc:
        report.append(
            ("verdict", f"not frontal up to truncation {germ.truncation}")
        )
        report.append(("component", exc.component_index + 1))
        report.append(("detail", str(exc)))
        return INCONCLUSIVE, report
    A = tmap.source_type
    report.append(("type", A.render()))
    cls = _class_for(args, len(A))
    named = classify(A, cls)
    report.append(("singularity", named.singularity.value))
    report.append(("generic", "yes" if named.generic else "no"))
    lift = grassmann_lift(tmap)
    if isinstance(lift, NotFrontalUpTo):
        report.append(("frontal", f"not frontal up to truncation {lift.truncation}"))
        return INCONCLUSIVE, report
    verified = lift_verified_order(tmap, lift)
    report.append(("frontal", f"yes (lift verified to order {verified})"))
    for i, pair in enumerate(lift, start=3):
        report.append((f"order P{i}", str(pair.p.order())))
        report.append((f"order Q{i}", str(pair.q.order())))
    if args.mesh:
        coords = _parse_coords(args.coords)
        lo, hi = _parse_range(args.range)
        mesh = sample_map(
            tmap.components,
            coords=coords,
            s_range=(lo, hi),
            t_range=(lo, hi),
            grid=args.grid,
            provenance=f"tangent map of type {A.render()} curve, coords {args.coords}",
        )
        write_obj(mesh, args.mesh)
        report.append(
            ("mesh", f"{args.mesh} ({len(mesh.vertices)} vertices, {len(mesh.faces)} faces)")
        )
    return OK, report


def _cmd_surface(args) -> Tuple[int, Report]:
    x3, x4 = build_surface(parse_document(_read_input(args.input)))
    surface = complete_to_legendre(x3, x4)
    a, b, c, e = surface.quad
    ordinary = ordinary_point_class(surface)
    report: Report = [
        ("command", "surface"),
        ("quad", f"a={a} b={b} c={c} e={e}"),
        ("H", str(ordinary.h_invariant)),
        ("ordinary class", ordinary.tag.value),
        ("x5", surface.x5.render(("u", "v"))),
    ]
    if ordinary.tag is OrdinaryPointClass.NOT_ORDINARY:
        report.append(("verdict", "not an ordinary point (rank < 2)"))
        return INCONCLUSIVE, report
    g1, g2, g3 = transversal_slice(surface)
    report.append(("slice g1", g1.render(("u", "v"))))
    report.append(("slice g2", g2.render(("u", "v"))))
    report.append(("slice g3", g3.render(("u", "v"))))
    verdict = saji_verdict((g1, g2, g3))
    report.append(("D4 verdict", verdict.tag.value))
    if verdict.hessian_determinant is not None:
        report.append(("identifier Hessian", str(verdict.hessian_determinant)))
    if verdict.reason:
        report.append(("reason", verdict.reason))
    return (INCONCLUSIVE if verdict.tag is SajiTag.INCONCLUSIVE else OK), report


def _cmd_veronese(args) -> Tuple[int, Report]:
    if args.entries:
        entries = [Fraction(tok) for tok in args.entries.replace(",", " ").split()]
        if len(entries) != 6:
            raise GermDocumentError("need six entries a11 a12 a13 a22 a23 a33")
        matrix = SymMatrix3(*entries)
    else:
        matrix = build_matrix(parse_document(_read_input(args.input)))
    verdict = veronese_membership(matrix)
    return OK, [
        ("command", "veronese"),
        ("rank", matrix.rank()),
        ("membership", _VERONESE_TEXT[verdict]),
    ]


def _cmd_opening(args) -> Tuple[int, Report]:
    germ = build_curve(parse_document(_read_input(args.input)))
    tmap = tangent_map(germ)
    report: Report = [
        ("command", "opening"),
        ("type", tmap.source_type.render()),
    ]
    certs = opening_check(tmap)
    if isinstance(certs, NotFrontalUpTo):
        report.append(("verdict", f"not frontal up to truncation {certs.truncation}"))
        return INCONCLUSIVE, report
    report.append(("certificates", len(certs)))
    for i, cert in enumerate(certs, start=3):
        p, q = cert.multipliers
        report.append(
            (
                f"component {i}",
                f"df{i} = P*df1 + Q*df2 with P = {p.render(('s', 't'))}, "
                f"Q = {q.render(('s', 't'))} (verified to order {cert.verified_order})",
            )
        )
    return OK, report


def _cmd_morin(args) -> Tuple[int, Report]:
    opening = morin_versal_opening(args.k, args.m)
    report: Report = [
        ("command", "morin"),
        ("k", opening.k),
        ("m", opening.m),
        ("generators (with 1)", opening.generator_count),
        ("F", opening.f_base.render()),
    ]
    for i, g in enumerate(opening.g_base, start=1):
        report.append((f"G{i}", g.render()))
    for ell, gen in enumerate(opening.f_generators, start=1):
        report.append((f"F_({ell})", gen.render()))
    for i, row in enumerate(opening.g_generators, start=1):
        for ell, gen in enumerate(row, start=1):
            report.append((f"G{i}_({ell})", gen.render()))
    return OK, report


def _cmd_family(args) -> Tuple[int, Report]:
    A = _parse_type(args.type)
    solution = generating_family_tangent(A)
    report: Report = [
        ("command", "family"),
        ("type", A.render()),
        ("pattern", solution.pattern),
        ("family", solution.family.render() + " = 0"),
    ]
    for j, poly in enumerate(solution.solved, start=2):
        report.append((f"x{j}", poly.render()))
    return OK, report


def _cmd_normal_form(args) -> Tuple[int, Report]:
    slug = args.singularity
    if slug not in _SINGULARITY_SLUGS:
        raise GermDocumentError(
            "unknown singularity; choose from " + ", ".join(sorted(_SINGULARITY_SLUGS))
        )
    sing = _SINGULARITY_SLUGS[slug]
    form = normal_form(sing, args.ambient)
    report: Report = [
        ("command", "normal-form"),
        ("singularity", sing.value),
        ("ambient", form.ambient_dim),
    ]
    for i, comp in enumerate(form.chart_st, start=1):
        report.append((f"(s,t) chart component {i}", comp.render(("s", "t"))))
    if form.chart_ux is not None:
        for i, comp in enumerate(form.chart_ux, start=1):
            report.append((f"(u,x) chart component {i}", comp.render(("u", "x"))))
    if form.caveat:
        report.append(("caveat", form.caveat))
    if args.mesh:
        coords = _parse_coords(args.coords)
        lo, hi = _parse_range(args.range)
        mesh = sample_map(
            form.chart_st,
            coords=coords,
            s_range=(lo, hi),
            t_range=(lo, hi),
            grid=args.grid,
            provenance=f"normal form {slug}, (s,t) chart, coords {args.coords}",
        )
        write_obj(mesh, args.mesh)
        report.append(
            ("mesh", f"{args.mesh} ({len(mesh.vertices)} vertices, {len(mesh.faces)} faces)")
        )
    return OK, report


def _cmd_batch(args) -> Tuple[int, Report]:
    chunks = split_documents(_read_input(args.input))
    if not chunks:
        raise GermDocumentError("batch input contains no documents")
    report: Report = [("command", "batch"), ("documents", len(chunks))]
    saw_error = False
    saw_inconclusive = False
    for idx, chunk in enumerate(chunks, start=1):
        try:
            doc = parse_document(chunk)
            if doc.kind == "curve":
                germ = build_curve(doc)
                verdict = curve_type(germ)
                if isinstance(verdict, NotFiniteTypeUpTo):
                    report.append(
                        (f"document {idx}",
                         f"curve: not finite type up to truncation {verdict.truncation}")
                    )
                    saw_inconclusive = True
                else:
                    report.append((f"document {idx}", f"curve: type {verdict.render()}"))
            elif doc.kind == "surface":
                surface = complete_to_legendre(*build_surface(doc))
                ordinary = ordinary_point_class(surface)
                report.append(
                    (f"document {idx}",
                     f"surface: {ordinary.tag.value}, H = {ordinary.h_invariant}")
                )
                if ordinary.tag is OrdinaryPointClass.NOT_ORDINARY:
                    saw_inconclusive = True
            else:
                matrix = build_matrix(doc)
                verdict = veronese_membership(matrix)
                report.append(
                    (f"document {idx}", f"matrix: {_VERONESE_TEXT[verdict]}")
                )
        except _GUARD_ERRORS as exc:
            report.append((f"document {idx}", f"error: {exc}"))
            saw_error = True
    if saw_error:
        return GUARD, report
    if saw_inconclusive:
        return INCONCLUSIVE, report
    return OK, report


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tanvar",
        description="Exact analysis of tangent varieties to curve and surface germs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format",
            choices=("plain", "structured"),
            default="plain",
            dest="format",
        )

    def add_class_flags(p):
        p.add_argument(
            "--class",
            dest="curve_class",
            choices=("plain", "tangent", "tpn", "osculating", "contact", "flag"),
            default="plain",
        )
        p.add_argument("--N", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--k", type=int, default=None)

    def add_mesh_flags(p):
        p.add_argument("--mesh", default=None, help="write an OBJ mesh here")
        p.add_argument("--coords", default="1,2,3")
        p.add_argument("--range", default="-1:1")
        p.add_argument("--grid", type=int, default=50)

    p = sub.add_parser("type", help="type of a curve germ document")
    p.add_argument("input", nargs="?", default=None)
    add_format(p)

    p = sub.add_parser("classify", help="singularity of the tangent variety")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--type", default=None)
    p.add_argument("--ambient", type=int, default=None)
    add_class_flags(p)
    add_format(p)

    p = sub.add_parser("enumerate", help="generic types of a curve class")
    add_class_flags(p)
    add_format(p)

    p = sub.add_parser("codim", help="stratum codimension of a type")
    p.add_argument("--type", required=True)
    add_class_flags(p)
    add_format(p)

    p = sub.add_parser("tangent", help="tangent map, lift orders, optional mesh")
    p.add_argument("input", nargs="?", default=None)
    add_class_flags(p)
    add_mesh_flags(p)
    add_format(p)

    p = sub.add_parser("surface", help="integral surface analysis")
    p.add_argument("input", nargs="?", default=None)
    add_format(p)

    p = sub.add_parser("veronese", help="rank-one quadric locus membership")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--entries", default=None)
    add_format(p)

    p = sub.add_parser("opening", help="membership certificates of a tangent map")
    p.add_argument("input", nargs="?", default=None)
    add_format(p)

    p = sub.add_parser("morin", help="versal opening generator table")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    add_format(p)

    p = sub.add_parser("family", help="tangent variety from its generating family")
    p.add_argument("--type", required=True)
    add_format(p)

    p = sub.add_parser("normal-form", help="normal-form charts of a singularity")
    p.add_argument("--singularity", required=True)
    p.add_argument("--ambient", type=int, required=True)
    add_mesh_flags(p)
    add_format(p)

    p = sub.add_parser("batch", help="analyse several documents in one stream")
    p.add_argument("input", nargs="?", default=None)
    add_format(p)

    return parser


_HANDLERS = {
    "type": _cmd_type,
    "classify": _cmd_classify,
    "enumerate": _cmd_enumerate,
    "codim": _cmd_codim,
    "tangent": _cmd_tangent,
    "surface": _cmd_surface,
    "veronese": _cmd_veronese,
    "opening": _cmd_opening,
    "morin": _cmd_morin,
    "family": _cmd_family,
    "normal-form": _cmd_normal_form,
    "batch": _cmd_batch,
}


def _render(report: Report, fmt: str) -> str:
    if fmt == "structured":
        obj = {}
        for key, value in report:
            obj[key] = value
        return json.dumps(obj, indent=2, sort_keys=False) + "\n"
    lines = []
    for key, value in report:
        if isinstance(value, list):
            lines.append(f"{key}:")
            lines.extend(f"  {item}" for item in value)
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str]) -> Tuple[int, str]:
    """Execute one CLI invocation; returns (exit code, report text)."""
    parser = build_parser()
    args = parser.parse_args(list(argv))
    handler = _HANDLERS[args.command]
    try:
        code, report = handler(args)
    except _GUARD_ERRORS as exc:
        return GUARD, _render([("error", str(exc))], args.format)
    return code, _render(report, args.format)


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
