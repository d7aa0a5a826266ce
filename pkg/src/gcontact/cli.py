"""Command-line entry point: ``gcontact <command> [document] [flags]``.

Exit status: 0 when every check passes, 1 when any check fails, 2 on input
errors (unreadable documents, unknown names, malformed data).
"""

import argparse
import json
import os
import sys

from .courant import (
    TwistError, check_courant_axioms, contact_algebroid, dorfman_contact, random_mc_twists,
    reduce_bracket_oracle, reduce_differential_oracle, standard_algebroid, validate_maurer_cartan,
)
from .document import DocumentError, load_document
from .forms import DimensionError
from .frame import ModeError, NilParseError, coordinate_frame, format_nil, parse_nil, validate_frame
from .report import Report, encode_residual
from .sections import SplitMix64, random_contact_section, random_form
from .spinor import (
    annihilator, check_annihilator_involutive, geometric_type, mukai_mixed, solve_involutive,
    twisted_differential, validate_mixed_pair,
)
from .structures import (
    BbaTransform, DegenerateError, DualityError, StructureError, assemble_jinv, check_cokahler,
    check_einstein_pairing, jinv_report, sekiya_deformation_report, swap_fg, t_dualize_circle,
    transform_mixed_pair, transform_sekiya, transform_section, transform_twists, validate_cech,
    validate_metric, validate_sekiya,
)

INPUT_ERRORS = (DocumentError, DimensionError, NilParseError, ModeError, KeyError, TypeError, ValueError)


def max_degree():
    try:
        return int(os.environ.get("GC_MAX_DEGREE", "4"))
    except ValueError:
        raise DocumentError("GC_MAX_DEGREE must be an integer") from None


# -- commands ---------------------------------------------------------------------

def cmd_validate(args, doc):
    rep = Report()
    rep.extend(validate_frame(doc.frame))
    for name in doc.names("twists"):
        rep.extend(validate_maurer_cartan(doc.frame, doc.twists(name)), f"twists[{name}].")
    for name in doc.names("mixed_pairs"):
        mp = doc.mixed_pair(name)
        rep.extend(
            validate_mixed_pair(mp, strict=args.strict_pair_nondegeneracy, sample_points=doc.sample_points),
            f"pair[{name}].",
        )
        if doc.sample_points and not all(f.is_constant() for f in mp.pair):
            types = ", ".join(
                f"{[str(x.encode()) for x in pt]}: {geometric_type(mp.pair, pt)}" for pt in doc.sample_points
            )
            rep.skip(f"pair[{name}].geometric_type", notes=f"type by sample point {types}")
    for name in doc.names("quadruples"):
        q = doc.quadruple(name)
        sub = validate_sekiya(q)
        rep.extend(sub, f"quadruple[{name}].")
        if sub.ok:
            rep.extend(jinv_report(assemble_jinv(q, check=False)), f"quadruple[{name}].")
    for name in doc.names("metrics"):
        rep.extend(validate_metric(doc.metric(name)), f"metric[{name}].")
    return rep, None


def cmd_axioms(args, doc):
    frame = doc.frame
    if args.bracket == "standard":
        H = doc.form(args.H) if args.H else None
        alg = standard_algebroid(frame, H, corrupt=args.corrupt)
    else:
        t = doc.twists(args.twists) if args.twists else None
        alg = contact_algebroid(frame, t, corrupt=args.corrupt, variant=args.variant)
    rep = check_courant_axioms(alg, trials=args.trials, seed=args.seed, prefix=f"axioms.{args.bracket}")
    return rep, None


def _degree_bound(args):
    cap = max_degree()
    if args.degree_bound > cap:
        raise DocumentError(f"--degree-bound {args.degree_bound} exceeds GC_MAX_DEGREE={cap}")
    return args.degree_bound


def cmd_involutivity(args, doc):
    mp = doc.mixed_pair(args.pair)
    t = doc.twists(args.twists) if args.twists else _zero_twists(doc)
    rep = Report()
    w = solve_involutive(doc.frame, mp.pair, t, degree_bound=_degree_bound(args))
    rep.add(
        "involutivity.witness", w is not None,
        notes=f"degree bound {args.degree_bound}" + ("" if w is None else "; witness in result"),
    )
    if all(f.is_constant() for f in mp.pair):
        rep.extend(check_annihilator_involutive(doc.frame, mp, t))
    return rep, None if w is None else w.encode()


def _zero_twists(doc):
    from .sections import Twists

    return Twists.zero(doc.n)


def cmd_transform(args, doc):
    t = doc.transform(args.by)
    kind, name = _resolve_target(doc, args.target)
    rep = Report()
    if kind == "sections":
        s = doc.section(name)
        return rep, transform_section(t, s).encode()
    if kind == "mixed_pairs":
        mp = doc.mixed_pair(name)
        p2 = transform_mixed_pair(t, mp.pair, args.variant)
        same = mukai_mixed(p2, p2) == mukai_mixed(mp.pair, mp.pair)
        rep.add("transform.mukai_preserved", same)
        before = annihilator(mp.pair, doc.sample_points)
        after = annihilator(p2, doc.sample_points)
        ok = all(
            _span_equal_sections([transform_section(t, s) for s in a.basis], b.basis, a.point)
            for a, b in zip(before, after)
        )
        rep.add("transform.annihilator_equivariant", ok, notes=f"variant {args.variant}")
        return rep, {"phi": p2[0].encode(), "psi": p2[1].encode()}
    if kind == "twists":
        tw = doc.twists(name)
        out = transform_twists(doc.frame, t, tw, args.variant)
        rep.extend(validate_maurer_cartan(doc.frame, out), "transform.")
        return rep, out.encode()
    if kind == "quadruples":
        q = doc.quadruple(name)
        rep.extend(sekiya_deformation_report(t, q), "transform.")
        return rep, transform_sekiya(t, q).encode()
    raise DocumentError(f"cannot transform objects of kind {kind}")


def _span_equal_sections(u, v, point):
    from .linalg import span_equal

    def coords(s):
        s = s.evaluate(point) if point is not None else s
        return [c.const_value() for c in s.to_coords()]

    return span_equal([coords(s) for s in u], [coords(s) for s in v], 2 * (u or v)[0].n + 2) if (u or v) else True


def _resolve_target(doc, name):
    hits = [k for k in ("sections", "mixed_pairs", "twists", "quadruples") if name in doc.raw.get(k, {})]
    if not hits:
        raise DocumentError(f"missing key {name} (no section, mixed pair, twists or quadruple of that name)")
    return hits[0], name


def cmd_cokahler(args, doc):
    rep = check_cokahler(doc.quadruple(args.j1), doc.quadruple(args.j2), doc.metric(args.metric))
    return rep, None


def _pair_or_form(doc, name):
    if name in doc.raw.get("mixed_pairs", {}):
        return doc.mixed_pair(name).pair
    return doc.form(name)


def cmd_einstein(args, doc):
    rep = Report()
    c = check_einstein_pairing(_pair_or_form(doc, args.p1), _pair_or_form(doc, args.p2))
    rep.add("einstein.proportional", c is not None, notes="" if c is None else f"c = {c.encode()}")
    return rep, None if c is None else {"c": c.encode()}


def cmd_tdualize(args, doc):
    mp = doc.mixed_pair(args.pair)
    t = doc.twists(args.twists) if args.twists else _zero_twists(doc)
    dual, t2, _, _ = t_dualize_circle(mp, t, fiber_indices=args.fibers or ())
    rep = Report()
    rep.extend(validate_mixed_pair(dual), "dual.")
    back = t_dualize_circle(dual, t2)[0]
    rep.add("tduality.involution", back == mp)
    w = solve_involutive(doc.frame, mp.pair, t, degree_bound=min(1, max_degree()))
    if w is not None:
        res = twisted_differential(doc.frame, dual.pair, t2)
        from .spinor import clifford_contact

        img = clifford_contact(swap_fg(w.V), dual.pair)
        rep.add("tduality.involutivity_transfer", res == img, notes="witness: swapped witness of the input")
    else:
        rep.skip("tduality.involutivity_transfer", notes="input has no witness within degree 1")
    return rep, {"pair": dual.encode(), "twists": t2.encode()}


def cmd_cech(args, doc):
    other = doc.cech(args.other) if args.other else None
    return validate_cech(doc.frame, doc.cech(args.data), doc.twists(args.expected), other), None


def cmd_parse_nil(args):
    frame = parse_nil(args.spec)
    rep = validate_frame(frame)
    out = {
        "dim": frame.dim, "mode": frame.mode, "nil": format_nil(frame),
        "d": {str(k): frame.d_generator(k).encode() for k in range(1, frame.dim + 1) if frame.d_generator(k)},
    }
    return rep, out


def cmd_oracle(args, doc):
    if args.check == "sekiya":
        frames = [None]
    else:
        frames = [doc.frame] if doc is not None else [coordinate_frame(3), parse_nil("(0,0,12)")]
    rep = Report()
    for frame in frames:
        tag = "" if frame is None else f"{frame.mode}{frame.dim}"
        for trial in range(args.trials):
            rng = SplitMix64(args.seed * 1_000_003 + trial)
            if args.check == "sekiya":
                _oracle_sekiya(rep, rng, frame, tag, trial)
                continue
            t, _ = random_mc_twists(rng, frame)
            if args.check == "bracket":
                s1, s2 = random_contact_section(rng, frame), random_contact_section(rng, frame)
                a = dorfman_contact(frame, s1, s2, t)
                b = reduce_bracket_oracle(frame, t.F, t.H3, t.H2, s1, s2)
                rep.add(f"oracle.bracket.{tag}", a == b, {"direct": a, "oracle": b}, trial=trial)
            else:
                p = (random_form(rng, frame, 0) + random_form(rng, frame, 2),
                     random_form(rng, frame, 1) + random_form(rng, frame, 3))
                a = twisted_differential(frame, p, t)
                b = reduce_differential_oracle(frame, t.F, t, *p)
                rep.add(f"oracle.differential.{tag}", a == b, {"direct": list(a), "oracle": list(b)}, trial=trial)
    return _collapse(rep), None


def _oracle_sekiya(rep, rng, frame, tag, trial):
    from .forms import Vector, blade, eps
    from .frame import FrameAlgebra
    from .structures import UnrepresentableDeformation, cosymplectic_quadruple

    n = 5
    fi = FrameAlgebra(n, "invariant")
    q = cosymplectic_quadruple(blade(n, (1, 2)) + blade(n, (3, 4)), eps(n, 5), Vector.basis(n, 5))
    t = BbaTransform(random_form(rng, fi, 2), random_form(rng, fi, 1, density=1), random_form(rng, fi, 1, density=1))
    try:
        q2 = transform_sekiya(t, q)
    except UnrepresentableDeformation:
        rep.skip("oracle.sekiya.cosymplectic5", notes="deformed mu irrational")
        return
    J = t.matrix() @ assemble_jinv(q) @ t.inverse().matrix()
    rep.add("oracle.sekiya.cosymplectic5", assemble_jinv(q2, check=False) == J, trial=trial)


def _collapse(rep):
    """One line per check name: the first failure if any, otherwise a pass."""
    out = Report()
    groups = {}
    for c in rep.checks:
        groups.setdefault(c.name, []).append(c)
    for name, cs in groups.items():
        fails = [c for c in cs if c.status == "FAIL"]
        ran = sum(c.status != "SKIP" for c in cs)
        notes = f"{ran} trials" + (f", {len(cs) - ran} skipped: {next(c.notes for c in cs if c.status == 'SKIP')}" if ran < len(cs) else "")
        if fails:
            out.add(name, False, {"trial": fails[0].trial, "residual": fails[0].residual}, notes=notes)
        elif ran == 0:
            out.skip(name, notes=notes)
        else:
            out.add(name, True, notes=notes)
    return out


# -- plumbing --------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="gcontact", description="Exact checks for generalised contact geometry.")
    p.add_argument("--format", choices=("json", "text"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def doc_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("document")
        sp.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
        return sp

    sp = doc_cmd("validate", "frame, twists, mixed pairs, quadruples and metrics")
    sp.add_argument("--strict-pair-nondegeneracy", action="store_true")

    sp = doc_cmd("axioms", "Courant axioms on seeded random sections")
    sp.add_argument("--bracket", choices=("standard", "contact"), default="contact")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--H", help="name of the 3-form for the standard bracket")
    sp.add_argument("--twists", help="name of the twists for the contact bracket")
    sp.add_argument("--variant", choices=("reduced", "flipped"), default="reduced")
    sp.add_argument("--corrupt", choices=("drop_twist",), default=None)

    sp = doc_cmd("involutivity", "solve d(phi, psi) = V.(phi, psi)")
    sp.add_argument("--pair", required=True)
    sp.add_argument("--twists")
    sp.add_argument("--degree-bound", type=int, default=0)

    sp = doc_cmd("transform", "apply a (B,b,a)-transform")
    sp.add_argument("--by", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--variant", choices=("consistent", "flipped"), default="consistent")

    sp = doc_cmd("cokahler", "generalised coKahler conditions")
    sp.add_argument("--j1", required=True)
    sp.add_argument("--j2", required=True)
    sp.add_argument("--metric", required=True)

    sp = doc_cmd("einstein", "proportionality constant of two pairings")
    sp.add_argument("--p1", required=True)
    sp.add_argument("--p2", required=True)

    sp = doc_cmd("tdualize", "circle T-dual of a mixed pair")
    sp.add_argument("--pair", required=True)
    sp.add_argument("--twists")
    sp.add_argument("--fibers", type=int, nargs="*")

    sp = doc_cmd("cech", "curvature and cocycle conditions of patch data")
    sp.add_argument("--data", required=True)
    sp.add_argument("--expected", required=True)
    sp.add_argument("--other")

    sp = sub.add_parser("parse-nil", help="parse a structure-equation string")
    sp.add_argument("spec")
    sp.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    sp = sub.add_parser("oracle", help="circle-reduction and conjugation cross-checks")
    sp.add_argument("document", nargs="?")
    sp.add_argument("--check", choices=("bracket", "differential", "sekiya"), required=True)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    return p


COMMANDS = {
    "validate": cmd_validate, "axioms": cmd_axioms, "involutivity": cmd_involutivity,
    "transform": cmd_transform, "cokahler": cmd_cokahler, "einstein": cmd_einstein,
    "tdualize": cmd_tdualize, "cech": cmd_cech, "oracle": cmd_oracle,
}


def emit(rep, result, fmt, out):
    if fmt == "json":
        payload = {"checks": [c.as_dict() for c in rep.ordered()]}
        if result is not None:
            payload["result"] = encode_residual(result)
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        text = rep.to_text()
        if text:
            out.write(text + "\n")
        if result is not None:
            out.write(json.dumps(encode_residual(result), sort_keys=True) + "\n")
        failed = len(rep.failures())
        out.write(f"{len(rep.checks)} checks, {failed} failed\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "parse-nil":
            rep, result = cmd_parse_nil(args)
        else:
            doc = load_document(args.document) if getattr(args, "document", None) else None
            rep, result = COMMANDS[args.command](args, doc)
    except (TwistError, StructureError, DualityError, DegenerateError) as exc:
        print(f"gcontact: {exc}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"gcontact: input error: {msg}", file=sys.stderr)
        return 2
    emit(rep, result, args.format, out)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
