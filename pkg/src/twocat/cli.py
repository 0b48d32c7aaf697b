"""Command-line surface.

Exit codes: 0 = pass, 1 = definitive fail, 2 = budget or usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import serialize as ser
from .comma import canonical_slice, comma
from .core import (BudgetExceeded, dual, product, validate_two_category)
from .dsl import DslError, ValidationFailure, elaborate, parse
from .fibrations import check_preadjoint, check_prefibration
from .functors import LaxFunctor, fiber, identity_functor, validate_lax_functor
from .generate import generate
from .homology import (asphericity_certificate, find_homotopically_final,
                       homology, weq_oracle)
from .integration import integrate, tranche, validate_two_cat_valued
from .nerve import check_simplicial_identities, lax_nerve
from .pipeline import DiagramSpec, thma_pipeline
from .serialize import load_doc, save_doc
from .strictify import tilde_materialize


def _load_two_category(path: str):
    if path.endswith(".json"):
        doc = load_doc(path)
        return ser.two_category_from_doc(doc), doc
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    C = elaborate(parse(text))
    return C, ser.two_category_to_doc(C)


def _load_functor(path: str) -> LaxFunctor:
    doc = load_doc(path)
    if doc["kind"] == "lax_functor_bundle":
        A = ser.two_category_from_doc(doc["source"])
        B = ser.two_category_from_doc(doc["target"])
        return ser.lax_functor_from_doc(doc["functor"], A, B,
                                        doc["source"], doc["target"])
    raise ValueError("expected a lax_functor_bundle document")


def _emit(args, doc) -> None:
    if getattr(args, "out", None):
        save_doc(doc, args.out)
    else:
        print(ser.canonical_json(doc))


def cmd_check(args) -> int:
    C, _ = _load_two_category(args.file)
    report = validate_two_category(C)
    if report.ok:
        print(f"ok: {C.n_objects} objects, {C.n_one} 1-cells, {C.n_two} 2-cells")
        return 0
    for law, witness in report.violations:
        print(f"violation {law} witness={witness}")
    return 1


def cmd_build(args) -> int:
    C, doc = _load_two_category(args.file)
    _emit(args, doc)
    return 0


def cmd_dual(args) -> int:
    C, _ = _load_two_category(args.file)
    _emit(args, ser.two_category_to_doc(dual(C, args.kind)))
    return 0


def cmd_product(args) -> int:
    C, _ = _load_two_category(args.files[0])
    D, _ = _load_two_category(args.files[1])
    _emit(args, ser.two_category_to_doc(product(C, D)))
    return 0


def cmd_comma(args) -> int:
    if args.file.endswith(".json") and load_doc(args.file).get("kind") == "lax_functor_bundle":
        u = _load_functor(args.file)
        from .comma import comma_of_strict
        builder = comma_of_strict if u.strict else comma
        ct = builder(u, args.object, args.variant, args.budget)
    else:
        C, _ = _load_two_category(args.file)
        ct = canonical_slice(C, args.object, args.variant, args.budget)
    _emit(args, ser.two_category_to_doc(ct.carrier))
    return 0


def cmd_fiber(args) -> int:
    u = _load_functor(args.file)
    F = fiber(u, args.object)
    _emit(args, ser.two_category_to_doc(F))
    return 0


def _functor_or_identity(path: str, budget=None) -> LaxFunctor:
    if path.endswith(".json") and load_doc(path).get("kind") == "lax_functor_bundle":
        return _load_functor(path)
    C, _ = _load_two_category(path)
    return identity_functor(C)


def cmd_integrate(args) -> int:
    u = _functor_or_identity(args.file)
    T = tranche(u, args.budget)
    total, proj = integrate(T, args.budget)
    _emit(args, ser.two_category_to_doc(total.carrier))
    return 0


def cmd_tranche(args) -> int:
    T = tranche(_functor_or_identity(args.file), args.budget)
    rep = validate_two_cat_valued(T)
    doc = {"kind": "tranche_report", "values": [v.n_cells for v in T.values],
           "valid": rep.ok}
    _emit(args, doc)
    return 0 if rep.ok else 1


def cmd_tilde_eval(args) -> int:
    C, _ = _load_two_category(args.file)
    dump = tilde_materialize(C, args.length_bound)
    doc = {"kind": "tilde_truncation", "closed": dump["closed"],
           "length_bound": dump["length_bound"],
           "objects": len(dump["objects"]),
           "one_cells": len(dump["one_cells"]),
           "two_cells": len(dump["two_cells"])}
    _emit(args, doc)
    return 0


def cmd_nerve(args) -> int:
    C, _ = _load_two_category(args.file)
    S = lax_nerve(C, args.dim, args.budget)
    bad = check_simplicial_identities(S)
    doc = ser.simplicial_to_doc(S, name=C.name)
    _emit(args, doc)
    return 0 if not bad else 1


def cmd_homology(args) -> int:
    C, _ = _load_two_category(args.file)
    S = lax_nerve(C, args.dim, args.budget)
    rep = homology(S)
    if args.format == "raw":
        _emit(args, ser.homology_to_doc(rep, name=C.name))
    else:
        print(str(rep))
    return 0


def cmd_weq(args) -> int:
    u = _load_functor(args.file)
    verdict = weq_oracle(u, args.dim, budget=args.budget)
    print(str(verdict))
    return 0 if verdict.ok else 1


def cmd_finalobj(args) -> int:
    C, _ = _load_two_category(args.file)
    found = find_homotopically_final(C, args.variant)
    labels = [C.obj_labels[z] if C.obj_labels else z for z in found]
    print(f"{args.variant}: {labels}")
    if args.variant == "any":
        return 0
    return 0 if found else 1


def cmd_prefib(args) -> int:
    u = _load_functor(args.file)
    cert = (check_prefibration(u, args.kind, args.budget)
            if args.kind in ("pre", "preop", "preco", "precoop")
            else check_preadjoint(u, args.kind, args.budget))
    if cert.holds:
        print(f"holds ({args.kind}); witnesses per base object recorded")
        return 0
    print(f"fails at {cert.counterexample}")
    return 1


def cmd_thma(args) -> int:
    doc = load_doc(args.diagram)
    if doc.get("kind") != "diagram":
        print("not a diagram document", file=sys.stderr)
        return 2
    A = ser.two_category_from_doc(doc["A"])
    B = ser.two_category_from_doc(doc["B"])
    C = ser.two_category_from_doc(doc["C"])
    u = ser.lax_functor_from_doc(doc["u"], A, B, doc["A"], doc["B"])
    v = ser.lax_functor_from_doc(doc["v"], B, C, doc["B"], doc["C"])
    w = ser.lax_functor_from_doc(doc["w"], A, C, doc["A"], doc["C"])
    from .functors import compose_lax
    vu = compose_lax(v, u)
    sigma = ser.transformation_from_doc(doc["sigma"], vu, w)
    K = args.dim or doc.get("K", 3)
    D = DiagramSpec(doc.get("name", "diagram"), u, v, w, sigma, K,
                    args.budget or doc.get("budget"))
    report = thma_pipeline(D)
    for line in report.lines():
        print(line)
    if report.error:
        print(f"error: {report.error}", file=sys.stderr)
    return report.exit_code


def cmd_gen(args) -> int:
    spec = ":".join(args.spec) if isinstance(args.spec, list) else args.spec
    C = generate(spec, seed=args.seed)
    _emit(args, ser.two_category_to_doc(C))
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="twocat",
        description="finite strict 2-categories: validation, slices, "
                    "integration, strictification, nerve homology")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, budget=True, out=True, dim=False):
        if budget:
            p.add_argument("--budget", type=int, default=None,
                           help="cell-count budget; exceeding it exits 2")
        if out:
            p.add_argument("--out", default=None, help="output file")
        if dim:
            p.add_argument("--dim", type=int, default=3,
                           help="truncation level K")
        p.add_argument("--format", choices=("report", "raw"), default="report")

    p = sub.add_parser("check", help="validate a 2-category file")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("build", help="elaborate a presentation to a document")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("dual", help="op/co/coop dual")
    p.add_argument("file")
    p.add_argument("--kind", choices=("op", "co", "coop"), required=True)
    common(p)
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("product", help="product of two 2-categories")
    p.add_argument("files", nargs=2)
    common(p)
    p.set_defaults(fn=cmd_product)

    p = sub.add_parser("comma", help="canonical slice over an object")
    p.add_argument("file")
    p.add_argument("--object", type=int, required=True)
    p.add_argument("--variant", choices=("lax", "oplax", "colax", "opcolax"),
                   default="lax")
    common(p)
    p.set_defaults(fn=cmd_comma)

    p = sub.add_parser("fiber", help="fiber of a strict functor bundle")
    p.add_argument("file")
    p.add_argument("--object", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_fiber)

    p = sub.add_parser("integrate", help="integral of the identity tranche")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_integrate)

    p = sub.add_parser("tranche", help="slice family of the identity functor")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_tranche)

    p = sub.add_parser("tilde-eval", help="materialize a string truncation")
    p.add_argument("file")
    p.add_argument("--length-bound", type=int, default=3)
    common(p)
    p.set_defaults(fn=cmd_tilde_eval)

    p = sub.add_parser("nerve", help="truncated lax nerve export")
    p.add_argument("file")
    common(p, dim=True)
    p.set_defaults(fn=cmd_nerve)

    p = sub.add_parser("homology", help="Betti numbers and torsion of the nerve")
    p.add_argument("file")
    common(p, dim=True)
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("weq", help="weak-equivalence oracle on a functor bundle")
    p.add_argument("file")
    common(p, dim=True)
    p.set_defaults(fn=cmd_weq)

    p = sub.add_parser("finalobj", help="homotopically final/initial objects")
    p.add_argument("file")
    p.add_argument("--variant", choices=("final", "cofinal", "initial", "coinitial"),
                   default="final")
    common(p)
    p.set_defaults(fn=cmd_finalobj)

    p = sub.add_parser("prefib", help="preadjoint / prefibration certificates")
    p.add_argument("file")
    p.add_argument("--kind", default="pre",
                   choices=("pre", "preop", "preco", "precoop",
                            "left", "coleft", "right", "coright"))
    common(p)
    p.set_defaults(fn=cmd_prefib)

    p = sub.add_parser("thma", help="slice-hypothesis pipeline on a diagram")
    p.add_argument("--diagram", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=("report", "raw"), default="report")
    p.set_defaults(fn=cmd_thma)

    p = sub.add_parser("gen", help="generate a corpus instance")
    p.add_argument("spec", nargs="+",
                   help="family spec, e.g. 'interval 3', 'interval:3' or "
                        "'product(interval:1,group:2)'")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_gen)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 2
    except ValidationFailure as e:
        for law, witness in e.report.violations:
            print(f"violation {law} witness={witness}")
        return 1
    except DslError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
