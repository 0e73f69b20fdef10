"""Command-line front end.

Exit codes: 0 when every check passes, 1 for a mathematical violation or an
unmet hypothesis, 2 for unreadable input or bad usage.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import _config, corpus, grouplie, serialize, suites
from .abelian import AbelianPGroup
from .brace import Brace, require_brace
from .errors import (
    AxiomError,
    BraceforgeError,
    HypothesisError,
    InternalCheckError,
    StructuralError,
)
from .prelie import PreLieRing, associative_multiple, require_prelie, witt, zero_prelie

BRACE_KINDS = ["trivial", "radical-cyclic", "radical-triangular", "radical-affine", "flows-witt", "direct-sum"]
PRELIE_KINDS = ["witt", "zero", "associative-multiple", "triangular"]
GROUP_KINDS = ["heisenberg", "cyclic", "elementary-abelian", "adjoint"]


class UsageError(BraceforgeError):
    pass


def _emit(doc, out: str | None) -> None:
    text = serialize.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StructuralError(f"cannot read {path}: {exc}") from exc
    return serialize.loads(text)


def load_object(path: str):
    """Brace, pre-Lie ring or group from JSON, validated structurally only."""
    doc = _read(path)
    kind = serialize.kind_of(doc)
    if kind == "group":
        return kind, doc, grouplie.group_from_json(doc)
    A = serialize.group_from_json(doc)
    if kind == "brace":
        return kind, doc, Brace(A, serialize.table_from_json(doc, "star", A))
    return kind, doc, PreLieRing(A, serialize.table_from_json(doc, "dot", A))


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--kind {args.kind} needs " + ", ".join(f"--{m}" for m in missing))


def _construct(args):
    k = args.kind
    if args.p is not None and args.p == 2 and k not in GROUP_KINDS:
        raise UsageError("constructors need an odd prime")
    if k == "trivial":
        _need(args, "p", "exponents")
        return corpus.construct(k, p=args.p, exponents=args.exponents)
    if k == "radical-cyclic":
        _need(args, "p", "n")
        return corpus.construct(k, p=args.p, n=args.n)
    if k == "radical-triangular":
        _need(args, "p", "d")
        return corpus.construct(k, p=args.p, d=args.d)
    if k == "radical-affine":
        _need(args, "p", "e")
        return corpus.construct(k, p=args.p, e=args.e)
    if k == "flows-witt":
        _need(args, "p", "d")
        return corpus.construct(k, p=args.p, d=args.d, e=args.e or 1)
    if k == "direct-sum":
        if not args.part:
            raise UsageError("--kind direct-sum needs at least one --part FILE")
        parts = []
        for path in args.part:
            kind, _doc, obj = load_object(path)
            if kind != "brace":
                raise UsageError(f"{path} is not a brace")
            parts.append(require_brace(obj))
        return corpus.direct_sum(*parts)
    if k == "witt":
        _need(args, "p", "d")
        return witt(args.p, args.d, args.e or 1)
    if k == "zero":
        _need(args, "p", "exponents")
        return zero_prelie(AbelianPGroup(args.p, args.exponents))
    if k == "associative-multiple":
        _need(args, "p", "n")
        return associative_multiple(args.p, args.n)
    if k == "triangular":
        _need(args, "p", "d")
        return corpus.triangular_prelie(args.p, args.d)
    if k == "heisenberg":
        _need(args, "p")
        return grouplie.heisenberg(args.p, args.e or 1)
    if k == "cyclic":
        _need(args, "p", "e")
        return grouplie.cyclic(args.p, args.e)
    if k == "elementary-abelian":
        _need(args, "p", "d")
        return grouplie.elementary_abelian(args.p, args.d)
    if k == "adjoint":
        if not args.part or len(args.part) != 1:
            raise UsageError("--kind adjoint needs exactly one --part FILE holding a brace")
        from .brace import adjoint_group

        kind, _doc, obj = load_object(args.part[0])
        if kind != "brace":
            raise UsageError(f"{args.part[0]} is not a brace")
        return adjoint_group(require_brace(obj))
    raise UsageError(f"unknown kind {k!r}")


def cmd_construct(args) -> int:
    obj = _construct(args)
    _emit(obj.to_json(), args.out)
    return 0


def cmd_verify(args) -> int:
    kind, doc, obj = load_object(args.input)
    target = {"kind": kind, "sha256": serialize.digest(doc)}
    rep = suites.run_suite(args.suite, obj, target)
    _emit(rep.to_json(timing=args.timing), args.report)
    return rep.exit_code


def _load_brace(path: str) -> Brace:
    kind, _doc, obj = load_object(path)
    if kind != "brace":
        raise UsageError(f"{path} holds a {kind}, expected a brace")
    return require_brace(obj)


def cmd_transform(args) -> int:
    from . import transform

    B = _load_brace(args.input)
    if args.which == "dot-pA":
        ring = transform.dot_pA(B, args.variant).ring
    elif args.which == "bullet":
        if args.variant != "primary":
            raise UsageError("bullet is built from the primary averaged product only")
        ring = transform.bullet(B).ring
    else:
        ring = transform.strong_dot(B, args.variant).ring
    rep = transform.verify_ring(ring)
    doc = ring.to_json()
    doc["provenance"] = transform.provenance(B, args.which, args.variant)
    doc["provenance"]["prelie_axioms"] = rep.to_json()
    _emit(doc, args.out)
    return 0 if rep.ok else 1


def cmd_flows(args) -> int:
    from . import flows
    from .prelie import scale_product

    kind, doc, obj = load_object(args.input)
    if kind != "prelie":
        raise UsageError(f"{args.input} holds a {kind}, expected a pre-Lie ring")
    P = require_prelie(obj)
    if args.scale is not None:
        P = scale_product(P, args.scale)
    B = flows.group_of_flows(P)
    out = B.to_json()
    out["provenance"] = {
        "source_prelie": serialize.digest(doc),
        "construction": "group-of-flows",
        "scale": args.scale,
    }
    _emit(out, args.out)
    return 0


def cmd_analyze_group(args) -> int:
    kind, doc, obj = load_object(args.input)
    if kind == "brace":
        from .brace import adjoint_group

        G = adjoint_group(require_brace(obj))
    elif kind == "group":
        G = obj
    else:
        raise UsageError("analyze-group needs a group or a brace")
    lcs = grouplie.lower_central_series(G)
    pw = grouplie.is_powerful_group(G)
    report = {
        "target": {"kind": kind, "sha256": serialize.digest(doc)},
        "order": G.order,
        "p": G.p,
        "n": G.n,
        "abelian": G.is_abelian(),
        "exponent": G.exponent,
        "class": grouplie.nilpotency_class(G),
        "lower_central_orders": [H.order for H in lcs],
        "derived_length": grouplie.derived_length(G),
        "generator_rank": grouplie.generator_rank(G),
        "powerful": pw,
        "uniform": grouplie.is_uniform(G),
        "coclass": grouplie.coclass_check(G).to_json(),
    }
    _emit(report, args.out)
    return 0


def cmd_xi(args) -> int:
    _emit(suites.xi_report(args.p), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="braceforge", description="Finite braces, pre-Lie rings and their correspondences.")
    ap.add_argument("--parallel", type=int, default=None, metavar="N", help="worker threads for sweeps (default: all cores)")
    ap.add_argument("--timing", action="store_true", help="include wall-clock timing in reports")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a corpus object as JSON")
    c.add_argument("--kind", required=True, choices=BRACE_KINDS + PRELIE_KINDS + GROUP_KINDS)
    c.add_argument("--p", type=int)
    c.add_argument("--exponents", type=int, nargs="+")
    c.add_argument("--n", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--e", type=int)
    c.add_argument("--part", action="append", help="input file for direct-sum or adjoint (repeatable)")
    c.add_argument("--out")
    c.set_defaults(fn=cmd_construct)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    v.add_argument("input")
    v.add_argument("--report")
    v.set_defaults(fn=cmd_verify)

    t = sub.add_parser("transform", help="pre-Lie ring from a brace")
    t.add_argument("--which", required=True, choices=["dot-pA", "bullet", "strong-dot"])
    t.add_argument("--variant", default="primary", choices=["primary", "upper-limit", "p-factor"])
    t.add_argument("input")
    t.add_argument("--out")
    t.set_defaults(fn=cmd_transform)

    f = sub.add_parser("flows", help="group-of-flows brace of a pre-Lie ring")
    f.add_argument("input")
    f.add_argument("--scale", type=int, help="multiply the product by this integer first")
    f.add_argument("--out")
    f.set_defaults(fn=cmd_flows)

    g = sub.add_parser("analyze-group", help="structure report for a group or an adjoint group")
    g.add_argument("input")
    g.add_argument("--out")
    g.set_defaults(fn=cmd_analyze_group)

    x = sub.add_parser("xi", help="the unit xi for a prime p")
    x.add_argument("p", type=int)
    x.add_argument("--out")
    x.set_defaults(fn=cmd_xi)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        _config.set_workers(args.parallel)
    except ValueError as exc:
        ap.error(str(exc))
    try:
        return args.fn(args)
    except (HypothesisError, AxiomError, InternalCheckError) as exc:
        print(f"braceforge: {exc}", file=sys.stderr)
        return 1
    except (StructuralError, UsageError, ValueError) as exc:
        print(f"braceforge: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
