"""Command line interface: ``floerbars <group> <command> ...``.

Exit codes: 0 success, 1 a verification or rank check came out false,
2 unreadable or invalid input, 3 internal error.  Machine output goes to
stdout (JSON by default, tab-separated with ``--format tsv``); diagnostics go
to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import documents as docs
from .barcodes import (
    GradedBarcode,
    contract_path,
    shift_barcode,
    sigma_infinity,
    truncate,
    validate_barcode,
    verify_delta_matching,
)
from .bottleneck import bottleneck_matching, quotient_distance_with_shift
from .complexes import (
    dual,
    gamma_diam,
    gamma_fund,
    persistence_barcode,
    selectors,
    spectrum,
    tensor,
    validate_complex,
    verify_filtered_map,
)
from .errors import FloerbarsError, RankError, UndefinedValueError
from .exact import format_rational, parse_rational
from .floer import TwistComplexSpec, distinguish_powers, lower_star_complex, twist_complex
from .persistence import (
    decompose,
    interleaving_distance,
    interleaving_from_matching,
    realize,
    validate_module,
    verify_interleaving,
)

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class CheckFailed(Exception):
    """A verification returned false; carries the document to print anyway."""

    def __init__(self, message, doc=None, rows=None):
        super().__init__(message)
        self.doc, self.rows = doc, rows


class Output:
    def __init__(self, doc, rows=None, header=None):
        self.doc, self.rows, self.header = doc, rows, header


def _barcode_rows(B: GradedBarcode):
    return [(b.degree, format_rational(b.left), format_rational(b.right)) for b in B], ("deg", "left", "right")


def _barcode_output(B: GradedBarcode) -> Output:
    rows, header = _barcode_rows(B)
    return Output(docs.barcode_to_doc(B), rows, header)


def _load_barcode(path) -> GradedBarcode:
    """Accept a barcode document, or a complex document whose persistence is taken."""
    doc = docs.load_file(path)
    if isinstance(doc, dict) and "generators" in doc:
        return persistence_barcode(docs.complex_from_doc(doc))
    return docs.barcode_from_doc(doc)


def _rat_arg(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sigma_doc(sig: dict[int, int]) -> dict:
    return {str(k): v for k, v in sig.items()}


# barcode -------------------------------------------------------------------

def cmd_barcode(args) -> Output:
    sub = args.sub
    if sub == "distance":
        B, C = _load_barcode(args.a), _load_barcode(args.b)
        d, cert = bottleneck_matching(B, C)
        doc = {"schema": docs.SCHEMA, "distance": format_rational(d),
               "certificate": docs.matching_to_doc(cert) if cert else None}
        return Output(doc, [("distance", format_rational(d))], ("key", "value"))
    if sub == "qdistance":
        B, C = _load_barcode(args.a), _load_barcode(args.b)
        d, c = quotient_distance_with_shift(B, C)
        doc = {"schema": docs.SCHEMA, "distance": format_rational(d), "shift": None if c is None else format_rational(c)}
        return Output(doc, [("distance", format_rational(d)), ("shift", doc["shift"] or "")], ("key", "value"))
    if sub == "sigma":
        sig = sigma_infinity(_load_barcode(args.a))
        doc = {"schema": docs.SCHEMA, **_sigma_doc(sig), "total": sum(sig.values())}
        return Output(doc, [(k, v) for k, v in sig.items()] + [("total", doc["total"])], ("deg", "count"))
    if sub == "shift":
        return _barcode_output(shift_barcode(_load_barcode(args.a), args.by))
    if sub == "truncate":
        return _barcode_output(truncate(_load_barcode(args.a), args.eps))
    if sub == "contract":
        return _barcode_output(contract_path(_load_barcode(args.a), args.t))
    if sub == "validate":
        B = docs.barcode_from_doc(docs.load_file(args.a))
        problems = validate_barcode(B)
        doc = {"schema": docs.SCHEMA, "valid": not problems, "problems": problems}
        if problems:
            raise CheckFailed("; ".join(problems), doc)
        return Output(doc, [("valid", "true")], ("key", "value"))
    if sub == "verify-matching":
        B, C = _load_barcode(args.a), _load_barcode(args.b)
        cert = docs.matching_from_doc(docs.load_file(args.cert))
        ok = verify_delta_matching(B, C, cert)
        doc = {"schema": docs.SCHEMA, "valid": ok}
        if not ok:
            raise CheckFailed(f"not a {cert.delta}-matching", doc)
        return Output(doc, [("valid", "true")], ("key", "value"))
    if sub == "render":
        from .plotting import render_barcode

        B = _load_barcode(args.a)
        written = []
        for path in (args.svg, args.png):
            if path:
                written.append(str(render_barcode(B, path, title=args.title)))
        arrows = sum(1 for b in B if b.is_infinite)
        doc = {"schema": docs.SCHEMA, "files": written, "rectangles": len(B), "arrows": arrows}
        rows = [("file", w) for w in written] + [("rectangles", len(B)), ("arrows", arrows)]
        return Output(doc, rows, ("key", "value"))
    raise AssertionError(sub)


# module --------------------------------------------------------------------

def cmd_module(args) -> Output:
    sub = args.sub
    if sub == "realize":
        return Output(docs.module_to_doc(realize(_load_barcode(args.a))))
    if sub == "decompose":
        return _barcode_output(decompose(docs.module_from_doc(docs.load_file(args.a))))
    if sub == "validate":
        problems = validate_module(docs.module_from_doc(docs.load_file(args.a)))
        doc = {"schema": docs.SCHEMA, "valid": not problems, "problems": problems}
        if problems:
            raise CheckFailed("; ".join(problems), doc)
        return Output(doc, [("valid", "true")], ("key", "value"))
    if sub == "distance":
        V, W = (docs.module_from_doc(docs.load_file(p)) for p in (args.a, args.b))
        d = interleaving_distance(V, W)
        return Output({"schema": docs.SCHEMA, "distance": format_rational(d)}, [("distance", format_rational(d))], ("key", "value"))
    if sub == "interleave":
        B, C = _load_barcode(args.a), _load_barcode(args.b)
        d, cert = bottleneck_matching(B, C)
        if cert is None:
            raise CheckFailed("semi-infinite bar counts differ; no interleaving exists",
                              {"schema": docs.SCHEMA, "distance": "inf", "certificate": None})
        return Output(docs.interleaving_to_doc(interleaving_from_matching(B, C, cert)))
    if sub == "verify":
        V, W = (docs.module_from_doc(docs.load_file(p)) for p in (args.a, args.b))
        cert = docs.interleaving_from_doc(docs.load_file(args.cert))
        ok = verify_interleaving(V, W, cert)
        doc = {"schema": docs.SCHEMA, "valid": ok}
        if not ok:
            raise CheckFailed(f"not a ({cert.delta}, {cert.epsilon})-interleaving", doc)
        return Output(doc, [("valid", "true")], ("key", "value"))
    raise AssertionError(sub)


# complex -------------------------------------------------------------------

def _load_complex(path):
    doc = docs.load_file(path)
    if isinstance(doc, dict) and "simplices" in doc:
        return lower_star_complex(docs.simplicial_from_doc(doc))
    return docs.complex_from_doc(doc)


def cmd_complex(args) -> Output:
    sub = args.sub
    if sub == "persistence":
        return _barcode_output(persistence_barcode(_load_complex(args.a)))
    if sub == "validate":
        problems = validate_complex(_load_complex(args.a))
        doc = {"schema": docs.SCHEMA, "valid": not problems, "problems": problems}
        if problems:
            raise CheckFailed("; ".join(problems), doc)
        return Output(doc, [("valid", "true")], ("key", "value"))
    if sub == "spectrum":
        values = [format_rational(v) for v in spectrum(_load_complex(args.a))]
        return Output({"schema": docs.SCHEMA, "spectrum": values}, [(v,) for v in values], ("action",))
    if sub == "selectors":
        sel = selectors(_load_complex(args.a))
        doc = {"schema": docs.SCHEMA, "selectors": {str(d): [format_rational(v) for v in vs] for d, vs in sel.items()}}
        rows = [(d, format_rational(v)) for d, vs in sel.items() for v in vs]
        return Output(doc, rows, ("deg", "selector"))
    if sub == "gamma":
        C = _load_complex(args.a)
        try:
            if args.mode == "diam":
                value = gamma_diam(C)
            else:
                if args.top is None:
                    raise CheckFailed("--mode fund needs --top")
                value = gamma_fund(C, args.top)
        except (RankError, UndefinedValueError) as exc:
            raise CheckFailed(str(exc), {"schema": docs.SCHEMA, "gamma": None, "error": str(exc)}) from None
        doc = {"schema": docs.SCHEMA, "mode": args.mode, "gamma": format_rational(value)}
        return Output(doc, [("gamma", format_rational(value))], ("key", "value"))
    if sub == "tensor":
        return Output(docs.complex_to_doc(tensor(_load_complex(args.a), _load_complex(args.b))))
    if sub == "dual":
        return Output(docs.complex_to_doc(dual(_load_complex(args.a))))
    if sub == "lower-star":
        return Output(docs.complex_to_doc(_load_complex(args.a)))
    if sub == "verify-map":
        phi = docs.map_from_doc(docs.load_file(args.a))
        ok = verify_filtered_map(phi)
        doc = {"schema": docs.SCHEMA, "valid": ok}
        if not ok:
            raise CheckFailed("map is not a filtered chain map with the stated shifts", doc)
        return Output(doc, [("valid", "true")], ("key", "value"))
    raise AssertionError(sub)


# twist ---------------------------------------------------------------------

def cmd_twist(args) -> Output:
    if args.n % 2 or args.n < 2:
        raise argparse.ArgumentTypeError(f"--n must be an even integer >= 2, got {args.n}")
    if args.k1 is not None or args.k2 is not None:
        if args.k1 is None or args.k2 is None:
            raise argparse.ArgumentTypeError("--k1 and --k2 go together")
        v = distinguish_powers(args.k1, args.k2, args.n)
        doc = {
            "schema": docs.SCHEMA,
            "verdict": str(v),
            "kind": v.kind,
            "route": v.route,
            "k1": v.k1,
            "k2": v.k2,
            "n": v.n,
            "sigma1": _sigma_doc(v.sigma1),
            "sigma2": _sigma_doc(v.sigma2),
            "totals": list(v.totals),
            "compared": list(v.compared or v.totals),
            "justification": list(v.justification),
        }
        rows = [("verdict", str(v))] + [("step", s) for s in v.justification]
        return Output(doc, rows, ("key", "value"))
    if args.m is None:
        raise argparse.ArgumentTypeError("give --m (with --emit) or --k1/--k2")
    spec = TwistComplexSpec(args.m, args.n, degree_rule=args.degree_rule)
    C = twist_complex(spec)
    doc = docs.complex_to_doc(C)
    if args.emit and args.emit != "-":
        Path(args.emit).write_text(docs.dumps(doc), encoding="utf-8")
        sig = sigma_infinity(persistence_barcode(C))
        out = {"schema": docs.SCHEMA, "written": args.emit, "sigma": _sigma_doc(sig), "total": sum(sig.values())}
        return Output(out, [("written", args.emit), ("total", out["total"])], ("key", "value"))
    return Output(doc)


# selftest ------------------------------------------------------------------

def cmd_selftest(args) -> Output:
    """Randomised cross-checks against the oracles; seeded by PERSIST_TWIST_SEED."""
    from . import oracles
    from .bottleneck import bottleneck_distance
    from .floer import octahedron, stability_check
    from .random_models import random_barcode, random_complex, random_values

    seed = int(os.environ.get("PERSIST_TWIST_SEED", "0"))
    rng = random.Random(seed)
    failures = []
    K = octahedron()
    for i in range(args.cases):
        B, C = random_barcode(rng), random_barcode(rng)
        if bottleneck_distance(B, C) != oracles.brute_force_bottleneck(B, C):
            failures.append(f"case {i}: bottleneck disagrees with the brute-force oracle")
        if decompose(realize(B)) != B:
            failures.append(f"case {i}: decompose(realize(B)) != B")
        X = random_complex(rng)
        if persistence_barcode(X) != oracles.sublevel_persistence(X):
            failures.append(f"case {i}: reduction disagrees with the sublevel oracle")
        rep = stability_check(K, random_values(rng, K.vertices), random_values(rng, K.vertices))
        if not rep.passed:
            failures.append(f"case {i}: stability bound violated")
    doc = {"schema": docs.SCHEMA, "seed": seed, "cases": args.cases, "failures": failures}
    if failures:
        raise CheckFailed(f"{len(failures)} self-test failures", doc)
    return Output(doc, [("seed", seed), ("cases", args.cases), ("failures", 0)], ("key", "value"))


# plumbing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="floerbars", description="Exact barcodes of action-filtered Z/2 complexes.")
    p.add_argument("--format", choices=("json", "tsv"), default="json", help="stdout format (default json)")
    groups = p.add_subparsers(dest="group", required=True)

    g = groups.add_parser("barcode", help="barcode metrics and transforms")
    s = g.add_subparsers(dest="sub", required=True)
    for name in ("distance", "qdistance"):
        c = s.add_parser(name)
        c.add_argument("a")
        c.add_argument("b")
    s.add_parser("sigma").add_argument("a")
    s.add_parser("validate").add_argument("a")
    c = s.add_parser("shift")
    c.add_argument("a")
    c.add_argument("--by", type=_rat_arg, required=True)
    c = s.add_parser("truncate")
    c.add_argument("a")
    c.add_argument("--eps", type=_rat_arg, required=True)
    c = s.add_parser("contract")
    c.add_argument("a")
    c.add_argument("--t", type=_rat_arg, required=True)
    c = s.add_parser("verify-matching")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("cert")
    c = s.add_parser("render")
    c.add_argument("a")
    c.add_argument("--svg")
    c.add_argument("--png")
    c.add_argument("--title")
    g.set_defaults(func=cmd_barcode)

    g = groups.add_parser("module", help="persistence modules and interleavings")
    s = g.add_subparsers(dest="sub", required=True)
    for name in ("realize", "decompose", "validate"):
        s.add_parser(name).add_argument("a")
    for name in ("distance", "interleave"):
        c = s.add_parser(name)
        c.add_argument("a")
        c.add_argument("b")
    c = s.add_parser("verify")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("cert")
    g.set_defaults(func=cmd_module)

    g = groups.add_parser("complex", help="filtered complexes")
    s = g.add_subparsers(dest="sub", required=True)
    for name in ("persistence", "validate", "spectrum", "selectors", "dual", "lower-star", "verify-map"):
        s.add_parser(name).add_argument("a")
    c = s.add_parser("tensor")
    c.add_argument("a")
    c.add_argument("b")
    c = s.add_parser("gamma")
    c.add_argument("a")
    c.add_argument("--mode", choices=("diam", "fund"), default="diam")
    c.add_argument("--top", type=int)
    g.set_defaults(func=cmd_complex)

    g = groups.add_parser("twist", help="twist-power complexes and separation verdicts")
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--k1", type=int)
    g.add_argument("--k2", type=int)
    g.add_argument("--emit", help="write the complex document here ('-' for stdout)")
    g.add_argument("--degree-rule", choices=("graded-shift", "flat"), default="graded-shift")
    g.set_defaults(func=cmd_twist)

    g = groups.add_parser("selftest", help="randomised oracle cross-checks (seed: PERSIST_TWIST_SEED)")
    g.add_argument("--cases", type=int, default=20)
    g.set_defaults(func=cmd_selftest)
    return p


def _emit(out_doc, rows, header, fmt, stream):
    if fmt == "tsv" and rows is not None:
        if header:
            stream.write("\t".join(header) + "\n")
        for row in rows:
            stream.write("\t".join(str(x) for x in row) + "\n")
    elif fmt == "tsv" and isinstance(out_doc, dict):
        for k, v in out_doc.items():
            stream.write(f"{k}\t{json.dumps(v, ensure_ascii=False)}\n")
    elif out_doc is not None:
        stream.write(docs.dumps(out_doc))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except CheckFailed as exc:
        if exc.doc is not None:
            _emit(exc.doc, exc.rows, None, args.format, sys.stdout)
        print(f"floerbars: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except (FloerbarsError, argparse.ArgumentTypeError) as exc:
        print(f"floerbars: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"floerbars: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(out.doc, out.rows, out.header, args.format, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
