"""Command-line front end.

Subcommands:
  info    algebra report: roots, grading, restricted base, classes,
          centralizer weights, expected character
  kernel  screening-kernel reports per conformal weight
  verify  named check suites: wick, brst, wbn, fs, wakimoto, miura

Weights on the command line are doubled integers ("--max-weight 12" means
conformal weight 6), so half-integer weights never need fraction parsing.
Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input errors.
Output is deterministic for a fixed configuration and seed.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from .presets import build_preset, preset_context, preset_names
from .scalars import QQ, RationalFunctionField
from .screening import (exponential_screenings, generic_screenings,
                        expected_character, kernel_basis)
from .superdata import (DatumError, NotGoodGrading, chi, good_grading,
                        load_datum, restricted_base, tau_form)
from .vertexcalc import CriticalLevel
from . import verify as verify_mod


def _parse_level(text):
    if text == "symbolic":
        return "symbolic"
    return Fraction(text)


def _context_from_args(args):
    if args.preset:
        return preset_context(args.preset, level=_parse_level(args.level))
    if not args.datum:
        raise SystemExit2("one of --preset or --datum is required")
    datum = load_datum(args.datum)
    if not args.labels:
        raise SystemExit2("--labels is required with --datum")
    labels = json.loads(args.labels)
    support = json.loads(args.f_support) if args.f_support else []
    grading = good_grading(datum, labels, support)
    base = restricted_base(grading)
    lf = tau_form(datum, grading)
    ch = chi(datum, grading)
    level = _parse_level(args.level)
    if level == "symbolic":
        field = RationalFunctionField("k")
        lev = field.gen
    else:
        field = QQ
        lev = level
    from .screening import ScreeningContext
    return ScreeningContext(datum, grading, base, lf, ch, field, lev)


class SystemExit2(Exception):
    pass


def _emit(doc, args):
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.format == "json" or not args.out:
        print(text)
    elif args.format == "table":
        _print_table(doc)


def _print_table(doc):
    def walk(prefix, node):
        if isinstance(node, dict):
            for key in sorted(node):
                walk("%s.%s" % (prefix, key) if prefix else str(key),
                     node[key])
        elif isinstance(node, list):
            print("%-40s %s" % (prefix, node))
        else:
            print("%-40s %s" % (prefix, node))

    walk("", doc)


def cmd_info(args):
    if args.preset:
        datum, grading, base, lf, ch = build_preset(args.preset)
    else:
        ctx = _context_from_args(args)
        datum, grading, base, lf = ctx.datum, ctx.grading, ctx.base, \
            ctx.levelform
    maxw2 = args.max_weight
    char = expected_character(datum, grading, maxw2)
    cgens = grading.centralizer_generators()
    doc = {
        "label": datum.label,
        "rank": datum.rank,
        "simple_roots": [datum.roots[p].name for p in datum.simple],
        "positive_roots": [datum.roots[p].name
                           for p in datum.positive_root_positions()],
        "grading_labels2": {datum.roots[p].name: grading.labels2[p]
                            for p in datum.simple},
        "f_support": [datum.roots[p].name for p in grading.f_support],
        "h_dual": str(lf.h_dual),
        "g0_dim": len(grading.g0_indices()),
        "g0_is_cartan": grading.g0_is_cartan(),
        "restricted_base": base.describe(),
        "generator_weights2": sorted(2 - j2 for _, j2, _ in cgens),
        "generator_parities": [p for _, _, p in
                               sorted(cgens, key=lambda t: (2 - t[1], t[2]))],
        "expected_character": {str(w2): char[w2]
                               for w2 in range(0, maxw2 + 1)},
    }
    _emit(doc, args)
    return 0


def cmd_kernel(args):
    ctx = _context_from_args(args)
    kind = args.screenings
    if kind == "auto":
        kind = "exponential" if ctx.grading.g0_is_cartan() else "generic"
    ops = exponential_screenings(ctx) if kind == "exponential" \
        else generic_screenings(ctx)
    char = expected_character(ctx.datum, ctx.grading, args.max_weight)
    reports = []
    status = 0
    for w2 in range(0, args.max_weight + 1):
        rep = kernel_basis(ctx, ops, w2, expected=char[w2])
        reports.append(rep.to_json())
        if rep.kernel_dim != rep.expected_dim:
            status = 1
    doc = {
        "preset": args.preset,
        "level": args.level,
        "screenings": [op.label for op in ops],
        "kind": kind,
        "reports": reports,
        "status": "pass" if status == 0 else "fail",
    }
    _emit(doc, args)
    return status


def cmd_verify(args):
    rng = random.Random(args.seed)
    runner = {
        "wick": verify_mod.verify_wick,
        "brst": verify_mod.verify_brst,
        "wbn": verify_mod.verify_wbn,
        "fs": verify_mod.verify_fs_suite,
        "wakimoto": verify_mod.verify_wakimoto,
        "miura": verify_mod.verify_miura,
    }[args.suite]
    doc = runner(args, rng)
    doc["seed"] = args.seed
    doc["suite"] = args.suite
    _emit(doc, args)
    return 0 if doc["status"] == "pass" else 1


def make_parser():
    ap = argparse.ArgumentParser(
        prog="vertexscreen",
        description="exact screening-kernel and BRST computations "
                    "(weights are doubled integers)")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--preset", choices=preset_names())
        p.add_argument("--datum", help="JSON algebra description file")
        p.add_argument("--labels",
                       help='JSON grading labels, e.g. {"a1": 0, "a2": 2}')
        p.add_argument("--f-support", help='JSON list of positive roots')
        p.add_argument("--level", default="symbolic",
                       help='"symbolic" or a rational p/q')
        p.add_argument("--max-weight", type=int, default=8,
                       help="doubled conformal weight bound")
        p.add_argument("--seed", type=int, default=20240)
        p.add_argument("--out", help="write the JSON report to this path")
        p.add_argument("--format", choices=("json", "table"), default="json")

    p_info = sub.add_parser("info", help="algebra and grading report")
    common(p_info)
    p_info.set_defaults(func=cmd_info)

    p_kernel = sub.add_parser("kernel", help="screening kernels per weight")
    common(p_kernel)
    p_kernel.add_argument("--screenings",
                          choices=("auto", "exponential", "generic"),
                          default="auto")
    p_kernel.set_defaults(func=cmd_kernel)

    p_verify = sub.add_parser("verify", help="run a named check suite")
    p_verify.add_argument("suite", choices=("wick", "brst", "wbn", "fs",
                                            "wakimoto", "miura"))
    common(p_verify)
    p_verify.add_argument("--n", type=int, default=3)
    p_verify.add_argument("--trials", type=int, default=25)
    p_verify.set_defaults(func=cmd_verify)

    return ap


def main(argv=None):
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        raise
    try:
        return args.func(args)
    except (SystemExit2, DatumError, NotGoodGrading, CriticalLevel,
            ValueError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
