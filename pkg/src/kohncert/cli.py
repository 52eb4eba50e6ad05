"""Command-line interface: run, puiseux, type, multiplicity."""

from __future__ import annotations

import argparse
import os
import sys

from .config import RunConfig
from .errors import (
    FieldTowerError,
    GenericityError,
    InfiniteTypeError,
    InvariantViolationError,
    KohncertError,
    ParseError,
    PrecisionError,
)

EXIT_CODES = [
    (ParseError, 2),
    (InfiniteTypeError, 3),
    (PrecisionError, 4),
    (FieldTowerError, 5),
    (GenericityError, 6),
    (InvariantViolationError, 7),
]


def _exit_code(exc) -> int:
    for cls, code in EXIT_CODES:
        if isinstance(exc, cls):
            return code
    return 1


def _default_seed():
    env = os.environ.get("KOHNCERT_SEED")
    return int(env) if env else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="kohncert",
        description="Exact multiplier certificates for special domains in C^3",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="run the effective algorithm on a domain file")
    runp.add_argument("input", help="domain JSON file (premultipliers, optional type_hint/seed/truncation)")
    runp.add_argument("--truncation", type=int, default=64)
    runp.add_argument("--seed", type=int, default=None)
    runp.add_argument("--verify-membership", action="store_true")
    runp.add_argument("--classic", action="store_true", help="run the classic multiplier-ideal mode instead")
    runp.add_argument("--output", default=None, help="certificate file path (default: stdout)")

    pp = sub.add_parser("puiseux", help="decompose a plane-curve germ into branches")
    pp.add_argument("poly")
    pp.add_argument("--truncation", type=int, default=64)
    pp.add_argument("--precision", type=int, default=None)

    tp = sub.add_parser("type", help="D'Angelo type bounds of a set of germs")
    tp.add_argument("polys", nargs="+")
    tp.add_argument("--truncation", type=int, default=64)
    tp.add_argument("--seed", type=int, default=None)

    mp = sub.add_parser("multiplicity", help="colength of the ideal generated by two germs")
    mp.add_argument("f")
    mp.add_argument("g")
    mp.add_argument("--method", choices=["branch_sum", "linear_algebra"], default="branch_sum")
    mp.add_argument("--truncation", type=int, default=64)
    return ap


def cmd_run(args) -> int:
    from .certfile import certificate_payload, classic_payload, load_domain, render_certificate
    from .kohn import classic_kohn, run

    domain, file_seed, trunc = load_domain(args.input, args.truncation)
    seed = args.seed if args.seed is not None else (file_seed if file_seed is not None else _default_seed())
    config = RunConfig(truncation=trunc, seed=seed, verify_membership=args.verify_membership)
    if args.classic:
        payload = classic_payload(classic_kohn(domain, config=config))
    else:
        payload = certificate_payload(run(domain, config))
    text = render_certificate(payload)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_puiseux(args) -> int:
    from .germs import Germ
    from .parse import parse_poly, render_series
    from .puiseux import branches

    f = Germ(parse_poly(args.poly, args.truncation), "f")
    bs = branches(f, args.precision)
    print("branches of {%s = 0} at the origin (precision %d):" % (args.poly, bs.precision))
    for b in bs:
        print(
            "  (%s, %s)  multiplicity %d, components %d, %s"
            % (
                render_series(b.curve.alpha),
                render_series(b.curve.beta),
                b.multiplicity,
                b.components,
                b.field_note,
            )
        )
    return 0


def cmd_type(args) -> int:
    from .germs import Germ
    from .invariants import GermSet, dangelo_type
    from .parse import parse_poly

    seed = args.seed if args.seed is not None else _default_seed()
    config = RunConfig(truncation=args.truncation, seed=seed)
    germs = [Germ(parse_poly(s, args.truncation), "f%d" % (i + 1)) for i, s in enumerate(args.polys)]
    report = dangelo_type(GermSet.of(germs), config=config)
    print("type lower bound: %s" % report.lower)
    print("type upper bound: %s" % report.upper)
    print("exactness: %s" % report.exactness)
    if report.exactness == "certified_exact":
        print("type tau = %s (boundary D'Angelo type 2*tau = %s)" % (report.lower, report.lower.value * 2))
    for label, val in report.witnesses:
        print("  witness %s -> %s" % (label, val))
    return 0


def cmd_multiplicity(args) -> int:
    from .germs import Germ
    from .invariants import IdealPair, multiplicity
    from .parse import parse_poly

    config = RunConfig(truncation=args.truncation)
    pair = IdealPair(
        Germ(parse_poly(args.f, args.truncation), "F"),
        Germ(parse_poly(args.g, args.truncation), "G"),
    )
    print(multiplicity(pair, args.method, config))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "run": cmd_run,
        "puiseux": cmd_puiseux,
        "type": cmd_type,
        "multiplicity": cmd_multiplicity,
    }
    try:
        return handlers[args.command](args)
    except KohncertError as e:
        sys.stderr.write("error: %s\n" % e)
        return _exit_code(e)


if __name__ == "__main__":
    sys.exit(main())
