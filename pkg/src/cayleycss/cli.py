"""Command-line front end: build/export matrices, compute code
parameters, run verification suites, certify covers, and print
logical-witness reports as machine-readable JSON.

Exit codes: 0 success, 2 precondition violation, 3 verification
failure, 4 enumeration/size budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from . import __version__, cover, css, formats, gf2, repetition, verify
from .cayley import (
    BigWord,
    GeneratorSet,
    SizeGuardError,
    adjacency_matrix,
    format_small_word,
)
from .gf2 import BitMatrix, DimensionBudgetError
from .smallcode import InvalidGeneratorError, build_parity_check
from .verify import SUITE_NAMES, torus_example_generators

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_VERIFICATION = 3
EXIT_BUDGET = 4

INDEXING_CONVENTION = (
    "coordinate x_i is integer bit 2^(i-1); big-word position p is the "
    "vertex with integer value p"
)

DEFAULT_SEED = 20240901


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_PRECONDITION):
        super().__init__(message)
        self.code = code


def parse_n_range(text: str) -> list[int]:
    """Parse "3..13" or a single "5" into a list of integers."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise CliError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def resolve_generators(args) -> tuple[int, GeneratorSet]:
    """Turn --family/--m/--n/--gens into a concrete generator set."""
    family = args.family
    if family == "repetition":
        n = args.n
        if n is None:
            raise CliError("--family repetition needs --n")
        return n, repetition.generators(n)
    if family == "hypercube":
        n = args.n if args.n is not None else args.m
        if n is None:
            raise CliError("--family hypercube needs --n or --m")
        return n, GeneratorSet.canonical(n)
    if family == "custom":
        if args.m is None or not args.gens:
            raise CliError("--family custom needs --m and --gens")
        return args.m, GeneratorSet.from_strings(args.m, args.gens)
    raise CliError(f"family {family!r} has no F_2^m generator set")


def make_report(args, inputs: dict, outputs: dict,
                checks: list, started: float) -> dict:
    report = {
        "tool": "cayley-css",
        "version": __version__,
        "command": args.command,
        "argv": sys.argv[1:],
        "indexing_convention": INDEXING_CONVENTION,
        "inputs": inputs,
        "outputs": outputs,
        "checks": sorted(
            (c.as_dict() for c in checks), key=lambda c: c["name"]
        ),
        "timings": {"total_s": round(time.perf_counter() - started, 6)},
        "seed": args.seed,
        "threads": args.threads,
    }
    return report


def emit(report: dict, out: Optional[str]) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_build(args, started: float) -> int:
    if args.family == "z2n-torus":
        if args.n is None:
            raise CliError("--family z2n-torus needs --n")
        M = torus_adjacency(args.n)
        inputs = {"family": "z2n-torus", "n": args.n}
    else:
        m, S = resolve_generators(args)
        M = adjacency_matrix(m, S)
        inputs = {"m": m, "generators": S.as_strings()}
    if not args.out:
        raise CliError("build needs --out")
    formats.write_matrix(M, args.format, args.out)
    report = make_report(
        args, inputs,
        {"rows": M.rows, "cols": M.cols, "format": args.format,
         "path": args.out},
        [], started,
    )
    emit(report, None)
    return EXIT_OK


def torus_adjacency(n: int) -> BitMatrix:
    """Adjacency matrix of the two-cyclic-torus example family."""
    group, terms = torus_example_generators(n)
    idxs = sorted({group.index(t) for t in terms} - {0})
    dense = np.zeros((group.order, group.order), dtype=np.uint8)
    for p in range(group.order):
        for s in idxs:
            dense[p, group.add(p, s)] ^= 1
    return BitMatrix.from_dense(dense)


def cmd_params(args, started: float) -> int:
    m, S = resolve_generators(args)
    code = css.build_css(m, S)
    outputs: dict = {"N": code.N, "K": code.K, "rank": code.rank}
    if code.is_trivial:
        outputs["D"] = {"method": "exact", "trivial": True}
        outputs["note"] = "self-dual: kernel equals row space, no logical words"
    else:
        kernel_dim = code.N - code.rank
        if kernel_dim <= args.exact_budget:
            report = css.distance_exact(code, args.exact_budget)
            outputs["D"] = {
                "method": "exact",
                "value": report.value,
                "witness_support": report.witness.support(),
            }
        elif args.family == "repetition" and m % 2 == 1:
            witness = repetition.min_weight_witness(m)
            upper = css.distance_witness_upper(code, witness)
            if upper.rejected_reason:
                raise CliError(upper.rejected_reason, EXIT_VERIFICATION)
            outputs["D"] = {
                "method": "witness-upper",
                "upper": upper.upper,
                "claimed": 1 << ((m - 1) // 2),
                "label": "paper-claimed, witness-upper-bound-verified",
            }
        else:
            raise DimensionBudgetError(kernel_dim, args.exact_budget)
    report = make_report(
        args, {"m": m, "generators": S.as_strings()}, outputs, [], started
    )
    emit(report, args.out)
    return EXIT_OK


def cmd_verify(args, started: float) -> int:
    ns = parse_n_range(args.n_range) if args.n_range else list(range(3, 14))
    W = None
    if args.gens:
        if args.m is None:
            raise CliError("--gens needs --m for the cover suite")
        W = tuple(
            GeneratorSet.from_strings(args.m, args.gens).elements
        )
    if args.threads > 1 and args.suite == "all":
        names = [s for s in SUITE_NAMES]
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            futures = [
                pool.submit(
                    verify.run_suite, s, ns, seed=args.seed,
                    m=args.m, W=W, budget=args.exact_budget,
                )
                for s in names
            ]
            items = [c for f in futures for c in f.result()]
    else:
        items = verify.run_suite(
            args.suite, ns, seed=args.seed, m=args.m, W=W,
            budget=args.exact_budget,
        )
    failed = [c for c in items if not c.ok]
    report = make_report(
        args,
        {"suite": args.suite, "n_range": ns,
         "m": args.m, "W": list(args.gens or [])},
        {"passed": len(items) - len(failed), "failed": len(failed)},
        items, started,
    )
    emit(report, args.out)
    return EXIT_VERIFICATION if failed else EXIT_OK


def cmd_cover(args, started: float) -> int:
    if args.m is None or not args.gens:
        raise CliError("cover needs --m and --gens")
    W = GeneratorSet.from_strings(args.m, args.gens).elements
    try:
        code = build_parity_check(args.m, W)
    except InvalidGeneratorError as exc:
        raise CliError(str(exc))
    cm = cover.CoverMap(code)
    radius = args.radius if args.radius is not None else cm.safe_radius
    centers_checked = 0
    counterexample = None
    for center in range(1 << cm.n):
        cert = cover.certify_ball_isomorphism(cm, center, radius)
        centers_checked += 1
        if isinstance(cert, cover.BallCollision):
            counterexample = {
                "center": cert.center,
                "first": cert.first,
                "second": cert.second,
            }
            break
    outputs = {
        "certificate": {
            "radius": radius,
            "centers_checked": centers_checked,
            "status": "collision" if counterexample else "isomorphism",
            **({"counterexample": counterexample} if counterexample else {}),
        },
        "classical_distance": cm.classical_distance,
        "safe_radius": cm.safe_radius,
    }
    report = make_report(
        args, {"m": args.m, "W": list(args.gens)}, outputs, [], started
    )
    emit(report, args.out)
    return EXIT_VERIFICATION if counterexample else EXIT_OK


def cmd_witness(args, started: float) -> int:
    if args.n is None:
        raise CliError("witness needs --n")
    if args.n % 2 == 0:
        raise CliError(f"witnesses exist for odd n only, got {args.n}")
    w = repetition.min_weight_witness(args.n)
    word = BigWord(args.n, w)
    outputs: dict = {
        "n": args.n,
        "weight": w.weight,
        "support": w.support(),
        "support_bitstrings": [
            format_small_word(v, args.n) for v in w.support()
        ],
    }
    if args.n <= repetition.MAX_VERIFIED_DIMENSION:
        code = repetition.build_code(args.n)
        cls = css.classify_word(code, word)
        outputs["in_kernel"] = cls is not css.WordClass.NOT_IN_DUAL
        outputs["in_row_space"] = cls is css.WordClass.STABILIZER
        outputs["classification"] = cls.value
    report = make_report(args, {"n": args.n}, outputs, [], started)
    emit(report, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayley-css",
        description=(
            "CSS codes from Cayley graphs over F_2^m: build, measure, "
            "verify"
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--m", type=int, help="group dimension")
        # --n stays a string so verify can take a range like "3..13".
        p.add_argument("--n", help="family parameter (verify: range LO..HI)")
        p.add_argument(
            "--gens",
            type=lambda t: t.split(","),
            help="comma-separated generator bitstrings, x1 first",
        )
        p.add_argument(
            "--family",
            choices=("repetition", "hypercube", "custom", "z2n-torus"),
            default="custom",
        )
        p.add_argument(
            "--exact-budget", type=int,
            default=gf2.DEFAULT_ENUMERATION_BUDGET,
            help="max kernel dimension for exhaustive distance search",
        )
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument(
            "--threads", type=int,
            default=int(os.environ.get("CAYLEY_CSS_THREADS", "1")),
        )
        p.add_argument("--out", help="output file (default stdout)")

    p_build = sub.add_parser("build", help="export an adjacency matrix")
    common(p_build)
    p_build.add_argument(
        "--format", choices=formats.FORMAT_NAMES, default="alist"
    )

    p_params = sub.add_parser("params", help="compute [[N, K, D]]")
    common(p_params)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    common(p_verify)
    p_verify.add_argument(
        "--suite", choices=SUITE_NAMES + ("all",), default="all"
    )
    p_verify.add_argument(
        "--n-range", dest="n_range", metavar="LO..HI",
        help='size range, e.g. "3..13" (also accepted via --n)',
    )

    p_cover = sub.add_parser("cover", help="certify a covering map")
    common(p_cover)
    p_cover.add_argument(
        "--radius", type=int, help="ball radius (default floor((d-1)/2))"
    )

    p_witness = sub.add_parser(
        "witness", help="minimum-weight logical word of the tower"
    )
    common(p_witness)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        if args.n_range is None and args.n is not None:
            args.n_range = args.n
    elif args.n is not None:
        try:
            args.n = int(args.n)
        except ValueError:
            print(f"error: --n must be an integer, got {args.n!r}",
                  file=sys.stderr)
            return EXIT_PRECONDITION
    started = time.perf_counter()
    handlers = {
        "build": cmd_build,
        "params": cmd_params,
        "verify": cmd_verify,
        "cover": cmd_cover,
        "witness": cmd_witness,
    }
    try:
        return handlers[args.command](args, started)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (DimensionBudgetError, SizeGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, InvalidGeneratorError,
            css.SelfOrthogonalityError, css.InapplicableBoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
