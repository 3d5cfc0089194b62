"""Command-line entry point ``agc``."""

from __future__ import annotations

import argparse
import sys

from agc.agcode import encode, make_params, word_from_str, word_to_str
from agc.bench import SimConfig, records_to_csv, simulate, success_rate, verify
from agc.decoder import majority_decode
from agc.errors import AGCError
from agc.gf import make_field
from agc.paritygen import build_orthogonal_set, check_count, read_check_set, transport_to, write_check_set


def _add_code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, required=True, help="field characteristic")
    p.add_argument("--e", type=int, default=1, help="extension degree (q = p^e)")
    p.add_argument("--l", type=int, required=True, help="rows l of the matrix points")
    p.add_argument("--lp", type=int, required=True, help="columns l' >= l")


def _params(args):
    return make_params(make_field(args.p, args.e), args.l, args.lp)


def cmd_params(args) -> int:
    P = _params(args)
    print(P.spec.serialize())
    print(f"n={P.n} k={P.k} d={P.d} d_dual={P.d_dual} J={check_count(P)}")
    return 0


def cmd_build_checks(args) -> int:
    S = build_orthogonal_set(_params(args))
    if args.anchor:
        S = transport_to(S, args.anchor)
    write_check_set(S, args.output)
    print(f"wrote {S.J} checks anchored at {S.anchor} to {args.output}")
    return 0


def cmd_encode(args) -> int:
    P = _params(args)
    print(word_to_str(P, encode(P, word_from_str(P, args.message, P.k))))
    return 0


def cmd_decode(args) -> int:
    S = read_check_set(args.checks)
    P = S.params
    res = majority_decode(word_from_str(P, args.received), S)
    print(f"status={res.status.value}")
    errs = res.error_positions()
    print("errors=" + (" ".join(f"{i}:{v}" for i, v in errs) if errs else "none"))
    print(f"corrected={word_to_str(P, res.estimate)}")
    return 0 if res.corrected else 1


def cmd_simulate(args) -> int:
    cfg = SimConfig(_params(args), args.t, args.trials, args.seed, args.output)
    recs = simulate(cfg)
    if args.output is None:
        sys.stdout.write(records_to_csv(recs))
    else:
        print(f"success rate {success_rate(recs):.4f} over {len(recs)} trials at weight {args.t}")
    return 0


def cmd_verify(args) -> int:
    results = verify()
    for r in results:
        print(f"[{'PASS' if r.ok else 'FAIL'}] {r.name}: {r.detail}")
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="agc", description="Affine Grassmann codes and majority-logic decoding")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="print n, k, d, d_dual and J")
    _add_code_args(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("build-checks", help="write the orthogonal check set")
    _add_code_args(p)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--anchor", type=int, default=0, help="point index to anchor the checks at")
    p.set_defaults(func=cmd_build_checks)

    p = sub.add_parser("encode", help="encode a base-q message string of length k")
    _add_code_args(p)
    p.add_argument("--message", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="majority-logic decode a received word")
    p.add_argument("--checks", required=True, help="check-set file from build-checks")
    p.add_argument("--received", required=True, help="base-q word string of length n")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="Monte-Carlo decoding at a fixed error weight")
    _add_code_args(p)
    p.add_argument("--t", type=int, required=True, help="number of symbol errors per trial")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None, help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run every oracle suite")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AGCError, ValueError, OSError) as exc:
        print(f"agc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
