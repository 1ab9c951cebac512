"""Command-line entry point: generate, enumerate, verify, binary2, kernel.

stdout carries only sequences and records; diagnostics go to stderr.
Exit codes: 0 success, 1 verification failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from dbhom.binary2 import decompose_d2, find_cross_join, fixed_seed, join
from dbhom.construct import ConstructionPlan, algorithm_AA, enumerate_family
from dbhom.core import Cycle, index_of, parse_symbols, render
from dbhom.errors import DeBruijnError
from dbhom.homo import (
    count_property_D,
    is_property_D,
    latin_square_count,
    lift_cycle_decomposition,
    lift_sequence,
    parse_kernel,
    parse_kernel_spec,
)
from dbhom.oracle import is_de_bruijn

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


def _die(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INVALID


def _emit(args, record: dict, text_lines: list[str]):
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _int_list(text: Optional[str], name: str) -> tuple:
    if text is None:
        raise UsageError(f"--{name} is required")
    try:
        return tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise UsageError(f"--{name} must be comma-separated integers, got {text!r}") from None


def _read_sequence(text: str, q: int) -> tuple:
    if text == "-":
        text = sys.stdin.read()
    text = text.strip().splitlines()[0] if text.strip() else ""
    return parse_symbols(text, q)


def _read_base(path: Optional[str], q: int) -> Optional[Cycle]:
    if path is None:
        return None
    with open(path) as fh:
        return Cycle(parse_symbols(fh.read().strip(), q), q)


# -- commands ----------------------------------------------------------------

def cmd_generate(args) -> int:
    q, n = args.q, args.n
    base = _read_base(args.base_file, q)
    plan = ConstructionPlan(q, n, _int_list(args.B, "B"), _int_list(args.L, "L"), _int_list(args.I, "I"), base)
    cyc = algorithm_AA(plan)
    report = is_de_bruijn(cyc, q, n)
    seq = render(cyc, q)
    lines = [seq]
    positions = {}
    if args.positions:
        for g in range(1, q):
            positions[g] = index_of((g,) * n, cyc)
            lines.append(f"{g}\t{positions[g]}")
    record = {
        "command": "generate",
        "params": {"q": q, "n": n, "B": list(plan.B), "L": list(plan.L), "I": list(plan.I)},
        "sequence": seq,
        "report": report.as_dict(),
    }
    if positions:
        record["positions"] = {str(g): p for g, p in positions.items()}
    _emit(args, record, lines)
    if args.verify and not report.ok:
        print("\n".join(report.lines()), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_enumerate(args) -> int:
    q, n = args.q, args.n
    base = _read_base(args.base_file, q)
    status = EXIT_OK
    for plan, cyc in enumerate_family(q, n, args.limit, base):
        seq = render(cyc, q)
        fields = [plan.label(), seq]
        record = {
            "command": "enumerate",
            "params": {"q": q, "n": n, "B": list(plan.B), "L": list(plan.L), "I": list(plan.I)},
            "sequence": seq,
        }
        if args.verify:
            report = is_de_bruijn(cyc, q, n)
            fields.append("OK" if report.ok else "FAIL")
            record["report"] = report.as_dict()
            if not report.ok:
                status = EXIT_FAIL
        _emit(args, record, ["\t".join(fields)])
    return status


def cmd_verify(args) -> int:
    if args.sequence is None and args.file is None:
        raise UsageError("give a sequence, '-' for stdin, or --file")
    if args.file is not None:
        with open(args.file) as fh:
            symbols = _read_sequence(fh.read(), args.q)
    else:
        symbols = _read_sequence(args.sequence, args.q)
    report = is_de_bruijn(symbols, args.q, args.n)
    _emit(args, {"command": "verify", "params": {"q": args.q, "n": args.n}, "report": report.as_dict()}, report.lines())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_binary2(args) -> int:
    b = Cycle(_read_sequence(args.base, 2), 2)
    try:
        rep = fixed_seed(b)
    except DeBruijnError as exc:
        print(f"error: base is not a binary De Bruijn sequence: {exc}", file=sys.stderr)
        return EXIT_FAIL
    short, long_ = decompose_d2(b)
    pair = find_cross_join(short, long_, rep.n + 2)
    joined = join(short, long_, pair)
    cycles = {"short": short, "long": long_, "joined": joined}
    record = {
        "command": "binary2",
        "params": {"base": render(b, 2), "emit": args.emit},
        "report": {
            "n": rep.n,
            "a": list(rep.a),
            "seed": "".join(map(str, rep.seed)),
            "cycle_lengths": list(rep.cycle_lengths),
            "cross_join": ["".join(map(str, pair[0])), "".join(map(str, pair[1]))],
        },
    }
    if args.emit == "report":
        lines = rep.lines() + [f"cross_join={''.join(map(str, pair[0]))}/{''.join(map(str, pair[1]))}"]
    else:
        record["sequence"] = render(cycles[args.emit], 2)
        lines = [record["sequence"]]
    _emit(args, record, lines)
    return EXIT_OK


def _load_kernel(args):
    if args.linear is not None:
        return parse_kernel_spec(args.linear)
    if args.file is not None:
        with open(args.file) as fh:
            return parse_kernel(fh.read())
    return None


def cmd_kernel(args) -> int:
    d = _load_kernel(args)
    if args.action == "count":
        q = d.q if d is not None else args.q
        k = d.k if d is not None else args.k
        if q is None or k is None:
            raise UsageError("count needs --q and --k (or a kernel)")
        total = count_property_D(q, k)
        record = {"command": "kernel", "params": {"q": q, "k": k, "action": "count"},
                  "report": {"count": total, "latin_squares": latin_square_count(q)}}
        _emit(args, record, [f"count={total}"])
        return EXIT_OK
    if d is None:
        raise UsageError(f"{args.action} needs a kernel (--linear or --file)")
    verdict = is_property_D(d)
    params = {"q": d.q, "k": d.k, "action": args.action, "kernel": d.provenance}
    if args.action == "check":
        record = {"command": "kernel", "params": params, "report": {"property_D": verdict}}
        _emit(args, record, [f"property_D={'true' if verdict else 'false'}"])
        return EXIT_OK if verdict else EXIT_FAIL
    # lift
    if args.base is None:
        raise UsageError("lift needs --base")
    if not verdict:
        print("error: kernel does not have property (D); lifts are not unique", file=sys.stderr)
        return EXIT_FAIL
    base = Cycle(_read_sequence(args.base, d.q), d.q)
    lines, report = [], {}
    if args.seed is not None:
        seed = parse_symbols(args.seed, d.q)
        if len(seed) != d.k:
            raise UsageError(f"--seed must have k={d.k} symbols")
        z = lift_sequence(d, base.symbols, seed)
        report["sequence"] = render(z, d.q)
        lines.append(f"sequence={report['sequence']}")
    dec = lift_cycle_decomposition(d, base, args.n)
    report["order"] = dec.n
    report["cycle_lengths"] = dec.lengths
    report["cycles"] = [render(c, d.q) for c in dec.cycles]
    report["seed_map"] = {render(s, d.q): render(t, d.q) for s, t in dec.seed_map.items()}
    lines.append(f"order={dec.n}")
    lines.append(f"cycles={len(dec.cycles)}")
    lines.append(f"cycle_lengths={','.join(map(str, dec.lengths))}")
    lines.append("seed_map=" + ",".join(f"{a}->{b}" for a, b in report["seed_map"].items()))
    lines.extend(f"cycle={c}" for c in report["cycles"])
    _emit(args, {"command": "kernel", "params": params, "report": report}, lines)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON object per record")

    parser = argparse.ArgumentParser(prog="dbhom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="build one De Bruijn sequence")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--B", help="beta_j per level, comma separated")
    g.add_argument("--L", help="lambda_j per level, comma separated")
    g.add_argument("--I", help="i_j per level, comma separated")
    g.add_argument("--base-file", help="file holding an order >= 2 base sequence (required for even q)")
    g.add_argument("--positions", action="store_true", help="also print gamma<TAB>index of each constant word")
    g.add_argument("--verify", action="store_true")
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("enumerate", parents=[common], help="list the whole family of order n")
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--limit", type=int)
    e.add_argument("--verify", action="store_true")
    e.add_argument("--base-file")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", parents=[common], help="check a sequence is De Bruijn of order n")
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("sequence", nargs="?", help="symbol string, or - for stdin")
    v.add_argument("--file")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("binary2", parents=[common], help="span-3 binary lift and join")
    b.add_argument("--base", required=True, help="binary De Bruijn sequence, or - for stdin")
    b.add_argument("--emit", choices=["report", "short", "long", "joined"], default="report")
    b.set_defaults(func=cmd_binary2)

    k = sub.add_parser("kernel", parents=[common], help="property (D) tooling")
    src = k.add_mutually_exclusive_group()
    src.add_argument("--linear", help='one-line kernel, e.g. "q=3 beta=1" or "q=2 d=x1+x3"')
    src.add_argument("--file", help="kernel table file")
    k.add_argument("--q", type=int)
    k.add_argument("--k", type=int)
    k.add_argument("--n", type=int, help="order of the base cycle (default: smallest disjoint order)")
    k.add_argument("action", choices=["check", "count", "lift"])
    k.add_argument("--base")
    k.add_argument("--seed")
    k.set_defaults(func=cmd_kernel)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        return _die(str(exc))
    except DeBruijnError as exc:
        return _die(f"{type(exc).__name__}: {exc}")
    except (ValueError, OSError) as exc:
        return _die(str(exc))


if __name__ == "__main__":
    sys.exit(main())
