"""Command-line front end.

    verba analyze --group "Z5*Z2" "b a^4 a^3 b"
    verba verify tree --group "Z2*Z3" --samples 200 --seed 7
    verba build twords --group "Z2*Z3" --tuple "a b,a b^2"
    verba tree overlap "a b" "b a"
    verba slp stats program.slp

Exit codes: 0 success, 1 computation error or failed suite, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .errors import ParseError, UnknownSuite, VerbaError
from .groups import load_group_file, parse_group_spec
from .slp import Var, default_budget, dump, evaluate, parse_dump, stats
from .words import (central_length, format_word, hyperbolic_decompose, is_cyclically_reduced,
                    is_hyperbolic, is_simple, parse_word, radical_length)

DEFAULT_GROUP = "Z2*Z3"


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--group", default=None, help="factor spec such as Z2*Z3 or table:<file>")
    p.add_argument("--group-file", default=None, help="file of Cayley tables")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None, help="syllable budget for evaluation")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--max-len", type=int, default=4)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    # shared options live on the subcommands so they may follow the command name
    parser = argparse.ArgumentParser(prog="verba", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="normal form and lengths of a word")
    p.add_argument("word")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite")

    p = sub.add_parser("build", parents=[common], help="emit a test-word SLP and its constants")
    p.add_argument("family", choices=("l2", "en", "jk", "twords", "pwords", "mwords"))
    p.add_argument("--tuple", default=None, help="comma separated words")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--kbar", default=None, help="comma separated constants for jk")
    p.add_argument("--dump", action="store_true", help="always print the SLP dump")

    p = sub.add_parser("tree", parents=[common], help="Bass-Serre tree queries")
    p.add_argument("query", choices=("dist", "axis", "translen", "overlap"))
    p.add_argument("args", nargs="+")

    p = sub.add_parser("slp", parents=[common], help="SLP utilities")
    p.add_argument("action", choices=("stats",))
    p.add_argument("path", help="dump file, or - for stdin")
    p.add_argument("--lengths", default=None, help="comma separated input lengths")

    p = sub.add_parser("solve", parents=[common], help="brute-force a system  w(z) = h; ...")
    p.add_argument("equations", help='e.g. "z0^2 = a b a b; z0 z1 = a"')
    return parser


def _signature(args):
    if args.group_file:
        return load_group_file(args.group_file)
    return parse_group_spec(args.group or DEFAULT_GROUP)


def _word_info(w):
    info = {"reduced": format_word(w), "length": len(w), "central_length": central_length(w),
            "cyclically_reduced": is_cyclically_reduced(w), "hyperbolic": is_hyperbolic(w),
            "simple": is_simple(w)}
    if is_hyperbolic(w):
        d = hyperbolic_decompose(w)
        info.update(radical_length=radical_length(w), A=format_word(d.A), k=d.k, f=format_word(d.f))
    return info


def cmd_analyze(args, sig):
    w = parse_word(sig, args.word)
    return {"word": args.word}, _word_info(w), []


def cmd_verify(args, sig):
    from .verify import run_suite
    reports = run_suite(args.suite, sig, args.samples, args.seed)
    if not isinstance(reports, list):
        reports = [reports]
    failures = [dict(f, suite=r.name) for r in reports for f in r.failures]
    results = {r.name: r.to_dict() for r in reports}
    return {"suite": args.suite, "samples": args.samples}, results, failures


def _tuple(args, sig):
    if not args.tuple:
        raise UsageError("--tuple is required for this family")
    return [parse_word(sig, t) for t in args.tuple.split(",")]


def cmd_build(args, sig):
    from . import testwords as tw
    budget = args.budget or default_budget()
    results, manifest = {}, []
    show_dump = True
    if args.family == "l2":
        e = tw.l2(Var(0), Var(1))
        if args.tuple:
            xs = _tuple(args, sig)
            results["evaluated_length"] = len(evaluate(e, xs, budget))
    elif args.family == "en":
        e = tw.e_n([Var(i) for i in range(args.n)])
    elif args.family == "jk":
        kbar = [int(x) for x in (args.kbar or ",".join(["1"] * (args.n + 1))).split(",")]
        e = tw.j_k(kbar, args.n)
    elif args.family == "twords":
        fam = tw.t_words(_tuple(args, sig), budget)
        e = fam.T
        manifest = fam.manifest()
        if (fam.n, 0) in fam.values:
            results["evaluated_length"] = len(fam.values[(fam.n, 0)])
    elif args.family == "pwords":
        pw = tw.p_words(_tuple(args, sig), budget)
        e = pw.P
        manifest = pw.manifest()
        results["P'"] = stats(pw.P1)
        results["P''"] = stats(pw.P2)
    else:
        mw = tw.m_words(_tuple(args, sig), budget)
        e = mw.M
        manifest = mw.manifest()
        results["M'"] = stats(mw.M1)
        results["M''"] = stats(mw.M2)
        show_dump = args.dump
    results["stats"] = stats(e)
    results["exponent_sums"] = results["stats"]["exponent_sums"]
    results["manifest"] = manifest
    if show_dump or args.dump:
        results["dump"] = dump(e)
    return {"family": args.family, "tuple": args.tuple}, results, []


_VERTEX = re.compile(r"^(.*?)\s*H_(\w+)$")


def parse_vertex(sig, text):
    from .tree import coset, element
    m = _VERTEX.match(text.strip())
    if not m:
        return element(parse_word(sig, text))
    name = m.group(2)
    if name in sig.names:
        i = sig.names.index(name)
    elif name.isdigit() and int(name) < len(sig.factors):
        i = int(name)
    else:
        raise ParseError(f"unknown factor {name!r} in vertex", len(m.group(1)))
    return coset(parse_word(sig, m.group(1) or "1"), i)


def cmd_tree(args, sig):
    from . import tree
    a = args.args
    need = {"dist": 2, "axis": 1, "translen": 1, "overlap": 2}[args.query]
    if len(a) != need:
        raise UsageError(f"tree {args.query} takes {need} argument(s)")
    inputs = {"query": args.query, "args": a}
    if args.query == "dist":
        d = tree.distance(parse_vertex(sig, a[0]), parse_vertex(sig, a[1]))
        return inputs, {"edges": d, "length": d / 2}, []
    h = parse_word(sig, a[0])
    if args.query == "axis":
        seg = tree.axis(h, args.window if args.window is not None else 1)
        return inputs, {"vertices": [str(v) for v in seg.vertices],
                        "paper_length": str(seg.paper_length)}, []
    if args.query == "translen":
        return inputs, {"translation_length": str(tree.translation_length(h))}, []
    ov = tree.axis_overlap(h, parse_word(sig, a[1]), args.window)
    text = "disjoint" if ov is None else "unbounded" if ov == tree.UNBOUNDED else str(ov)
    return inputs, {"overlap": text}, []


def cmd_slp(args, sig):
    text = sys.stdin.read() if args.path == "-" else open(args.path).read()
    e = parse_dump(text)
    lengths = [int(x) for x in args.lengths.split(",")] if args.lengths else None
    return {"path": args.path}, stats(e, lengths), []


_TERM = re.compile(r"z(\d+)(?:\^(-?\d+))?")


def parse_free_word(text):
    from .slp import Inv, One, Pow, mul
    parts = []
    pos = 0
    for tok in text.split():
        m = _TERM.fullmatch(tok)
        if not m:
            raise ParseError(f"bad term {tok!r}", pos)
        v, e = Var(int(m.group(1))), int(m.group(2) or 1)
        parts.append(v if e == 1 else Inv(v) if e == -1 else Pow(v, e))
        pos += len(tok) + 1
    return mul(*parts) if parts else One()


def cmd_solve(args, sig):
    from .verify import solve_equation_system
    system = []
    for eq in args.equations.split(";"):
        if "=" not in eq:
            raise UsageError(f"equation without '=': {eq!r}")
        lhs, rhs = eq.split("=", 1)
        system.append((parse_free_word(lhs), parse_word(sig, rhs)))
    sol = solve_equation_system(system, args.max_len, sig)
    res = {"solution": None if sol is None else [format_word(w) for w in sol]}
    return {"equations": args.equations, "max_len": args.max_len}, res, []


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "build": cmd_build, "tree": cmd_tree,
            "slp": cmd_slp, "solve": cmd_solve}


def _render_text(command, results, failures):
    lines = []
    if command == "verify":
        for name, r in results.items():
            status = "PASS" if r["passed"] else "FAIL"
            lines.append(f"{name}: {status} trials={r['trials']} checks={r['checks']} "
                         f"failures={len(r['failures'])} vacuous={r['vacuous']} "
                         f"skipped={len(r['skipped'])} seed={r['seed']} elapsed={r['elapsed']:.2f}s")
            lines.extend(f"  note: {n}" for n in r["notes"])
        for f in failures:
            lines.append(f"  FAIL {f['suite']} trial {f['trial']} {f['check']}: {f['inputs']} "
                         f"observed={f['observed']} required={f['required']}")
        return "\n".join(lines)
    for key, val in results.items():
        if key == "dump":
            continue
        if key == "manifest":
            lines.extend(val)
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}={v}" for k, v in val.items())
        elif isinstance(val, list):
            sep = " | " if any(" " in str(v) for v in val) else " "
            lines.append(f"{key}={sep.join(map(str, val))}")
        else:
            lines.append(f"{key}={val}")
    if "dump" in results:
        lines.append(results["dump"].rstrip("\n"))
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        sig = _signature(args)
        inputs, results, failures = COMMANDS[args.command](args, sig)
    except (UsageError, UnknownSuite, ParseError) as exc:
        print(f"verba: error: {exc}", file=sys.stderr)
        return 2
    except (VerbaError, ValueError, OSError) as exc:
        print(f"verba: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        doc = {"command": args.command, "group": sig.describe(), "inputs": inputs,
               "results": results, "failures": failures, "seed": args.seed}
        print(json.dumps(doc, indent=2, default=str))
    else:
        print(_render_text(args.command, results, failures))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
