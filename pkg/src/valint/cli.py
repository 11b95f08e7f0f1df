"""Command line entry point: valint run|check|fmt SCRIPT."""
from __future__ import annotations

import argparse
import sys

from .dsl import Options, parse, render, run_source


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="valint", description="Run valint integration scripts.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, text in (("run", "run a script and print its transcript"),
                       ("check", "run a script, report only through the exit code"),
                       ("fmt", "print a script in canonical form")):
        p = sub.add_parser(name, help=text)
        p.add_argument("script", help="path to the script, or - for stdin")
        p.add_argument("--rank", type=int, default=1, help="default rank of the value group")
        p.add_argument("--prec", type=int, default=20, help="default residue-field precision")
        p.add_argument("--depth-limit", type=int, default=10 ** 6,
                       help="maximum number of boxes a refinement may visit")
        p.add_argument("--seed", type=int, default=0, help="seed for `check random` statements")
    return ap


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        source = _read(args.script)
    except OSError as e:
        print(f"error[E020]: cannot read {args.script}: {e.strerror}", file=sys.stderr)
        return 2
    if args.command == "fmt":
        script, diags = parse(source)
        if diags:
            for d in diags:
                print(d.render(), file=sys.stderr)
            return 1
        sys.stdout.write(render(script))
        return 0
    opts = Options(rank=args.rank, prec=args.prec, depth_limit=args.depth_limit, seed=args.seed)
    result = run_source(source, opts)
    if args.command == "run":
        sys.stdout.write(result.transcript)
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
