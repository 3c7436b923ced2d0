"""Command-line driver: ``rho-jmatrix verify ...`` and ``rho-jmatrix table ...``.

``verify`` exits with the number of failed checks (capped at 255), so 0
means every check passed.  A bare ``rho-jmatrix --suite ...`` is read as
``verify``.
"""

from __future__ import annotations

import argparse
import sys

from .verify import (
    SUITES,
    TABLE_KINDS,
    SuiteConfig,
    emit_table,
    parse_complex,
    report_to_csv,
    report_to_json,
    run_suite,
)

EX_IOERR = 74
EX_CONFIG = 78


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ell", type=int, help="angular momentum (default: sweep / suite default)")
    p.add_argument("--omega", type=float, help="oscillator frequency")
    p.add_argument("--z", type=_complex_arg, help='disc label, e.g. "0.3+0.2i"')
    p.add_argument("--B", type=float, help="magnetic strength for the landau suite / table")
    p.add_argument("--nmax", type=int, help="cap on basis indices")
    p.add_argument("--lam", type=float, default=1.3, help="real basis scale for Gram checks (default 1.3)")
    p.add_argument("--tol", type=float, help="override every tolerance")
    p.add_argument("--seed", type=int, default=0, help="seed for random sample points (default 0)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rho-jmatrix", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification suites and emit a report")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    _add_common(v)
    t = sub.add_parser("table", help="emit a numeric table")
    t.add_argument("--kind", choices=TABLE_KINDS, required=True)
    _add_common(t)
    return parser


def _config(args) -> SuiteConfig:
    return SuiteConfig(ell=args.ell, omega=args.omega, z=args.z, B=args.B, nmax=args.nmax,
                       tol=args.tol, seed=args.seed, lam=args.lam)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] not in ("verify", "table", "-h", "--help"):
        argv.insert(0, "verify")
    args = build_parser().parse_args(argv)
    config = _config(args)
    try:
        if args.command == "verify":
            rows = run_suite(args.suite, config)
            text = report_to_json(rows) if args.format == "json" else report_to_csv(rows)
            _write(text, args.out)
            failures = sum(not row.passed for row in rows)
            print(f"{len(rows) - failures}/{len(rows)} checks passed", file=sys.stderr)
            return min(failures, 255)
        out = sys.stdout if args.out is None else args.out
        emit_table(args.kind, config, args.format, out)
        return 0
    except OSError as exc:
        print(f"rho-jmatrix: I/O error: {exc}", file=sys.stderr)
        return EX_IOERR
    except ValueError as exc:
        print(f"rho-jmatrix: configuration error: {exc}", file=sys.stderr)
        return EX_CONFIG


if __name__ == "__main__":
    sys.exit(main())
