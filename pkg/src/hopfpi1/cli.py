"""Command line interface: ``hopf-pi1 <verb> [options]``.

Exit status: 0 success, 1 a verification failed, 2 usage error, 3 parse
failure (JSON or field spec), 4 file I/O failure, 5 precondition violated.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from math import gcd

from .classify import DESK_BOUND, enumerate_hopf_gradings, taft_length_grading
from .gradings import (Grading, GradingError, is_hopf_grading_direct, smash, verify_grading,
                       verify_hopf_category, walk_degree_subgroup)
from .groups import cyclic
from .hopf import (HopfError, algebra_from_json, algebra_to_json, category_from_json,
                   category_to_json, dual_group_hopf, group_algebra, taft_category,
                   trivial_hopf_category, verify_hopf)
from .pi1 import fundamental_group, taft_truncated_pi1
from .scalars import FieldError, parse_field, primitive_root_of_unity

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_IO = 4
EXIT_PRECONDITION = 5

log = logging.getLogger("hopfpi1")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(EXIT_USAGE, message)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)


def _field(text: str):
    try:
        return parse_field(text)
    except FieldError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc


def _check_n(n: int, low: int = 2):
    if not low <= n <= DESK_BOUND:
        raise CliError(EXIT_PRECONDITION, f"n must lie in [{low}, {DESK_BOUND}], got {n}")


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _write(text: str, path: str | None, out):
    if path is None or path == "-":
        out.write(text + "\n")
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc.strerror}") from exc


def _taft_q(field, n):
    q = primitive_root_of_unity(field, n)
    if q is None:
        raise CliError(EXIT_PRECONDITION, f"{field.name} has no primitive {n}-th root of unity")
    return q


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_table(args, out) -> int:
    field = _field(args.field)
    _check_n(args.nmax)
    rows = []
    for n in range(2, args.nmax + 1):
        res = fundamental_group(field, n, args.antipode)
        rows.append(f"{n}:{res.group}")
    out.write(", ".join(rows) + "\n")
    return EXIT_OK


def cmd_pi1(args, out) -> int:
    field = _field(args.field)
    _check_n(args.n)
    res = fundamental_group(field, args.n, args.antipode)
    out.write(_dump(res.to_json(full=args.full)) + "\n")
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    field = _field(args.field)
    _check_n(args.n)
    grads = enumerate_hopf_gradings(field, args.n, args.antipode)
    data = {"field": field.name, "n": args.n, "gradings": [g.to_json() for g in grads]}
    _write(_dump(data), args.out, out)
    return EXIT_OK


def _load_target(data: dict):
    try:
        if "idempotents" in data:
            return category_from_json(data)
        return algebra_from_json(data)
    except (HopfError, FieldError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"malformed input: {exc}") from exc


def cmd_verify(args, out) -> int:
    data = _read_json(args.input)
    if not isinstance(data, dict):
        raise CliError(EXIT_PARSE, "input must be a JSON object")
    report = {}
    ok = True
    if "grading" in data and "target" in data:
        target = _load_target(data["target"])
        try:
            X = Grading.from_json(target, data["grading"])
        except (GradingError, KeyError, TypeError, ValueError) as exc:
            raise CliError(EXIT_PARSE, f"malformed grading: {exc}") from exc
        g = verify_grading(X)
        report["grading"] = g.to_json()
        ok = g.ok
        if g.ok:
            w = walk_degree_subgroup(X)
            report["connected"] = w.connected
            h = is_hopf_grading_direct(X, args.antipode)
            report["hopf"] = h.to_json()
            ok = ok and h.ok
    else:
        target = _load_target(data)
        rep = verify_hopf_category(target) if hasattr(target, "idempotents") else verify_hopf(target)
        report["hopf"] = rep.to_json()
        ok = rep.ok
    report["ok"] = ok
    out.write(_dump(report) + "\n")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_smash(args, out) -> int:
    field = _field(args.field)
    if args.taft:
        _check_n(args.taft)
        C = taft_category(field, args.taft, _taft_q(field, args.taft))
        m = args.m
        if m < 1 or gcd(m, args.taft) != 1:
            raise CliError(EXIT_PRECONDITION, f"modulus {m} must be positive and coprime to {args.taft}")
        X = taft_length_grading(C, m, 1 % m)
    else:
        if args.n is None:
            raise CliError(EXIT_USAGE, "smash needs --n or --taft")
        _check_n(args.n)
        grads = enumerate_hopf_gradings(field, args.n, "preserve")
        if not 0 <= args.index < len(grads):
            raise CliError(EXIT_PRECONDITION,
                           f"grading index {args.index} out of range (0..{len(grads) - 1})")
        X = grads[args.index].grading
    try:
        res = smash(X)
    except GradingError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from exc
    _write(_dump(category_to_json(res.category)), args.out, out)
    if not res.report.ok:
        log.error("smash product failed verification: %s", res.report.failures)
        return EXIT_FAILED
    return EXIT_OK


def cmd_taft(args, out) -> int:
    _check_n(args.n)
    if args.bound < 1:
        raise CliError(EXIT_PRECONDITION, "bound must be positive")
    field = _field(args.field or f"Q(z{args.n})")
    q = _taft_q(field, args.n)
    res = taft_truncated_pi1(args.n, q, args.bound)
    data = res.to_json()
    out.write(_dump(data) + "\n")
    ok = res.tau_ok and res.group.invariant_factors() == \
        ((res.expected_order,) if res.expected_order > 1 else ())
    return EXIT_OK if ok else EXIT_FAILED


def cmd_export(args, out) -> int:
    field = _field(args.field)
    _check_n(args.n, low=1 if args.what != "taft" else 2)
    G = cyclic(args.n)
    if args.what == "dual-group":
        data = algebra_to_json(dual_group_hopf(field, G))
    elif args.what == "group-algebra":
        data = algebra_to_json(group_algebra(field, G))
    elif args.what == "trivial":
        data = category_to_json(trivial_hopf_category(field, G))
    else:
        try:
            C = taft_category(field, args.n, _taft_q(field, args.n))
        except HopfError as exc:
            raise CliError(EXIT_PRECONDITION, str(exc)) from exc
        data = category_to_json(C)
    _write(_dump(data), args.out, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopf-pi1", description="Hopf gradings and fundamental groups")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp, n=True):
        sp.add_argument("--field", default="Q(z12)", help="Q | Q(zN) | Fp")
        if n:
            sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--antipode", choices=["preserve", "invert"], default="preserve")

    sp = sub.add_parser("table", help="fundamental groups of k^{C_n} for n = 2..nmax")
    common(sp, n=False)
    sp.add_argument("--nmax", type=int, default=7)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("pi1", help="Pi1Result JSON for k^{C_n}")
    common(sp)
    sp.add_argument("--full", action="store_true", help="include node groups and edges")
    sp.set_defaults(func=cmd_pi1)

    sp = sub.add_parser("enumerate", help="connected Hopf gradings of k^{C_n} as JSON")
    common(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="verify a Hopf algebra, category or grading JSON")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--antipode", choices=["preserve", "invert"], default="preserve")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("smash", help="smash product of a Hopf grading")
    sp.add_argument("--field", default="Q(z12)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--index", type=int, default=1, help="grading index in enumeration order")
    sp.add_argument("--taft", type=int, help="use the length grading of this Taft category")
    sp.add_argument("--m", type=int, default=2, help="order of the Taft grading group")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_smash)

    sp = sub.add_parser("taft", help="truncated fundamental group of a Taft category")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--field", help="defaults to Q(zn)")
    sp.set_defaults(func=cmd_taft)

    sp = sub.add_parser("export", help="export a constructed object as JSON")
    sp.add_argument("what", choices=["dual-group", "group-algebra", "trivial", "taft"])
    sp.add_argument("--field", default="Q")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_export)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            stream=err, format="%(levelname)s %(name)s: %(message)s")
        return args.func(args, out)
    except CliError as exc:
        err.write(f"hopf-pi1: {exc}\n")
        return exc.code
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
