"""Command-line entry point.

Exit codes: 0 success, 1 computation error, 2 usage or input error,
3 when ``check`` finds a violation.  Diagnostics go to stderr; stdout only
ever carries complete output.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .invariants import (
    KINDS,
    check_conjecture,
    denominator_vector,
    extract_F_polynomial,
    extract_g_vector,
    f_vector,
)
from .laurent import NonExactDivision
from .loaders import InputError, load_rep, load_seed
from .quiver import QuiverError
from .reps import (
    EnumerationBoundError,
    InterpolationError,
    g_from_presentation,
    grassmannian_euler_char,
    module_F_polynomial,
)
from .seeds import apply_sequence, principal_seed, traverse_exchange_graph

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class BudgetExhausted(Exception):
    pass


@dataclass
class Output:
    lines: list[str]
    code: int = 0
    notes: list[str] = field(default_factory=list)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = 0
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _vec(v: Sequence[int]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cluster-forge", description="Cluster algebra seeds, invariants and quiver Grassmannians.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("mutate", help="apply a mutation sequence and print the changed cluster variables")
    p.add_argument("--seed", required=True)
    p.add_argument("--sequence", type=_int_list, required=True)

    p = sub.add_parser("traverse", help="explore the exchange graph")
    p.add_argument("--seed", required=True)
    p.add_argument("--max-seeds", type=_positive, default=10_000)

    p = sub.add_parser("invariants", help="g, F, f and d of one cluster variable (principal coefficients)")
    p.add_argument("--seed", required=True)
    p.add_argument("--sequence", type=_int_list, default=())
    p.add_argument("--slot", type=_positive, required=True)

    p = sub.add_parser("check", help="run a conjecture checker over the principal pattern")
    p.add_argument("--seed", required=True)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--max-seeds", type=_positive, default=10_000)
    p.add_argument("--degree", type=int, default=2)

    p = sub.add_parser("char", help="module F-polynomial and g-vector of a representation")
    p.add_argument("--rep", required=True)

    p = sub.add_parser("grassmannian", help="Euler characteristic of one quiver Grassmannian")
    p.add_argument("--rep", required=True)
    p.add_argument("--e", type=_int_list, required=True)
    return parser


def _label(seed, i: int) -> str:
    return seed.names[i] if seed.names is not None else f"x{i + 1}"


def _check_directions(seq: Sequence[int], r: int):
    bad = [k for k in seq if not 1 <= k <= r]
    if bad:
        raise UsageError(f"mutation direction {bad[0]} out of range 1..{r}")


def cmd_mutate(args) -> Output:
    seed = load_seed(args.seed)
    _check_directions(args.sequence, seed.r)
    out = apply_sequence(seed, args.sequence)
    lines = [
        f"{_label(seed, i)}' = {out.render(z)}"
        for i, (z, z0) in enumerate(zip(out.mutable, seed.mutable))
        if z != z0
    ]
    lines.append(f"B' = {out.matrix}")
    return Output(lines)


def cmd_traverse(args) -> Output:
    seed = load_seed(args.seed)
    report = traverse_exchange_graph(seed, args.max_seeds)
    finite = "true" if report.finite else "unknown"
    out = Output([f"seeds={report.seed_count} variables={report.variable_count} finite={finite}"])
    if report.finite is not True:
        out.notes.append(f"budget exhausted: stopped after {report.seed_count} seeds")
    return out


def cmd_invariants(args) -> Output:
    seed = load_seed(args.seed)
    _check_directions(args.sequence, seed.r)
    if args.slot > seed.r:
        raise UsageError(f"slot {args.slot} out of range 1..{seed.r}")
    given = apply_sequence(seed, args.sequence).cluster[args.slot - 1]
    root = principal_seed(seed)
    z = apply_sequence(root, args.sequence).cluster[args.slot - 1]
    b = root.matrix
    f = extract_F_polynomial(z, b)
    return Output([
        f"x = {given.render_fraction(names=seed.names)}",
        f"z = {z}",
        f"g = {_vec(extract_g_vector(z, b))}",
        f"F = {f.render('y')}",
        f"f = {_vec(f_vector(f))}",
        f"d = {_vec(denominator_vector(z, b.r))}",
    ])


def cmd_check(args) -> Output:
    seed = load_seed(args.seed)
    if args.degree < 0:
        raise UsageError("--degree must be nonnegative")
    report = check_conjecture(args.kind, seed, args.max_seeds, args.degree)
    if report.holds and not report.complete:
        raise BudgetExhausted(
            f"explored {report.seeds} seeds without closing the pattern and without finding a violation"
        )
    lines = [json.dumps(report.summary(), sort_keys=True)]
    lines += [json.dumps(w, sort_keys=True) for w in report.witnesses]
    return Output(lines, EXIT_OK if report.holds else EXIT_VIOLATION)


def cmd_char(args) -> Output:
    rep = load_rep(args.rep)
    f = module_F_polynomial(rep)
    return Output([
        f"F = {f.render('y')}",
        f"f = {_vec(f_vector(f))}",
        f"dim = {_vec(rep.dim)}",
        f"g = {_vec(g_from_presentation(rep))}",
    ])


def cmd_grassmannian(args) -> Output:
    rep = load_rep(args.rep)
    e = args.e
    if len(e) != len(rep.dim):
        raise UsageError(f"--e needs {len(rep.dim)} entries, got {len(e)}")
    if any(not 0 <= x <= d for x, d in zip(e, rep.dim)):
        raise UsageError(f"--e must satisfy 0 <= e <= dim {_vec(rep.dim)}")
    return Output([f"chi = {grassmannian_euler_char(rep, e)}"])


COMMANDS = {
    "mutate": cmd_mutate,
    "traverse": cmd_traverse,
    "invariants": cmd_invariants,
    "check": cmd_check,
    "char": cmd_char,
    "grassmannian": cmd_grassmannian,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    def fail(msg: str, code: int) -> int:
        print(msg, file=stderr)
        return code

    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return fail(f"error: usage: {exc}", EXIT_USAGE)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=stderr, format="%(name)s: %(message)s")

    try:
        result = COMMANDS[args.command](args)
    except InputError as exc:
        return fail(f"error: {exc}", EXIT_USAGE)
    except UsageError as exc:
        return fail(f"error: usage: {exc}", EXIT_USAGE)
    except BudgetExhausted as exc:
        return fail(f"error: budget exhausted: {exc}", EXIT_COMPUTE)
    except EnumerationBoundError as exc:
        return fail(f"error: bound exceeded: {exc}", EXIT_COMPUTE)
    except InterpolationError as exc:
        return fail(f"error: interpolation: {exc}", EXIT_COMPUTE)
    except (ArithmeticError, NonExactDivision, QuiverError, ValueError, RuntimeError) as exc:
        return fail(f"error: computation: {exc}", EXIT_COMPUTE)

    for note in result.notes:
        print(note, file=stderr)
    stdout.write("".join(line + "\n" for line in result.lines))
    return result.code


def main() -> None:
    sys.exit(run())
