"""Command-line entry point.

Exit status: 0 on success, 1 on a domain error, 2 on a usage or I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence, TextIO

import numpy as np

from . import costs, fourier, grover, linalg
from .elimination import GroverPivotStrategy, SIMULATION_MAX_N, cost_report
from .errors import DimensionMismatch, ParseError, QgjeError
from .ledger import CostLedger

COMMANDS = ("rref", "solve", "grover", "deutsch", "add", "cost")


class UsageError(Exception):
    pass


class UnknownCommand(UsageError):
    pass


class MissingInput(UsageError):
    pass


class MalformedFlag(UsageError):
    pass


class DomainError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input_path: Optional[Path] = None
    seed: int = 0
    output_format: str = "text"
    options: dict[str, Any] = field(default_factory=dict)


def derive_rng(seed: int, label: str) -> np.random.Generator:
    """Generator for one subsystem, split off the root seed by a fixed label."""
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(label.encode())]))


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rational(token: str) -> Fraction:
    if not _TOKEN.match(token):
        raise ValueError(f"not an integer or p/q fraction: {token!r}")
    return Fraction(token)


def parse_system(text: str) -> linalg.AugmentedSystem:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((lineno, content.split()))
    if not lines:
        raise ParseError("empty input")
    lineno, header = lines[0]
    if len(header) != 2 or not all(t.isdigit() for t in header):
        raise ParseError("header must be two positive integers 'm n'", lineno)
    m, width = int(header[0]), int(header[1])
    if m < 1 or width < 2:
        raise ParseError(f"need at least 1 row and 2 columns (coefficients plus rhs), got {m} {width}", lineno)
    body = lines[1:]
    if len(body) > m:
        raise ParseError(f"unexpected extra row (header announces {m})", body[m][0])
    rows = []
    for lineno, tokens in body:
        if len(tokens) != width:
            raise ParseError(f"expected {width} entries, found {len(tokens)}", lineno, min(len(tokens), width) + 1)
        row = []
        for col, token in enumerate(tokens, start=1):
            try:
                row.append(parse_rational(token))
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {token!r}", lineno, col) from None
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col) from None
        rows.append(row)
    if len(rows) < m:
        raise DimensionMismatch(f"header announces {m} rows, found {len(rows)}")
    return linalg.AugmentedSystem.from_rows(rows)


def load_system(path: Path) -> linalg.AugmentedSystem:
    return parse_system(Path(path).read_text(encoding="utf-8"))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        if "the following arguments are required" in message and "file" in message:
            raise MissingInput(message)
        raise MalformedFlag(message)


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def _pos_int(text: str) -> int:
    value = _nonneg_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got 0")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qgje", description="Gauss-Jordan elimination with simulated Grover pivot search.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add_common(p, formats=("text", "json")):
        p.add_argument("--seed", type=_nonneg_int, default=0)
        p.add_argument("--format", choices=formats, default="text", dest="output_format")

    p = sub.add_parser("rref", help="reduce an augmented system")
    p.add_argument("file", type=Path)
    p.add_argument("--pivot", choices=("classical", "grover"), default="classical")
    p.add_argument("--ledger", action="store_true", help="print the operation counters")
    add_common(p)

    p = sub.add_parser("solve", help="describe the solution set of an augmented system")
    p.add_argument("file", type=Path)
    p.add_argument("--unique", action="store_true", help="fail (exit 1) unless the solution is unique")
    add_common(p)

    p = sub.add_parser("grover", help="run a verified Grover search")
    p.add_argument("--n", type=_pos_int, required=True, dest="n_qubits")
    p.add_argument("--marked", type=_int_list, required=True)
    p.add_argument("--iters", type=_nonneg_int, default=None)
    add_common(p)

    p = sub.add_parser("deutsch", help="classify a one-bit function as constant or balanced")
    p.add_argument("--table", type=_int_list, required=True)
    add_common(p)

    p = sub.add_parser("add", help="add two integers with the Fourier-basis adder")
    p.add_argument("--n", type=_pos_int, required=True, dest="n_qubits")
    p.add_argument("a", type=_nonneg_int)
    p.add_argument("b", type=_nonneg_int)
    p.add_argument("--trace", action="store_true", help="print the phase word after every stage")
    add_common(p)

    p = sub.add_parser("cost", help="tabulate operation-count formulas and simulated ledgers")
    p.add_argument("--max-n", type=_pos_int, required=True, dest="max_n")
    p.add_argument("--no-sim", action="store_true")
    p.add_argument("--trials", type=_pos_int, default=3)
    add_common(p, formats=("text", "csv", "json"))
    return parser


def parse_args(argv: Sequence[str]) -> RunConfig:
    argv = list(argv)
    if not argv or argv[0] not in COMMANDS and not argv[0].startswith("-"):
        raise UnknownCommand(f"unknown command {argv[0]!r}" if argv else "no command given")
    ns = build_parser().parse_args(argv)
    if ns.command is None:
        raise UnknownCommand("no command given")
    opts = vars(ns).copy()
    command = opts.pop("command")
    path = opts.pop("file", None)
    seed = opts.pop("seed")
    fmt = opts.pop("output_format")
    return RunConfig(command, path, seed, fmt, opts)


# ---------------------------------------------------------------- output


def fmt_real(x: float) -> str:
    return f"{x:.5g}"


def _fractions(values) -> list[str]:
    return [str(v) for v in values]


def _emit_json(out: TextIO, payload: dict) -> None:
    out.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")


def _matrix_text(matrix: linalg.Matrix, split: int) -> list[str]:
    cells = [_fractions(matrix.row(i)) for i in range(matrix.rows)]
    widths = [max(len(row[j]) for row in cells) for j in range(matrix.cols)]
    lines = []
    for row in cells:
        left = " ".join(c.rjust(w) for c, w in zip(row[:split], widths))
        right = " ".join(c.rjust(w) for c, w in zip(row[split:], widths[split:]))
        lines.append(f"[ {left} | {right} ]")
    return lines


def _ledger_lines(ledger: CostLedger) -> list[str]:
    items = ledger.as_dict()
    pad = max(len(k) for k in items)
    lines = [f"  {k.ljust(pad)}  {v}" for k, v in items.items()]
    lines.append(f"  {'total'.ljust(pad)}  {ledger.total()}")
    return lines


def _run_rref(cfg: RunConfig, out: TextIO) -> int:
    system = load_system(cfg.input_path)
    ledger = CostLedger()
    if cfg.options["pivot"] == "grover":
        strategy = GroverPivotStrategy(derive_rng(cfg.seed, "pivot"))
    else:
        strategy = linalg.ClassicalPivot()
    result = linalg.rref(system, strategy, ledger)
    n = system.coefficients.cols
    if cfg.output_format == "json":
        _emit_json(out, {
            "command": "rref",
            "pivot": strategy.name,
            "seed": cfg.seed,
            "rows": result.reduced.rows,
            "cols": n,
            "rank": result.rank,
            "pivot_columns": list(result.pivot_columns),
            "reduced": [_fractions(r) for r in result.reduced.to_rows()],
            "ledger": {**ledger.as_dict(), "total": ledger.total()} if cfg.options["ledger"] else None,
        })
        return 0
    lines = [f"pivot: {strategy.name}", f"rank: {result.rank}",
             "pivot_columns: " + " ".join(str(c) for c in result.pivot_columns)]
    lines += _matrix_text(result.reduced, n)
    if cfg.options["ledger"]:
        lines.append("ledger:")
        lines += _ledger_lines(ledger)
    out.write("\n".join(lines) + "\n")
    return 0


def _run_solve(cfg: RunConfig, out: TextIO) -> int:
    system = load_system(cfg.input_path)
    space = linalg.solve(system)
    if cfg.output_format == "json":
        _emit_json(out, {
            "command": "solve",
            "kind": space.kind.value,
            "particular": None if space.particular is None else _fractions(space.particular),
            "basis": [_fractions(v) for v in space.basis],
        })
    else:
        lines = [f"kind: {space.kind.value}"]
        if space.particular is not None:
            lines.append("particular: " + " ".join(_fractions(space.particular)))
        for i, v in enumerate(space.basis):
            lines.append(f"basis[{i}]: " + " ".join(_fractions(v)))
        out.write("\n".join(lines) + "\n")
    if cfg.options["unique"] and space.kind is not linalg.SolutionKind.UNIQUE:
        raise DomainError(f"system has no unique solution ({space.kind.value})")
    return 0


def _run_grover(cfg: RunConfig, out: TextIO) -> int:
    n = cfg.options["n_qubits"]
    marked = sorted(set(cfg.options["marked"]))
    oracle = grover.Oracle.from_marked(n, marked)
    t = len(marked) if marked else None
    plan = grover.make_plan(n, t_hint=t, iterations=cfg.options["iters"])
    # trace on a separate oracle so the run's query ledger stays exact
    shadow = grover.Oracle.from_marked(n, marked)
    state = grover.uniform_state(n)
    first = plan.attempts()[0] if plan.attempts() else 0
    trace = [grover.marked_probability(state, shadow)]
    for _ in range(first):
        state = grover.grover_iterate(state, shadow)
        trace.append(grover.marked_probability(state, shadow))
    result = grover.grover_search(oracle, derive_rng(cfg.seed, "grover"), plan)
    if cfg.output_format == "json":
        _emit_json(out, {
            "command": "grover",
            "seed": cfg.seed,
            "plan": {"n_qubits": n, "K": plan.K, "t_hint": plan.t_hint, "m": plan.m,
                     "retry_schedule": list(plan.retry_schedule), "max_retries": plan.max_retries},
            "trace": [round(p, 12) for p in trace],
            "outcomes": list(result.outcomes),
            "found": result.found,
            "verified": result.verified,
            "ledger": {"oracle_queries": result.oracle_queries, "grover_iterations": result.grover_iterations,
                       "measurements": result.measurements, "fallback_queries": result.fallback_queries},
        })
        return 0
    lines = [
        f"plan: n={n} K={plan.K} t={plan.t_hint if t else 'unknown'} m={plan.m} "
        f"retries={' '.join(str(r) for r in plan.retry_schedule)}",
        "trace (marked probability per iterate):",
    ]
    lines += [f"  {i:3d}  {fmt_real(p)}" for i, p in enumerate(trace)]
    lines += [
        "measured: " + (" ".join(str(o) for o in result.outcomes) or "-"),
        f"found: {result.found if result.found is not None else 'none'}",
        f"verified: {'yes' if result.verified else 'no'}",
        f"oracle_queries: {result.oracle_queries}",
        f"grover_iterations: {result.grover_iterations}",
        f"measurements: {result.measurements}",
        f"fallback_queries: {result.fallback_queries}",
    ]
    out.write("\n".join(lines) + "\n")
    return 0


def _run_deutsch(cfg: RunConfig, out: TextIO) -> int:
    table = cfg.options["table"]
    if len(table) != 2 or any(v not in (0, 1) for v in table):
        raise MalformedFlag(f"--table needs two bits like 0,1; got {table!r}")
    verdict = grover.deutsch_classify(table, derive_rng(cfg.seed, "deutsch"))
    if cfg.output_format == "json":
        _emit_json(out, {"command": "deutsch", "table": table, "result": verdict.value})
    else:
        out.write(f"f = {table}: {verdict.value}\n")
    return 0


def _run_add(cfg: RunConfig, out: TextIO) -> int:
    n, a, b = cfg.options["n_qubits"], cfg.options["a"], cfg.options["b"]
    total, stages = fourier.quantum_add_trace(a, b, n)
    if cfg.output_format == "json":
        payload = {"command": "add", "n": n, "a": a, "b": b, "sum": total}
        if cfg.options["trace"]:
            payload["trace"] = [{"stage": s.label, "word": s.word, "phase": s.fraction} for s in stages]
        _emit_json(out, payload)
        return 0
    lines = []
    if cfg.options["trace"]:
        lines += [f"  {s.label:<10} {s.fraction}  ({s.word})" for s in stages]
    lines.append(f"{a} + {b} mod {1 << n} = {total}")
    out.write("\n".join(lines) + "\n")
    return 0


COST_COLUMNS = ("N", "paper_total", "closed_form", "floored_closed_form", "simulated_mean", "ratio")


def _run_cost(cfg: RunConfig, out: TextIO) -> int:
    simulate = not cfg.options["no_sim"]
    rows = cost_report(cfg.options["max_n"], simulate=simulate, trials=cfg.options["trials"],
                       rng=derive_rng(cfg.seed, "cost"))

    def cells(row):
        sim = "" if row.simulated_mean is None else fmt_real(row.simulated_mean)
        return [str(row.N), fmt_real(row.paper_total), fmt_real(row.closed_form),
                str(row.floored_closed_form), sim, fmt_real(row.ratio)]

    if cfg.output_format == "json":
        _emit_json(out, {
            "command": "cost",
            "seed": cfg.seed,
            "simulated": simulate,
            "simulation_max_n": SIMULATION_MAX_N,
            "asymptotic_ratio": costs.ASYMPTOTIC_RATIO,
            "rows": [
                {"N": r.N, "paper_total": r.paper_total, "closed_form": r.closed_form,
                 "floored_closed_form": r.floored_closed_form, "printed_theorem": r.printed_theorem,
                 "simulated_mean": r.simulated_mean, "ratio": r.ratio}
                for r in rows
            ],
        })
    elif cfg.output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COST_COLUMNS)
        writer.writerows(cells(r) for r in rows)
        out.write(buf.getvalue())
    else:
        table = [list(COST_COLUMNS)] + [cells(r) for r in rows]
        widths = [max(len(row[j]) for row in table) for j in range(len(COST_COLUMNS))]
        for row in table:
            out.write("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n")
    return 0


_DISPATCH = {
    "rref": _run_rref,
    "solve": _run_solve,
    "grover": _run_grover,
    "deutsch": _run_deutsch,
    "add": _run_add,
    "cost": _run_cost,
}


def run(config: RunConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        return _DISPATCH[config.command](config, out)
    except UsageError as exc:
        err.write(f"qgje: error: {exc}\n")
        return 2
    except (ParseError, DimensionMismatch) as exc:
        err.write(f"qgje: error: {config.input_path}: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"qgje: error: {exc.strerror or exc}: {exc.filename or config.input_path}\n")
        return 2
    except (DomainError, QgjeError) as exc:
        err.write(f"qgje: {exc}\n")
        return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"qgje: error: {str(exc).splitlines()[0]}\n")
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
