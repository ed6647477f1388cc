"""Command-line front end.

Exit status: 0 for accept / holds / equivalent, 1 for reject / fails /
inequivalent, 2 for any error.  On status 2 nothing is written to stdout.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from .analysis import (
    count_accepting_runs,
    is_oblivious,
    is_outer_nondeterministic,
    is_rotating,
    is_sweeping,
    max_reversals,
)
from .core import (
    AcceptMode,
    AutomatonError,
    OneWayMachine,
    TwoWayMachine,
    W,
    accepts_nondeterministic,
    as_word,
    parse,
    run_deterministic,
    run_oneway,
    serialize,
    validate,
    with_accept_mode,
)
from .families import FamilySpec, UnsupportedCombination, Variant, all_specs, generate
from .primes import PrimeEncoding, prime_decode, prime_encode
from .transform import (
    StateBudgetExceeded,
    bounded_equiv,
    chrobak_normal_form,
    determinize,
    exact_equiv,
    minimize,
    renumber_bfs,
    rotating_to_sweeping,
    shepherdson,
)
from .unarygap import (
    NotQuasiSweeping,
    accepts_length,
    bfs_gap,
    build_unary_gap_2nfa,
    decide_membership_dnc,
    decode_graph,
    encode_graph,
    parse_graph,
    serialize_graph,
    solve_gap_via_unary,
)

LITERAL_LIMIT = 100_000  # longest unary tape we are willing to write out


class UsageError(Exception):
    exit_code = 2

    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        self.token = token


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class Command:
    verb: str
    options: dict = field(default_factory=dict)

    def __getattr__(self, name):
        if name == "options":
            raise AttributeError(name)
        try:
            return self.options[name]
        except KeyError:
            raise AttributeError(name) from None


def _length(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("length must be non-negative")
    return value


def _n_range(text: str) -> list[int]:
    """``3``, ``1..6`` or ``1,2,5``."""
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twofa", description="Two-way finite automata toolkit")
    sub = p.add_subparsers(dest="verb", required=True)
    variants = [v.value for v in Variant]

    g = sub.add_parser("gen", help="generate a family machine")
    g.add_argument("--family", choices=["I", "L"], required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--variant", choices=variants, required=True)
    g.add_argument("-o", "--output")

    r = sub.add_parser("run", help="run a machine on one input")
    r.add_argument("--machine", required=True)
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--unary-length", type=_length)
    r.add_argument("--trace", action="store_true")

    c = sub.add_parser("convert", help="convert between machine classes")
    c.add_argument("machine")
    c.add_argument("--to", required=True,
                   choices=["dfa", "min-dfa", "sweeping", "chrobak",
                            "anywhere", "right-end", "left-end"])
    c.add_argument("-o", "--output")

    a = sub.add_parser("analyze", help="classify a machine")
    a.add_argument("machine")
    a.add_argument("--check", action="append", required=True,
                   choices=["valid", "reversals", "sweeping", "oblivious",
                            "rotating", "outer-nondet", "runs"])
    a.add_argument("--max-len", type=_length, default=8)
    a.add_argument("--input", help="word for --check runs")
    a.add_argument("--cap", type=int, default=1_000_000)

    e = sub.add_parser("equiv", help="compare two machines")
    e.add_argument("a")
    e.add_argument("b")
    how = e.add_mutually_exclusive_group()
    how.add_argument("--max-len", type=_length, default=10)
    how.add_argument("--exact", action="store_true")

    gp = sub.add_parser("gap", help="graph accessibility via unary encodings")
    gsub = gp.add_subparsers(dest="action", required=True)
    s = gsub.add_parser("solve")
    s.add_argument("--graph", required=True)
    s.add_argument("--method", choices=["unary", "dnc", "bfs"], default="unary")
    s = gsub.add_parser("encode")
    s.add_argument("--graph", required=True)
    s = gsub.add_parser("decode")
    s.add_argument("--m", type=_length, required=True)
    s.add_argument("--n", type=int, required=True)
    s = gsub.add_parser("prime-encode")
    s.add_argument("m", type=_length)
    s = gsub.add_parser("prime-decode")
    s.add_argument("encoding")
    s = gsub.add_parser("machine")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("-o", "--output")

    rp = sub.add_parser("report", help="state-count table for family machines")
    rp.add_argument("--family", choices=["I", "L"], action="append")
    rp.add_argument("--n", type=_n_range, default=[1, 2, 3])
    rp.add_argument("--variant", choices=variants, action="append")
    rp.add_argument("--max-len", type=_length,
                    help="word length for the reversal column (default min(2n+4, 12))")
    rp.add_argument("--format", choices=["text", "csv"], default="text")
    rp.add_argument("--csv", help="also write the CSV table here")
    return p


def _unknown_flag(parser: argparse.ArgumentParser, argv: Sequence[str]) -> str | None:
    """First option token no (sub)parser on the path knows, up to ``--``."""
    current = parser
    for tok in argv:
        if tok == "--":
            return None
        subs = [a for a in current._actions if isinstance(a, argparse._SubParsersAction)]
        if subs and tok in subs[0].choices:
            current = subs[0].choices[tok]
            continue
        if tok.startswith("-") and len(tok) > 1 and not tok.lstrip("-").isdigit():
            if tok.split("=", 1)[0] not in current._option_string_actions:
                return tok
    return None


def parse_command(argv: Sequence[str]) -> Command:
    parser = build_parser()
    argv = list(argv)
    bad = _unknown_flag(parser, argv)
    if bad is not None:
        raise UsageError(f"unrecognized argument: {bad}", bad)
    ns = parser.parse_args(argv)
    options = vars(ns)
    return Command(options.pop("verb"), options)


# -- state-count report ------------------------------------------------------

REPORT_COLUMNS = ("family", "n", "variant", "states", "minimized_one_way", "max_reversals")


@dataclass(frozen=True)
class Report:
    rows: tuple[tuple, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        writer.writerows(self.rows)
        return buf.getvalue()

    def to_text(self) -> str:
        table = [REPORT_COLUMNS] + [tuple(str(x) for x in row) for row in self.rows]
        widths = [max(len(str(row[i])) for row in table) for i in range(len(REPORT_COLUMNS))]
        lines = ["  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip() for row in table]
        return "\n".join(lines) + "\n"


def _minimized_one_way(m) -> int | str:
    if isinstance(m, OneWayMachine):
        return minimize(determinize(m)).num_states
    if not m.is_deterministic():
        return "-"
    if any(mv is W for targets in m.delta.values() for _, mv in targets):
        m = rotating_to_sweeping(m)
    try:
        return minimize(shepherdson(m)).num_states
    except StateBudgetExceeded:
        return "-"


def report_state_counts(specs: Sequence[FamilySpec], max_len: int | None = None) -> Report:
    """Rows (family, n, variant, states, minimized one-way states, max reversals)."""
    rows = []
    for spec in specs:
        m = generate(spec)
        if isinstance(m, OneWayMachine):
            reversals = 0
        elif m.is_deterministic():
            bound = max_len if max_len is not None else min(2 * spec.n + 4, 12)
            reversals = max_reversals(m, bound).max_reversals
        else:
            reversals = "-"
        rows.append((spec.family, spec.n, spec.variant.value, m.num_states,
                     _minimized_one_way(m), reversals))
    return Report(tuple(rows))


# -- execution ---------------------------------------------------------------

def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_machine(path: str):
    return parse(_read(path))


def _emit(text: str, path: str | None, out: TextIO) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def _output_machine(m) -> str:
    if isinstance(m, OneWayMachine) and m.is_deterministic():
        m = renumber_bfs(m)
    return serialize(m)


def _word(text: str, m) -> tuple[str, ...]:
    word = as_word(text, m.alphabet)
    unknown = sorted(set(word) - set(m.alphabet))
    if unknown:
        raise UsageError(f"symbol(s) not in the alphabet: {' '.join(unknown)}")
    return word


def _cmd_gen(cmd: Command, out: TextIO) -> int:
    m = generate(FamilySpec(cmd.family, cmd.n, Variant(cmd.variant)))
    _emit(serialize(m), cmd.output, out)
    return 0


def _run_unary(m, length: int) -> bool:
    if len(m.alphabet) != 1:
        raise UsageError("--unary-length needs a machine over a one-letter alphabet")
    if isinstance(m, OneWayMachine):
        return chrobak_normal_form(m).accepts_length(length)
    try:
        return accepts_length(m, length)
    except NotQuasiSweeping:
        if length > LITERAL_LIMIT:
            raise
    return accepts_nondeterministic(m, m.alphabet * length)


def _cmd_run(cmd: Command, out: TextIO) -> int:
    m = _load_machine(cmd.machine)
    if cmd.unary_length is not None:
        if cmd.trace:
            raise UsageError("--trace cannot be combined with --unary-length")
        ok = _run_unary(m, cmd.unary_length)
        out.write("accept\n" if ok else "reject\n")
        return 0 if ok else 1
    word = _word(cmd.input, m)
    if isinstance(m, OneWayMachine):
        if cmd.trace:
            current = frozenset([m.initial])
            out.write(f"0 {{{','.join(m.states[q] for q in sorted(current))}}}\n")
            for i, a in enumerate(word, 1):
                current = m.step(current, a)
                out.write(f"{i} {{{','.join(m.states[q] for q in sorted(current))}}}\n")
        ok = run_oneway(m, word)[1]
        out.write("accept\n" if ok else "reject\n")
        return 0 if ok else 1
    if m.is_deterministic():
        t = run_deterministic(m, word)
        if cmd.trace:
            moves = [mv.value for mv in t.moves] + ["-"]
            for i, (conf, mv) in enumerate(zip(t.steps, moves)):
                out.write(f"{i} {m.states[conf.state]} {conf.position} {mv}\n")
        out.write(f"{t.verdict.value}\n")
        return 0 if t.verdict.value == "accept" else 1
    if cmd.trace:
        raise UsageError("--trace needs a deterministic machine")
    ok = accepts_nondeterministic(m, word)
    out.write("accept\n" if ok else "reject\n")
    return 0 if ok else 1


def _cmd_convert(cmd: Command, out: TextIO) -> int:
    m = _load_machine(cmd.machine)
    target = cmd.to
    if target in ("dfa", "min-dfa"):
        if isinstance(m, TwoWayMachine):
            if any(mv is W for targets in m.delta.values() for _, mv in targets):
                m = rotating_to_sweeping(m)
            result = shepherdson(m)
        else:
            result = determinize(m)
        if target == "min-dfa":
            result = minimize(result)
    elif target == "sweeping":
        if not isinstance(m, TwoWayMachine):
            raise UsageError("--to sweeping needs a two-way machine")
        result = rotating_to_sweeping(m)
    elif target == "chrobak":
        if not isinstance(m, OneWayMachine):
            raise UsageError("--to chrobak needs a one-way unary machine")
        result = chrobak_normal_form(m).to_nfa()
    else:
        if not isinstance(m, TwoWayMachine):
            raise UsageError(f"--to {target} needs a two-way machine")
        result = with_accept_mode(m, AcceptMode(target))
    _emit(_output_machine(result), cmd.output, out)
    return 0


def _cmd_analyze(cmd: Command, out: TextIO) -> int:
    m = _load_machine(cmd.machine)
    status = 0
    for check in cmd.check:
        if check == "valid":
            problems = validate(m)
            for p in problems:
                out.write(f"invalid: {p}\n")
            if not problems:
                out.write("valid\n")
            status |= bool(problems)
        elif check == "reversals":
            rep = max_reversals(m, cmd.max_len)
            out.write(f"max reversals {rep.max_reversals} on word {''.join(rep.witness)!r} "
                      f"(checked up to length {rep.bound_checked})\n")
        elif check == "runs":
            if cmd.input is None:
                raise UsageError("--check runs needs --input")
            count = count_accepting_runs(m, _word(cmd.input, m), cmd.cap)
            out.write(f"accepting runs: {count}\n")
            status |= not (count.kind == "finite" and count.value <= 1)
        else:
            verdict = {
                "sweeping": lambda: is_sweeping(m, cmd.max_len),
                "oblivious": lambda: is_oblivious(m, cmd.max_len),
                "rotating": lambda: is_rotating(m),
                "outer-nondet": lambda: is_outer_nondeterministic(m),
            }[check]()
            out.write(f"{verdict}\n")
            status |= not verdict.holds
    return status


def _cmd_equiv(cmd: Command, out: TextIO) -> int:
    a, b = _load_machine(cmd.a), _load_machine(cmd.b)
    if cmd.exact:
        for m in (a, b):
            if isinstance(m, TwoWayMachine) and not m.is_deterministic():
                raise UsageError("--exact supports one-way machines and two-way DFAs only")
        verdict = exact_equiv(a, b)
    else:
        verdict = bounded_equiv(a, b, cmd.max_len)
    out.write(f"{verdict}\n")
    return 0 if verdict.equivalent else 1


def _cmd_gap(cmd: Command, out: TextIO) -> int:
    action = cmd.action
    if action == "solve":
        g = parse_graph(_read(cmd.graph))
        if cmd.method == "bfs":
            ok = bfs_gap(g)
        elif cmd.method == "dnc" and g.n > 1:
            ok = decide_membership_dnc(build_unary_gap_2nfa(g.n), encode_graph(g))
        else:
            ok = solve_gap_via_unary(g)
        out.write("yes\n" if ok else "no\n")
        return 0 if ok else 1
    if action == "encode":
        out.write(f"{encode_graph(parse_graph(_read(cmd.graph)))}\n")
    elif action == "decode":
        if cmd.m < 1:
            raise UsageError("--m must be at least 1")
        out.write(serialize_graph(decode_graph(cmd.m, cmd.n)))
    elif action == "prime-encode":
        if cmd.m < 1:
            raise UsageError("m must be at least 1")
        out.write(f"{prime_encode(cmd.m)}\n")
    elif action == "prime-decode":
        out.write(f"{prime_decode(PrimeEncoding.parse(cmd.encoding))}\n")
    else:
        _emit(serialize(build_unary_gap_2nfa(cmd.n)), cmd.output, out)
    return 0


def _cmd_report(cmd: Command, out: TextIO) -> int:
    families = cmd.family or ["I", "L"]
    variants = [Variant(v) for v in cmd.variant] if cmd.variant else list(Variant)
    ns = set(cmd.n)
    specs = [s for s in all_specs(max(ns))
             if s.family in families and s.variant in variants and s.n in ns]
    specs.sort(key=lambda s: (s.family, list(Variant).index(s.variant), s.n))
    report = report_state_counts(specs, cmd.max_len)
    out.write(report.to_csv() if cmd.format == "csv" else report.to_text())
    if cmd.csv:
        _emit(report.to_csv(), cmd.csv, out)
    return 0


_HANDLERS = {
    "gen": _cmd_gen,
    "run": _cmd_run,
    "convert": _cmd_convert,
    "analyze": _cmd_analyze,
    "equiv": _cmd_equiv,
    "gap": _cmd_gap,
    "report": _cmd_report,
}


def execute(cmd: Command, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Run ``cmd``; results go to ``out`` only when the status is 0 or 1."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    buf = io.StringIO()
    try:
        status = _HANDLERS[cmd.verb](cmd, buf)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except (OSError, AutomatonError, UnsupportedCombination, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    out.write(buf.getvalue())
    return status


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_command(argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    return execute(cmd)


if __name__ == "__main__":
    sys.exit(main())
