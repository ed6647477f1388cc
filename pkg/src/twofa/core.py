"""Automaton types and exact simulation semantics.

A two-way machine reads ``|- w -|`` with cells numbered ``0 .. len(w) + 1``.
States are dense indices; ``state_names`` is carried only for printing and
serialization.  Words are sequences of symbol names (a plain ``str`` works
when every symbol is a single character).
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

LEFT_END = "|-"
RIGHT_END = "-|"
ENDMARKERS = (LEFT_END, RIGHT_END)


class Move(enum.Enum):
    LEFT = "L"
    RIGHT = "R"
    STAY = "S"
    WRAP = "W"  # rotating machines only: from -| jump to cell 1

    @property
    def delta(self) -> int:
        return _OFFSETS[self.value]


_OFFSETS = {"L": -1, "R": 1, "S": 0, "W": 0}
L, R, S, W = Move.LEFT, Move.RIGHT, Move.STAY, Move.WRAP


class AcceptMode(enum.Enum):
    ANYWHERE = "anywhere"
    RIGHT_END = "right-end"
    LEFT_END = "left-end"


class Verdict(enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    LOOP = "loop"


class AutomatonError(Exception):
    pass


class NonDeterministicMachine(AutomatonError):
    pass


class FormatError(AutomatonError):
    pass


@dataclass(frozen=True)
class TwoWayMachine:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: int
    accepting: frozenset[int]
    delta: Mapping[tuple[int, str], frozenset[tuple[int, Move]]]
    accept_mode: AcceptMode = AcceptMode.ANYWHERE
    start_cell: int = 1

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(
            self,
            "delta",
            {k: frozenset(v) for k, v in self.delta.items() if v},
        )

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.states, self.alphabet, self.initial, self.accepting,
                      frozenset(self.delta.items()), self.accept_mode, self.start_cell))
            object.__setattr__(self, "_hash", h)
            return h

    @property
    def num_states(self) -> int:
        return len(self.states)

    def moves(self, q: int, symbol: str) -> frozenset[tuple[int, Move]]:
        return self.delta.get((q, symbol), frozenset())

    def is_deterministic(self) -> bool:
        return all(len(v) <= 1 for v in self.delta.values())

    def accepts_at(self, q: int, pos: int, n: int) -> bool:
        """Acceptance test for configuration ``(q, pos)`` on an input of length ``n``."""
        if q not in self.accepting:
            return False
        if self.accept_mode is AcceptMode.ANYWHERE:
            return True
        if self.accept_mode is AcceptMode.RIGHT_END:
            return pos == n + 1
        return pos == 0


@dataclass(frozen=True)
class OneWayMachine:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: int
    accepting: frozenset[int]
    delta: Mapping[tuple[int, str], frozenset[int]]

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(
            self,
            "delta",
            {k: frozenset(v) for k, v in self.delta.items() if v},
        )

    def __hash__(self):
        return hash((self.states, self.alphabet, self.initial, self.accepting,
                     frozenset(self.delta.items())))

    @property
    def num_states(self) -> int:
        return len(self.states)

    def step(self, qs: Iterable[int], symbol: str) -> frozenset[int]:
        out: set[int] = set()
        for q in qs:
            out |= self.delta.get((q, symbol), frozenset())
        return frozenset(out)

    def is_deterministic(self) -> bool:
        if any(len(v) > 1 for v in self.delta.values()):
            return False
        return all(
            (q, a) in self.delta
            for q in range(self.num_states)
            for a in self.alphabet
        )


@dataclass(frozen=True)
class Configuration:
    state: int
    position: int


@dataclass(frozen=True)
class Trajectory:
    steps: tuple[Configuration, ...]
    moves: tuple[Move, ...]
    verdict: Verdict
    length: int = 0  # input length, so positions can be interpreted

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(c.position for c in self.steps)


def tape(word: Sequence[str]) -> list[str]:
    return [LEFT_END, *word, RIGHT_END]


def _target(pos: int, move: Move) -> int:
    return 1 if move is W else pos + move.delta


def validate(machine: TwoWayMachine | OneWayMachine) -> list[str]:
    """Return a list of human-readable violations; empty means well formed."""
    problems = []
    n = machine.num_states
    names = set()
    for a in machine.alphabet:
        if not a or any(c.isspace() for c in a) or a in ENDMARKERS:
            problems.append(f"bad symbol name {a!r}")
        if a in names:
            problems.append(f"duplicate symbol {a!r}")
        names.add(a)
    if not 0 <= machine.initial < n:
        problems.append(f"initial state {machine.initial} unknown")
    for q in sorted(machine.accepting):
        if not 0 <= q < n:
            problems.append(f"accepting state {q} unknown")

    two_way = isinstance(machine, TwoWayMachine)
    tape_symbols = names | set(ENDMARKERS) if two_way else names
    for (q, a), targets in sorted(machine.delta.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        where = f"transition ({q}, {a})"
        if not 0 <= q < n:
            problems.append(f"{where}: source state unknown")
        if a not in tape_symbols:
            problems.append(f"{where}: symbol not in alphabet")
        for t in targets:
            p = t[0] if two_way else t
            if not 0 <= p < n:
                problems.append(f"{where}: target state {p} unknown")
            if not two_way:
                continue
            move = t[1]
            if a == LEFT_END and move is L:
                problems.append(f"{where}: moves off left endmarker")
            if a == RIGHT_END and move is R:
                problems.append(f"{where}: moves off right endmarker")
            if move is W and a != RIGHT_END:
                problems.append(f"{where}: wrap move away from right endmarker")
    if two_way and machine.start_cell not in (0, 1):
        problems.append(f"start cell {machine.start_cell} is not 0 or 1")
    return problems


@lru_cache(maxsize=256)
def _det_table(machine: TwoWayMachine) -> dict:
    if not machine.is_deterministic():
        raise NonDeterministicMachine("machine has a transition with several targets")
    return {key: next(iter(targets)) for key, targets in machine.delta.items()}


def trace(machine: TwoWayMachine, word: Sequence[str]):
    """Fast deterministic run: (states, positions, moves, verdict) as lists."""
    table = _det_table(machine)
    cells = tape(word)
    n = len(word)
    bound = machine.num_states * (n + 2)
    accepts_at = machine.accepts_at
    q, pos = machine.initial, min(machine.start_cell, n + 1)
    states, positions, moves = [q], [pos], []
    while True:
        if accepts_at(q, pos, n):
            return states, positions, moves, Verdict.ACCEPT
        nxt = table.get((q, cells[pos]))
        if nxt is None:
            return states, positions, moves, Verdict.REJECT
        if len(moves) >= bound:
            return states, positions, moves, Verdict.LOOP
        q, move = nxt
        pos = 1 if move is W else pos + move.delta
        states.append(q)
        positions.append(pos)
        moves.append(move)


def run_deterministic(machine: TwoWayMachine, word: Sequence[str]) -> Trajectory:
    states, positions, moves, verdict = trace(machine, word)
    steps = tuple(Configuration(q, pos) for q, pos in zip(states, positions))
    return Trajectory(steps, tuple(moves), verdict, len(word))


def successors(machine: TwoWayMachine, cells: Sequence[str], q: int, pos: int):
    for p, move in machine.moves(q, cells[pos]):
        yield p, _target(pos, move), move


def accepts_nondeterministic(machine: TwoWayMachine, word: Sequence[str]) -> bool:
    """Reachability of an accepting configuration in the configuration graph."""
    cells = tape(word)
    n = len(word)
    start = (machine.initial, min(machine.start_cell, n + 1))
    seen = {start}
    queue = deque([start])
    while queue:
        q, pos = queue.popleft()
        if machine.accepts_at(q, pos, n):
            return True
        for p, npos, _ in successors(machine, cells, q, pos):
            if (p, npos) not in seen:
                seen.add((p, npos))
                queue.append((p, npos))
    return False


def run_oneway(machine: OneWayMachine, word: Sequence[str]) -> tuple[frozenset[int], bool]:
    current = frozenset([machine.initial])
    for a in word:
        current = machine.step(current, a)
        if not current:
            break
    return current, bool(current & machine.accepting)


def accepts(machine, word: Sequence[str]) -> bool:
    """Membership for any machine kind the package knows about."""
    if isinstance(machine, OneWayMachine):
        return run_oneway(machine, word)[1]
    if isinstance(machine, TwoWayMachine):
        if machine.is_deterministic():
            return trace(machine, word)[3] is Verdict.ACCEPT
        return accepts_nondeterministic(machine, word)
    return machine.accepts(word)


def embed(machine: OneWayMachine) -> TwoWayMachine:
    """A one-way machine as a two-way one accepting on the right endmarker."""
    delta = {
        (q, a): {(p, R) for p in targets}
        for (q, a), targets in machine.delta.items()
    }
    return TwoWayMachine(
        machine.states,
        machine.alphabet,
        machine.initial,
        machine.accepting,
        delta,
        AcceptMode.RIGHT_END,
        1,
    )


def with_accept_mode(machine: TwoWayMachine, mode: AcceptMode) -> TwoWayMachine:
    """Equivalent machine using acceptance condition ``mode``.

    Adds at most two states.  Determinism is preserved: an accepting state
    halts the original machine on every cell where it accepts, so its
    transitions there can be rewritten freely.
    """
    old = machine.accept_mode
    if mode is old:
        return machine
    states = list(machine.states)
    delta = {k: set(v) for k, v in machine.delta.items()}
    symbols = list(machine.alphabet) + [LEFT_END, RIGHT_END]
    final = machine.accepting

    def fresh(name):
        while name in states:
            name += "'"
        states.append(name)
        return len(states) - 1

    if mode is AcceptMode.ANYWHERE:
        # accepting states only count on one endmarker: divert there
        end = RIGHT_END if old is AcceptMode.RIGHT_END else LEFT_END
        acc = fresh("acc")
        for f in final:
            delta[(f, end)] = {(acc, S)}
        accepting = {acc}
    else:
        end, toward = (RIGHT_END, R) if mode is AcceptMode.RIGHT_END else (LEFT_END, L)
        go = fresh("go")
        for a in symbols:
            if a != end:
                delta[(go, a)] = {(go, toward)}
        if old is AcceptMode.ANYWHERE:
            for f in final:
                for a in symbols:
                    delta[(f, a)] = {(go, S if a == end else toward)}
        else:
            old_end = RIGHT_END if old is AcceptMode.RIGHT_END else LEFT_END
            for f in final:
                delta[(f, old_end)] = {(go, toward)}
        accepting = {go}
    return TwoWayMachine(
        tuple(states),
        machine.alphabet,
        machine.initial,
        frozenset(accepting),
        delta,
        mode,
        machine.start_cell,
    )


def words(alphabet: Sequence[str], max_len: int, min_len: int = 0):
    """All words of length ``min_len..max_len`` in length-lexicographic order."""
    from itertools import product

    for n in range(min_len, max_len + 1):
        yield from product(alphabet, repeat=n)


def as_word(text: str, alphabet: Sequence[str]) -> tuple[str, ...]:
    """Split user text into symbols: per character for one-letter alphabets."""
    text = text.strip()
    if all(len(a) == 1 for a in alphabet) and not any(c in text for c in " ,"):
        return tuple(text)
    return tuple(tok for tok in text.replace(",", " ").split() if tok)


# -- textual format ---------------------------------------------------------

_KINDS = {"1dfa", "1nfa", "2dfa", "2nfa"}


def _kind(machine) -> str:
    if isinstance(machine, OneWayMachine):
        return "1dfa" if machine.is_deterministic() else "1nfa"
    return "2dfa" if machine.is_deterministic() else "2nfa"


def serialize(machine: TwoWayMachine | OneWayMachine) -> str:
    names = machine.states
    lines = [
        f"kind: {_kind(machine)}",
        f"alphabet: {' '.join(machine.alphabet)}",
        f"states: {' '.join(names)}",
        f"initial: {names[machine.initial]}",
        f"accepting: {' '.join(names[q] for q in sorted(machine.accepting))}".rstrip(),
    ]
    order = {a: i for i, a in enumerate((LEFT_END, *machine.alphabet, RIGHT_END))}
    if isinstance(machine, TwoWayMachine):
        lines.append(f"accept-mode: {machine.accept_mode.value}")
        lines.append(f"start-cell: {machine.start_cell}")
        key = lambda t: (t[0], t[1].value)
    else:
        key = lambda t: t
    for (q, a) in sorted(machine.delta, key=lambda k: (k[0], order[k[1]])):
        for t in sorted(machine.delta[(q, a)], key=key):
            if isinstance(machine, TwoWayMachine):
                lines.append(f"t: {names[q]} {a} -> {names[t[0]]} {t[1].value}")
            else:
                lines.append(f"t: {names[q]} {a} -> {names[t]} R")
    return "\n".join(lines) + "\n"


def parse(text: str) -> TwoWayMachine | OneWayMachine:
    header: dict[str, str] = {}
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'key: value'")
        key, rest = key.strip(), rest.strip()
        if key == "t":
            transitions.append((lineno, rest))
        elif key in header:
            raise FormatError(f"line {lineno}: duplicate {key!r}")
        else:
            header[key] = rest
    for required in ("kind", "alphabet", "states", "initial", "accepting"):
        if required not in header:
            raise FormatError(f"missing {required!r} line")
    kind = header["kind"]
    if kind not in _KINDS:
        raise FormatError(f"unknown kind {kind!r}")
    unknown = set(header) - {"kind", "alphabet", "states", "initial", "accepting",
                             "accept-mode", "start-cell"}
    if unknown:
        raise FormatError(f"unknown header line(s): {', '.join(sorted(unknown))}")

    alphabet = tuple(header["alphabet"].split())
    names = tuple(header["states"].split())
    index = {name: i for i, name in enumerate(names)}
    if len(index) != len(names):
        raise FormatError("duplicate state name")

    def state(tok, lineno=None):
        if tok not in index:
            where = f"line {lineno}: " if lineno else ""
            raise FormatError(f"{where}unknown state {tok!r}")
        return index[tok]

    initial = state(header["initial"])
    accepting = frozenset(state(t) for t in header["accepting"].split())
    two_way = kind.startswith("2")
    symbols = set(alphabet) | (set(ENDMARKERS) if two_way else set())
    delta: dict = {}
    for lineno, rest in transitions:
        parts = rest.split()
        if len(parts) not in (4, 5) or parts[2] != "->":
            raise FormatError(f"line {lineno}: expected 't: <state> <symbol> -> <state> <move>'")
        q, a = state(parts[0], lineno), parts[1]
        p = state(parts[3], lineno)
        if a not in symbols:
            raise FormatError(f"line {lineno}: unknown symbol {a!r}")
        mv = parts[4] if len(parts) == 5 else "R"
        try:
            move = Move(mv)
        except ValueError:
            raise FormatError(f"line {lineno}: unknown move {mv!r}") from None
        if two_way:
            delta.setdefault((q, a), set()).add((p, move))
        else:
            if move is not R:
                raise FormatError(f"line {lineno}: one-way machines only move R")
            delta.setdefault((q, a), set()).add(p)

    if kind.endswith("dfa") and any(len(v) > 1 for v in delta.values()):
        raise FormatError(f"kind {kind} but some transition is nondeterministic")
    if not two_way:
        machine = OneWayMachine(names, alphabet, initial, accepting, delta)
        problems = validate(machine)
        if problems:
            raise FormatError("; ".join(problems))
        return machine
    try:
        mode = AcceptMode(header.get("accept-mode", "anywhere"))
    except ValueError:
        raise FormatError(f"unknown accept-mode {header['accept-mode']!r}") from None
    cell = header.get("start-cell", "1")
    if cell not in ("0", "1"):
        raise FormatError(f"start-cell must be 0 or 1, got {cell!r}")
    machine = TwoWayMachine(names, alphabet, initial, accepting, delta, mode, int(cell))
    problems = validate(machine)
    if problems:
        raise FormatError("; ".join(problems))
    return machine
