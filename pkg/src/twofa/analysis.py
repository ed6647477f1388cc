"""Classifiers for restricted two-way models."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import (
    LEFT_END,
    RIGHT_END,
    AutomatonError,
    L,
    Move,
    OneWayMachine,
    R,
    S,
    Trajectory,
    TwoWayMachine,
    W,
    embed,
    successors,
    tape,
    trace,
    words,
)

DEFAULT_WORD_CAP = 2**20


class ExponentialBudgetExceeded(AutomatonError):
    pass


@dataclass(frozen=True)
class ReversalReport:
    max_reversals: int
    witness: tuple[str, ...]
    bound_checked: int
    per_length: tuple[int, ...] = ()


@dataclass(frozen=True)
class ClassifierVerdict:
    holds: bool
    method: str  # "structural" or "behavioral"
    bound: int | None = None
    counterexample: tuple[tuple[str, ...], str] | None = None
    detail: str = ""

    def __str__(self):
        if self.holds:
            scope = f" (checked up to length {self.bound})" if self.bound is not None else ""
            return f"holds{scope}"
        if self.counterexample:
            word, evidence = self.counterexample
            return f"fails: {evidence} on word {''.join(word)!r}"
        return f"fails: {self.detail}"


def _as_two_way(machine) -> TwoWayMachine:
    return embed(machine) if isinstance(machine, OneWayMachine) else machine


def count_reversals(t: Trajectory | Sequence[Move]) -> int:
    """Left/right direction changes; stationary moves and wraps are ignored."""
    moves = t.moves if isinstance(t, Trajectory) else t
    count, last = 0, None
    for mv in moves:
        if mv is W:
            last = None
            continue
        if mv is S:
            continue
        if last is not None and mv is not last:
            count += 1
        last = mv
    return count


def reversal_positions(t: Trajectory) -> list[int]:
    """Cells on which each reversal happens."""
    out, last = [], None
    for conf, mv in zip(t.steps, t.moves):
        if mv is W:
            last = None
            continue
        if mv is S:
            continue
        if last is not None and mv is not last:
            out.append(conf.position)
        last = mv
    return out


def _word_budget(machine, max_len: int, cap: int) -> None:
    k = len(machine.alphabet)
    total = sum(k**n for n in range(max_len + 1))
    if total > cap:
        raise ExponentialBudgetExceeded(
            f"{total} words up to length {max_len} exceeds the cap of {cap}")


def max_reversals(machine, max_len: int, cap: int = DEFAULT_WORD_CAP) -> ReversalReport:
    machine = _as_two_way(machine)
    _word_budget(machine, max_len, cap)
    best, witness = -1, ()
    per_length = []
    for n in range(max_len + 1):
        top = 0
        for w in words(machine.alphabet, n, n):
            r = count_reversals(trace(machine, w)[2])
            top = max(top, r)
            if r > best:
                best, witness = r, w
        per_length.append(top)
    return ReversalReport(best, witness, max_len, tuple(per_length))


def is_oblivious(machine, max_len: int, cap: int = DEFAULT_WORD_CAP) -> ClassifierVerdict:
    machine = _as_two_way(machine)
    _word_budget(machine, max_len, cap)
    for n in range(max_len + 1):
        reference = None
        for w in words(machine.alphabet, n, n):
            positions = trace(machine, w)[1]
            if reference is None:
                reference = (w, positions)
            elif positions != reference[1]:
                first = next(
                    (t for t, (x, y) in enumerate(zip(positions, reference[1])) if x != y),
                    min(len(positions), len(reference[1])),
                )
                evidence = (f"head trajectory differs from {''.join(reference[0])!r} "
                            f"at time {first}")
                return ClassifierVerdict(False, "behavioral", max_len, (w, evidence))
    return ClassifierVerdict(True, "behavioral", max_len)


def _deterministic_sweeping_violation(machine: TwoWayMachine, word):
    _, positions, moves, _ = trace(machine, word)
    inner = len(word) + 1
    last = None
    for pos, mv in zip(positions, moves):
        if mv is W:
            last = None
        elif mv is not S:
            if last is not None and mv is not last and 0 < pos < inner:
                return pos
            last = mv
    return None


def _sweeping_violation(machine: TwoWayMachine, word):
    """Search every computation on ``word`` for a reversal away from the endmarkers.

    Nodes are (state, position, last direction); accepting configurations
    end the computation as in the simulators.
    """
    cells = tape(word)
    n = len(word)
    start = (machine.initial, min(machine.start_cell, n + 1), None)
    seen = {start}
    queue = deque([start])
    while queue:
        q, pos, last = queue.popleft()
        if machine.accepts_at(q, pos, n):
            continue
        for p, npos, mv in successors(machine, cells, q, pos):
            if mv in (L, R) and last is not None and mv is not last and 0 < pos < n + 1:
                return pos
            nxt_last = None if mv is W else (last if mv is S else mv)
            node = (p, npos, nxt_last)
            if node not in seen:
                seen.add(node)
                queue.append(node)
    return None


def is_sweeping(machine, max_len: int, cap: int = DEFAULT_WORD_CAP) -> ClassifierVerdict:
    """Reversals only on endmarkers, over every computation on words up to max_len."""
    machine = _as_two_way(machine)
    _word_budget(machine, max_len, cap)
    check = (_deterministic_sweeping_violation if machine.is_deterministic()
             else _sweeping_violation)
    for w in words(machine.alphabet, max_len):
        pos = check(machine, w)
        if pos is not None:
            return ClassifierVerdict(False, "behavioral", max_len,
                                     (w, f"reversal at position {pos}"))
    return ClassifierVerdict(True, "behavioral", max_len)


def is_rotating(machine) -> ClassifierVerdict:
    machine = _as_two_way(machine)
    for (q, sym), targets in sorted(machine.delta.items()):
        for p, mv in targets:
            if mv is L:
                return ClassifierVerdict(
                    False, "structural",
                    detail=f"left move on {sym} from state {machine.states[q]}")
            if mv is W and sym != RIGHT_END:
                return ClassifierVerdict(
                    False, "structural",
                    detail=f"wrap on {sym} from state {machine.states[q]}")
    return ClassifierVerdict(True, "structural")


def is_outer_nondeterministic(machine) -> ClassifierVerdict:
    machine = _as_two_way(machine)
    for (q, sym), targets in sorted(machine.delta.items()):
        if sym not in (LEFT_END, RIGHT_END) and len(targets) > 1:
            return ClassifierVerdict(
                False, "structural",
                detail=f"{len(targets)} choices on {sym} in state {machine.states[q]}")
    return ClassifierVerdict(True, "structural")


@dataclass(frozen=True)
class RunCount:
    kind: str  # "finite", "at-least", "infinite"
    value: int | None = None

    @classmethod
    def finite(cls, n: int) -> "RunCount":
        return cls("finite", n)

    @classmethod
    def at_least(cls, n: int) -> "RunCount":
        return cls("at-least", n)

    @classmethod
    def infinite(cls) -> "RunCount":
        return cls("infinite")

    def __str__(self):
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "at-least":
            return f">= {self.value}"
        return "infinite"


def count_accepting_runs(machine, word, cap: int = 1_000_000) -> RunCount:
    """Number of distinct accepting computations.

    A computation ends at its first accepting configuration.  If a cycle of
    configurations lies on some path from the start to acceptance the count
    is infinite.
    """
    machine = _as_two_way(machine)
    cells = tape(word)
    n = len(word)
    start = (machine.initial, min(machine.start_cell, n + 1))

    succ: dict = {}
    order = [start]
    seen = {start}
    for node in order:
        q, pos = node
        if machine.accepts_at(q, pos, n):
            succ[node] = []
            continue
        succ[node] = sorted({(p, npos) for p, npos, _ in successors(machine, cells, q, pos)})
        for nxt in succ[node]:
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)

    pred: dict = {v: [] for v in order}
    for u, vs in succ.items():
        for v in vs:
            pred[v].append(u)
    useful = {v for v in order if machine.accepts_at(v[0], v[1], n)}
    queue = deque(useful)
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            if u not in useful:
                useful.add(u)
                queue.append(u)
    if start not in useful:
        return RunCount.finite(0)

    # topological order of the useful part; a leftover node means a cycle
    indeg = {v: 0 for v in useful}
    for u in useful:
        for v in succ[u]:
            if v in useful:
                indeg[v] += 1
    ready = deque(v for v in useful if indeg[v] == 0)
    topo = []
    while ready:
        u = ready.popleft()
        topo.append(u)
        for v in succ[u]:
            if v in useful:
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
    if len(topo) != len(useful):
        return RunCount.infinite()

    paths = {v: 0 for v in useful}
    paths[start] = 1
    total = 0
    for u in topo:
        if machine.accepts_at(u[0], u[1], n):
            total += paths[u]
            continue
        for v in succ[u]:
            if v in useful:
                paths[v] = min(paths[v] + paths[u], cap)
    if total >= cap:
        return RunCount.at_least(cap)
    return RunCount.finite(total)
