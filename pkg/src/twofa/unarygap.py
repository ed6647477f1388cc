"""Unary two-way automata and graph accessibility.

Graphs on vertices ``0..n-1`` are encoded as integers: edge (i, j) is the
``(i*n + j + 1)``-th prime and a graph is the product of its edge primes.
The unary language of encodings with a path 0 -> n-1 is recognised by a
sweeping two-way NFA that only branches on the endmarkers.  Because the
machine is deterministic between endmarkers, a full traversal of ``a^m``
can be computed from ``m`` alone, which is what lets everything here run
on lengths far too large to write out.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import ceil, prod
from typing import Callable, Mapping

from .core import (
    LEFT_END,
    RIGHT_END,
    AcceptMode,
    AutomatonError,
    L,
    Move,
    R,
    S,
    TwoWayMachine,
    W,
    with_accept_mode,
)
from .primes import nth_prime

HANG = -2
ACCEPT = -1
ACCEPT_VERTEX = ("*", ACCEPT)
DEFAULT_PRIME_BUDGET = 100


class NotQuasiSweeping(AutomatonError):
    pass


class PrimeBudgetExceeded(AutomatonError):
    pass


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        if self.n < 1:
            raise ValueError("a digraph needs at least one vertex")
        for i, j in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) outside 0..{self.n - 1}")


def edge_prime(i: int, j: int, n: int) -> int:
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"edge ({i}, {j}) outside 0..{n - 1}")
    return nth_prime(i * n + j + 1)


def encode_graph(g: Digraph) -> int:
    return prod(edge_prime(i, j, g.n) for i, j in g.edges)


def decode_graph(m: int, n: int) -> Digraph:
    """K_n(m): edge (i, j) present iff its prime divides m (m = 0 gives K_n)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return Digraph(n, {(i, j) for i in range(n) for j in range(n)
                       if m % edge_prime(i, j, n) == 0})


def bfs_gap(g: Digraph) -> bool:
    """Is vertex n-1 reachable from vertex 0?"""
    succ: dict[int, list[int]] = {}
    for i, j in g.edges:
        succ.setdefault(i, []).append(j)
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        if v == g.n - 1:
            return True
        for w in succ.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


def parse_graph(text: str) -> Digraph:
    n = None
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if line[0] == "n" and len(line) == 2 and n is None:
            n = int(line[1])
        elif line[0] == "edge" and len(line) == 3:
            edges.add((int(line[1]), int(line[2])))
        else:
            raise ValueError(f"line {lineno}: expected 'n <count>' or 'edge <i> <j>'")
    if n is None:
        raise ValueError("missing 'n <count>' line")
    return Digraph(n, edges)


def serialize_graph(g: Digraph) -> str:
    return "".join([f"n {g.n}\n"] + [f"edge {i} {j}\n" for i, j in sorted(g.edges)])


# -- the automaton A_n -------------------------------------------------------

@lru_cache(maxsize=16)
def build_unary_gap_2nfa(n: int, prime_budget: int = DEFAULT_PRIME_BUDGET) -> TwoWayMachine:
    """Two-way NFA over {a} accepting a^m iff K_n(m) has a path 0 -> n-1.

    On an endmarker in a copy of vertex i it guesses j != i and crosses the
    tape counting modulo p(i, j).  Arriving with counter 0 means "now at
    vertex j"; any other counter value has no endmarker moves, so the branch
    hangs.  Reaching vertex n-1 on an endmarker accepts.
    """
    if n < 2:
        raise ValueError("build_unary_gap_2nfa needs n >= 2")
    if n * n > prime_budget:
        raise PrimeBudgetExceeded(f"K_{n} needs {n * n} primes, budget is {prime_budget}")
    names: list[str] = []
    index: dict = {}

    def state(key):
        if key not in index:
            index[key] = len(names)
            if key in ("v0", "acc"):
                names.append(key)
            else:
                i, j, d, c = key
                names.append(f"{'r' if d is R else 'l'}{i}.{j}.{c}")
        return index[key]

    delta: dict = {}

    def add(q, sym, p, move):
        delta.setdefault((state(q), sym), set()).add((state(p), move))

    def guesses(q, i, end):
        if i == n - 1:
            add(q, end, "acc", S)
            return
        d = R if end == LEFT_END else L
        for j in range(n):
            if j != i:
                add(q, end, (i, j, d, 0), d)

    state("v0")
    guesses("v0", 0, LEFT_END)
    for i in range(n - 1):
        for j in range(n):
            if j == i:
                continue
            p = edge_prime(i, j, n)
            for d in (R, L):
                for c in range(p):
                    add((i, j, d, c), "a", (i, j, d, (c + 1) % p), d)
                arrive = RIGHT_END if d is R else LEFT_END
                guesses((i, j, d, 0), j, arrive)
    state("acc")
    return TwoWayMachine(tuple(names), ("a",), index["v0"], {index["acc"]}, delta,
                         AcceptMode.ANYWHERE, 0)


# -- length-only traversal -------------------------------------------------

class Sweeper:
    """Full traversals of ``a^m`` for a machine deterministic on ``a``.

    For each entry state and direction the run visits one state per cell,
    so the sequence of per-cell states is eventually periodic; it is stored
    once and indexed by m.
    """

    def __init__(self, machine: TwoWayMachine):
        if machine.alphabet != ("a",):
            raise ValueError("sweeps need the unary alphabet ('a',)")
        self.machine = machine
        self._cell: dict = {}
        self._runs: dict = {}

    def _leave_cell(self, q: int, direction: Move) -> int:
        """State in which the head leaves an ``a`` cell entered in q, or HANG/ACCEPT."""
        key = (q, direction)
        if key in self._cell:
            return self._cell[key]
        m = self.machine
        seen = set()
        result = HANG
        while q not in seen:
            seen.add(q)
            if q in m.accepting and m.accept_mode is AcceptMode.ANYWHERE:
                result = ACCEPT
                break
            targets = m.moves(q, "a")
            if not targets:
                break
            if len(targets) > 1:
                raise NotQuasiSweeping(f"state {m.states[q]} branches on 'a'")
            ((p, move),) = targets
            if move is S:
                q = p
                continue
            if move is not direction:
                raise NotQuasiSweeping(
                    f"state {m.states[q]} reverses inside the tape")
            result = p
            break
        self._cell[key] = result
        return result

    def _run(self, q: int, direction: Move):
        key = (q, direction)
        if key not in self._runs:
            seq, pos = [q], {q: 0}
            while True:
                nxt = self._leave_cell(seq[-1], direction)
                if nxt < 0:
                    self._runs[key] = (seq, nxt, None)
                    break
                if nxt in pos:
                    self._runs[key] = (seq, None, pos[nxt])
                    break
                pos[nxt] = len(seq)
                seq.append(nxt)
        return self._runs[key]

    def landing(self, q: int, direction: Move, m: int) -> int:
        """State on reaching the far endmarker after entering ``a^m`` in q."""
        seq, sink, loop_start = self._run(q, direction)
        if m < len(seq):
            return seq[m]
        if sink is not None:
            return sink
        period = len(seq) - loop_start
        return seq[loop_start + (m - loop_start) % period]


@lru_cache(maxsize=64)
def _sweeper(machine: TwoWayMachine) -> Sweeper:
    return Sweeper(machine)


def sweep_landing(machine: TwoWayMachine, from_state: int, from_side: str, m: int) -> int:
    """Traverse a^m starting on the first cell next to ``from_side`` in ``from_state``.

    Returns the state in which the opposite endmarker is reached, HANG, or
    ACCEPT when an accepting state is met inside the tape.
    """
    direction = R if from_side == LEFT_END else L
    return _sweeper(machine).landing(from_state, direction, m)


@dataclass(frozen=True)
class EndmarkerConfigGraph:
    """Endmarker configurations reachable for one fixed m.

    Vertices are ``(side, state)``; ``ACCEPT_VERTEX`` stands for acceptance
    inside the tape.  Edge kinds: "traversal" (opposite sides), "stay"
    (same side), "wrap" (-| back to -| through a rotation).
    """
    vertices: frozenset
    edges: frozenset
    sources: frozenset
    sinks: frozenset

    def accepts(self) -> bool:
        succ: dict = {}
        for u, v, _ in self.edges:
            succ.setdefault(u, []).append(v)
        seen = set(self.sources)
        queue = deque(self.sources)
        while queue:
            u = queue.popleft()
            if u in self.sinks:
                return True
            for v in succ.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return False


def _endmarker_accepting(machine: TwoWayMachine, side: str, q: int) -> bool:
    if q not in machine.accepting:
        return False
    mode = machine.accept_mode
    if mode is AcceptMode.ANYWHERE:
        return True
    return side == (RIGHT_END if mode is AcceptMode.RIGHT_END else LEFT_END)


def _other(side: str) -> str:
    return RIGHT_END if side == LEFT_END else LEFT_END


def _vertex_after_sweep(sweeper: Sweeper, q: int, direction: Move, m: int):
    landed = sweeper.landing(q, direction, m)
    if landed == HANG:
        return None
    if landed == ACCEPT:
        return ACCEPT_VERTEX
    return (RIGHT_END if direction is R else LEFT_END, landed)


def _out_edges(machine: TwoWayMachine, sweeper: Sweeper, vertex, m: int):
    side, q = vertex
    for p, move in sorted(machine.moves(q, side), key=lambda t: (t[0], t[1].value)):
        if move is S:
            yield (side, p), "stay"
        elif move is W:
            v = _vertex_after_sweep(sweeper, p, R, m)
            if v is not None:
                yield v, "wrap"
        else:
            v = _vertex_after_sweep(sweeper, p, move, m)
            if v is not None:
                yield v, "traversal"


def _start_vertices(machine: TwoWayMachine, sweeper: Sweeper, m: int):
    if machine.start_cell == 0:
        return {(LEFT_END, machine.initial)}
    v = _vertex_after_sweep(sweeper, machine.initial, R, m)
    return set() if v is None else {v}


def endmarker_config_graph(machine: TwoWayMachine, m: int) -> EndmarkerConfigGraph:
    sweeper = _sweeper(machine)
    sources = _start_vertices(machine, sweeper, m)
    vertices = set(sources)
    edges = set()
    queue = deque(sources)
    while queue:
        u = queue.popleft()
        if u == ACCEPT_VERTEX:
            continue
        for v, kind in _out_edges(machine, sweeper, u, m):
            edges.add((u, v, kind))
            if v not in vertices:
                vertices.add(v)
                queue.append(v)
    sinks = {v for v in vertices
             if v == ACCEPT_VERTEX or _endmarker_accepting(machine, v[0], v[1])}
    return EndmarkerConfigGraph(frozenset(vertices), frozenset(edges),
                                frozenset(sources), frozenset(sinks))


def accepts_length(machine: TwoWayMachine, m: int) -> bool:
    """Membership of a^m for a quasi-sweeping unary machine, from m alone."""
    return endmarker_config_graph(machine, m).accepts()


# -- divide and conquer ------------------------------------------------------

class DivideConquerRecognizer:
    """reachable(p, q, k) on the left endmarker for one fixed m.

    ``k`` bounds the number of left-endmarker visits, both ends included.
    A path with k visits is split at its middle visit into paths with
    ceil(k/2) and floor(k/2) + 1 visits.
    """

    def __init__(self, machine: TwoWayMachine, m: int):
        self.machine = machine
        self.m = m
        self.sweeper = _sweeper(machine)
        self._step: dict[int, frozenset[int]] = {}
        self._memo: dict[tuple[int, int, int], bool] = {}
        self.universe = sorted(
            {machine.initial}
            | set(machine.accepting)
            | {q for (q, sym) in machine.delta if sym == LEFT_END}
        )

    @property
    def table_size(self) -> int:
        return len(self._memo)

    def excursion(self, p: int) -> frozenset[int]:
        """States q with (|-, p) -> (|-, q) and no left-endmarker visit in between."""
        if p not in self._step:
            self._step[p] = frozenset(self._returns(self._leave_left(p)))
        return self._step[p]

    def _leave_left(self, p):
        out = set()
        for v, _ in _out_edges(self.machine, self.sweeper, (LEFT_END, p), self.m):
            out.add(v)
        return out

    def _returns(self, first):
        """Follow right-side moves until the head is back on |-."""
        back = set()
        seen = set()
        queue = deque()
        for v in first:
            if v == ACCEPT_VERTEX:
                raise NotQuasiSweeping("acceptance inside the tape; use left-end acceptance")
            if v[0] == LEFT_END:
                back.add(v[1])
            elif v not in seen:
                seen.add(v)
                queue.append(v)
        while queue:
            u = queue.popleft()
            for v, _ in _out_edges(self.machine, self.sweeper, u, self.m):
                if v == ACCEPT_VERTEX:
                    raise NotQuasiSweeping("acceptance inside the tape; use left-end acceptance")
                if v[0] == LEFT_END:
                    back.add(v[1])
                elif v not in seen:
                    seen.add(v)
                    queue.append(v)
        return back

    def reachable(self, p: int, q: int, k: int) -> bool:
        if k < 1:
            raise ValueError("k must be >= 1")
        if p == q:
            return True
        if k == 1:
            return False
        if k == 2:
            return q in self.excursion(p)
        key = (p, q, k)
        if key not in self._memo:
            first, second = ceil(k / 2), k // 2 + 1
            self._memo[key] = any(
                self.reachable(p, r, first) and self.reachable(r, q, second)
                for r in self.universe
            )
        return self._memo[key]

    def start_states(self) -> set[int]:
        """First left-endmarker states of the run."""
        if self.machine.start_cell == 0:
            return {self.machine.initial}
        return self._returns(_start_vertices(self.machine, self.sweeper, self.m))

    def accepts(self) -> bool:
        k = self.machine.num_states
        return any(
            self.reachable(s, f, k)
            for s in sorted(self.start_states())
            for f in sorted(self.machine.accepting)
        )


def left_end_acceptance(machine: TwoWayMachine) -> TwoWayMachine:
    """Move acceptance to |- (adds at most two states)."""
    return with_accept_mode(machine, AcceptMode.LEFT_END)


def reachable_divide_conquer(machine: TwoWayMachine, p: int, q: int, k: int, m: int) -> bool:
    return DivideConquerRecognizer(machine, m).reachable(p, q, k)


def decide_membership_dnc(machine: TwoWayMachine, m: int) -> bool:
    return DivideConquerRecognizer(left_end_acceptance(machine), m).accepts()


def patch_short_lengths(decide: Callable[[int], bool], exceptions: Mapping[int, bool],
                        bound: int) -> Callable[[int], bool]:
    """Recognizer that answers from ``exceptions`` for m <= bound."""
    table = {m: v for m, v in exceptions.items() if m <= bound}

    def patched(m: int) -> bool:
        if m in table:
            return table[m]
        return decide(m)

    return patched


# -- pipeline ---------------------------------------------------------------

def solve_gap_via_unary(g: Digraph, prime_budget: int = DEFAULT_PRIME_BUDGET) -> bool:
    """GAP answered by running A_n on the unary encoding, by length only."""
    if g.n == 1:
        return True
    machine = build_unary_gap_2nfa(g.n, prime_budget)
    return accepts_length(machine, encode_graph(g))


def random_quasi_sweeping(rng: random.Random, n_states: int,
                          branching: float = 0.35) -> TwoWayMachine:
    """A random unary machine that reverses and branches only on endmarkers.

    Each state has a fixed travel direction; ``a``-moves keep it (or stay).
    """
    directions = [R] + [rng.choice((R, L)) for _ in range(n_states - 1)]
    rightward = [q for q in range(n_states) if directions[q] is R]
    leftward = [q for q in range(n_states) if directions[q] is L]
    delta: dict = {}
    for q in range(n_states):
        same = rightward if directions[q] is R else leftward
        roll = rng.random()
        if roll < 0.75:
            delta[(q, "a")] = {(rng.choice(same), directions[q])}
        elif roll < 0.85:
            stay = [p for p in same if p > q]
            if stay:
                delta[(q, "a")] = {(rng.choice(stay), S)}
        for end, inward, pool in ((LEFT_END, R, rightward), (RIGHT_END, L, leftward)):
            moves = set()
            while rng.random() < (branching if moves else 0.7):
                if pool and rng.random() < 0.8:
                    moves.add((rng.choice(pool), inward))
                else:
                    moves.add((rng.randrange(n_states), S))
                if len(moves) >= 3:
                    break
            if moves:
                delta[(q, end)] = moves
    mode = rng.choice((AcceptMode.LEFT_END, AcceptMode.RIGHT_END))
    accepting = {q for q in range(n_states) if rng.random() < 0.25} or {n_states - 1}
    return TwoWayMachine(
        tuple(f"s{q}" for q in range(n_states)),
        ("a",),
        0,
        accepting,
        delta,
        mode,
        rng.choice((0, 1)),
    )
