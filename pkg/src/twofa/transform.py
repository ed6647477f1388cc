"""Conversions between machine classes and equivalence checks."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

from .core import (
    LEFT_END,
    RIGHT_END,
    AcceptMode,
    AutomatonError,
    L,
    NonDeterministicMachine,
    OneWayMachine,
    R,
    TwoWayMachine,
    W,
    accepts,
    words,
)


class StateBudgetExceeded(AutomatonError):
    pass


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    counterexample: tuple[str, ...] | None = None
    method: str = "bounded"  # bounded | exact-minimization | exact-shepherdson
    bound: int | None = None

    def __str__(self):
        how = f"bounded {self.bound}" if self.method == "bounded" else self.method
        if self.equivalent:
            return f"equivalent ({how})"
        return f"inequivalent ({how}): counterexample {''.join(self.counterexample)!r}"


# -- one-way ---------------------------------------------------------------

def _with_alphabet(m: OneWayMachine, alphabet: Sequence[str]) -> OneWayMachine:
    if tuple(alphabet) == m.alphabet:
        return m
    return OneWayMachine(m.states, tuple(alphabet), m.initial, m.accepting, m.delta)


def determinize(nfa: OneWayMachine) -> OneWayMachine:
    """Subset construction over reachable subsets, numbered in BFS order.

    The empty subset is kept when reachable, so the result is total.
    """
    start = frozenset([nfa.initial])
    index = {start: 0}
    order = [start]
    delta = {}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for a in nfa.alphabet:
            nxt = nfa.step(subset, a)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            delta[(index[subset], a)] = {index[nxt]}
    names = tuple(
        "{" + ",".join(nfa.states[q] for q in sorted(s)) + "}" for s in order
    )
    accepting = {i for i, s in enumerate(order) if s & nfa.accepting}
    return OneWayMachine(names, nfa.alphabet, 0, accepting, delta)


def complete(dfa: OneWayMachine) -> OneWayMachine:
    if any(len(v) > 1 for v in dfa.delta.values()):
        raise NonDeterministicMachine("complete() expects a deterministic machine")
    missing = [
        (q, a)
        for q in range(dfa.num_states)
        for a in dfa.alphabet
        if (q, a) not in dfa.delta
    ]
    if not missing:
        return dfa
    sink = dfa.num_states
    name = "sink"
    while name in dfa.states:
        name += "'"
    delta = dict(dfa.delta)
    for key in missing:
        delta[key] = {sink}
    for a in dfa.alphabet:
        delta[(sink, a)] = {sink}
    return OneWayMachine(dfa.states + (name,), dfa.alphabet, dfa.initial, dfa.accepting, delta)


def _next(dfa: OneWayMachine, q: int, a: str) -> int:
    (p,) = dfa.delta[(q, a)]
    return p


def renumber_bfs(dfa: OneWayMachine) -> OneWayMachine:
    """Drop unreachable states and renumber the rest in BFS order."""
    index = {dfa.initial: 0}
    order = [dfa.initial]
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        for a in dfa.alphabet:
            for p in sorted(dfa.delta.get((q, a), ())):
                if p not in index:
                    index[p] = len(order)
                    order.append(p)
                    queue.append(p)
    delta = {
        (index[q], a): {index[p] for p in targets}
        for (q, a), targets in dfa.delta.items()
        if q in index
    }
    return OneWayMachine(
        tuple(dfa.states[q] for q in order),
        dfa.alphabet,
        0,
        {index[q] for q in dfa.accepting if q in index},
        delta,
    )


def minimize(dfa: OneWayMachine) -> OneWayMachine:
    """Minimal complete DFA by Moore partition refinement."""
    dfa = renumber_bfs(complete(dfa))
    n = dfa.num_states
    block = [int(q in dfa.accepting) for q in range(n)]
    while True:
        signature = {}
        new_block = []
        for q in range(n):
            sig = (block[q],) + tuple(block[_next(dfa, q, a)] for a in dfa.alphabet)
            new_block.append(signature.setdefault(sig, len(signature)))
        if len(signature) == len(set(block)):
            break
        block = new_block
    rep = {}
    for q in range(n):
        rep.setdefault(block[q], q)
    delta = {
        (rep[block[q]], a): {rep[block[_next(dfa, q, a)]]}
        for q in rep.values()
        for a in dfa.alphabet
    }
    merged = OneWayMachine(
        dfa.states,
        dfa.alphabet,
        rep[block[dfa.initial]],
        {rep[block[q]] for q in dfa.accepting},
        delta,
    )
    return renumber_bfs(merged)


def isomorphic(a: OneWayMachine, b: OneWayMachine) -> bool:
    """Isomorphism of complete DFAs via a joint walk from the initial states."""
    if a.num_states != b.num_states or set(a.alphabet) != set(b.alphabet):
        return False
    iso = {a.initial: b.initial}
    queue = deque([a.initial])
    while queue:
        q = queue.popleft()
        if (q in a.accepting) != (iso[q] in b.accepting):
            return False
        for sym in a.alphabet:
            p, p2 = _next(a, q, sym), _next(b, iso[q], sym)
            if p in iso:
                if iso[p] != p2:
                    return False
            else:
                iso[p] = p2
                queue.append(p)
    return len(set(iso.values())) == len(iso)


def _product_counterexample(a: OneWayMachine, b: OneWayMachine):
    """Shortest word (length-lexicographic) accepted by exactly one DFA."""
    a, b = complete(a), complete(b)
    start = (a.initial, b.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        if (pair[0] in a.accepting) != (pair[1] in b.accepting):
            word = []
            while parent[pair] is not None:
                pair, sym = parent[pair]
                word.append(sym)
            return tuple(reversed(word))
        for sym in a.alphabet:
            nxt = (_next(a, pair[0], sym), _next(b, pair[1], sym))
            if nxt not in parent:
                parent[nxt] = (pair, sym)
                queue.append(nxt)
    return None


def _run_dfa(dfa: OneWayMachine, word) -> int:
    q = dfa.initial
    for a in word:
        q = _next(dfa, q, a)
    return q


def distinguishing_extension(dfa: OneWayMachine, x, y) -> tuple[str, ...] | None:
    """Shortest z (length-lexicographic) with exactly one of xz, yz accepted."""
    dfa = complete(dfa)
    p, q = _run_dfa(dfa, x), _run_dfa(dfa, y)
    if p == q:
        return None
    shifted_a = OneWayMachine(dfa.states, dfa.alphabet, p, dfa.accepting, dfa.delta)
    shifted_b = OneWayMachine(dfa.states, dfa.alphabet, q, dfa.accepting, dfa.delta)
    return _product_counterexample(shifted_a, shifted_b)


def exact_equiv_oneway(a: OneWayMachine, b: OneWayMachine) -> EquivalenceVerdict:
    alphabet = tuple(sorted(set(a.alphabet) | set(b.alphabet)))
    da = minimize(determinize(_with_alphabet(a, alphabet)))
    db = minimize(determinize(_with_alphabet(b, alphabet)))
    if isomorphic(da, db):
        return EquivalenceVerdict(True, None, "exact-minimization")
    return EquivalenceVerdict(False, _product_counterexample(da, db), "exact-minimization")


# -- two-way to one-way ----------------------------------------------------

ACC, REJ = -1, -2


def shepherdson(m: TwoWayMachine, max_states: int = 100_000) -> OneWayMachine:
    """Equivalent DFA built from right-boundary behaviour tables.

    After reading a prefix u, the DFA state is ``(forward, table)``: ``forward``
    is the state in which the first exit of the run from ``|- u`` to the right
    happens (or ACC / REJ), and ``table[q]`` is what happens when the machine
    is placed on the last cell of ``|- u`` in state q: the state in which it
    leaves to the right, or ACC / REJ.  Loops count as REJ.
    """
    if not m.is_deterministic():
        raise NonDeterministicMachine("shepherdson() needs a deterministic machine")
    if any(mv is W for targets in m.delta.values() for _, mv in targets):
        raise ValueError("wrap moves are not supported; convert to sweeping first")
    states = range(m.num_states)
    mode = m.accept_mode

    def only(q, sym):
        targets = m.moves(q, sym)
        return next(iter(targets)) if targets else None

    def exit_left_end(q):
        seen = set()
        while q not in seen:
            seen.add(q)
            if q in m.accepting and mode is not AcceptMode.RIGHT_END:
                return ACC
            t = only(q, LEFT_END)
            if t is None:
                return REJ
            q, mv = t
            if mv is R:
                return q
        return REJ

    def exit_cell(q, sym, table):
        seen = set()
        while q not in seen:
            seen.add(q)
            if q in m.accepting and mode is AcceptMode.ANYWHERE:
                return ACC
            t = only(q, sym)
            if t is None:
                return REJ
            q, mv = t
            if mv is R:
                return q
            if mv is L:
                q = table[q]
                if q < 0:
                    return q
        return REJ

    def final(forward, table):
        if forward < 0:
            return forward == ACC
        q, seen = forward, set()
        while q not in seen:
            seen.add(q)
            if q in m.accepting and mode is not AcceptMode.LEFT_END:
                return True
            t = only(q, RIGHT_END)
            if t is None:
                return False
            q, mv = t
            if mv is L:
                q = table[q]
                if q < 0:
                    return q == ACC
        return False

    table0 = tuple(exit_left_end(q) for q in states)
    fwd0 = m.initial if m.start_cell == 1 else table0[m.initial]

    def key(forward, table):
        return (forward, None) if forward < 0 else (forward, table)

    start = key(fwd0, table0)
    index = {start: 0}
    order = [start]
    delta = {}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        forward, table = cur
        for sym in m.alphabet:
            if forward < 0:
                nxt = cur
            else:
                new_table = tuple(exit_cell(q, sym, table) for q in states)
                nxt = key(new_table[forward], new_table)
            if nxt not in index:
                if len(order) >= max_states:
                    raise StateBudgetExceeded(f"more than {max_states} behaviour tables")
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            delta[(index[cur], sym)] = {index[nxt]}
    accepting = {i for i, (f, t) in enumerate(order) if final(f, t)}
    names = tuple(f"t{i}" for i in range(len(order)))
    return OneWayMachine(names, m.alphabet, 0, accepting, delta)


# -- rotating to sweeping --------------------------------------------------

def rotating_to_sweeping(m: TwoWayMachine) -> TwoWayMachine:
    """Replace each wrap by a right-to-left return sweep.

    Every state q gets a mirror that walks left to |- and then steps onto
    cell 1 in q, which is exactly where a wrap would have put the head.
    """
    if any(mv is L for targets in m.delta.values() for _, mv in targets):
        raise ValueError("machine is not rotating: it has left moves")
    k = m.num_states
    mirror = lambda q: q + k
    delta = {}
    for (q, sym), targets in m.delta.items():
        delta[(q, sym)] = {
            (mirror(p), L) if mv is W else (p, mv) for p, mv in targets
        }
    for q in range(k):
        for sym in m.alphabet:
            delta[(mirror(q), sym)] = {(mirror(q), L)}
        delta[(mirror(q), LEFT_END)] = {(q, R)}
    names = m.states + tuple(f"{name}~" for name in m.states)
    return TwoWayMachine(names, m.alphabet, m.initial, m.accepting, delta,
                         m.accept_mode, m.start_cell)


# -- unary normal form -----------------------------------------------------

@dataclass(frozen=True)
class ChrobakForm:
    """Deterministic tail, one branch state, disjoint deterministic cycles.

    ``tail[m]`` says whether length m is accepted for m < len(tail); the
    branch state accounts for length ``len(tail)``; from it one ``a`` enters
    state 0 of every cycle.  A degenerate form has no tail and no branch:
    the single cycle starts at its state 0 on the empty word.
    """
    tail: tuple[bool, ...]
    branch: bool | None
    cycles: tuple[tuple[bool, ...], ...]

    @property
    def degenerate(self) -> bool:
        return self.branch is None

    @property
    def branch_edges(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.cycles)

    @property
    def cycle_states(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def num_states(self) -> int:
        return len(self.tail) + (0 if self.degenerate else 1) + self.cycle_states

    def accepts_length(self, m: int) -> bool:
        if self.degenerate:
            (cycle,) = self.cycles
            return cycle[m % len(cycle)]
        t = len(self.tail)
        if m < t:
            return self.tail[m]
        if m == t:
            return self.branch
        return any(c[(m - t - 1) % len(c)] for c in self.cycles)

    def accepts(self, word) -> bool:
        return self.accepts_length(len(word))

    def problems(self) -> list[str]:
        out = []
        if self.degenerate and (self.tail or len(self.cycles) != 1):
            out.append("degenerate form must be a single cycle without tail")
        if any(len(c) == 0 for c in self.cycles):
            out.append("empty cycle")
        return out

    def to_nfa(self) -> OneWayMachine:
        names, delta, accepting = [], {}, set()

        def new(name, acc):
            names.append(name)
            if acc:
                accepting.add(len(names) - 1)
            return len(names) - 1

        path = [new(f"t{i}", acc) for i, acc in enumerate(self.tail)]
        if not self.degenerate:
            path.append(new("q", self.branch))
        for a, b in zip(path, path[1:]):
            delta[(a, "a")] = {b}
        for ci, cycle in enumerate(self.cycles):
            ids = [new(f"c{ci}_{j}", acc) for j, acc in enumerate(cycle)]
            for j, s in enumerate(ids):
                delta[(s, "a")] = {ids[(j + 1) % len(ids)]}
            if path:
                delta.setdefault((path[-1], "a"), set()).add(ids[0])
        return OneWayMachine(tuple(names), ("a",), 0, accepting, delta)


def _sccs(n: int, succ) -> list[list[int]]:
    """Tarjan's algorithm, iterative."""
    index, low, on_stack, stack, out = {}, {}, set(), [], []
    counter = 0
    for root in range(n):
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    low[work[-1][0]] = min(low[work[-1][0]], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    out.append(sorted(comp))
    return out


def _period(comp: list[int], succ) -> int:
    members = set(comp)
    level = {comp[0]: 0}
    queue = deque([comp[0]])
    d = 0
    while queue:
        u = queue.popleft()
        for v in succ[u]:
            if v not in members:
                continue
            if v in level:
                d = gcd(d, level[u] + 1 - level[v])
            else:
                level[v] = level[u] + 1
                queue.append(v)
    return abs(d)


def _eventually_periodic(start, step):
    """Run a deterministic sequence of hashable values until it repeats.

    Returns (values, preperiod, period).
    """
    seen = {}
    values = []
    x = start
    while x not in seen:
        seen[x] = len(values)
        values.append(x)
        x = step(x)
    pre = seen[x]
    return values, pre, len(values) - pre


def _value_at(values, pre, period, m):
    return values[m] if m < len(values) else values[pre + (m - pre) % period]


def chrobak_normal_form(nfa: OneWayMachine) -> ChrobakForm:
    """Chrobak normal form of a unary NFA.

    The accepted lengths are split by strongly connected component: for
    large m, a^m is accepted through component C iff m mod d_C is in a
    residue set R_C, with d_C the component's period.  One cycle of length
    d_C per useful component realises the periodic part; the tail covers
    every length where the periodic formula is still wrong.
    """
    if len(nfa.alphabet) != 1:
        raise ValueError("chrobak_normal_form() needs a unary alphabet")
    (sym,) = nfa.alphabet
    n = nfa.num_states
    succ = [sorted(nfa.delta.get((q, sym), ())) for q in range(n)]

    def step(subset):
        return frozenset(p for q in subset for p in succ[q])

    runs = [_eventually_periodic(frozenset([nfa.initial]), step)]
    comps = []
    for comp in _sccs(n, succ):
        if len(comp) == 1 and comp[0] not in succ[comp[0]]:
            continue
        members = frozenset(comp)

        def step_flag(subset, members=members):
            return frozenset(
                (p, flag or p in members) for q, flag in subset for p in succ[q]
            )

        start = frozenset([(nfa.initial, nfa.initial in members)])
        comps.append((_period(comp, succ), _eventually_periodic(start, step_flag)))
        runs.append(comps[-1][1])

    horizon = max(pre for _, pre, _ in runs)
    # the window must cover every residue of every component period too
    period = lcm(*(p for _, _, p in runs), *(d for d, _ in comps))

    def accepted(m):
        return bool(_value_at(*runs[0], m) & nfa.accepting)

    cycles = []
    for d, run in comps:
        residues = set()
        for m in range(horizon, horizon + period):
            if any(flag and q in nfa.accepting for q, flag in _value_at(*run, m)):
                residues.add(m % d)
        if residues:
            cycles.append((d, residues))

    def periodic(m):
        return any(m % d in res for d, res in cycles)

    last_bad = max(
        (m for m in range(horizon + period) if accepted(m) != periodic(m)),
        default=-1,
    )
    if last_bad < 0 and len(cycles) == 1:
        d, res = cycles[0]
        return ChrobakForm((), None, (tuple(j in res for j in range(d)),))
    t = max(last_bad, 0)
    return ChrobakForm(
        tuple(accepted(m) for m in range(t)),
        accepted(t),
        tuple(tuple((t + 1 + j) % d in res for j in range(d)) for d, res in cycles),
    )


def chrobak_check_bound(form: ChrobakForm) -> int:
    """Length bound after which agreement up to it implies agreement forever."""
    product = 1
    for length in sorted({len(c) for c in form.cycles}):
        product *= length
    return len(form.tail) + 1 + 2 * product


# -- equivalence -----------------------------------------------------------

def alphabet_of(machine) -> tuple[str, ...]:
    if isinstance(machine, ChrobakForm):
        return ("a",)
    return tuple(machine.alphabet)


def bounded_equiv(a, b, max_len: int) -> EquivalenceVerdict:
    """Compare acceptance on every word up to ``max_len`` (shortest, then lexicographic)."""
    alphabet = tuple(sorted(set(alphabet_of(a)) | set(alphabet_of(b))))
    for w in words(alphabet, max_len):
        if accepts(a, w) != accepts(b, w):
            return EquivalenceVerdict(False, w, "bounded", max_len)
    return EquivalenceVerdict(True, None, "bounded", max_len)


def exact_equiv(a, b) -> EquivalenceVerdict:
    """Exact check for one-way machines and two-way DFAs (via shepherdson)."""
    via = "exact-minimization"
    converted = []
    for m in (a, b):
        if isinstance(m, TwoWayMachine):
            m = shepherdson(m)
            via = "exact-shepherdson"
        converted.append(m)
    verdict = exact_equiv_oneway(*converted)
    return EquivalenceVerdict(verdict.equivalent, verdict.counterexample, via)
