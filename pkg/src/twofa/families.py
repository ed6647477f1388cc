"""Generators for the I_n and L_n witness machines.

``I_n``: words whose n-th symbol from the right is ``a``.
``L_n``: words with two ``a`` exactly ``n`` positions apart.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product

from .core import (
    LEFT_END,
    RIGHT_END,
    AcceptMode,
    L,
    OneWayMachine,
    R,
    S,
    TwoWayMachine,
    W,
)

AB = ("a", "b")


class Variant(enum.Enum):
    ONE_WAY_NFA = "one-way-nfa"
    ONE_WAY_DFA_MINIMAL = "one-way-dfa-minimal"
    TWO_WAY_ONE_REVERSAL = "two-way-one-reversal"
    TWO_WAY_NAIVE = "two-way-naive"
    TWO_WAY_IMPROVED = "two-way-improved"
    SWEEPING_QUADRATIC = "sweeping-quadratic"
    SWEEPING_LINEAR = "sweeping-linear"
    ROTATING = "rotating"
    OUTER_NONDET = "outer-nondet"


_I_ONLY = {Variant.TWO_WAY_ONE_REVERSAL}
_L_ONLY = {
    Variant.TWO_WAY_NAIVE,
    Variant.TWO_WAY_IMPROVED,
    Variant.SWEEPING_QUADRATIC,
    Variant.SWEEPING_LINEAR,
    Variant.OUTER_NONDET,
}

# declared state bounds; the constants are what these generators achieve
STATE_BOUNDS = {
    ("I", Variant.ONE_WAY_NFA): lambda n: n + 1,
    ("L", Variant.ONE_WAY_NFA): lambda n: n + 2,
    ("I", Variant.ONE_WAY_DFA_MINIMAL): lambda n: 2**n,
    ("L", Variant.ONE_WAY_DFA_MINIMAL): lambda n: 2**n + 1,
    ("I", Variant.TWO_WAY_ONE_REVERSAL): lambda n: n + 2,
    ("L", Variant.TWO_WAY_NAIVE): lambda n: 6 * n + 2,
    ("L", Variant.TWO_WAY_IMPROVED): lambda n: 2 * n + 1,
    ("L", Variant.SWEEPING_QUADRATIC): lambda n: 2 * n * n + n,
    ("L", Variant.SWEEPING_LINEAR): lambda n: 3 * n + 1,
    ("I", Variant.ROTATING): lambda n: 3 * n + 1,
    ("L", Variant.ROTATING): lambda n: 3 * n + 1,
    ("L", Variant.OUTER_NONDET): lambda n: 2 * n + 2,
}


class UnsupportedCombination(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    variant: Variant

    def __post_init__(self):
        if isinstance(self.variant, str):
            object.__setattr__(self, "variant", Variant(self.variant))
        if self.family not in ("I", "L"):
            raise UnsupportedCombination(f"unknown family {self.family!r}")
        if self.n < 1:
            raise UnsupportedCombination("n must be positive")
        if self.family == "L" and self.variant in _I_ONLY:
            raise UnsupportedCombination(f"{self.variant.value} is only defined for I")
        if self.family == "I" and self.variant in _L_ONLY:
            raise UnsupportedCombination(f"{self.variant.value} is only defined for L")

    @property
    def state_bound(self) -> int:
        return STATE_BOUNDS[(self.family, self.variant)](self.n)


def membership_oracle(family: str, n: int, word) -> bool:
    w = "".join(word)
    if family == "I":
        return len(w) >= n and w[len(w) - n] == "a"
    if family == "L":
        return any(w[i] == "a" and w[i + n] == "a" for i in range(len(w) - n))
    raise ValueError(f"unknown family {family!r}")


class _Builder:
    """Accumulates named states and transitions; states get indices on first use."""

    def __init__(self):
        self.names: list[str] = []
        self.index: dict = {}
        self.delta: dict = {}

    def state(self, key) -> int:
        if key not in self.index:
            self.index[key] = len(self.names)
            self.names.append(_name(key))
        return self.index[key]

    def add(self, q, symbol, p, move=None):
        target = self.state(p) if move is None else (self.state(p), move)
        self.delta.setdefault((self.state(q), symbol), set()).add(target)

    def two_way(self, initial, accepting, mode=AcceptMode.ANYWHERE, start_cell=1):
        q0 = self.state(initial)
        acc = frozenset(self.state(k) for k in accepting)
        return TwoWayMachine(tuple(self.names), AB, q0, acc, self.delta, mode, start_cell)

    def one_way(self, initial, accepting):
        q0 = self.state(initial)
        acc = frozenset(self.state(k) for k in accepting)
        return OneWayMachine(tuple(self.names), AB, q0, acc, self.delta)


def _name(key) -> str:
    if isinstance(key, str):
        return key
    head, *rest = key
    parts = []
    for x in rest:
        if isinstance(x, bool):
            parts.append("a" if x else "b")
        else:
            parts.append(str(x))
    return head + "_".join(parts) if parts else head


# -- one-way ---------------------------------------------------------------

def i_nfa(n: int) -> OneWayMachine:
    b = _Builder()
    for a in AB:
        b.add("q0", a, "q0")
    b.add("q0", "a", "q1")
    for k in range(1, n):
        for a in AB:
            b.add(f"q{k}", a, f"q{k + 1}")
    b.state(f"q{n}")
    return b.one_way("q0", [f"q{n}"])


def l_nfa(n: int) -> OneWayMachine:
    b = _Builder()
    for a in AB:
        b.add("q0", a, "q0")
    b.add("q0", "a", "q1")
    for k in range(1, n):
        for a in AB:
            b.add(f"q{k}", a, f"q{k + 1}")
    b.add(f"q{n}", "a", "qf")
    for a in AB:
        b.add("qf", a, "qf")
    return b.one_way("q0", ["qf"])


def i_dfa(n: int) -> OneWayMachine:
    """Window of the last n symbols; unread positions count as ``b``."""
    b = _Builder()
    for window in product("ab", repeat=n):
        w = "".join(window)
        for a in AB:
            b.add(w, a, w[1:] + a)
    return b.one_way("b" * n, ["a" + "".join(t) for t in product("ab", repeat=n - 1)])


def l_dfa(n: int) -> OneWayMachine:
    """The 2**n + 1 state DFA remembering the last n symbols plus a final trap."""
    b = _Builder()
    b.state("b" * n)
    for window in product("ab", repeat=n):
        w = "".join(window)
        for a in AB:
            b.add(w, a, "final" if w[0] == a == "a" else w[1:] + a)
    for a in AB:
        b.add("final", a, "final")
    return b.one_way("b" * n, ["final"])


# -- two-way ---------------------------------------------------------------

def i_one_reversal(n: int) -> TwoWayMachine:
    """Scan to -|, walk n cells back, test for ``a``."""
    b = _Builder()
    for a in AB:
        b.add("scan", a, "scan", R)
    b.add("scan", RIGHT_END, ("back", 1), L)
    for k in range(1, n):
        for a in AB:
            b.add(("back", k), a, ("back", k + 1), L)
    b.add(("back", n), "a", "acc", S)
    return b.two_way("scan", ["acc"])


def l_naive(n: int) -> TwoWayMachine:
    """Zig-zag over every pair (i, i+n); the result is only announced at -|.

    All words of one length produce the same head trajectory.
    """
    b = _Builder()
    for found in (False, True):
        start = ("start", found)
        for a in AB:
            b.add(start, a, ("fwd", 1, a == "a", found), R)
        for k in range(1, n + 1):
            for bit in (False, True):
                here = ("fwd", k, bit, found)
                b.add(here, RIGHT_END, "acc" if found else "rej", S)
                if k < n:
                    for a in AB:
                        b.add(here, a, ("fwd", k + 1, bit, found), R)
                    continue
                for a in AB:
                    hit = found or (bit and a == "a")
                    if n == 1:
                        b.add(here, a, ("start", hit), S)
                    else:
                        b.add(here, a, ("bwd", 1, hit), L)
        b.add(start, RIGHT_END, "acc" if found else "rej", S)
        for j in range(1, n - 1):
            for a in AB:
                b.add(("bwd", j, found), a, ("bwd", j + 1, found), L)
        if n > 1:
            for a in AB:
                b.add(("bwd", n - 1, found), a, ("start", found), S)
    b.state("rej")
    return b.two_way(("start", False), ["acc"])


def l_improved(n: int) -> TwoWayMachine:
    """Skip ``b`` cells, and accept at the first matching pair."""
    b = _Builder()
    b.add("start", "b", "start", R)
    b.add("start", "a", ("fwd", 1), R)
    for k in range(1, n):
        for a in AB:
            b.add(("fwd", k), a, ("fwd", k + 1), R)
    b.add(("fwd", n), "a", "acc", S)
    if n == 1:
        b.add(("fwd", 1), "b", "start", S)
    else:
        b.add(("fwd", n), "b", ("bwd", 1), L)
        for j in range(1, n - 1):
            for a in AB:
                b.add(("bwd", j), a, ("bwd", j + 1), L)
        for a in AB:
            b.add(("bwd", n - 1), a, "start", S)
    return b.two_way("start", ["acc"])


def _inspect(b: _Builder, here, a: str, c: int, last: bool, n: int, state_of):
    """One cell of a left-to-right sweep that checks cells with counter 0."""
    if c == 0:
        if last and a == "a":
            b.add(here, a, "acc", S)
            return
        b.add(here, a, state_of(1 % n, a == "a"), R)
    else:
        b.add(here, a, state_of((c + 1) % n, last), R)


def l_sweeping_quadratic(n: int) -> TwoWayMachine:
    """Sweep i (1..n) tests cells i, i+n, i+2n, ...; the sweep index is in the state.

    ``("sw", i, c, last)`` sits on cell p with c = (p - i) mod n.
    """
    b = _Builder()
    b.state(("sw", 1, 0, False))
    for i in range(1, n + 1):
        for c in range(n):
            for last in (False, True):
                here = ("sw", i, c, last)
                for a in AB:
                    _inspect(b, here, a, c, last, n, lambda c2, l2, i=i: ("sw", i, c2, l2))
                if i < n:
                    b.add(here, RIGHT_END, ("back", i), L)
    for i in range(1, n):
        for a in AB:
            b.add(("back", i), a, ("back", i), L)
        b.add(("back", i), LEFT_END, ("sw", i + 1, (-i) % n, False), R)
    return b.two_way(("sw", 1, 0, False), ["acc"])


def l_sweeping_linear(n: int) -> TwoWayMachine:
    """Same sweeps without storing i.

    Going right the state holds c = (p - i) mod n.  At -| the right-to-left
    sweep keeps decrementing the same quantity, so at |- it equals (-i) mod n
    and i can be read back off the counter.
    """
    b = _Builder()
    b.state(("sw", 0, False))
    for c in range(n):
        for last in (False, True):
            here = ("sw", c, last)
            for a in AB:
                _inspect(b, here, a, c, last, n, lambda c2, l2: ("sw", c2, l2))
            b.add(here, RIGHT_END, ("back", (c - 1) % n), L)
    for d in range(n):
        for a in AB:
            b.add(("back", d), a, ("back", (d - 1) % n), L)
        i = (-d) % n or n
        if i < n:
            b.add(("back", d), LEFT_END, ("sw", (-i) % n, False), R)
    return b.two_way(("sw", 0, False), ["acc"])


def l_rotating(n: int) -> TwoWayMachine:
    """Rotating version: each inspecting round is followed by a counting round.

    After an inspecting round for index i the counter holds (|w| + 1 - i) mod n
    at -|.  The counting round starts from its negation, so at the next -| it
    holds i - 1, independently of |w|.
    """
    b = _Builder()
    b.state(("sw", 0, False))
    for c in range(n):
        for last in (False, True):
            here = ("sw", c, last)
            for a in AB:
                _inspect(b, here, a, c, last, n, lambda c2, l2: ("sw", c2, l2))
            b.add(here, RIGHT_END, ("count", (-c) % n), W)
    for e in range(n):
        for a in AB:
            b.add(("count", e), a, ("count", (e + 1) % n), R)
        i = e + 1
        if i < n:
            b.add(("count", e), RIGHT_END, ("sw", (-i) % n, False), W)
    return b.two_way(("sw", 0, False), ["acc"])


def i_rotating(n: int) -> TwoWayMachine:
    """Round one computes (|w| + 1) mod n; round two remembers the last cell p
    with p = |w| + 1 (mod n) and decides at -|."""
    b = _Builder()
    b.state(("len", 1 % n))
    for e in range(n):
        for a in AB:
            b.add(("len", e), a, ("len", (e + 1) % n), R)
        b.add(("len", e), RIGHT_END, ("chk", (1 - e) % n, False), W)
    for f in range(n):
        for x in (False, True):
            here = ("chk", f, x)
            for a in AB:
                nx = (a == "a") if f == 0 else x
                b.add(here, a, ("chk", (f + 1) % n, nx), R)
            if x:
                b.add(here, RIGHT_END, "acc", S)
    return b.two_way(("len", 1 % n), ["acc"])


def l_outer_nondet(n: int) -> TwoWayMachine:
    """Guess the sweep index on |-, then run that single sweep."""
    b = _Builder()
    b.state("guess")
    for i in range(1, n + 1):
        b.add("guess", LEFT_END, ("sw", (1 - i) % n, False), R)
    for c in range(n):
        for last in (False, True):
            here = ("sw", c, last)
            for a in AB:
                _inspect(b, here, a, c, last, n, lambda c2, l2: ("sw", c2, l2))
    return b.two_way("guess", ["acc"], start_cell=0)


_GENERATORS = {
    ("I", Variant.ONE_WAY_NFA): i_nfa,
    ("L", Variant.ONE_WAY_NFA): l_nfa,
    ("I", Variant.ONE_WAY_DFA_MINIMAL): i_dfa,
    ("L", Variant.ONE_WAY_DFA_MINIMAL): l_dfa,
    ("I", Variant.TWO_WAY_ONE_REVERSAL): i_one_reversal,
    ("L", Variant.TWO_WAY_NAIVE): l_naive,
    ("L", Variant.TWO_WAY_IMPROVED): l_improved,
    ("L", Variant.SWEEPING_QUADRATIC): l_sweeping_quadratic,
    ("L", Variant.SWEEPING_LINEAR): l_sweeping_linear,
    ("I", Variant.ROTATING): i_rotating,
    ("L", Variant.ROTATING): l_rotating,
    ("L", Variant.OUTER_NONDET): l_outer_nondet,
}


def generate(spec: FamilySpec | tuple) -> OneWayMachine | TwoWayMachine:
    if not isinstance(spec, FamilySpec):
        spec = FamilySpec(*spec)
    return _GENERATORS[(spec.family, spec.variant)](spec.n)


def all_specs(max_n: int):
    for (family, variant) in _GENERATORS:
        for n in range(1, max_n + 1):
            yield FamilySpec(family, n, variant)
