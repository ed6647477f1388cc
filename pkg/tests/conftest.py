import re

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from twofa.core import (
    LEFT_END,
    RIGHT_END,
    AcceptMode,
    L,
    OneWayMachine,
    R,
    S,
    TwoWayMachine,
)

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


# regular-expression oracles, independent of membership_oracle's positional check
def i_regex(n):
    return re.compile(rf"[ab]*a[ab]{{{n - 1}}}")


def l_regex(n):
    return re.compile(rf"[ab]*a[ab]{{{n - 1}}}a[ab]*")


def regex_member(family, n, word):
    rx = i_regex(n) if family == "I" else l_regex(n)
    return rx.fullmatch("".join(word)) is not None


def unary_nfa(n, edges, accepting, initial=0):
    delta = {}
    for q, p in edges:
        delta.setdefault((q, "a"), set()).add(p)
    return OneWayMachine(tuple(f"q{i}" for i in range(n)), ("a",), initial,
                         frozenset(accepting), delta)


@st.composite
def two_way_machines(draw, deterministic=True, max_states=4):
    """Small valid two-way machines over {a, b}."""
    k = draw(st.integers(1, max_states))
    delta = {}
    for q in range(k):
        for sym in ("a", "b", LEFT_END, RIGHT_END):
            moves = {LEFT_END: [R, S], RIGHT_END: [L, S]}.get(sym, [L, R, S])
            options = st.tuples(st.integers(0, k - 1), st.sampled_from(moves))
            if deterministic:
                choice = draw(st.none() | options)
                if choice is not None:
                    delta[(q, sym)] = {choice}
            else:
                targets = draw(st.sets(options, max_size=2))
                if targets:
                    delta[(q, sym)] = targets
    accepting = draw(st.sets(st.integers(0, k - 1)))
    mode = draw(st.sampled_from(list(AcceptMode)))
    start = draw(st.sampled_from([0, 1]))
    return TwoWayMachine(tuple(f"s{i}" for i in range(k)), ("a", "b"), 0,
                         accepting, delta, mode, start)


@st.composite
def unary_nfas(draw, max_states=8):
    n = draw(st.integers(1, max_states))
    edges = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                         max_size=2 * n))
    accepting = draw(st.sets(st.integers(0, n - 1)))
    return unary_nfa(n, edges, accepting)


ab_words = st.lists(st.sampled_from("ab"), max_size=10).map(tuple)


@pytest.fixture
def tmp_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


# -- acceptance summary --------------------------------------------------------

def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, text): numbered acceptance criterion")
    config._criteria = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    k, text = mark.args
    ok = call.excinfo is None
    prev = item.config._criteria.get(k, (True, text))
    item.config._criteria[k] = (prev[0] and ok, text)


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_criteria", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        ok, text = results[k]
        terminalreporter.write_line(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}: {text}")
