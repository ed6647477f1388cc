"""Numbered acceptance criteria; a PASS/FAIL line per criterion is printed in the summary."""
import math
import random
import time

import pytest

from test_transform import check_form, l3_table_dfa, unary_lengths
from test_unarygap import SAMPLE_GRAPH, all_graphs, literal_landing
from conftest import unary_nfa
from twofa.analysis import count_accepting_runs, is_sweeping, max_reversals
from twofa.core import LEFT_END, RIGHT_END, R, accepts, words
from twofa.families import FamilySpec, Variant, all_specs, generate, i_nfa, l_nfa, membership_oracle
from twofa.transform import (
    bounded_equiv,
    chrobak_check_bound,
    chrobak_normal_form,
    determinize,
    isomorphic,
    minimize,
    rotating_to_sweeping,
)
from twofa.unarygap import (
    NotQuasiSweeping,
    accepts_length,
    bfs_gap,
    build_unary_gap_2nfa,
    decide_membership_dnc,
    decode_graph,
    edge_prime,
    encode_graph,
    random_quasi_sweeping,
    solve_gap_via_unary,
    sweep_landing,
)


def report(k, ok, detail=""):
    print(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}{': ' + detail if detail else ''}")
    assert ok, detail


@pytest.mark.criterion(1, "I_n determinization needs exactly 2^n states, n=1..8, < 10 s")
def test_c01_determinization_blowup():
    t = time.perf_counter()
    sizes = [minimize(determinize(i_nfa(n))).num_states for n in range(1, 9)]
    elapsed = time.perf_counter() - t
    report(1, sizes == [2**n for n in range(1, 9)] and elapsed < 10,
           f"sizes {sizes}, {elapsed:.2f} s")


@pytest.mark.criterion(2, "L_n minimal DFA has 2^n+1 states and matches the generator, n=1..6")
def test_c02_l_lower_bound():
    ok = True
    for n in range(1, 7):
        dfa = minimize(determinize(l_nfa(n)))
        ok &= dfa.num_states == 2**n + 1
        ok &= isomorphic(dfa, generate(FamilySpec("L", n, Variant.ONE_WAY_DFA_MINIMAL)))
    report(2, ok)


@pytest.mark.criterion(3, "L_3 minimal DFA is isomorphic to the hand-transcribed 9-state table")
def test_c03_l3_table():
    m = generate(FamilySpec("L", 3, Variant.ONE_WAY_DFA_MINIMAL))
    report(3, m.num_states == 9 and isomorphic(m, l3_table_dfa()))


@pytest.mark.criterion(4, "I_n one-reversal machine: max reversals 1, <= n+10 states, n <= 6")
def test_c04_one_reversal():
    ok = True
    for n in range(1, 7):
        m = generate(FamilySpec("I", n, Variant.TWO_WAY_ONE_REVERSAL))
        ok &= m.num_states <= n + 10
        ok &= max_reversals(m, 2 * n + 4, cap=1 << 18).max_reversals == 1
    report(4, ok)


@pytest.mark.criterion(5, "L_n sweepers are sweeping (bound 2n+6) with <= 2n-1 reversals, n <= 4")
def test_c05_sweeping_bound():
    worst = {}
    for n in range(1, 5):
        for v in (Variant.SWEEPING_QUADRATIC, Variant.SWEEPING_LINEAR):
            m = generate(FamilySpec("L", n, v))
            if not is_sweeping(m, 2 * n + 6, cap=1 << 15).holds:
                report(5, False, f"{v.value} n={n} not sweeping")
            worst[(n, v.value)] = max_reversals(m, 2 * n + 6, cap=1 << 15).max_reversals
    report(5, all(r <= 2 * n - 1 for (n, _), r in worst.items()), str(worst))


@pytest.mark.criterion(6, "every variant agrees with the oracle on words <= 2n+4, n <= 4, < 60 s")
def test_c06_all_variants():
    t = time.perf_counter()
    bad = []
    for spec in all_specs(4):
        m = generate(spec)
        for w in words("ab", 2 * spec.n + 4):
            if accepts(m, w) != membership_oracle(spec.family, spec.n, w):
                bad.append((str(spec), "".join(w)))
                break
    elapsed = time.perf_counter() - t
    report(6, not bad and elapsed < 60, f"{len(bad)} mismatches, {elapsed:.1f} s")


@pytest.mark.criterion(7, "rotating_to_sweeping: <= 2*states+2, bounded-equivalent to length 12")
def test_c07_rotating_doubling():
    ok = True
    for family in ("I", "L"):
        for n in range(1, 5):
            m = generate(FamilySpec(family, n, Variant.ROTATING))
            sw = rotating_to_sweeping(m)
            ok &= sw.num_states <= 2 * m.num_states + 2
            ok &= bounded_equiv(m, sw, 12).equivalent
    report(7, ok)


def _worked_examples():
    yield unary_nfa(3, [(0, 1), (1, 2), (2, 0)], {0})
    yield unary_nfa(6, [(0, 2), (0, 3), (1, 2), (2, 1), (3, 4), (4, 5), (5, 3)], {0, 1, 5})
    yield unary_nfa(6, [(0, 1), (1, 2), (2, 1), (0, 4), (4, 5), (5, 3), (3, 4)], {0, 1, 3})


@pytest.mark.criterion(8, "Chrobak form: shape bounds and equivalence up to n^2 + 2*period")
def test_c08_chrobak():
    rng = random.Random(8)
    nfas = list(_worked_examples())
    for _ in range(20):
        n = rng.randint(1, 8)
        edges = [(q, p) for q in range(n) for p in range(n) if rng.random() < 0.25]
        nfas.append(unary_nfa(n, edges, {q for q in range(n) if rng.random() < 0.3}))
    for nfa in nfas:
        form = chrobak_normal_form(nfa)
        check_form(nfa, form)
        n = nfa.num_states
        period = math.lcm(*(len(c) for c in form.cycles))
        bound = max(n * n + 2 * period, chrobak_check_bound(form))
        assert unary_lengths(nfa, bound) == [form.accepts_length(m) for m in range(bound)]
    report(8, True, f"{len(nfas)} machines")


@pytest.mark.criterion(9, "sample graph edge primes 3, 11, 17, 37, 43 and code 892551")
def test_c09_sample_graph_numbers():
    primes = [edge_prime(u, v, 4) for u, v in sorted(SAMPLE_GRAPH.edges)]
    report(9, primes == [3, 11, 17, 37, 43] and encode_graph(SAMPLE_GRAPH) == 892551, str(primes))


@pytest.mark.criterion(10, "A_n acceptance equals BFS GAP for n in 2..4, m <= 5000, < 60 s")
def test_c10_gap_oracle():
    t = time.perf_counter()
    bad = [(n, m) for n in (2, 3, 4) for m in range(1, 5001)
           if accepts_length(build_unary_gap_2nfa(n), m) != bfs_gap(decode_graph(m, n))]
    elapsed = time.perf_counter() - t
    report(10, not bad and elapsed < 60, f"{len(bad)} mismatches, {elapsed:.1f} s")


@pytest.mark.criterion(11, "unary pipeline equals BFS on all 512 digraphs with n=3 and the sample graph")
def test_c11_pipeline():
    graphs = list(all_graphs(3))
    ok = len(graphs) == 512 and all(solve_gap_via_unary(g) == bfs_gap(g) for g in graphs)
    report(11, ok and solve_gap_via_unary(SAMPLE_GRAPH) is True)


@pytest.mark.criterion(12, "divide-and-conquer agrees with config-graph acceptance, m <= 500")
def test_c12_dnc():
    machines = [build_unary_gap_2nfa(2), build_unary_gap_2nfa(3)]
    rng = random.Random(12)
    machines += [random_quasi_sweeping(rng, rng.randint(2, 7)) for _ in range(10)]
    bad = [(i, m) for i, a in enumerate(machines) for m in range(501)
           if decide_membership_dnc(a, m) != accepts_length(a, m)]
    report(12, not bad, f"{len(machines)} machines, {len(bad)} mismatches")


@pytest.mark.criterion(13, "sweep_landing equals the literal tape for m <= 500, A_2..A_4; fast at 892551")
def test_c13_length_only():
    bad = 0
    for n in (2, 3, 4):
        a = build_unary_gap_2nfa(n)
        starts = [(q, LEFT_END if mv is R else RIGHT_END)
                  for (q, sym), targets in a.delta.items() if sym == "a" for _, mv in targets]
        starts += [(a.initial, LEFT_END)]
        for m in range(501):
            for q, side in starts:
                bad += sweep_landing(a, q, side, m) != literal_landing(a, q, side, m)
    a = build_unary_gap_2nfa(4)
    slowest = 0.0
    for q in range(a.num_states):
        for side in (LEFT_END, RIGHT_END):
            try:
                sweep_landing(a, q, side, 10)
            except NotQuasiSweeping:
                continue
            t = time.perf_counter()
            sweep_landing(a, q, side, 892551)
            slowest = max(slowest, time.perf_counter() - t)
    report(13, bad == 0 and slowest < 1e-3 and accepts_length(a, 892551),
           f"{bad} mismatches, slowest sweep {slowest * 1e6:.0f} us")


@pytest.mark.criterion(14, "I_n NFAs unambiguous on words <= 10; each L_n NFA has a doubly accepted word")
def test_c14_ambiguity():
    ok = True
    for n in range(1, 5):
        m = i_nfa(n)
        for w in words("ab", 10):
            c = count_accepting_runs(m, w)
            if c.value:
                ok &= (c.kind, c.value) == ("finite", 1)
        lm = l_nfa(n)
        ok &= any(count_accepting_runs(lm, w).value >= 2 for w in words("ab", 2 * n + 2))
    report(14, ok)
