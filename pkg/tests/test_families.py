import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import regex_member
from twofa.analysis import is_oblivious, is_outer_nondeterministic, is_sweeping, max_reversals
from twofa.core import OneWayMachine, accepts, validate, words
from twofa.families import (
    STATE_BOUNDS,
    FamilySpec,
    UnsupportedCombination,
    Variant,
    all_specs,
    generate,
    membership_oracle,
)
from twofa.transform import determinize, isomorphic, minimize


def test_i4_nfa():
    m = generate(FamilySpec("I", 4, Variant.ONE_WAY_NFA))
    assert m.num_states == 5
    assert not accepts(m, "bbbb")
    # the 4th symbol from the right decides: "abab" is in, "baab" is not
    assert accepts(m, "abab") and accepts(m, "babbb")
    assert not accepts(m, "baab") and not membership_oracle("I", 4, "baab")


def test_l3_minimal_dfa_is_hand_table_size():
    m = generate(FamilySpec("L", 3, Variant.ONE_WAY_DFA_MINIMAL))
    assert m.num_states == 9 and m.is_deterministic()


def test_l2_sweeping_quadratic():
    m = generate(FamilySpec("L", 2, Variant.SWEEPING_QUADRATIC))
    assert is_sweeping(m, 12).holds
    assert max_reversals(m, 12).max_reversals <= 3


@pytest.mark.parametrize("family, n, word, expected", [
    ("L", 2, "aba", True),
    ("L", 2, "ab", False),
    ("I", 3, "abb", True),
    ("I", 3, "ab", False),
    ("I", 1, "", False),
    ("L", 1, "aa", True),
])
def test_oracle_examples(family, n, word, expected):
    assert membership_oracle(family, n, word) is expected


@given(st.sampled_from(["I", "L"]), st.integers(1, 5),
       st.lists(st.sampled_from("ab"), max_size=14))
def test_oracle_matches_regex(family, n, word):
    assert membership_oracle(family, n, word) == regex_member(family, n, word)


@pytest.mark.parametrize("family, variant", [
    ("L", Variant.TWO_WAY_ONE_REVERSAL),
    ("I", Variant.TWO_WAY_NAIVE),
    ("I", Variant.TWO_WAY_IMPROVED),
    ("I", Variant.SWEEPING_QUADRATIC),
    ("I", Variant.SWEEPING_LINEAR),
    ("I", Variant.OUTER_NONDET),
])
def test_unsupported_combinations(family, variant):
    with pytest.raises(UnsupportedCombination):
        FamilySpec(family, 2, variant)


def test_bad_spec_values():
    with pytest.raises(UnsupportedCombination):
        FamilySpec("K", 2, Variant.ONE_WAY_NFA)
    with pytest.raises(UnsupportedCombination):
        FamilySpec("I", 0, Variant.ONE_WAY_NFA)
    assert FamilySpec("L", 2, "rotating").variant is Variant.ROTATING


def test_every_supported_combination_has_a_generator():
    combos = {(s.family, s.variant) for s in all_specs(1)}
    assert combos == set(STATE_BOUNDS)
    assert len(combos) == 12


@pytest.mark.parametrize("spec", list(all_specs(5)), ids=str)
def test_valid_and_within_bound(spec):
    m = generate(spec)
    assert validate(m) == []
    assert m.num_states <= spec.state_bound


@pytest.mark.parametrize("spec", list(all_specs(5)), ids=str)
def test_agrees_with_oracle(spec):
    m = generate(spec)
    for w in words("ab", 2 * spec.n + 4):
        assert accepts(m, w) == membership_oracle(spec.family, spec.n, w), "".join(w)


@pytest.mark.parametrize("n", range(1, 9))
def test_i_needs_2_to_the_n(n):
    assert minimize(determinize(generate(FamilySpec("I", n, Variant.ONE_WAY_NFA)))).num_states == 2**n


@pytest.mark.parametrize("n", range(1, 7))
def test_l_needs_2_to_the_n_plus_1(n):
    dfa = minimize(determinize(generate(FamilySpec("L", n, Variant.ONE_WAY_NFA))))
    assert dfa.num_states == 2**n + 1
    assert isomorphic(dfa, generate(FamilySpec("L", n, Variant.ONE_WAY_DFA_MINIMAL)))


@pytest.mark.parametrize("n", range(1, 5))
def test_outer_nondet_is_quasi_sweeping(n):
    m = generate(FamilySpec("L", n, Variant.OUTER_NONDET))
    assert is_outer_nondeterministic(m).holds
    assert is_sweeping(m, 2 * n + 4).holds


@pytest.mark.parametrize("n", range(1, 7))
def test_one_reversal(n):
    m = generate(FamilySpec("I", n, Variant.TWO_WAY_ONE_REVERSAL))
    assert max_reversals(m, min(2 * n + 4, 12)).max_reversals == 1


@pytest.mark.parametrize("n", range(1, 4))
def test_naive_oblivious(n):
    assert is_oblivious(generate(FamilySpec("L", n, Variant.TWO_WAY_NAIVE)), 8).holds


def test_state_counts_grow_as_declared():
    # linear variants stay linear, the quadratic sweeper is quadratic
    for v in (Variant.TWO_WAY_IMPROVED, Variant.SWEEPING_LINEAR, Variant.ROTATING,
              Variant.OUTER_NONDET):
        sizes = [generate(FamilySpec("L", n, v)).num_states for n in range(2, 8)]
        diffs = {b - a for a, b in zip(sizes, sizes[1:])}
        assert len(diffs) == 1, (v, sizes)
    quad = [generate(FamilySpec("L", n, Variant.SWEEPING_QUADRATIC)).num_states
            for n in range(2, 8)]
    second = {c - 2 * b + a for a, b, c in zip(quad, quad[1:], quad[2:])}
    assert len(second) == 1 and second.pop() > 0


def test_one_way_variants_are_one_way():
    for spec in all_specs(3):
        m = generate(spec)
        assert isinstance(m, OneWayMachine) == spec.variant.value.startswith("one-way")
