"""Chrobak normal form on random unary NFAs: tail and cycle sizes against n.

    python scripts/chrobak_random.py --trials 500 --max-states 8
"""
import argparse
import random
from collections import Counter
from dataclasses import dataclass

from twofa.core import OneWayMachine
from twofa.transform import chrobak_check_bound, chrobak_normal_form


@dataclass(frozen=True)
class ChrobakConfig:
    trials: int = 500
    max_states: int = 8
    edge_prob: float = 0.25
    accept_prob: float = 0.3
    seed: int = 0


def random_unary_nfa(rng: random.Random, n: int, cfg: ChrobakConfig) -> OneWayMachine:
    delta = {}
    for q in range(n):
        targets = {p for p in range(n) if rng.random() < cfg.edge_prob}
        if targets:
            delta[(q, "a")] = targets
    accepting = {q for q in range(n) if rng.random() < cfg.accept_prob}
    return OneWayMachine(tuple(f"q{i}" for i in range(n)), ("a",), 0, accepting, delta)


def agrees(nfa: OneWayMachine, form, bound: int) -> bool:
    cur = frozenset([nfa.initial])
    for m in range(bound):
        if bool(cur & nfa.accepting) != form.accepts_length(m):
            return False
        cur = nfa.step(cur, "a")
    return True


def run(cfg: ChrobakConfig) -> dict:
    rng = random.Random(cfg.seed)
    worst_tail = Counter()
    worst_cycles = Counter()
    failures = 0
    for _ in range(cfg.trials):
        n = rng.randint(1, cfg.max_states)
        nfa = random_unary_nfa(rng, n, cfg)
        form = chrobak_normal_form(nfa)
        worst_tail[n] = max(worst_tail[n], len(form.tail))
        worst_cycles[n] = max(worst_cycles[n], form.cycle_states)
        bound = max(chrobak_check_bound(form), n * n + 1)
        ok = len(form.tail) <= n * n and form.cycle_states <= n and agrees(nfa, form, bound)
        failures += not ok
    return {"failures": failures, "tail": dict(sorted(worst_tail.items())),
            "cycles": dict(sorted(worst_cycles.items()))}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=ChrobakConfig.trials)
    ap.add_argument("--max-states", type=int, default=ChrobakConfig.max_states)
    ap.add_argument("--seed", type=int, default=ChrobakConfig.seed)
    args = ap.parse_args(argv)
    res = run(ChrobakConfig(trials=args.trials, max_states=args.max_states, seed=args.seed))
    print("n  max_tail  n^2  max_cycle_states")
    for n in res["tail"]:
        print(f"{n:<2} {res['tail'][n]:>8} {n * n:>4} {res['cycles'][n]:>17}")
    print(f"failures: {res['failures']}")
    raise SystemExit(1 if res["failures"] else 0)


if __name__ == "__main__":
    main()
