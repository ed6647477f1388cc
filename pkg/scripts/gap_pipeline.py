"""Solve random digraph reachability instances through the unary automaton A_n.

Each graph is encoded as a single integer m, A_n is run on a^m by length only,
and the answer is compared with breadth-first search.

    python scripts/gap_pipeline.py --n 4 --trials 200 --seed 1
"""
import argparse
import random
import time
from dataclasses import dataclass

from twofa.unarygap import (
    Digraph,
    bfs_gap,
    build_unary_gap_2nfa,
    decide_membership_dnc,
    encode_graph,
    solve_gap_via_unary,
)


@dataclass(frozen=True)
class PipelineConfig:
    n: int = 4
    trials: int = 200
    edge_prob: float = 0.3
    seed: int = 0
    dnc_limit: int = 2000  # also run divide-and-conquer when m is at most this


def random_graph(rng: random.Random, n: int, p: float) -> Digraph:
    return Digraph(n, {(u, v) for u in range(n) for v in range(n) if rng.random() < p})


def run(cfg: PipelineConfig) -> dict:
    rng = random.Random(cfg.seed)
    machine = build_unary_gap_2nfa(cfg.n)
    stats = {"trials": cfg.trials, "reachable": 0, "mismatches": 0, "dnc_checked": 0,
             "max_digits": 0}
    t = time.perf_counter()
    for _ in range(cfg.trials):
        g = random_graph(rng, cfg.n, cfg.edge_prob)
        m = encode_graph(g)
        stats["max_digits"] = max(stats["max_digits"], len(str(m)))
        expected = bfs_gap(g)
        got = solve_gap_via_unary(g)
        stats["reachable"] += expected
        stats["mismatches"] += got != expected
        if m <= cfg.dnc_limit:
            stats["dnc_checked"] += 1
            stats["mismatches"] += decide_membership_dnc(machine, m) != expected
    stats["seconds"] = round(time.perf_counter() - t, 3)
    stats["states"] = machine.num_states
    return stats


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=PipelineConfig.n)
    ap.add_argument("--trials", type=int, default=PipelineConfig.trials)
    ap.add_argument("--edge-prob", type=float, default=PipelineConfig.edge_prob)
    ap.add_argument("--seed", type=int, default=PipelineConfig.seed)
    args = ap.parse_args(argv)
    stats = run(PipelineConfig(args.n, args.trials, args.edge_prob, args.seed))
    for key, value in stats.items():
        print(f"{key}: {value}")
    raise SystemExit(1 if stats["mismatches"] else 0)


if __name__ == "__main__":
    main()
