"""State counts for every family construction, written as CSV.

    python scripts/state_counts.py --max-n 5 --out state_counts.csv
"""
import argparse
import sys
from dataclasses import dataclass

from twofa.cli import report_state_counts
from twofa.families import all_specs


@dataclass(frozen=True)
class StateCountConfig:
    max_n: int = 5
    max_len: int | None = None  # reversal bound; None means min(2n+4, 12)
    out: str | None = None


def run(cfg: StateCountConfig) -> str:
    specs = sorted(all_specs(cfg.max_n), key=lambda s: (s.family, s.variant.value, s.n))
    return report_state_counts(specs, cfg.max_len).to_csv()


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=StateCountConfig.max_n)
    ap.add_argument("--max-len", type=int, default=None)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)
    cfg = StateCountConfig(args.max_n, args.max_len, args.out)
    text = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
