"""Tabulate tableau-basis dimensions against an independent monomial count.

    python scripts/basis_table.py --max-degree 6
"""

import argparse
import time
from dataclasses import dataclass
from itertools import product

from freenov.linalg import rank
from freenov.novikov import expand_word
from freenov.tableau import enumerate_tableaux, word


@dataclass
class TableConfig:
    max_degree: int = 6
    check_rank: bool = True


def weight_minus_one_count(md):
    """Count orders (k_1, ..., k_d) with sum d - 1, one per letter, up to permuting equal letters."""
    from itertools import combinations_with_replacement

    d = sum(md)
    per_gen = [list(combinations_with_replacement(range(d), m)) for m in md]
    return sum(1 for choice in product(*per_gen) if sum(map(sum, choice)) == d - 1)


def partitions_of(total):
    out = []

    def rec(rest, largest, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rest, largest), 0, -1):
            rec(rest - p, p, acc + [p])

    rec(total, total, [])
    return out


def run(cfg):
    print(f"{'multidegree':<20}{'tableaux':>10}{'monomials':>11}{'rank':>7}{'secs':>8}")
    for degree in range(1, cfg.max_degree + 1):
        for md in partitions_of(degree):
            start = time.perf_counter()
            tabs = enumerate_tableaux(md)
            r = rank([expand_word(word(t)).terms for t in tabs]) if cfg.check_rank else "-"
            secs = time.perf_counter() - start
            print(f"{str(md):<20}{len(tabs):>10}{weight_minus_one_count(md):>11}{r!s:>7}{secs:>8.2f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=TableConfig.max_degree)
    ap.add_argument("--no-rank", action="store_true", help="skip the exact rank computation")
    args = ap.parse_args()
    run(TableConfig(args.max_degree, not args.no_rank))


if __name__ == "__main__":
    main()
