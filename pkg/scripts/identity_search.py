"""Random multilinear elements versus the nonvanishing-specialisation search.

Reports how far into the grid the first nonzero image appears, per degree.

    python scripts/identity_search.py --trials 200 --max-n 4 --min-exponent 2
"""

import argparse
import random
from collections import defaultdict
from dataclasses import dataclass

from freenov.evaluation import find_nonvanishing_specialization
from freenov.novikov import NovikovElement, expand_word
from freenov.tableau import multilinear_basis, word


@dataclass
class SearchExperiment:
    trials: int = 200
    max_n: int = 4
    min_exponent: int = 2
    seed: int = 0


def random_multilinear(rng, n):
    tabs = multilinear_basis(n)
    e = NovikovElement()
    for t in rng.sample(tabs, rng.randint(1, len(tabs))):
        e = e + expand_word(word(t)) * rng.randint(-5, 5)
    return e


def run(cfg):
    rng = random.Random(cfg.seed)
    tried = defaultdict(list)
    for _ in range(cfg.trials):
        n = rng.randint(1, cfg.max_n)
        e = random_multilinear(rng, n)
        if not e:
            continue
        spec = find_nonvanishing_specialization(e, cfg.min_exponent)
        tried[n].append(spec.tried)
    print(f"{'n':>3}{'cases':>8}{'mean pts':>10}{'max pts':>9}")
    for n in sorted(tried):
        pts = tried[n]
        print(f"{n:>3}{len(pts):>8}{sum(pts) / len(pts):>10.2f}{max(pts):>9}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=SearchExperiment.trials)
    ap.add_argument("--max-n", type=int, default=SearchExperiment.max_n)
    ap.add_argument("--min-exponent", type=int, default=SearchExperiment.min_exponent)
    ap.add_argument("--seed", type=int, default=SearchExperiment.seed)
    a = ap.parse_args()
    run(SearchExperiment(a.trials, a.max_n, a.min_exponent, a.seed))


if __name__ == "__main__":
    main()
