"""Build witness homomorphisms for a few relators and print their stage logs.

    python scripts/witness_demo.py --order 12
"""

import argparse
from dataclasses import dataclass, field

from freenov.errors import NovikovError
from freenov.freiheit import freiheitssatz_witness
from freenov.novikov import parse

CASES = [
    ("(x2*x2) - x1", "x1"),
    ("(x2*x1)", "x1"),
    ("(x3*x3) - (x1*x2)", "(x1*x2) - (x2*x1)"),
    ("((x2*x2)*x1) + x1", "(x1*x1)"),
    ("(x2*x2) + 2 (x2*x1) - x1", "x1"),
]


@dataclass
class WitnessRun:
    order: int = 12
    max_grid: int = 4
    cases: list = field(default_factory=lambda: list(CASES))


def run(cfg):
    for f_text, g_text in cfg.cases:
        print(f"f = {f_text}    g = {g_text}")
        try:
            rep = freiheitssatz_witness(parse(f_text), parse(g_text), order=cfg.order, max_grid=cfg.max_grid)
        except NovikovError as exc:
            print(f"  failed: {exc}\n")
            continue
        for line in rep.log:
            print(f"  {line}")
        head = ", ".join(str(c) for c in rep.z_n.coeffs[:6])
        print(f"  Z_n around {rep.z_n.center}: {head}, ...")
        print(f"  theta(g) = {rep.theta_g}\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=WitnessRun.order)
    ap.add_argument("--max-grid", type=int, default=WitnessRun.max_grid)
    a = ap.parse_args()
    run(WitnessRun(a.order, a.max_grid))


if __name__ == "__main__":
    main()
