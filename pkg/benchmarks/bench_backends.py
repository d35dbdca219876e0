"""Time the compiled and pure-numpy kernels on the same searches.

    python benchmarks/bench_backends.py [--repeat N]

Each row runs the brute augmentation scan and the A-form propagation once
per backend (after one untimed warm-up call, so JIT compilation is not
counted) and checks that both backends return the same count.
"""

import argparse
import os
import time

from legendrian_aug.algebra import field_make, prime_power
from legendrian_aug.aug_count import count_augmentations
from legendrian_aug.ce_dga import build_dga
from legendrian_aug.front_model import maslov_potential, parse_front
from legendrian_aug.mcs_engine import enumerate_aform_count

WORKLOADS = [
    ("trefoil", "L1 / L3 / X2 / X2 / X2 / R1 / R1", 1, 9),
    ("trefoil_stab", "L1 / L3 / L5 / X2 / X2 / X2 / R1 / R2 / R1", 1, 7),
    ("five_twists", "L1 / L3 / X2 / X2 / X2 / X2 / X2 / R1 / R1", 1, 7),
    ("three_eyes", "L1 / L3 / L5 / X2 / X4 / X3 / X2 / X4 / R1 / R1 / R1", 0, 5),
]


def _timed(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        val = fn()
        best = min(best, time.perf_counter() - t)
    return val, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'workload':<14}{'route':<8}{'m':>3}{'q':>4}{'count':>10}{'numba s':>11}{'numpy s':>11}{'speedup':>9}")
    for name, text, m, q in WORKLOADS:
        d = parse_front(text)
        mu = maslov_potential(d)
        g = build_dga(d, mu)
        f = field_make(*prime_power(q))
        routes = {
            "brute": lambda: count_augmentations(g, m, f, cap=10**9),
            "mcs": lambda: enumerate_aform_count(d, mu, m, f, cap=10**9),
        }
        for route, fn in routes.items():
            res = {}
            for which in ("numba", "numpy"):
                os.environ["LCH_BACKEND"] = which
                res[which] = _timed(fn, args.repeat)
            (a, ta), (b, tb) = res["numba"], res["numpy"]
            assert a == b, (name, route, a, b)
            print(f"{name:<14}{route:<8}{m:>3}{q:>4}{a:>10}{ta:>11.4f}{tb:>11.4f}{tb / ta:>9.1f}")
    os.environ.pop("LCH_BACKEND", None)


if __name__ == "__main__":
    main()
