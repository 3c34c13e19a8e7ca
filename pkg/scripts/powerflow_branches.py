"""Trace the two real branches of the one-node prescribed-power problem.

A single internal node tied to a boundary node at potential 1 through a
unit conductance has roots psi = (1 +- sqrt(1 + 4P)) / 2. The two branches
meet at the fold P = -1/4 and no real root exists below it. The script
sweeps P and compares the multi-start solver with the closed form.
"""
import argparse
from dataclasses import dataclass

import numpy as np

from kirchhoff import BlockLaplacian, Network, Partition, network_laplacian
from kirchhoff.errors import NoConvergence
from kirchhoff.powerflow import PowerSpec, pf_solve


@dataclass
class SweepConfig:
    p_min: float = -0.3
    p_max: float = 1.0
    steps: int = 27
    random_starts: int = 8
    seed: int = 0


def one_node():
    net = Network.resistive(["b", "c"], [("b", "c")], [1.0])
    return BlockLaplacian(network_laplacian(net), Partition.from_internal(net.nodes, ["c"]))


def exact_roots(P):
    disc = 1 + 4 * P
    if disc < 0:
        return []
    return sorted({(1 - np.sqrt(disc)) / 2, (1 + np.sqrt(disc)) / 2})


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    bl = one_node()
    print(f"{'P':>8} {'exact':>24} {'found':>24} {'err':>9}")
    for P in np.linspace(cfg.p_min, cfg.p_max, cfg.steps):
        exact = exact_roots(P)
        try:
            res = pf_solve(bl, PowerSpec([1.0], [P]), n_random=cfg.random_starts, seed=cfg.seed)
            found = sorted(float(s.psi_C[0]) for s in res.solutions)
        except NoConvergence:
            found = []
        err = max((abs(a - b) for a, b in zip(exact, found)), default=0.0) if len(exact) == len(found) else np.nan
        fmt = lambda xs: ", ".join(f"{x:.6f}" for x in xs) or "-"  # noqa: E731
        print(f"{P:8.4f} {fmt(exact):>24} {fmt(found):>24} {err:9.1e}")


if __name__ == "__main__":
    main()
