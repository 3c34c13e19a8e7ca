"""Survey local identifiability of g -> L_S over random topologies.

Counts how often the necessary condition M <= N_B(N_B-1)/2 holds, and how
often the sampled Jacobian actually has full column rank.
"""
import argparse
from collections import Counter
from dataclasses import dataclass

import numpy as np

from kirchhoff import incidence
from kirchhoff.generators import random_connected_network, random_partition
from kirchhoff.inverse import identifiability


@dataclass
class SurveyConfig:
    trials: int = 200
    n_max: int = 8
    m_max: int = 14
    probes: int = 3
    seed: int = 0


def run(cfg: SurveyConfig) -> Counter:
    rng = np.random.default_rng(cfg.seed)
    tally = Counter()
    for k in range(cfg.trials):
        net = random_connected_network(rng, n_min=2, n_max=cfg.n_max, m_max=cfg.m_max)
        part = random_partition(rng, net, min_boundary=2)
        rep = identifiability(incidence(net), part, probes=cfg.probes, seed=k)
        tally[(rep.necessary_ok, rep.locally_injective)] += 1
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(SurveyConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = SurveyConfig(**vars(ap.parse_args()))
    tally = run(cfg)
    print(f"{'M <= dof':>10} {'injective':>10} {'count':>7}")
    for (nec, inj), n in sorted(tally.items()):
        print(f"{str(nec):>10} {str(inj):>10} {n:>7}")
    # full rank can only happen when the counting condition holds
    assert tally[(False, True)] == 0


if __name__ == "__main__":
    main()
