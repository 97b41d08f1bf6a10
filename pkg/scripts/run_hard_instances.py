#!/usr/bin/env python3
"""omega on the two hard families: a non-Lipschitz power-law center density,
and radii that grow as a power of the center.  Nothing is solved."""
import argparse

from varbound.experiments import ExperimentConfig, aggregate, run_experiment
from varbound.gen import parse_spec

FAMILIES = {
    "power": ("center=power:{eps} radius=const:1", lambda n, e: n ** (1 - e)),
    "dependent": ("center=uniform:0,1 radius=dependent_power:{eps}", lambda n, e: n ** (1 - 1 / (2 - e))),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", choices=sorted(FAMILIES), action="append")
    ap.add_argument("--eps", type=float, action="append")
    ap.add_argument("--n-list", default="1000,10000,100000")
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=20261018)
    args = ap.parse_args()

    families = args.family or sorted(FAMILIES)
    eps_values = args.eps or [0.2, 0.5]
    n_values = [int(v) for v in args.n_list.split(",")]
    for fam in families:
        template, rate = FAMILIES[fam]
        for eps in eps_values:
            spec = parse_spec(template.format(eps=eps))
            records = run_experiment(ExperimentConfig(spec, n_values, args.trials, master_seed=args.seed))
            for n in n_values:
                s = aggregate(records, n)
                print(f"{fam:>9} eps={eps:<4} n={n:>7}  mean omega={s.mean_omega:8.2f}  "
                      f"growth rate reference={rate(n, eps):8.2f}")


if __name__ == "__main__":
    main()
