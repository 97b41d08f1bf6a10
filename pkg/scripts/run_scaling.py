#!/usr/bin/env python3
"""Solver wall time against n, with a log-log slope fit."""
import argparse
from pathlib import Path

from varbound.experiments import (ExperimentConfig, aggregate, dump_summary, records_to_csv,
                                  run_experiment, scaling_fit, summary_json)
from varbound.gen import parse_spec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--spec", default="center=uniform:0,1 radius=exp:1")
    ap.add_argument("--n-list", default="10000,100000,1000000")
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=20261018)
    ap.add_argument("--omega-cap", type=int, default=30)
    ap.add_argument("--out-dir", default="results/scaling")
    args = ap.parse_args()

    cfg = ExperimentConfig(parse_spec(args.spec), [int(v) for v in args.n_list.split(",")],
                           args.trials, master_seed=args.seed, mode="solve_and_time",
                           omega_cap=args.omega_cap)
    # one worker: parallel timing runs would contend for cores
    records = run_experiment(cfg, workers=1)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "records.csv").write_text(records_to_csv(records))
    (out / "summary.json").write_text(dump_summary(summary_json(cfg, records)) + "\n")

    summaries = [aggregate(records, n) for n in cfg.n_values]
    for s in summaries:
        t = "n/a" if s.mean_solve_time is None else f"{s.mean_solve_time * 1e3:.2f} ms"
        print(f"n={s.n:>8}  solved={s.solved:>3}/{s.trials}  mean time {t}")
    try:
        print(f"fitted exponent: {scaling_fit(summaries):.3f}")
    except ValueError as exc:
        print(f"no fit: {exc}")


if __name__ == "__main__":
    main()
