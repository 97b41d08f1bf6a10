"""Command-line front end.

Exit codes: 0 success, 1 input/config error, 2 oracle mismatch,
3 enumeration width over the limit.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path


from . import bounds
from .core import EnumerationWidthError, Instance
from .experiments import (
    ExperimentConfig,
    dump_summary,
    records_to_csv,
    run_experiment,
    summary_json,
)
from .gen import SpecError, lipschitz_constant, moment_bound, parse_spec, sample_instance
from .intgraph import omega_sweep
from .oracle import MAX_BRUTE_N, brute_force_max
from .solver import build_schedule, solve_max_variance

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_WIDTH = 0, 1, 2, 3
ORACLE_RTOL = 1e-9


class InputError(Exception):
    pass


def _reject_constant(name):
    raise ValueError(f"non-finite value {name} in instance file")


def parse_instance(text: str, fmt: str) -> Instance:
    try:
        if fmt == "json":
            data = json.loads(text, parse_constant=_reject_constant)
            if not isinstance(data, dict) or "lower" not in data or "upper" not in data:
                raise ValueError('expected an object with "lower" and "upper" arrays')
            lower = [float(v) for v in data["lower"]]
            upper = [float(v) for v in data["upper"]]
        else:
            lower, upper = [], []
            for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
                if not row or not "".join(row).strip():
                    continue
                if len(row) != 2:
                    raise ValueError(f"line {lineno}: expected 2 columns, got {len(row)}")
                try:
                    a, b = float(row[0]), float(row[1])
                except ValueError:
                    if lineno == 1 and not lower:
                        continue  # header
                    raise ValueError(f"line {lineno}: not a number")
                lower.append(a)
                upper.append(b)
        return Instance(lower, upper)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def format_instance(inst: Instance, fmt: str) -> str:
    lower = [float(v) for v in inst.lower]
    upper = [float(v) for v in inst.upper]
    if fmt == "json":
        return json.dumps({"lower": lower, "upper": upper}) + "\n"
    return "lower,upper\n" + "".join(f"{a!r},{b!r}\n" for a, b in zip(lower, upper))


def _guess_format(path: str, fmt) -> str:
    if fmt:
        return fmt
    return "csv" if str(path).lower().endswith(".csv") else "json"


def load_instance(path: str, fmt=None) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8") if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_instance(text, _guess_format(path, fmt))


def _signs_str(signs) -> str:
    return "[" + ", ".join(f"{int(s):+d}" for s in signs) + "]"


def cmd_solve(args) -> int:
    inst = load_instance(args.path, args.format)
    try:
        res = solve_max_variance(inst)
    except EnumerationWidthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"omega: {exc.width}")
        return EXIT_WIDTH
    print(f"max_variance: {res.max_variance!r}")
    print(f"argmax: {_signs_str(res.argmax_signs)}")
    print(f"omega_observed: {res.omega_observed}")
    print(f"m: {res.m}")
    print(f"vertices_examined: {res.vertices_examined}")
    print(f"wall_time_s: {res.wall_time:.6f}")
    out = {
        "max_variance": res.max_variance,
        "argmax_signs": [int(s) for s in res.argmax_signs],
        "omega_observed": res.omega_observed,
        "m": res.m,
        "vertices_examined": res.vertices_examined,
        "wall_time_s": res.wall_time,
    }
    code = EXIT_OK
    if args.oracle_check:
        if inst.n > MAX_BRUTE_N:
            print(f"error: oracle check needs n <= {MAX_BRUTE_N}", file=sys.stderr)
            return EXIT_INPUT
        ref, ref_signs = brute_force_max(inst)
        agree = abs(res.max_variance - ref) <= ORACLE_RTOL * max(1.0, abs(ref))
        print(f"oracle_max: {ref!r}")
        print(f"oracle_agreement: {'yes' if agree else 'NO'}")
        out["oracle_max"] = ref
        out["oracle_argmax_signs"] = [int(s) for s in ref_signs]
        out["oracle_agreement"] = agree
        if not agree:
            code = EXIT_MISMATCH
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(out, indent=2) + "\n", encoding="utf-8")
    return code


def _spec_from_args(tokens, seed):
    text = " ".join(tokens)
    try:
        return parse_spec(text, seed=seed)
    except SpecError as exc:
        raise InputError(str(exc)) from exc


def cmd_gen(args) -> int:
    spec = _spec_from_args(args.spec, args.seed)
    if args.n < 1:
        raise InputError("--n must be positive")
    inst = sample_instance(spec, args.n)
    fmt = _guess_format(args.out or "", args.format)
    text = format_instance(inst, fmt)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.eps is not None:
        L = lipschitz_constant(spec)
        gamma = moment_bound(spec, args.eps)
        print(f"lipschitz_L: {'unbounded' if L is None else repr(L)}", file=sys.stderr)
        print(f"moment_1+eps (eps={args.eps!r}): "
              f"{'infinite' if gamma is None else repr(gamma)}", file=sys.stderr)
    return EXIT_OK


def cmd_omega(args) -> int:
    if args.path:
        inst = load_instance(args.path, args.format)
    elif args.spec:
        if not args.n:
            raise InputError("--n is required with --spec")
        inst = sample_instance(_spec_from_args(args.spec, args.seed), args.n)
    else:
        raise InputError("give an instance path or --spec")
    print(f"omega: {omega_sweep(inst)}")
    print(f"m: {build_schedule(inst).m}")
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(float(v)) for v in text.replace(" ", "").split(",") if v]
    except ValueError as exc:
        raise InputError(f"bad integer list {text!r}") from exc
    if not vals:
        raise InputError("empty list")
    return vals


def cmd_experiment(args) -> int:
    spec = _spec_from_args(args.spec, None)
    try:
        config = ExperimentConfig(
            spec=spec,
            n_values=_int_list(args.n_list),
            trials=args.trials,
            master_seed=args.seed,
            mode=args.mode,
            omega_cap=args.omega_cap,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    records = run_experiment(config, workers=args.threads)
    text = records_to_csv(records)
    if args.out_csv:
        Path(args.out_csv).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    summary = summary_json(config, records)
    if args.out_json:
        Path(args.out_json).write_text(dump_summary(summary) + "\n", encoding="utf-8")
    for row in summary["per_n"]:
        bound = row["expected_omega_bound"]
        print(f"n={row['n']}: mean_omega={row['mean_omega']:.4f} "
              f"bound={'n/a' if bound is None else f'{bound:.4f}'} "
              f"log2_mean_2^omega={row['log2_mean_two_pow_omega']:.4f}", file=sys.stderr)
    return EXIT_OK


def cmd_bounds(args) -> int:
    n_values = _int_list(args.n_list)
    try:
        a = bounds.alpha(args.L, args.gamma, args.eps)
        rows = bounds.bounds_table(n_values, args.L, args.gamma, args.eps, c=args.c)
        for row in rows:
            row["zeta_n"] = bounds.zeta_n(row["n"], a, args.c)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        print(json.dumps(rows, indent=2))
        return EXIT_OK
    print(f"alpha = {a!r}")
    cols = ["n", "alpha", "k_n", "expected_omega_bound",
            "expected_two_omega_bound", "tail_omega_bound", "log_tail_omega_bound", "zeta_n"]
    print("\t".join(cols))
    for row in rows:
        print("\t".join(str(row[c]) if c == "n" else f"{row[c]:.6g}" for c in cols))
    return EXIT_OK


def _threads(text) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("threads must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="varbound", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="maximise the variance of an instance file")
    s.add_argument("path")
    s.add_argument("--format", choices=["json", "csv"])
    s.add_argument("--oracle-check", action="store_true",
                   help="also run the exhaustive reference (n <= 25)")
    s.add_argument("--json-out")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="sample a random instance")
    g.add_argument("spec", nargs="+", help="e.g. center=uniform:0,1 radius=exp:1 seed=42")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, help="overrides seed= in the spec")
    g.add_argument("--out")
    g.add_argument("--format", choices=["json", "csv"])
    g.add_argument("--eps", type=float,
                   help="report the Lipschitz constant and the 1+eps radius moment")
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("omega", help="clique number of the narrowed-interval graph")
    o.add_argument("path", nargs="?")
    o.add_argument("--spec", nargs="+")
    o.add_argument("--n", type=int)
    o.add_argument("--seed", type=int)
    o.add_argument("--format", choices=["json", "csv"])
    o.set_defaults(func=cmd_omega)

    e = sub.add_parser("experiment", help="Monte-Carlo run over several n")
    e.add_argument("--spec", nargs="+", required=True)
    e.add_argument("--n-list", required=True, help="comma-separated, e.g. 1000,10000")
    e.add_argument("--trials", type=int, default=100)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--mode", choices=["omega_only", "solve_and_time"], default="omega_only")
    e.add_argument("--omega-cap", type=int, default=30)
    e.add_argument("--out-csv")
    e.add_argument("--out-json")
    e.add_argument("--threads", type=_threads, default=None,
                   help="worker processes (default: $VARBOUND_THREADS or 1)")
    e.set_defaults(func=cmd_experiment)

    b = sub.add_parser("bounds", help="tabulate the closed-form bounds")
    b.add_argument("--n-list", required=True)
    b.add_argument("--L", type=float, default=1.0)
    b.add_argument("--gamma", type=float, default=2.0)
    b.add_argument("--eps", type=float, default=1.0)
    b.add_argument("--c", type=float, default=bounds.C_DEFAULT)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    try:
        sys.stdout.reconfigure(line_buffering=True)
    except AttributeError:
        pass
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
