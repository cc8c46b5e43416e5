"""Command-line interface.

Exit codes: 0 success, 1 usage error (bad flag, family, parameter),
2 numeric or estimation failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import datasets, engine, lcg, study
from .errors import (
    CondConvError,
    DatasetLookupError,
    DomainError,
    EmptyRequestError,
    EstimationError,
    ParameterError,
    QuadratureError,
    RangeError,
)
from .families import FAMILIES, LCG, make_family
from .joint import JointSpec
from .positive import Exponential, Gamma, Lindley

SEED_ENV = "CONDCONV_SEED"
_PARAM_ALIASES = {"beta_shape": "beta"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_marginal(text: str):
    """``exp:<theta>``, ``gamma:<alpha>:<shape>`` or ``lindley:<theta>``."""
    parts = text.strip().lower().split(":")
    try:
        nums = [float(p) for p in parts[1:]]
    except ValueError:
        raise UsageError(f"bad marginal spec {text!r}: parameters must be numbers") from None
    kind = parts[0]
    if kind in ("exp", "exponential") and len(nums) == 1:
        return Exponential(nums[0])
    if kind == "gamma" and len(nums) == 2:
        return Gamma(nums[0], nums[1])
    if kind == "lindley" and len(nums) == 1:
        return Lindley(nums[0])
    raise UsageError(f"bad marginal spec {text!r}; use exp:<theta>, gamma:<alpha>:<shape> or lindley:<theta>")


def parse_params(tokens: Optional[Sequence[str]]) -> dict:
    out = {}
    for tok in tokens or ():
        for item in tok.split(","):
            if not item:
                continue
            key, sep, value = item.partition("=")
            if not sep:
                raise UsageError(f"parameter {item!r} must look like key=value")
            try:
                out[_PARAM_ALIASES.get(key.strip(), key.strip())] = float(value)
            except ValueError:
                raise UsageError(f"parameter {key!r} needs a numeric value, got {value!r}") from None
    return out


def _family(name: str, params: dict):
    if name.strip().lower() not in FAMILIES:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILIES))}")
    return make_family(name, **params)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env is None:
        return study.DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


# --- subcommands ---------------------------------------------------------------


def cmd_eval(args) -> int:
    sets = args.params or [[]]
    if len(sets) > 1:
        raise UsageError("eval takes a single --params group")
    fam = _family(args.family, parse_params(sets[0]))
    if args.what == "pdf":
        value = fam.pdf(args.u)
    elif args.what == "cdf":
        value = fam.cdf(args.u)
    elif isinstance(fam, LCG):
        value = lcg.lcg_hazard(fam.beta, args.u)
    else:
        raise UsageError("hazard is only available for the lcg family")
    _emit(f"{value!r}\n", args.out)
    return 0


def cmd_construct(args) -> int:
    mx, my = parse_marginal(args.margx), parse_marginal(args.margy)
    joint = JointSpec.independent(mx, my) if args.fgm_alpha is None else JointSpec.fgm(mx, my, args.fgm_alpha)
    u = study.interior_grid(args.grid)
    dist = engine.build(joint)
    vals = dist.pdf(u)
    if args.format == "json":
        text = json.dumps({"fz_at_one": dist.normalizer, "u": u.tolist(), "pdf": vals.tolist()}, indent=2) + "\n"
    else:
        table = study.CurveTable("engine", {}, "pdf", u, vals).to_csv(label=False)
        text = f"# fz_at_one={dist.normalizer!r}\n" + table
    _emit(text, args.out)
    return 0


def cmd_sample(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    draws = lcg.lcg_sample(args.n, args.beta, seed=seed)
    data = lcg.Dataset(f"lcg beta={args.beta!r} n={args.n} seed={seed}", tuple(draws))
    _emit(datasets.dataset_to_text(data), args.out)
    return 0


def cmd_fit(args) -> int:
    fams = [f.strip() for f in args.families.split(",") if f.strip()]
    for f in fams:
        if f.lower().replace("-", "") not in ("lcg", "toppleone"):
            raise UsageError(f"cannot fit family {f!r}; supported: lcg, toppleone")
    methods = {"exact": (lcg.ML_EXACT,), "paper": (lcg.ML_PAPER,), "both": (lcg.ML_PAPER, lcg.ML_EXACT)}[args.mle]
    data = datasets.load_dataset(args.dataset)
    report = study.fit_report(data, fams, methods)
    if args.format == "json":
        text = report.to_json() + "\n"
    else:
        text = report.to_csv()
        for d in report.discrepancies:
            text += (
                f"# reference mismatch: {d.dataset} {d.family} {d.quantity} "
                f"measured={d.measured!r} published={d.reference!r}\n"
            )
    _emit(text, args.out)
    return 0


def cmd_simulate(args) -> int:
    config = study.StudyConfig(
        sample_sizes=tuple(args.sizes),
        beta_values=tuple(args.betas),
        replications=args.reps,
        estimators=tuple(args.estimators),
        base_seed=_default_seed() if args.seed is None else args.seed,
    )
    report = study.run_bias_mse_study(config, workers=args.workers)
    _emit(report.to_json() + "\n" if args.format == "json" else report.to_csv(), args.out)
    return 0


def cmd_curves(args) -> int:
    sets = [parse_params(group) for group in (args.params or [[]])]
    for p in sets:
        _family(args.family, p)  # validate every set before evaluating any
    tables = study.density_curves(args.family, sets, args.grid, args.what)
    _emit(study.curves_to_json(tables) + "\n" if args.format == "json" else study.curves_to_csv(tables), args.out)
    return 0


def cmd_datasets(args) -> int:
    if args.action == "list":
        lines = [f"{name}\t{datasets.builtin_dataset(name).n}" for name in datasets.available()]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        if not args.name:
            raise UsageError("datasets show needs a dataset name")
        _emit(datasets.dataset_to_text(datasets.builtin_dataset(args.name)), args.out)
    return 0


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not np.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="condconv", description="Unit-interval distributions built by conditioning on X + Y = 1.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt=True):
        p.add_argument("--out", help="write output to this file instead of stdout")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("eval", help="evaluate a family's pdf, cdf or hazard at one point")
    p.add_argument("--family", required=True)
    p.add_argument("--params", nargs="+", action="append", metavar="KEY=VALUE")
    p.add_argument("--u", required=True, type=_finite_float)
    p.add_argument("--what", choices=("pdf", "cdf", "hazard"), default="pdf")
    common(p, fmt=False)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("construct", help="build a unit density from two marginals numerically")
    p.add_argument("--margx", required=True)
    p.add_argument("--margy", required=True)
    p.add_argument("--fgm-alpha", type=_finite_float)
    p.add_argument("--grid", type=_positive_int, default=9)
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sample", help="draw an LCG sample by cdf inversion")
    p.add_argument("--family", choices=("lcg",), default="lcg")
    p.add_argument("--beta", required=True, type=_finite_float)
    p.add_argument("--n", required=True, type=_positive_int)
    p.add_argument("--seed", type=int)
    common(p, fmt=False)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("fit", help="fit LCG and Topp-Leone to a dataset")
    p.add_argument("--dataset", required=True, help="SC16, P3, a file path, or - for stdin")
    p.add_argument("--families", default="lcg,toppleone")
    p.add_argument("--mle", choices=("exact", "paper", "both"), default="both")
    common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("simulate", help="Monte-Carlo bias/MSE study of the LCG estimators")
    p.add_argument("--sizes", nargs="+", type=_positive_int, default=[20, 40, 60, 80, 100])
    p.add_argument("--betas", nargs="+", type=_finite_float, default=[2.3, 7.8, 15.0])
    p.add_argument("--reps", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--estimators", nargs="+", choices=lcg.ESTIMATORS, default=list(lcg.ESTIMATORS))
    p.add_argument("--workers", type=_positive_int, default=1)
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("curves", help="tabulate pdf (or LCG cdf/hazard) on a grid")
    p.add_argument("--family", required=True)
    p.add_argument("--params", nargs="+", action="append", metavar="KEY=VALUE",
                   help="one parameter set per --params; repeat for several curves")
    p.add_argument("--grid", type=_positive_int, default=99)
    p.add_argument("--what", choices=("pdf", "cdf", "hazard"), default="pdf")
    common(p)
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("datasets", help="list or print the embedded datasets")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    common(p, fmt=False)
    p.set_defaults(func=cmd_datasets)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParameterError, DatasetLookupError) as exc:
        parser.print_usage(sys.stderr)
        print(f"condconv: error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, EmptyRequestError) as exc:
        print(f"condconv: error: {exc}", file=sys.stderr)
        return 1
    except (QuadratureError, EstimationError, RangeError, CondConvError, ArithmeticError) as exc:
        print(f"condconv: numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
