# src/cli/ranktest_cli.py
"""
ranktest command line.

Subcommands
-----------
    ranktest generate L1minus --epsilon 0.1 --n 200 --m 200 --seed 7 --out data/
    ranktest test a.csv b.csv --ranker linear --phi mww --alpha 0.05 --seed 7
    ranktest tabulate 2 2 mww exact
    ranktest experiment configs/desk.toml --out out/

Exit codes: 0 success, 2 invalid arguments/config/input files, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

from src.core.baselines import energy_test, fr_test, mmd_test, tukey_depth_test
from src.core.errors import ConfigError, InvalidInput, RankTestError, error_guard
from src.core.rankstats import ScoreGenerator, null_distribution, write_null_table
from src.core.runtime_flags import log_level
from src.core.twostage import ranking_test, roc_null_threshold, roc_space_test, train_size
from src.core.utils.serialize import to_primitive
from src.harness import ALL_FORMATS, ConfigLoader, emit_outputs, run_experiment
from src.schemas.models import DepthConfig, ModelSpec, PermutationScheme, RankerSpec, SplitConfig, TestReport, TrainConfig
from src.synthdata import generate, read_sample, write_sample

logger = logging.getLogger("ranktest")

TEST_METHODS = ("rank", "roc", "mmd", "energy", "fr", "tukey")
RANKERS = ("linear", "mlp", "boosted", "wphi")


def _formats(raw: str) -> list[str]:
    items = [s.strip() for s in raw.split(",") if s.strip()]
    bad = [s for s in items if s not in ALL_FORMATS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown output format(s) {bad} (choose from {list(ALL_FORMATS)})")
    return items


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ranktest", description="Ranking-based two-sample rank tests.")
    p.add_argument("--verbose", "-v", action="store_true", help="Debug logging (default level from RANKTEST_LOG_LEVEL).")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="Draw a synthetic two-sample problem to CSV files.")
    g.add_argument("model", help="Model variant: L1minus, L1plus, S1, S2, T1, T2, T3.")
    g.add_argument("--epsilon", type=float, default=0.0, help="Discrepancy ε (0 gives H0).")
    g.add_argument("--d", type=int, default=None, help="Dimension (variant default when omitted).")
    g.add_argument("--n", type=int, default=100, help="Size of X.")
    g.add_argument("--m", type=int, default=100, help="Size of Y.")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=".", help="Directory receiving X.csv and Y.csv (plus .meta.json sidecars).")
    g.add_argument("--no-header", action="store_true", help="Omit the x1..xd header row.")

    t = sub.add_parser("test", help="Test two CSV samples; prints the JSON TestReport.")
    t.add_argument("x_csv", help="Positive sample X (rows = observations).")
    t.add_argument("y_csv", help="Negative sample Y.")
    t.add_argument("--method", choices=TEST_METHODS, default="rank", help="Ranking test, ROC-space test, or a baseline.")
    t.add_argument("--ranker", choices=RANKERS, default="linear", help="Trainer of the scoring function.")
    t.add_argument("--phi", default="mww", help="Score generator: mww, rtb:<u0>, power:<q>.")
    t.add_argument("--alpha", type=float, default=0.05)
    t.add_argument("--seed", type=int, default=0, help="Seed for the split, the trainer and permutations.")
    t.add_argument("--split-fraction", type=float, default=0.8, help="Training share of each sample.")
    t.add_argument("--b-perm", type=int, default=1000, help="Permutations for mmd/energy/fr.")
    t.add_argument("--out", default=None, help="Write the report to this file instead of stdout.")

    tab = sub.add_parser("tabulate", help="Null distribution of the centered statistic.")
    tab.add_argument("n", type=int)
    tab.add_argument("m", type=int)
    tab.add_argument("phi", help="Score generator: mww, rtb:<u0>, power:<q>.")
    tab.add_argument("method", choices=("auto", "exact", "montecarlo"))
    tab.add_argument("--draws", type=int, default=200_000)
    tab.add_argument("--seed", type=int, default=0)
    tab.add_argument("--out", default=None, help="Write the table file here; prints the support as JSON otherwise.")

    e = sub.add_parser("experiment", help="Run a Monte-Carlo power study from a .toml/.json config.")
    e.add_argument("config", help="Experiment config file.")
    e.add_argument("--out", default=None, help="Output directory (overrides the config and RANKTEST_OUT).")
    e.add_argument("--formats", type=_formats, default=list(ALL_FORMATS), help="Comma-separated subset of csv,json,svg.")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")
        print(f"Wrote {path}")
    else:
        print(text)


def _cmd_generate(args: argparse.Namespace) -> int:
    try:
        spec = ModelSpec(variant=args.model, d=args.d, epsilon=args.epsilon)
    except ValueError as e:
        raise ConfigError(f"invalid model: {e}") from e
    x, y = generate(spec, args.n, args.m, args.seed)
    out = Path(args.out)
    for sample in (x, y):
        path = write_sample(sample, out / f"{sample.role}.csv", header=not args.no_header)
        print(f"Wrote {path}")
    return 0


def _read_input(path: str) -> Any:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"input file not found: {p}")
    return read_sample(p)


def _cmd_test(args: argparse.Namespace) -> int:
    x = _read_input(args.x_csv)
    y = _read_input(args.y_csv)
    phi = ScoreGenerator.parse(args.phi)
    try:
        split = SplitConfig(train_fraction=args.split_fraction, seed=args.seed)
        ranker = RankerSpec(name=args.ranker, train=TrainConfig(seed=args.seed))
        scheme = PermutationScheme(b_perm=args.b_perm, seed=args.seed)
    except ValueError as e:
        raise ConfigError(f"invalid test options: {e}") from e

    report: TestReport
    if args.method == "rank":
        report = ranking_test(x, y, ranker, phi, args.alpha, split)
    elif args.method == "roc":
        n_test = x.shape[0] - train_size(x.shape[0], split.train_fraction)
        m_test = y.shape[0] - train_size(y.shape[0], split.train_fraction)
        region = roc_null_threshold(n_test, m_test, args.alpha, seed=args.seed)
        report = roc_space_test(x, y, ranker, args.alpha, split, region)
    elif args.method == "mmd":
        report = mmd_test(x, y, args.alpha, scheme)
    elif args.method == "energy":
        report = energy_test(x, y, args.alpha, scheme)
    elif args.method == "fr":
        report = fr_test(x, y, args.alpha, scheme)
    else:
        report = tukey_depth_test(x, y, phi, args.alpha, DepthConfig(seed=args.seed))
    _emit(report.to_json(), args.out)
    return 0


def _cmd_tabulate(args: argparse.Namespace) -> int:
    phi = ScoreGenerator.parse(args.phi)
    table = null_distribution(args.n, args.m, phi, args.method, seed=args.seed, draws=args.draws)
    if args.out:
        path = write_null_table(table, Path(args.out))
        print(f"Wrote {path}")
        return 0
    payload = {
        "n": table.n,
        "m": table.m,
        "phi": phi.descriptor,
        "method": table.method,
        "draws": table.draws,
        "seed": table.seed,
        "support": [{"value": v, "probability": p} for v, p in table.support],
    }
    print(json.dumps(to_primitive(payload), indent=2))
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    loader = ConfigLoader()
    cfg = loader.load(Path(args.config))
    if args.out:
        cfg = cfg.model_copy(update={"out_dir": args.out})
    report = run_experiment(cfg)
    for path in emit_outputs(report, Path(cfg.out_dir), args.formats):
        print(f"Wrote {path}")
    if report.partial:
        print(f"warning: partial report ({len(report.warnings)} cell(s) with failures)", file=sys.stderr)
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "test": _cmd_test,
    "tabulate": _cmd_tabulate,
    "experiment": _cmd_experiment,
}


def main(argv: list[str] | None = None) -> int:
    load_dotenv(override=False)
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else log_level(), format="%(levelname)s %(name)s: %(message)s")
    try:
        # unreadable files surface as ConfigError, numerical failures as ModelError
        with error_guard():
            return _COMMANDS[args.command](args)
    except (ConfigError, InvalidInput) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except RankTestError as e:
        logger.debug("runtime failure", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
