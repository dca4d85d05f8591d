"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data or numerical error.
"""

import argparse
import csv
import json
import os
import sys
import tempfile

import numpy as np

from . import experiments
from .classifiers import (
    ConvergenceError,
    dumps_model,
    load_model,
    train_if_regression,
    train_sdf,
    train_sdf_linear,
)
from .dataset import (
    DataError,
    biased_toy,
    gen_blobs,
    gen_checkerboard,
    gen_uniform_square,
    dumps_csv,
    load_csv,
)

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

TRAINERS = {
    "sdf": train_sdf,
    "sdf-linear": train_sdf_linear,
    "if": train_if_regression,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _seed(text):
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned integer, got {text}")
    return v


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not v > 0 or not np.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _count(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid count {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid count {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_seed, default=42, help="64-bit unsigned RNG seed")
    common.add_argument("--gamma", type=_positive_float, default=experiments.DEFAULT_GAMMA,
                        help="regularization parameter")
    common.add_argument("--trials", type=_count, default=experiments.DEFAULT_TRIALS,
                        help="number of independent trials")
    common.add_argument("--out", default="-", help="output path, - for standard output")
    common.add_argument("--threads", type=_nonneg, default=1, help="worker threads, 0 = auto")

    data = _Parser(add_help=False)
    data.add_argument("--data", default=None, help="input CSV with a header row")
    data.add_argument("--label-column", default="label", help="name of the label column")
    data.add_argument("--positive", default="1", help="label value mapped to +1")

    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog="sdfclassify", description=__doc__.splitlines()[0], formatter_class=fmt)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[common], formatter_class=fmt, help="write a synthetic dataset as CSV")
    p.add_argument("--kind", choices=["square", "checkerboard", "biased", "blobs"], default="square")
    p.add_argument("--n", type=_count, default=1000, help="number of points")
    p.add_argument("--grid", type=_count, default=4, help="checkerboard cells per side")
    p.add_argument("--separation", type=_positive_float, default=10.0, help="blob centre distance")

    p = sub.add_parser("train", parents=[common, data], formatter_class=fmt, help="train a model from CSV")
    p.add_argument("--method", choices=sorted(TRAINERS), default="sdf")

    p = sub.add_parser("predict", parents=[common, data], formatter_class=fmt,
                       help="decision values and labels for CSV rows")
    p.add_argument("--model", default=None, help="model file written by 'train'")

    p = sub.add_parser("corner", parents=[common], formatter_class=fmt, help="corner-error study")
    p.add_argument("--points", type=_count, default=100, help="points per trial")
    p.add_argument("--sigma", type=_positive_float, default=None,
                   help="fixed Gaussian width; omitted = RMSD estimate per trial")
    p.add_argument("--csv-out", default=None, help="also write per-trial errors as CSV")

    sub.add_parser("biased", parents=[common], formatter_class=fmt, help="biased-distribution study")

    p = sub.add_parser("benchmark", parents=[common, data], formatter_class=fmt,
                       help="repeated 2:1 split benchmark")
    p.add_argument("--name", default=None, help="dataset name in the report")
    p.add_argument("--csv-out", default=None, help="also write per-trial errors as CSV")
    return parser


def write_atomic(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _progress(done, total):
    sys.stderr.write(f"\rtrial {done}/{total}")
    if done == total:
        sys.stderr.write("\n")
    sys.stderr.flush()


def _require(args, name):
    if getattr(args, name) is None:
        raise UsageError(f"{args.command}: --{name.replace('_', '-')} is required")
    return getattr(args, name)


def _read_queries(path, label_column):
    if not os.path.isfile(path):
        raise DataError(f"no such file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DataError(f"{path}: empty file, expected a header row")
    header = [h.strip() for h in rows[0]]
    keep = [j for j, h in enumerate(header) if h != label_column]
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        try:
            out.append([float(row[j]) for j in keep])
        except (ValueError, IndexError):
            raise DataError(f"{path}:{lineno}: malformed numeric row") from None
    if not out:
        raise DataError(f"{path}: zero samples")
    return np.array(out)


def _cmd_gen(args):
    if args.kind == "square":
        data = gen_uniform_square(args.n, args.seed)
    elif args.kind == "checkerboard":
        data = gen_checkerboard(args.n, args.grid, args.seed)
    elif args.kind == "blobs":
        data = gen_blobs(args.n, args.seed, separation=args.separation)
    else:
        data = biased_toy()
    write_atomic(args.out, dumps_csv(data))


def _cmd_train(args):
    data = load_csv(_require(args, "data"), args.label_column, args.positive)
    model = TRAINERS[args.method](data, args.gamma)
    write_atomic(args.out, dumps_model(model))


def _cmd_predict(args):
    model = load_model(_require(args, "model"))
    X = _read_queries(_require(args, "data"), args.label_column)
    values = model.decision_function(X)
    lines = ["index,decision,label"]
    lines += [f"{i},{v!r},{1 if v >= 0 else -1}" for i, v in enumerate(values.tolist())]
    write_atomic(args.out, "\n".join(lines) + "\n")


def _cmd_corner(args):
    report = experiments.run_corner_experiment(
        args.points, args.trials, args.seed, gamma=args.gamma, threads=args.threads, progress=_progress,
        sigma=args.sigma,
    )
    write_atomic(args.out, report.to_json())
    if args.csv_out:
        write_atomic(args.csv_out, report.to_csv())


def _cmd_biased(args):
    offsets = experiments.run_biased_experiment(gamma=args.gamma)
    doc = {"experiment": "biased", "gamma": args.gamma, "psvm_nu": 0.5, "lsvm_nu": 1.0,
           "offsets": offsets}
    write_atomic(args.out, json.dumps(doc, indent=1, sort_keys=True) + "\n")


def _cmd_benchmark(args):
    path = _require(args, "data")
    data = load_csv(path, args.label_column, args.positive)
    name = args.name or os.path.splitext(os.path.basename(path))[0]
    report = experiments.run_benchmark(
        data, n_trials=args.trials, seed=args.seed, gamma=args.gamma, name=name,
        threads=args.threads, progress=_progress,
    )
    write_atomic(args.out, report.to_json())
    if args.csv_out:
        write_atomic(args.csv_out, report.to_csv())


COMMANDS = {
    "gen": _cmd_gen,
    "train": _cmd_train,
    "predict": _cmd_predict,
    "corner": _cmd_corner,
    "biased": _cmd_biased,
    "benchmark": _cmd_benchmark,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("run with --help for usage", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except (DataError, OSError, ValueError, ArithmeticError, np.linalg.LinAlgError,
            ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
