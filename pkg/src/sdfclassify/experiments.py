"""Corner-error study, biased-distribution study and the repeated-split benchmark."""

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ._rng import check_seed
from .classifiers import (
    KnnModel,
    decision_offset,
    prepare_gaussian,
    train_ksvm,
    train_lsvm_linear,
    train_psvm_linear,
    train_rbfn,
    train_sdf,
    train_sdf_linear,
    votes_to_labels,
)
from .dataset import DataError, biased_toy, exact_sdf_quadrant, gen_uniform_square, indicator, split_indices
from .metric import gaussian_kernel, rmsd_sigma, weighted_distance_matrix
from .solver import solve_regularized

DEFAULT_GAMMA = 1e-7
DEFAULT_TRIALS = 100
KNN_KS = tuple(range(1, 11))
BENCHMARK_METHODS = ("knn", "rbfn", "svm", "sdf")
MAX_RESAMPLES = 1000


@dataclass
class TrialStats:
    mean: float
    std: float
    quartiles: tuple  # (min, q1, median, q3, max)
    per_trial: list


def summarize(values):
    """Mean, sample std (ddof=1) and five-number summary with linear-interpolation quartiles."""
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("cannot summarize an empty sample")
    std = float(np.std(v, ddof=1)) if v.size > 1 else 0.0
    q = np.percentile(v, [0, 25, 50, 75, 100], method="linear")
    return TrialStats(
        mean=float(np.mean(v)),
        std=std,
        quartiles=tuple(float(x) for x in q),
        per_trial=[float(x) for x in v],
    )


def _map_trials(fn, n_trials, threads, progress=None):
    """Run ``fn`` over trial indices; results come back in trial order."""
    if threads == 1 or n_trials == 1:
        it = map(fn, range(n_trials))
        pool = None
    else:
        pool = ThreadPoolExecutor(max_workers=threads or None)
        it = pool.map(fn, range(n_trials))
    out = []
    try:
        for r in it:
            out.append(r)
            if progress is not None:
                progress(len(out), n_trials)
    finally:
        if pool is not None:
            pool.shutdown()
    return out


def _dumps(doc):
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


# -- corner study ---------------------------------------------------------------


@dataclass
class CornerReport:
    n_points: int
    n_trials: int
    sdf_error: TrialStats
    if_error: TrialStats
    seed: int
    gamma: float = DEFAULT_GAMMA
    sigma: float = None  # None: RMSD estimate per trial

    def to_dict(self):
        return {"experiment": "corner", **asdict(self)}

    def to_json(self):
        return _dumps(self.to_dict())

    def to_csv(self):
        return _trials_csv({"sdf": self.sdf_error, "if": self.if_error})


def corner_trial(n_points, seed, trial, gamma=DEFAULT_GAMMA, sigma=None):
    """One trial: returns ``(sdf_error, if_error, K)`` where errors are |B(0,0)|.

    Both right-hand sides are solved against the same kernel matrix. ``sigma``
    fixes the kernel width instead of estimating it by RMSD.
    """
    data = gen_uniform_square(n_points, _trial_seed(seed, trial))
    X = data.features
    D = weighted_distance_matrix(X, np.ones(2))
    sigma = rmsd_sigma(D) if sigma is None else float(sigma)
    K = gaussian_kernel(D, sigma)
    targets = np.column_stack([exact_sdf_quadrant(X), indicator(X)])
    alpha = solve_regularized(K, targets, gamma)
    k0 = np.exp(-np.einsum("ij,ij->i", X, X) / (2.0 * sigma * sigma))
    err = np.abs(k0 @ alpha)
    return float(err[0]), float(err[1]), K


def _trial_seed(seed, trial):
    # each trial draws from its own SeedSequence child
    return np.random.SeedSequence([check_seed(seed), 0xC0FE, int(trial)]).generate_state(1, np.uint64)[0].item()


def run_corner_experiment(n_points, n_trials, seed, gamma=DEFAULT_GAMMA, threads=1, progress=None,
                          sigma=None):
    if n_points < 2 or n_trials < 1:
        raise ValueError("need n_points >= 2 and n_trials >= 1")
    if sigma is not None and not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    seed = check_seed(seed)
    res = _map_trials(lambda t: corner_trial(n_points, seed, t, gamma, sigma)[:2], n_trials, threads, progress)
    res = np.array(res)
    return CornerReport(
        n_points=int(n_points),
        n_trials=int(n_trials),
        sdf_error=summarize(res[:, 0]),
        if_error=summarize(res[:, 1]),
        seed=seed,
        gamma=float(gamma),
        sigma=None if sigma is None else float(sigma),
    )


# -- biased distribution ----------------------------------------------------------


def run_biased_experiment(data=None, gamma=DEFAULT_GAMMA, psvm_nu=0.5, lsvm_nu=1.0):
    """Separator heights along x1 = 0 for the linear SDF and the two SVM baselines."""
    data = biased_toy() if data is None else data
    return {
        "sdf_linear": decision_offset(train_sdf_linear(data, gamma)),
        "psvm_linear": float(train_psvm_linear(data, psvm_nu).offset()),
        "lsvm_linear": float(train_lsvm_linear(data, lsvm_nu).offset()),
    }


# -- benchmark ----------------------------------------------------------------------


@dataclass
class BenchmarkReport:
    dataset_name: str
    n_trials: int
    per_method: dict
    knn_best_k: int
    knn_mean_by_k: dict
    config: dict
    resampled_splits: int = 0
    audit: dict = field(default_factory=dict)

    def to_dict(self):
        d = asdict(self)
        d["knn_mean_by_k"] = {str(k): v for k, v in self.knn_mean_by_k.items()}
        return {"experiment": "benchmark", **d}

    def to_json(self):
        return _dumps(self.to_dict())

    def to_csv(self):
        return _trials_csv(self.per_method)


@dataclass
class _Trial:
    errors: dict
    knn_errors: np.ndarray
    resamples: int
    audit: dict


def _error_rate(pred, truth):
    return float(np.mean(pred != truth))


def _benchmark_split(data, seed, trial):
    n = data.n_samples
    for attempt in range(MAX_RESAMPLES):
        tr, te = split_indices(n, seed, trial, attempt)
        if data.subset(tr).both_classes():
            return tr, te, attempt
    raise DataError(f"trial {trial}: no two-class training split after {MAX_RESAMPLES} draws")


def benchmark_trial(data, seed, trial, gamma=DEFAULT_GAMMA, ks=KNN_KS):
    tr, te, resamples = _benchmark_split(data, seed, trial)
    train, test = data.subset(tr), data.subset(te)
    fit = prepare_gaussian(train)
    models = {
        "rbfn": train_rbfn(train, gamma, fit=fit),
        "svm": train_ksvm(train, gamma, fit=fit),
        "sdf": train_sdf(train, gamma, fit=fit),
    }
    errors = {name: _error_rate(m.predict(test.features), test.labels) for name, m in models.items()}

    kmax = min(max(ks), train.n_samples)
    knn = KnnModel(train, kmax, weights=fit.weights)
    neigh = knn.neighbour_labels(test.features, kmax)
    knn_errors = np.array(
        [_error_rate(votes_to_labels(neigh, min(k, kmax)), test.labels) for k in ks]
    )

    sdf, svm, rbfn = models["sdf"], models["svm"], models["rbfn"]
    audit = {
        "same_split": all(np.array_equal(m.train_features, train.features) for m in models.values())
        and np.array_equal(knn.train.features, train.features),
        "same_kernel_sdf_svm": bool(np.array_equal(sdf.gram, svm.gram)),
        "same_sigma_svm_rbfn": svm.sigma == rbfn.sigma,
        "same_gamma_sdf_svm": sdf.gamma == svm.gamma,
    }
    return _Trial(errors, knn_errors, resamples, audit)


def run_benchmark(data, n_trials=DEFAULT_TRIALS, seed=42, gamma=DEFAULT_GAMMA, name="dataset",
                  threads=1, ks=KNN_KS, progress=None):
    """Repeated 2:1 splits; every method sees the same split, kernel and width per trial."""
    if data.n_samples < 6:
        raise DataError(f"benchmark needs at least 6 samples, got {data.n_samples}")
    if not data.both_classes():
        raise DataError("single-class dataset: benchmark needs both labels")
    seed = check_seed(seed)
    trials = _map_trials(lambda t: benchmark_trial(data, seed, t, gamma, ks), n_trials, threads, progress)

    knn_matrix = np.array([t.knn_errors for t in trials])
    knn_means = knn_matrix.mean(axis=0)
    best = int(np.argmin(knn_means))  # first minimum, i.e. smallest k on ties
    per_method = {"knn": summarize(knn_matrix[:, best])}
    for name_ in ("rbfn", "svm", "sdf"):
        per_method[name_] = summarize([t.errors[name_] for t in trials])
    audit = {
        key: sum(bool(t.audit[key]) for t in trials) for key in trials[0].audit
    }
    return BenchmarkReport(
        dataset_name=name,
        n_trials=int(n_trials),
        per_method=per_method,
        knn_best_k=int(ks[best]),
        knn_mean_by_k={int(k): float(m) for k, m in zip(ks, knn_means)},
        config={
            "gamma": float(gamma),
            "seed": seed,
            "methods": list(BENCHMARK_METHODS),
            "knn_k": [int(k) for k in ks],
            "train_fraction": "2/3",
            "svm_note": "SVM (least-squares stand-in)",
        },
        resampled_splits=int(sum(t.resamples for t in trials)),
        audit=audit,
    )


def _trials_csv(per_method):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["trial", "method", "error"])
    for method, stats in per_method.items():
        for i, v in enumerate(stats.per_trial):
            w.writerow([i, method, repr(v)])
    return buf.getvalue()
