"""Binary classification by regression of the signed distance to the class boundary."""

from .classifiers import (
    KnnModel,
    LinearSeparator,
    SdfModel,
    decision_offset,
    estimate_b,
    knn_predict,
    load_model,
    predict,
    save_model,
    train_if_regression,
    train_ksvm,
    train_lsvm_linear,
    train_psvm_linear,
    train_rbfn,
    train_sdf,
    train_sdf_linear,
)
from .dataset import (
    DataError,
    Dataset,
    biased_toy,
    exact_sdf_quadrant,
    gen_checkerboard,
    gen_uniform_square,
    indicator,
    load_csv,
    split_2to1,
)
from .experiments import run_benchmark, run_biased_experiment, run_corner_experiment, summarize
from .metric import gaussian_kernel, linear_gram, pearson_weights, rmsd_sigma, weighted_distance_matrix
from .solver import solve_regularized

__version__ = "0.1.0"
