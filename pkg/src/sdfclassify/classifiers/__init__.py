from .knn import KnnModel, knn_predict, votes_to_labels
from .linear import (
    ConvergenceError,
    DegenerateSeparatorError,
    LinearSeparator,
    train_lsvm_linear,
    train_psvm_linear,
)
from .sdf import (
    ContradictoryDuplicatesError,
    GaussianFit,
    SdfModel,
    decision_offset,
    dumps_model,
    estimate_b,
    load_model,
    model_from_dict,
    model_to_dict,
    predict,
    prepare_gaussian,
    save_model,
    sign_label,
    train_if_regression,
    train_ksvm,
    train_rbfn,
    train_sdf,
    train_sdf_linear,
)
