"""
Repeated 2:1 split benchmark
=============================

KNN (k = 1..10), an RBF network, a least-squares kernel machine standing in
for the SVM, and the SDF classifier all see the same split in every trial.
The three Gaussian models share one correlation-weighted kernel matrix.

Pass a CSV path, label column and positive label to run on your own data,
for example a microarray table::

    python plot_benchmark.py colon.csv class tumor
"""

import sys

from sdfclassify import load_csv, run_benchmark
from sdfclassify.dataset import gen_blobs, gen_checkerboard

if len(sys.argv) == 4:
    datasets = {sys.argv[1]: load_csv(*sys.argv[1:4])}
else:
    datasets = {
        "blobs": gen_blobs(60, seed=1, separation=10.0),
        "near blobs": gen_blobs(60, seed=1, separation=2.5),
        "checkerboard 4x4": gen_checkerboard(300, 4, seed=1),
    }

for name, data in datasets.items():
    report = run_benchmark(data, n_trials=30, seed=42, name=name, threads=0)
    row = "  ".join(f"{m} {s.mean:.4f}" for m, s in report.per_method.items())
    print(f"{name:18s} {row}   best k = {report.knn_best_k}")
    print(f"{'':18s} sharing checks held: {report.audit}")

# full reports: report.to_json() for the document, report.to_csv() for plotting
