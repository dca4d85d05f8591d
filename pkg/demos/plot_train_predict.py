"""
Training, prediction and model files
=====================================

Train the Gaussian SDF classifier on a 4x4 checkerboard, compare it with the
indicator-regression model built on the identical kernel, and round-trip the
model through a JSON file.
"""

import os
import tempfile

import numpy as np

from sdfclassify import gen_checkerboard, load_model, predict, save_model, train_if_regression, train_sdf

train = gen_checkerboard(400, 4, seed=0)
test = gen_checkerboard(2000, 4, seed=1)

sdf = train_sdf(train, gamma=1e-7)
ind = train_if_regression(train, gamma=1e-7)
print("feature weights:", sdf.weights, " sigma:", sdf.sigma)
print("kernel shared:", np.array_equal(sdf.gram, ind.gram))
for name, m in (("SDF", sdf), ("indicator", ind)):
    print(f"{name:10s} test error {np.mean(m.predict(test.features) != test.labels):.4f}")

print("decision value and label at (0.1, 0.1):", predict(sdf, [0.1, 0.1]))

path = os.path.join(tempfile.mkdtemp(), "sdf.json")
save_model(sdf, path)
back = load_model(path)
print("reloaded model gives identical decision values:",
      np.array_equal(back.decision_function(test.features), sdf.decision_function(test.features)))
