"""
Skewed classes: where does the separating line go?
===================================================

Three +1 points sit near (0, 1) and one -1 point at (0, -1). A max-margin
line would be y = 0. Least-squares SVM variants that regress the labels drift
toward the minority class; regressing signed distances does not.
"""

from sdfclassify import biased_toy, decision_offset, train_psvm_linear, train_lsvm_linear, train_sdf_linear
from sdfclassify.dataset import biased_toy_skewed

data = biased_toy()
print(data.features, data.labels)

sdf = train_sdf_linear(data, gamma=1e-7)
psvm = train_psvm_linear(data, nu=0.5)
lsvm = train_lsvm_linear(data, nu=1.0)
print("linear SDF    y0 =", decision_offset(sdf))
print("proximal SVM  y0 =", psvm.offset(), " (closed form -1/(2+6 nu) =", -1 / (2 + 6 * 0.5), ")")
print("lagrangian    y0 =", lsvm.offset(), " (closed form", -1 / (2 + 6 * 1.0), ")")

# the linear SDF has no bias term, so its line always passes through the
# origin; the slope is what could go wrong
w = sdf.normal_vector()
print("linear SDF normal vector:", w, " slope:", -w[0] / w[1])

# pile 20 more +1 points near (0, 1)
for extra in (0, 5, 20, 80):
    d = biased_toy_skewed(extra, 0.05, seed=0)
    print(f"{extra:3d} extra points:  SDF {decision_offset(train_sdf_linear(d, 1e-7)):+.2e}"
          f"   PSVM {train_psvm_linear(d, 0.5).offset():+.4f}")
