"""
From the hypercube to the Grassmannian
======================================

Walk a batch of uniform hypercube points through the three maps and check
that each stage has the distribution it should.
"""

import numpy as np
from scipy import stats

from grasslattice import grass_map_inv, theta1, theta2, theta3
from grasslattice.simkit import hopf_project

rng = np.random.default_rng(0)
T = 3
p = rng.uniform(size=(50_000, 2 * (T - 1)))

# stage 1: each coordinate through the N(0, 1/2) quantile -> CN(0, I) vectors
z = theta1(p)
print("Gaussian stage  E|z_k|^2 =", np.round(np.mean(np.abs(z) ** 2, axis=0), 3))

# stage 2: radial rescaling into the unit ball; |w|^2 should be Beta(T-1, 1)
w = theta2(z)
r2 = np.sum(np.abs(w) ** 2, axis=1)
print("ball stage      KS p-value of |w|^2 vs Beta:", round(stats.kstest(r2, stats.beta(T - 1, 1).cdf).pvalue, 3))

# stage 3: lift onto the unit sphere with a real positive first entry
x = theta3(w)
print("sphere stage    max | |x| - 1 | =", np.max(np.abs(np.linalg.norm(x, axis=1) - 1)))

# the chain is invertible on canonical representatives
print("roundtrip error:", np.max(np.abs(grass_map_inv(x) - p)))

# for T = 2 the Hopf map sends lines in C^2 to points of the real 2-sphere;
# uniform lines give a uniform sphere, so each coordinate is U(-1, 1)
x2 = theta3(theta2(theta1(rng.uniform(size=(50_000, 2)))))
s = hopf_project(x2)
print("Hopf z-coordinate KS p-value vs U(-1,1):", round(stats.kstest(s[:, 2], stats.uniform(-1, 2).cdf).pvalue, 3))
