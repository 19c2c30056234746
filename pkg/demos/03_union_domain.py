# %% [markdown]
# # A domain made of two pieces
#
# The unit disk together with the square $[1, 2]^2$.  Domains only need an
# indicator and a bounding box; moments come from a closed form when the
# pieces are declared disjoint, or from quasi-Monte Carlo otherwise.

# %%
import math

import numpy as np

from poscub import algebraic_space, compute_moments, constant_weight, construct_positive_cf, make_ball, make_cube, union

domain = union(make_ball([0, 0], 1), make_cube([1.5, 1.5], 0.5), disjoint=True)
print("volume:", domain.volume, "= pi + 1 =", math.pi + 1)

# %%
for m in range(3):
    s = algebraic_space(2, m)
    c = construct_positive_cf(domain, constant_weight(), s)
    print(f"m = {m}, K = {s.K}, N = {c.rule.N}")
    for x, w in zip(c.rule.nodes, c.rule.weights):
        print(f"    ({x[0]: .4f}, {x[1]: .4f})  w = {w:.6f}")

# %% [markdown]
# With QMC moments the rule is exact for the estimated moments.  The
# recorded error estimate says how far those are from the true ones.

# %%
s = algebraic_space(2, 2)
qmc = compute_moments(s, domain, constant_weight(), method="qmc", M=2**18)
exact = compute_moments(s, domain, constant_weight(), method="analytic")
print("QMC error estimate:", qmc.error_estimate)
print("actual QMC error  :", np.max(np.abs(qmc.values - exact.values)))
c = construct_positive_cf(domain, constant_weight(), s, moments=qmc)
print("provenance:", c.rule.metadata["moment_provenance"], " N =", c.rule.N)
