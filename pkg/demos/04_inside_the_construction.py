# %% [markdown]
# # Inside the construction
#
# Two stages.  First, least-squares weights on the first N points of an
# equidistributed sequence, doubling N until no weight is negative.
# Second, Steinitz elimination: move along a null vector of the
# Vandermonde matrix until a weight hits zero, drop that node, repeat.

# %%
import logging

import numpy as np

from poscub import (
    algebraic_space,
    compute_moments,
    constant_weight,
    construct_nonnegative_ls_cf,
    make_cube,
    reduce_rule,
)
from poscub.sequences import PointSequence

logging.basicConfig(level=logging.INFO, format="%(message)s")

square = make_cube([0, 0], 1)
space = algebraic_space(2, 4)
mom = compute_moments(space, square, constant_weight())

# %% [markdown]
# The points come from a bisection grid: corners first, then midpoints.

# %%
seq = PointSequence(square)
print(seq.first(10))

# %%
ls = construct_nonnegative_ls_cf(square, constant_weight(), space, seq, mom)
for h in ls.history:
    print(h)

# %% [markdown]
# The LS rule is exact and nonnegative but uses many nodes.  Reduction
# keeps exactness and positivity while removing all but at most K.

# %%
nodes, w, trace = reduce_rule(ls.nodes, ls.weights, ls.Phi, mom.values)
print(f"{len(ls.nodes)} -> {len(w)} nodes in {len(trace.steps)} steps")
print("residual:", np.max(np.abs(space.evaluate(nodes) @ w - mom.values)))
print("sum of weights:", w.sum(), "(the area is 4)")
for step in trace.steps[:5]:
    print(f"  N = {step['N_before']:4d}  sigma = {step['sigma']:.3e}  removed {step['removed']}")
