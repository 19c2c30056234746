# %% [markdown]
# # Weighted integrals on the unit ball
#
# Integrals over the 3-D unit ball with the weight $\sqrt{\|x\|_2}$.  The
# moments of monomials are known in closed form for radial weights, so the
# rule can be checked to machine precision.

# %%
import numpy as np

from poscub import algebraic_space, construct_positive_cf, make_ball, radial_power_weight
from poscub.moments import analytic_moments

ball = make_ball([0.0, 0.0, 0.0], 1.0)
omega = radial_power_weight(0.5)
space = algebraic_space(3, 2)

c = construct_positive_cf(ball, omega, space)
print(f"K = {space.K}, N = {c.rule.N}, sequence: {c.rule.metadata['sequence']}")
print("weights:", np.round(c.rule.weights, 6))
print("sum of weights", c.rule.weights.sum(), "vs 8 pi / 7 =", 8 * np.pi / 7)

# %% [markdown]
# Every moment is matched, and every node is inside the ball.

# %%
m = analytic_moments(space, ball, omega).values
print("max moment error:", np.max(np.abs(space.evaluate(c.rule.nodes) @ c.rule.weights - m)))
print("largest node norm:", np.linalg.norm(c.rule.nodes, axis=1).max())

# %% [markdown]
# Higher degrees work the same way; the node count never exceeds K.

# %%
for deg in range(5):
    s = algebraic_space(3, deg)
    r = construct_positive_cf(ball, omega, s).rule
    print(f"m = {deg}: K = {s.K:3d}, N = {r.N:3d}, min weight = {r.weights.min():.3e}")
