# %% [markdown]
# # A positive rule on the square
#
# We ask for a rule on $[-1, 1]^2$ that integrates every polynomial of
# total degree at most 3 exactly.  That space has $K = 10$ basis
# functions, so the rule may use at most 10 nodes, all inside the square,
# all with positive weights.

# %%
import numpy as np

from poscub import algebraic_space, constant_weight, construct_positive_cf, evaluate, make_cube

square = make_cube([0.0, 0.0], 1.0)
space = algebraic_space(2, 3)
c = construct_positive_cf(square, constant_weight(), space)
rule = c.rule
print(f"K = {space.K}, N = {rule.N}")
for x, w in zip(rule.nodes, rule.weights):
    print(f"  ({x[0]: .4f}, {x[1]: .4f})   w = {w:.6f}")

# %% [markdown]
# Exact on the space: x^2 y integrates to 0, x^2 to 4/3.

# %%
print(evaluate(rule, lambda x: x[:, 0] ** 2 * x[:, 1]))
print(evaluate(rule, lambda x: x[:, 0] ** 2), 4 / 3)

# %% [markdown]
# Outside the space the rule is only an approximation.

# %%
f = lambda x: np.prod(1 / (1 + x**2), axis=1)  # noqa: E731
print("error for 1/((1+x^2)(1+y^2)):", abs(evaluate(rule, f) - (np.pi / 2) ** 2))
