# %% [markdown]
# # Accuracy against product Gauss-Legendre rules
#
# For $f(x, y) = 1/((1+x^2)(1+y^2))$ on the square the exact integral is
# $(\pi/2)^2$.  The benchmark builds a rule for each degree and compares
# it with a tensor Gauss-Legendre rule using about as many nodes.

# %%
from poscub import constant_weight, make_ball, make_cube
from poscub.reference import run_benchmark

rep = run_benchmark(make_cube([0, 0], 1), constant_weight(), range(0, 9))
print(rep.function, rep.reference, rep.reference_provenance)
print(rep.to_csv())

# %% [markdown]
# On the disk the reference is a polar product rule and the test
# function is $1/(1+\|x\|^2) + \sin(x_1)$.

# %%
rep = run_benchmark(make_ball([0, 0], 1), constant_weight(), range(0, 7))
print(rep.function, rep.reference, rep.reference_provenance)
print(rep.to_csv())
