# %% [markdown]
# # Custom spaces, rule files and the command line
#
# Any finite set of functions whose first member is the constant 1 can
# serve as the exactness space, as long as moments are supplied (here by
# QMC).

# %%
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from poscub import constant_weight, construct_positive_cf, custom_space, make_ball
from poscub import cubature as cub

disk = make_ball([0, 0], 1)
space = custom_space(
    [lambda x: np.ones(len(x)), lambda x: np.linalg.norm(x, axis=1), lambda x: np.exp(x[:, 0])], 2, disk
)
c = construct_positive_cf(disk, constant_weight(), space, qmc_samples=2**16)
print("N =", c.rule.N, "weights", c.rule.weights)

# %% [markdown]
# Rules serialize to JSON without loss and to CSV for other tools.

# %%
tmp = Path(tempfile.mkdtemp())
cub.save(c.rule, tmp / "rule.json")
back = cub.load(tmp / "rule.json")
print("bit identical:", back.weights.tobytes() == c.rule.weights.tobytes())
print(cub.to_csv(back))

# %% [markdown]
# The same pipeline runs from the shell: `poscub construct`, then
# `poscub verify` on the written file.

# %%
(tmp / "square.json").write_text(json.dumps({"type": "cube", "center": [0, 0], "radius": 1}))
run = [sys.executable, "-m", "poscub"]
subprocess.run(run + ["construct", "--domain-config", str(tmp / "square.json"), "--degree", "2", "--out", str(tmp / "sq.json")], check=True)
subprocess.run(run + ["verify", str(tmp / "sq.json")], check=True)
