"""
Splitting information between two receivers
===========================================

A channel with output B (x) C cannot give more than I(rho, id) in total.  For
a Stinespring dilation the budget is used up exactly, so if B can recover the
state then C gets nothing.
"""
import numpy as np

from qrev import channel as chm
from qrev import verify as vf
from qrev.qstate import CodeSubspace
from qrev.random import correctable_channel, random_channel, random_code

rng = np.random.default_rng(3)

# Generic bipartite channel: strict inequality
ch_bc = random_channel(rng, 3, 6, rank=2)
report = vf.check_tradeoff(ch_bc, (2, 3), CodeSubspace.full_space(3))
print("random channel slack:", report.quantities["slack"])

# Dilation of a channel that is correctable on a qubit code inside a qutrit
code = random_code(rng, 3, 2)
e_b = correctable_channel(rng, code, out_dim=4, n_errors=2)
ch_bc = chm.from_stinespring(chm.to_stinespring(e_b))
report = vf.check_tradeoff(ch_bc, (e_b.out_dim, e_b.kraus_rank), code)
print(report)
