"""
Channels in Choi, Kraus and Stinespring form
============================================

Build a random qutrit-to-qubit channel, move between its representations and
look at what the environment receives.
"""
import numpy as np

from qrev import catalog as cat
from qrev import channel as chm
from qrev import densemath as dm
from qrev.qstate import pure_state
from qrev.random import random_channel, random_density

rng = np.random.default_rng(1)
ch = random_channel(rng, 3, 2, rank=3)
print("Kraus rank:", ch.kraus_rank)

# The normalized Choi matrix has the maximally mixed state as its reference marginal
print("Tr_B M =\n", np.round(dm.partial_trace(ch.choi, [3, 2], keep=[0]), 12))

# Spectral Kraus operators reproduce the same Choi matrix
ops = chm.to_kraus(ch)
again = chm.from_kraus(ops)
print("round-trip deviation:", np.abs(again.choi - ch.choi).max())

# Stinespring isometry: output first, environment second
v = chm.to_stinespring(ch)
print("V^dag V = I:", np.allclose(v.conj().T @ v, np.eye(3)))

rho = random_density(rng, 3)
joint = v @ rho.matrix @ v.conj().T
env = dm.partial_trace(joint, [ch.out_dim, ch.kraus_rank], keep=[1])
print("environment output matches the complementary channel:",
      np.allclose(env, chm.apply(chm.complement(ch), rho).matrix))

# Dephasing leaks exactly the Z expectation value to the environment
comp = chm.complement(cat.dephasing_channel(0.5))
print("environment state of dephasing on |+><+|:\n",
      np.round(comp(pure_state([1, 1])).matrix, 4))
