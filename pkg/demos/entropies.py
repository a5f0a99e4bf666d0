"""
Entropies of channel outputs
============================

Mutual information, coherent information and entanglement fidelity on a few
textbook channels, followed by the environment split 2H = I + I_E.
"""
import numpy as np

from qrev import catalog as cat
from qrev import channel as chm
from qrev import entropy as en
from qrev.qstate import maximally_mixed, pure_state
from qrev.random import random_channel, random_density

mm = maximally_mixed(2)
for name, ch in [
    ("identity", cat.identity_channel(2)),
    ("dephasing 1/2", cat.dephasing_channel(0.5)),
    ("depolarizing", cat.depolarizing_channel(1.0)),
    ("reset", cat.reset_channel()),
]:
    print(f"{name:14s} I = {en.channel_mutual_information(mm, ch):.6f}"
          f"  I_c = {en.coherent_information(mm, ch):+.6f}"
          f"  F_e = {en.entanglement_fidelity(mm, ch):.6f}")

# Relative entropy is +infinity outside the support and refuses arithmetic
d = en.relative_entropy(pure_state([1, 0]), pure_state([0, 1]))
print("D(|0> || |1>) =", d)

# Monotonicity under a random channel
rng = np.random.default_rng(7)
rho, sigma = random_density(rng, 3), random_density(rng, 3)
ch = random_channel(rng, 3, 2, rank=2)
print("D before:", en.relative_entropy(rho, sigma))
print("D after: ", en.relative_entropy(ch(rho), ch(sigma)))

# What the channel does not deliver to the output ends up in the environment
i = en.channel_mutual_information(rho, ch)
i_env = en.channel_mutual_information(rho, chm.complement(ch))
print("2H(rho) =", 2 * en.vn_entropy(rho), " I + I_E =", i + i_env)
