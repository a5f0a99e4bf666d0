"""
The three-qubit bit-flip code
=============================

Three independent ways to see that the repetition code corrects a single bit
flip: the mutual-information deficit, the Petz recovery map, and the
Knill-Laflamme matrix.
"""
import numpy as np

from qrev import catalog as cat
from qrev import channel as chm
from qrev import verify as vf
from qrev.qstate import CodeSubspace, encode, faithful_code_state, pure_state

code = cat.bit_flip_code()
noise = cat.single_bit_flip_channel(0.3)

print(vf.check_reversible(noise, code))

report, kl = vf.check_kl(noise, code)
print(report)
print("c_kl =\n", np.round(kl.entries.real, 6))

# Petz recovery built from the maximally mixed code state
recovery = vf.petz_recovery(noise, faithful_code_state(code))
psi = encode(code, pure_state([0.6, 0.8j]))
back = recovery(noise(psi))
print("recovered |psi> up to", np.abs(back.matrix - psi.matrix).max())

# The environment learns nothing about the encoded state
print(vf.check_vanishing(chm.complement(noise), code))

# A code that stores the logical bit in one qubit is not protected
weak = CodeSubspace.from_basis([cat.basis_vector(8, 0), cat.basis_vector(8, 4)])
report, kl = vf.check_kl(noise, weak)
print(report.verdict, "largest KL residual:", kl.max_residual)
print(vf.check_reversible(noise, weak).verdict)
