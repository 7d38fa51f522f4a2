"""
Nonlocal content of a dephased W state
======================================

For the W state the useful measurement is Z on all but two qubits. Only the
all-zero outcome leaves an entangled pair, which happens with probability
2/n, so the content bound is weighted by that probability.
"""

import numpy as np

from multichsh import content, families
from multichsh.channels import PauliChannel

grid = np.linspace(0, 1, 11)
for n in (3, 5, 8):
    fam = families.w_family(n)
    curve = content.content_curve(fam, PauliChannel.named("dephasing-z", 0), grid)
    print(f"n={n}, measured pair {fam.pair}, outcome probability {curve[0].prob:.4f}")
    for b in curve[::2]:
        print(f"   p={b.p:.1f}  m={b.m:.5f}  content >= {b.bound:.5f}")

# The same numbers from the one-line helper.
print("helper at n=5, p=0.4:", content.w_z_content(5, 0.4))
