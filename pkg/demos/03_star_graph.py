"""
Graph states and the star graph
===============================

Measuring Z on a graph-state vertex removes it from the graph. On a star,
Z on every leaf except one leaves the centre and that leaf in a two-qubit
graph state, which is a Bell pair up to local unitaries.
"""

import numpy as np

from multichsh import bell, channels, families, qstate
from multichsh.channels import PauliChannel

star = qstate.GraphSpec.star(5)
print("stabilizer generators:", [star.stabilizer(i) for i in range(5)])

# The graph Bell operator B(0, leaves) attains 2^|I| on the pure state while
# local models stay below L(|I| + 1).
op = bell.GraphBellOperator(star, 0, [1, 2, 3, 4])
psi = qstate.graph_state(star)
print("B on the pure state:", bell.graph_bell_value(qstate.pure_to_density(psi), op),
      "local bound:", bell.graph_bell_local_bound(op))

# Under Pauli noise the state stays diagonal in the graph basis. The weights
# reproduce the Kraus simulation exactly.
ch = PauliChannel.named("dephasing-z", 0.2)
w = bell.graph_diagonal_weights(star, ch)
rho = channels.noisy(psi, ch)
print("weights reproduce the noisy state:",
      np.allclose(bell.graph_diagonal_state(star, w).data, rho.data))
print("B(p=0.2):", bell.graph_bell_value(rho, op), "=", bell.graph_bell_value_from_weights(op, w))

# The conditioned CHSH value is (1-p) sqrt 2, so violation stops at 1 - 1/sqrt 2.
fam = families.graph_family(star)
pc = families.noise_threshold(fam, PauliChannel.named("dephasing-z", 0))
print(f"threshold p_c = {pc:.8f} (1 - 1/sqrt 2 = {1 - 1 / np.sqrt(2):.8f})")
