"""
A small gate library
====================

Beyond the mixing gate, lines give us phase shifts (one path longer than the
other) and permutation gates (wires that swap places).  Here we assemble a
Hadamard from network pieces and check a few classical reversible gates.
"""

import numpy as np

from wavenet.core import Statevector
from wavenet.gates import (
    build_two_wire_network,
    cnot_gate,
    equal_up_to_phase,
    extract_two_port_unitary,
    hadamard_from_network,
    hadamard_gate,
    phase_shift_gate,
    toffoli_gate,
)
from wavenet.scattering import full_smatrix

###############################################################################
# Two parallel wires, the second one longer by dl, give a relative phase k*dl.

k, dl = 1.3, 0.9
wires = extract_two_port_unitary(full_smatrix(build_two_wire_network(1.0, 1.0 + dl), k))
print(np.round(wires.matrix, 6))
print("same as phase(k*dl) up to global phase:", equal_up_to_phase(wires, phase_shift_gate(k * dl)))

###############################################################################
# Hadamard = -i * P(3pi/2) U_mix P(3pi/2), with U_mix from the network solve.

h = hadamard_from_network()
print(np.round(h.matrix, 12))
print("max deviation from H:", np.max(np.abs(h.matrix - hadamard_gate().matrix)))

###############################################################################
# Bell pair: H on the first qubit, then CNOT.

bell = Statevector.from_label("00").apply(h, [0]).apply(cnot_gate())
print({label: complex(np.round(a, 6)) for label, a in bell.terms().items()})

###############################################################################
# Toffoli flips the target only when both controls are set.

for label in ("110", "111", "010"):
    print(label, "->", list(Statevector.from_label(label).apply(toffoli_gate()).terms()))
