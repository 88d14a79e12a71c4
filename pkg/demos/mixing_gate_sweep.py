"""
Mixing gate from a square of transmission lines
===============================================

A square of four lines joined at its corners, with two opposite sides at a
lower impedance, acts as a two-qubit-path beam splitter.  We solve the
scattering problem at a single wavenumber, then sweep k to see where the
reflection and the cross transmission vanish.
"""

import math

import numpy as np

from wavenet import solve, sweep
from wavenet.gates import build_mixing_network, mixing_gate_from_network

net = build_mixing_network(z_ratio=1 / math.sqrt(2))
for seg in net.segments:
    print(f"{seg.id}: {seg.from_node}-{seg.to_node}  Z={seg.impedance:.4f}  length={seg.length}")

###############################################################################
# Inject a unit current at ``in0`` when each side is a quarter wavelength long.

sol = solve(net, math.pi / 2, "in0")
print("R  =", complex(np.round(sol.reflection, 12)))
for port, t in sol.transmissions.items():
    print(f"T[{port}] = {complex(np.round(t, 12))}")
print("power balance:", sol.power_balance())

###############################################################################
# The two non-reflecting outputs form a 2x2 unitary.

print(np.round(mixing_gate_from_network().matrix, 12))

###############################################################################
# A sweep across one period of k.  The reflection and the cross transmission
# dip to zero at quarter and three-quarter wavelength sides.

table = sweep(net, 0.01, 2 * math.pi - 0.01, 512, "in0")
abs_r = np.abs(table.reflection)
abs_t2 = np.abs(table.transmissions[:, 1])
for target in (math.pi / 2, 3 * math.pi / 2):
    window = np.abs(table.k - target) < 0.3
    i = np.flatnonzero(window)[np.nanargmin(abs_r[window])]
    print(f"near k={target:.4f}: min |R| = {abs_r[i]:.2e} at k={table.k[i]:.4f}, |T2| = {abs_t2[i]:.2e}")
print("worst power balance error:", np.nanmax(np.abs(table.power_balance - 1)))

###############################################################################
# At k = pi the square holds a standing wave that never leaves, so the linear
# system is singular.  A sample placed exactly there is reported as a gap.

table = sweep(net, 3.0, 3.3, 3, "in0", ks=np.array([3.0, math.pi, 3.3]))
print("gaps:", table.gaps)
