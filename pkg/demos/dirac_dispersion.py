"""
Waves on a line in the time domain
==================================

The telegrapher equations integrated with a staggered leapfrog on a periodic
grid.  We track the stored energy of a travelling wave and measure how fast
its phase advances, comparing against the exact speed 1/sqrt(LC).
"""

import numpy as np

from wavenet.core import LineParameters
from wavenet.dirac import EvolutionConfig, energy_samples, initialize_plane_wave, measure_dispersion

line = LineParameters(inductance_per_length=1.0, capacitance_per_length=1.0)
cfg = EvolutionConfig.from_cfl(1024, 10_000, line, cfl=0.5)
print(f"dx={cfg.dx:.3e}  dt={cfg.dt:.3e}  Courant={cfg.courant}")

###############################################################################
# Energy and the two-component norm along the run.

samples = energy_samples(initialize_plane_wave(cfg, 8), cfg, every=1000)
u0 = samples[0].total
for s in samples:
    print(f"step {s.step:5d}  U_T={s.total:.12f}  rel drift={s.total / u0 - 1:+.1e}  norm/U_T={s.norm / s.total:.12f}")

###############################################################################
# Dispersion error shrinks by about four each time the grid is refined.

prev = None
for n in (128, 256, 512, 1024):
    r = measure_dispersion(EvolutionConfig.from_cfl(n, 2 * n, line), 1)
    ratio = "" if prev is None else f"  ratio {prev / r.relative_error:.2f}"
    print(f"{n:5d} cells: omega={r.omega_measured:.10f}  exact={r.omega_theory:.10f}  err={r.relative_error:.2e}{ratio}")
    prev = r.relative_error
print("exact omega for mode 1:", 2 * np.pi)
