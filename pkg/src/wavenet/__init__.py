"""Distributed-element transmission-line networks as quantum gates."""

from .core import (
    FieldState,
    GateUnitary,
    LineParameters,
    NetworkGraph,
    Port,
    ScatteringSolution,
    Segment,
    Statevector,
    line_parameters_from_geometry,
    wavefunction_from_fields,
)
from .netfile import bundled_network, load_network, save_network
from .scattering import SMatrix, assemble, full_smatrix, solve, sweep

__version__ = "0.1.0"
