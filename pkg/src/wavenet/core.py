"""Shared value types: line parameters, network graphs, gate matrices, states.

Conventions used throughout the package:

* Impedances are dimensionless, normalised to the reference input wire (Z = 1).
* Lengths are in units of the bridge length, so ``k`` is dimensionless.
* A wave travelling a distance ``d`` along a line picks up ``exp(+1j*k*d)``.
* Basis labels are written most-significant qubit first: in ``"10"`` qubit 0 is 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import NetworkError, NotUnitary

__all__ = [
    "LineParameters",
    "line_parameters_from_geometry",
    "Segment",
    "Port",
    "NetworkGraph",
    "ScatteringSolution",
    "GateUnitary",
    "Statevector",
    "FieldState",
    "wavefunction_from_fields",
    "basis_labels",
]


def _frozen(a, dtype=None) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


# ---------------------------------------------------------------------------
# Physical line parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LineParameters:
    """Per-unit-length capacitance and inductance of a lossless line."""

    capacitance_per_length: float
    inductance_per_length: float

    def __post_init__(self):
        if not (self.capacitance_per_length > 0 and self.inductance_per_length > 0):
            raise ValueError("capacitance and inductance per length must be positive")

    @property
    def characteristic_impedance(self) -> float:
        return math.sqrt(self.inductance_per_length / self.capacitance_per_length)

    @property
    def propagation_speed(self) -> float:
        return 1.0 / math.sqrt(self.inductance_per_length * self.capacitance_per_length)


def line_parameters_from_geometry(
    wire_radius: float, height: float, permittivity: float, permeability: float
) -> LineParameters:
    """Line constants of a thin wire of radius ``r`` held at height ``h`` over a ground plane.

    ``C = 2*pi*eps / ln(2h/r)`` and ``L = mu/(2*pi) * ln(2h/r)``, so ``L*C = eps*mu``
    regardless of the geometry.
    """
    for name, value in (
        ("wire_radius", wire_radius),
        ("height", height),
        ("permittivity", permittivity),
        ("permeability", permeability),
    ):
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value!r}")
    ratio = 2.0 * height / wire_radius
    if ratio <= 1.0:
        raise ValueError("2*height/wire_radius must exceed 1 for a positive logarithm")
    log_term = math.log(ratio)
    return LineParameters(
        capacitance_per_length=2.0 * math.pi * permittivity / log_term,
        inductance_per_length=permeability / (2.0 * math.pi) * log_term,
    )


# ---------------------------------------------------------------------------
# Network graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    id: str
    from_node: str
    to_node: str
    impedance: float
    length: float


@dataclass(frozen=True)
class Port:
    """A semi-infinite lead of impedance ``impedance`` attached at ``node``."""

    id: str
    node: str
    impedance: float
    role: str = "input"
    label: Optional[str] = None


@dataclass(frozen=True)
class NetworkGraph:
    nodes: tuple
    segments: tuple = ()
    ports: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "ports", tuple(self.ports))
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise NetworkError("duplicate node identifiers")
        seg_ids = [s.id for s in self.segments]
        if len(set(seg_ids)) != len(seg_ids):
            raise NetworkError("duplicate segment ids")
        port_ids = [p.id for p in self.ports]
        if len(set(port_ids)) != len(port_ids):
            raise NetworkError("duplicate port ids")
        for s in self.segments:
            if s.from_node not in known or s.to_node not in known:
                raise NetworkError(f"segment {s.id!r} references an unknown node")
            if not (s.impedance > 0 and s.length > 0):
                raise NetworkError(f"segment {s.id!r} needs positive impedance and length")
        for p in self.ports:
            if p.node not in known:
                raise NetworkError(f"port {p.id!r} references unknown node {p.node!r}")
            if not p.impedance > 0:
                raise NetworkError(f"port {p.id!r} needs a positive impedance")
            if p.role not in ("input", "output"):
                raise NetworkError(f"port {p.id!r} has role {p.role!r}; expected input/output")

    def port(self, port_id: str) -> Port:
        for p in self.ports:
            if p.id == port_id:
                return p
        raise KeyError(port_id)

    def port_index(self, port_id: str) -> int:
        for i, p in enumerate(self.ports):
            if p.id == port_id:
                return i
        raise KeyError(port_id)

    @property
    def port_ids(self) -> list:
        return [p.id for p in self.ports]

    def degree(self, node: str) -> int:
        d = sum(p.node == node for p in self.ports)
        for s in self.segments:
            d += (s.from_node == node) + (s.to_node == node)
        return d


@dataclass(frozen=True)
class ScatteringSolution:
    """Response of a network to a unit incident current at one port.

    ``reflection`` and ``transmissions`` are current ratios relative to the incident
    current; ``segment_amplitudes`` holds the (forward, backward) voltage wave
    amplitudes of each segment referred to its ``from_node`` end.
    """

    wavenumber: float
    injected_port: str
    reflection: complex
    transmissions: Mapping[str, complex]
    segment_amplitudes: Mapping[str, tuple]
    port_impedances: Mapping[str, float] = field(default_factory=dict)

    def power_balance(self) -> float:
        """Outgoing power over incident power (1 for a lossless network)."""
        z_in = self.port_impedances[self.injected_port]
        total = abs(self.reflection) ** 2
        for pid, t in self.transmissions.items():
            total += abs(t) ** 2 * self.port_impedances[pid] / z_in
        return total


# ---------------------------------------------------------------------------
# Gates and states
# ---------------------------------------------------------------------------


def basis_labels(num_qubits: int) -> list:
    return [format(i, f"0{num_qubits}b") for i in range(2**num_qubits)]


@dataclass(frozen=True, eq=False)
class GateUnitary:
    """Dense unitary on ``n`` qubits with rows/columns ordered as ``basis_labels``."""

    matrix: np.ndarray
    name: str = ""
    metadata: Mapping = field(default_factory=dict)
    tol: float = 1e-10

    def __post_init__(self):
        m = _frozen(self.matrix, complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("gate matrix must be square")
        dim = m.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise ValueError(f"gate dimension {dim} is not a power of two")
        residual = unitarity_residual(m)
        if residual > self.tol:
            raise NotUnitary(residual, self.tol)
        object.__setattr__(self, "matrix", m)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_qubits(self) -> int:
        return self.dimension.bit_length() - 1

    @property
    def basis_labels(self) -> list:
        return [f"|{b}⟩" for b in basis_labels(self.num_qubits)]

    def dagger(self) -> "GateUnitary":
        return GateUnitary(self.matrix.conj().T, name=f"{self.name}^dagger" if self.name else "")

    def __repr__(self):
        return f"GateUnitary(name={self.name!r}, num_qubits={self.num_qubits})"


def apply_on_qubits(op: np.ndarray, arr: np.ndarray, targets: Sequence[int], n: int) -> np.ndarray:
    """Apply a ``2**k``-square matrix to qubits ``targets`` of ``arr`` (shape ``(2**n, ...)``)."""
    k = len(targets)
    extra = arr.shape[1:]
    psi = arr.reshape([2] * n + list(extra))
    out = np.tensordot(op.reshape([2] * (2 * k)), psi, axes=(list(range(k, 2 * k)), list(targets)))
    # tensordot puts the gate's output axes first; move them back into place
    rest = [q for q in range(n) if q not in targets]
    out = np.moveaxis(out, list(range(n)), list(targets) + rest)
    return out.reshape(arr.shape)


def unitarity_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


@dataclass(frozen=True, eq=False)
class Statevector:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amplitudes, complex).reshape(-1)
        n = amps.size
        if n < 2 or n & (n - 1):
            raise ValueError(f"statevector length {n} is not a power of two >= 2")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"statevector is not normalised (norm^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_label(cls, label: str) -> "Statevector":
        label = label.strip("|⟩>")
        amps = np.zeros(2 ** len(label), dtype=complex)
        amps[int(label, 2)] = 1.0
        return cls(amps)

    @classmethod
    def from_terms(cls, terms: Mapping[str, complex]) -> "Statevector":
        """Build from ``{"000": amp, ...}``; amplitudes are used as given."""
        n = len(next(iter(terms)))
        amps = np.zeros(2**n, dtype=complex)
        for lab, amp in terms.items():
            amps[int(lab, 2)] = amp
        return cls(amps)

    @property
    def num_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    def apply(self, gate: GateUnitary, targets: Optional[Sequence[int]] = None) -> "Statevector":
        """Apply ``gate`` to the listed qubits (all qubits, in order, by default)."""
        n = self.num_qubits
        if targets is None:
            if gate.dimension != self.amplitudes.size:
                raise ValueError("gate and state dimensions differ")
            return Statevector(gate.matrix @ self.amplitudes)
        targets = list(targets)
        if gate.num_qubits != len(targets) or len(set(targets)) != len(targets) or not all(0 <= t < n for t in targets):
            raise ValueError(f"invalid targets {targets} for a {gate.num_qubits}-qubit gate on {n} qubits")
        return Statevector(apply_on_qubits(gate.matrix, self.amplitudes, targets, n))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def marginal(self, qubits: Sequence[int]) -> np.ndarray:
        """Probability distribution of the listed qubits, indexed MSB-first."""
        n = self.num_qubits
        p = self.probabilities().reshape([2] * n)
        others = tuple(q for q in range(n) if q not in qubits)
        p = p.sum(axis=others)
        # remaining axes are in ascending qubit order; permute to the requested order
        kept = sorted(qubits)
        p = np.transpose(p, [kept.index(q) for q in qubits])
        return p.reshape(-1)

    def terms(self, tol: float = 1e-12) -> dict:
        n = self.num_qubits
        return {
            format(i, f"0{n}b"): complex(a)
            for i, a in enumerate(self.amplitudes)
            if abs(a) > tol
        }


# ---------------------------------------------------------------------------
# Time-domain fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldState:
    """Sampled voltage on cell centres and current on cell faces (shifted by dx/2)."""

    dx: float
    voltage: np.ndarray
    current: np.ndarray
    line: LineParameters

    def __post_init__(self):
        v = _frozen(self.voltage, float)
        i = _frozen(self.current, float)
        if v.ndim != 1 or v.shape != i.shape:
            raise ValueError("voltage and current must be 1-D arrays of equal length")
        if not self.dx > 0:
            raise ValueError("dx must be positive")
        object.__setattr__(self, "voltage", v)
        object.__setattr__(self, "current", i)

    @property
    def num_cells(self) -> int:
        return self.voltage.size

    @property
    def electric_energy(self) -> float:
        return 0.5 * self.line.capacitance_per_length * float(np.dot(self.voltage, self.voltage))

    @property
    def magnetic_energy(self) -> float:
        return 0.5 * self.line.inductance_per_length * float(np.dot(self.current, self.current))

    @property
    def total_energy(self) -> float:
        return self.electric_energy + self.magnetic_energy


def wavefunction_from_fields(state: FieldState) -> np.ndarray:
    """Two-component wavefunction ``(Z*I, V)`` per cell, shape ``(num_cells, 2)``.

    Its squared norm equals ``2 * U_T / C`` (undiscretised sums, no dx weight).
    """
    z = state.line.characteristic_impedance
    return np.stack([z * state.current, state.voltage], axis=1).astype(complex)
