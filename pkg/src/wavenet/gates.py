"""Gates realised by wire networks, and the small matrix algebra to combine them.

One-qubit gates map the currents on the two input wires ``|0>_in, |1>_in`` to the
two output wires ``|0>_out, |1>_out``.  The mixing gate comes from a square of
four lines, and phase shifts come from unequal wire lengths.  The classical gates
(NOT, CNOT, SWAP, Toffoli, Fredkin) are wire crossings, i.e. permutations of the
basis wires.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable, Sequence

import numpy as np

from .core import GateUnitary, NetworkGraph, Port, Segment, apply_on_qubits
from .errors import ReflectionTooLarge
from .scattering import SMatrix, full_smatrix

__all__ = [
    "MIXING_INPUTS",
    "MIXING_OUTPUTS",
    "build_mixing_network",
    "build_two_wire_network",
    "mixing_gate",
    "mixing_gate_from_network",
    "extract_two_port_unitary",
    "phase_shift_gate",
    "hadamard_gate",
    "hadamard_composed",
    "hadamard_from_network",
    "permutation_gate",
    "not_gate",
    "cnot_gate",
    "swap_gate",
    "toffoli_gate",
    "fredkin_gate",
    "crossing_length_delta",
    "compose",
    "tensor",
    "embed",
    "equal_up_to_phase",
    "gate_by_name",
    "CATALOG",
]

SQRT1_2 = 1.0 / math.sqrt(2.0)
MATCHED_Z_RATIO = SQRT1_2

MIXING_INPUTS = ("in0", "in1")
MIXING_OUTPUTS = ("out0", "out1")


# ---------------------------------------------------------------------------
# Networks
# ---------------------------------------------------------------------------


def build_mixing_network(z_ratio: float = MATCHED_Z_RATIO, side_length: float = 1.0) -> NetworkGraph:
    """Square A-B-D-C with input wires at A, B and output wires at C, D.

    Sides A-B and C-D have impedance 1, the rungs A-C and B-D have ``z_ratio``.
    Ports are declared as ``in0 (A), out0 (C), in1 (B), out1 (D)`` so that, when
    injecting at ``in0``, the transmissions come out in the order T1, T2, T3 of the
    current labels I_1 (C), I_2 (B), I_3 (D).
    """
    if not (z_ratio > 0 and side_length > 0):
        raise ValueError("z_ratio and side_length must be positive")
    segments = [
        Segment("AB", "A", "B", 1.0, side_length),
        Segment("CD", "C", "D", 1.0, side_length),
        Segment("AC", "A", "C", z_ratio, side_length),
        Segment("BD", "B", "D", z_ratio, side_length),
    ]
    ports = [
        Port("in0", "A", 1.0, "input", "0"),
        Port("out0", "C", 1.0, "output", "0"),
        Port("in1", "B", 1.0, "input", "1"),
        Port("out1", "D", 1.0, "output", "1"),
    ]
    return NetworkGraph(nodes=("A", "B", "C", "D"), segments=segments, ports=ports)


def build_two_wire_network(length0: float, length1: float) -> NetworkGraph:
    """Two uncoupled wires: ``in0 -> out0`` of ``length0`` and ``in1 -> out1`` of ``length1``.

    At wavenumber ``k`` this acts as ``exp(1j*k*length0) * diag(1, exp(1j*k*(length1 - length0)))``.
    """
    segments = [Segment("w0", "a0", "b0", 1.0, length0), Segment("w1", "a1", "b1", 1.0, length1)]
    ports = [
        Port("in0", "a0", 1.0, "input", "0"),
        Port("out0", "b0", 1.0, "output", "0"),
        Port("in1", "a1", 1.0, "input", "1"),
        Port("out1", "b1", 1.0, "output", "1"),
    ]
    return NetworkGraph(nodes=("a0", "b0", "a1", "b1"), segments=segments, ports=ports)


def extract_two_port_unitary(
    s: SMatrix,
    input_ports: Sequence[str] = MIXING_INPUTS,
    output_ports: Sequence[str] = MIXING_OUTPUTS,
    tol: float = 1e-9,
) -> GateUnitary:
    """Read a one-qubit gate off the output<-input block of ``s``.

    Raises :class:`ReflectionTooLarge` unless the input<-input block vanishes
    (no wave returns to either input wire), and ``NotUnitary`` if the
    transmission block is not unitary to 1e-8.
    """
    refl = s.block(input_ports, input_ports)
    norm = float(np.max(np.abs(refl)))
    if norm >= tol:
        raise ReflectionTooLarge(norm, tol)
    block = s.block(output_ports, input_ports)
    return GateUnitary(block, name=f"network@k={s.wavenumber:.6g}", tol=1e-8)


def mixing_gate(branch: int = +1) -> GateUnitary:
    """Closed-form mixing gate ``(1/sqrt2) [[±i, -1], [-1, ±i]]``.

    ``branch=+1`` is the kl = pi/2 realisation, ``branch=-1`` the kl = 3pi/2 one.
    """
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    d = branch * 1j
    return GateUnitary(SQRT1_2 * np.array([[d, -1], [-1, d]]), name="mixing" if branch == 1 else "mixing(3pi/2)")


def mixing_gate_from_network(kl: float = math.pi / 2, z_ratio: float = MATCHED_Z_RATIO, tol: float = 1e-9) -> GateUnitary:
    net = build_mixing_network(z_ratio, 1.0)
    return extract_two_port_unitary(full_smatrix(net, kl), MIXING_INPUTS, MIXING_OUTPUTS, tol)


# ---------------------------------------------------------------------------
# Phase and Hadamard
# ---------------------------------------------------------------------------


def phase_shift_gate(phi: float) -> GateUnitary:
    """``diag(1, exp(i*phi))``.

    A pair of uncoupled wires of lengths ``l0`` and ``l1`` gives this gate with
    ``phi = k*(l1 - l0)`` times the global phase ``exp(i*k*l0)``, which is dropped.
    """
    return GateUnitary(np.diag([1.0, cmath.exp(1j * phi)]), name=f"phase({phi:.6g})")


def hadamard_gate() -> GateUnitary:
    return GateUnitary(SQRT1_2 * np.array([[1, 1], [1, -1]]), name="hadamard")


def hadamard_composed(u_mix: GateUnitary = None) -> GateUnitary:
    """``-i * U(3pi/2) @ U_mix @ U(3pi/2)``; equals the Hadamard gate to 1e-12."""
    if u_mix is None:
        u_mix = mixing_gate()
    p = phase_shift_gate(3 * math.pi / 2).matrix
    m = -1j * p @ u_mix.matrix @ p
    residual = float(np.max(np.abs(m - hadamard_gate().matrix)))
    if residual > 1e-12:
        raise AssertionError(f"composed Hadamard deviates by {residual:.3e}")
    return GateUnitary(m, name="hadamard(composed)", metadata={"residual": residual})


def hadamard_from_network() -> GateUnitary:
    """Hadamard built from the solved mixing network and two 3pi/2 phase shifters."""
    return hadamard_composed(mixing_gate_from_network())


# ---------------------------------------------------------------------------
# Wire permutations
# ---------------------------------------------------------------------------


def crossing_length_delta(k: float) -> float:
    """Extra length of the crossed wires so that ``k * delta = 2*pi`` cancels their phase."""
    return 2 * math.pi / k


def _parse_label(label: str, num_qubits: int) -> int:
    bits = label.strip("|⟩>")
    if len(bits) != num_qubits or set(bits) - {"0", "1"}:
        raise ValueError(f"{label!r} is not a {num_qubits}-qubit basis label")
    return int(bits, 2)


def permutation_gate(num_qubits: int, swaps: Iterable[tuple], name: str = "") -> GateUnitary:
    """Exchange the listed pairs of basis wires, leave all others in place."""
    if num_qubits < 1:
        raise ValueError("num_qubits must be >= 1")
    dim = 2**num_qubits
    perm = list(range(dim))
    used = set()
    pairs = []
    for a, b in swaps:
        i, j = _parse_label(a, num_qubits), _parse_label(b, num_qubits)
        if i == j or i in used or j in used:
            raise ValueError(f"swap pairs must be disjoint and distinct, got {a!r}, {b!r}")
        used |= {i, j}
        perm[i], perm[j] = j, i
        pairs.append((format(i, f"0{num_qubits}b"), format(j, f"0{num_qubits}b")))
    m = np.zeros((dim, dim))
    m[perm, range(dim)] = 1.0
    meta = {"swapped": tuple(pairs), "crossed_wire_phase": 2 * math.pi if pairs else 0.0}
    return GateUnitary(m, name=name or "permutation", metadata=meta)


def not_gate() -> GateUnitary:
    return permutation_gate(1, [("0", "1")], "not")


def cnot_gate() -> GateUnitary:
    return permutation_gate(2, [("10", "11")], "cnot")


def swap_gate() -> GateUnitary:
    return permutation_gate(2, [("01", "10")], "swap")


def toffoli_gate() -> GateUnitary:
    return permutation_gate(3, [("110", "111")], "toffoli")


def fredkin_gate() -> GateUnitary:
    return permutation_gate(3, [("101", "110")], "fredkin")


# ---------------------------------------------------------------------------
# Algebra
# ---------------------------------------------------------------------------


def compose(a: GateUnitary, b: GateUnitary) -> GateUnitary:
    """``b`` applied after ``a``, i.e. the matrix product ``b @ a``."""
    if a.dimension != b.dimension:
        raise ValueError(f"dimension mismatch: {a.dimension} vs {b.dimension}")
    return GateUnitary(b.matrix @ a.matrix, name=f"{b.name}*{a.name}")


def tensor(a: GateUnitary, b: GateUnitary) -> GateUnitary:
    """``a`` on the leading (most significant) qubits, ``b`` on the trailing ones."""
    return GateUnitary(np.kron(a.matrix, b.matrix), name=f"{a.name}(x){b.name}")


def embed(gate: GateUnitary, target_qubits: Sequence[int], num_qubits: int) -> GateUnitary:
    """Lift ``gate`` to ``num_qubits`` qubits, acting on ``target_qubits`` in the given order."""
    targets = list(target_qubits)
    if len(targets) != gate.num_qubits:
        raise ValueError(f"{gate.num_qubits}-qubit gate needs {gate.num_qubits} targets, got {targets}")
    if len(set(targets)) != len(targets) or not all(0 <= t < num_qubits for t in targets):
        raise ValueError(f"targets {targets} must be distinct and within 0..{num_qubits - 1}")
    full = apply_on_qubits(gate.matrix, np.eye(2**num_qubits, dtype=complex), targets, num_qubits)
    return GateUnitary(full, name=f"{gate.name}@{targets}", metadata=dict(gate.metadata))


def equal_up_to_phase(a, b, tol: float = 1e-9) -> bool:
    """True if ``a = lam * b`` for some unimodular ``lam`` (max-norm below ``tol``)."""
    ma = a.matrix if isinstance(a, GateUnitary) else np.asarray(a)
    mb = b.matrix if isinstance(b, GateUnitary) else np.asarray(b)
    if ma.shape != mb.shape:
        return False
    overlap = np.vdot(mb, ma)
    lam = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return bool(np.max(np.abs(ma - lam * mb)) < tol)


CATALOG = ("mixing", "phase:<phi>", "hadamard", "not", "cnot", "swap", "toffoli", "fredkin")

_NAMED = {
    "mixing": mixing_gate,
    "hadamard": hadamard_gate,
    "not": not_gate,
    "cnot": cnot_gate,
    "swap": swap_gate,
    "toffoli": toffoli_gate,
    "fredkin": fredkin_gate,
}


def gate_by_name(name: str) -> GateUnitary:
    """Look up ``mixing``, ``hadamard``, ``not``, ``cnot``, ``swap``, ``toffoli``,
    ``fredkin`` or ``phase:<phi>`` (phi in radians)."""
    name = name.strip().lower()
    if name.startswith("phase:"):
        try:
            phi = float(name.split(":", 1)[1])
        except ValueError:
            raise KeyError(name) from None
        return phase_shift_gate(phi)
    if name not in _NAMED:
        raise KeyError(name)
    return _NAMED[name]()
