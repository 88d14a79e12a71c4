"""Frequency-domain scattering on networks of transmission lines.

Every segment carries a forward and a backward voltage wave, referred to its
``from_node`` end::

    V(x) = F exp(ikx) + B exp(-ikx),    I(x) = (F exp(ikx) - B exp(-ikx)) / Z

Every port is a semi-infinite lead with a known incoming wave ``a`` and an unknown
outgoing wave ``b`` (``V = a + b``, current into the node ``(a - b)/Z``).  A node of
degree ``d`` contributes ``d - 1`` voltage-continuity equations and one current
conservation equation, which makes the system square.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import NetworkGraph, ScatteringSolution
from .errors import NetworkError, SolverDegenerate

__all__ = [
    "LinearSystem",
    "SMatrix",
    "SweepTable",
    "assemble",
    "solve",
    "full_smatrix",
    "sweep",
    "CONDITION_LIMIT",
]

CONDITION_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """``matrix @ x = rhs``; ``rhs`` is for unit incident current at ``injected_port``."""

    matrix: np.ndarray
    rhs: np.ndarray
    unknown_labels: tuple
    injected_port: Optional[str] = None

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class SMatrix:
    """Scattering matrix in power-normalised waves ``a_p = V_p / sqrt(Z_p)``.

    ``entries[q, p]`` is the outgoing wave at port ``q`` for unit incident wave at ``p``.
    """

    ports: tuple
    entries: np.ndarray
    wavenumber: float

    def block(self, rows: Sequence[str], cols: Sequence[str]) -> np.ndarray:
        r = [self.ports.index(p) for p in rows]
        c = [self.ports.index(p) for p in cols]
        return self.entries[np.ix_(r, c)]

    def unitarity_residual(self) -> float:
        s = self.entries
        return float(np.max(np.abs(s.conj().T @ s - np.eye(s.shape[0]))))

    def reciprocity_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.T)))


def _unknown_layout(net: NetworkGraph):
    labels = []
    seg_index = {}
    for s in net.segments:
        seg_index[s.id] = len(labels)
        labels += [f"{s.id}:forward", f"{s.id}:backward"]
    port_index = {}
    for p in net.ports:
        port_index[p.id] = len(labels)
        labels.append(f"{p.id}:outgoing")
    return labels, seg_index, port_index


def _assemble_matrix(net: NetworkGraph, k: float):
    """System matrix plus, per port, the rhs produced by a unit incident voltage wave."""
    labels, seg_index, port_index = _unknown_layout(net)
    n = len(labels)
    nports = len(net.ports)

    # terminal: (voltage coefficients, current-into-node coefficients,
    #            incoming-wave port column or None)
    terminals = {node: [] for node in net.nodes}
    for s in net.segments:
        f, b = seg_index[s.id], seg_index[s.id] + 1
        e = np.exp(1j * k * s.length)
        terminals[s.from_node].append(({f: 1.0, b: 1.0}, {f: -1.0 / s.impedance, b: 1.0 / s.impedance}, None, None))
        terminals[s.to_node].append(({f: e, b: 1.0 / e}, {f: e / s.impedance, b: -1.0 / (e * s.impedance)}, None, None))
    for j, p in enumerate(net.ports):
        o = port_index[p.id]
        terminals[p.node].append(({o: 1.0}, {o: -1.0 / p.impedance}, j, p.impedance))

    A = np.zeros((n, n), dtype=complex)
    # incoming-wave contributions move to the right-hand side, one column per port
    B = np.zeros((n, nports), dtype=complex)
    row = 0
    for node in net.nodes:
        terms = terminals[node]
        if not terms:
            raise NetworkError(f"node {node!r} has degree 0")
        v0, _, src0, _ = terms[0]
        for v, _, src, _ in terms[1:]:
            for col, c in v.items():
                A[row, col] += c
            for col, c in v0.items():
                A[row, col] -= c
            # incoming wave adds +1 to the terminal voltage
            if src is not None:
                B[row, src] -= 1.0
            if src0 is not None:
                B[row, src0] += 1.0
            row += 1
        for _, cur, src, z in terms:
            for col, c in cur.items():
                A[row, col] += c
            if src is not None:
                B[row, src] -= 1.0 / z
        row += 1
    if row != n:  # pragma: no cover - guaranteed by the counting rule
        raise AssertionError(f"{row} equations for {n} unknowns")
    return A, B, labels, seg_index, port_index


def _check_condition(A: np.ndarray, k: float) -> None:
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SolverDegenerate(k, float(cond))


def assemble(network: NetworkGraph, k: float, injected_port: Optional[str] = None) -> LinearSystem:
    """Build the Kirchhoff system at wavenumber ``k``.

    The right-hand side corresponds to a unit incident current at ``injected_port``
    (the first port when omitted; zero when the network has no ports).
    """
    A, B, labels, _, _ = _assemble_matrix(network, float(k))
    if network.ports:
        pid = injected_port if injected_port is not None else network.ports[0].id
        j = network.port_index(pid)
        rhs = B[:, j] * network.ports[j].impedance
    else:
        pid, rhs = None, np.zeros(len(labels), dtype=complex)
    return LinearSystem(matrix=A, rhs=rhs, unknown_labels=tuple(labels), injected_port=pid)


def solve(network: NetworkGraph, k: float, injected_port: str) -> ScatteringSolution:
    """Reflection and transmission current ratios for unit current injected at one port."""
    k = float(k)
    A, B, _, seg_index, port_index = _assemble_matrix(network, k)
    _check_condition(A, k)
    j = network.port_index(injected_port)
    z_in = network.ports[j].impedance
    # incident current 1 means incident voltage wave z_in
    x = np.linalg.solve(A, B[:, j] * z_in)
    out = {p.id: x[port_index[p.id]] / p.impedance for p in network.ports}
    return ScatteringSolution(
        wavenumber=k,
        injected_port=injected_port,
        reflection=complex(out.pop(injected_port)),
        transmissions={pid: complex(v) for pid, v in out.items()},
        segment_amplitudes={
            s.id: (complex(x[seg_index[s.id]]), complex(x[seg_index[s.id] + 1])) for s in network.segments
        },
        port_impedances={p.id: p.impedance for p in network.ports},
    )


def full_smatrix(network: NetworkGraph, k: float) -> SMatrix:
    """Power-normalised S-matrix, one column per injection port."""
    k = float(k)
    A, B, _, _, port_index = _assemble_matrix(network, k)
    _check_condition(A, k)
    X = np.linalg.solve(A, B)
    z = np.array([p.impedance for p in network.ports])
    outgoing = X[[port_index[p.id] for p in network.ports], :]
    # column p: unit incident voltage wave at p, i.e. power wave 1/sqrt(Z_p)
    S = outgoing / np.sqrt(z)[:, None] * np.sqrt(z)[None, :]
    return SMatrix(ports=tuple(network.port_ids), entries=S, wavenumber=k)


# ---------------------------------------------------------------------------
# k sweeps
# ---------------------------------------------------------------------------


def _wrap_angle(z: complex) -> float:
    a = math.atan2(z.imag, z.real)
    return math.pi if a == -math.pi else a


@dataclass(frozen=True, eq=False)
class SweepTable:
    """Sweep over ``k``; rows with a degenerate system are kept as NaN gaps."""

    k: np.ndarray
    transmission_ports: tuple
    transmissions: np.ndarray  # (len(k), len(transmission_ports)), complex
    reflection: np.ndarray
    power_balance: np.ndarray
    gaps: tuple

    def header(self) -> list:
        cols = ["k"]
        for i in range(1, len(self.transmission_ports) + 1):
            cols += [f"abs_T{i}", f"arg_T{i}"]
        return cols + ["abs_R", "arg_R"]

    def rows(self) -> list:
        out = []
        for i, k in enumerate(self.k):
            if np.isnan(self.reflection[i]):
                out.append((float(k),) + (None,) * (len(self.header()) - 1))
                continue
            row = [float(k)]
            for t in self.transmissions[i]:
                row += [abs(t), _wrap_angle(t)]
            r = self.reflection[i]
            row += [abs(r), _wrap_angle(r)]
            out.append(tuple(row))
        return out

    def to_csv(self, fh=None) -> str:
        """Write CSV (17 significant digits, angles in radians); returns the text."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header())
        for row in self.rows():
            w.writerow(["" if v is None else format(v, ".17g") for v in row])
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text


def _thread_cap() -> int:
    raw = os.environ.get("WAVENET_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def sweep(
    network: NetworkGraph,
    k_min: float,
    k_max: float,
    steps: int,
    injected_port: str,
    *,
    ks: Optional[np.ndarray] = None,
    threads: Optional[int] = None,
) -> SweepTable:
    """Solve at ``steps`` evenly spaced wavenumbers in ``[k_min, k_max]``.

    Transmission columns follow the port declaration order, skipping the injected port.
    ``WAVENET_THREADS`` caps the worker count; row order never depends on it.
    """
    if ks is None:
        if steps < 2 or not k_min < k_max:
            raise ValueError("need steps >= 2 and k_min < k_max")
        ks = np.linspace(k_min, k_max, steps)
    ks = np.asarray(ks, dtype=float)
    network.port(injected_port)
    others = tuple(p.id for p in network.ports if p.id != injected_port)

    def one(k):
        try:
            return solve(network, k, injected_port)
        except SolverDegenerate:
            return None

    workers = threads if threads is not None else _thread_cap()
    if workers > 1 and len(ks) > 16:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            sols = list(pool.map(one, ks))
    else:
        sols = [one(k) for k in ks]

    T = np.full((len(ks), len(others)), np.nan + 0j)
    R = np.full(len(ks), np.nan + 0j)
    P = np.full(len(ks), np.nan)
    gaps = []
    for i, sol in enumerate(sols):
        if sol is None:
            gaps.append(float(ks[i]))
            continue
        T[i] = [sol.transmissions[p] for p in others]
        R[i] = sol.reflection
        P[i] = sol.power_balance()
    return SweepTable(
        k=ks, transmission_ports=others, transmissions=T, reflection=R, power_balance=P, gaps=tuple(gaps)
    )
