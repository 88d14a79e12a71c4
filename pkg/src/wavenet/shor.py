"""Period finding for Shor's algorithm: statevector reference, compiled N=15 circuit,
and the classical pre/post-processing.

Qubit order is register first, then ancilla, most significant bit first.  For
N = 15 the six qubits are ``(n1, n2, m1, m2, m3, m4)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import GateUnitary, Statevector
from .errors import Inconclusive, OddPeriod, TrivialFactor
from .gates import cnot_gate, hadamard_composed, hadamard_from_network, hadamard_gate

__all__ = [
    "ShorInstance",
    "PeriodResult",
    "mod_exp",
    "euclid_gcd",
    "brute_force_period",
    "inverse_qft",
    "modexp_permutation",
    "reference_period_finding",
    "register_marginal",
    "compiled_shor_15_11",
    "COMPILED_QUBITS",
    "FIXED_QUBITS",
    "uncompile",
    "extract_period",
    "factor_from_period",
    "run_full_pipeline",
]


def mod_exp(a: int, x: int, N: int) -> int:
    """``a**x mod N`` by square-and-multiply."""
    if N < 2 or x < 0:
        raise ValueError("need N >= 2 and x >= 0")
    result, base = 1 % N, a % N
    while x:
        if x & 1:
            result = result * base % N
        base = base * base % N
        x >>= 1
    return result


def euclid_gcd(a: int, b: int) -> int:
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def brute_force_period(a: int, N: int) -> int:
    """Smallest r > 0 with a**r = 1 (mod N), by walking the cycle."""
    if euclid_gcd(a, N) != 1:
        raise ValueError(f"{a} and {N} are not coprime")
    value, r = a % N, 1
    while value != 1 % N:
        value = value * a % N
        r += 1
    return r


@dataclass(frozen=True)
class ShorInstance:
    N: int
    a: int
    num_register: Optional[int] = None
    num_ancilla: int = field(init=False)

    def __post_init__(self):
        N, a = self.N, self.a
        if N < 3 or N % 2 == 0 or _is_prime(N):
            raise ValueError(f"N={N} must be an odd composite >= 3")
        if not 0 < a < N:
            raise ValueError(f"a={a} must satisfy 0 < a < N")
        if euclid_gcd(a, N) != 1:
            raise ValueError(f"gcd({a}, {N}) != 1; a already shares a factor with N")
        m = (N - 1).bit_length()  # minimal m with 2**(m-1) < N <= 2**m
        object.__setattr__(self, "num_ancilla", m)
        if self.num_register is None:
            object.__setattr__(self, "num_register", m)
        if self.num_register < 1:
            raise ValueError("num_register must be >= 1")

    @property
    def n(self) -> int:
        return self.num_register

    @property
    def m(self) -> int:
        return self.num_ancilla


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class PeriodResult:
    r: int
    measured_ys: tuple
    factors: Optional[tuple] = None
    N: Optional[int] = None
    a: Optional[int] = None
    n: Optional[int] = None
    m: Optional[int] = None
    register_marginal: Optional[dict] = None
    retries: int = 0


# ---------------------------------------------------------------------------
# Quantum part
# ---------------------------------------------------------------------------


def inverse_qft(num_qubits: int) -> GateUnitary:
    """Entry ``(y, x) = 2**(-n/2) * exp(-2j*pi*x*y / 2**n)`` (no qubit reversal)."""
    if num_qubits < 1:
        raise ValueError("num_qubits must be >= 1")
    dim = 2**num_qubits
    idx = np.arange(dim)
    m = np.exp(-2j * np.pi * np.outer(idx, idx) / dim) / math.sqrt(dim)
    return GateUnitary(m, name=f"iqft{num_qubits}")


def modexp_permutation(instance: ShorInstance) -> np.ndarray:
    """Index map ``|x>|w> -> |x>|w * a**x mod N>`` for ``w < N``, identity for ``w >= N``."""
    n, m, N = instance.n, instance.m, instance.N
    target = np.arange(2 ** (n + m))
    for x in range(2**n):
        ax = mod_exp(instance.a, x, N)
        base = x << m
        for w in range(N):
            target[base + w] = base + (w * ax) % N
    return target


def _apply_register_hadamards(amps: np.ndarray, n: int, m: int) -> np.ndarray:
    h = hadamard_gate().matrix
    psi = amps.reshape([2] * (n + m))
    for q in range(n):
        psi = np.moveaxis(np.tensordot(h, psi, axes=([1], [q])), 0, q)
    return psi.reshape(-1)


def reference_period_finding(instance: ShorInstance, stop_before_qft: bool = False) -> Statevector:
    """Statevector of ``n + m`` qubits after Hadamards, modular exponentiation and inverse QFT."""
    n, m = instance.n, instance.m
    if n + m > 20:
        raise ValueError(f"{n + m} qubits is beyond the dense-statevector budget of 20")
    amps = np.zeros(2 ** (n + m), dtype=complex)
    amps[1] = 1.0  # |0...0>|0...01>
    amps = _apply_register_hadamards(amps, n, m)
    perm = modexp_permutation(instance)
    moved = np.zeros_like(amps)
    moved[perm] = amps
    if stop_before_qft:
        return Statevector(moved)
    psi = moved.reshape(2**n, 2**m)
    return Statevector((inverse_qft(n).matrix @ psi).reshape(-1))


def register_marginal(state: Statevector, n: int) -> np.ndarray:
    """Probability of each register value ``y`` (first ``n`` qubits)."""
    return state.marginal(list(range(n)))


# Compiled N=15, a=11 circuit: qubits (n1, m1, m3) of the six-qubit register.
# Input wire order: c0 carries the low register bit x0 (which leaves the inverse
# QFT as the high output bit y1 = n1, the two register wires being exchanged),
# c1 = m1, c2 = m3.  n2, m2 and m4 never change and are fixed at 0, 0, 1.
COMPILED_QUBITS = (0, 2, 4)
FIXED_QUBITS = {1: 0, 3: 0, 5: 1}


def compiled_shor_15_11(use_network: bool = True) -> Statevector:
    """Three-qubit compiled period-finding circuit for N = 15, a = 11.

    ``H(c0); CNOT(c0 -> c1); CNOT(c0 -> c2); H(c0)`` on ``|000>``.  The two CNOTs
    add 11 = 0b1011 to the ancilla when x0 = 1 (only m1 and m3 flip); the final
    Hadamard is what is left of the inverse QFT once the idle register qubit is
    removed.  Hadamards are realised as ``-i U(3pi/2) U_mix U(3pi/2)``, with
    ``U_mix`` read off the solved bridge network when ``use_network`` is set.
    """
    h = hadamard_from_network() if use_network else hadamard_composed()
    cx = cnot_gate()
    state = Statevector.from_label("000")
    state = state.apply(h, [0])
    state = state.apply(cx, [0, 1])
    state = state.apply(cx, [0, 2])
    state = state.apply(h, [0])
    return state


def uncompile(compiled: Statevector) -> Statevector:
    """Re-insert the idle qubits n2 = 0, m2 = 0, m4 = 1 into the compiled three-qubit state."""
    amps = np.zeros(64, dtype=complex)
    for idx, amp in enumerate(compiled.amplitudes):
        bits = [0] * 6
        for pos, q in enumerate(COMPILED_QUBITS):
            bits[q] = (idx >> (2 - pos)) & 1
        for q, b in FIXED_QUBITS.items():
            bits[q] = b
        amps[int("".join(map(str, bits)), 2)] = amp
    return Statevector(amps)


# ---------------------------------------------------------------------------
# Classical part
# ---------------------------------------------------------------------------


def extract_period(measured_ys: Sequence[int], n: int) -> int:
    """Smallest r with ``r*y / 2**n`` integral for every measured ``y``."""
    size = 2**n
    r = 1
    informative = False
    for y in measured_ys:
        if not 0 <= y < size:
            raise ValueError(f"y={y} outside 0..{size - 1}")
        if y == 0:
            continue
        informative = True
        ry = size // euclid_gcd(y, size)
        r = r * ry // euclid_gcd(r, ry)
    if not informative:
        raise Inconclusive("only y = 0 was measured; more samples are needed")
    return r


def factor_from_period(instance: ShorInstance, r: int) -> tuple:
    """Nontrivial factors from ``gcd(a**(r/2) -/+ 1, N)``."""
    N, a = instance.N, instance.a
    if mod_exp(a, r, N) != 1:
        raise ValueError(f"a**r mod N != 1 for a={a}, r={r}, N={N}")
    if r % 2:
        raise OddPeriod(N, a, r)
    half = mod_exp(a, r // 2, N)
    found = {g for g in (euclid_gcd(half - 1, N), euclid_gcd(half + 1, N)) if 1 < g < N}
    if not found:
        raise TrivialFactor(N, a, r)
    p = min(found)
    return tuple(sorted((p, N // p)))


def run_full_pipeline(
    N: int,
    a: int,
    mode: str = "reference",
    *,
    num_register: Optional[int] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    max_retries: int = 10,
) -> PeriodResult:
    """Quantum period finding followed by classical factor extraction.

    ``mode="compiled"`` runs the three-qubit circuit (only N=15, a=11, n=2).
    By default the measured values are the exact support of the register
    distribution; pass ``samples`` (and ``seed``) to draw measurements instead,
    in which case an all-zero draw is retried up to ``max_retries`` times.
    """
    if mode == "compiled":
        if (N, a) != (15, 11) or num_register not in (None, 2):
            raise ValueError("compiled mode exists only for N=15, a=11 with a 2-qubit register")
        instance = ShorInstance(15, 11, num_register=2)
        state = uncompile(compiled_shor_15_11())
    elif mode == "reference":
        instance = ShorInstance(N, a, num_register=num_register)
        state = reference_period_finding(instance)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    n = instance.n
    probs = register_marginal(state, n)
    marginal = {int(y): float(p) for y, p in enumerate(probs) if p > 1e-12}
    retries = 0
    if samples is None:
        ys = tuple(sorted(marginal))
        r = extract_period(ys, n)
    else:
        rng = np.random.default_rng(seed)
        p = probs / probs.sum()
        while True:
            ys = tuple(int(y) for y in rng.choice(len(p), size=samples, p=p))
            try:
                r = extract_period(ys, n)
                break
            except Inconclusive:
                retries += 1
                if retries > max_retries:
                    raise
    if mod_exp(a, r, N) != 1:
        raise Inconclusive(f"candidate r={r} does not satisfy a**r = 1 mod {N}; period does not divide 2**{n}")
    factors = factor_from_period(instance, r)
    return PeriodResult(
        r=r,
        measured_ys=ys,
        factors=factors,
        N=N,
        a=a,
        n=n,
        m=instance.m,
        register_marginal=marginal,
        retries=retries,
    )
