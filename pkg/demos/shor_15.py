"""
Factoring 15
============

Period finding for N = 15 with base a = 11, first with the full register and
ancilla statevector, then with the three-qubit compiled circuit whose
Hadamards come from the line network.
"""

import numpy as np

from wavenet.errors import TrivialFactor
from wavenet.shor import (
    ShorInstance,
    compiled_shor_15_11,
    reference_period_finding,
    register_marginal,
    run_full_pipeline,
    uncompile,
)

inst = ShorInstance(15, 11, num_register=2)
print(f"register qubits n={inst.n}, ancilla qubits m={inst.m}")


def show(state):
    return {label: complex(np.round(amp, 6)) for label, amp in state.terms().items()}

###############################################################################
# State before and after the inverse QFT (register first, most significant bit
# first).

before = reference_period_finding(inst, stop_before_qft=True)
after = reference_period_finding(inst)
print("before:", show(before))
print("after: ", show(after))
print("register distribution:", np.round(register_marginal(after, inst.n), 6))

###############################################################################
# The compiled circuit keeps only the three qubits that change.

small = compiled_shor_15_11()
print("compiled:", show(small))
print("expanded matches:", np.allclose(uncompile(small).amplitudes, after.amplitudes, atol=1e-9))

###############################################################################
# End to end, for every base that is coprime to 15.

for a in (2, 4, 7, 8, 11, 13, 14):
    try:
        res = run_full_pipeline(15, a)
        print(f"a={a:2d}: r={res.r}, factors={res.factors}")
    except TrivialFactor as exc:
        print(f"a={a:2d}: {type(exc).__name__}: {exc}")
