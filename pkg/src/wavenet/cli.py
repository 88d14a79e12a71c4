"""Command-line front end.

    wavenet sweep NETWORK --k-min 0.01 --k-max 6.27 --steps 512 --inject in0 --out sweep.csv
    wavenet gate hadamard --tol 1e-9
    wavenet shor --n 15 --a 11 --mode compiled --out result.json
    wavenet evolve --cells 1024 --steps 10000 --k-mode 8 --out energy.csv

Exit codes: 0 success, 2 usage or parse error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import dirac, gates, netfile, scattering, shor
from .core import unitarity_residual
from .errors import Inconclusive, NetworkError, NotUnitary, OddPeriod, ReflectionTooLarge, SolverDegenerate, TrivialFactor

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _err(msg: str) -> None:
    print(f"wavenet: {msg}", file=sys.stderr)


def _load(source: str):
    path = Path(source)
    if not path.exists() and source in netfile.BUNDLED:
        path = netfile.bundled_network_path(source)
    if not path.exists():
        raise NetworkError(f"no such network file: {source}")
    return netfile.load_network(path)


def cmd_sweep(args) -> int:
    try:
        net = _load(args.network)
        inject = args.inject or net.ports[0].id
        net.port(inject)
    except (NetworkError, KeyError, IndexError) as exc:
        _err(f"cannot use network {args.network!r}: {exc}")
        return EXIT_USAGE
    try:
        table = scattering.sweep(net, args.k_min, args.k_max, args.steps, inject)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    _emit(table.to_csv(), args.out)
    if table.gaps:
        _err("degenerate system at k = " + ", ".join(format(k, ".17g") for k in table.gaps))
        return EXIT_NUMERIC
    return EXIT_OK


def _format_matrix(m: np.ndarray) -> str:
    def cell(z):
        re = 0.0 if abs(z.real) < 5e-13 else z.real
        im = 0.0 if abs(z.imag) < 5e-13 else z.imag
        return f"{re:+.6f}{im:+.6f}j"

    return "\n".join("  [" + ", ".join(cell(z) for z in row) + "]" for row in m)


def cmd_gate(args) -> int:
    try:
        gate = gates.gate_by_name(args.name)
    except KeyError:
        _err(f"unknown gate {args.name!r}; catalog: {', '.join(gates.CATALOG)}")
        return EXIT_USAGE
    residuals = {"unitarity": unitarity_residual(gate.matrix)}
    try:
        if args.name == "mixing":
            net_gate = gates.mixing_gate_from_network()
            residuals["network_vs_closed_form"] = float(np.max(np.abs(net_gate.matrix - gate.matrix)))
        elif args.name == "hadamard":
            composed = gates.hadamard_from_network()
            residuals["network_vs_closed_form"] = float(np.max(np.abs(composed.matrix - gate.matrix)))
    except (SolverDegenerate, ReflectionTooLarge, NotUnitary) as exc:
        _err(str(exc))
        return EXIT_NUMERIC
    print(f"gate {args.name} ({gate.num_qubits} qubit{'s' if gate.num_qubits > 1 else ''})")
    print("basis: " + " ".join(gate.basis_labels))
    print(_format_matrix(gate.matrix))
    ok = True
    for key, value in residuals.items():
        print(f"{key}_residual = {value:.3e}")
        ok &= value < args.tol
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_shor(args) -> int:
    try:
        result = shor.run_full_pipeline(
            args.n, args.a, args.mode, num_register=args.register, samples=args.samples, seed=args.seed
        )
    except (OddPeriod, TrivialFactor, Inconclusive) as exc:
        _err(f"{exc} (retry with a different --a)")
        return EXIT_NUMERIC
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    payload = {
        "N": result.N,
        "a": result.a,
        "n": result.n,
        "m": result.m,
        "register_marginal": {str(y): p for y, p in result.register_marginal.items()},
        "r": result.r,
        "factors": list(result.factors),
        "retries": result.retries,
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_evolve(args) -> int:
    try:
        config = dirac.EvolutionConfig.from_cfl(args.cells, args.steps, length=args.length, cfl=args.cfl)
        state = dirac.initialize_plane_wave(config, args.k_mode, args.direction)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    samples = dirac.energy_samples(state, config, every=args.every)
    _emit(dirac.energy_csv(samples), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wavenet", description="Transmission-line networks as quantum gates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sweep", help="k sweep of reflection/transmission for a network file")
    s.add_argument("network", help="network JSON file, or one of: " + ", ".join(netfile.BUNDLED))
    s.add_argument("--k-min", type=float, default=0.01)
    s.add_argument("--k-max", type=float, default=2 * math.pi - 0.01)
    s.add_argument("--steps", type=int, default=512)
    s.add_argument("--inject", default=None, help="port id to inject at (default: first port)")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_sweep)

    g = sub.add_parser("gate", help="print a catalog gate and its residuals")
    g.add_argument("name", help="one of: " + ", ".join(gates.CATALOG))
    g.add_argument("--tol", type=float, default=1e-9)
    g.set_defaults(func=cmd_gate)

    h = sub.add_parser("shor", help="period finding and factorisation")
    h.add_argument("--n", type=int, required=True, help="number to factor")
    h.add_argument("--a", type=int, required=True, help="base coprime to N")
    h.add_argument("--mode", choices=("reference", "compiled"), default="reference")
    h.add_argument("--register", type=int, default=None, help="register qubits (default: ancilla count)")
    h.add_argument("--samples", type=int, default=None)
    h.add_argument("--seed", type=int, default=None)
    h.add_argument("--out", default=None)
    h.set_defaults(func=cmd_shor)

    e = sub.add_parser("evolve", help="time-domain plane-wave run with energy diagnostics")
    e.add_argument("--cells", type=int, default=1024)
    e.add_argument("--steps", type=int, default=10000)
    e.add_argument("--k-mode", type=int, default=8)
    e.add_argument("--cfl", type=float, default=0.5)
    e.add_argument("--length", type=float, default=1.0)
    e.add_argument("--direction", type=int, choices=(1, -1), default=1)
    e.add_argument("--every", type=int, default=100)
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_evolve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
