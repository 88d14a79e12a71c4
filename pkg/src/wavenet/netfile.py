"""JSON network descriptions.

A file looks like::

    {
      "nodes": ["A", "B"],
      "segments": [{"id": "s", "from": "A", "to": "B", "impedance": 1.0, "length": 1.0}],
      "ports": [{"id": "in", "node": "A", "impedance": 1.0, "role": "input", "label": "0"}]
    }

Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Union

from .core import NetworkGraph, Port, Segment
from .errors import NetworkError

_TOP_KEYS = {"nodes", "segments", "ports"}
_SEGMENT_KEYS = {"id", "from", "to", "impedance", "length"}
_PORT_REQUIRED = {"id", "node", "impedance"}
_PORT_KEYS = _PORT_REQUIRED | {"role", "label"}

BUNDLED = ("mixing", "yjunction", "straight")


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise NetworkError(f"{where} must be a number, got {value!r}")
    return float(value)


def _check_keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise NetworkError(f"{where} must be an object")
    extra = set(obj) - allowed
    if extra:
        raise NetworkError(f"unknown keys in {where}: {sorted(extra)}")
    missing = required - set(obj)
    if missing:
        raise NetworkError(f"missing keys in {where}: {sorted(missing)}")


def network_from_dict(data: dict) -> NetworkGraph:
    _check_keys(data, _TOP_KEYS, {"nodes"}, "network")
    nodes = data["nodes"]
    if not isinstance(nodes, list) or not all(isinstance(n, str) for n in nodes):
        raise NetworkError("'nodes' must be an array of strings")
    segments = []
    for i, s in enumerate(data.get("segments", [])):
        where = f"segments[{i}]"
        _check_keys(s, _SEGMENT_KEYS, _SEGMENT_KEYS, where)
        segments.append(
            Segment(
                id=str(s["id"]),
                from_node=s["from"],
                to_node=s["to"],
                impedance=_number(s["impedance"], where + ".impedance"),
                length=_number(s["length"], where + ".length"),
            )
        )
    ports = []
    for i, p in enumerate(data.get("ports", [])):
        where = f"ports[{i}]"
        _check_keys(p, _PORT_KEYS, _PORT_REQUIRED, where)
        label = p.get("label")
        ports.append(
            Port(
                id=str(p["id"]),
                node=p["node"],
                impedance=_number(p["impedance"], where + ".impedance"),
                role=p.get("role", "input"),
                label=None if label is None else str(label),
            )
        )
    return NetworkGraph(nodes=nodes, segments=segments, ports=ports)


def network_to_dict(net: NetworkGraph) -> dict:
    return {
        "nodes": list(net.nodes),
        "segments": [
            {"id": s.id, "from": s.from_node, "to": s.to_node, "impedance": s.impedance, "length": s.length}
            for s in net.segments
        ],
        "ports": [
            {"id": p.id, "node": p.node, "impedance": p.impedance, "role": p.role, "label": p.label}
            for p in net.ports
        ],
    }


def load_network(path: Union[str, Path]) -> NetworkGraph:
    """Read a network file; JSON syntax errors surface as :class:`NetworkError`."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise NetworkError(f"{path}: invalid JSON ({exc})") from exc
    return network_from_dict(data)


def save_network(net: NetworkGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(network_to_dict(net), indent=2) + "\n")


def bundled_network_path(name: str) -> Path:
    """Path of one of the fixture networks shipped with the package."""
    if name not in BUNDLED:
        raise KeyError(f"no bundled network {name!r}; choose from {BUNDLED}")
    return Path(str(resources.files("wavenet") / "data" / f"{name}.json"))


def bundled_network(name: str) -> NetworkGraph:
    return load_network(bundled_network_path(name))
