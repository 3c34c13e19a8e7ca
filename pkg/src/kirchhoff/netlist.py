"""JSON netlist documents and deterministic serialization.

A netlist looks like::

    {
      "nodes": [{"id": "1", "kind": "boundary"}, {"id": "2", "kind": "internal"}],
      "edges": [{"id": "e1", "tail": "1", "head": "2",
                 "element": {"type": "resistor", "value": 1.0}}],
      "frequency": 1.0,
      "boundary_potentials": {"1": 1.0},
      "internal_currents": {"2": 0.0},
      "internal_powers": {"2": 0.0}
    }

Resistor values are conductances in siemens, capacitor values farads and
inductor values henries. ``frequency`` is an angular frequency in rad/s.
Potentials may be complex, written as ``{"re": x, "im": y}``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DanglingReference, DuplicateId, NonPositiveValue, ParseError
from .netgraph import Capacitor, Edge, Inductor, Network, Partition, Resistor

ELEMENTS = {"resistor": Resistor, "capacitor": Capacitor, "inductor": Inductor}
KINDS = ("boundary", "internal")


@dataclass(frozen=True)
class NetlistDocument:
    network: Network
    partition: Partition
    frequency: float | None = None
    boundary_potentials: dict = field(default_factory=dict)
    internal_currents: dict = field(default_factory=dict)
    internal_powers: dict = field(default_factory=dict)

    def vector(self, name: str, nodes, default=None, dtype=float) -> np.ndarray:
        """Values of the map ``name`` ordered by ``nodes``.

        Nodes missing from the map take ``default``; with no default they
        are an error.
        """
        values = getattr(self, name)
        out = []
        for n in nodes:
            if n in values:
                out.append(values[n])
            elif default is not None:
                out.append(default)
            else:
                raise ParseError(f"{name} has no value for node {n!r}", field=f"{name}.{n}")
        return np.array(out, dtype=dtype)


def _number(value, where, complex_ok=False):
    if isinstance(value, dict) and complex_ok and set(value) == {"re", "im"}:
        return complex(_number(value["re"], where + ".re"), _number(value["im"], where + ".im"))
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}", field=where)
    if not math.isfinite(value):
        raise ParseError(f"{where}: number must be finite", field=where)
    return value


def _require(obj, key, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object", field=where)
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}", field=f"{where}.{key}")
    return obj[key]


def _node_map(doc, key, allowed, kind, nodes, complex_ok=False):
    raw = doc.get(key, {})
    if not isinstance(raw, dict):
        raise ParseError(f"{key}: expected an object mapping node ids to numbers", field=key)
    out = {}
    for node, value in raw.items():
        if node not in nodes:
            raise DanglingReference(f"{key} references unknown node {node!r}", field=key, id=node)
        if node not in allowed:
            raise ParseError(f"{key}: node {node!r} is not a {kind} node", field=f"{key}.{node}")
        out[node] = _number(value, f"{key}.{node}", complex_ok)
    return out


def parse_netlist(text: str) -> NetlistDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno)
    if not isinstance(doc, dict):
        raise ParseError("netlist must be a JSON object", field="")

    nodes_raw = _require(doc, "nodes", "netlist")
    if not isinstance(nodes_raw, list):
        raise ParseError("nodes: expected a list", field="nodes")
    nodes, boundary = [], []
    for i, item in enumerate(nodes_raw):
        where = f"nodes[{i}]"
        node_id = _require(item, "id", where)
        if not isinstance(node_id, str):
            raise ParseError(f"{where}.id: expected a string", field=f"{where}.id")
        kind = _require(item, "kind", where)
        if kind not in KINDS:
            raise ParseError(f"{where}.kind: expected one of {KINDS}, got {kind!r}", field=f"{where}.kind")
        if node_id in nodes:
            raise DuplicateId(f"duplicate node id {node_id!r}", field=where, id=node_id)
        nodes.append(node_id)
        if kind == "boundary":
            boundary.append(node_id)

    edges_raw = _require(doc, "edges", "netlist")
    if not isinstance(edges_raw, list):
        raise ParseError("edges: expected a list", field="edges")
    node_set = set(nodes)
    edges = []
    for i, item in enumerate(edges_raw):
        where = f"edges[{i}]"
        edge_id = _require(item, "id", where)
        ends = []
        for key in ("tail", "head"):
            end = _require(item, key, where)
            if end not in node_set:
                raise DanglingReference(
                    f"{where}.{key} references unknown node {end!r}", field=f"{where}.{key}", id=end, edge=edge_id
                )
            ends.append(end)
        element = _require(item, "element", where)
        etype = _require(element, "type", f"{where}.element")
        if etype not in ELEMENTS:
            raise ParseError(
                f"{where}.element.type: expected one of {sorted(ELEMENTS)}, got {etype!r}",
                field=f"{where}.element.type",
            )
        value = _number(_require(element, "value", f"{where}.element"), f"{where}.element.value")
        if value <= 0:
            raise NonPositiveValue(
                f"{where}: element value must be positive, got {value!r}", field=f"{where}.element.value", edge=edge_id
            )
        edges.append(Edge(str(edge_id), ends[0], ends[1], ELEMENTS[etype](float(value))))

    net = Network(tuple(nodes), tuple(edges))
    part = Partition.from_boundary(nodes, boundary)

    frequency = doc.get("frequency")
    if frequency is not None:
        frequency = _number(frequency, "frequency")
        if frequency <= 0:
            raise NonPositiveValue("frequency must be positive", field="frequency")
        frequency = float(frequency)

    return NetlistDocument(
        net,
        part,
        frequency,
        _node_map(doc, "boundary_potentials", set(part.boundary), "boundary", node_set, complex_ok=True),
        _node_map(doc, "internal_currents", set(part.internal), "internal", node_set),
        _node_map(doc, "internal_powers", set(part.internal), "internal", node_set),
    )


def read_netlist(path) -> NetlistDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_netlist(fh.read())


def format_float(x) -> str:
    """17 significant digits: round-trip safe for float64."""
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x == 0:
        x = 0.0  # drop the sign of negative zero
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, (bool, type(None), str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number, str, bool)) and not isinstance(v, complex) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(obj, indent, 0)


def matrix_csv(matrix, nodes) -> str:
    lines = ["node," + ",".join(nodes)]
    for n, row in zip(nodes, np.asarray(matrix)):
        lines.append(n + "," + ",".join(format_float(v) for v in row))
    return "\n".join(lines)


def read_target(path):
    """Boundary Laplacian target: ``{"nodes": [...], "laplacian": [[...]]}`` (the ``reduce`` output)."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in target: {exc.msg}", line=exc.lineno, column=exc.colno)
    nodes = _require(doc, "nodes", "target")
    rows = _require(doc, "laplacian", "target")
    try:
        matrix = np.array(rows, dtype=float)
    except (TypeError, ValueError):
        raise ParseError("target.laplacian: expected a numeric matrix", field="target.laplacian")
    if matrix.shape != (len(nodes), len(nodes)):
        raise ParseError("target.laplacian: shape does not match nodes", field="target.laplacian")
    return [str(n) for n in nodes], matrix
