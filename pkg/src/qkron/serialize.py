"""Versioned JSON documents for circuits.

Matrix payloads are lists of rows of ``"re,im"`` tokens written with 17
significant digits, so documents round-trip bit-exactly.
"""

from __future__ import annotations

import json

import numpy as np

from .circuit import (
    Circuit, CircuitError, IndexPermutation, Multiplexed, PhasePair, PredicatePhase,
    RegisterLayout, SingleUnitary, ValueControlled,
)
from .tensor import format_entry, parse_entry

FORMAT_VERSION = 1


def _mat_out(m) -> list:
    return [[format_entry(z) for z in row] for row in np.asarray(m)]


def _mat_in(rows) -> np.ndarray:
    return np.array([[parse_entry(t) for t in row] for row in rows], dtype=complex)


def _controls_out(cs) -> list:
    return [{"span": list(s), "value": v} for s, v in cs]


def _controls_in(cs) -> tuple:
    return tuple((tuple(c["span"]), c["value"]) for c in cs)


def gate_record(g) -> dict:
    regs: dict = {}
    payload: dict = {}
    if getattr(g, "controls", ()):
        regs["controls"] = _controls_out(g.controls)
    if isinstance(g, (SingleUnitary, ValueControlled)):
        regs["target"] = list(g.target)
        payload = {"matrix": _mat_out(g.matrix), "label": g.label}
    elif isinstance(g, Multiplexed):
        regs["control"] = list(g.control)
        regs["target"] = list(g.target)
        payload = {"members": [_mat_out(m) for m in g.members], "label": g.label}
    elif isinstance(g, PhasePair):
        regs["left"] = list(g.left)
        regs["right"] = list(g.right)
        payload = {"turn_num": g.turn_num, "turn_den": g.turn_den}
    elif isinstance(g, PredicatePhase):
        regs["clauses"] = [{"span": list(s), "op": op, "value": v} for s, op, v in g.clauses]
        payload = {"phase": format_entry(g.phase)}
    elif isinstance(g, IndexPermutation):
        regs["span"] = list(g.span)
        payload = {"perm": g.perm, "params": list(g.params)}
    else:
        raise CircuitError(f"cannot serialize {g!r}")
    return {"kind": g.kind, "registers": regs, "payload": payload}


def gate_from_record(rec: dict):
    kind = rec.get("kind")
    regs = rec.get("registers", {})
    p = rec.get("payload", {})
    controls = _controls_in(regs.get("controls", []))
    if kind == "single_unitary":
        return SingleUnitary(tuple(regs["target"]), _mat_in(p["matrix"]), p.get("label", ""))
    if kind == "value_controlled":
        return ValueControlled(controls, tuple(regs["target"]), _mat_in(p["matrix"]), p.get("label", ""))
    if kind == "multiplexed":
        members = np.stack([_mat_in(m) for m in p["members"]])
        return Multiplexed(tuple(regs["control"]), tuple(regs["target"]), members,
                           p.get("label", ""), controls)
    if kind == "phase_pair":
        return PhasePair(tuple(regs["left"]), tuple(regs["right"]), p["turn_num"], p["turn_den"], controls)
    if kind == "predicate_phase":
        clauses = tuple((tuple(c["span"]), c["op"], c["value"]) for c in regs["clauses"])
        return PredicatePhase(clauses, parse_entry(p["phase"]))
    if kind == "index_permutation":
        return IndexPermutation(p["perm"], tuple(regs["span"]), tuple(p.get("params", ())), controls)
    raise CircuitError(f"unknown gate kind {kind!r}")


def serialize(c: Circuit) -> str:
    doc = {
        "format_version": FORMAT_VERSION,
        "layout": list(c.layout.dims),
        "gates": [gate_record(g) for g in c.gates],
    }
    return json.dumps(doc, indent=1)


def deserialize(text: str) -> Circuit:
    """Parse and validate a circuit document.

    Raises:
        CircuitError: on unknown versions or gate kinds, bad register
            indices, mismatched payload shapes or non-unit phases.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitError(f"not a circuit document: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format_version") != FORMAT_VERSION:
        raise CircuitError(f"unsupported circuit document version {doc.get('format_version') if isinstance(doc, dict) else None!r}")
    try:
        gates = tuple(gate_from_record(rec) for rec in doc.get("gates", []))
        return Circuit(RegisterLayout(tuple(doc["layout"])), gates)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CircuitError):
            raise
        raise CircuitError(f"malformed circuit document: {exc}") from exc
