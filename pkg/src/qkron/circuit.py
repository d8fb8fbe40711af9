"""Mixed-radix circuit intermediate representation.

A circuit acts on an ordered list of registers with dimensions
``n_1, ..., n_k``. Basis states are indexed big-endian: register 0 is the most
significant digit. Gates refer to registers through *spans*, tuples of
distinct register indices whose values are merged big-endian into a single
value; a one-register span is the common case. Merging registers is free, so
a gate on span ``(1, 2)`` sees a register of dimension ``n_2 * n_3``.

Every gate may carry controls, a tuple of ``(span, value)`` conditions that
must all hold for the gate to act. :func:`simulate` gives the dense unitary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Sequence, Union

import numpy as np

from .tensor import as_matrix, as_tuple

Span = tuple[int, ...]
Control = tuple[Span, int]

PHASE_TOL = 1e-12

PERMUTATIONS = ("shuffle", "bit_shift", "subtract_two_if_odd", "swap_registers", "digit_reversal")
CLAUSE_OPS = ("eq", "ne", "lt", "le", "gt", "ge", "odd", "even")


class CircuitError(ValueError):
    """A gate or circuit violates the IR's well-formedness rules."""


def _span(s) -> Span:
    if isinstance(s, (int, np.integer)):
        return (int(s),)
    return tuple(int(r) for r in s)


def _controls(cs) -> tuple[Control, ...]:
    return tuple((_span(s), int(v)) for s, v in cs)


@dataclass(frozen=True)
class RegisterLayout:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        for d in dims:
            if d < 2:
                raise CircuitError(f"register dimensions must be >= 2, got {d}")
        object.__setattr__(self, "dims", dims)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def __len__(self):
        return len(self.dims)

    def span_dim(self, span: Span) -> int:
        return math.prod(self.dims[r] for r in span)

    def strides(self) -> np.ndarray:
        out = np.ones(len(self.dims), dtype=np.int64)
        for r in range(len(self.dims) - 2, -1, -1):
            out[r] = out[r + 1] * self.dims[r + 1]
        return out

    def digits(self) -> np.ndarray:
        """``(total_dim, k)`` table of register values for every flat index."""
        idx = np.arange(self.total_dim, dtype=np.int64)
        return (idx[:, None] // self.strides()[None, :]) % np.array(self.dims, dtype=np.int64)


# -- gates ------------------------------------------------------------------

def _same(a, b) -> bool:
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return isinstance(a, np.ndarray) and isinstance(b, np.ndarray) and a.shape == b.shape \
            and np.array_equal(a, b)
    if isinstance(a, tuple) and isinstance(b, tuple):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return type(a) is type(b) and a == b


class _GateBase:
    kind = ""

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return all(_same(getattr(self, f.name), getattr(other, f.name)) for f in fields(self))

    __hash__ = None

    def registers(self) -> set[int]:
        regs = set()
        for s in self.target_spans() + tuple(s for s, _ in self.control_list()):
            regs.update(s)
        return regs

    def target_spans(self) -> tuple[Span, ...]:
        raise NotImplementedError

    def control_list(self) -> tuple[Control, ...]:
        return getattr(self, "controls", ())


@dataclass(frozen=True, eq=False)
class SingleUnitary(_GateBase):
    target: Span
    matrix: np.ndarray
    label: str = ""
    kind = "single_unitary"

    def __post_init__(self):
        object.__setattr__(self, "target", _span(self.target))
        object.__setattr__(self, "matrix", as_matrix(self.matrix))

    def target_spans(self):
        return (self.target,)


@dataclass(frozen=True, eq=False)
class ValueControlled(_GateBase):
    """Apply ``matrix`` on ``target`` iff every control span holds its value."""
    controls: tuple[Control, ...]
    target: Span
    matrix: np.ndarray
    label: str = ""
    kind = "value_controlled"

    def __post_init__(self):
        object.__setattr__(self, "controls", _controls(self.controls))
        object.__setattr__(self, "target", _span(self.target))
        object.__setattr__(self, "matrix", as_matrix(self.matrix))
        if not self.controls:
            raise CircuitError("value-controlled gate needs at least one control")

    def target_spans(self):
        return (self.target,)


@dataclass(frozen=True, eq=False)
class Multiplexed(_GateBase):
    """Apply ``members[i]`` on ``target`` when the ``control`` span holds ``i``."""
    control: Span
    target: Span
    members: np.ndarray
    label: str = ""
    controls: tuple[Control, ...] = ()
    kind = "multiplexed"

    def __post_init__(self):
        object.__setattr__(self, "control", _span(self.control))
        object.__setattr__(self, "target", _span(self.target))
        object.__setattr__(self, "members", as_tuple(self.members))
        object.__setattr__(self, "controls", _controls(self.controls))

    def target_spans(self):
        return (self.target, self.control)


@dataclass(frozen=True, eq=False)
class PhasePair(_GateBase):
    """``|u>|v> -> w^(u v) |u>|v>`` with ``w = exp(2 pi i turn_num / turn_den)``."""
    left: Span
    right: Span
    turn_num: int
    turn_den: int
    controls: tuple[Control, ...] = ()
    kind = "phase_pair"

    def __post_init__(self):
        object.__setattr__(self, "left", _span(self.left))
        object.__setattr__(self, "right", _span(self.right))
        object.__setattr__(self, "turn_num", int(self.turn_num))
        object.__setattr__(self, "turn_den", int(self.turn_den))
        object.__setattr__(self, "controls", _controls(self.controls))
        if self.turn_den <= 0:
            raise CircuitError("phase-pair turn denominator must be positive")

    def target_spans(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class PredicatePhase(_GateBase):
    """Multiply every basis state satisfying all ``clauses`` by ``phase``.

    A clause is ``(span, op, value)`` with ``op`` one of ``CLAUSE_OPS``; the
    parity ops ignore ``value``.
    """
    clauses: tuple[tuple[Span, str, int], ...]
    phase: complex
    kind = "predicate_phase"

    def __post_init__(self):
        clauses = tuple((_span(s), str(op), int(v)) for s, op, v in self.clauses)
        for _, op, _ in clauses:
            if op not in CLAUSE_OPS:
                raise CircuitError(f"unknown predicate op {op!r}")
        object.__setattr__(self, "clauses", clauses)
        phase = complex(self.phase)
        if not np.isfinite(phase) or abs(abs(phase) - 1.0) > PHASE_TOL:
            raise CircuitError(f"predicate phase {phase} is not unit-modulus")
        object.__setattr__(self, "phase", phase)

    def target_spans(self):
        return tuple(s for s, _, _ in self.clauses)


@dataclass(frozen=True, eq=False)
class IndexPermutation(_GateBase):
    """A named permutation of the merged value of ``span``.

    ``shuffle`` (params ``m, n``): ``d*m + e -> e*n + d``.
    ``bit_shift``: rotate the span's digits right by one,
    ``|b_n ... b_0> -> |b_0 b_n ... b_1>``.
    ``subtract_two_if_odd`` (param ``m``): odd ``v -> (v - 2) mod m``.
    ``swap_registers``: exchange the values of a two-register span.
    ``digit_reversal``: digits ``(v_1, ..., v_r)`` of radices ``(n_1, ..., n_r)``
    go to ``v_1 + n_1 (v_2 + n_2 (...))``.
    """
    perm: str
    span: Span
    params: tuple[int, ...] = ()
    controls: tuple[Control, ...] = ()
    kind = "index_permutation"

    def __post_init__(self):
        if self.perm not in PERMUTATIONS:
            raise CircuitError(f"unknown permutation {self.perm!r}")
        object.__setattr__(self, "span", _span(self.span))
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        object.__setattr__(self, "controls", _controls(self.controls))

    def target_spans(self):
        return (self.span,)


Gate = Union[SingleUnitary, ValueControlled, Multiplexed, PhasePair, PredicatePhase, IndexPermutation]
GATE_TYPES = (SingleUnitary, ValueControlled, Multiplexed, PhasePair, PredicatePhase, IndexPermutation)


def _check_span(layout: RegisterLayout, span: Span, what: str) -> None:
    if not span and what != "predicate":
        raise CircuitError(f"{what} span is empty")
    for r in span:
        if not 0 <= r < len(layout):
            raise CircuitError(f"{what} register {r} out of range for {len(layout)} registers")
    if len(set(span)) != len(span):
        raise CircuitError(f"{what} span {span} repeats a register")


def validate_gate(layout: RegisterLayout, g: Gate) -> None:
    if not isinstance(g, GATE_TYPES):
        raise CircuitError(f"not a gate: {g!r}")
    for s, v in g.control_list():
        _check_span(layout, s, "control")
        if not 0 <= v < layout.span_dim(s):
            raise CircuitError(f"control value {v} out of range for span {s}")
    controlled = {r for s, _ in g.control_list() for r in s}
    acted = set()
    for s in g.target_spans():
        _check_span(layout, s, "predicate" if isinstance(g, PredicatePhase) else "target")
        if isinstance(g, (Multiplexed, PhasePair)) and acted & set(s):
            raise CircuitError(f"{g.kind}: spans overlap")
        acted |= set(s)
    if controlled & acted:
        raise CircuitError(f"{g.kind}: a control register is also a target")

    if isinstance(g, (SingleUnitary, ValueControlled)):
        dim = layout.span_dim(g.target)
        if g.matrix.shape != (dim, dim):
            raise CircuitError(f"matrix shape {g.matrix.shape} does not fit span dimension {dim}")
    elif isinstance(g, Multiplexed):
        dim = layout.span_dim(g.target)
        n = layout.span_dim(g.control)
        if g.members.shape != (n, dim, dim):
            raise CircuitError(
                f"multiplexed tuple has shape {g.members.shape}, expected ({n}, {dim}, {dim})")
    elif isinstance(g, IndexPermutation):
        dims = [layout.dims[r] for r in g.span]
        dim = math.prod(dims)
        if g.perm == "shuffle":
            if len(g.params) != 2 or g.params[0] * g.params[1] != dim:
                raise CircuitError(f"shuffle{g.params} does not match span dimension {dim}")
        elif g.perm == "bit_shift":
            if len(set(dims)) != 1:
                raise CircuitError("bit shift needs registers of equal dimension")
        elif g.perm == "subtract_two_if_odd":
            if len(g.params) != 1 or g.params[0] != dim or dim % 2 or dim < 4:
                raise CircuitError("subtract-two-if-odd needs an even span dimension m >= 4 equal to its parameter")
        elif g.perm == "swap_registers":
            if len(dims) != 2 or dims[0] != dims[1]:
                raise CircuitError("swap needs two registers of equal dimension")


@dataclass(frozen=True)
class Circuit:
    layout: RegisterLayout
    gates: tuple = ()

    def __post_init__(self):
        layout = self.layout
        if not isinstance(layout, RegisterLayout):
            layout = RegisterLayout(tuple(layout))
            object.__setattr__(self, "layout", layout)
        gates = tuple(self.gates)
        for g in gates:
            validate_gate(layout, g)
        object.__setattr__(self, "gates", gates)

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.layout == other.layout and len(self.gates) == len(other.gates) \
            and all(a == b for a, b in zip(self.gates, other.gates))

    __hash__ = None

    def append(self, g: Gate) -> "Circuit":
        return Circuit(self.layout, self.gates + (g,))

    def extend(self, gs: Sequence[Gate]) -> "Circuit":
        return Circuit(self.layout, self.gates + tuple(gs))

    def compose(self, other: "Circuit") -> "Circuit":
        """Run ``self`` then ``other``."""
        if other.layout != self.layout:
            raise CircuitError(f"layout mismatch: {self.layout.dims} vs {other.layout.dims}")
        return Circuit(self.layout, self.gates + other.gates)


def append(c: Circuit, g: Gate) -> Circuit:
    return c.append(g)


def compose(c1: Circuit, c2: Circuit) -> Circuit:
    return c1.compose(c2)


# -- gate rewriting ---------------------------------------------------------

def remap_gate(g: Gate, mapping: Sequence[Span], extra_controls: Sequence[Control] = ()) -> Gate:
    """Rewrite ``g`` onto another layout.

    ``mapping[r]`` is the span of new registers that old register ``r``
    becomes (a refinement keeps merged values unchanged). ``extra_controls``
    are added in the new layout's register numbering.
    """
    extra = _controls(extra_controls)

    def m(span):
        return tuple(r2 for r in span for r2 in mapping[r])

    def mc(cs):
        return tuple((m(s), v) for s, v in cs) + extra

    if isinstance(g, SingleUnitary):
        if extra:
            return ValueControlled(extra, m(g.target), g.matrix, g.label)
        return SingleUnitary(m(g.target), g.matrix, g.label)
    if isinstance(g, ValueControlled):
        return ValueControlled(mc(g.controls), m(g.target), g.matrix, g.label)
    if isinstance(g, Multiplexed):
        return Multiplexed(m(g.control), m(g.target), g.members, g.label, mc(g.controls))
    if isinstance(g, PhasePair):
        return PhasePair(m(g.left), m(g.right), g.turn_num, g.turn_den, mc(g.controls))
    if isinstance(g, PredicatePhase):
        clauses = tuple((m(s), op, v) for s, op, v in g.clauses)
        clauses += tuple((s, "eq", v) for s, v in extra)
        return PredicatePhase(clauses, g.phase)
    if isinstance(g, IndexPermutation):
        return IndexPermutation(g.perm, m(g.span), g.params, mc(g.controls))
    raise CircuitError(f"not a gate: {g!r}")


def embed(sub: Circuit, layout: RegisterLayout, registers: Sequence[int],
          controls: Sequence[Control] = ()) -> list[Gate]:
    """Gates of ``sub`` placed on ``registers`` of a larger layout.

    ``registers[r]`` receives ``sub``'s register ``r``; dimensions must agree.
    """
    registers = list(registers)
    if len(registers) != len(sub.layout):
        raise CircuitError("register map length differs from sub-circuit layout")
    for r, r2 in enumerate(registers):
        if layout.dims[r2] != sub.layout.dims[r]:
            raise CircuitError(f"register {r2} has dimension {layout.dims[r2]}, expected {sub.layout.dims[r]}")
    return [remap_gate(g, [(r2,) for r2 in registers], controls) for g in sub.gates]


def refine_register(c: Circuit, reg: int, dims: Sequence[int]) -> Circuit:
    """Split register ``reg`` into registers of the given dimensions.

    The flat index is unchanged, so the simulated matrix is unchanged too.
    """
    dims = tuple(int(d) for d in dims)
    if math.prod(dims) != c.layout.dims[reg]:
        raise CircuitError(f"{dims} does not factor register dimension {c.layout.dims[reg]}")
    new_dims = c.layout.dims[:reg] + dims + c.layout.dims[reg + 1:]
    mapping = []
    for r in range(len(c.layout)):
        if r < reg:
            mapping.append((r,))
        elif r == reg:
            mapping.append(tuple(range(reg, reg + len(dims))))
        else:
            mapping.append((r + len(dims) - 1,))
    return Circuit(RegisterLayout(new_dims), tuple(remap_gate(g, mapping) for g in c.gates))


# -- simulation ---------------------------------------------------------------

class _Index:
    """Flat-index bookkeeping for one layout."""

    def __init__(self, layout: RegisterLayout):
        self.layout = layout
        self.dim = layout.total_dim
        self.strides = layout.strides()
        self.digits = layout.digits()
        self.cols = np.arange(self.dim, dtype=np.int64)

    def value(self, span: Span) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for r in span:
            v = v * self.layout.dims[r] + self.digits[:, r]
        return v

    def offsets(self, span: Span) -> np.ndarray:
        """Flat-index contribution of every merged value of ``span``."""
        dims = [self.layout.dims[r] for r in span]
        vals = np.arange(math.prod(dims), dtype=np.int64)
        off = np.zeros_like(vals)
        for r, d in zip(reversed(span), reversed(dims)):
            off += (vals % d) * self.strides[r]
            vals //= d
        return off

    def active(self, controls) -> np.ndarray:
        mask = np.ones(self.dim, dtype=bool)
        for s, v in controls:
            mask &= self.value(s) == v
        return mask

    def clause(self, span, op, v) -> np.ndarray:
        x = self.value(span)
        return {
            "eq": x == v, "ne": x != v, "lt": x < v, "le": x <= v,
            "gt": x > v, "ge": x >= v, "odd": x % 2 == 1, "even": x % 2 == 0,
        }[op]


def _permute_values(g: IndexPermutation, dims: list[int], t: np.ndarray) -> np.ndarray:
    if g.perm == "shuffle":
        m, n = g.params
        d, e = np.divmod(t, m)
        return e * n + d
    if g.perm in ("bit_shift", "swap_registers"):
        b, k = dims[0], len(dims)
        if k == 1:
            return t
        high, low = np.divmod(t, b)
        return low * b ** (k - 1) + high
    if g.perm == "subtract_two_if_odd":
        (m,) = g.params
        return np.where(t % 2 == 1, (t - 2) % m, t)
    if g.perm == "digit_reversal":
        out = np.zeros_like(t)
        rest = t.copy()
        digs = []
        for d in reversed(dims):
            digs.append(rest % d)
            rest //= d
        digs.reverse()  # digs[i] is the value of the i-th span register
        for d, v in zip(reversed(dims), reversed(digs)):
            out = out * d + v
        return out
    raise CircuitError(f"unknown permutation {g.perm!r}")


def gate_matrix(layout: RegisterLayout, g: Gate, _ix: _Index | None = None) -> np.ndarray:
    """Dense matrix of one gate embedded in ``layout``."""
    ix = _ix or _Index(layout)
    n = ix.dim
    out = np.zeros((n, n), dtype=complex)
    active = ix.active(g.control_list())
    idle = ~active
    out[ix.cols[idle], ix.cols[idle]] = 1.0
    cols = ix.cols[active]

    if isinstance(g, (SingleUnitary, ValueControlled, Multiplexed)):
        t = ix.value(g.target)[active]
        off = ix.offsets(g.target)
        base = cols - off[t]
        if isinstance(g, Multiplexed):
            mats = g.members[ix.value(g.control)[active]]  # (len(cols), s, s)
        else:
            mats = np.broadcast_to(g.matrix, (len(cols),) + g.matrix.shape)
        rows = base[:, None] + off[None, :]
        out[rows, cols[:, None]] = mats[np.arange(len(cols)), :, t]
    elif isinstance(g, PhasePair):
        u = ix.value(g.left)[active]
        v = ix.value(g.right)[active]
        k = (g.turn_num * u * v) % g.turn_den
        out[cols, cols] = np.exp(2j * np.pi * k / g.turn_den)
    elif isinstance(g, PredicatePhase):
        hit = np.ones(n, dtype=bool)
        for s, op, v in g.clauses:
            hit &= ix.clause(s, op, v)
        out[ix.cols, ix.cols] = np.where(hit, g.phase, 1.0)
    elif isinstance(g, IndexPermutation):
        dims = [layout.dims[r] for r in g.span]
        t = ix.value(g.span)[active]
        off = ix.offsets(g.span)
        out[cols - off[t] + off[_permute_values(g, dims, t)], cols] = 1.0
    else:
        raise CircuitError(f"not a gate: {g!r}")
    return out


def simulate(c: Circuit) -> np.ndarray:
    """The unitary ``G_T ... G_1`` of a circuit (first gate applied first)."""
    ix = _Index(c.layout)
    out = np.eye(ix.dim, dtype=complex)
    for g in c.gates:
        out = gate_matrix(c.layout, g, ix) @ out
    return out


# -- gate counting ------------------------------------------------------------

def _clog2(n: int) -> int:
    return max(0, math.ceil(math.log2(n))) if n > 1 else 0


@dataclass
class GateCountReport:
    """IR gate counts plus a rough controlled-operation estimate.

    The estimate charges a multiplexed gate its control dimension, a phase
    pair over dimensions ``(n, m)`` ``ceil(log2 n) * ceil(log2 m)``, and every
    other gate one.
    """
    counts: dict = field(default_factory=lambda: {t.kind: 0 for t in GATE_TYPES})
    controlled_op_estimate: int = 0
    by_label: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def as_dict(self) -> dict:
        return {"counts": dict(self.counts), "controlled_op_estimate": self.controlled_op_estimate,
                "by_label": dict(self.by_label), "total": self.total}


def gate_count(c: Circuit) -> GateCountReport:
    rep = GateCountReport()
    for g in c.gates:
        rep.counts[g.kind] += 1
        label = getattr(g, "label", "")
        if label:
            rep.by_label[label] = rep.by_label.get(label, 0) + 1
        if isinstance(g, Multiplexed):
            rep.controlled_op_estimate += c.layout.span_dim(g.control)
        elif isinstance(g, PhasePair):
            rep.controlled_op_estimate += (_clog2(c.layout.span_dim(g.left))
                                           * _clog2(c.layout.span_dim(g.right)))
        else:
            rep.controlled_op_estimate += 1
    return rep
