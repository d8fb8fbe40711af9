"""Fourier-transform circuits for finite groups, checked against the exact
oracle matrices of :mod:`qkron.groups`."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .circuit import (
    Circuit, PhasePair, PredicatePhase, RegisterLayout, SingleUnitary, ValueControlled,
    embed, gate_count, simulate,
)
from .groups import (
    EncodingMap, FiniteGroup, RepresentationSet, fourier_oracle, group_spec, irreps,
    make_cyclic, make_en, make_metacyclic, make_product, make_quaternionic, standard_encoding,
)
from .oracles import W, dft_matrix
from .tensor import DEFAULT_TOL, ShapeError, equal_up_to_diag_phase, max_abs
from .transforms import dft_gate, dft_gates

EXACT = "exact"
UP_TO_PHASE = "up_to_phase"


@dataclass(frozen=True, eq=False)
class GroupFtResult:
    circuit: Circuit
    encoding: EncodingMap
    equivalence: str
    group: FiniteGroup
    reps: RepresentationSet
    extracted_phases: np.ndarray | None = None


@dataclass
class VerifyReport:
    group: str
    dimension: int
    equivalence: str
    passed: bool
    max_deviation: float
    phases: np.ndarray | None = None
    gate_counts: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "group": self.group,
            "dimension": self.dimension,
            "equivalence": self.equivalence,
            "passed": self.passed,
            "max_deviation": float(f"{self.max_deviation:.15g}"),
            "gate_counts": self.gate_counts,
        }
        if self.phases is not None:
            out["phases"] = [[float(f"{z.real:.15g}"), float(f"{z.imag:.15g}")] for z in self.phases]
        return out


def _result(circuit, group, equivalence=EXACT, reps=None, encoding=None) -> GroupFtResult:
    reps = reps or irreps(group)
    encoding = encoding or standard_encoding(group, reps)
    return GroupFtResult(circuit, encoding, equivalence, group, reps)


def synth_cyclic_ft(n: int, factors=None) -> GroupFtResult:
    """``Z_n`` Fourier transform: the DFT, as one gate or radix-split."""
    g = make_cyclic(n)
    if n == 1:
        return _result(Circuit(RegisterLayout(())), g)
    if factors is None:
        return _result(Circuit(RegisterLayout((n,)), (dft_gate(0, n),)), g)
    factors = tuple(factors)
    if math.prod(factors) != n:
        raise ValueError(f"factors {factors} do not multiply to {n}")
    return _result(Circuit(RegisterLayout(factors), tuple(dft_gates(range(len(factors)), factors))), g)


def synth_product_ft(c1: GroupFtResult, c2: GroupFtResult) -> GroupFtResult:
    """``G1 x G2``: ``c1`` on the leading registers, ``c2`` on the rest."""
    if c1.equivalence != EXACT or c2.equivalence != EXACT:
        raise ValueError("product synthesis needs exact inputs; apply the phase correction first")
    d1, d2 = c1.circuit.layout.dims, c2.circuit.layout.dims
    layout = RegisterLayout(d1 + d2)
    gates = embed(c1.circuit, layout, range(len(d1)))
    gates += embed(c2.circuit, layout, range(len(d1), len(d1) + len(d2)))
    return _result(Circuit(layout, tuple(gates)), make_product(c1.group, c2.group))


def quaternion_gates(n: int, with_predicate: bool = True) -> list:
    gates = [
        dft_gate(1, 2 * n),
        ValueControlled((((1,), 0),), 0, W, "W"),
        ValueControlled((((1,), n),), 0, W, "W"),
    ]
    if with_predicate:
        gates.append(PredicatePhase((((0,), "eq", 1), ((1,), "gt", n), ((1,), "odd", 0)), -1))
    return gates


def synth_quaternion_ft(n: int) -> GroupFtResult:
    """``Q_n`` on layout ``(2, 2n)``: ``F_2n`` on the low register, ``W`` on
    the high register when the low value is 0 or n, and a sign on
    ``|1>|i>`` for odd ``i > n``."""
    g = make_quaternionic(n)
    return _result(Circuit(RegisterLayout((2, 2 * n)), tuple(quaternion_gates(n))), g)


def metacyclic_layout(q: int, m: int, r: int) -> tuple[tuple[int, ...], int | None, int | None]:
    """Register dims ``(q, d, m/d)`` with size-one registers dropped, plus
    the indices of the ``d`` and ``m/d`` registers (or None)."""
    d = math.gcd(r - 1, m)
    dims, reg_d, reg_md = [q], None, None
    if d > 1:
        reg_d = len(dims)
        dims.append(d)
    if m // d > 1:
        reg_md = len(dims)
        dims.append(m // d)
    return tuple(dims), reg_d, reg_md


def synth_metacyclic_ft(q: int, m: int, r: int, s: int, verify_phases: bool = True,
                        tol: float = DEFAULT_TOL) -> GroupFtResult:
    """Metacyclic transform up to phase: ``F_m`` on the merged ``(d, m/d)``
    block, then, where the ``m/d`` digit is zero, the ``q``-by-``d`` twiddle
    ``w_qd^(s u v)`` and ``F_q`` on the top register.

    With ``verify_phases`` the diagonal phases relative to the oracle are
    extracted and stored on the result.
    """
    g = make_metacyclic(q, m, r, s)
    q, m, r, s = g.params
    dims, reg_d, reg_md = metacyclic_layout(q, m, r)
    d = math.gcd(r - 1, m)
    low = tuple(x for x in (reg_d, reg_md) if x is not None)
    gates = []
    if m > 1:
        gates.append(SingleUnitary(low, dft_matrix(m), f"F{m}"))
    cond = (((reg_md,), 0),) if reg_md is not None else ()
    if reg_d is not None and s % (q * d):
        gates.append(PhasePair((0,), (reg_d,), s, q * d, cond))
    gates.append(dft_gate(0, q, cond))
    res = _result(Circuit(RegisterLayout(dims), tuple(gates)), g, UP_TO_PHASE)
    if verify_phases:
        report = verify(res, tol)
        if not report.passed:
            raise RuntimeError(f"metacyclic circuit does not match its oracle up to phase "
                               f"(max deviation {report.max_deviation:.3g})")
        res = replace(res, extracted_phases=report.phases)
    return res


def synth_en_ft(n: int) -> GroupFtResult:
    """``E_n`` on qubits ``(lam, a_1, c_1, ..., a_n, c_n)``: ``W`` on ``lam``,
    then per level ``W`` on ``a_i`` when ``lam = 0`` and ``W`` on ``c_i``."""
    g = make_en(n)
    gates = [SingleUnitary(0, W, "W")]
    for i in range(1, n + 1):
        gates.append(ValueControlled((((0,), 0),), 2 * i - 1, W, "W"))
        gates.append(SingleUnitary(2 * i, W, "W"))
    return _result(Circuit(RegisterLayout((2,) * (2 * n + 1)), tuple(gates)), g)


def phase_gates(layout: RegisterLayout, phases, tol: float = 1e-15) -> list:
    """One PredicatePhase per basis state whose phase differs from 1, applying
    ``conj(phase)``."""
    digits = layout.digits()
    gates = []
    for idx, phi in enumerate(np.asarray(phases)):
        if abs(phi - 1) <= tol:
            continue
        clauses = tuple(((reg,), "eq", int(v)) for reg, v in enumerate(digits[idx]))
        gates.append(PredicatePhase(clauses, complex(np.conj(phi))))
    return gates


def apply_phase_correction(res: GroupFtResult) -> GroupFtResult:
    """Append the conjugate of the extracted phases; exact inputs pass through."""
    if res.equivalence == EXACT:
        return res
    if res.extracted_phases is None:
        raise ValueError("no extracted phases on this result; run verification first")
    circuit = res.circuit.extend(phase_gates(res.circuit.layout, res.extracted_phases))
    return replace(res, circuit=circuit, equivalence=EXACT, extracted_phases=None)


def oracle_matrix(res: GroupFtResult) -> np.ndarray:
    return fourier_oracle(res.group, res.reps, res.encoding).matrix


def compare(matrix: np.ndarray, oracle: np.ndarray, up_to_phase: bool, tol: float):
    """``(passed, max deviation, phases or None)`` for a circuit matrix."""
    if matrix.shape != oracle.shape:
        raise ShapeError(f"circuit dimension {matrix.shape[0]} does not match oracle dimension {oracle.shape[0]}")
    if up_to_phase:
        phases = equal_up_to_diag_phase(matrix, oracle, tol)
        if phases is not None:
            return True, max_abs(matrix - phases[:, None] * oracle), phases
        return False, max_abs(np.abs(matrix) - np.abs(oracle)), None
    dev = max_abs(matrix - oracle)
    return dev <= tol, dev, None


def verify(res: GroupFtResult, tol: float = DEFAULT_TOL, up_to_phase: bool | None = None) -> VerifyReport:
    """Simulate the circuit and compare with the group's oracle."""
    if up_to_phase is None:
        up_to_phase = res.equivalence == UP_TO_PHASE
    oracle = oracle_matrix(res)
    passed, dev, phases = compare(simulate(res.circuit), oracle, up_to_phase, tol)
    return VerifyReport(group_spec(res.group), oracle.shape[0], UP_TO_PHASE if up_to_phase else EXACT,
                        passed, dev, phases, gate_count(res.circuit).as_dict())


def synth_group_ft(g: FiniteGroup, correct_phase: bool = False) -> GroupFtResult:
    """Dispatch on the group family; products recurse and phase-correct
    metacyclic factors first."""
    fam = g.family
    if fam == "cyclic":
        (n,) = g.params
        return synth_cyclic_ft(n)
    if fam == "quaternionic":
        return synth_quaternion_ft(*g.params)
    if fam == "en":
        return synth_en_ft(*g.params)
    if fam == "metacyclic":
        res = synth_metacyclic_ft(*g.params)
        return apply_phase_correction(res) if correct_phase else res
    if fam == "product":
        parts = [synth_group_ft(f, correct_phase=True) for f in g.factors]
        return synth_product_ft(*parts)
    raise ValueError(f"no Fourier circuit for family {fam!r}")
