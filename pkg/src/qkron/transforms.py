"""Synthesis passes turning matrix factorizations into circuits.

Covers the shuffle, direct sum and generalized Kronecker product routines,
the Walsh-Hadamard, Haar and Daubechies D4 transforms, general wavelet
recursions over a family of scaling circuits, and the radix-split DFT.
Splitting a register of dimension km into registers (k, m) is the identity on
the big-endian flat index, so no explicit register-splitting gates appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .circuit import (
    Circuit, Control, IndexPermutation, Multiplexed, PhasePair, RegisterLayout,
    SingleUnitary, ValueControlled, embed, refine_register,
)
from .oracles import D4_K, W, dft_matrix
from .tensor import LEFT, RIGHT, ShapeError, as_tuple

C0 = 2 * np.array([[D4_K[3], -D4_K[2]], [D4_K[2], D4_K[3]]], dtype=complex)
C1 = 0.5 * np.array([[D4_K[0] / D4_K[3], 1], [1, D4_K[1] / D4_K[2]]], dtype=complex)


def unitary_gate(target, matrix, label: str = "", controls: Sequence[Control] = ()):
    """A SingleUnitary, or a ValueControlled gate when controls are given."""
    if controls:
        return ValueControlled(tuple(controls), target, matrix, label)
    return SingleUnitary(target, matrix, label)


def dft_gate(target, n: int, controls: Sequence[Control] = ()):
    return unitary_gate(target, dft_matrix(n), "W" if n == 2 else f"F{n}", controls)


def qubit_layout(n: int) -> RegisterLayout:
    return RegisterLayout((2,) * n)


def synth_shuffle(m: int, n: int) -> Circuit:
    """Circuit for ``Pi_(m,n)``.

    A degenerate factor gives the empty circuit; ``m == n`` is a register
    swap on layout ``(n, n)``; ``(2, 2^k)`` is a bit shift over ``k + 1``
    qubits. Anything else is a single shuffle on layout ``(n, m)``.
    """
    if m < 1 or n < 1:
        raise ValueError("shuffle dimensions must be positive")
    if m == 1 or n == 1:
        return Circuit(RegisterLayout((m * n,) if m * n > 1 else ()))
    if m == n:
        return Circuit(RegisterLayout((n, n)), (IndexPermutation("swap_registers", (0, 1)),))
    if m == 2 and n & (n - 1) == 0:
        k = n.bit_length()  # log2(n) + 1 qubits
        return Circuit(qubit_layout(k), (IndexPermutation("bit_shift", tuple(range(k))),))
    return Circuit(RegisterLayout((n, m)), (IndexPermutation("shuffle", (0, 1), (m, n)),))


def synth_direct_sum(mats) -> Circuit:
    """``Diag(C)`` for an n-tuple of (m x m) matrices, on layout ``(n, m)``."""
    c = as_tuple(mats)
    n, m, m2 = c.shape
    if m != m2:
        raise ShapeError("direct-sum members must be square")
    if n < 2 or m < 2:
        raise ShapeError("direct sum needs at least two members of dimension >= 2")
    return Circuit(RegisterLayout((n, m)), (Multiplexed(0, 1, c),))


def synth_gkron(side: str, a, c) -> Circuit:
    """Generalized Kronecker product of an m-tuple ``a`` of (n x n) matrices
    and an n-tuple ``c`` of (m x m) matrices as two multiplexed gates.

    Right: layout ``(n, m)``, C multiplexed on register 0 then A multiplexed
    on register 1. Left: layout ``(m, n)``, C multiplexed on register 1 then
    A multiplexed on register 0.
    """
    a, c = as_tuple(a), as_tuple(c)
    m, n, n2 = a.shape
    n3, m2, m3 = c.shape
    if not (n == n2 == n3 and m == m2 == m3):
        raise ShapeError(f"need an m-tuple of (n x n) and an n-tuple of (m x m); got {a.shape}, {c.shape}")
    if m < 2 or n < 2:
        raise ShapeError("tuple lengths and matrix dimensions must be >= 2")
    if side == RIGHT:
        gates = (Multiplexed(0, 1, c, "C"), Multiplexed(1, 0, a, "A"))
        return Circuit(RegisterLayout((n, m)), gates)
    if side == LEFT:
        gates = (Multiplexed(1, 0, c, "C"), Multiplexed(0, 1, a, "A"))
        return Circuit(RegisterLayout((m, n)), gates)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def synth_walsh(n: int) -> Circuit:
    if n < 1:
        raise ValueError("Walsh transform needs at least one qubit")
    return Circuit(qubit_layout(n), tuple(SingleUnitary(q, W, "W") for q in range(n)))


def _haar_gates(qubits: tuple[int, ...], controls: tuple) -> list:
    *high, low = qubits
    gates = [unitary_gate(low, W, "W", controls)]
    if high:
        gates += _haar_gates(tuple(high), controls + (((low,), 0),))
        gates.append(IndexPermutation("bit_shift", qubits, controls=controls))
    return gates


def synth_haar(n: int) -> Circuit:
    """Haar wavelet transform on n qubits.

    Unrolls ``H_{2^{k+1}} = Pi_{2,2^k} ((H_{2^k}, I) (x)_R W)``: a W on the
    least significant qubit, the smaller transform on the remaining qubits
    when that qubit is zero, then a bit shift. Each level adds the controls
    of the levels below it.
    """
    if n < 1:
        raise ValueError("Haar transform needs at least one qubit")
    return Circuit(qubit_layout(n), tuple(_haar_gates(tuple(range(n)), ())))


def _d4_gates(span: tuple[int, ...], low: int, m: int, controls=()) -> list:
    return [
        unitary_gate(low, C0, "C0", controls),
        IndexPermutation("subtract_two_if_odd", span, (m,), controls),
        unitary_gate(low, C1, "C1", controls),
    ]


def synth_d4_scaling(m: int) -> Circuit:
    """Daubechies D4 scaling matrix ``(I (x)_R C1) P_m (I (x)_R C0)`` on
    layout ``(m/2, 2)``."""
    if m < 4 or m % 2:
        raise ValueError(f"D4 scaling needs an even dimension m >= 4, got {m}")
    return Circuit(RegisterLayout((m // 2, 2)), tuple(_d4_gates((0, 1), 1, m)))


@dataclass(frozen=True)
class ScalingFamily:
    """Scaling circuits ``D_{2^i}`` for ``i >= base_level``.

    ``scaler(n)`` returns the circuit of ``D_{2^{n + base_level}}`` on
    ``n + base_level`` qubits, for ``n >= 1``.
    """
    base_level: int
    base_circuit: Circuit
    scaler: Callable[[int], Circuit]
    name: str = ""


def haar_family() -> ScalingFamily:
    def scaler(n):
        k = n + 1
        return Circuit(qubit_layout(k), (SingleUnitary(k - 1, W, "W"),))
    return ScalingFamily(1, synth_walsh(1), scaler, "haar")


def d4_family() -> ScalingFamily:
    def scaler(n):
        k = n + 2
        return Circuit(qubit_layout(k), tuple(_d4_gates(tuple(range(k)), k - 1, 1 << k)))
    base = Circuit(qubit_layout(2), tuple(_d4_gates((0, 1), 1, 4)))
    return ScalingFamily(2, base, scaler, "d4")


def _wavelet_gates(family: ScalingFamily, layout, qubits: tuple[int, ...], controls) -> list:
    k = len(qubits)
    if k == family.base_level:
        return embed(family.base_circuit, layout, qubits, controls)
    gates = embed(family.scaler(k - family.base_level), layout, qubits, controls)
    gates += _wavelet_gates(family, layout, qubits[:-1], controls + (((qubits[-1],), 0),))
    gates.append(IndexPermutation("bit_shift", qubits, controls=controls))
    return gates


def synth_wavelet(family: ScalingFamily, levels: int) -> Circuit:
    """Wavelet transform on ``base_level + levels`` qubits.

    ``U_{2^{i0}} = D_{2^{i0}}``;
    ``U_{2^{k+1}} = Pi_{2,2^k} ((U_{2^k}, I) (x)_R I_2) D_{2^{k+1}}``.
    """
    if levels < 0:
        raise ValueError("levels must be non-negative")
    n = family.base_level + levels
    layout = qubit_layout(n)
    return Circuit(layout, tuple(_wavelet_gates(family, layout, tuple(range(n)), ())))


def dft_gates(registers: Sequence[int], dims: Sequence[int], controls=()) -> list:
    """Radix-split DFT over the merged value of ``registers``.

    Per register: its DFT, then the twiddle phases between that register and
    the merged remainder. A closing digit reversal restores output order.
    """
    registers = tuple(registers)
    gates = []
    for i, r in enumerate(registers):
        gates.append(dft_gate(r, dims[i], controls))
        if i < len(registers) - 1:
            block = math.prod(dims[i:])
            gates.append(PhasePair((r,), registers[i + 1:], 1, block, controls))
    gates.append(IndexPermutation("digit_reversal", registers, controls=controls))
    return gates


def synth_dft(factors: Sequence[int]) -> Circuit:
    """DFT of dimension ``prod(factors)`` on layout ``factors``."""
    factors = tuple(int(f) for f in factors)
    if not factors:
        raise ValueError("factor list must be non-empty")
    if any(f < 2 for f in factors):
        raise ValueError(f"every factor must be >= 2, got {factors}")
    layout = RegisterLayout(factors)
    return Circuit(layout, tuple(dft_gates(range(len(factors)), factors)))


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while n > 1:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    return out


def inline_dft(c: Circuit, factors: Sequence[int]) -> Circuit:
    """Replace every single-payload ``F_N`` gate (``N = prod(factors)``) by
    the radix-split DFT over ``factors``.

    A gate on one register of dimension N first has that register refined
    into ``factors``; a gate whose span already has those dimensions is
    replaced in place. Controls carry over to every emitted gate.
    """
    factors = tuple(int(f) for f in factors)
    n = math.prod(factors)
    label = "W" if n == 2 else f"F{n}"

    def is_target(g):
        return isinstance(g, (SingleUnitary, ValueControlled)) and g.label == label

    for g in c.gates:
        if is_target(g) and len(g.target) == 1 and len(factors) > 1:
            reg = g.target[0]
            if c.layout.dims[reg] == n:
                c = refine_register(c, reg, factors)
                return inline_dft(c, factors)
    gates = []
    for g in c.gates:
        if is_target(g) and tuple(c.layout.dims[r] for r in g.target) == factors:
            gates += dft_gates(g.target, factors, getattr(g, "controls", ()))
        else:
            gates.append(g)
    return Circuit(c.layout, tuple(gates))
