"""Reference matrices built straight from their defining formulas.

Nothing here touches the circuit IR; these are the independent side of every
synthesis check.
"""

from __future__ import annotations

import math

import numpy as np

from .tensor import RIGHT, as_matrix, gkron, kron, shuffle_matrix

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

W = np.array([[1, 1], [1, -1]], dtype=complex) / SQRT2

# Daubechies D4 filter constants k_0 .. k_3.
D4_K = np.array([
    (3 + SQRT3) / (4 * SQRT2),
    (3 - SQRT3) / (4 * SQRT2),
    (1 - SQRT3) / (4 * SQRT2),
    (1 + SQRT3) / (4 * SQRT2),
])


def dft_matrix(n: int) -> np.ndarray:
    """``F_n[y, x] = w_n^(x y) / sqrt(n)`` with ``w_n = exp(2 pi i / n)``."""
    if n < 1:
        raise ValueError("DFT dimension must be positive")
    if n == 2:
        return W.copy()
    x = np.arange(n)
    k = np.outer(x, x) % n
    return np.exp(2j * np.pi * k / n) / math.sqrt(n)


def walsh_matrix(n: int) -> np.ndarray:
    """``W_{2^n}[y, x] = (-1)^(x . y) / sqrt(2^n)`` over the bits of x and y."""
    size = 1 << n
    x = np.arange(size)
    and_ = np.bitwise_and.outer(x, x)
    parity = np.array([bin(int(v)).count("1") % 2 for v in and_.ravel()]).reshape(size, size)
    return (1 - 2 * parity).astype(complex) / math.sqrt(size)


def haar_matrix(n: int) -> np.ndarray:
    """Haar transform on n qubits via ``H_{2^{k+1}} = Pi_{2,2^k} ((H, I) (x)_R W)``."""
    if n < 1:
        raise ValueError("Haar transform needs at least one qubit")
    h = W.copy()
    for k in range(1, n):
        size = 1 << k
        step = gkron(RIGHT, [h, np.eye(size)], [W] * size)
        h = shuffle_matrix(2, size) @ step
    return h


def d4_scaling_matrix(m: int, wrap: int | None = None) -> np.ndarray:
    """Daubechies D4 scaling matrix from its entry formula (m even, m >= 4).

    Row ``i`` even holds ``k_{j-i+x}``, row ``i`` odd holds
    ``(-1)^j k_{2+i-j-x}``, where the offset ``x`` is nonzero only in the
    wrap-around corner ``i >= m-2, j < 2``. The corner offset must be ``m``
    (indices taken mod m); ``wrap=4`` reproduces the frequently printed
    variant, which coincides only at ``m == 4`` and is not unitary beyond it.
    """
    if m < 4 or m % 2:
        raise ValueError(f"D4 scaling matrix needs even m >= 4, got {m}")
    wrap = m if wrap is None else wrap

    def k(l):
        return D4_K[l] if 0 <= l <= 3 else 0.0

    out = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            x = wrap if (i >= m - 2 and j < 2) else 0
            if i % 2 == 0:
                out[i, j] = k(j - i + x)
            else:
                out[i, j] = (-1) ** j * k(2 + i - j - x)
    return out


def wavelet_matrix(scaling: dict[int, np.ndarray], base_level: int, levels: int) -> np.ndarray:
    """Wavelet transform from a family of scaling matrices.

    ``scaling[i]`` is ``D_{2^i}``. ``U_{2^{i0}} = D_{2^{i0}}`` and
    ``U_{2^{k+1}} = Pi_{2,2^k} ((U_{2^k}, I) (x)_R I_2) D_{2^{k+1}}``.
    """
    u = as_matrix(scaling[base_level])
    for i in range(base_level + 1, base_level + levels + 1):
        size = 1 << (i - 1)
        step = gkron(RIGHT, [u, np.eye(size)], [np.eye(2)] * size)
        u = shuffle_matrix(2, size) @ step @ as_matrix(scaling[i])
    return u


def haar_scaling_matrix(i: int) -> np.ndarray:
    """``I_{2^{i-1}} (x)_R W``, the Haar scaling matrix of dimension 2^i."""
    return kron(RIGHT, np.eye(1 << (i - 1)), W)
