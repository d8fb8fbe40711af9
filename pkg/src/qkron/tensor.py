"""Dense complex-matrix algebra: Kronecker products, generalized Kronecker
products of matrix tuples, shuffle permutations, direct sums and phase-aware
comparison.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; a matrix tuple is
any sequence of equally shaped matrices. Indices are zero-based throughout.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-10

LEFT = "left"
RIGHT = "right"


class ShapeError(ValueError):
    """Raised when matrix or tuple shapes violate an operation's pattern."""


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ShapeError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def as_tuple(mats) -> np.ndarray:
    """Stack a matrix tuple into a ``(len, rows, cols)`` array.

    Raises:
        ShapeError: if the tuple is empty or its members differ in shape.
    """
    if isinstance(mats, np.ndarray) and mats.ndim == 3:
        if mats.shape[0] == 0:
            raise ShapeError("matrix tuple must be non-empty")
        return mats.astype(complex, copy=False)
    members = [as_matrix(m) for m in mats]
    if not members:
        raise ShapeError("matrix tuple must be non-empty")
    shape = members[0].shape
    for i, m in enumerate(members):
        if m.shape != shape:
            raise ShapeError(f"tuple member {i} has shape {m.shape}, expected {shape}")
    return np.stack(members)


def constant_tuple(m, length: int) -> np.ndarray:
    m = as_matrix(m)
    return np.broadcast_to(m, (length,) + m.shape).copy()


def _check_side(side: str) -> None:
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def kron(side: str, a, c) -> np.ndarray:
    """Standard Kronecker product.

    The right product has blocks ``a[i, j] * C``; the left product has blocks
    ``A * c[i, j]``.
    """
    _check_side(side)
    a, c = as_matrix(a), as_matrix(c)
    return np.kron(a, c) if side == RIGHT else np.kron(c, a)


def _gkron_shapes(a: np.ndarray, c: np.ndarray) -> tuple[int, int, int, int]:
    k, p, q = a.shape
    q2, k2, l = c.shape
    if q2 != q:
        raise ShapeError(f"second tuple must have {q} members (columns of A), got {q2}")
    if k2 != k:
        raise ShapeError(f"second tuple members must have {k} rows (length of A), got {k2}")
    return k, p, q, l


def gkron(side: str, a, c) -> np.ndarray:
    """Generalized Kronecker product of a k-tuple of (p x q) matrices and a
    q-tuple of (k x l) matrices, giving a (pk x ql) matrix.

    Right: ``d[u*k + v, x*l + y] = A[v][u, x] * C[x][v, y]``.
    Left:  ``d[u*p + v, x*q + y] = A[u][v, y] * C[y][u, x]``.
    """
    _check_side(side)
    a, c = as_tuple(a), as_tuple(c)
    k, p, q, l = _gkron_shapes(a, c)
    if side == RIGHT:
        d = np.einsum("vux,xvy->uvxy", a, c)
    else:
        d = np.einsum("uvy,yux->uvxy", a, c)
    return d.reshape(p * k, q * l)


def shuffle_matrix(m: int, n: int) -> np.ndarray:
    """Perfect-shuffle permutation ``Pi_(m,n)`` of dimension mn.

    ``pi[d*n + e, d2*m + e2] = 1`` iff ``d == e2`` and ``d2 == e``; it maps
    column index ``d2*m + e2`` to row index ``e2*n + d2``.
    """
    if m < 1 or n < 1:
        raise ValueError("shuffle dimensions must be positive")
    cols = np.arange(m * n)
    d2, e2 = np.divmod(cols, m)
    out = np.zeros((m * n, m * n), dtype=complex)
    out[e2 * n + d2, cols] = 1.0
    return out


def diag_sum(mats) -> np.ndarray:
    """Block-diagonal direct sum of a matrix tuple, in tuple order."""
    mats = as_tuple(mats)
    k, p, q = mats.shape
    out = np.zeros((k * p, k * q), dtype=complex)
    for i in range(k):
        out[i * p:(i + 1) * p, i * q:(i + 1) * q] = mats[i]
    return out


def diagonalization_factorize(side: str, a, c) -> list[np.ndarray]:
    """Factor a generalized Kronecker product into shuffles and direct sums.

    Right: ``[Pi_pk, Diag(A), Pi_kq, Diag(C)]``; left:
    ``[Diag(A), Pi_kq, Diag(C), Pi_ql]``. The ordered product of the returned
    factors equals ``gkron(side, a, c)``.
    """
    _check_side(side)
    a, c = as_tuple(a), as_tuple(c)
    k, p, q, l = _gkron_shapes(a, c)
    if side == RIGHT:
        return [shuffle_matrix(p, k), diag_sum(a), shuffle_matrix(k, q), diag_sum(c)]
    return [diag_sum(a), shuffle_matrix(k, q), diag_sum(c), shuffle_matrix(q, l)]


def multiply(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Ordered product ``F[0] @ F[1] @ ... @ F[-1]``."""
    out = factors[0]
    for f in factors[1:]:
        out = out @ f
    return out


def tuple_product(a, c) -> np.ndarray:
    """Member-wise product ``(A^i C^i)_i`` of two equally long tuples."""
    a, c = as_tuple(a), as_tuple(c)
    if len(a) != len(c):
        raise ShapeError("tuples must have equal length")
    return np.einsum("ipr,irq->ipq", a, c)


def tuple_inverse(a) -> np.ndarray:
    return np.linalg.inv(as_tuple(a))


def max_abs(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m))) if m.size else 0.0


def is_unitary(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff the max-norm of ``M M^dagger - I`` is at most ``tol``."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"unitarity needs a square matrix, got {m.shape}")
    return max_abs(m @ m.conj().T - np.eye(m.shape[0])) <= tol


def equal_up_to_diag_phase(m, f, tol: float = DEFAULT_TOL) -> np.ndarray | None:
    """Find unit-modulus phases ``phi`` with ``M = diag(phi) F``.

    Each row's phase is read off the first column where ``|F[i, j]| > tol``
    and then checked against the whole row. A row of ``F`` that is entirely
    below ``tol`` requires the matching row of ``M`` to be as well, and gets
    phase 1. Returns ``None`` when no such vector exists.
    """
    m, f = as_matrix(m), as_matrix(f)
    if m.shape != f.shape or m.shape[0] != m.shape[1]:
        raise ShapeError(f"shapes must agree and be square: {m.shape} vs {f.shape}")
    phases = np.ones(m.shape[0], dtype=complex)
    for i in range(m.shape[0]):
        big = np.flatnonzero(np.abs(f[i]) > tol)
        if big.size == 0:
            if max_abs(m[i]) > tol:
                return None
            continue
        j = big[0]
        phi = m[i, j] / f[i, j]
        if abs(abs(phi) - 1.0) > tol:
            return None
        phi /= abs(phi)
        if max_abs(m[i] - phi * f[i]) > tol:
            return None
        phases[i] = phi
    return phases


def format_entry(z: complex) -> str:
    """``re,im`` token with 17 significant digits (round-trips doubles)."""
    return f"{z.real:.17g},{z.imag:.17g}"


def parse_entry(token: str) -> complex:
    re_s, im_s = token.split(",")
    return complex(float(re_s), float(im_s))


def write_matrix_text(m) -> str:
    """Serialize a matrix: a ``rows cols`` header, then one line per row."""
    m = as_matrix(m)
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    lines += [" ".join(format_entry(z) for z in row) for row in m]
    return "\n".join(lines) + "\n"


def read_matrix_text(text: str) -> np.ndarray:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix document")
    try:
        rows, cols = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad matrix header {lines[0]!r}") from exc
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} rows, found {len(lines) - 1}")
    out = np.empty((rows, cols), dtype=complex)
    for i, ln in enumerate(lines[1:]):
        toks = ln.split()
        if len(toks) != cols:
            raise ValueError(f"row {i} has {len(toks)} entries, expected {cols}")
        out[i] = [parse_entry(t) for t in toks]
    return out
