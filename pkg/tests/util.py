import numpy as np

from qkron.circuit import (
    Circuit, IndexPermutation, Multiplexed, PhasePair, PredicatePhase, RegisterLayout,
    SingleUnitary, ValueControlled,
)


def random_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_tuple(rng, length, n):
    return np.stack([random_unitary(rng, n) for _ in range(length)])


def loop_gkron(side, a, c):
    """Entry-by-entry evaluation of the generalized Kronecker product."""
    k, p, q = a.shape
    _, kk, l = c.shape
    out = np.zeros((p * k, q * l), dtype=complex)
    if side == "right":
        for u in range(p):
            for v in range(k):
                for x in range(q):
                    for y in range(l):
                        out[u * k + v, x * l + y] = a[v][u, x] * c[x][v, y]
    else:
        for u in range(k):
            for v in range(p):
                for x in range(l):
                    for y in range(q):
                        out[u * p + v, x * q + y] = a[u][v, y] * c[y][u, x]
    return out


def random_circuit(rng, max_regs=3, max_gates=6):
    """A random well-formed circuit mixing every gate kind."""
    k = int(rng.integers(1, max_regs + 1))
    dims = tuple(int(d) for d in rng.integers(2, 5, size=k))
    layout = RegisterLayout(dims)
    gates = []
    for _ in range(int(rng.integers(0, max_gates + 1))):
        kind = int(rng.integers(0, 6))
        t = int(rng.integers(0, k))
        others = [r for r in range(k) if r != t]
        if kind == 0 or (not others and kind in (1, 2, 3)):
            gates.append(SingleUnitary(t, random_unitary(rng, dims[t]), "U"))
        elif kind == 1:
            c = int(rng.choice(others))
            gates.append(ValueControlled((((c,), int(rng.integers(0, dims[c]))),), t,
                                         random_unitary(rng, dims[t]), "V"))
        elif kind == 2:
            c = int(rng.choice(others))
            gates.append(Multiplexed(c, t, random_tuple(rng, dims[c], dims[t]), "M"))
        elif kind == 3:
            c = int(rng.choice(others))
            gates.append(PhasePair((t,), (c,), int(rng.integers(0, 12)), int(rng.integers(1, 12))))
        elif kind == 4:
            phase = np.exp(2j * np.pi * rng.random())
            gates.append(PredicatePhase((((t,), "ge", int(rng.integers(0, dims[t]))), ((t,), "odd", 0)), phase))
        else:
            span = tuple(range(k))
            total = int(np.prod(dims))
            divs = [m for m in range(1, total + 1) if total % m == 0]
            m = int(rng.choice(divs))
            gates.append(IndexPermutation("shuffle", span, (m, total // m)))
    return Circuit(layout, tuple(gates))
