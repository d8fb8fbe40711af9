"""Finite groups with explicit multiplication tables, their complete sets of
irreducible unitary representations, encodings and Fourier-oracle matrices.

Five families are supported: cyclic ``Z_n``, direct products, quaternionic
``Q_n`` (n even), metacyclic groups ``<a, b : b^-1 a b = a^r, b^q = a^s,
a^m = 1>`` and the error-correction groups ``E_n``. Element labels are chosen
so that each family's standard time encoding is the identity on labels:

* cyclic: ``j``;
* quaternionic ``c^j r^k``: ``2n j + k``;
* metacyclic ``b^j a^i``: ``m j + i``;
* ``E_n`` element ``(lam, a, c)``: the bit string ``lam a_1 c_1 ... a_n c_n``;
* product ``(g1, g2)``: ``|G2| g1 + g2``.

Matrix-coefficient labels ``(rep, k, l)`` use zero-based ``k`` and ``l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import connected_components

from .tensor import DEFAULT_TOL, max_abs


class ConstraintError(ValueError):
    """Group parameters violate a defining relation or a supported range."""


class UnsupportedFamily(ValueError):
    pass


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))


def _root(n: int, k) -> np.ndarray:
    """``w_n^k = exp(2 pi i k / n)`` with the exponent reduced mod n."""
    return np.exp(2j * np.pi * (np.asarray(k) % n) / n)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    names: tuple[str, ...]
    family: str
    params: tuple = ()
    factors: tuple["FiniteGroup", ...] = ()
    identity: int = field(init=False)
    inverse: np.ndarray = field(init=False)

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
            raise ValueError("multiplication table must be a square table of labels")
        ids = [e for e in range(n) if np.array_equal(t[e], np.arange(n))
               and np.array_equal(t[:, e], np.arange(n))]
        if len(ids) != 1:
            raise ValueError("table has no two-sided identity")
        e = ids[0]
        inv = np.full(n, -1, dtype=np.int64)
        for g in range(n):
            hits = np.flatnonzero(t[g] == e)
            if len(hits) != 1 or t[hits[0], g] != e:
                raise ValueError(f"element {g} has no two-sided inverse")
            inv[g] = hits[0]
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def power(self, g: int, k: int) -> int:
        out = self.identity
        base = g if k >= 0 else int(self.inverse[g])
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def is_associative(self) -> bool:
        t = self.table
        for a in range(self.order):
            if not np.array_equal(t[t[a]], t[a][t]):
                return False
        return True

    def __repr__(self):
        return f"FiniteGroup({self.family}{self.params}, order={self.order})"


# -- constructors -------------------------------------------------------------

def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ConstraintError("cyclic order n must be >= 1")
    x = np.arange(n)
    return FiniteGroup(np.add.outer(x, x) % n, tuple(f"a^{j}" for j in x), "cyclic", (n,))


def make_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    n1, n2 = g1.order, g2.order
    table = (g1.table[:, None, :, None] * n2 + g2.table[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    names = tuple(f"({a}, {b})" for a in g1.names for b in g2.names)
    return FiniteGroup(table, names, "product", (), (g1, g2))


def _metacyclic_table(q: int, m: int, r: int, s: int) -> np.ndarray:
    # (b^j a^i)(b^j2 a^i2) = b^(j+j2 mod q) a^(i r^j2 + i2 + s [j+j2 >= q])
    j, i = np.divmod(np.arange(q * m), m)
    rpow = np.array([pow(r, k, m) for k in range(q)], dtype=np.int64)
    jj = j[:, None] + j[None, :]
    ii = i[:, None] * rpow[j][None, :] + i[None, :] + s * (jj >= q)
    return (jj % q) * m + ii % m


def _check_metacyclic(q: int, m: int, r: int, s: int) -> None:
    if not _is_prime(q):
        raise ConstraintError(f"q = {q} must be prime")
    if m < 1:
        raise ConstraintError(f"a^m = 1 needs m >= 1, got {m}")
    if math.gcd(m, r) != 1:
        raise ConstraintError(f"gcd(m, r) = gcd({m}, {r}) must be 1")
    if (s * (r - 1)) % m:
        raise ConstraintError(f"m | s(r-1) fails: {m} does not divide {s * (r - 1)}")
    if pow(r, q, m) != 1 % m:
        raise ConstraintError(f"r^q = 1 (mod m) fails: {r}^{q} mod {m} = {pow(r, q, m)}")


def make_metacyclic(q: int, m: int, r: int, s: int) -> FiniteGroup:
    """Metacyclic group of order qm with elements ``b^j a^i``."""
    _check_metacyclic(q, m, r, s)
    r, s = r % m, s % m
    names = tuple(f"b^{j} a^{i}" for j in range(q) for i in range(m))
    return FiniteGroup(_metacyclic_table(q, m, r, s), names, "metacyclic", (q, m, r, s))


def make_quaternionic(n: int) -> FiniteGroup:
    """``Q_n = <r, c : r^2n = c^4 = 1, c r = r^(2n-1) c, c^2 = r^n>``, order 4n."""
    if n < 2 or n % 2:
        raise ConstraintError(f"quaternionic Q_n requires even n >= 2, got n = {n}")
    table = _metacyclic_table(2, 2 * n, 2 * n - 1, n)
    names = tuple(f"c^{j} r^{k}" for j in range(2) for k in range(2 * n))
    return FiniteGroup(table, names, "quaternionic", (n,))


def en_decode(n: int, label: int) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Label -> ``(lam, a, c)`` for an element of ``E_n``."""
    bits = [(label >> (2 * n - p)) & 1 for p in range(2 * n + 1)]
    return bits[0], tuple(bits[1::2]), tuple(bits[2::2])


def en_encode(lam: int, a, c) -> int:
    out = lam
    for ai, ci in zip(a, c):
        out = (out << 2) | (ai << 1) | ci
    return out


def make_en(n: int) -> FiniteGroup:
    """``E_n = {(-I)^lam X(a) Z(c)}`` of order ``2 * 4^n``.

    ``(lam, a, c)(lam2, a2, c2) = (lam + lam2 + c.a2, a ^ a2, c ^ c2)`` since
    moving ``Z(c)`` past ``X(a2)`` costs ``(-1)^(c.a2)``.
    """
    if n < 0:
        raise ConstraintError("E_n needs n >= 0")
    size = 2 * 4 ** n
    dec = [en_decode(n, g) for g in range(size)]
    table = np.empty((size, size), dtype=np.int64)
    for g, (l1, a1, c1) in enumerate(dec):
        for h, (l2, a2, c2) in enumerate(dec):
            lam = (l1 + l2 + sum(x * y for x, y in zip(c1, a2))) % 2
            table[g, h] = en_encode(lam, [x ^ y for x, y in zip(a1, a2)], [x ^ y for x, y in zip(c1, c2)])
    names = []
    for lam, a, c in dec:
        names.append(f"({lam}, {''.join(map(str, a)) or '-'}, {''.join(map(str, c)) or '-'})")
    return FiniteGroup(table, tuple(names), "en", (n,))


def parse_group_spec(spec) -> FiniteGroup:
    """Build a group from text such as ``"metacyclic 3 7 2 0"`` or
    ``"product cyclic 2 cyclic 3"``."""
    tokens = spec.split() if isinstance(spec, str) else list(spec)
    group, rest = _parse_group(tokens)
    if rest:
        raise ValueError(f"trailing tokens in group spec: {' '.join(rest)}")
    return group


def _parse_group(tokens):
    if not tokens:
        raise ValueError("empty group spec")
    head, rest = tokens[0], tokens[1:]
    arity = {"cyclic": 1, "quaternionic": 1, "en": 1, "metacyclic": 4}
    if head == "product":
        g1, rest = _parse_group(rest)
        g2, rest = _parse_group(rest)
        return make_product(g1, g2), rest
    if head not in arity:
        raise ValueError(f"unknown group family {head!r}")
    k = arity[head]
    if len(rest) < k:
        raise ValueError(f"{head} needs {k} integer parameter(s)")
    try:
        args = [int(t) for t in rest[:k]]
    except ValueError as exc:
        raise ValueError(f"bad parameters for {head}: {rest[:k]}") from exc
    maker = {"cyclic": make_cyclic, "quaternionic": make_quaternionic,
             "en": make_en, "metacyclic": make_metacyclic}[head]
    return maker(*args), rest[k:]


def group_spec(g: FiniteGroup) -> str:
    if g.family == "product":
        return "product " + " ".join(group_spec(f) for f in g.factors)
    return " ".join([g.family] + [str(p) for p in g.params])


# -- representations --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Representation:
    """A representation given by its matrix at every element label."""
    name: str
    matrices: np.ndarray
    key: tuple = ()

    @property
    def degree(self) -> int:
        return self.matrices.shape[1]

    def matrix_at(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def character(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)


@dataclass(frozen=True, eq=False)
class RepresentationSet:
    group: FiniteGroup
    members: tuple[Representation, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def coefficient_labels(self) -> list[tuple[int, int, int]]:
        return [(i, k, l) for i, rho in enumerate(self.members)
                for k in range(rho.degree) for l in range(rho.degree)]


def _from_generators(g: FiniteGroup, words, gens) -> np.ndarray:
    """Matrices ``A^j B^k`` for elements written as words ``(j, k)``."""
    a, b = (np.asarray(x, dtype=complex) for x in gens)
    out = np.empty((g.order,) + a.shape, dtype=complex)
    for label, (j, k) in enumerate(words):
        out[label] = np.linalg.matrix_power(a, j) @ np.linalg.matrix_power(b, k)
    return out


def _irreps_cyclic(g):
    (n,) = g.params
    j = np.arange(n)
    return [Representation(f"zeta^{i}", np.conj(_root(n, i * j)).reshape(n, 1, 1), ("zeta", i))
            for i in range(n)]


def _irreps_quaternionic(g):
    (n,) = g.params
    words = [(j, k) for j in range(2) for k in range(2 * n)]
    reps = []
    # (value at c, value at r) for rho^1 .. rho^4
    for idx, (cv, rv) in enumerate([(1, 1), (-1, 1), (1, -1), (-1, -1)], start=1):
        reps.append(Representation(f"rho^{idx}", _from_generators(g, words, ([[cv]], [[rv]])), ("rho", idx)))
    for i in range(1, n):
        w = np.conj(_root(2 * n, i))
        sig_r = np.diag([w, 1 / w])
        sig_c = np.array([[0, (-1) ** i], [1, 0]])
        reps.append(Representation(f"sigma^{i}", _from_generators(g, words, (sig_c, sig_r)), ("sigma", i)))
    return reps


def metacyclic_orbit_representatives(q: int, m: int, r: int) -> list[int]:
    """Smallest element of each size-q orbit of ``x -> x r`` on ``Z_m``."""
    seen, reps = set(), []
    for i in range(m):
        if i in seen:
            continue
        orbit = {(i * pow(r, l, m)) % m for l in range(q)}
        seen |= orbit
        if len(orbit) > 1:
            reps.append(i)
    return reps


def _irreps_metacyclic(g):
    q, m, r, s = g.params
    d = math.gcd(r - 1, m)
    words = [(j, i) for j in range(q) for i in range(m)]
    reps = []
    for i in range(d):
        for j in range(q):
            ra = np.conj(_root(d, i))
            rb = np.conj(_root(q, j)) * np.conj(_root(q * d, i * s))
            reps.append(Representation(f"rho^({i},{j})", _from_generators(g, words, ([[rb]], [[ra]])), ("rho", i, j)))
    for i in metacyclic_orbit_representatives(q, m, r):
        a = np.diag(np.conj(_root(m, [i * pow(r, l, m) for l in range(q)])))
        b = np.zeros((q, q), dtype=complex)
        b[np.arange(1, q), np.arange(q - 1)] = 1.0
        b[0, q - 1] = np.conj(_root(m, i * s))
        reps.append(Representation(f"induced zeta^{i}", _from_generators(g, words, (b, a)), ("induced", i)))
    return reps


def _irreps_en(g):
    (n,) = g.params
    dec = [en_decode(n, h) for h in range(g.order)]
    reps = []
    for x in range(2 ** n):
        xb = [(x >> (n - 1 - p)) & 1 for p in range(n)]
        for z in range(2 ** n):
            zb = [(z >> (n - 1 - p)) & 1 for p in range(n)]
            vals = np.array([(-1) ** (np.dot(xb, a) + np.dot(zb, c)) for _, a, c in dec], dtype=complex)
            reps.append(Representation(f"rho_{x:0{n}b}{z:0{n}b}" if n else "rho",
                                       vals.reshape(-1, 1, 1), ("rho", tuple(xb), tuple(zb))))
    sigma = np.stack([en_sigma_matrix(lam, a, c) for lam, a, c in dec])
    reps.append(Representation("sigma", sigma, ("sigma",)))
    return reps


PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def en_sigma_matrix(lam: int, a, c) -> np.ndarray:
    """``((-I)^lam X^a1 Z^c1) (x)_R (X^a2 Z^c2) (x)_R ...``"""
    out = np.array([[(-1.0) ** lam]], dtype=complex)
    for ai, ci in zip(a, c):
        out = np.kron(out, np.linalg.matrix_power(PAULI_X, ai) @ np.linalg.matrix_power(PAULI_Z, ci))
    return out


def _irreps_product(g):
    g1, g2 = g.factors
    r1, r2 = irreps(g1), irreps(g2)
    reps = []
    for i1, p1 in enumerate(r1):
        for i2, p2 in enumerate(r2):
            mats = np.einsum("aij,bkl->abikjl", p1.matrices, p2.matrices)
            d = p1.degree * p2.degree
            reps.append(Representation(f"{p1.name} (x) {p2.name}",
                                       mats.reshape(g.order, d, d), ("product", i1, i2)))
    return reps


_IRREPS = {
    "cyclic": _irreps_cyclic,
    "quaternionic": _irreps_quaternionic,
    "metacyclic": _irreps_metacyclic,
    "en": _irreps_en,
    "product": _irreps_product,
}


def irreps(g: FiniteGroup) -> RepresentationSet:
    """The family's explicit complete set of irreducible unitary representations."""
    if g.family not in _IRREPS:
        raise UnsupportedFamily(f"no representation set for family {g.family!r}")
    return RepresentationSet(g, tuple(_IRREPS[g.family](g)))


def representation_errors(g: FiniteGroup, rho: Representation) -> dict:
    """Max homomorphism and unitarity defects of one representation."""
    m = rho.matrices
    lhs = m[g.table]                              # rho(gh)
    rhs = np.einsum("gij,hjk->ghik", m, m)        # rho(g) rho(h)
    eye = np.eye(rho.degree)
    unit = np.einsum("gij,gkj->gik", m, m.conj()) - eye
    return {"homomorphism": max_abs(lhs - rhs), "unitarity": max_abs(unit)}


def representation_set_errors(rs: RepresentationSet) -> dict:
    """Defects of a claimed complete set of inequivalent irreducibles."""
    g = rs.group
    per_rep = [representation_errors(g, rho) for rho in rs]
    chars = np.array([rho.character() for rho in rs])
    gram = chars @ chars.conj().T / g.order
    return {
        "homomorphism": max(e["homomorphism"] for e in per_rep),
        "unitarity": max(e["unitarity"] for e in per_rep),
        "degree_sum": sum(rho.degree ** 2 for rho in rs) - g.order,
        "character_orthonormality": max_abs(gram - np.eye(len(rs))),
    }


def coefficient(rs: RepresentationSet, label: tuple[int, int, int], g: int) -> complex:
    """Normalized matrix coefficient ``sqrt(d / |G|) rho_kl(g)``."""
    i, k, l = label
    rho = rs[i]
    if not (0 <= k < rho.degree and 0 <= l < rho.degree):
        raise IndexError(f"coefficient ({k}, {l}) out of range for degree {rho.degree}")
    return math.sqrt(rho.degree / rs.group.order) * complex(rho.matrices[g, k, l])


# -- encodings and oracles ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class EncodingMap:
    e_time: np.ndarray
    e_freq: dict

    def validate(self, g: FiniteGroup, rs: RepresentationSet) -> None:
        n = g.order
        if sorted(np.asarray(self.e_time).tolist()) != list(range(n)):
            raise ValueError("time encoding is not a bijection onto 0..|G|-1")
        if set(self.e_freq) != set(rs.coefficient_labels()):
            raise ValueError("frequency encoding does not cover exactly the matrix coefficients")
        if sorted(self.e_freq.values()) != list(range(n)):
            raise ValueError("frequency encoding is not a bijection onto 0..|G|-1")

    def freq_order(self) -> list:
        """Coefficient labels sorted by their encoded index."""
        return sorted(self.e_freq, key=self.e_freq.get)


def _efreq_cyclic(g, rs):
    return {(i, 0, 0): i for i in range(g.order)}


def _efreq_quaternionic(g, rs):
    (n,) = g.params
    out = {}
    for idx, rho in enumerate(rs):
        if rho.key[0] == "rho":
            out[(idx, 0, 0)] = {1: 0, 3: n, 2: 2 * n, 4: 3 * n}[rho.key[1]]
        else:
            i = rho.key[1]
            out[(idx, 0, 0)] = i
            out[(idx, 1, 1)] = 2 * n - i
            out[(idx, 1, 0)] = 2 * n + i
            out[(idx, 0, 1)] = 4 * n - i
    return out


def _efreq_metacyclic(g, rs):
    q, m, r, s = g.params
    d = math.gcd(r - 1, m)
    out = {}
    for idx, rho in enumerate(rs):
        if rho.key[0] == "rho":
            _, i, j = rho.key
            out[(idx, 0, 0)] = j * m + i * (m // d)
        else:
            i = rho.key[1]
            for k in range(q):
                for l in range(q):
                    out[(idx, k, l)] = m * ((k - l) % q) + (i * pow(r, l, m)) % m
    return out


def _efreq_en(g, rs):
    (n,) = g.params
    out = {}
    for idx, rho in enumerate(rs):
        if rho.key[0] == "rho":
            _, xb, zb = rho.key
            out[(idx, 0, 0)] = en_encode(0, xb, zb)
        else:
            size = 2 ** n
            for k in range(size):
                for l in range(size):
                    kb = [(k >> (n - 1 - p)) & 1 for p in range(n)]
                    lb = [(l >> (n - 1 - p)) & 1 for p in range(n)]
                    out[(idx, k, l)] = en_encode(1, [x ^ y for x, y in zip(kb, lb)], lb)
    return out


def _efreq_product(g, rs):
    g1, g2 = g.factors
    e1, e2 = standard_encoding(g1), standard_encoding(g2)
    r2 = irreps(g2)
    out = {}
    for idx, rho in enumerate(rs):
        _, i1, i2 = rho.key
        d2 = r2[i2].degree
        for k in range(rho.degree):
            for l in range(rho.degree):
                k1, k2 = divmod(k, d2)
                l1, l2 = divmod(l, d2)
                out[(idx, k, l)] = g2.order * e1.e_freq[(i1, k1, l1)] + e2.e_freq[(i2, k2, l2)]
    return out


_EFREQ = {
    "cyclic": _efreq_cyclic,
    "quaternionic": _efreq_quaternionic,
    "metacyclic": _efreq_metacyclic,
    "en": _efreq_en,
    "product": _efreq_product,
}


def standard_encoding(g: FiniteGroup, rs: RepresentationSet | None = None) -> EncodingMap:
    """The family's standard time and frequency encodings."""
    if g.family not in _EFREQ:
        raise UnsupportedFamily(f"no standard encoding for family {g.family!r}")
    rs = rs or irreps(g)
    if g.family == "product":
        g1, g2 = g.factors
        t1, t2 = standard_encoding(g1).e_time, standard_encoding(g2).e_time
        e_time = (g2.order * t1[:, None] + t2[None, :]).ravel()
    else:
        e_time = np.arange(g.order)
    enc = EncodingMap(np.asarray(e_time, dtype=np.int64), _EFREQ[g.family](g, rs))
    enc.validate(g, rs)
    return enc


@dataclass(frozen=True, eq=False)
class FourierOracle:
    matrix: np.ndarray
    encoding: EncodingMap
    group: FiniteGroup
    reps: RepresentationSet


def fourier_oracle(g: FiniteGroup, rs: RepresentationSet | None = None,
                   enc: EncodingMap | None = None) -> FourierOracle:
    """Matrix with entry ``[e_freq(b), e_time(h)] = conj(b(h))``.

    Row ``e_freq(b)`` holds the coordinates of the Fourier coefficient
    ``(v, b) = sum_h v(h) conj(b(h))``.
    """
    rs = rs or irreps(g)
    enc = enc or standard_encoding(g, rs)
    enc.validate(g, rs)
    n = g.order
    out = np.zeros((n, n), dtype=complex)
    cols = np.asarray(enc.e_time)
    for (i, k, l), row in enc.e_freq.items():
        rho = rs[i]
        out[row, cols] = np.conj(math.sqrt(rho.degree / n) * rho.matrices[:, k, l])
    return FourierOracle(out, enc, g, rs)


# -- subgroups and adapted representation sets --------------------------------

@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup given as its own group plus the parent label of each element."""
    parent: FiniteGroup
    group: FiniteGroup
    elements: np.ndarray

    def __post_init__(self):
        el = np.asarray(self.elements, dtype=np.int64)
        object.__setattr__(self, "elements", el)
        if len(el) != self.group.order or len(set(el.tolist())) != len(el):
            raise ValueError("subgroup element list must be injective with one entry per element")
        if not np.array_equal(self.parent.table[np.ix_(el, el)], el[self.group.table]):
            raise ValueError("element subset is not a subgroup (closure or embedding fails)")


def cyclic_subgroup(g: FiniteGroup, generator: int) -> Subgroup:
    elems = [g.identity]
    while True:
        nxt = g.mul(elems[-1], generator)
        if nxt == g.identity:
            break
        elems.append(nxt)
    return Subgroup(g, make_cyclic(len(elems)), np.array(elems))


def en_subgroup(n: int) -> Subgroup:
    """``E_{n-1}`` inside ``E_n`` as the elements with ``a_n = c_n = 0``."""
    if n < 1:
        raise ConstraintError("E_{n-1} subgroup needs n >= 1")
    small = make_en(n - 1)
    return Subgroup(make_en(n), small, np.arange(small.order) * 4)


@dataclass
class AdaptedReport:
    ok: bool
    blocks: list = field(default_factory=list)
    failures: list = field(default_factory=list)


def check_adapted(rs: RepresentationSet, sub: Subgroup, rs_h: RepresentationSet,
                  tol: float = DEFAULT_TOL) -> AdaptedReport:
    """Check that every ``rho`` restricted to ``sub`` is, entrywise, a direct
    sum of members of ``rs_h``.

    Blocks are the connected components of the restricted support pattern;
    each must equal some member of ``rs_h`` exactly (within ``tol``). The
    report lists, per representation, ``(row indices, index into rs_h)``.
    """
    if rs_h.group is not sub.group:
        raise ValueError("subgroup representation set belongs to a different group")
    report = AdaptedReport(True)
    for idx, rho in enumerate(rs):
        res = rho.matrices[sub.elements]
        support = np.any(np.abs(res) > tol, axis=0)
        _, comp = connected_components(support | support.T, directed=False)
        blocks = []
        for c in range(comp.max() + 1):
            rows = np.flatnonzero(comp == c)
            sub_mats = res[:, rows][:, :, rows]
            match = next((j for j, rh in enumerate(rs_h)
                          if rh.degree == len(rows) and max_abs(rh.matrices - sub_mats) <= tol), None)
            if match is None:
                report.ok = False
                report.failures.append((idx, tuple(rows.tolist())))
            blocks.append((tuple(rows.tolist()), match))
        report.blocks.append(blocks)
    return report


def encoding_alignment(rs_a: RepresentationSet, enc_a: EncodingMap,
                       rs_b: RepresentationSet, enc_b: EncodingMap,
                       tol: float = DEFAULT_TOL) -> np.ndarray:
    """Index map between two encodings of the same group table.

    Each member of ``rs_a`` is matched to an entrywise-equal member of
    ``rs_b``. Returns ``p`` with ``p[enc_a index] = enc_b index`` for both
    time and frequency labels.
    """
    if not np.array_equal(rs_a.group.table, rs_b.group.table):
        raise ValueError("encodings belong to groups with different multiplication tables")
    if not np.array_equal(enc_a.e_time, enc_b.e_time):
        raise ValueError("time encodings differ; only frequency realignment is supported")
    p = np.full(rs_a.group.order, -1, dtype=np.int64)
    for i, rho in enumerate(rs_a):
        j = next((j for j, other in enumerate(rs_b) if other.degree == rho.degree
                  and max_abs(other.matrices - rho.matrices) <= tol), None)
        if j is None:
            raise ValueError(f"representation {rho.name} has no entrywise match")
        for k in range(rho.degree):
            for l in range(rho.degree):
                p[enc_a.e_freq[(i, k, l)]] = enc_b.e_freq[(j, k, l)]
    return p
