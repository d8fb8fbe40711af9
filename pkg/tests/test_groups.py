import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qkron.groups import (
    ConstraintError, EncodingMap, FiniteGroup, Subgroup, check_adapted, coefficient, cyclic_subgroup,
    en_decode, en_encode, en_subgroup, fourier_oracle, group_spec, irreps, make_cyclic, make_en,
    make_metacyclic, make_product, make_quaternionic, metacyclic_orbit_representatives,
    parse_group_spec, representation_set_errors, standard_encoding,
)
from qkron.oracles import dft_matrix
from qkron.tensor import is_unitary, max_abs

GROUPS = {
    "Z1": lambda: make_cyclic(1),
    "Z7": lambda: make_cyclic(7),
    "Z16": lambda: make_cyclic(16),
    "Z2xZ3": lambda: make_product(make_cyclic(2), make_cyclic(3)),
    "Q2": lambda: make_quaternionic(2),
    "Q4": lambda: make_quaternionic(4),
    "Q6": lambda: make_quaternionic(6),
    "M(2,5,4,0)": lambda: make_metacyclic(2, 5, 4, 0),
    "M(3,7,2,0)": lambda: make_metacyclic(3, 7, 2, 0),
    "M(2,8,7,4)": lambda: make_metacyclic(2, 8, 7, 4),
    "M(3,9,4,3)": lambda: make_metacyclic(3, 9, 4, 3),
    "E0": lambda: make_en(0),
    "E1": lambda: make_en(1),
    "E2": lambda: make_en(2),
    "Q2xZ3": lambda: make_product(make_quaternionic(2), make_cyclic(3)),
}


@pytest.mark.parametrize("name", GROUPS)
def test_group_axioms_and_irreps(name):
    g = GROUPS[name]()
    assert g.is_associative()
    assert all(g.mul(h, int(g.inverse[h])) == g.identity for h in range(g.order))
    err = representation_set_errors(irreps(g))
    assert err["homomorphism"] < 1e-10 and err["unitarity"] < 1e-10
    assert err["degree_sum"] == 0 and err["character_orthonormality"] < 1e-10
    assert is_unitary(fourier_oracle(g).matrix)


def test_orders():
    assert make_cyclic(1).order == 1
    assert make_product(make_cyclic(3), make_cyclic(5)).order == 15
    assert make_quaternionic(6).order == 24
    assert make_metacyclic(3, 7, 2, 0).order == 21
    assert [make_en(n).order for n in range(4)] == [2, 8, 32, 128]


def test_quaternion_relations():
    g = make_quaternionic(2)
    r, c = 1, 4  # labels of r and c (2n j + k)
    assert g.names[r] == "c^0 r^1" and g.names[c] == "c^1 r^0"
    assert g.power(c, 4) == g.identity and g.power(r, 4) == g.identity
    assert g.power(c, 2) == g.power(r, 2)
    assert g.mul(c, r) == g.mul(g.power(r, 3), c)


def test_metacyclic_relation():
    g = make_metacyclic(3, 7, 2, 0)
    a, b = 1, 7
    assert g.mul(g.mul(int(g.inverse[b]), a), b) == g.power(a, 2)
    assert g.power(b, 3) == g.identity and g.power(a, 7) == g.identity


@pytest.mark.parametrize("args, relation", [
    ((4, 7, 2, 0), "prime"),
    ((3, 6, 2, 0), "gcd"),
    ((2, 8, 3, 1), "s(r-1)"),
    ((3, 8, 3, 0), "r^q"),
])
def test_metacyclic_constraints(args, relation):
    with pytest.raises(ConstraintError, match=relation.replace("(", r"\(").replace(")", r"\)").replace("^", r"\^")):
        make_metacyclic(*args)


def test_quaternion_rejects_odd():
    with pytest.raises(ConstraintError, match="even"):
        make_quaternionic(3)


def test_en1_is_dihedral_of_order_eight():
    g = make_en(1)
    involutions = [h for h in range(8) if h != g.identity and g.mul(h, h) == g.identity]
    assert len(involutions) == 5
    assert not np.array_equal(g.table, g.table.T)


@given(n=st.integers(0, 3), data=st.data())
def test_en_multiplication_matches_matrices(n, data):
    g = make_en(n)
    h1 = data.draw(st.integers(0, g.order - 1))
    h2 = data.draw(st.integers(0, g.order - 1))
    sigma = irreps(g)[-1].matrices
    assert max_abs(sigma[h1] @ sigma[h2] - sigma[g.mul(h1, h2)]) == 0


@given(n=st.integers(0, 4), data=st.data())
def test_en_label_round_trip(n, data):
    label = data.draw(st.integers(0, 2 * 4 ** n - 1))
    assert en_encode(*en_decode(n, label)) == label


@pytest.mark.parametrize("n", [1, 2, 3])
def test_en_sigma_recursive_coefficients(n):
    big = irreps(make_en(n))[-1].matrices
    small = irreps(make_en(n - 1))[-1].matrices
    for h in range(2 * 4 ** n):
        lam, a, c = en_decode(n, h)
        hs = en_encode(lam, a[:-1], c[:-1])
        for kk in range(2 ** n):
            for ll in range(2 ** n):
                k, kn = divmod(kk, 2)
                l, ln = divmod(ll, 2)
                want = (-1) ** (ln * c[-1]) * ((kn ^ ln) == a[-1]) * small[hs, k, l]
                assert big[h, kk, ll] == want


def test_irrep_counts():
    assert [r.degree for r in irreps(make_cyclic(5))] == [1] * 5
    assert sorted(r.degree for r in irreps(make_quaternionic(2))) == [1, 1, 1, 1, 2]
    degs = sorted(r.degree for r in irreps(make_metacyclic(3, 7, 2, 0)))
    assert degs == [1, 1, 1, 3, 3]
    assert metacyclic_orbit_representatives(3, 7, 2) == [1, 3]
    assert sorted(r.degree for r in irreps(make_en(2))) == [1] * 16 + [4]


@pytest.mark.parametrize("params", [(3, 7, 2, 0), (2, 8, 7, 4), (3, 9, 4, 3), (2, 5, 4, 0)])
def test_metacyclic_one_dim_consistency(params):
    q, m, r, s = params
    g = make_metacyclic(*params)
    a, b = 1, m
    for rho in irreps(g):
        if rho.degree != 1:
            continue
        ra, rb = rho.matrices[a, 0, 0], rho.matrices[b, 0, 0]
        assert abs(rb ** q - ra ** s) < 1e-12
        assert abs(ra ** r - ra) < 1e-12


def test_coefficients():
    n = 6
    rs = irreps(make_cyclic(n))
    w = np.exp(2j * np.pi / n)
    for i in range(n):
        for j in range(n):
            assert abs(coefficient(rs, (i, 0, 0), j) - np.conj(w) ** (i * j) / math.sqrt(n)) < 1e-12
    q = make_quaternionic(2)
    rq = irreps(q)
    for idx, rho in enumerate(rq):
        for k in range(rho.degree):
            for l in range(rho.degree):
                assert abs(coefficient(rq, (idx, k, l), q.identity) - math.sqrt(rho.degree / 8) * (k == l)) < 1e-15
    sigma = len(rq) - 1
    w4 = np.exp(2j * np.pi / 4)
    assert abs(coefficient(rq, (sigma, 0, 0), 1) - 0.5 * np.conj(w4)) < 1e-15
    assert abs(coefficient(rq, (sigma, 1, 1), 1) - 0.5 * w4) < 1e-15
    with pytest.raises(IndexError):
        coefficient(rq, (0, 1, 0), 0)


def test_cyclic_oracle_is_dft():
    for n in (1, 2, 5, 8):
        assert max_abs(fourier_oracle(make_cyclic(n)).matrix - dft_matrix(n)) < 1e-12


def test_standard_encodings():
    q = make_quaternionic(4)
    enc = standard_encoding(q)
    assert enc.e_time.tolist() == list(range(16))
    assert sorted(enc.e_freq.values()) == list(range(16))
    m = standard_encoding(make_metacyclic(3, 7, 2, 0))
    assert sorted(m.e_freq.values()) == list(range(21))
    e = standard_encoding(make_en(1))
    assert e.e_time.tolist() == list(range(8))
    # sigma_{k,l} of E_1 sits at 1 (k^l) l
    sigma = len(irreps(make_en(1))) - 1
    assert [e.e_freq[(sigma, k, l)] for k in range(2) for l in range(2)] == [4, 7, 6, 5]


def test_non_bijective_encoding_rejected():
    g = make_cyclic(3)
    rs = irreps(g)
    bad = EncodingMap(np.array([0, 1, 1]), {(i, 0, 0): i for i in range(3)})
    with pytest.raises(ValueError):
        fourier_oracle(g, rs, bad)
    bad2 = EncodingMap(np.arange(3), {(0, 0, 0): 0, (1, 0, 0): 0, (2, 0, 0): 2})
    with pytest.raises(ValueError):
        fourier_oracle(g, rs, bad2)


def test_adapted_quaternion_chain():
    for n in (2, 4):
        g = make_quaternionic(n)
        sub = cyclic_subgroup(g, 1)
        rs_h = irreps(sub.group)
        rep = check_adapted(irreps(g), sub, rs_h)
        assert rep.ok
        for rho, blocks in zip(irreps(g), rep.blocks):
            if rho.key[0] == "sigma":
                i = rho.key[1]
                assert [(rows, rs_h[j].key[1]) for rows, j in blocks] == [((0,), i), ((1,), 2 * n - i)]


def test_adapted_metacyclic_chain():
    for params in [(2, 5, 4, 0), (3, 7, 2, 0)]:
        q, m, r, s = params
        g = make_metacyclic(*params)
        sub = cyclic_subgroup(g, 1)
        rs_h = irreps(sub.group)
        rep = check_adapted(irreps(g), sub, rs_h)
        assert rep.ok
        for rho, blocks in zip(irreps(g), rep.blocks):
            if rho.key[0] == "induced":
                i = rho.key[1]
                assert [rs_h[j].key[1] for _, j in blocks] == [(i * pow(r, l, m)) % m for l in range(q)]


def test_adapted_en_chain():
    for n in (1, 2, 3):
        sub = en_subgroup(n)
        rs_h = irreps(sub.group)
        rep = check_adapted(irreps(sub.parent), sub, rs_h)
        assert rep.ok
        sigma_blocks = rep.blocks[-1]
        # two copies of the smaller sigma on the even/odd last-bit cosets
        assert [j for _, j in sigma_blocks] == [len(rs_h) - 1] * 2


def test_adapted_failure_is_reported():
    g = make_quaternionic(2)
    sub = cyclic_subgroup(g, 1)
    wrong = irreps(make_cyclic(4))
    # matching group object required
    with pytest.raises(ValueError):
        check_adapted(irreps(g), sub, wrong)
    # a deliberately conjugated representation set fails the entrywise match
    rs = irreps(g)
    from qkron.groups import Representation, RepresentationSet
    u = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    members = list(rs.members)
    members[-1] = Representation("twisted", np.einsum("ij,gjk,kl->gil", u, members[-1].matrices, u))
    rep = check_adapted(RepresentationSet(g, tuple(members)), sub, irreps(sub.group))
    assert not rep.ok and rep.failures[0][0] == len(members) - 1


def test_subgroup_must_close():
    g = make_cyclic(6)
    with pytest.raises(ValueError):
        Subgroup(g, make_cyclic(2), np.array([0, 1]))


def test_non_group_table_rejected():
    with pytest.raises(ValueError):
        FiniteGroup(np.array([[0, 1], [1, 1]]), ("e", "x"), "custom")


def test_group_spec_parsing():
    g = parse_group_spec("product cyclic 2 product quaternionic 2 en 1")
    assert g.order == 2 * 8 * 8
    assert group_spec(g) == "product cyclic 2 product quaternionic 2 en 1"
    assert parse_group_spec("metacyclic 3 7 2 0").params == (3, 7, 2, 0)
    for bad in ("", "cyclic", "cyclic x", "lie 3", "cyclic 2 3"):
        with pytest.raises(ValueError):
            parse_group_spec(bad)
