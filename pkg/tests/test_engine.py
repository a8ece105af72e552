import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from unipotent_classes.bruteforce import batch_multiply, generators_suffice
from unipotent_classes.engine import (
    ChevalleyConstants,
    RingMismatch,
    UnipotentGroup,
    compute_structure_constants,
    formulas_for,
)
from unipotent_classes.fields import field_of_order
from unipotent_classes.natural_rep import (
    BatchMatrices,
    NotClassical,
    element_matrices,
    natural_representation,
    root_element_times,
)
from unipotent_classes.roots import build_root_system

TYPES = [("A", 2), ("A", 3), ("B", 2), ("C", 2), ("G", 2), ("B", 3), ("C", 3), ("D", 4), ("B", 4), ("C", 4)]
CLASSICAL = [("B", 2), ("B", 3), ("C", 3), ("B", 4), ("C", 4), ("D", 4)]


@pytest.mark.parametrize("key", TYPES)
def test_structure_constants_are_string_lengths(key):
    rs = build_root_system(*key)
    consts = ChevalleyConstants(rs)
    for a in rs.all_roots:
        for b in rs.all_roots:
            n = consts.N(a, b)
            s = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(s):
                assert abs(n) == rs.root_string_p(a, b) + 1
                assert consts.N(b, a) == -n
            else:
                assert n == 0


@pytest.mark.parametrize("key", [("B", 2), ("G", 2), ("B", 3), ("C", 3)])
def test_jacobi_identity(key):
    ad = compute_structure_constants(build_root_system(*key)).adjoint
    rng = random.Random(1)
    for _ in range(200):
        x, y, z = (np.array([rng.randint(-2, 2) for _ in range(ad.dim)], dtype=object) for _ in range(3))
        total = ad.bracket(x, ad.bracket(y, z)) + ad.bracket(y, ad.bracket(z, x)) + ad.bracket(z, ad.bracket(x, y))
        assert not any(total)


def test_b2_commutator_coefficients():
    table = compute_structure_constants(build_root_system("B", 2))
    # alpha_1 long, alpha_2 short: [x_2, x_1] produces x_3 and x_4 = x_{alpha_1 + 2 alpha_2}
    assert abs(table.c_of(0, 1, 1, 1)) == 1
    assert abs(table.c_of(0, 1, 1, 2)) == 1
    assert abs(table.c_of(1, 2, 1, 1)) == 2


def test_g2_has_coefficients_three_and_two():
    table = compute_structure_constants(build_root_system("G", 2))
    coeffs = {abs(t.coeff) for terms in table.comm.values() for t in terms}
    assert {1, 2, 3} <= coeffs


def _random_rows(rng, q, N, n):
    return rng.integers(0, q, (n, N))


@pytest.mark.parametrize("key", TYPES)
@pytest.mark.parametrize("q", [2, 3, 4])
def test_associativity(key, q):
    rs = build_root_system(*key)
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    X, Y, Z = (_random_rows(rng, q, rs.N, 10_000) for _ in range(3))
    left = batch_multiply(rs, F, batch_multiply(rs, F, X, Y), Z)
    right = batch_multiply(rs, F, X, batch_multiply(rs, F, Y, Z))
    assert np.array_equal(left, right)


@pytest.mark.parametrize("key", [("B", 2), ("G", 2), ("C", 3), ("D", 4)])
@pytest.mark.parametrize("q", [3, 4])
def test_collector_agrees_with_generic_formulas(key, q):
    rs = build_root_system(*key)
    F = field_of_order(q)
    G = UnipotentGroup(rs, F)
    rng = random.Random(q)
    xs = [G.random_element(rng) for _ in range(50)]
    ys = [G.random_element(rng) for _ in range(50)]
    X = np.array([[c.value for c in x.coeffs] for x in xs])
    Y = np.array([[c.value for c in y.coeffs] for y in ys])
    Z = batch_multiply(rs, F, X, Y)
    for k, (x, y) in enumerate(zip(xs, ys)):
        assert [c.value for c in (x * y).coeffs] == list(Z[k])


@pytest.mark.parametrize("key", [("B", 2), ("G", 2), ("B", 3)])
def test_inverse_and_conjugate(key):
    rs = build_root_system(*key)
    F = field_of_order(4)
    G = UnipotentGroup(rs, F)
    rng = random.Random(0)
    for _ in range(30):
        x, y = G.random_element(rng), G.random_element(rng)
        assert x * G.inverse(x) == G.identity()
        assert G.conjugate(x, y) == x * y * G.inverse(x)
        assert G.decode(G.encode(x)) == x


def test_group_mismatch():
    G2 = UnipotentGroup(build_root_system("B", 2), field_of_order(2))
    G3 = UnipotentGroup(build_root_system("B", 2), field_of_order(3))
    with pytest.raises(RingMismatch):
        G2.multiply(G2.identity(), G3.identity())


def test_generic_conjugation_formula():
    rs = build_root_system("C", 3)
    prod, inv, conj = formulas_for(rs).reduced(2)
    assert len(conj) == rs.N
    # the first coordinates of x y x^-1 equal those of y (U/[U,U] is abelian)
    N = rs.N
    for j in range(rs.rank):
        assert conj[j] == conj[j].ring.var(N + j)


@pytest.mark.parametrize("key, q", [(("B", 2), 2), (("B", 2), 3), (("G", 2), 2)])
def test_generators_generate(key, q):
    assert generators_suffice(build_root_system(*key), q)


# -- matrix realization ----------------------------------------------------


@pytest.mark.parametrize("key", CLASSICAL)
def test_root_elements_preserve_form(key):
    rep = natural_representation(*key)
    G = rep.form()
    for E in rep.E:
        assert not np.any(E.T @ G + G @ E)


@pytest.mark.parametrize("key", CLASSICAL)
def test_root_elements_have_root_weights(key):
    rep = natural_representation(*key)
    n = rep.rs.rank
    # e_i has weight eps_i, e_{-i} weight -eps_i and e_0 weight 0
    weights = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    if rep.rs.type_label == "B":
        weights.append((0,) * n)
    weights += [tuple(-int(k == i) for k in range(n)) for i in reversed(range(n))]
    for j, E in enumerate(rep.E):
        w = rep.weight_of(j)
        for r, c in zip(*np.nonzero(E)):
            assert tuple(a - b for a, b in zip(weights[r], weights[c])) == w


def test_no_matrix_realization_for_g2():
    with pytest.raises(NotClassical):
        natural_representation("G", 2)


@pytest.mark.parametrize("key", CLASSICAL)
def test_matrices_agree_exhaustively_at_q2(key):
    """M(x_j(1) x) = x_j(1) M(x) for every x and every generator, which forces
    M to be a homomorphism on all of U(2)."""
    rs = build_root_system(*key)
    rep = natural_representation(*key)
    F = field_of_order(2)
    codes = np.arange(2**rs.N)
    X = (codes[:, None] >> np.arange(rs.N)[None, :]) & 1
    M = element_matrices(rep, F, X)
    for j in range(rs.N):
        g = np.zeros_like(X)
        g[:, j] = 1
        GX = batch_multiply(rs, F, g, X)
        idx = (GX << np.arange(rs.N)[None, :]).sum(axis=1)
        assert np.array_equal(M[idx], root_element_times(rep, F, j, 1, M))


@pytest.mark.parametrize("key", CLASSICAL)
@pytest.mark.parametrize("q", [3, 4])
def test_matrices_agree_on_random_pairs(key, q):
    rs = build_root_system(*key)
    rep = natural_representation(*key)
    F = field_of_order(q)
    rng = np.random.default_rng(7)
    X, Y = (_random_rows(rng, q, rs.N, 10_000) for _ in range(2))
    bm = BatchMatrices(F)
    lhs = element_matrices(rep, F, batch_multiply(rs, F, X, Y))
    rhs = bm.matmul(element_matrices(rep, F, X), element_matrices(rep, F, Y))
    assert np.array_equal(lhs, rhs)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CLASSICAL), st.integers(0, 2**32 - 1))
def test_matrix_of_product_property(key, seed):
    rs = build_root_system(*key)
    rep = natural_representation(*key)
    F = field_of_order(5)
    rng = np.random.default_rng(seed)
    X, Y = (_random_rows(rng, 5, rs.N, 8) for _ in range(2))
    bm = BatchMatrices(F)
    assert np.array_equal(element_matrices(rep, F, batch_multiply(rs, F, X, Y)),
                          bm.matmul(element_matrices(rep, F, X), element_matrices(rep, F, Y)))
