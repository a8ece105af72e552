import pytest
from hypothesis import given, settings, strategies as st

from unipotent_classes.fields import (
    FiniteField,
    NonPrime,
    ZeroInverse,
    field_of_order,
    image_size,
    kernel_size_additive,
    least_irreducible,
    prime_power,
)

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def _prime_powers(limit):
    out = []
    for q in range(2, limit + 1):
        try:
            prime_power(q)
        except NonPrime:
            continue
        out.append(q)
    return out


PRIME_POWERS = _prime_powers(256)


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(NonPrime):
        prime_power(12)
    with pytest.raises(NonPrime):
        FiniteField(4)


def test_least_irreducible():
    assert least_irreducible(2, 2) == [1, 1, 1]
    assert least_irreducible(2, 3) == [1, 1, 0, 1]
    assert least_irreducible(3, 2) == [1, 0, 1]


@pytest.mark.parametrize("q", SMALL_Q)
def test_multiplicative_group_is_cyclic(q):
    F = field_of_order(q)
    g = F.generator
    seen = {F.power(g, e) for e in range(q - 1)}
    assert seen == set(range(1, q))


@pytest.mark.parametrize("q", SMALL_Q)
def test_frobenius_fixes_prime_field(q):
    F = field_of_order(q)
    fixed = [a for a in F.elements() if F.frobenius(a) == a]
    assert sorted(fixed) == list(range(F.p))


@settings(max_examples=300)
@given(st.sampled_from(SMALL_Q), st.data())
def test_field_axioms(q, data):
    F = field_of_order(q)
    a, b, c = (F(data.draw(st.integers(0, q - 1))) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    assert a - b == -(b - a)
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b
    assert a**q == a


def test_zero_inverse():
    with pytest.raises(ZeroInverse):
        field_of_order(4).inv(0)


@pytest.mark.parametrize("q", [4, 8, 9])
def test_numpy_tables_agree(q):
    F = field_of_order(q)
    add, mul, neg = F.tables()
    for a in range(q):
        for b in range(q):
            assert add[a, b] == F.add(a, b)
            assert mul[a, b] == F.mul(a, b)
        assert neg[a] == F.neg(a)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIME_POWERS), st.data())
def test_image_times_kernel_is_q(q, data):
    """Additive polynomials sum c_i t^(p^i) are F_p-linear: |image| |kernel| = q."""
    F = field_of_order(q)
    top = data.draw(st.integers(0, F.k))
    coeffs = {F.p**i: data.draw(st.integers(0, q - 1)) for i in range(top + 1)}
    image = image_size(F, coeffs)
    kernel = kernel_size_additive(F, coeffs)
    brute_kernel = sum(1 for t in F.elements() if not _eval(F, coeffs, t))
    assert kernel == brute_kernel
    assert image * kernel == q


def _eval(F, coeffs, t):
    acc = 0
    for e, c in coeffs.items():
        acc = F.add(acc, F.mul(c, F.power(t, e)))
    return acc


def test_image_of_squaring_in_odd_characteristic():
    F = field_of_order(9)
    assert image_size(F, lambda t: F.mul(t, t)) == 5


def test_artin_schreier_image_has_index_p():
    # t -> t^p - t has kernel F_p
    for q in (4, 8, 9, 27):
        F = field_of_order(q)
        coeffs = {F.p: 1, 1: F.neg(1)}
        assert image_size(F, coeffs) == q // F.p
