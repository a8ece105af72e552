from dataclasses import replace

import pytest
from conftest import analyses

from unipotent_classes.analyzer import (
    ManualFamiliesPresent,
    ParameterKind,
    analyze_family,
    mass_formula_holds,
    total_count,
)
from unipotent_classes.classifier import classify
from unipotent_classes.golden import published_k_poly
from unipotent_classes.roots import build_root_system
from unipotent_classes.vpoly import ClassCountPolynomial, parse_vpoly

BAD = [("B", 2, 2), ("G", 2, 2), ("G", 2, 3), ("B", 3, 2), ("C", 3, 2), ("D", 4, 2), ("B", 4, 2), ("C", 4, 2)]
GOOD = [("B", 2, 3), ("B", 3, 3), ("C", 3, 3), ("D", 4, 3), ("B", 4, 3), ("C", 4, 3)]
# G2 at good primes: confirmed by brute force at q = 5 and q = 7 in test_bruteforce
G2_GOOD = parse_vpoly("v^3+5v^2+6v+1")


@pytest.mark.parametrize("type_label, rank, p", BAD + GOOD)
def test_published_totals(type_label, rank, p):
    assert total_count(list(analyses(type_label, rank, p))) == published_k_poly(type_label, rank, p)


@pytest.mark.parametrize("p", [5, 7])
def test_g2_good_total(p):
    assert total_count(list(analyses("G", 2, p))) == G2_GOOD


@pytest.mark.parametrize("type_label, rank, p", BAD + GOOD + [("G", 2, 5), ("A", 3, 2), ("A", 4, 3), ("C", 2, 2)])
def test_no_manual_families_and_mass_formula(type_label, rank, p):
    exprs = list(analyses(type_label, rank, p))
    assert not [e for e in exprs if e.manual]
    assert mass_formula_holds(exprs, build_root_system(type_label, rank).N)


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_type_a_counts_are_known(rank):
    # k(U_n(q)) for n = 2..5 in v = q - 1; at q = 2 these are 2, 5, 16, 61
    known = {1: "v+1", 2: "v^2+3v+1", 3: "2v^3+7v^2+6v+1", 4: "5v^4+20v^3+25v^2+10v+1"}
    for p in (2, 3):
        assert total_count(list(analyses("A", rank, p))) == parse_vpoly(known[rank])


def _branch(type_label, rank, p, kinds):
    for e in analyses(type_label, rank, p):
        for b in e.branches:
            nonzero = {j: k for j, k in b.kinds if k is not ParameterKind.ZERO}
            if nonzero == kinds:
                return b
    raise LookupError(kinds)


def test_example_centralizers():
    A = ParameterKind.A
    C = ParameterKind.C
    assert _branch("B", 2, 2, {1: A, 2: A, 4: C}).centralizer == (2, 2)
    assert _branch("G", 2, 3, {1: A, 2: A, 5: C}).centralizer == (3, 2)
    assert _branch("B", 2, 3, {1: A, 2: A}).centralizer == (1, 2)
    identity = _branch("C", 3, 2, {})
    assert identity.centralizer == (1, 9)
    assert identity.count == ClassCountPolynomial.const(1)


def test_b2_bad_prime_rows():
    A = ParameterKind.A
    b = _branch("B", 2, 2, {1: A, 2: A, 4: ParameterKind.C})
    assert b.count == parse_vpoly("2v^2")
    assert b.centralizer_str() == "2q^2"


def test_kind_factors():
    assert ParameterKind.A.factor(2) == parse_vpoly("v")
    assert ParameterKind.B.factor(2) == parse_vpoly("v+1")
    assert ParameterKind.C.factor(3) == ClassCountPolynomial.const(3)
    assert ParameterKind.D.factor(2) == parse_vpoly("v-1")
    assert ParameterKind.F.factor(2) == ClassCountPolynomial.const(2)
    # q/p cosets: (v+1)/p
    g = ParameterKind.G.factor(2)
    assert [g.at_q(q) for q in (2, 4, 8)] == [1, 2, 4]


def test_total_refuses_manual_families():
    rs = build_root_system("B", 2)
    fam = classify(rs, 2)[0]
    good = analyze_family(fam, 2)
    with pytest.raises(ManualFamiliesPresent):
        total_count([replace(good, manual="not handled")])


@pytest.mark.parametrize("type_label, rank, p", BAD)
def test_centralizers_divide_group_order(type_label, rank, p):
    N = build_root_system(type_label, rank).N
    for e in analyses(type_label, rank, p):
        for b in e.branches:
            m, ex = b.centralizer
            assert 0 <= ex <= N
            # m is a power of p
            while m % p == 0:
                m //= p
            assert m == 1
