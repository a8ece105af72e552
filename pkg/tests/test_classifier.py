import pytest
from hypothesis import given, settings, strategies as st

from unipotent_classes.analyzer import ParameterKind, analyze_family
from unipotent_classes.classifier import (
    ClassifierConfig,
    Inert,
    Ramification,
    Unresolved,
    classify,
    detect_case,
    initial_family,
    torus_normalizable,
    unresolved_steps,
)
from unipotent_classes.roots import build_root_system
from unipotent_classes.symbolic import SymbolicRing
from unipotent_classes.vpoly import parse_vpoly

GOOD = [("B", 2, 5), ("G", 2, 5), ("B", 3, 3), ("C", 3, 3), ("A", 3, 2), ("D", 4, 3)]


def _c3_families(normalize):
    rs = build_root_system("C", 3)
    config = ClassifierConfig(normalize=normalize, record_trace=True)
    fams = classify(rs, 2, config)
    return {tuple(sorted(f.c)): f for f in fams}


def _step(fam, k):
    return next(r for r in fam.trace if r.step == k)


def test_c3_family_trace_unnormalized():
    fam = _c3_families(False)[(2, 3)]
    ring = SymbolicRing(2, 9)
    a2, a3 = ring.a(1), ring.a(2)
    t = [ring.t(l) for l in range(9)]
    assert sorted(fam.d) == [7]
    assert _step(fam, 4).g == a2 * t[0]
    assert _step(fam, 5).g == a3 * t[1] + a2 * t[2]
    assert _step(fam, 6).g == a3 * t[3]
    assert _step(fam, 7).g == a3 * t[1] ** 2 + a2 * a3 * t[1]
    five = _step(fam, 5)
    assert five.outcome == Inert(3, a2)
    assert five.substitution == (3, a3 * t[1] / a2)
    assert isinstance(_step(fam, 7).outcome, Unresolved)
    assert isinstance(_step(fam, 9).outcome, Ramification)


def test_c3_family_trace_normalized():
    fam = _c3_families(True)[(2, 3)]
    ring = SymbolicRing(2, 9)
    t = [ring.t(l) for l in range(9)]
    assert fam.normalized == {2, 3}
    assert _step(fam, 4).g == t[0]
    assert _step(fam, 5).g == t[1] + t[2]
    assert _step(fam, 7).g == t[1] ** 2 + t[1]
    assert _step(fam, 5).substitution == (3, t[1])


def test_c3_family_count():
    fams = _c3_families(True)
    total = analyze_family(fams[(2, 3)], 2).total + analyze_family(fams[(2, 3, 9)], 2).total
    assert total == parse_vpoly("2v^2(v+1)")


def test_ramification_first_steps():
    rs = build_root_system("B", 2)
    fams = classify(rs, 2)
    # the simple-root coordinates are fixed by conjugation, so all 2^rank subsets occur
    simple = {frozenset(j for j in f.c if j <= 2) for f in fams}
    assert len(simple) == 4


def test_detect_case():
    rs = build_root_system("B", 2)
    ring = SymbolicRing(2, rs.N)
    fam = initial_family(rs, ring)
    assert isinstance(detect_case(ring.zero(), fam), Ramification)
    # coefficient a_1 is not known to be nonzero in the empty family
    assert isinstance(detect_case(ring.a(0) * ring.t(0), fam), Unresolved)
    assert detect_case(ring.t(1) + ring.t(0) ** 2, fam) == Inert(2, ring.one())


def test_torus_normalizable():
    rs = build_root_system("B", 2)
    assert torus_normalizable(rs, {1, 2})
    # alpha_1 and alpha_1 + 2 alpha_2 have a 2 among their invariant factors
    assert not torus_normalizable(rs, {1, 4})
    assert torus_normalizable(rs, {1, 3})


@pytest.mark.parametrize("type_label, rank, p", GOOD)
def test_good_primes_have_no_unresolved_steps(type_label, rank, p):
    fams = classify(build_root_system(type_label, rank), p)
    assert unresolved_steps(fams) == 0


@pytest.mark.parametrize("type_label, rank, p", [("B", 2, 2), ("G", 2, 3), ("C", 3, 2)])
def test_bad_primes_leave_residuals(type_label, rank, p):
    fams = classify(build_root_system(type_label, rank), p)
    assert unresolved_steps(fams) > 0
    for f in fams:
        assert set(f.residuals) == set(f.d)


@pytest.mark.parametrize("type_label, rank, p", [("B", 2, 2), ("G", 2, 2), ("B", 3, 2), ("C", 3, 3)])
def test_families_are_distinct_and_sorted(type_label, rank, p):
    fams = classify(build_root_system(type_label, rank), p)
    keys = [(f.c, f.d) for f in fams]
    assert len(set(keys)) == len(keys)
    assert [f.sort_key() for f in fams] == sorted(f.sort_key() for f in fams)
    for f in fams:
        assert not f.c & f.d
        assert f.normalized <= f.c


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([("B", 2, 2), ("B", 2, 3), ("G", 2, 2), ("A", 3, 2)]), st.booleans())
def test_normalization_does_not_change_totals(case, normalize):
    type_label, rank, p = case
    rs = build_root_system(type_label, rank)
    plain = classify(rs, p, ClassifierConfig(normalize=False))
    other = classify(rs, p, ClassifierConfig(normalize=normalize))
    total = lambda fams: sum((analyze_family(f, p).total for f in fams), parse_vpoly("0"))
    assert total(plain) == total(other)


@pytest.mark.parametrize("p", [3, 5])
def test_c4_good_prime_coefficient_is_not_a_monomial(p):
    """In C4 the coordinates 4, 7, 10 satisfy 2 beta_7 = beta_4 + beta_10, so
    a_7^2 / (a_4 a_10) is torus invariant and cannot be normalized away.  Step 13
    of the family c = {2, 4, 7, 10} then has coefficient (a_10 - 1) on t_5,
    which is not a monomial, and the step is recorded as unresolved."""
    fams = classify(build_root_system("C", 4), p)
    flagged = [f for f in fams if f.d]
    assert [(sorted(f.c), sorted(f.d)) for f in flagged] == [([2, 4, 7, 10], [13, 16])]
    ring = SymbolicRing(p, 16)
    a10, t5 = ring.a(9), ring.t(4)
    assert flagged[0].residuals[13] == a10 * t5 - t5


@pytest.mark.parametrize("type_label, rank, p", [("B", 2, 3), ("G", 2, 5), ("B", 3, 3), ("C", 3, 3),
                                                 ("B", 4, 3), ("D", 4, 3)])
def test_good_primes_use_only_free_parameters(type_label, rank, p):
    allowed = {ParameterKind.A, ParameterKind.B, ParameterKind.ZERO}
    for f in classify(build_root_system(type_label, rank), p):
        for b in analyze_family(f, p).branches:
            assert {k for _, k in b.kinds} <= allowed
