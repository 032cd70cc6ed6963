import pytest
from hypothesis import given, settings, strategies as st

from matvar import invariants
from matvar.polyring import GradedPolynomial, VariableSet
from matvar.schubert import schubert_class
from matvar.stabilize import dstab_check, localize_pure_c, localize_up, raise_stabilize, root_coefficients
from matvar.symfunc import schur, schur_expand

from conftest import poly

MENELAUS_PURE = "3*c1**2*c2 - 2*c1*c3 - c2**2"


def test_four_generic_vectors_lifted():
    one = GradedPolynomial.one(VariableSet(2, 4))
    lifted = localize_up(one, 2, 4, 4)
    assert lifted.is_homogeneous(4)
    assert lifted.coefficient_of(lifted.varset.monomial(d1=1, d2=1, d3=1, d4=1)) == 2
    raised = raise_stabilize(GradedPolynomial.one(VariableSet(2, 0)), 2, 4, 4)
    assert invariants.pure_c(lifted) == raised


def test_identity_when_dimension_unchanged(menelaus_class):
    assert localize_up(menelaus_class, 3, 3, 6) == menelaus_class
    pure = poly(MENELAUS_PURE, 3, 0)
    assert raise_stabilize(pure, 3, 3, 6) == pure


def test_lift_matches_schubert_classes():
    # three nonzero vectors on a line, then placed in C^2 and C^3
    line = GradedPolynomial.one(VariableSet(1, 3))
    assert localize_up(line, 1, 2, 3) == schubert_class((0, 3, 0), 2, 3)
    assert localize_up(line, 1, 3, 3) == schubert_class((0, 3, 0, 0), 3, 3)
    plane = GradedPolynomial.one(VariableSet(2, 4))
    assert localize_up(plane, 2, 3, 4) == schubert_class((0, 0, 4, 0), 3, 4)


def test_lift_of_schubert_class_across_dimension():
    # two points on a line plus one free point in C^2, placed in C^3
    low = schubert_class((0, 2, 1), 2, 3)
    assert localize_up(low, 2, 3, 3) == schubert_class((0, 2, 1, 0), 3, 3)


def test_lift_validates_ring(menelaus_class):
    with pytest.raises(ValueError):
        localize_up(menelaus_class, 2, 4, 6)
    with pytest.raises(ValueError):
        localize_up(menelaus_class, 3, 2, 6)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_menelaus_raised(n):
    got = raise_stabilize(poly(MENELAUS_PURE, 3, 0), 3, n, 6)
    want = {(n - 1, n - 2, n - 2): 3, (n - 1, n - 1, n - 3): 2, (n, n - 2, n - 3): 3}
    assert schur_expand(got, n) == {tuple(x for x in k if x): v for k, v in want.items()}


def test_raise_rejects_wide_input():
    with pytest.raises(ValueError):
        raise_stabilize(poly("c1**4", 3, 0), 3, 4, 6)


def test_menelaus_lift_is_d_stable(menelaus_class):
    lifted = localize_up(menelaus_class, 3, 4, 6)
    report = dstab_check(lifted, menelaus_class, 6, 3)
    assert report.ok and report.coefficient_matches and report.top_power <= 3
    assert invariants.pure_c(lifted) == raise_stabilize(invariants.pure_c(menelaus_class), 3, 4, 6)
    assert invariants.degree_substitutions(lifted)[0] == invariants.degree_substitutions(lifted)[1]


def test_schubert_classes_are_d_stable():
    low = schubert_class((0, 3, 0), 2, 3)
    high = schubert_class((0, 3, 0, 0), 3, 3)
    assert dstab_check(high, low, 3, 1).ok


def test_injected_high_power_fails(menelaus_class):
    lifted = localize_up(menelaus_class, 3, 4, 6)
    bad = lifted + poly("c4", 4, 6) * poly("c4", 4, 6) * poly("c4", 4, 6) * poly("c4", 4, 6)
    report = dstab_check(bad, menelaus_class, 6, 3)
    assert not report.ok and report.top_power == 4
    assert report.to_json()["ok"] is False


def test_root_coefficients_split():
    coeffs = root_coefficients(poly("c1 + c2", 2, 0))
    assert set(coeffs) == {0, 1}
    assert str(coeffs[0]) == "g1"
    assert str(coeffs[1]) == "g1 + 1"


def test_threads_do_not_change_result(menelaus_class):
    assert localize_up(menelaus_class, 3, 4, 6, threads=2) == localize_up(menelaus_class, 3, 4, 6)


lams = st.tuples(st.integers(1, 3), st.integers(0, 2), st.integers(1, 4)).flatmap(
    lambda t: st.tuples(st.just(t[0]), st.just(t[0] + t[1]), st.just(t[0] + t[2]),
                        st.lists(st.integers(1, t[0]), max_size=t[2]).filter(lambda p: sum(p) <= 4)))


def test_pure_route_matches_full_lift(menelaus_class):
    full = invariants.pure_c(localize_up(menelaus_class, 3, 4, 6))
    assert localize_pure_c(menelaus_class, 3, 4, 6) == full
    assert localize_pure_c(invariants.pure_c(menelaus_class), 3, 4, 6) == full
    assert localize_pure_c(menelaus_class, 3, 3, 6) == invariants.pure_c(menelaus_class)


def test_pure_route_degree_bookkeeping():
    lifted = localize_pure_c(schur((2, 1), 2), 2, 4, 5)
    assert lifted.is_homogeneous(3 + (5 - 2) * (4 - 2))


@settings(max_examples=10, deadline=None)
@given(lams)
def test_raising_equals_full_localization(args):
    s, n, k, parts = args
    lam = sorted(parts, reverse=True)
    low = schur(lam, s)
    lifted = localize_up(low.embed(VariableSet(s, k)), s, n, k)
    assert invariants.pure_c(lifted) == raise_stabilize(low, s, n, k)


@settings(max_examples=60, deadline=None)
@given(lams)
def test_raising_equals_pure_localization(args):
    s, n, k, parts = args
    low = schur(sorted(parts, reverse=True), s)
    assert localize_pure_c(low, s, n, k) == raise_stabilize(low, s, n, k)
