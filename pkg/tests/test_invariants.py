from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from matvar import invariants
from matvar.polyring import GradedPolynomial, VariableSet
from matvar.restriction import TestConfiguration
from matvar.schubert import schubert_class
from matvar.symfunc import schur_expand

from conftest import poly


@pytest.fixture(scope="module")
def steiner_class():
    from matvar.corpus import bundled_class, load_entry
    return bundled_class(load_entry("steiner"))


def test_gw_menelaus(menelaus_class):
    assert invariants.gw(menelaus_class, (1, 1, 1, 1, 0, 0)) == 1
    assert invariants.gw(menelaus_class, (0, 0, 2, 0, 0, 2)) == 1


def test_gw_steiner(steiner_class):
    assert invariants.gw(steiner_class, (1, 1, 1, 0, 0, 0)) == 2
    assert steiner_class.coefficient_of(steiner_class.varset.monomial(d1=1, d2=1, d3=1)) == -2


def test_gw_validates_query(menelaus_class):
    with pytest.raises(ValueError):
        invariants.gw(menelaus_class, (1, 1, 1, 1, 0))
    with pytest.raises(ValueError):
        invariants.gw(menelaus_class, (1, 1, 1, 0, 0, 0))


def test_gw_flags_negative_counts():
    bad = poly("-d1*d2", 2, 2)
    with pytest.raises(invariants.AuditFailure):
        invariants.gw(bad, (1, 1))
    with pytest.raises(invariants.AuditFailure):
        invariants.gw(poly("1/2*d1", 2, 1), (1,))


def test_degree_menelaus(menelaus_class):
    assert invariants.degree_substitutions(menelaus_class) == (66, 66)
    assert invariants.degree_projective(menelaus_class, 3, 6) == 66


def test_degree_of_unit_class():
    assert invariants.degree_projective(poly("1", 3, 6)) == 1


def test_degree_rejects_wrong_ring(menelaus_class):
    with pytest.raises(ValueError):
        invariants.degree_projective(menelaus_class, 4, 6)


def test_degree_disagreement_is_audit_failure():
    with pytest.raises(invariants.AuditFailure):
        invariants.degree_projective(poly("c1 - 3*d1", 2, 1))


def test_pure_c(menelaus_class):
    assert invariants.pure_c(menelaus_class) == poly("3*c1**2*c2 - 2*c1*c3 - c2**2", 3, 0)
    assert not invariants.pure_c(poly("d1*d2", 2, 2))


def test_schur_d_entry(menelaus_class):
    exp = invariants.schur_d_expand(menelaus_class)
    assert exp[((), (0, 0, 2, 0, 0, 2))] == 1
    assert not invariants.schur_d_negatives(exp)
    assert invariants.schur_d_resum(exp, 3, 6) == menelaus_class


def test_schur_d_zero_class():
    assert invariants.schur_d_expand(GradedPolynomial.zero(VariableSet(3, 2))) == {}


def test_schur_d_flags_negative():
    exp = invariants.schur_d_expand(poly("-c1", 2, 1))
    assert invariants.schur_d_negatives(exp)


def test_forced_zero_audit(menelaus, menelaus_class):
    audit = invariants.forced_zero_audit(menelaus_class, menelaus.config)
    assert audit == {"violations": [], "unexplained_zeros": []}


def test_forced_zero_audit_catches_injected_count(menelaus, menelaus_class):
    vs = menelaus_class.varset
    tampered = menelaus_class + GradedPolynomial(vs, {vs.monomial(d6=4): 1})
    assert [0, 0, 0, 0, 0, 4] in invariants.forced_zero_audit(tampered, menelaus.config)["violations"]


def test_hierarchy_probe(menelaus_class):
    assert invariants.hierarchy_probe(menelaus_class, TestConfiguration.from_blocks("1|2|6", 6)) == "inconclusive"
    origin = TestConfiguration((0,) * 6)
    assert invariants.hierarchy_probe(menelaus_class, origin) == "certified_contained"
    collapsed = TestConfiguration.from_blocks("123456", 6)
    assert invariants.hierarchy_probe(menelaus_class, collapsed) == "certified_contained"


def test_hierarchy_probe_zero_class():
    zero = GradedPolynomial.zero(VariableSet(2, 2))
    assert invariants.hierarchy_probe(zero, TestConfiguration((0, 0))) == "inconclusive"


def test_pure_d_counts_schubert_problem():
    counts = invariants.pure_d_counts(schubert_class((0, 1, 3, 0, 0), 4, 4))
    assert counts[(1, 1, 1, 1)] == 2


@st.composite
def flag(draw):
    n = draw(st.integers(1, 3))
    k = draw(st.integers(1, 5))
    cuts = sorted(draw(st.lists(st.integers(0, k), min_size=n, max_size=n)))
    b = [0] + cuts + [k]
    return tuple(b[i + 1] - b[i] for i in range(n + 1)), n, k


@settings(max_examples=40, deadline=None)
@given(flag())
def test_schubert_counts_nonnegative(case):
    cls = schubert_class(*case)
    assert all(v >= 0 for v in invariants.pure_d_counts(cls).values())
    exp = invariants.schur_d_expand(cls)
    assert invariants.schur_d_resum(exp, case[1], case[2]) == cls
