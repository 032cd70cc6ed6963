from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from matvar.corpus import load_entry
from matvar.matroid import Configuration, exact_rank, nullspace


@pytest.fixture(scope="module")
def men():
    return load_entry("menelaus").config


@pytest.fixture(scope="module")
def pappus():
    return load_entry("pappus").config


def test_menelaus_ranks(men):
    assert men.rank([0, 1, 5]) == 2
    assert men.rank([]) == 0
    assert men.rank([0, 1, 2]) == 3


def test_rank_index_checked(men):
    with pytest.raises(IndexError):
        men.rank([6])


def test_menelaus_circuits(men):
    assert [c for c in men.circuits(3) if len(c) == 3] == [(0, 1, 5), (0, 2, 4), (1, 2, 3), (3, 4, 5)]


def test_generic_has_no_circuits():
    conf = Configuration(3, [(1, 0, 0), (0, 1, 0), (1, 1, 1)])
    assert conf.circuits() == []


def test_pappus_lines_by_brute_force(pappus):
    found = [t for t in combinations(range(9), 3) if exact_rank([pappus.columns[i] for i in t]) == 2]
    assert [c for c in pappus.circuits(3) if len(c) == 3] == found
    assert len(found) == 9


def test_codimensions(men, pappus):
    assert men.codimension() == 4
    assert pappus.codimension() == 8
    assert load_entry("ceva").config.codimension() == 6


def test_generic_codimension_zero():
    conf = Configuration(2, [(1, 0), (0, 1), (1, 1), (1, 2)])
    assert conf.codimension() == 0


def test_zero_column_codimension():
    assert Configuration(2, [(0, 0)]).codimension() == 2


def test_spanning_rank(men):
    assert men.spanning_rank() == 3
    assert Configuration(2, [(0, 0), (0, 0)]).spanning_rank() == 0
    embedded = Configuration(4, [(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0), (1, 2, 0, 0)])
    assert embedded.spanning_rank() == 2


def test_forced_zero_single_subset(men):
    # three collinear columns all unconstrained cannot meet codimension 1
    assert men.forced_zero([0, 0, 0, 0, 0, 4])
    assert men.forced_zero_witness([0, 0, 0, 0, 0, 4]) is not None


def test_forced_zero_not_triggered_by_known_counts(men):
    assert not men.forced_zero([1, 1, 1, 1, 0, 0])
    assert not men.forced_zero([0, 0, 2, 0, 0, 2])
    assert not men.forced_zero([1, 1, 0, 0, 0, 2])


def test_forced_zero_two_collinear_triples(men):
    assert men.forced_zero([2, 2, 0, 0, 0, 0])
    assert men.forced_zero_witness([2, 2, 0, 0, 0, 0]) == (3, 4, 5)


def test_subset_codims(men):
    codims = men.subset_codims()
    assert codims[0b100011] == 1  # columns 1, 2, 6
    assert 0b111111 not in codims and 0b000111 not in codims


def test_automorphism_orders(men, pappus):
    assert len(men.automorphisms()) == 24
    assert len(pappus.automorphisms()) == 108


def test_json_roundtrip(men):
    again = Configuration.from_json(men.to_json())
    assert again.columns == men.columns and again.n == men.n


def test_k_mismatch_rejected():
    with pytest.raises(ValueError):
        Configuration.from_json({"n": 2, "k": 3, "columns": [["1", "0"]]})


def test_restrict(men):
    sub = men.restrict([0, 1, 5])
    assert sub.k == 3 and sub.rank([0, 1, 2]) == 2


def test_nullspace_against_sympy():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]
    ns = nullspace(rows, 4)
    assert len(ns) == sympy.Matrix(rows).shape[1] - sympy.Matrix(rows).rank()
    for v in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


small_columns = st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=1, max_size=7)


@settings(max_examples=60, deadline=None)
@given(small_columns, st.data())
def test_rank_submodular(cols, data):
    conf = Configuration(3, cols)
    idx = st.sets(st.integers(0, len(cols) - 1))
    a, b = data.draw(idx), data.draw(idx)
    assert conf.rank(a | b) + conf.rank(a & b) <= conf.rank(a) + conf.rank(b)
    assert conf.rank(a) <= conf.rank(a | b) <= len(a | b)


@settings(max_examples=60, deadline=None)
@given(small_columns)
def test_exact_rank_matches_sympy(cols):
    assert exact_rank(cols) == sympy.Matrix(cols).rank()
