from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, settings, strategies as st

from matvar.modular import EchelonForm, crt_pair, prime_sequence, random_prime, rank_mod_p, rational_reconstruct


def test_prime_sequence():
    ps = prime_sequence(4)
    assert len(set(ps)) == 4
    assert all(sympy.isprime(p) and p.bit_length() == 21 for p in ps)


def test_random_prime_size():
    import random
    p = random_prime(40, random.Random(1))
    assert sympy.isprime(p) and p.bit_length() == 40


def test_crt():
    r, m = crt_pair(2, 5, 3, 7)
    assert m == 35 and r % 5 == 2 and r % 7 == 3


def test_rational_reconstruct():
    m = 2097143 * 2097133
    for value in [Fraction(3, 7), Fraction(-22, 5), Fraction(0), Fraction(1000)]:
        a = value.numerator * pow(value.denominator, -1, m) % m
        assert rational_reconstruct(a, m) == value


def test_echelon_incremental():
    p = prime_sequence(1)[0]
    E = EchelonForm(3, p)
    E.add_rows(np.array([[1.0, 2, 3]]))
    E.add_rows(np.array([[2.0, 4, 6]]))
    assert E.rank == 1
    assert E.nullspace().shape == (2, 3)


matrices = st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_rational_rank(rows):
    # the rank can only drop mod p; for tiny entries and a 21-bit prime it agrees
    p = prime_sequence(1)[0]
    assert rank_mod_p(rows, p) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace_is_annihilated(rows):
    p = prime_sequence(1)[0]
    E = EchelonForm(4, p)
    E.add_rows(np.array(rows, dtype=float) % p)
    ns = E.nullspace()
    assert ns.shape[0] == 4 - E.rank
    a = np.array(rows, dtype=object) % p
    assert not ((a @ ns.astype(np.int64).astype(object).T) % p).any()
