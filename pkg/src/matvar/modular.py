"""Exact linear algebra modulo primes, CRT lifting and rational reconstruction."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
from sympy import isprime, prevprime

# Primes below 2**21 keep every partial dot product of a float64 matmul
# exact when chunks have at most 2**10 terms: 2**10 * 2**42 = 2**52.
SMALL_PRIME_BITS = 21
MATMUL_CHUNK = 1 << 10


def random_prime(bits: int, rng: random.Random | None = None) -> int:
    rng = rng or random.Random()
    while True:
        cand = rng.randrange(1 << (bits - 1), 1 << bits) | 1
        if isprime(cand):
            return cand


def prime_sequence(count: int, bits: int = SMALL_PRIME_BITS, skip: int = 0) -> list:
    """Deterministic descending primes just below 2**bits."""
    out = []
    p = 1 << bits
    while len(out) < count + skip:
        p = prevprime(p)
        out.append(p)
    return out[skip:]


def rank_mod_p(rows, p: int) -> int:
    """Rank of an integer matrix (list of rows) modulo p, pure Python."""
    mat = [[x % p for x in r] for r in rows]
    mat = [r for r in mat if any(r)]
    if not mat:
        return 0
    width = len(mat[0])
    rank = 0
    for col in range(width):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        prow = [(x * inv) % p for x in mat[rank]]
        mat[rank] = prow
        for i in range(rank + 1, len(mat)):
            f = mat[i][col]
            if f:
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], prow)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def _modmat(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p for float64 arrays with entries in [0, p), exact."""
    inner = a.shape[1]
    if inner <= MATMUL_CHUNK:
        return np.fmod(a @ b, p)
    out = np.zeros((a.shape[0], b.shape[1]))
    for s in range(0, inner, MATMUL_CHUNK):
        out = np.fmod(out + np.fmod(a[:, s:s + MATMUL_CHUNK] @ b[s:s + MATMUL_CHUNK], p), p)
    return out


class EchelonForm:
    """Incremental reduced row echelon form over F_p for a fixed number of
    columns. Rows are float64 arrays holding residues in [0, p)."""

    def __init__(self, ncols: int, p: int):
        if p >= 1 << SMALL_PRIME_BITS:
            raise ValueError("prime too large for exact float arithmetic")
        self.p = p
        self.ncols = ncols
        self.rows = np.zeros((0, ncols))
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, block: np.ndarray) -> np.ndarray:
        if not self.pivots:
            return block
        coeff = block[:, self.pivots]
        red = _modmat(coeff, self.rows, self.p)
        return np.fmod(block - red + self.p, self.p)

    def add_rows(self, block) -> int:
        """Add rows; returns how many were new (increased the rank)."""
        p = self.p
        block = np.mod(np.asarray(block, dtype=np.float64), p)
        block = self._reduce(block)
        block = block[np.any(block != 0, axis=1)]
        if block.shape[0] == 0:
            return 0
        new_rows, new_piv = _rref_dense(block, p)
        if not new_piv:
            return 0
        # eliminate new pivot columns from existing rows
        if self.pivots:
            coeff = self.rows[:, new_piv]
            self.rows = np.fmod(self.rows - _modmat(coeff, new_rows, p) + p, p)
        self.rows = np.vstack([self.rows, new_rows])
        self.pivots.extend(new_piv)
        return len(new_piv)

    def nullspace(self) -> np.ndarray:
        """Basis of the right kernel, one vector per row of the result."""
        p = self.p
        free = [c for c in range(self.ncols) if c not in set(self.pivots)]
        basis = np.zeros((len(free), self.ncols))
        for t, f in enumerate(free):
            basis[t, f] = 1
            basis[t, self.pivots] = np.mod(-self.rows[:, f], p)
        return basis


def _rref_dense(block: np.ndarray, p: int):
    """Reduced row echelon form of a dense residue block; returns
    (pivot rows, pivot columns)."""
    mat = block.copy()
    nrows, ncols = mat.shape
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(mat[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            mat[[r, piv]] = mat[[piv, r]]
        inv = pow(int(mat[r, col]), -1, p)
        mat[r] = np.fmod(mat[r] * inv, p)
        f = mat[:, col].copy()
        f[r] = 0
        rows_nz = np.nonzero(f)[0]
        if rows_nz.size:
            mat[rows_nz] = np.fmod(mat[rows_nz] - np.fmod(np.outer(f[rows_nz], mat[r]), p) + p, p)
        pivots.append(col)
        r += 1
    return mat[:r], pivots


def crt_pair(r1: int, m1: int, r2: int, m2: int):
    g = math.gcd(m1, m2)
    if g != 1:
        raise ValueError("moduli must be coprime")
    t = ((r2 - r1) * pow(m1, -1, m2)) % m2
    return r1 + m1 * t, m1 * m2


def rational_reconstruct(a: int, m: int):
    """Fraction x/y with x = a*y mod m, |x|, y <= sqrt(m/2), or None."""
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    frac = Fraction(r1, s1)
    if (frac.numerator - a * frac.denominator) % m:
        return None
    return frac
