"""Certificates that a block test configuration lies outside Y_C.

A test configuration D is outside Y_C when some polynomial in the matrix
entries vanishes on every realization of C but not at D.  The ideal of
Y_C is graded by column degrees and by torus weight, so it suffices to
look in the graded piece containing the monomial that D sees.  Points of
X_C are sampled over a prime field from a ruler construction."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

import numpy as np

from .modular import EchelonForm, _modmat, prime_sequence
from .restriction import TestConfiguration


def _cross(a, b, p):
    return ((a[1] * b[2] - a[2] * b[1]) % p, (a[2] * b[0] - a[0] * b[2]) % p, (a[0] * b[1] - a[1] * b[0]) % p)


def sample_realization(construction, p: int, rng: random.Random):
    """Random points of X_C over F_p following construction steps, each
    naming its column (1-based): [j, "free"], [j, "on", a, b] (random point
    of the line ab), [j, "meet", a, b, c, d] (intersection of lines ab and
    cd).  Columns get independent random scalings."""
    pts = {}
    for step in construction:
        col, kind, args = step[0], step[1], step[2:]
        if kind == "free":
            v = tuple(rng.randrange(p) for _ in range(3))
        elif kind == "on":
            s, t = rng.randrange(1, p), rng.randrange(1, p)
            a, b = pts[args[0]], pts[args[1]]
            v = tuple((s * x + t * y) % p for x, y in zip(a, b))
        elif kind == "meet":
            a, b, c, d = (pts[i] for i in args[:4])
            v = _cross(_cross(a, b, p), _cross(c, d, p), p)
        else:
            raise ValueError(f"unknown construction step {step!r}")
        pts[col] = v
    out = []
    for j in sorted(pts):
        v = pts[j]
        s = rng.randrange(1, p)
        out.append(tuple((s * x) % p for x in v))
    return out


def _weight_monomials(coldeg, target_weight, n):
    """Monomials of given column degrees and row weight, as tuples of
    per-column row-exponent vectors."""
    per_col = []
    for a in coldeg:
        opts = []
        for e in product(range(a + 1), repeat=n):
            if sum(e) == a:
                opts.append(e)
        per_col.append(opts)
    out = []

    def rec(j, acc, w):
        if j == len(per_col):
            if list(w) == list(target_weight):
                out.append(tuple(acc))
            return
        for e in per_col[j]:
            nw = [x + y for x, y in zip(w, e)]
            if any(x > y for x, y in zip(nw, target_weight)):
                continue
            acc.append(e)
            rec(j + 1, acc, nw)
            acc.pop()

    rec(0, [], [0] * n)
    return out


def sample_array(construction, p: int, count: int, seed: int = 0) -> np.ndarray:
    """count x k x 3 array of random realizations mod p."""
    rng = random.Random(seed)
    return np.array([sample_realization(construction, p, rng) for _ in range(count)], dtype=np.int64)


def _evaluate(monos, points: np.ndarray, p: int) -> np.ndarray:
    """Values of monomials (per-column exponent vectors) at sample points."""
    cache = {}
    out = np.ones((points.shape[0], len(monos)), dtype=np.int64)
    for m, mono in enumerate(monos):
        acc = out[:, m]
        for j, e in enumerate(mono):
            if not any(e):
                continue
            key = (j, e)
            if key not in cache:
                v = np.ones(points.shape[0], dtype=np.int64)
                for i, k in enumerate(e):
                    for _ in range(k):
                        v = v * points[:, j, i] % p
                cache[key] = v
            acc = acc * cache[key] % p
        out[:, m] = acc
    return out.astype(np.float64)


@dataclass
class Certificate:
    column_degrees: tuple
    monomials: int
    checked_points: int
    prime: int

    def reason(self) -> str:
        return (f"ideal element with column degrees {list(self.column_degrees)} "
                f"({self.monomials} monomials) vanishes at {self.checked_points} random realizations "
                f"mod {self.prime} and not at D")


def _degree_vectors(D: TestConfiguration, max_degree: int):
    """Column-degree vectors supported on the nonzero columns of D, by
    total degree and then largest entry (multilinear ones first)."""
    support = [j for j, a in enumerate(D.axes) if a]
    if not support:
        return []
    vecs = []

    def rec(i, left, acc):
        if i == len(support):
            vecs.append(tuple(acc))
            return
        for x in range(0, left + 1):
            acc.append(x)
            rec(i + 1, left - x, acc)
            acc.pop()

    rec(0, max_degree, [])
    out = []
    for vec in vecs:
        if sum(vec) == 0:
            continue
        full = [0] * D.k
        for j, x in zip(support, vec):
            full[j] = x
        out.append(tuple(full))
    out.sort(key=lambda v: (sum(v), max(v), [-x for x in v]))
    return out


def find_certificate(D: TestConfiguration, construction, max_degree: int = 4, seed: int = 0,
                     max_monomials: int = 1500, max_entry: int | None = None, samples=None):
    """Search column-degree vectors of total degree <= max_degree for an
    ideal element not vanishing at D.  Returns a Certificate or None."""
    n = 3
    p = prime_sequence(1, skip=7)[0]
    if samples is None:
        samples = sample_array(construction, p, max_monomials + 80, seed)
    fit, fresh = samples[:-50], samples[-50:]
    for coldeg in _degree_vectors(D, max_degree):
        if max_entry is not None and max(coldeg) > max_entry:
            continue
        weight = [0] * n
        for j, a in enumerate(D.axes):
            if a:
                weight[a - 1] += coldeg[j]
        monos = _weight_monomials(coldeg, weight, n)
        if len(monos) < 2 or len(monos) > max_monomials:
            continue
        target = tuple(tuple(coldeg[j] if (a and i == a - 1) else 0 for i in range(n))
                       for j, a in enumerate(D.axes))
        ti = monos.index(target)
        E = _evaluate(monos, fit[:len(monos) + 30], p)
        ech = EchelonForm(len(monos), p)
        ech.add_rows(E)
        unit = np.zeros((1, len(monos)))
        unit[0, ti] = 1
        if ech.add_rows(unit) == 0:
            continue
        # an explicit ideal element with nonzero coefficient at the D monomial
        null = ech_null_with(E, ti, p)
        F = _evaluate(monos, fresh, p)
        if np.any(_modmat(F, null[:, None], p) != 0):
            continue
        return Certificate(coldeg, len(monos), len(fresh), p)
    return None


def ech_null_with(E, index, p):
    """A kernel vector of E (mod p) with nonzero entry at ``index``."""
    ech = EchelonForm(E.shape[1], p)
    ech.add_rows(E)
    basis = ech.nullspace()
    for vec in basis:
        if vec[index] != 0:
            return vec
    raise ValueError("no kernel vector touches the index")
