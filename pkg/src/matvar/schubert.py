"""Closed-form classes: matrix Schubert varieties of Grassmannian type,
their products, collinearity conditions and rank loci."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .polyring import GradedPolynomial, VariableSet, series_quotient
from .symfunc import Partition, det


@dataclass(frozen=True)
class FlagSpec:
    """Point counts l_0..l_n on the levels of a complete flag in C^n.

    ``ell`` keeps the given counts; ``normalized`` pushes points down so the
    nonzero positive levels come first (a change of flag)."""

    ell: tuple

    def __post_init__(self):
        ell = tuple(int(x) for x in self.ell)
        if not ell or any(x < 0 for x in ell):
            raise ValueError(f"malformed level counts {self.ell}")
        object.__setattr__(self, "ell", ell)

    @property
    def n(self) -> int:
        return len(self.ell) - 1

    @property
    def k(self) -> int:
        return sum(self.ell)

    @property
    def normalized(self) -> tuple:
        ell = list(self.ell)
        for i in range(1, len(ell)):
            while ell[i] == 0:
                donor = next((j for j in range(i + 1, len(ell)) if ell[j] > 0), None)
                if donor is None:
                    break
                ell[donor] -= 1
                ell[i] += 1
        return tuple(ell)

    @classmethod
    def parse(cls, text: str) -> "FlagSpec":
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))


def _check(ell, n: int, k: int) -> FlagSpec:
    flag = ell if isinstance(ell, FlagSpec) else FlagSpec(tuple(ell))
    if flag.n != n:
        raise ValueError(f"level counts {flag.ell} need n+1={n + 1} entries")
    if flag.k != k:
        raise ValueError(f"level counts {flag.ell} do not sum to k={k}")
    return flag


def mu_lambda(ell, n: int, k: int):
    """The sequence mu_1..mu_n and the partition lambda of a flag configuration."""
    flag = _check(ell, n, k)
    ell = flag.normalized
    r = 0
    while r < n and ell[r + 1] > 0:
        r += 1
    mu = []
    for i in range(1, n + 1):
        mu.append(sum(ell[:i]) + 1 if i <= r else k + i - r)
    lam = [0] * n
    for i in range(1, n + 1):
        lam[n - i] = mu[i - 1] - i
    return tuple(mu), Partition(lam)


@lru_cache(maxsize=None)
def _schubert_cached(ell: tuple, n: int, k: int) -> GradedPolynomial:
    mu, lam = mu_lambda(ell, n, k)
    vs = VariableSet(n, k)
    one = GradedPolynomial.one(vs)
    den = [one] + [GradedPolynomial.var(vs, f"c{i}") for i in range(1, n + 1)]
    size = lam.size
    padded = lam.padded(n)
    top = max(padded) + n if n else 0
    series = {}
    for m in set(mu):
        num = [one]
        for j in range(1, min(m - 1, k) + 1):
            dj = GradedPolynomial.var(vs, f"d{j}")
            num = [a + (dj * num[t - 1] if t > 0 else 0) for t, a in enumerate(num)] + [dj * num[-1]]
        series[m] = series_quotient(num, den, top)
    zero = GradedPolynomial.zero(vs)

    def beta(i, j):
        if j < 0:
            return zero
        return series[mu[i - 1]][j]

    matrix = [[beta(n + 1 - i, padded[i - 1] + j - i) for j in range(1, n + 1)] for i in range(1, n + 1)]
    cls = det(matrix, vs)
    return -cls if size % 2 else cls


def schubert_class(ell, n: int, k: int) -> GradedPolynomial:
    """Double Schur determinant for k points distributed on a complete flag."""
    flag = _check(ell, n, k)
    return _schubert_cached(flag.ell, n, k)


def _relabel(p: GradedPolynomial, columns, target: VariableSet) -> GradedPolynomial:
    rename = {f"d{i}": f"d{col}" for i, col in enumerate(columns, start=1)}
    return p.embed(target, rename)


def product_class(factors, n: int, k: int) -> GradedPolynomial:
    """Product of Schubert classes placed on disjoint column sets.

    ``factors`` is a list of (ell, columns) with 1-based column labels."""
    target = VariableSet(n, k)
    seen = set()
    result = GradedPolynomial.one(target)
    for ell, columns in factors:
        columns = list(columns)
        if seen & set(columns):
            raise ValueError(f"overlapping column sets at {sorted(seen & set(columns))}")
        if any(not 1 <= c <= k for c in columns):
            raise ValueError(f"column labels must lie in 1..{k}")
        seen |= set(columns)
        flag = ell if isinstance(ell, FlagSpec) else FlagSpec(tuple(ell))
        result = result * _relabel(schubert_class(flag, n, len(columns)), columns, target)
    return result


def determinantal_class(n: int, k: int, r: int) -> GradedPolynomial:
    """Class of {M in C^{n x k} : rank M <= r}, as the Schubert class of k
    generic points inside an r-dimensional flag member."""
    if not 0 <= r < min(n, k):
        raise ValueError(f"rank bound r={r} must satisfy 0 <= r < min(n, k)")
    ell = [0] * (n + 1)
    ell[r] = k
    return schubert_class(ell, n, k)


def collinearity_class(n: int, k: int, triple) -> GradedPolynomial:
    """Class of three columns spanning at most a plane in C^3."""
    if n != 3:
        raise ValueError("collinearity classes are defined for n = 3")
    triple = sorted(triple)
    if len(set(triple)) != 3:
        raise ValueError("need three distinct columns")
    return product_class([((0, 0, 3, 0), triple)], n, k)
