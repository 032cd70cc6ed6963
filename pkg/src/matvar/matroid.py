"""Rational vector configurations, their rank functions and the
codimension of the associated matrix matroid variety."""

from __future__ import annotations

import json
import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from .modular import random_prime, rank_mod_p


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def exact_rank(vectors) -> int:
    """Rank of a list of rational vectors by fraction Gaussian elimination."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for col in range(width):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                f = rows[r][col] / pv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def nullspace(rows, width: int) -> list:
    """Exact basis of {x : row . x = 0 for all rows}."""
    rows = [list(map(_frac, r)) for r in rows]
    pivots = []
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [a / pv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * width
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fcol]
        basis.append(v)
    return basis


class CodimensionError(RuntimeError):
    pass


@dataclass
class Configuration:
    """k rational column vectors in dimension n."""

    n: int
    columns: list
    name: str = ""
    codim_override: int | None = None
    _rank_memo: dict = field(default_factory=dict, repr=False, compare=False)
    _codim_memo: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        self.columns = [tuple(_frac(x) for x in col) for col in self.columns]
        for col in self.columns:
            if len(col) != self.n:
                raise ValueError(f"column {col} does not have length n={self.n}")

    @property
    def k(self) -> int:
        return len(self.columns)

    # --- serialization
    @classmethod
    def from_json(cls, obj) -> "Configuration":
        cols = obj["columns"]
        n = int(obj["n"])
        conf = cls(n, cols, obj.get("name", ""), obj.get("codim"))
        if "k" in obj and int(obj["k"]) != conf.k:
            raise ValueError("k does not match the number of columns")
        return conf

    @classmethod
    def load(cls, path) -> "Configuration":
        return cls.from_json(json.loads(Path(path).read_text()))

    def to_json(self) -> dict:
        out = {"name": self.name, "n": self.n, "k": self.k,
               "columns": [[str(x) for x in col] for col in self.columns]}
        if self.codim_override is not None:
            out["codim"] = self.codim_override
        return out

    # --- rank oracle
    def _mask(self, V) -> int:
        if isinstance(V, int):
            return V
        m = 0
        for j in V:
            if not 0 <= j < self.k:
                raise IndexError(f"column index {j} out of range 0..{self.k - 1}")
            m |= 1 << j
        return m

    def rank(self, V) -> int:
        """r_C(V) for V an iterable of 0-based column indices or a bitmask."""
        m = self._mask(V)
        r = self._rank_memo.get(m)
        if r is None:
            r = exact_rank([self.columns[j] for j in range(self.k) if m >> j & 1])
            with self._lock:
                self._rank_memo[m] = r
        return r

    def spanning_rank(self) -> int:
        return self.rank((1 << self.k) - 1)

    def closure(self, V) -> int:
        m = self._mask(V)
        r = self.rank(m)
        for j in range(self.k):
            if not m >> j & 1 and self.rank(m | 1 << j) == r:
                m |= 1 << j
        return m

    def circuits(self, max_size: int | None = None) -> list:
        """Minimal dependent subsets (as sorted 0-based tuples) of size <= max_size."""
        max_size = self.n + 1 if max_size is None else max_size
        found = []
        for size in range(1, max_size + 1):
            for comb in combinations(range(self.k), size):
                m = self._mask(comb)
                if self.rank(m) < size and not any((c & m) == c for c in found):
                    found.append(m)
        return [tuple(j for j in range(self.k) if m >> j & 1) for m in found]

    def flats(self) -> list:
        """All flats as bitmasks, obtained as closures of every subset."""
        if "_flats" not in self._codim_memo:
            self._codim_memo["_flats"] = sorted({self.closure(m) for m in range(1 << self.k)})
        return self._codim_memo["_flats"]

    def dependent_flats(self, within: int | None = None) -> list:
        """Dependent flats (|F| > r(F)) of C, or of the restriction C|within."""
        if within is None:
            within = (1 << self.k) - 1
        out = set()
        for F in self.flats():
            G = F & within
            if bin(G).count("1") > self.rank(G):
                out.add(G)
        return sorted(out)

    def restrict(self, V) -> "Configuration":
        idx = [j for j in range(self.k) if self._mask(V) >> j & 1]
        return Configuration(self.n, [self.columns[j] for j in idx], f"{self.name}|{idx}")

    # --- codimension
    def _tangent_equations(self, within: int | None = None) -> list:
        """Linear equations (over Q) cutting out the tangent space of the
        rank conditions at this realization: u^T M' w = 0 for u in the left
        kernel and w in the right kernel of M_F, F a dependent flat."""
        eqs = []
        k, n = self.k, self.n
        for F in self.dependent_flats(within):
            cols = [j for j in range(k) if F >> j & 1]
            r = self.rank(F)
            # M_F as n x |F|; left kernel: u with u^T M_F = 0
            mat_rows = [[self.columns[j][i] for j in cols] for i in range(n)]
            left = nullspace([[mat_rows[i][c] for i in range(n)] for c in range(len(cols))], n)
            right = nullspace(mat_rows, len(cols))
            assert len(left) == n - r and len(right) == len(cols) - r
            for u in left:
                for w in right:
                    # variable (i, j) -> index i*k + j
                    row = [Fraction(0)] * (n * k)
                    for a in range(n):
                        if u[a] == 0:
                            continue
                        for b, j in enumerate(cols):
                            if w[b] != 0:
                                row[a * k + j] += u[a] * w[b]
                    eqs.append(row)
        return eqs

    def codimension(self, attempts: int = 5, seed: int | None = None) -> int:
        if self.codim_override is not None:
            return self.codim_override
        if "full" in self._codim_memo:
            return self._codim_memo["full"]
        value = self._jacobian_rank(attempts, seed)
        self._codim_memo["full"] = value
        return value

    def _jacobian_rank(self, attempts, seed, within=None) -> int:
        eqs = self._tangent_equations(within)
        if not eqs:
            return 0
        # clear denominators row by row
        int_rows = []
        for row in eqs:
            den = 1
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
            int_rows.append([int(x * den) for x in row])
        rng = random.Random(seed)
        for _ in range(attempts):
            p1, p2 = random_prime(62, rng), random_prime(62, rng)
            r1, r2 = rank_mod_p(int_rows, p1), rank_mod_p(int_rows, p2)
            if r1 == r2:
                return r1
        raise CodimensionError("modular Jacobian ranks disagree after retries")

    def sub_codimension(self, V) -> int:
        """Codimension of the matroid variety of the restriction C|V."""
        m = self._mask(V)
        if m in self._codim_memo:
            return self._codim_memo[m]
        if m == (1 << self.k) - 1:
            value = self.codimension()
        else:
            value = self._jacobian_rank(5, None, m)
        self._codim_memo[m] = value
        return value

    def forced_zero(self, q) -> bool:
        """True when N(C; q) vanishes by a dimension count on some column
        subset I: the constraints on columns in I have total codimension
        exceeding dim P(Y_{C|I}), i.e. sum_{i in I} q_i < codim(C|I)."""
        q = list(q)
        if len(q) != self.k:
            raise ValueError("q must have one entry per column")
        if sum(q) != self.codimension():
            raise ValueError(f"sum(q)={sum(q)} differs from codimension {self.codimension()}")
        return self.forced_zero_witness(q) is not None

    def forced_zero_witness(self, q):
        for m, thr in self.subset_codims().items():
            if sum(q[j] for j in range(self.k) if m >> j & 1) < thr:
                return tuple(j for j in range(self.k) if m >> j & 1)
        return None

    def subset_codims(self) -> dict:
        """{bitmask: codim(C|I)} for all I with positive codimension, except
        the full set; subsets without a circuit have codimension 0."""
        if "_subsets" in self._codim_memo:
            return self._codim_memo["_subsets"]
        circ = [self._mask(c) for c in self.circuits()]
        full = (1 << self.k) - 1
        out = {}
        for m in range(1, full):
            if any((c & m) == c for c in circ):
                v = self.sub_codimension(m)
                if v > 0:
                    out[m] = v
        self._codim_memo["_subsets"] = out
        return out

    # --- symmetry
    def automorphisms(self) -> list:
        """Column permutations preserving the rank function (as tuples
        perm[j] = image of j)."""
        k = self.k
        circ = {self._mask(c) for c in self.circuits(self.spanning_rank() + 1)}
        by_elem = {j: [c for c in circ if c >> j & 1] for j in range(k)}
        singles = [self.rank(1 << j) for j in range(k)]
        result = []
        perm = [-1] * k
        used = [False] * k

        def image(m):
            out = 0
            for j in range(k):
                if m >> j & 1:
                    out |= 1 << perm[j]
            return out

        def rec(i, assigned_mask):
            if i == k:
                result.append(tuple(perm))
                return
            for t in range(k):
                if used[t] or singles[t] != singles[i]:
                    continue
                perm[i] = t
                used[t] = True
                ok = True
                mask = assigned_mask | 1 << i
                for c in by_elem[i]:
                    if (c & mask) == c and image(c) not in circ:
                        ok = False
                        break
                if ok:
                    rec(i + 1, mask)
                used[t] = False
                perm[i] = -1

        rec(0, 0)
        return result


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
