"""Interpolation solver: collect linear conditions on the unknown class in
the monomial basis of its degree and solve them exactly."""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy import sparse

from .matroid import Configuration
from .modular import EchelonForm, crt_pair, prime_sequence, rational_reconstruct
from .polyring import GradedPolynomial, VariableSet
from .restriction import ASSERTED, TestConfiguration, is_rank_excluded
from .symfunc import elementary, partitions


class InconsistentSystem(RuntimeError):
    pass


class NormalizationError(RuntimeError):
    pass


class ExclusionError(ValueError):
    pass


# ----------------------------------------------------------------- basis

def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass
class MonomialBasis:
    n: int
    k: int
    degree: int
    cpart: np.ndarray  # N x n exponents of c_1..c_n
    dpart: np.ndarray  # N x k exponents of d_1..d_k

    def __len__(self):
        return self.cpart.shape[0]

    @property
    def varset(self) -> VariableSet:
        return VariableSet(self.n, self.k)

    def exponent(self, i: int) -> tuple:
        return tuple(int(x) for x in self.cpart[i]) + tuple(int(x) for x in self.dpart[i])

    def monomials(self) -> list:
        return [self.exponent(i) for i in range(len(self))]

    @property
    def index(self) -> dict:
        if not hasattr(self, "_index"):
            self._index = {self.exponent(i): i for i in range(len(self))}
        return self._index

    def cwidth(self) -> np.ndarray:
        return self.cpart.sum(axis=1)

    def pure_c(self) -> np.ndarray:
        return self.dpart.sum(axis=1) == 0

    def to_polynomial(self, coeffs) -> GradedPolynomial:
        terms = {self.exponent(i): c for i, c in enumerate(coeffs) if c}
        return GradedPolynomial(self.varset, terms)

    def from_polynomial(self, p: GradedPolynomial) -> list:
        out = [0] * len(self)
        for e, c in p.terms.items():
            out[self.index[e]] = c
        return out


def monomial_basis(n: int, k: int, degree: int) -> MonomialBasis:
    """Every monomial of the given weighted degree, in descending canonical
    order (higher powers of later variables first)."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    vs = VariableSet(n, k)
    rows = []
    for cdeg in range(degree + 1):
        for lam in partitions(cdeg, max_part=n):
            cexp = [0] * n
            for part in lam:
                cexp[part - 1] += 1
            for dexp in _compositions(degree - cdeg, k):
                rows.append(tuple(cexp) + dexp)
    rows.sort(key=vs.sort_key, reverse=True)
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), n + k)
    return MonomialBasis(n, k, degree, arr[:, :n], arr[:, n:])


# ----------------------------------------------------------- kernel rows

@lru_cache(maxsize=None)
def _elementary_powers(n: int, cexp: tuple):
    """Prod e_i(t_1..t_n)^{a_i} as (exponent array, coefficient array)."""
    vs = VariableSet.of([f"t{i}" for i in range(1, n + 1)])
    ts = [f"t{i}" for i in range(1, n + 1)]
    p = GradedPolynomial.one(vs)
    for i, a in enumerate(cexp, start=1):
        if a:
            p = p * elementary(ts, i, vs) ** a
    exps = np.array(list(p.terms.keys()), dtype=np.int64).reshape(len(p.terms), n)
    vals = np.array([int(v) for v in p.terms.values()], dtype=np.int64)
    return exps, vals


def kernel_rows(basis: MonomialBasis, D: TestConfiguration) -> sparse.csr_matrix:
    """Rows expressing phi_D(class) = 0, one per target monomial, over the
    full monomial basis. Exact int64 entries."""
    n, k = basis.n, basis.k
    if D.k != k:
        raise ValueError("test configuration has the wrong number of columns")
    if D.m > n:
        raise ValueError("test configuration uses more directions than n")
    zero_cols = [j for j, a in enumerate(D.axes) if a == 0]
    width = n + len(zero_cols)
    base = basis.degree + 1
    weights = base ** np.arange(width, dtype=np.int64)
    # d-shifts in target exponents
    proj = np.zeros((k, width), dtype=np.int64)
    for j, a in enumerate(D.axes):
        if a:
            proj[j, a - 1] = 1
    for z, j in enumerate(zero_cols):
        proj[j, n + z] = 1
    shift_keys = (basis.dpart @ proj) @ weights
    keys, cols, vals = [], [], []
    cparts, inverse = np.unique(basis.cpart, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    for g, cexp in enumerate(cparts):
        members = np.nonzero(inverse == g)[0]
        exps, coeffs = _elementary_powers(n, tuple(int(x) for x in cexp))
        ekeys = exps @ weights[:n]
        kk = shift_keys[members][:, None] + ekeys[None, :]
        keys.append(kk.ravel())
        cols.append(np.repeat(members, len(ekeys)))
        vals.append(np.tile(coeffs, len(members)))
    keys = np.concatenate(keys)
    cols = np.concatenate(cols)
    vals = np.concatenate(vals)
    uniq, rows = np.unique(keys, return_inverse=True)
    mat = sparse.csr_matrix((vals, (rows.reshape(-1), cols)), shape=(len(uniq), len(basis)), dtype=np.int64)
    mat.sum_duplicates()
    mat.eliminate_zeros()
    return mat


# ---------------------------------------------------------------- system

@dataclass
class KnownCount:
    q: tuple
    count: int
    reason: str = ""

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(int(x) for x in obj["q"]), int(obj["count"]), obj.get("reason", ""))

    def to_json(self):
        out = {"q": list(self.q), "count": self.count}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class ConstraintSystem:
    """Linear conditions on the coefficient vector of the unknown class.

    With ``symmetry`` the unknowns are orbit sums of basis monomials under
    the column automorphisms of the configuration, which the class is
    invariant under; kernel rows are stored already summed over orbits."""

    config: Configuration
    basis: MonomialBasis
    labels: np.ndarray = None  # basis column -> unknown index
    kernel_blocks: list = field(default_factory=list)  # (provenance, csr over unknowns)
    zero_columns: dict = field(default_factory=dict)  # basis column -> provenance
    known: list = field(default_factory=list)  # (basis column, value, provenance)
    tests: list = field(default_factory=list)
    symmetry: bool = False

    def __post_init__(self):
        if self.labels is None:
            if self.symmetry:
                self.labels = basis_orbits(self.basis, self.config.automorphisms())
            else:
                self.labels = np.arange(len(self.basis))
        self.n_unknowns = int(self.labels.max()) + 1 if len(self.labels) else 0
        N = len(self.basis)
        self._proj = sparse.csr_matrix((np.ones(N, dtype=np.int64), (np.arange(N), self.labels)),
                                       shape=(N, self.n_unknowns), dtype=np.int64)

    @classmethod
    def for_configuration(cls, config: Configuration, symmetry: bool = False) -> "ConstraintSystem":
        codim = config.codimension()
        return cls(config, monomial_basis(config.n, config.k, codim), symmetry=symmetry)

    @property
    def codim(self) -> int:
        return self.basis.degree

    def add_kernel_constraints(self, D: TestConfiguration, check: bool = True):
        if check and D.justification != ASSERTED and not is_rank_excluded(D, self.config):
            raise ExclusionError(f"test configuration {D.blocks()} is neither rank-excluded nor asserted")
        mat = kernel_rows(self.basis, D)
        if self.symmetry:
            mat = (mat @ self._proj).tocsr()
            mat.eliminate_zeros()
            mat = mat[np.diff(mat.indptr) > 0]
        self.kernel_blocks.append((f"kernel({D.blocks()})", mat))
        self.tests.append(D)

    def add_width_constraints(self):
        s = self.config.spanning_rank()
        bad = np.nonzero(self.basis.pure_c() & (self.basis.cwidth() > self.config.k - s))[0]
        for i in bad:
            self.zero_columns.setdefault(int(i), "width")
        return len(bad)

    def add_forced_zero_constraints(self):
        """Zero rows for pure-d monomials whose count vanishes by dimension."""
        pure_d = np.nonzero(self.basis.cpart.sum(axis=1) == 0)[0]
        cfg = self.config
        items = list(cfg.subset_codims().items())
        if not items:
            return 0
        masks = np.array([[m >> j & 1 for j in range(cfg.k)] for m, _ in items], dtype=np.int64)
        thresholds = np.array([t for _, t in items], dtype=np.int64)
        qs = self.basis.dpart[pure_d]
        sums = qs @ masks.T
        forced = np.any(sums < thresholds[None, :], axis=1)
        added = 0
        for i in pure_d[forced]:
            self.zero_columns.setdefault(int(i), "zero")
            added += 1
        return added

    def add_known_count(self, known: KnownCount):
        if len(known.q) != self.config.k or sum(known.q) != self.codim:
            raise ValueError(f"known count {known.q} does not have total {self.codim}")
        col = self.basis.index[(0,) * self.config.n + tuple(known.q)]
        value = (-1) ** self.codim * known.count
        self.known.append((col, value, f"known({','.join(map(str, known.q))})"))

    def add_enumerative_constraints(self, known=()):
        added = self.add_forced_zero_constraints()
        for kc in known:
            self.add_known_count(kc)
        return added

    def rows_by_provenance(self) -> dict:
        out = {}
        for prov, mat in self.kernel_blocks:
            out[prov] = out.get(prov, 0) + mat.shape[0]
        for prov in self.zero_columns.values():
            out[prov] = out.get(prov, 0) + 1
        for _, _, prov in self.known:
            out[prov] = out.get(prov, 0) + 1
        return out


# --------------------------------------------------------------- symmetry

def basis_orbits(basis: MonomialBasis, perms) -> np.ndarray:
    """Orbit label of every basis monomial under a group of column
    permutations (``perms`` must be the whole group)."""
    N = len(basis)
    base = basis.degree + 1
    w = base ** np.arange(basis.n + basis.k, dtype=np.int64)
    keys = np.hstack([basis.cpart, basis.dpart]) @ w
    order = np.argsort(keys)
    sorted_keys = keys[order]
    root = np.arange(N)
    for perm in perms:
        img = np.empty_like(basis.dpart)
        img[:, list(perm)] = basis.dpart
        ik = np.hstack([basis.cpart, img]) @ w
        root = np.minimum(root, order[np.searchsorted(sorted_keys, ik)])
    _, labels = np.unique(root, return_inverse=True)
    return labels.reshape(-1)


def test_orbit_representatives(tests, perms):
    """One test configuration per orbit under column permutations."""
    seen = set()
    out = []
    for D in tests:
        if D.axes in seen:
            continue
        out.append(D)
        for perm in perms:
            img = [0] * D.k
            for j, a in enumerate(D.axes):
                img[perm[j]] = a
            seen.add(TestConfiguration(tuple(img)).axes)
        seen.add(D.axes)
    return out


# ------------------------------------------------------- test generation

def generate_tests(config: Configuration, max_axes: int | None = None, budget: int = 200000) -> list:
    """Rank-excluded block test configurations with at most max_axes
    directions (default: spanning rank), in a deterministic order."""
    k = config.k
    max_axes = config.spanning_rank() if max_axes is None else max_axes
    max_axes = min(max_axes, config.n)
    out = []
    count = 0

    def rec(j, axes, m):
        nonlocal count
        if count >= budget:
            return
        if j == k:
            count += 1
            D = TestConfiguration(tuple(axes))
            if D.m and is_rank_excluded(D, config):
                out.append(D)
            return
        for a in range(0, min(m + 1, max_axes) + 1):
            axes.append(a)
            rec(j + 1, axes, max(m, a))
            axes.pop()

    rec(0, [], 0)
    return out


# ----------------------------------------------------------------- solve

@dataclass
class SolveResult:
    dimension: int
    basis: list  # list of GradedPolynomial spanning the solution space (reconstructed when possible)
    normalized_class: GradedPolynomial | None
    rows_by_provenance: dict
    undetermined_pure_d: list
    primes: list
    audits: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "dimension": self.dimension,
            "rows_by_provenance": self.rows_by_provenance,
            "class": self.normalized_class.to_json() if self.normalized_class is not None else None,
            "audits": self.audits,
        }
        if self.dimension > 1:
            out["residual_basis"] = [p.to_json() for p in self.basis]
            out["undetermined_pure_d"] = self.undetermined_pure_d
        return out


@dataclass
class SolveOptions:
    primes: int = 2
    max_primes: int = 6
    chunk: int = 2048
    threads: int = 1
    checkpoint: str | None = None
    verify: bool = True


class _Reduced:
    """The system restricted to unknowns not forced to vanish."""

    def __init__(self, system: ConstraintSystem):
        zero = {int(system.labels[c]) for c in system.zero_columns}
        free = [u for u in range(system.n_unknowns) if u not in zero]
        remap = -np.ones(system.n_unknowns, dtype=np.int64)
        remap[free] = np.arange(len(free))
        self.free = np.array(free, dtype=np.int64)
        self.unknown_of = remap  # unknown -> reduced column or -1
        self.col_of = remap[system.labels]  # basis column -> reduced column or -1
        self.ncols = len(free)
        self.blocks = []
        for prov, mat in system.kernel_blocks:
            red = mat[:, self.free].tocsr() if self.ncols else mat[:, :0].tocsr()
            red.eliminate_zeros()
            self.blocks.append((prov, red[np.diff(red.indptr) > 0]))
        self.nrows = sum(m.shape[0] for _, m in self.blocks)
        self.known = [(int(self.col_of[col]), value, prov) for col, value, prov in system.known]

    def expand(self, vec):
        """Reduced coefficient vector -> full basis coefficient list."""
        return [vec[c] if c >= 0 else 0 for c in self.col_of]

    def unknowns(self, vec):
        """Reduced coefficient vector -> vector over all unknowns."""
        return [vec[c] if c >= 0 else 0 for c in self.unknown_of]


SKETCH_OVERSAMPLE = 24


def _row_chunks(red: _Reduced, chunk: int):
    for _, mat in red.blocks:
        for s in range(0, mat.shape[0], chunk):
            yield mat[s:s + chunk]


def _echelon_for_prime(red: _Reduced, p: int, chunk: int) -> EchelonForm:
    """Row echelon form of the kernel rows mod p.  Tall systems are first
    compressed by a random left multiplication to ncols + oversampling rows,
    which keeps the row space with overwhelming probability."""
    ech = EchelonForm(red.ncols, p)
    if red.ncols == 0:
        return ech
    size = red.ncols + SKETCH_OVERSAMPLE
    if red.nrows <= size:
        for part in _row_chunks(red, chunk):
            ech.add_rows(np.mod(part.toarray(), p).astype(np.float64))
            if ech.rank == red.ncols:
                break
        return ech
    rng = np.random.default_rng(p)
    sketch = np.zeros((red.ncols, size))
    for part in _row_chunks(red, chunk):
        part = part.copy()
        part.data = np.mod(part.data, p).astype(np.float64)
        part = part.astype(np.float64)
        g = rng.integers(0, p, size=(part.shape[0], size)).astype(np.float64)
        sketch = np.fmod(sketch + np.fmod(part.T @ g, p), p)
    for s in range(0, size, chunk):
        ech.add_rows(sketch[:, s:s + chunk].T)
        if ech.rank == red.ncols:
            break
    return ech


def _solve_mod_p(red: _Reduced, p: int, chunk: int):
    ech = _echelon_for_prime(red, p, chunk)
    null = ech.nullspace()  # dim x ncols, residues
    dim = null.shape[0]
    particular = None
    if red.known and dim:
        # coefficients x with x . null[:, col] = value for each known row
        A = np.array([[int(null[t, col]) for t in range(dim)] if col >= 0 else [0] * dim
                      for col, _, _ in red.known], dtype=object)
        b = [v % p for _, v, _ in red.known]
        x = _solve_small_mod_p(A, b, p)
        if x is None:
            raise InconsistentSystem("known counts are inconsistent with the other constraints")
        if x != "underdetermined":
            vec = np.zeros(red.ncols, dtype=object)
            for t in range(dim):
                if x[t]:
                    vec = (vec + x[t] * null[t].astype(np.int64).astype(object)) % p
            particular = vec
    elif red.known and not dim:
        if any(v % p for _, v, _ in red.known):
            raise InconsistentSystem("only the zero class satisfies the kernel rows, but a known count is nonzero")
    return dim, null, particular


def _solve_small_mod_p(A, b, p):
    """Solve A x = b mod p for a small dense system; returns the unique
    solution, "underdetermined", or None when inconsistent."""
    rows = [list(map(int, r)) + [int(v)] for r, v in zip(A, b)]
    ncol = len(rows[0]) - 1 if rows else 0
    piv_cols = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b_) % p for a, b_ in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncol] % p:
            return None
    if r < ncol:
        return "underdetermined"
    x = [0] * ncol
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][ncol]
    return x


def _lift(residues: list, primes: list):
    """CRT-combine residue vectors and rationally reconstruct; None on failure."""
    acc, mod = [int(v) for v in residues[0]], primes[0]
    for vec, p in zip(residues[1:], primes[1:]):
        new = []
        for a, b in zip(acc, vec):
            x, m = crt_pair(a, mod, int(b), p)
            new.append(x)
        acc, mod = new, mod * p
    out = []
    for a in acc:
        f = rational_reconstruct(a, mod)
        if f is None:
            return None
        out.append(f)
    return out


def verify_exact(system: ConstraintSystem, coeffs: list, unknowns: list | None = None) -> bool:
    """Check every constraint row over the integers/rationals.  ``coeffs``
    is over the monomial basis; kernel rows are checked on the unknowns."""
    if unknowns is None:
        unknowns = [0] * system.n_unknowns
        for i, c in enumerate(coeffs):
            unknowns[int(system.labels[i])] = c
    for col, _ in system.zero_columns.items():
        if coeffs[col] != 0:
            return False
    for col, value, _ in system.known:
        if coeffs[col] != value:
            return False
    den = 1
    for c in unknowns:
        if isinstance(c, Fraction):
            den = den * c.denominator // np.gcd(den, c.denominator)
    ints = [int(c * den) for c in unknowns]
    big = max((abs(x) for x in ints), default=0)
    for _, mat in system.kernel_blocks:
        entry_max = int(np.abs(mat.data).max()) if mat.nnz else 0
        row_len = int(np.diff(mat.indptr).max()) if mat.shape[0] else 0
        if big * max(entry_max, 1) * max(row_len, 1) < 2 ** 62:
            res = mat @ np.array(ints, dtype=np.int64)
            if np.any(res != 0):
                return False
        else:
            vec = np.array(ints, dtype=object)
            coo = mat.tocoo()
            acc = [0] * mat.shape[0]
            for r, c, v in zip(coo.row, coo.col, coo.data):
                acc[r] += int(v) * vec[c]
            if any(acc):
                return False
    return True


def solve(system: ConstraintSystem, options: SolveOptions | None = None) -> SolveResult:
    opts = options or SolveOptions()
    t0 = time.perf_counter()
    red = _Reduced(system)
    timings = {"reduce": time.perf_counter() - t0}
    primes = prime_sequence(opts.max_primes)
    results = {}

    def run(p):
        return p, _solve_mod_p(red, p, opts.chunk)

    used = []
    with ThreadPoolExecutor(max_workers=max(1, opts.threads)) as pool:
        for p, res in pool.map(run, primes[:opts.primes]):
            results[p] = res
            used.append(p)
    t1 = time.perf_counter()
    timings["eliminate"] = t1 - t0 - timings["reduce"]
    # unlucky primes can only enlarge the kernel
    dim = min(r[0] for r in results.values())
    good = [p for p in used if results[p][0] == dim]
    extra = opts.primes
    while len(good) < 2 and extra < len(primes):
        p = primes[extra]
        extra += 1
        results[p] = _solve_mod_p(red, p, opts.chunk)
        used.append(p)
        dim = min(r[0] for r in results.values())
        good = [q for q in used if results[q][0] == dim]

    rows = system.rows_by_provenance()
    normalized = None
    basis_polys = []
    audits = {}
    if dim == 1 and all(results[p][2] is not None for p in good):
        coeffs = None
        for upto in range(2, len(good) + 1):
            lifted = _lift([results[p][2] for p in good[:upto]], good[:upto])
            prev = _lift([results[p][2] for p in good[:upto - 1]], good[:upto - 1]) if upto > 2 else None
            if lifted is not None and (prev is None or prev == lifted):
                coeffs = lifted
                break
        while coeffs is None and extra < len(primes):
            p = primes[extra]
            extra += 1
            res = _solve_mod_p(red, p, opts.chunk)
            if res[0] != dim or res[2] is None:
                continue
            results[p] = res
            good.append(p)
            coeffs = _lift([results[q][2] for q in good], good)
        if coeffs is None:
            raise NormalizationError("rational reconstruction failed")
        full = red.expand(coeffs)
        if any(isinstance(c, Fraction) and c.denominator != 1 for c in full):
            raise NormalizationError("normalized class has non-integer coefficients")
        full = [int(c) for c in full]
        if opts.verify:
            ok = verify_exact(system, full, [int(c) for c in red.unknowns(coeffs)])
            audits["exact_verification"] = {"ok": ok}
            if not ok:
                raise InconsistentSystem("reconstructed class fails exact verification")
        normalized = system.basis.to_polynomial(full)
        basis_polys = [normalized]
    elif dim >= 1:
        # report a reconstruction of the residual basis when possible
        p0 = good[0]
        null0 = results[p0][1]
        for t in range(null0.shape[0]):
            vec = [int(x) for x in null0[t]]
            vals = [rational_reconstruct(v, p0) or 0 for v in vec]
            basis_polys.append(system.basis.to_polynomial(red.expand(vals)))
    undetermined = []
    if dim > 1:
        p0 = good[0]
        null0 = results[p0][1]
        pure = np.nonzero(system.basis.cpart.sum(axis=1) == 0)[0]
        for i in pure:
            c = red.col_of[i]
            if c >= 0 and np.any(null0[:, c] != 0):
                undetermined.append([int(x) for x in system.basis.dpart[i]])
    timings["total"] = time.perf_counter() - t0
    return SolveResult(dim, basis_polys, normalized, rows, undetermined, good, audits, timings)


# ------------------------------------------------------------ checkpoint

def save_checkpoint(system: ConstraintSystem, path) -> None:
    """Write the assembled system: a JSON manifest plus one npz of rows."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    manifest = {
        "config": system.config.to_json(),
        "degree": system.codim,
        "tests": [D.to_json() for D in system.tests],
        "zero_columns": {str(c): p for c, p in system.zero_columns.items()},
        "known": [[c, str(v), p] for c, v, p in system.known],
        "blocks": [prov for prov, _ in system.kernel_blocks],
        "symmetry": system.symmetry,
    }
    arrays = {"labels": np.asarray(system.labels)}
    for i, (_, mat) in enumerate(system.kernel_blocks):
        arrays[f"b{i}_data"] = mat.data
        arrays[f"b{i}_indices"] = mat.indices
        arrays[f"b{i}_indptr"] = mat.indptr
        arrays[f"b{i}_shape"] = np.array(mat.shape)
    np.savez_compressed(path / "rows.npz", **arrays)
    (path / "system.json").write_text(json.dumps(manifest, indent=1))


def load_checkpoint(path) -> ConstraintSystem:
    path = Path(path)
    manifest = json.loads((path / "system.json").read_text())
    config = Configuration.from_json(manifest["config"])
    arrays = np.load(path / "rows.npz")
    system = ConstraintSystem(config, monomial_basis(config.n, config.k, manifest["degree"]),
                              labels=arrays["labels"], symmetry=manifest.get("symmetry", False))
    for i, prov in enumerate(manifest["blocks"]):
        shape = tuple(arrays[f"b{i}_shape"])
        mat = sparse.csr_matrix((arrays[f"b{i}_data"], arrays[f"b{i}_indices"], arrays[f"b{i}_indptr"]),
                                shape=shape)
        system.kernel_blocks.append((prov, mat.astype(np.int64)))
    system.tests = [TestConfiguration.from_json(t) for t in manifest["tests"]]
    system.zero_columns = {int(c): p for c, p in manifest["zero_columns"].items()}
    system.known = [(int(c), int(v), p) for c, v, p in manifest["known"]]
    return system


# --------------------------------------------------------------- pipeline

def assemble(config: Configuration, tests=(), known=(), *, auto_tests: bool = True,
             kernel_only: bool = False, symmetry: bool = False) -> ConstraintSystem:
    """Build the constraint system: automatic rank-excluded tests, supplied
    tests, known counts, and unless ``kernel_only`` the forced and width
    zeros."""
    system = ConstraintSystem.for_configuration(config, symmetry=symmetry)
    if kernel_only:
        for kc in known:
            system.add_known_count(kc)
    else:
        system.add_width_constraints()
        system.add_enumerative_constraints(known)
    if auto_tests:
        generated = generate_tests(config)
        if symmetry:
            generated = test_orbit_representatives(generated, config.automorphisms())
        for D in generated:
            system.add_kernel_constraints(D, check=False)
    for D in tests:
        system.add_kernel_constraints(D)
    return system


def compute_class(config: Configuration, tests=(), known=(), *, auto_tests: bool = True,
                  kernel_only: bool = False, symmetry: bool = False,
                  options: SolveOptions | None = None) -> SolveResult:
    system = assemble(config, tests, known, auto_tests=auto_tests, kernel_only=kernel_only, symmetry=symmetry)
    if options is not None and options.checkpoint:
        save_checkpoint(system, options.checkpoint)
    return solve(system, options)
