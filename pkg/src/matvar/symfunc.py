"""Partitions, Schur determinants in Chern classes, width, and the
lowering/raising operators between numbers of Chern classes."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .polyring import GradedPolynomial, VariableSet, _norm


class Partition(tuple):
    """Weakly decreasing tuple of positive parts; trailing zeros dropped."""

    def __new__(cls, parts=()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def __repr__(self):
        return f"Partition({list(self)})"

    def padded(self, length: int) -> tuple:
        if len(self) > length:
            raise ValueError(f"{self} has more than {length} parts")
        return tuple(self) + (0,) * (length - len(self))


def partitions(total: int, max_part: int | None = None, max_len: int | None = None):
    """All partitions of ``total`` with bounded largest part / length, in
    reverse lexicographic order."""
    if max_part is None:
        max_part = total
    if max_len is None:
        max_len = total

    def rec(rem, cap, length):
        if rem == 0:
            yield ()
            return
        if length == 0:
            return
        for p in range(min(rem, cap), 0, -1):
            for rest in rec(rem - p, p, length - 1):
                yield (p,) + rest

    return [Partition(p) for p in rec(total, max_part, max_len)]


def chern_ring(n: int) -> VariableSet:
    return VariableSet(n, 0)


def _c(vs: VariableSet, n: int, i: int) -> GradedPolynomial:
    if i == 0:
        return GradedPolynomial.one(vs)
    if i < 0 or i > n:
        return GradedPolynomial.zero(vs)
    e = [0] * len(vs)
    e[vs.c(i)] = 1
    return GradedPolynomial(vs, {tuple(e): 1}, _trusted=True)


def det(matrix, vs: VariableSet) -> GradedPolynomial:
    """Determinant of a small square matrix of polynomials (Laplace along
    rows, memoized on the set of used columns)."""
    r = len(matrix)
    if r == 0:
        return GradedPolynomial.one(vs)
    memo = {}

    def minor(row, cols):
        # cols: tuple of still-available column indices
        if row == r:
            return GradedPolynomial.one(vs)
        key = cols
        if key in memo:
            return memo[key]
        acc = GradedPolynomial.zero(vs)
        for pos, col in enumerate(cols):
            entry = matrix[row][col]
            if not entry:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = entry * sub
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(r)))


@lru_cache(maxsize=None)
def _schur_cached(lam: tuple, n: int) -> GradedPolynomial:
    vs = chern_ring(n)
    r = len(lam)
    m = [[_c(vs, n, lam[i] + j - i) for j in range(r)] for i in range(r)]
    return det(m, vs)


def schur(lam, n: int, varset: VariableSet | None = None) -> GradedPolynomial:
    """Delta_lambda = det(c_{lambda_i + j - i}) with c_0 = 1 and c_m = 0
    outside 0..n.  Zero exactly when lambda_1 > n."""
    lam = Partition(lam)
    p = _schur_cached(tuple(lam), n)
    if varset is not None and varset != p.varset:
        p = p.embed(varset)
    return p


def c_monomial(vs: VariableSet, parts) -> tuple:
    e = [0] * len(vs)
    for p in parts:
        e[vs.c(p)] += 1
    return tuple(e)


def _pure_c_parts(p: GradedPolynomial):
    """Yield (partition of c-indices, coefficient) for a pure-c polynomial."""
    vs = p.varset
    n = vs.n_chern
    for e, v in p.terms.items():
        if any(e[n:]):
            raise ValueError("polynomial is not pure in the Chern classes")
        parts = []
        for i in range(n, 0, -1):
            parts += [i] * e[i - 1]
        yield Partition(parts), v


@lru_cache(maxsize=None)
def _transition(d: int, n: int):
    """Inverse of the matrix expressing Delta_lambda (lambda_1 <= n, |lambda|=d)
    in c-monomials; returns (partition list, inverse rows as dicts)."""
    lams = partitions(d, max_part=n)
    vs = chern_ring(n)
    idx = {lam: i for i, lam in enumerate(lams)}
    size = len(lams)
    # column j of M = Delta_{lams[j]} in monomial coordinates (monomial <-> partition)
    mat = [[Fraction(0)] * size for _ in range(size)]
    for j, lam in enumerate(lams):
        for mon_part, v in _pure_c_parts(schur(lam, n)):
            mat[idx[mon_part]][j] = Fraction(v)
    # invert by Gauss-Jordan
    aug = [row + [Fraction(int(i == r)) for i in range(size)] for r, row in enumerate(mat)]
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    inv = [row[size:] for row in aug]
    return lams, idx, inv


def schur_expand(p: GradedPolynomial, n: int | None = None) -> dict:
    """Coefficients of a pure-c polynomial in the Delta_lambda basis.

    Returns ``{Partition: coefficient}``; mixed-degree input is expanded
    degree by degree.
    """
    if n is None:
        n = p.varset.n_chern
    if not p.is_pure_c():
        raise ValueError("schur_expand needs a pure-c polynomial")
    by_deg: dict = {}
    for mon_part, v in _pure_c_parts(p):
        by_deg.setdefault(mon_part.size, {})[mon_part] = v
    out = {}
    for d, mons in by_deg.items():
        lams, idx, inv = _transition(d, n)
        for i, lam in enumerate(lams):
            s = sum((inv[i][idx[mp]] * v for mp, v in mons.items()), Fraction(0))
            if s:
                out[lam] = _norm(s)
    return dict(sorted(out.items()))


def from_schur(expansion: dict, n: int, varset: VariableSet | None = None) -> GradedPolynomial:
    vs = varset or chern_ring(n)
    acc = GradedPolynomial.zero(vs)
    for lam, v in expansion.items():
        acc = acc + schur(lam, n, vs).scale(v)
    return acc


def schur_to_json(expansion: dict) -> list:
    return [{"lambda": list(lam), "coeff": str(v)} for lam, v in sorted(expansion.items())]


def schur_from_json(items) -> dict:
    return {Partition(it["lambda"]): _norm(Fraction(it["coeff"])) for it in items}


def width(p: GradedPolynomial) -> int:
    """Maximum number of c-factors (with multiplicity) over the terms."""
    n = p.varset.n_chern
    w = 0
    for e in p.terms:
        if any(e[n:]):
            raise ValueError("width is defined for pure-c polynomials")
        w = max(w, sum(e[:n]))
    return w


def lower(p: GradedPolynomial, n: int, w: int) -> GradedPolynomial:
    """L^n_w: c_{i1}...c_{iw} -> c_{i1-1}...c_{iw-1}; narrower terms vanish.
    Input in c_1..c_{n+1}, output in c_1..c_n."""
    if width(p) > w:
        raise ValueError(f"width {width(p)} exceeds {w}")
    if p.varset.n_chern > n + 1:
        raise ValueError(f"input must live in at most {n + 1} Chern classes")
    out_vs = chern_ring(n)
    acc = {}
    for parts, v in _pure_c_parts(p):
        if len(parts) < w:
            continue
        lowered = [q - 1 for q in parts if q > 1]
        if any(q > n for q in lowered):
            raise ValueError("lowered monomial leaves c_1..c_n")
        e = c_monomial(out_vs, lowered)
        acc[e] = acc.get(e, 0) + v
    return GradedPolynomial(out_vs, acc)


def raise_(p: GradedPolynomial, n: int, w: int) -> GradedPolynomial:
    """R^n_w: add a column of height w to each Schur partition, moving
    from c_1..c_n to c_1..c_{n+1}."""
    if p.varset.n_chern > n:
        raise ValueError(f"input must live in at most {n} Chern classes")
    exp = schur_expand(p.embed(chern_ring(n)) if p.varset.n_chern != n else p, n)
    out = {}
    for lam, v in exp.items():
        if len(lam) > w:
            raise ValueError(f"partition {tuple(lam)} has more than {w} parts")
        up = Partition(q + 1 for q in lam.padded(w))
        out[up] = out.get(up, 0) + v
    return from_schur(out, n + 1)


def roots_ring(m: int, k: int = 0, prefix: str = "g") -> VariableSet:
    """Ring in Chern roots g1..gm (aux) plus d1..dk."""
    return VariableSet(0, k, tuple(f"{prefix}{i}" for i in range(1, m + 1)))


def elementary(vars_: list, i: int, vs: VariableSet) -> GradedPolynomial:
    acc = {}
    for comb in combinations(vars_, i):
        e = [0] * len(vs)
        for v in comb:
            e[vs.index[v]] += 1
        acc[tuple(e)] = 1
    if i == 0:
        return GradedPolynomial.one(vs)
    return GradedPolynomial(vs, acc, _trusted=True)


def elementary_in_roots(n: int, target: VariableSet, root_names: list | None = None) -> dict:
    """Assignment c_i -> e_i(roots) into ``target``."""
    roots = root_names or [f"g{i}" for i in range(1, n + 1)]
    return {f"c{i}": elementary(roots, i, target) for i in range(1, n + 1)}


def to_roots(p: GradedPolynomial, root_names: list | None = None, target: VariableSet | None = None):
    """Rewrite c_i as e_i of Chern roots, keeping d's."""
    n, k = p.varset.n_chern, p.varset.k_scale
    roots = root_names or [f"g{i}" for i in range(1, n + 1)]
    target = target or VariableSet(0, k, tuple(roots) + tuple(p.varset.aux))
    assign = elementary_in_roots(n, target, roots)
    for j in range(1, k + 1):
        assign[f"d{j}"] = GradedPolynomial.var(target, f"d{j}")
    for a in p.varset.aux:
        assign[a] = GradedPolynomial.var(target, a)
    return p.substitute(assign, target)


def symmetrize_to_chern(p: GradedPolynomial, root_names: list, target: VariableSet) -> GradedPolynomial:
    """Inverse of :func:`to_roots` on polynomials symmetric in the roots.

    Other variables of ``p`` are carried over by name into ``target``.
    Raises ValueError if ``p`` is not symmetric in the roots.
    """
    vs = p.varset
    m = len(root_names)
    ridx = [vs.index[r] for r in root_names]
    others = [i for i in range(len(vs)) if i not in ridx]
    other_t = [target.index[vs.names[i]] for i in others]
    rvs = VariableSet.of(root_names)
    es = [elementary(root_names, i, rvs) for i in range(m + 1)]
    # group by the non-root part
    groups: dict = {}
    for e, v in p.terms.items():
        key = tuple(e[i] for i in others)
        groups.setdefault(key, {})[tuple(e[i] for i in ridx)] = v
    out = {}
    e_pow_cache: dict = {}

    def e_product(expv):
        if expv not in e_pow_cache:
            acc = GradedPolynomial.one(rvs)
            for i, a in enumerate(expv, start=1):
                if a:
                    acc = acc * es[i] ** a
            e_pow_cache[expv] = acc
        return e_pow_cache[expv]

    for key, rterms in groups.items():
        work = dict(rterms)
        while work:
            lead = max(work)  # lex order on root exponents
            coef = work[lead]
            if any(a < b for a, b in zip(lead, lead[1:])):
                raise ValueError("polynomial is not symmetric in the Chern roots")
            expv = tuple(lead[i] - (lead[i + 1] if i + 1 < m else 0) for i in range(m))
            sub = e_product(expv)
            for te, tv in sub.terms.items():
                s = work.get(te, 0) - coef * tv
                if s:
                    work[te] = s
                else:
                    work.pop(te, None)
            t = [0] * len(target)
            for i, a in enumerate(expv, start=1):
                if a:
                    t[target.index[f"c{i}"]] += a
            for pos, ti in enumerate(other_t):
                t[ti] += key[pos]
            t = tuple(t)
            s = out.get(t, 0) + coef
            if s:
                out[t] = s
            else:
                out.pop(t, None)
    return GradedPolynomial(target, out)
