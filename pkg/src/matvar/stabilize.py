"""Moving a class between ambient dimensions.

A configuration of k vectors spanning C^s also sits in C^n for n >= s.
``localize_up`` computes the class there by summing over coordinate
s-planes; ``raise_stabilize`` does the same for the d-free part using
raising operators; ``dstab_check`` tests how the top Chern root enters.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .polyring import GradedPolynomial, VariableSet
from .symfunc import elementary, raise_, symmetrize_to_chern, to_roots, width


class StabilizationError(ArithmeticError):
    pass


def _roots(n: int) -> list:
    return [f"g{i}" for i in range(1, n + 1)]


def _root_ring(n: int, k: int) -> VariableSet:
    return VariableSet(0, k, tuple(_roots(n)))


def _summand(class_s: GradedPolynomial, subset: tuple, n: int, k: int, ring: VariableSet) -> GradedPolynomial:
    """class_s(roots in subset) * prod_{i outside}prod_j (g_i - d_j) * the
    Vandermonde factors not cancelled by this summand's denominator.

    When ``ring`` has no d variables the d's are set to zero."""
    s = len(subset)
    names = _roots(n)
    with_d = ring.k_scale == k
    inside = [names[i] for i in subset]
    outside = [names[i] for i in range(n) if i not in subset]
    assign = {f"c{i}": elementary(inside, i, ring) for i in range(1, s + 1)}
    for j in range(1, class_s.varset.k_scale + 1):
        assign[f"d{j}"] = GradedPolynomial.var(ring, f"d{j}") if with_d else 0
    term = class_s.substitute(assign, ring) if class_s.variables() else GradedPolynomial.constant(ring, class_s.terms.get(class_s.varset.zero_exp(), 0))
    g = {name: GradedPolynomial.var(ring, name) for name in names}
    for gi in outside:
        if with_d:
            for j in range(1, k + 1):
                term = term * (g[gi] - GradedPolynomial.var(ring, f"d{j}"))
        else:
            term = term * g[gi] ** k
    sign = 1
    for a in range(n):
        for b in range(a + 1, n):
            ina, inb = a in subset, b in subset
            if ina == inb:
                term = term * (g[names[a]] - g[names[b]])
            elif ina:
                sign = -sign
    return term if sign > 0 else -term


def localize_up(class_s: GradedPolynomial, s: int, n: int, k: int, threads: int = 1) -> GradedPolynomial:
    """Class of the same configuration placed in C^n, as a polynomial in
    c_1..c_n, d_1..d_k."""
    vs = class_s.varset
    if vs.n_chern != s or vs.k_scale != k:
        raise ValueError(f"class lives in ({vs.n_chern}, {vs.k_scale}), expected ({s}, {k})")
    if n < s:
        raise ValueError("cannot lift to a smaller ambient dimension")
    if n == s:
        return class_s
    return _localize(class_s, s, n, k, _root_ring(n, k), VariableSet(n, k), threads)


def localize_pure_c(class_s: GradedPolynomial, s: int, n: int, k: int, threads: int = 1) -> GradedPolynomial:
    """The d-free part of ``localize_up``, computed with d = 0 from the
    start; the input may be the full class or its d-free part."""
    vs = class_s.varset
    if vs.n_chern != s or vs.k_scale not in (0, k):
        raise ValueError(f"class lives in ({vs.n_chern}, {vs.k_scale}), expected ({s}, {k}) or ({s}, 0)")
    if n < s:
        raise ValueError("cannot lift to a smaller ambient dimension")
    if n == s:
        return GradedPolynomial(VariableSet(n, 0), {e[:n]: v for e, v in class_s.terms.items() if not any(e[n:])})
    return _localize(class_s, s, n, k, _root_ring(n, 0), VariableSet(n, 0), threads)


def _localize(class_s, s, n, k, ring, target, threads):
    subsets = list(combinations(range(n), s))
    work = lambda S: _summand(class_s, S, n, k, ring)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(work, subsets))
    else:
        parts = [work(S) for S in subsets]
    total = GradedPolynomial.zero(ring)
    for p in parts:
        total = total + p
    # divide by the Vandermonde product prod_{a<b} (g_a - g_b)
    for a in range(n):
        for b in range(a + 1, n):
            try:
                total = total.divide_linear(ring.index[f"g{a + 1}"], ring.index[f"g{b + 1}"])
            except ArithmeticError as exc:
                raise StabilizationError("localization sum did not clear its denominator") from exc
    try:
        return symmetrize_to_chern(total, _roots(n), target)
    except ValueError as exc:
        raise StabilizationError("localization sum is not symmetric in the roots") from exc


def raise_stabilize(pure_c_class: GradedPolynomial, s: int, n: int, k: int) -> GradedPolynomial:
    """Iterated raising with column height k - s, from c_1..c_s to c_1..c_n."""
    w = k - s
    if pure_c_class.varset.n_chern > s or not pure_c_class.is_pure_c():
        raise ValueError(f"expected a polynomial in c_1..c_{s} only")
    if pure_c_class and width(pure_c_class) > w:
        raise ValueError(f"width {width(pure_c_class)} exceeds k - s = {w}")
    p = pure_c_class
    for m in range(s, n):
        p = raise_(p, m, w)
    return p


@dataclass
class DStabilityReport:
    top_power: int
    bound: int
    coefficient_matches: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"ok": self.ok, "top_power": self.top_power, "bound": self.bound,
                "coefficient_matches": self.coefficient_matches, "failures": self.failures}


def root_coefficients(class_n: GradedPolynomial) -> dict:
    """{i: p_i} with class_n = sum_i p_i * g_n^i after passing to roots."""
    n = class_n.varset.n_chern
    k = class_n.varset.k_scale
    full = to_roots(class_n, _roots(n))
    rest = _root_ring(n - 1, k)
    last = full.varset.index[f"g{n}"]
    keep = [i for i in range(len(full.varset)) if i != last]
    idx = [rest.index[full.varset.names[i]] for i in keep]
    out: dict = {}
    for e, v in full.terms.items():
        e2 = [0] * len(rest)
        for i, j in zip(keep, idx):
            e2[j] = e[i]
        out.setdefault(e[last], {})[tuple(e2)] = v
    return {i: GradedPolynomial(rest, t) for i, t in sorted(out.items())}


def dstab_check(class_n: GradedPolynomial, class_n_minus_1: GradedPolynomial, k: int, s: int) -> DStabilityReport:
    """The top root enters to power at most k - s, and its coefficient
    at that power is the class one dimension down."""
    n = class_n.varset.n_chern
    bound = k - s
    coeffs = root_coefficients(class_n)
    top = max(coeffs) if coeffs else 0
    failures = []
    if top > bound:
        failures.append(f"power {top} of the last root exceeds {bound}")
    lower_roots = to_roots(class_n_minus_1, _roots(n - 1), _root_ring(n - 1, k))
    matches = coeffs.get(bound, GradedPolynomial.zero(_root_ring(n - 1, k))) == lower_roots
    if not matches:
        failures.append(f"coefficient of the last root to power {bound} differs from the lower class")
    return DStabilityReport(top, bound, matches, failures)
