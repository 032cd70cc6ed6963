"""Numbers read off an equivariant class: enumerative counts, projective
degree, the GL(n) part, Schur-times-d expansion and containment probes."""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .polyring import GradedPolynomial, VariableSet
from .restriction import TestConfiguration, apply, restriction_map
from .symfunc import schur, schur_expand


class AuditFailure(ValueError):
    """A computed class violates a property every genuine class has."""


def _split(p: GradedPolynomial, n=None, k=None):
    vs = p.varset
    if (n is not None and n != vs.n_chern) or (k is not None and k != vs.k_scale):
        raise ValueError(f"class lives in n={vs.n_chern}, k={vs.k_scale}, not n={n}, k={k}")
    return vs.n_chern, vs.k_scale


def gw(cls: GradedPolynomial, q, codim: int | None = None) -> int:
    """N(C; q): the signed coefficient of d_1^{q_1}...d_k^{q_k}."""
    n, k = _split(cls)
    q = tuple(int(x) for x in q)
    if len(q) != k:
        raise ValueError(f"query needs {k} entries, got {len(q)}")
    if codim is None:
        codim = cls.degree() if cls else sum(q)
    if sum(q) != codim:
        raise ValueError(f"query total {sum(q)} differs from codimension {codim}")
    value = cls.coefficient_of((0,) * n + q) * (-1) ** codim
    if isinstance(value, Fraction) or value < 0:
        raise AuditFailure(f"count {value} for q={q} is not a nonnegative integer")
    return int(value)


def pure_d_counts(cls: GradedPolynomial) -> dict:
    """{q: N(C;q)} over all nonzero pure-d coefficients."""
    n, _ = _split(cls)
    sign = (-1) ** cls.degree()
    return {e[n:]: v * sign for e, v in cls.terms.items() if not any(e[:n])}


def degree_substitutions(cls: GradedPolynomial) -> tuple:
    """(value at c_i = binom(n,i), d = 0;  value at c = 0, d = -1)."""
    n, k = _split(cls)
    first = {f"c{i}": comb(n, i) for i in range(1, n + 1)} | {f"d{j}": 0 for j in range(1, k + 1)}
    second = {f"c{i}": 0 for i in range(1, n + 1)} | {f"d{j}": -1 for j in range(1, k + 1)}
    return cls.substitute(first), cls.substitute(second)


def degree_projective(cls: GradedPolynomial, n=None, k=None) -> int:
    _split(cls, n, k)
    if not cls.is_homogeneous():
        raise ValueError("degree needs a homogeneous class")
    a, b = degree_substitutions(cls)
    if a != b:
        raise AuditFailure(f"degree substitutions disagree: {a} vs {b}")
    return a


def pure_c(cls: GradedPolynomial) -> GradedPolynomial:
    """Set every d_j to 0; the result lives in c_1..c_n only."""
    n, k = _split(cls)
    target = VariableSet(n, 0)
    terms = {}
    for e, v in cls.terms.items():
        if not any(e[n:n + k]):
            terms[e[:n]] = v
    return GradedPolynomial(target, terms)


def schur_d_expand(cls: GradedPolynomial, n=None, k=None) -> dict:
    """{(mu, w): a} with cls = sum a * Delta_mu(c) * prod (-d_i)^{w_i}."""
    n, k = _split(cls, n, k)
    by_w: dict = {}
    cvs = VariableSet(n, 0)
    for e, v in cls.terms.items():
        by_w.setdefault(e[n:n + k], {})[e[:n]] = v
    out = {}
    for w, cterms in by_w.items():
        sign = (-1) ** sum(w)
        for mu, a in schur_expand(GradedPolynomial(cvs, cterms), n).items():
            out[(mu, w)] = a * sign
    return dict(sorted(out.items()))


def schur_d_resum(expansion: dict, n: int, k: int) -> GradedPolynomial:
    vs = VariableSet(n, k)
    total = GradedPolynomial.zero(vs)
    for (mu, w), a in expansion.items():
        term = schur(mu, n).embed(vs).mul_monomial((0,) * n + tuple(w), a * (-1) ** sum(w))
        total = total + term
    return total


def schur_d_negatives(expansion: dict) -> list:
    return [(tuple(mu), list(w), str(a)) for (mu, w), a in expansion.items() if a < 0]


def forced_zero_audit(cls: GradedPolynomial, config) -> dict:
    """Compare vanishing pure-d coefficients with the dimension-count
    criterion.  A forced zero with a nonzero coefficient is a failure;
    unexplained zeros are reported only."""
    n, k = _split(cls)
    codim = cls.degree()
    counts = pure_d_counts(cls)
    violations, unexplained = [], []

    def rec(j, left, acc):
        if j == k - 1:
            q = tuple(acc + [left])
            forced = config.forced_zero_witness(list(q)) is not None
            nonzero = counts.get(q, 0) != 0
            if forced and nonzero:
                violations.append(list(q))
            elif not forced and not nonzero:
                unexplained.append(list(q))
            return
        for x in range(left + 1):
            rec(j + 1, left - x, acc + [x])

    if k:
        rec(0, codim, [])
    return {"violations": violations, "unexplained_zeros": unexplained}


def hierarchy_probe(cls: GradedPolynomial, D: TestConfiguration) -> str:
    """"certified_contained" when the restriction to D is nonzero (then the
    closure of D's orbit lies in Y_C); otherwise "inconclusive"."""
    n, k = _split(cls)
    image = apply(restriction_map(D, n, k), cls)
    return "certified_contained" if image else "inconclusive"
