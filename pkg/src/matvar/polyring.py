"""Sparse exact polynomials graded by deg c_i = i, deg d_j = 1.

Exponents are stored as dense tuples over the variable order of a
:class:`VariableSet`; coefficients are ``int`` whenever integral and
``Fraction`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

Coeff = Union[int, Fraction]


def _norm(x) -> Coeff:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _norm(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return _norm(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


class VariableMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VariableSet:
    """Ordered variables c_1..c_n, d_1..d_k followed by auxiliary names."""

    n_chern: int
    k_scale: int
    aux: tuple = ()
    aux_degrees: tuple | None = None
    names: tuple = field(init=False, repr=False, compare=False)
    degrees: tuple = field(init=False, repr=False, compare=False)
    index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n_chern < 0 or self.k_scale < 0:
            raise ValueError("variable counts must be nonnegative")
        aux = tuple(self.aux)
        object.__setattr__(self, "aux", aux)
        if self.aux_degrees is None:
            object.__setattr__(self, "aux_degrees", (1,) * len(aux))
        elif len(self.aux_degrees) != len(aux):
            raise ValueError("aux_degrees must match aux")
        else:
            object.__setattr__(self, "aux_degrees", tuple(self.aux_degrees))
        names = tuple(f"c{i}" for i in range(1, self.n_chern + 1))
        names += tuple(f"d{j}" for j in range(1, self.k_scale + 1)) + aux
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        degrees = tuple(range(1, self.n_chern + 1)) + (1,) * self.k_scale + self.aux_degrees
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "index", {v: i for i, v in enumerate(names)})

    @classmethod
    def of(cls, names: Sequence[str], degrees: Sequence[int] | None = None) -> "VariableSet":
        """A ring on arbitrary auxiliary variables only."""
        return cls(0, 0, tuple(names), None if degrees is None else tuple(degrees))

    def __len__(self):
        return len(self.names)

    def c(self, i: int) -> int:
        return i - 1

    def d(self, j: int) -> int:
        return self.n_chern + j - 1

    def zero_exp(self) -> tuple:
        return (0,) * len(self.names)

    def monomial(self, exps: Mapping[str, int] | None = None, **kw) -> tuple:
        """Dense exponent tuple from a sparse ``{name: exponent}`` map."""
        e = [0] * len(self.names)
        for name, p in {**(exps or {}), **kw}.items():
            if p < 0:
                raise ValueError("negative exponent")
            try:
                e[self.index[name]] += p
            except KeyError:
                raise VariableMismatch(f"unknown variable {name!r}") from None
        return tuple(e)

    def mono_degree(self, e: tuple) -> int:
        return sum(p * w for p, w in zip(e, self.degrees))

    def is_c(self, i: int) -> bool:
        return i < self.n_chern

    def is_d(self, i: int) -> bool:
        return self.n_chern <= i < self.n_chern + self.k_scale

    def sort_key(self, e: tuple):
        # graded lex, c_1 < ... < c_n < d_1 < ... < d_k < aux
        return (self.mono_degree(e), tuple(reversed(e)))


class GradedPolynomial:
    """Immutable sparse polynomial over a :class:`VariableSet`."""

    __slots__ = ("varset", "terms", "_hash")

    def __init__(self, varset: VariableSet, terms: Mapping[tuple, Coeff] | None = None, _trusted=False):
        self.varset = varset
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            nv = len(varset.names)
            for e, v in (terms or {}).items():
                e = tuple(e)
                if len(e) != nv:
                    raise VariableMismatch("exponent length does not match variable set")
                v = _norm(v)
                if v:
                    clean[e] = clean.get(e, 0) + v
                    if not clean[e]:
                        del clean[e]
            self.terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, varset):
        return cls(varset, {}, _trusted=True)

    @classmethod
    def one(cls, varset):
        return cls.constant(varset, 1)

    @classmethod
    def constant(cls, varset, value):
        value = _norm(value)
        return cls(varset, {varset.zero_exp(): value} if value else {}, _trusted=True)

    @classmethod
    def var(cls, varset, name: str, power: int = 1):
        return cls(varset, {varset.monomial({name: power}): 1}, _trusted=True)

    def gens(self):
        return [GradedPolynomial.var(self.varset, v) for v in self.varset.names]

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, GradedPolynomial):
            return self.varset == other.varset and self.terms == other.terms
        try:
            other = _norm(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({self.varset.zero_exp(): other} if other else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.varset, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> "GradedPolynomial":
        if isinstance(other, GradedPolynomial):
            if other.varset != self.varset:
                raise VariableMismatch(f"{self.varset.names} vs {other.varset.names}")
            return other
        return GradedPolynomial.constant(self.varset, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, v in other.terms.items():
            s = out.get(e, 0) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return GradedPolynomial(self.varset, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial(self.varset, {e: -v for e, v in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "GradedPolynomial":
        s = _norm(s)
        if not s:
            return GradedPolynomial.zero(self.varset)
        return GradedPolynomial(self.varset, {e: _norm(v * s) for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, GradedPolynomial):
            return self.scale(other)
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, vb in b.items():
            for ea, va in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = get(e, 0) + va * vb
        return GradedPolynomial(self.varset, {e: _norm(v) for e, v in out.items() if v}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = GradedPolynomial.one(self.varset)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, e: tuple, coeff: Coeff = 1) -> "GradedPolynomial":
        return GradedPolynomial(
            self.varset,
            {tuple([x + y for x, y in zip(k, e)]): _norm(v * coeff) for k, v in self.terms.items()},
            _trusted=True,
        )

    # grading
    def degree(self) -> int:
        """Maximum weighted degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.varset.mono_degree(e) for e in self.terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {self.varset.mono_degree(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def homogeneous_part(self, degree: int) -> "GradedPolynomial":
        md = self.varset.mono_degree
        return GradedPolynomial(self.varset, {e: v for e, v in self.terms.items() if md(e) == degree}, _trusted=True)

    def coefficient_of(self, m) -> Coeff:
        if isinstance(m, Mapping):
            m = self.varset.monomial(m)
        return self.terms.get(tuple(m), 0)

    def variables(self) -> set:
        used = set()
        for e in self.terms:
            used.update(i for i, p in enumerate(e) if p)
        return {self.varset.names[i] for i in used}

    def is_pure_c(self) -> bool:
        n = self.varset.n_chern
        return all(not any(e[n:]) for e in self.terms)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self.terms.values())

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(self.varset.zero_exp(), 0)

    def sorted_terms(self, descending: bool = True):
        return sorted(self.terms.items(), key=lambda kv: self.varset.sort_key(kv[0]), reverse=descending)

    # ring changes
    def embed(self, target: VariableSet, rename: Mapping[str, str] | None = None) -> "GradedPolynomial":
        """Re-express in ``target`` by variable name (optionally renamed)."""
        rename = rename or {}
        idx = []
        for name in self.varset.names:
            t = rename.get(name, name)
            if t not in target.index:
                idx.append(None)
            else:
                idx.append(target.index[t])
        out = {}
        nt = len(target.names)
        for e, v in self.terms.items():
            new = [0] * nt
            for i, p in enumerate(e):
                if p:
                    if idx[i] is None:
                        raise VariableMismatch(f"variable {self.varset.names[i]} missing in target ring")
                    new[idx[i]] += p
            new = tuple(new)
            out[new] = out.get(new, 0) + v
        return GradedPolynomial(target, out)

    def substitute(self, assignment: Mapping[str, object], target: VariableSet | None = None):
        """Ring homomorphism sending each variable to a polynomial or rational.

        Every variable occurring in ``self`` must be assigned. When every value
        is a constant and ``target`` is None, the exact rational value is
        returned instead of a polynomial.
        """
        vs = self.varset
        used = self.variables()
        missing = used - set(assignment)
        if missing:
            raise VariableMismatch(f"unassigned variables: {sorted(missing)}")
        polys = [v for v in assignment.values() if isinstance(v, GradedPolynomial)]
        if target is None and polys:
            target = polys[0].varset
        if target is None:
            vals = [_norm(assignment[n]) if n in assignment else None for n in vs.names]
            total = 0
            for e, c in self.terms.items():
                t = c
                for i, p in enumerate(e):
                    if p:
                        t = t * vals[i] ** p
                total += t
            return _norm(total)
        images = []
        for n in vs.names:
            if n not in assignment:
                images.append(None)
                continue
            v = assignment[n]
            if isinstance(v, GradedPolynomial):
                if v.varset != target:
                    raise VariableMismatch("assigned polynomials must share the target ring")
                images.append(v)
            else:
                images.append(GradedPolynomial.constant(target, v))
        cache: dict = {}

        def power(i, p):
            key = (i, p)
            if key not in cache:
                cache[key] = images[i] if p == 1 else power(i, p - 1) * images[i]
            return cache[key]

        result = {}
        one = GradedPolynomial.one(target)
        for e, c in self.terms.items():
            t = one
            for i, p in enumerate(e):
                if p:
                    t = t * power(i, p)
            for te, tv in t.terms.items():
                s = result.get(te, 0) + tv * c
                if s:
                    result[te] = s
                else:
                    result.pop(te, None)
        return GradedPolynomial(target, {e: _norm(v) for e, v in result.items()}, _trusted=True)

    def divide_linear(self, i: int, j: int) -> "GradedPolynomial":
        """Exact quotient by (x_i - x_j); raises if not divisible."""
        out: dict = {}
        work = dict(self.terms)
        while work:
            top = max(e[i] for e in work)
            if top == 0:
                raise ArithmeticError("polynomial not divisible by linear factor")
            batch = [(ee, vv) for ee, vv in work.items() if ee[i] == top]
            for ee, vv in batch:
                del work[ee]
                q = list(ee)
                q[i] -= 1
                q = tuple(q)
                out[q] = out.get(q, 0) + vv
                # subtract vv*q*(x_i - x_j): removes ee, adds +vv*q*x_j
                r = list(q)
                r[j] += 1
                r = tuple(r)
                s = work.get(r, 0) + vv
                if s:
                    work[r] = s
                else:
                    work.pop(r, None)
        return GradedPolynomial(self.varset, {e: _norm(v) for e, v in out.items() if v}, _trusted=True)

    # display / serialization
    def __repr__(self):
        return f"GradedPolynomial({self})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.varset.names
        parts = []
        for e, v in self.sorted_terms():
            mono = "*".join(
                (names[i] if p == 1 else f"{names[i]}^{p}") for i, p in enumerate(e) if p
            )
            neg = v < 0
            a = -v if neg else v
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def to_json(self) -> dict:
        vs = self.varset
        n, k = vs.n_chern, vs.k_scale
        out = {"vars": {"n": n, "k": k}, "terms": []}
        if vs.aux:
            out["vars"]["aux"] = list(vs.aux)
        for e, v in self.sorted_terms():
            t = {"c": list(e[:n]), "d": list(e[n:n + k])}
            if vs.aux:
                t["aux"] = list(e[n + k:])
            t["coeff"] = str(v)
            out["terms"].append(t)
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "GradedPolynomial":
        v = obj["vars"]
        vs = VariableSet(int(v["n"]), int(v["k"]), tuple(v.get("aux", ())))
        terms = {}
        for t in obj["terms"]:
            e = tuple(t["c"]) + tuple(t["d"]) + tuple(t.get("aux", ()))
            terms[e] = terms.get(e, 0) + _norm(Fraction(t["coeff"]))
        return cls(vs, terms)


def ring(n: int, k: int, aux: Iterable[str] = ()):
    """Convenience: variable set plus generator polynomials (c's, d's, aux)."""
    vs = VariableSet(n, k, tuple(aux))
    g = [GradedPolynomial.var(vs, name) for name in vs.names]
    return vs, g[:n], g[n:n + k], g[n + k:]


def series_quotient(numerator: Sequence[GradedPolynomial], denominator: Sequence[GradedPolynomial],
                    order: int) -> list:
    """Coefficients of t^0..t^order of numerator(t)/denominator(t).

    Both series are given by their coefficient lists; the denominator must
    have constant term exactly 1.
    """
    if not denominator:
        raise ValueError("empty denominator")
    vs = denominator[0].varset if isinstance(denominator[0], GradedPolynomial) else numerator[0].varset
    den = [d if isinstance(d, GradedPolynomial) else GradedPolynomial.constant(vs, d) for d in denominator]
    num = [a if isinstance(a, GradedPolynomial) else GradedPolynomial.constant(vs, a) for a in numerator]
    if den[0] != 1:
        raise ValueError("denominator constant term must be 1")
    zero = GradedPolynomial.zero(vs)
    q = []
    for m in range(order + 1):
        acc = num[m] if m < len(num) else zero
        for i in range(1, min(m, len(den) - 1) + 1):
            if den[i]:
                acc = acc - den[i] * q[m - i]
        q.append(acc)
    return q
