"""Block test configurations and the torus restriction maps used to
interpolate equivariant classes."""

from __future__ import annotations

from dataclasses import dataclass

from .polyring import GradedPolynomial, VariableMismatch, VariableSet
from .symfunc import elementary

RANK = "rank"
ASSERTED = "asserted"


@dataclass(frozen=True)
class TestConfiguration:
    """Columns placed on coordinate axes 1..m or set to zero.

    ``axes[j]`` is the axis (1-based) of column j, or 0 for a zero column.
    Axes are numbered by first appearance, so equal labellings compare equal."""

    __test__ = False  # not a pytest class

    axes: tuple
    justification: str = RANK
    reason: str = ""

    def __post_init__(self):
        relabel = {}
        out = []
        for a in self.axes:
            if a in (0, "0", None):
                out.append(0)
                continue
            if a not in relabel:
                relabel[a] = len(relabel) + 1
            out.append(relabel[a])
        object.__setattr__(self, "axes", tuple(out))
        if self.justification not in (RANK, ASSERTED):
            raise ValueError(f"unknown justification {self.justification!r}")

    @property
    def k(self) -> int:
        return len(self.axes)

    @property
    def m(self) -> int:
        return max(self.axes, default=0)

    @classmethod
    def from_blocks(cls, blocks: str, k: int, **kw) -> "TestConfiguration":
        """Parse block notation such as "1|2|6" or "124|356" (1-based
        columns; unlisted columns are zero).  Columns above 9 are written
        with commas: "1,10|2,3"."""
        axes = [0] * k
        for a, block in enumerate(blocks.split("|"), start=1):
            cols = block.split(",") if ("," in block or k > 9) else list(block)
            for c in cols:
                j = int(c)
                if not 1 <= j <= k or axes[j - 1]:
                    raise ValueError(f"bad block specification {blocks!r}")
                axes[j - 1] = a
        return cls(tuple(axes), **kw)

    def blocks(self) -> str:
        groups = [[j + 1 for j, a in enumerate(self.axes) if a == ax] for ax in range(1, self.m + 1)]
        sep = "," if self.k > 9 else ""
        return "|".join(sep.join(str(c) for c in g) for g in groups)

    @classmethod
    def from_json(cls, obj, k: int | None = None) -> "TestConfiguration":
        """Accepts {"assign": [...]} or, given k, {"blocks": "124|356"}."""
        just = obj.get("justification", RANK)
        if "blocks" in obj:
            if k is None:
                raise ValueError("block notation needs the number of columns")
            return cls.from_blocks(obj["blocks"], k, justification=just, reason=obj.get("reason", ""))
        return cls(tuple(obj["assign"]), just, obj.get("reason", ""))

    def to_json(self) -> dict:
        labels = [chr(ord("A") + a - 1) if a else "0" for a in self.axes]
        out = {"assign": labels, "justification": self.justification}
        if self.reason:
            out["reason"] = self.reason
        return out

    def block_masks(self) -> list:
        return [sum(1 << j for j, a in enumerate(self.axes) if a == ax) for ax in range(1, self.m + 1)]


def is_rank_excluded(D: TestConfiguration, C) -> bool:
    """True when some column set V sees more distinct directions in D than
    r_C(V); such a D lies outside the closure of the configuration space."""
    return rank_violation(D, C) is not None


def rank_violation(D: TestConfiguration, C):
    """A witness column tuple (0-based) for a rank exclusion, or None.

    Only sets with one column per used axis need checking: dropping repeated
    directions keeps the count and can only lower r_C."""
    if D.k != C.k:
        raise ValueError("test configuration and configuration differ in k")
    members = [[j for j, a in enumerate(D.axes) if a == ax] for ax in range(1, D.m + 1)]

    def rec(ax, mask, count):
        if count > C.rank(mask):
            return mask
        if ax == len(members):
            return None
        hit = rec(ax + 1, mask, count)
        if hit is not None:
            return hit
        for j in members[ax]:
            hit = rec(ax + 1, mask | 1 << j, count + 1)
            if hit is not None:
                return hit
        return None

    hit = rec(0, 0, 0)
    if hit is None:
        return None
    return tuple(j for j in range(C.k) if hit >> j & 1)


@dataclass(frozen=True)
class RestrictionMap:
    """c_i -> e_i(t_1..t_n); d_j -> t_axis(j), or z_j for zero columns."""

    test: TestConfiguration
    n: int

    def __post_init__(self):
        if self.test.m > self.n:
            raise ValueError(f"test configuration uses {self.test.m} directions in dimension {self.n}")

    @property
    def source(self) -> VariableSet:
        return VariableSet(self.n, self.test.k)

    @property
    def target(self) -> VariableSet:
        names = [f"t{i}" for i in range(1, self.n + 1)]
        names += [f"z{j + 1}" for j, a in enumerate(self.test.axes) if a == 0]
        return VariableSet.of(names)

    def images(self) -> dict:
        tgt = self.target
        ts = [GradedPolynomial.var(tgt, f"t{i}") for i in range(1, self.n + 1)]
        names = [f"t{i}" for i in range(1, self.n + 1)]
        out = {f"c{i}": elementary(names, i, tgt) for i in range(1, self.n + 1)}
        for j, a in enumerate(self.test.axes):
            name = f"d{j + 1}"
            out[name] = ts[a - 1] if a else GradedPolynomial.var(tgt, f"z{j + 1}")
        return out


def restriction_map(D: TestConfiguration, n: int, k: int | None = None) -> RestrictionMap:
    if k is not None and D.k != k:
        raise ValueError("test configuration has the wrong number of columns")
    return RestrictionMap(D, n)


def apply(phi: RestrictionMap, p: GradedPolynomial) -> GradedPolynomial:
    vs = p.varset
    if vs.n_chern != phi.n or vs.k_scale != phi.test.k or vs.aux:
        raise VariableMismatch(f"polynomial ring ({vs.n_chern}, {vs.k_scale}) does not match map")
    tgt = phi.target
    if not p:
        return GradedPolynomial.zero(tgt)
    return p.substitute(phi.images(), tgt)
