"""Bundled configurations, their expected classes, and the audit suite run
by ``verify``."""

from __future__ import annotations

import gzip
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import invariants
from .matroid import Configuration
from .polyring import GradedPolynomial
from .restriction import TestConfiguration
from .solver import KnownCount, generate_tests, kernel_rows, monomial_basis, test_orbit_representatives
from .symfunc import schur_expand, schur_from_json, width

CLASS_SUFFIX = ".json.gz"


def config_dir():
    return resources.files("matvar") / "configs"


def bundled_names() -> list:
    names = []
    for item in config_dir().iterdir():
        if item.name.endswith(".json"):
            obj = json.loads(item.read_text())
            if "columns" in obj:
                names.append(item.name[:-5])
    return sorted(names)


@dataclass
class CorpusEntry:
    config: Configuration
    raw: dict
    tests: list = field(default_factory=list)
    known: list = field(default_factory=list)
    source: str = ""

    @property
    def name(self) -> str:
        return self.config.name

    @property
    def symmetry(self) -> bool:
        return bool(self.raw.get("solve", {}).get("symmetry", False))

    @property
    def expected(self) -> dict:
        return self.raw.get("expected", {})

    @property
    def construction(self):
        return self.raw.get("construction")

    @classmethod
    def from_json(cls, obj: dict, source: str = "") -> "CorpusEntry":
        config = Configuration.from_json(obj)
        tests = [TestConfiguration.from_json(t, config.k) for t in obj.get("tests", [])]
        known = [KnownCount.from_json(k) for k in obj.get("known", [])]
        return cls(config, obj, tests, known, source)


def read_json(path_or_name: str) -> tuple:
    """Load JSON from a path; a bare bundled name (or configs/NAME.json that
    does not exist locally) falls back to the packaged corpus."""
    path = Path(path_or_name)
    if path.exists():
        return json.loads(path.read_text()), str(path)
    stem = path.name[:-5] if path.name.endswith(".json") else path.name
    item = config_dir() / f"{stem}.json"
    if item.is_file():
        return json.loads(item.read_text()), f"bundled:{stem}"
    raise FileNotFoundError(path_or_name)


def load_entry(path_or_name: str) -> CorpusEntry:
    obj, source = read_json(path_or_name)
    return CorpusEntry.from_json(obj, source)


def load_class(path) -> GradedPolynomial:
    path = Path(path)
    raw = gzip.decompress(path.read_bytes()) if path.name.endswith(".gz") else path.read_bytes()
    obj = json.loads(raw)
    return GradedPolynomial.from_json(obj.get("class", obj) if "terms" not in obj else obj)


def bundled_class(entry: CorpusEntry) -> GradedPolynomial | None:
    """The shipped class for a bundled configuration, if the entry's columns
    match the packaged ones."""
    item = config_dir() / "classes" / f"{entry.name}{CLASS_SUFFIX}"
    if not item.is_file():
        return None
    try:
        packaged, _ = read_json(entry.name)
    except FileNotFoundError:
        return None
    if Configuration.from_json(packaged).to_json() != entry.config.to_json():
        return None
    return GradedPolynomial.from_json(json.loads(gzip.decompress(item.read_bytes())))


def dump_class(p: GradedPolynomial, path) -> None:
    text = json.dumps(p.to_json(), sort_keys=True, separators=(",", ":"))
    Path(path).write_bytes(gzip.compress(text.encode(), mtime=0))


# ------------------------------------------------------------------ audits

def _check(ok, **detail) -> dict:
    return {"ok": bool(ok), **detail}


def kernel_residuals(cls: GradedPolynomial, tests) -> dict:
    """{blocks: number of nonzero restriction coefficients} per test."""
    vs = cls.varset
    basis = monomial_basis(vs.n_chern, vs.k_scale, cls.degree())
    vec = np.array(basis.from_polynomial(cls), dtype=object)
    small = all(abs(int(x)) < 2 ** 40 for x in vec)
    out = {}
    for D in tests:
        mat = kernel_rows(basis, D)
        if small:
            res = mat @ vec.astype(np.int64)
        else:
            res = mat.astype(object) @ vec
        out[D.blocks()] = int(np.count_nonzero(res))
    return out


def audit_class(entry: CorpusEntry, cls: GradedPolynomial, *, kernels: bool = True,
                max_rank_tests: int = 64) -> dict:
    """Run every applicable check; each value is {"ok": bool, ...}."""
    config = entry.config
    codim = config.codimension()
    checks = {}
    vs = cls.varset
    shape_ok = vs.n_chern == config.n and vs.k_scale == config.k
    checks["ring"] = _check(shape_ok, n=vs.n_chern, k=vs.k_scale)
    if not shape_ok:
        return checks
    homog = cls.is_homogeneous(codim) and bool(cls)
    checks["homogeneous"] = _check(homog, codim=codim)
    a, b = invariants.degree_substitutions(cls)
    checks["degree_agreement"] = _check(a == b, chern_substitution=str(a), scale_substitution=str(b))
    expansion = invariants.schur_d_expand(cls)
    negatives = invariants.schur_d_negatives(expansion)
    checks["schur_nonnegative"] = _check(not negatives, terms=len(expansion), negatives=negatives[:10])
    pc = invariants.pure_c(cls)
    w = width(pc) if pc else 0
    bound = config.k - config.spanning_rank()
    checks["width"] = _check(w <= bound, width=w, bound=bound)
    fz = invariants.forced_zero_audit(cls, config) if homog else {"violations": ["not homogeneous"], "unexplained_zeros": []}
    checks["forced_zeros"] = _check(not fz["violations"], violations=fz["violations"][:10],
                                    unexplained_zeros=len(fz["unexplained_zeros"]))
    counts = invariants.pure_d_counts(cls)
    bad_counts = [list(q) for q, v in counts.items() if not (isinstance(v, int) and v >= 0)]
    checks["counts_nonnegative"] = _check(not bad_counts, offending=bad_counts[:10])
    for kc in entry.known:
        got = counts.get(tuple(kc.q), 0)
        checks[f"known({','.join(map(str, kc.q))})"] = _check(got == kc.count, expected=kc.count, got=str(got))
    if kernels and homog:
        tests = list(entry.tests)
        rank = test_orbit_representatives(generate_tests(config), config.automorphisms())
        tests += rank[:max_rank_tests]
        res = kernel_residuals(cls, tests)
        nonzero = {b: r for b, r in res.items() if r}
        checks["kernel_vanishing"] = _check(not nonzero, tests=len(res), failing=nonzero)
    checks.update(expected_checks(entry, cls))
    return checks


def expected_checks(entry: CorpusEntry, cls: GradedPolynomial) -> dict:
    exp = entry.expected
    checks = {}
    if "terms" in exp:
        checks["expected_terms"] = _check(len(cls) == exp["terms"], expected=exp["terms"], got=len(cls))
    if "degree" in exp:
        a, b = invariants.degree_substitutions(cls)
        checks["expected_degree"] = _check(a == b == exp["degree"], expected=exp["degree"], got=str(a))
    if "pure_c_schur" in exp:
        want = schur_from_json(exp["pure_c_schur"])
        got = schur_expand(invariants.pure_c(cls), entry.config.n)
        checks["expected_pure_c_schur"] = _check(got == want, got={"".join(map(str, k)): str(v) for k, v in got.items()})
    for item in exp.get("gw", []):
        q = tuple(item["q"])
        try:
            got = invariants.gw(cls, q, entry.config.codimension())
        except (ValueError, invariants.AuditFailure) as exc:
            got = str(exc)
        checks[f"expected_gw({','.join(map(str, q))})"] = _check(got == item["value"], expected=item["value"], got=got)
    if "pure_d_range" in exp:
        lo, hi = exp["pure_d_range"]
        values = set(invariants.pure_d_counts(cls).values())
        checks["expected_pure_d_range"] = _check(all(lo <= v <= hi for v in values) and hi in values,
                                                 values=sorted(int(v) for v in values))
    return checks


def all_ok(checks: dict) -> bool:
    return all(c["ok"] for c in checks.values())
