import os
from fractions import Fraction

import pytest
import sympy

from matvar.corpus import bundled_class, load_entry
from matvar.polyring import GradedPolynomial, VariableSet


def poly(text: str, n: int, k: int, aux=()) -> GradedPolynomial:
    """Expand an expression with sympy (an independent route) and convert."""
    vs = VariableSet(n, k, tuple(aux))
    symbols = [sympy.Symbol(name) for name in vs.names]
    expr = sympy.sympify(text, locals={s.name: s for s in symbols})
    expanded = sympy.Poly(sympy.expand(expr), *symbols) if symbols else None
    terms = {}
    if expanded is None:
        value = Fraction(str(sympy.Rational(expr)))
        if value:
            terms[()] = value
    else:
        for e, v in expanded.terms():
            terms[tuple(e)] = Fraction(int(v.p), int(v.q))
    return GradedPolynomial(vs, terms)


def to_sympy(p: GradedPolynomial):
    symbols = [sympy.Symbol(name) for name in p.varset.names]
    out = sympy.Integer(0)
    for e, v in p.terms.items():
        term = sympy.Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else sympy.Integer(v)
        for s, a in zip(symbols, e):
            term *= s ** a
        out += term
    return out


@pytest.fixture(scope="session")
def menelaus():
    return load_entry("menelaus")


@pytest.fixture(scope="session")
def menelaus_class(menelaus):
    cls = bundled_class(menelaus)
    assert cls is not None
    return cls


@pytest.fixture(scope="session")
def steiner():
    return load_entry("steiner")


def long_enabled() -> bool:
    return os.environ.get("MATVAR_LONG", "") not in ("", "0")


# ------------------------------------------------------------- acceptance

CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and not (report.failed or report.skipped)):
        return
    number, title = marker.args
    entry = CRITERIA.setdefault(number, {"title": title, "passed": 0, "failed": 0, "skipped": 0, "seconds": 0.0})
    if report.when == "call":
        entry["seconds"] += report.duration
    if report.failed:
        entry["failed"] += 1
    elif report.skipped:
        entry["skipped"] += 1
    elif report.when == "call":
        entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        e = CRITERIA[number]
        verdict = "FAIL" if e["failed"] else ("PASS" if e["passed"] else "SKIP")
        extra = f", {e['skipped']} skipped" if e["skipped"] else ""
        terminalreporter.write_line(
            f"criterion {number}: {verdict}  {e['title']} ({e['passed']} passed, {e['failed']} failed{extra}; {e['seconds']:.1f} s)")
