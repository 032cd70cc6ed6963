import json

import pytest

from matvar import corpus
from matvar.polyring import GradedPolynomial


def test_bundled_names():
    names = corpus.bundled_names()
    for name in ["menelaus", "ceva", "pappus", "desargues", "steiner", "four_generic_2d"]:
        assert name in names
    assert "menelaus_only_four" not in names


def test_read_json_fallback(tmp_path):
    obj, source = corpus.read_json("configs/menelaus.json")
    assert obj["name"] == "menelaus" and source in ("configs/menelaus.json", "bundled:menelaus")
    with pytest.raises(FileNotFoundError):
        corpus.read_json(str(tmp_path / "nothing.json"))


def test_entry_fields(menelaus):
    assert menelaus.config.k == 6 and len(menelaus.known) == 1
    assert menelaus.tests[0].blocks() == "124|356"
    assert menelaus.tests[0].justification == "asserted"
    assert menelaus.expected["terms"] == 173


def test_menelaus_audit_passes(menelaus, menelaus_class):
    checks = corpus.audit_class(menelaus, menelaus_class)
    assert corpus.all_ok(checks), {k: v for k, v in checks.items() if not v["ok"]}
    for key in ["degree_agreement", "schur_nonnegative", "width", "forced_zeros", "kernel_vanishing",
                "expected_terms", "expected_degree", "expected_pure_c_schur"]:
        assert key in checks


def test_perturbed_class_fails(menelaus, menelaus_class):
    vs = menelaus_class.varset
    bad = menelaus_class + GradedPolynomial(vs, {vs.monomial(c1=1, c3=1): 1})
    checks = corpus.audit_class(menelaus, bad)
    assert not corpus.all_ok(checks)
    assert not checks["kernel_vanishing"]["ok"]


def test_wrong_ring_fails(menelaus):
    from conftest import poly
    checks = corpus.audit_class(menelaus, poly("c1", 2, 6))
    assert not checks["ring"]["ok"]


def test_dump_and_load(tmp_path, menelaus_class):
    path = tmp_path / "m.json.gz"
    corpus.dump_class(menelaus_class, path)
    assert corpus.load_class(path) == menelaus_class
    first = path.read_bytes()
    corpus.dump_class(menelaus_class, path)
    assert path.read_bytes() == first
    plain = tmp_path / "m.json"
    plain.write_text(json.dumps({"class": menelaus_class.to_json()}))
    assert corpus.load_class(plain) == menelaus_class


def test_bundled_class_requires_matching_columns(menelaus):
    obj = dict(menelaus.raw)
    obj["columns"] = [list(c) for c in obj["columns"]]
    obj["columns"][0] = ["2", "0", "0"]
    assert corpus.bundled_class(corpus.CorpusEntry.from_json(obj)) is None


def test_kernel_residuals(menelaus, menelaus_class):
    res = corpus.kernel_residuals(menelaus_class, menelaus.tests)
    assert res == {"124|356": 0}


@pytest.mark.parametrize("name", ["menelaus", "ceva", "steiner", "four_generic_2d", "proportional_blocks_2d"])
def test_bundled_classes_pass_audit(name):
    entry = corpus.load_entry(name)
    cls = corpus.bundled_class(entry)
    checks = corpus.audit_class(entry, cls, max_rank_tests=16)
    assert corpus.all_ok(checks), {k: v for k, v in checks.items() if not v["ok"]}


def test_schur_d_nonnegative_on_all_bundled_classes():
    from matvar import invariants
    checked = 0
    for name in corpus.bundled_names():
        cls = corpus.bundled_class(corpus.load_entry(name))
        if cls is None:
            continue
        assert not invariants.schur_d_negatives(invariants.schur_d_expand(cls)), name
        checked += 1
    assert checked >= 5
