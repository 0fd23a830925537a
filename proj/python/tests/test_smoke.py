import json
import os
from pathlib import Path

import pytest

import bowtie

FIXTURES = Path(os.environ.get("BOWTIE_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def test_zn_spectrum():
    z6 = bowtie.zn(6)
    assert z6.size == 6
    primes = z6.spec()
    assert sorted(p["label"] for p in primes) == ["(2)", "(3)"]
    assert all(p["maximal"] for p in primes)
    assert z6.is_pm()
    assert z6.ideal([2]) == [0, 2, 4]


def test_ring_constructions():
    assert bowtie.product(bowtie.zn(2), bowtie.zn(3)).isomorphic(bowtie.zn(6))
    assert bowtie.quotient(bowtie.zn(6), [3]).isomorphic(bowtie.zn(3))
    t = bowtie.trivext(bowtie.zn(2))
    assert t.size == 4
    assert len(t.spec()) == 1
    assert bowtie.zn(4).nilradical() == [0, 2]


def test_duplication_classification():
    a = bowtie.duplicate(bowtie.zn(6), [2])
    assert a.size == 18
    rows = a.classify()
    assert sorted(r["label"] for r in rows) == ["T1:(2)", "T1:(3)", "T2:(3)"]
    assert all(r["maximal"] for r in rows)
    (count,) = a.dag_counts()
    assert (count["term_max_S"], count["term_max_R"], count["total"]) == (1, 0, 1)
    assert a.is_pm()


def test_amalgam_reports_pass():
    a = bowtie.amalgamate(bowtie.zn(12), bowtie.zn(4), j=[2])
    reports = a.verify()
    assert reports
    assert all(r["verdict"] == "pass" for r in reports)
    flagged = {r["id"] for r in reports if r["finite_scale_trivial"]}
    assert {"cp-transfer", "pz-transfer"} <= flagged
    assert "digraph" in a.hasse_dot()


def test_shared_prime_fixture():
    doc = json.loads((FIXTURES / "not_pm_shared_prime.json").read_text())
    assert not bowtie.spectrum_data_is_pm(doc)
    rep = bowtie.check_spectrum_data(doc)
    assert rep["verdict"] == "pass"


def test_fuzz_is_deterministic():
    a = bowtie.fuzz_spectrum_data(0, 3, 4)
    b = bowtie.fuzz_spectrum_data(0, 3, 4)
    assert a == b
    assert bowtie.verify_fuzz(7, 500)["verdict"] == "pass"


def test_json_round_trip():
    ring = bowtie.ring_from_json({"kind": "ring", "zn": 5})
    again = bowtie.ring_from_json(ring.to_json())
    assert again.to_json() == ring.to_json()
    a = bowtie.amalgam_from_json(json.loads((FIXTURES / "z6_duplication_2.json").read_text()))
    assert a.size == 18


def test_errors_map_to_exceptions():
    with pytest.raises(bowtie.InputError):
        bowtie.zn(1)
    with pytest.raises(bowtie.PreconditionError):
        bowtie.duplicate(bowtie.zn(2), [0])
    with pytest.raises(ValueError):
        bowtie.ring_from_json({"kind": "ring", "size": 2, "zero": 0, "one": 0, "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 0]]})
    with pytest.raises(bowtie.CapExceeded):
        bowtie.duplicate(bowtie.zn(12), [2]).classify(cap=5)


def test_small_corpus():
    corpus = json.loads((FIXTURES / "small_corpus.json").read_text())
    corpus["fuzz_count"] = 100
    report = bowtie.verify_corpus(corpus)
    assert report["summary"]["verdict"] == "pass"
    assert report["summary"]["exit_code"] == 0
