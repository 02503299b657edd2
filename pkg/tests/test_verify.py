from __future__ import annotations

import pytest

from segalbar import verify as V
from segalbar.finset_model import cyclic_group, enumerate_monoids


def test_cap_size(monkeypatch):
    monkeypatch.delenv("SEGALBAR_MAX_SIZE", raising=False)
    assert V.cap_size(4) == 4
    assert V.cap_size(99) == V.MAX_SIZE_LIMIT
    assert V.cap_size(0) == 1
    monkeypatch.setenv("SEGALBAR_MAX_SIZE", "2")
    assert V.cap_size(4) == 2


def test_run_check_reports_failures_and_crashes():
    ok = V.run_check("ok", lambda: "fine")
    assert ok.passed and ok.detail == "fine" and ok.line().startswith("[PASS] ok (")

    def fails():
        V._require(False, "witness here")

    bad = V.run_check("bad", fails)
    assert not bad.passed and bad.detail == "witness here"
    crash = V.run_check("crash", lambda: 1 / 0)
    assert not crash.passed and crash.detail.startswith("ZeroDivisionError")


def test_classical_bar_images():
    from segalbar.simplex_cats import Gen

    Z3 = cyclic_group(3)
    assert V.classical_bar_images(Z3, Gen("d", 1, 2), (1, 2)) == (0,)
    assert V.classical_bar_images(Z3, Gen("d", 0, 2), (1, 2)) == (2,)
    assert V.classical_bar_images(Z3, Gen("s", 1, 2), (1, 2)) == (1, 0, 2)


def test_single_entry_mutations_enumerated():
    from segalbar.bar_segal import nerve

    X = nerve(cyclic_group(2), 2)
    muts = list(V.single_entry_mutations(X))
    expected = sum(X.size(g.level) * (X.size(g.target_level) - 1) for g in V.generators(2))
    assert len(muts) == expected


def test_mutation_check_detects_a_false_pass(monkeypatch):
    # with both detectors disabled every mutation would slip through
    monkeypatch.setattr(V, "simplicial_identities_check", lambda X, limit=None: [])
    monkeypatch.setattr(V, "verify_bar_equality", lambda X, M: type("R", (), {"equal": True})())
    result = V.run_check("m", lambda: V.check_mutations(enumerate_monoids(2)[1], 2, 5))
    assert not result.passed and "passed both checks" in result.detail


def test_full_suite_small():
    results = V.full_suite(2)
    assert results and all(r.passed for r in results)
    assert len({r.name for r in results}) == len(results)


@pytest.mark.parametrize("kind", ["total", "partial"])
def test_interchange_counts(kind):
    detail = V.check_interchange(kind, 2)
    assert detail.endswith("quadruples")
