import json
from math import factorial

import pytest

from parabolic_r import verify
from parabolic_r.closed_form import NonPolynomialError, satisfies_increasing
from parabolic_r.polynomial import ONE
from parabolic_r.quotient import ParabolicInterval, GeneratorSubset, all_intervals, enumerate_quotient
from parabolic_r.verify import (
    MAX_LISTED_MISMATCHES,
    conjecture_scan,
    sample_pairs,
    verify_branch_overlap,
    verify_descent_independence,
    verify_duality,
    verify_family,
)
from oracles import oracle_leq

REPORT_KEYS = {
    "suite", "n", "family", "interval", "J", "pairs_checked", "skipped",
    "skip_reasons", "mismatches", "mismatch_total", "elapsed_seconds",
    "sample", "jobs", "pass",
}


def oracle_comparable(n, J, v_filter=None):
    q = enumerate_quotient(n, J)
    return sum(
        1 for v in q for u in q
        if oracle_leq(u.entries, v.entries) and (v_filter is None or v_filter(v))
    )


def test_s3_examples():
    r = verify_family(3, "single", i=1)
    assert r.passed and r.pairs_checked == 6 and r.skipped == 0
    r = verify_duality(3, GeneratorSubset(3, {2}))
    assert r.passed and r.pairs_checked == 6
    r = verify_descent_independence(3, GeneratorSubset.empty(3))
    assert r.passed and r.pairs_checked == 19


@pytest.mark.parametrize("n", [4, 5])
def test_counts_match_oracle(n):
    for iv in all_intervals(n):
        J = iv.generators()
        assert verify_duality(n, iv).pairs_checked == oracle_comparable(n, J)
        r = verify_family(n, "conjecture", k=iv.k, i=iv.i)
        assert r.pairs_checked == oracle_comparable(n, J, lambda v: satisfies_increasing(v, iv))
        assert r.pairs_enumerated == oracle_comparable(n, J)


def test_report_schema_and_json():
    r = verify_family(4, "double")
    d = json.loads(r.to_json())
    assert set(d) == REPORT_KEYS
    assert d["pass"] is True and d["mismatches"] == []
    assert r.summary().startswith("PASS family/double n=4")


def test_jobs_do_not_change_results():
    a = verify_duality(5, jobs=1).to_dict()
    b = verify_duality(5, jobs=2).to_dict()
    for d in (a, b):
        d.pop("elapsed_seconds")
        d.pop("jobs")
    assert a == b


def test_pair_filter():
    pairs = [("416273859", "671489253"), ("671489253", "416273859")]
    r = verify_family(9, "triple", i=5, pairs=pairs)
    assert r.passed
    assert r.pairs_checked == 1
    assert r.skip_reasons == {"u not <= v": 1}


def test_overlap_counts():
    r = verify_branch_overlap(4)
    assert r.passed
    assert r.pairs_checked + r.skipped == sum(
        oracle_comparable(4, ParabolicInterval(4, i - 1, i).generators()) for i in (2, 3))
    with pytest.raises(ValueError):
        verify_branch_overlap(4, i=1)


def test_bad_arguments():
    with pytest.raises(ValueError):
        verify_family(4, "quadruple")
    with pytest.raises(ValueError):
        verify_family(4, "conjecture", i=3)
    with pytest.raises(ValueError):
        conjecture_scan(1)


def test_max_quotient_drops_large_quotients():
    sizes = {i: factorial(6) // (factorial(i - 2) * factorial(6 - i)) for i in range(3, 6)}
    assert sorted(i for i, size in sizes.items() if size <= 150) == [3, 5]
    r = verify_family(6, "triple", max_quotient=150)
    kept = [verify_family(6, "triple", i=i) for i in (3, 5)]
    assert r.pairs_checked == sum(k.pairs_checked for k in kept)
    assert r.skipped == sum(k.skipped for k in kept)


def test_mismatches_are_reported_and_truncated(monkeypatch):
    monkeypatch.setattr(verify, "_closed_value", lambda *a: ONE)
    r = conjecture_scan(5)
    assert not r.passed
    assert r.mismatch_total > MAX_LISTED_MISMATCHES
    assert len(r.mismatches) == MAX_LISTED_MISMATCHES
    assert r.to_dict()["pass"] is False
    assert r.summary().startswith("FAIL")
    keys = [m.sort_key() for m in r.mismatches]
    assert keys == sorted(keys)


def test_closed_form_errors_become_mismatches(monkeypatch):
    def boom(*a):
        raise NonPolynomialError("negative exponent")
    monkeypatch.setattr(verify, "_closed_value", boom)
    r = verify_family(4, "single", i=2)
    assert r.mismatch_total == r.pairs_checked
    assert r.mismatches[0].actual is None
    assert "negative exponent" in r.mismatches[0].note


def test_sampling_is_deterministic():
    a = sample_pairs(6, 7, 500)
    b = sample_pairs(6, 7, 500)
    assert a == b
    assert sum(len(p) for _, p in a) == 500
    assert sample_pairs(6, 8, 500) != a
    for iv, pairs in a:
        assert len(set(pairs)) == len(pairs)
        for ue, ve in pairs:
            assert oracle_leq(ue, ve)


def test_sampling_caps_at_population():
    total = sum(len(p) for _, p in sample_pairs(4, 0, 10**6))
    exhaustive = conjecture_scan(4)
    assert total == exhaustive.pairs_checked


def test_allocate():
    assert verify._allocate(10, [2, 100, 100]) == [2, 4, 4]
    assert verify._allocate(10, [1, 1]) == [1, 1]
    assert verify._allocate(0, [5]) == [0]


def test_sampled_scan_report():
    r = conjecture_scan(6, sample=(3, 300))
    assert r.passed
    assert r.sample == {"seed": 3, "count": 300, "drawn": 300}
    assert r.pairs_checked == 300
