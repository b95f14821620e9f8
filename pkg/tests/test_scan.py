import json
import os

import pytest

from evenquad import (CoverageError, ScanReport, census, goldbach_scan,
                      scan_range, theorem_check)


def test_goldbach_worked_ranges(table_2k):
    rep = goldbach_scan(4, 2000, table=table_2k)
    assert rep.goldbach_failures == [4]
    assert rep.min_d == (0, 4)
    assert rep.scanned == 999

    rep6 = goldbach_scan(6, 6, table=table_2k)
    assert rep6.goldbach_failures == []
    assert rep6.min_d == (1, 6)   # the single pair (3, 3)


def test_goldbach_failures_match_direct_check(table_2k):
    from evenquad import prime_pair_weight
    rep = goldbach_scan(4, 2000, table=table_2k)
    direct = [E for E in range(4, 2001, 2)
              if prime_pair_weight(E, table_2k) == 0]
    assert rep.goldbach_failures == direct


def test_census_single_values(table_2k):
    assert census(20, 20, table=table_2k).type_census == {"a<c<b=d": 1}
    assert census(10, 10, table=table_2k).type_census == {"b=c<a<d": 1}


def test_census_counts_sum_to_scanned(table_20k):
    rep = census(4, 10_000, table=table_20k)
    assert rep.scanned == 4999
    assert sum(rep.type_census.values()) == 4999
    assert set(rep.type_census) <= {t.canonical
                                    for t in __import__("evenquad").enumerate_types()}


def test_excluded_hits_still_have_positive_d(table_20k):
    rep = theorem_check(4, 10_000, table=table_20k)
    failures = set(rep.goldbach_failures)
    for E, canon in rep.excluded_hits:
        assert E not in failures, (E, canon)


def test_theorem_check_boundary_and_clean_range(table_20k):
    rep = theorem_check(2526, 2526, table=table_20k)
    assert rep.theorem_violations == []
    rep2 = theorem_check(2526, 10_000, table=table_20k)
    assert rep2.theorem_violations == []
    assert rep2.bound_failures == {}


def test_theorem_check_flags_e4(table_2k):
    # E = 4 realizes a non-excluded type with d = 0: the known exception
    rep = theorem_check(4, 100, table=table_2k)
    assert rep.theorem_violations == [4]


def test_identity_failures_are_exactly_the_strict_halving_cases(table_20k):
    rep = scan_range(4, 10_000, mode="identities", table=table_20k)
    expected = [(E, "halving") for E in range(6, 10_001, 4)
                if table_20k.is_prime(E // 2)]
    assert rep.identity_failures == expected


def test_merge_associativity(table_20k):
    whole = theorem_check(4, 3000, table=table_20k)
    a = theorem_check(4, 1500, table=table_20k)
    b = theorem_check(1502, 3000, table=table_20k)
    assert json.dumps(a.merge(b).to_dict()) == json.dumps(whole.to_dict())
    c = theorem_check(4, 500, table=table_20k)
    d = theorem_check(502, 1500, table=table_20k)
    assert json.dumps(c.merge(d).merge(b).to_dict()) \
        == json.dumps(whole.to_dict())


def test_merge_rejects_gaps(table_2k):
    a = goldbach_scan(4, 100, table=table_2k)
    b = goldbach_scan(104, 200, table=table_2k)
    with pytest.raises(ValueError):
        a.merge(b)


def test_chunk_size_invariance(table_20k):
    base = theorem_check(4, 2000, table=table_20k, chunk_size=1024)
    for size in (1, 7, 100):
        rep = theorem_check(4, 2000, table=table_20k, chunk_size=size)
        assert json.dumps(rep.to_dict()) == json.dumps(base.to_dict())


def test_worker_counts_give_identical_reports(table_20k):
    base = theorem_check(4, 4000, table=table_20k, chunk_size=256)
    for workers in (2, 4):
        rep = theorem_check(4, 4000, limit=20000, chunk_size=256,
                            workers=workers)
        assert rep.to_dict() == base.to_dict()


def test_report_roundtrip(table_2k):
    rep = theorem_check(4, 500, table=table_2k)
    clone = ScanReport.from_dict(json.loads(json.dumps(rep.to_dict())))
    assert clone.to_dict() == rep.to_dict()


def test_checkpoint_resume_equals_fresh(table_20k, tmp_path):
    cp = str(tmp_path / "scan.json")
    partial = scan_range(4, 4000, mode="theorem", table=table_20k,
                         chunk_size=128, checkpoint_path=cp, max_chunks=3)
    assert partial.hi < 4000
    assert os.path.exists(cp)
    saved = json.loads(open(cp).read())
    assert saved["completed_through"] == partial.hi
    assert saved["chunk_size"] == 128

    resumed = scan_range(4, 4000, mode="theorem", table=table_20k,
                         chunk_size=128, checkpoint_path=cp)
    fresh = scan_range(4, 4000, mode="theorem", table=table_20k,
                       chunk_size=128)
    assert json.dumps(resumed.to_dict()) == json.dumps(fresh.to_dict())

    # a completed checkpoint resumes to the same report without rescanning
    again = scan_range(4, 4000, mode="theorem", table=table_20k,
                       chunk_size=128, checkpoint_path=cp)
    assert json.dumps(again.to_dict()) == json.dumps(fresh.to_dict())


def test_checkpoint_mismatch_rejected(table_2k, tmp_path):
    cp = str(tmp_path / "scan.json")
    scan_range(4, 400, mode="census", table=table_2k, chunk_size=32,
               checkpoint_path=cp, max_chunks=2)
    with pytest.raises(ValueError):
        scan_range(4, 400, mode="census", table=table_2k, chunk_size=64,
                   checkpoint_path=cp)


def test_scan_validation(table_2k):
    with pytest.raises(ValueError):
        goldbach_scan(2, 100, table=table_2k)
    with pytest.raises(ValueError):
        scan_range(5, 100, mode="census", table=table_2k)
    with pytest.raises(ValueError):
        scan_range(4, 100, mode="bogus", table=table_2k)
    with pytest.raises(CoverageError):
        goldbach_scan(4, 4000, table=table_2k)
