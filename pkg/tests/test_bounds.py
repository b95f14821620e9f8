import math

import pytest

from evenquad import (ALT_UPPER_C, BracketError, DEFAULT_UPPER_C, PrimeTable,
                      bound_value, check_bounds, check_dusart, decompose,
                      dusart_scan, find_root)
from evenquad.bounds import FAILS, HOLDS, MARGINAL, NOT_APPLICABLE

from oracles import tdiv_prime

# Violations of pi(x) <= 1.2251 * x / ln x, frozen from the
# trial-division oracle (re-derived in test_known_violations below).
ALT_C_VIOLATIONS = [19, 23, 47, 73, 109, 110, 111, 113, 114, 115, 116]


def test_bound_value_basics():
    assert bound_value("dusart_lower", math.e) == pytest.approx(math.e)
    assert bound_value("dusart_upper", 113, ALT_UPPER_C) \
        == pytest.approx(29.2839, abs=1e-3)
    # the claimed root location is nearly a zero of f_35
    assert abs(bound_value("f_35", 130.4574578)) < 0.05


def test_bound_value_domains():
    with pytest.raises(ValueError):
        bound_value("dusart_lower", 1.0)
    with pytest.raises(ValueError):
        bound_value("eq36_lo", 4.0)   # ln(x/2 - 1) denominator
    with pytest.raises(ValueError):
        bound_value("eq37_lo", 2.0)   # ln(x/2) denominator
    with pytest.raises(ValueError):
        bound_value("nope", 10.0)


def test_check_dusart_worked_examples(table_2k):
    assert check_dusart(17, table_2k) == (True, True)
    assert check_dusart(2, table_2k) == (None, True)
    assert check_dusart(113, table_2k, ALT_UPPER_C) == (True, False)
    with pytest.raises(ValueError):
        check_dusart(1, table_2k)


def test_known_violations_from_oracle(table_2k):
    oracle = []
    count = 0
    for x in range(2, 2001):
        if tdiv_prime(x):
            count += 1
        if count > ALT_UPPER_C * x / math.log(x):
            oracle.append(x)
    assert oracle == ALT_C_VIOLATIONS
    rep = dusart_scan(table_2k, 2, 2000, c=ALT_UPPER_C)
    assert rep.upper_violations == oracle
    assert rep.first_upper_violation == 19
    assert 113 in rep.upper_violations


def test_dusart_scan_default_constant_clean(table_20k):
    rep = dusart_scan(table_20k, 2, 20000)
    assert rep.lower_violations == []
    assert rep.upper_violations == []
    assert rep.marginal == {"dusart_lower": 0, "dusart_upper": 0}
    assert rep.checked == 19999


def test_dusart_scan_segments_do_not_change_results(table_20k):
    a = dusart_scan(table_20k, 2, 20000, c=ALT_UPPER_C, segment=977)
    b = dusart_scan(table_20k, 2, 20000, c=ALT_UPPER_C)
    assert a.upper_violations == b.upper_violations == ALT_C_VIOLATIONS


def test_check_bounds_all_hold_at_ten_thousand(table_20k):
    rep = check_bounds(decompose(10_000, table_20k))
    states = {k: v.state for k, v in rep.checks.items()}
    assert all(s == HOLDS for s in states.values()), states
    assert rep.checks["eq35_5"].value < 0  # d < a


def test_check_bounds_applicability_gates(table_2k):
    rep20 = check_bounds(decompose(20, table_2k))
    assert rep20.checks["eq33"].state == HOLDS
    assert rep20.checks["eq34"].state == HOLDS
    assert rep20.checks["eq35"].state == HOLDS
    for name in ("eq35_5", "eq36", "eq37", "eq38", "eq39", "eq235", "eq24"):
        assert rep20.checks[name].state == NOT_APPLICABLE, name

    rep16 = check_bounds(decompose(16, table_2k))
    for name in ("eq33", "eq34", "eq35"):
        assert rep16.checks[name].state == NOT_APPLICABLE

    rep132 = check_bounds(decompose(132, table_2k))
    assert rep132.checks["eq35_5"].state == HOLDS
    rep130 = check_bounds(decompose(130, table_2k))
    assert rep130.checks["eq35_5"].state == NOT_APPLICABLE


def test_d_below_a_from_132_up(table_20k):
    for E in range(132, 20001, 2):
        dec = decompose(E, table_20k)
        assert dec.d < dec.a, E


def test_teeter_implies_derived_difference_bounds(table_20k):
    for E in range(18, 20001, 2):
        rep = check_bounds(decompose(E, table_20k))
        if (rep.checks["eq33"].state == HOLDS
                and rep.checks["eq34"].state == HOLDS):
            assert rep.checks["eq35"].state == HOLDS, E


def test_wing_bounds_hold_from_36(table_20k):
    for E in range(36, 20001, 2):
        rep = check_bounds(decompose(E, table_20k))
        for name in ("eq36", "eq37", "eq38", "eq39"):
            assert rep.checks[name].state == HOLDS, (E, name)


def test_guard_band_marks_marginal(table_2k):
    rep = check_bounds(decompose(1000, table_2k), band=1e9)
    assert rep.checks["eq33"].state == MARGINAL
    # exact integer comparisons ignore the band entirely
    assert rep.checks["eq35_5"].state in (HOLDS, FAILS, NOT_APPLICABLE)


def test_find_root_f35():
    root = find_root("f_35", 100, 200, 1e-9)
    assert abs(root - 130.4574578) < 0.5
    assert abs(bound_value("f_35", root)) < 1e-6


def test_find_root_deterministic_and_midpoint_friendly():
    r1 = find_root("f_35", 100, 200, 1e-9)
    assert find_root("f_35", 100, 200, 1e-9) == r1
    r2 = find_root("f_35", r1 - 4, r1 + 4, 1e-9)
    assert abs(r2 - r1) <= 2e-9


def test_find_root_threshold_235():
    root = find_root("threshold_235", 100, 1e6, 1e-6)
    assert 20269 < root < 20271  # nowhere near the 2322.61 reference


def test_find_root_threshold_24_has_no_bracket():
    with pytest.raises(BracketError):
        find_root("threshold_24", 100, 1e6)


def test_find_root_invalid_arguments():
    with pytest.raises(ValueError):
        find_root("eq33_lo", 10, 20)
    with pytest.raises(ValueError):
        find_root("f_35", 100, 200, tol=0)
    with pytest.raises(ValueError):
        find_root("f_35", 200, 100)


def test_dusart_scan_coverage(table_2k):
    from evenquad import CoverageError
    with pytest.raises(CoverageError):
        dusart_scan(table_2k, 2, 4000)
    with pytest.raises(ValueError):
        dusart_scan(table_2k, 1, 100)
