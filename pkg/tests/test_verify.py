"""Cross-validation harness tests."""

import pytest

from catpurify import verify


def test_full_suite_is_green():
    results = verify.run_suite(draws=200, amp_draws=50)
    assert len(results) == 6
    for res in results:
        assert res.passed, res.describe()
        assert res.max_error <= res.tolerance


def test_check_names_and_tolerances():
    results = verify.run_suite(draws=5, amp_draws=3)
    by_name = {res.name: res for res in results}
    assert set(by_name) == {
        "loss fraction",
        "homodyne densities",
        "purified fraction",
        "inefficient-detector fraction",
        "purity",
        "amplifier coincidence fraction",
    }
    for name, res in by_name.items():
        expected_tol = 1e-9 if name == "amplifier coincidence fraction" else 1e-10
        assert res.tolerance == expected_tol
    assert by_name["loss fraction"].draws == 5
    assert by_name["amplifier coincidence fraction"].draws == 3


def test_describe_format():
    res = verify.CheckResult("loss fraction", 5, 1e-12, 1e-10)
    line = res.describe()
    assert line.startswith("ok  ")
    assert "loss fraction" in line and "5 draws" in line
    bad = verify.CheckResult("loss fraction", 5, 1e-3, 1e-10)
    assert bad.describe().startswith("FAIL")


def test_seed_determinism():
    a = verify.run_suite(draws=10, amp_draws=4, seed=7)
    b = verify.run_suite(draws=10, amp_draws=4, seed=7)
    assert [(r.name, r.max_error) for r in a] == [(r.name, r.max_error) for r in b]
    c = verify.run_suite(draws=10, amp_draws=4, seed=8)
    assert [r.max_error for r in a] != [r.max_error for r in c]


def test_rejects_empty_suite():
    with pytest.raises(ValueError):
        verify.run_suite(draws=0)
    with pytest.raises(ValueError):
        verify.run_suite(draws=10, amp_draws=0)
