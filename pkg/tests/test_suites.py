"""Random generators, verification suites, and the worked-example catalog."""
import numpy as np
import pytest

from normgeo import (
    InternalInconsistency,
    SuiteReport,
    UndefinedInput,
    apply,
    check_idempotent_ranges,
    check_monotone_transfer,
    check_nilpotent_nonparallel,
    check_orthogonality_split,
    check_parallel_attainment,
    check_strict_convexity_parallelism,
    gen_idempotent_pair,
    gen_nilpotent,
    gen_operator,
    lp,
    reproduce_catalog,
)

ALL_SUITES = [
    check_parallel_attainment,
    check_strict_convexity_parallelism,
    check_nilpotent_nonparallel,
    check_idempotent_ranges,
    check_orthogonality_split,
    check_monotone_transfer,
]


# ---------------------------------------------------------------------------
# generators


def test_gen_operator_deterministic_per_seed():
    sp = lp(3, 2)
    a = gen_operator(41, sp, sp)
    b = gen_operator(41, sp, sp)
    assert np.array_equal(a.matrix, b.matrix)


def test_gen_operator_entry_range_and_shape():
    dom, cod = lp(3, 1), lp(2, "inf")
    T = gen_operator(9, dom, cod, entry_scale=1.0)
    assert T.matrix.shape == (2, 3)
    assert np.abs(T.matrix).max() <= 1.0
    S = gen_operator(9, dom, cod, entry_scale=0.25)
    assert np.abs(S.matrix).max() <= 0.25


def test_gen_operator_seed_collisions():
    sp = lp(2, 2)
    mats = {gen_operator(s, sp, sp).matrix.tobytes() for s in range(100)}
    assert len(mats) == 100


def test_gen_operator_rejects_bad_scale():
    with pytest.raises(UndefinedInput):
        gen_operator(1, lp(2, 2), lp(2, 2), entry_scale=0.0)


def test_gen_nilpotent_exact_power_chain():
    A = gen_nilpotent(5, 3).matrix
    assert np.abs(A @ A).max() > 0
    assert np.array_equal(A @ A @ A, np.zeros((3, 3)))
    B = gen_nilpotent(5, 2).matrix
    assert np.abs(B).max() > 0
    assert np.array_equal(B @ B, np.zeros((2, 2)))


def test_gen_nilpotent_chain_over_many_seeds():
    for s in range(100):
        A = gen_nilpotent(s, 4).matrix
        P = np.eye(4)
        for j in range(1, 4):
            P = P @ A
            assert np.abs(P).max() > 0, (s, j)
        assert np.array_equal(P @ A, np.zeros((4, 4)))
        # superdiagonal stays away from zero: that is what pins the index
        assert all(abs(A[i, i + 1]) >= 0.1 for i in range(3))


def test_gen_nilpotent_rejects_small_n():
    with pytest.raises(UndefinedInput):
        gen_nilpotent(1, 1)


def test_gen_idempotent_pair_exact():
    for s in range(10):
        A, B = gen_idempotent_pair(s, 3)
        for P in (A.matrix, B.matrix):
            assert np.abs(P @ P - P).max() <= 1e-10
            r = int(round(np.trace(P)))
            assert 1 <= r <= 2


def test_gen_idempotent_rejects_small_n():
    with pytest.raises(UndefinedInput):
        gen_idempotent_pair(0, 1)


# ---------------------------------------------------------------------------
# suite mechanics


def test_suite_report_count_invariant():
    with pytest.raises(InternalInconsistency):
        SuiteReport(suite_name="x", trials=5, passes=3, marginal=1, failures=[])


def test_suite_report_serialization():
    rep = SuiteReport(suite_name="x", trials=2, passes=2, marginal=0)
    d = rep.to_dict()
    assert d["suite_name"] == "x"
    assert d["trials"] == 2
    assert set(d) == {
        "suite_name",
        "trials",
        "passes",
        "marginal",
        "failures",
        "seed",
        "elapsed",
    }


@pytest.mark.parametrize("suite", ALL_SUITES, ids=lambda f: f.__name__)
def test_suite_small_run_green(suite):
    rep = suite(trials=5, seed=2019)
    assert rep.trials == 5
    assert rep.failures == []
    assert rep.passes + rep.marginal == 5


@pytest.mark.parametrize("suite", ALL_SUITES, ids=lambda f: f.__name__)
def test_suite_rejects_zero_trials(suite):
    with pytest.raises(UndefinedInput):
        suite(trials=0)


def test_suite_deterministic_given_seed():
    a = check_orthogonality_split(trials=4, seed=77).to_dict()
    b = check_orthogonality_split(trials=4, seed=77).to_dict()
    a.pop("elapsed")
    b.pop("elapsed")
    assert a == b


def test_transfer_suite_deterministic_given_seed():
    a = check_monotone_transfer(trials=6, seed=31).to_dict()
    b = check_monotone_transfer(trials=6, seed=31).to_dict()
    a.pop("elapsed")
    b.pop("elapsed")
    assert a == b


# ---------------------------------------------------------------------------
# reproduction catalog


def test_catalog_filter_single_check():
    out = reproduce_catalog(only="a")
    assert out["ok"]
    assert [c["id"] for c in out["checks"]] == ["a"]


def test_catalog_unknown_id_rejected():
    with pytest.raises(UndefinedInput):
        reproduce_catalog(only="zz")


def test_catalog_nilpotent_chain_check():
    out = reproduce_catalog(only="d")
    assert out["ok"]
    det = out["checks"][0]["details"]
    assert det["norm_A"] == pytest.approx(1.0, abs=1e-9)
    assert det["norm_A2"] == pytest.approx(1.0, abs=1e-9)


def test_catalog_shift_bound_check():
    out = reproduce_catalog(only="j")
    assert out["ok"]
    det = out["checks"][0]["details"]
    assert det["lower_bound"] == pytest.approx(np.sqrt(3.98), abs=2e-6)
    assert det["lower_bound"] <= det["norm"] <= det["upper_bound"] + 1e-9
