"""Norm evaluation, duals, derivatives, sampling, and serialization."""
import math

import numpy as np
import pytest

from normgeo import (
    DimensionMismatch,
    ParseError,
    UndefinedInput,
    UnsupportedSpace,
    batch_norm,
    cylcap3,
    dir_deriv,
    dir_deriv_detailed,
    dual_norm_eval,
    extreme_points,
    has_extreme_enumeration,
    lp,
    norm_eval,
    norming_functional,
    polyhedral,
    space_from_dict,
    space_tolerance,
    sphere_sample,
    stadium2,
)

from oracles import (
    cylcap3_norm_ref,
    lp_norm_ref,
    polyhedral_gauge_lp,
    quotient_deriv,
    stadium2_norm_ref,
    support_dual_max,
)

SQUARE = polyhedral([[1, 1], [1, -1], [-1, 1], [-1, -1]])
DIAMOND = polyhedral([[1, 0], [0, 1], [-1, 0], [0, -1]])
HEX = polyhedral([[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2]])

FAMILIES = [
    lp(2, 1),
    lp(2, 2),
    lp(2, "inf"),
    lp(3, 1.5),
    lp(3, 4),
    stadium2(),
    cylcap3(),
    SQUARE,
    HEX,
]


def rng():
    return np.random.default_rng(20190822)


# ---------------------------------------------------------------------------
# norm_eval


def test_norm_linf_corner():
    assert norm_eval(lp(2, "inf"), (1, 1)) == 1.0


def test_norm_stadium_axis_tip():
    # the sphere's upper arc passes through (0, 2)
    assert norm_eval(stadium2(), (0, 2)) == pytest.approx(1.0, abs=1e-12)


def test_norm_stadium_cylinder_region_raycast():
    want = stadium2_norm_ref((1.05, 0.75))
    assert want == pytest.approx(1.05, abs=1e-10)
    assert norm_eval(stadium2(), (1.05, 0.75)) == pytest.approx(want, abs=1e-9)


def test_norm_stadium_anchor_values_exact():
    sp = stadium2()
    assert norm_eval(sp, (1, 1)) == 1.0
    assert norm_eval(sp, (0, 2)) == 1.0
    assert norm_eval(sp, (1, -1)) == 1.0


@pytest.mark.parametrize("v", [(0.3, -1.7), (2.0, 0.1), (0.0, 0.4), (1.0, 1.0)])
def test_norm_stadium_matches_containment_bisection(v):
    assert norm_eval(stadium2(), v) == pytest.approx(
        stadium2_norm_ref(v), abs=1e-9
    )


@pytest.mark.parametrize(
    "v", [(0, 0, 2), (0.3, 0.4, 1.6), (1, 0, 0.5), (-0.2, 0.9, -1.3)]
)
def test_norm_cylcap_matches_containment_bisection(v):
    assert norm_eval(cylcap3(), v) == pytest.approx(cylcap3_norm_ref(v), abs=1e-9)


@pytest.mark.parametrize("p", [1, 1.5, 2, 3, "inf"])
def test_norm_lp_matches_reference(p):
    r = rng()
    sp = lp(3, p)
    for _ in range(25):
        v = r.standard_normal(3) * r.uniform(0.1, 10)
        assert norm_eval(sp, v) == pytest.approx(lp_norm_ref(v, p), rel=1e-12)


def test_norm_polyhedral_matches_gauge_lp():
    r = rng()
    for sp in (SQUARE, DIAMOND, HEX):
        for _ in range(20):
            v = r.standard_normal(2) * 3
            assert norm_eval(sp, v) == pytest.approx(
                polyhedral_gauge_lp(sp.vertices, v), abs=1e-9
            )


@pytest.mark.parametrize("space", FAMILIES, ids=lambda s: f"{s.kind}{s.dim}")
def test_norm_homogeneous_and_triangle(space):
    r = rng()
    for _ in range(40):
        u = r.standard_normal(space.dim)
        v = r.standard_normal(space.dim)
        a = r.uniform(-5, 5)
        nu, nv = norm_eval(space, u), norm_eval(space, v)
        assert norm_eval(space, a * u) == pytest.approx(abs(a) * nu, rel=1e-10)
        assert norm_eval(space, u + v) <= nu + nv + 1e-9
        assert nu > 0


def test_norm_zero_vector_is_zero():
    for space in FAMILIES:
        assert norm_eval(space, np.zeros(space.dim)) == 0.0


def test_batch_norm_matches_scalar():
    r = rng()
    for space in FAMILIES:
        V = r.standard_normal((17, space.dim))
        got = batch_norm(space, V)
        want = np.array([norm_eval(space, v) for v in V])
        assert np.allclose(got, want, atol=1e-12)


def test_norm_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        norm_eval(lp(2, 2), (1, 2, 3))


def test_norm_rejects_nonfinite():
    with pytest.raises(UndefinedInput):
        norm_eval(lp(2, 2), (math.nan, 0.0))


# ---------------------------------------------------------------------------
# dual_norm_eval


def test_dual_l1_is_linf():
    assert dual_norm_eval(lp(3, 1), (1, -1, 0)) == 1.0


def test_dual_polyhedral_square():
    # dual of the sup-norm square at f=(1,1): the vertex (1,1) pays 2
    assert dual_norm_eval(SQUARE, (1, 1)) == pytest.approx(2.0, abs=1e-9)


def test_dual_stadium_axis_functional():
    # supremum of f=(0,1) over the ball is attained at the tip (0,2)
    assert dual_norm_eval(stadium2(), (0, 1)) == pytest.approx(2.0, abs=1e-6)


@pytest.mark.parametrize(
    "space",
    [lp(2, 1), lp(2, 2), lp(2, "inf"), lp(2, 3), stadium2(), SQUARE, HEX],
    ids=lambda s: f"{s.kind}{s.dim}",
)
def test_dual_matches_support_oracle_dim2(space):
    r = rng()
    for _ in range(5):
        f = r.standard_normal(2)
        want = support_dual_max(lambda v: norm_eval(space, v), f, 2, res=20000)
        assert dual_norm_eval(space, f) == pytest.approx(want, rel=2e-4)


def test_dual_cylcap_matches_support_oracle():
    r = rng()
    for _ in range(3):
        f = r.standard_normal(3)
        want = support_dual_max(
            lambda v: norm_eval(cylcap3(), v), f, 3, res=200000
        )
        got = dual_norm_eval(cylcap3(), f)
        assert got >= want - 1e-6
        assert got <= want * (1 + 5e-3) + 1e-9


def test_dual_lp_holder_pairing():
    r = rng()
    for p, q in [(1.5, 3.0), (2, 2), (4, 4 / 3)]:
        sp = lp(3, p)
        for _ in range(10):
            f = r.standard_normal(3)
            assert dual_norm_eval(sp, f) == pytest.approx(
                lp_norm_ref(f, q), rel=1e-9
            )


# ---------------------------------------------------------------------------
# norming_functional


def test_norming_euclidean_gradient():
    f = norming_functional(lp(2, 2), (3, 4))
    assert np.allclose(f, (0.6, 0.8), atol=1e-12)


def test_norming_linf_face():
    sp = lp(2, "inf")
    x = np.array([1.0, 0.5])
    f = norming_functional(sp, x)
    assert float(f @ x) == pytest.approx(norm_eval(sp, x), abs=1e-9)
    assert dual_norm_eval(sp, f) == pytest.approx(1.0, abs=1e-9)


def test_norming_l1_sign_vector():
    f = norming_functional(lp(3, 1), (1, -2, 0))
    assert f[0] == pytest.approx(1.0, abs=1e-12)
    assert f[1] == pytest.approx(-1.0, abs=1e-12)
    assert abs(f[2]) <= 1.0 + 1e-12


@pytest.mark.parametrize("space", FAMILIES, ids=lambda s: f"{s.kind}{s.dim}")
def test_norming_duality_pairing(space):
    r = rng()
    for _ in range(30):
        x = r.standard_normal(space.dim)
        nx = norm_eval(space, x)
        if nx < 1e-6:
            continue
        f = norming_functional(space, x)
        assert float(f @ x) == pytest.approx(nx, rel=1e-7)
        assert dual_norm_eval(space, f) == pytest.approx(1.0, abs=2e-6)


def test_norming_zero_rejected():
    with pytest.raises(UndefinedInput):
        norming_functional(lp(2, 2), (0, 0))


# ---------------------------------------------------------------------------
# dir_deriv


def test_dir_deriv_euclidean_orthogonal():
    assert dir_deriv(lp(2, 2), (1, 0), (0, 1), +1) == pytest.approx(0.0, abs=1e-9)


def test_dir_deriv_linf_one_sided():
    sp = lp(2, "inf")
    assert dir_deriv(sp, (1, 1), (1, 0), +1) == pytest.approx(1.0, abs=1e-9)
    assert dir_deriv(sp, (1, 1), (1, 0), -1) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("space", FAMILIES, ids=lambda s: f"{s.kind}{s.dim}")
def test_dir_deriv_convexity_and_quotient_oracle(space):
    r = rng()
    for _ in range(12):
        x = r.standard_normal(space.dim)
        nx = norm_eval(space, x)
        if nx < 1e-3:
            continue
        y = r.standard_normal(space.dim)
        scale = max(1.0, nx, norm_eval(space, y))
        slack = 1e-7 * scale
        minus = dir_deriv(space, x, y, -1)
        plus = dir_deriv(space, x, y, +1)
        assert minus <= plus + slack
        left, right = quotient_deriv(lambda v: norm_eval(space, v), x, y)
        # one-sided quotients at h=1e-7 bracket the true one-sided limits
        assert left - 1e-5 * scale <= minus + slack
        assert plus <= right + 1e-5 * scale


def test_dir_deriv_detailed_piecewise_linear_certifies():
    # constant quotients certify immediately on a flat face
    d = dir_deriv_detailed(lp(2, "inf"), (1.0, 0.5), (1.0, 0.0), +1)
    assert d.certified
    assert d.value == pytest.approx(1.0, abs=1e-12)


def test_dir_deriv_detailed_smooth_bracket_is_tight():
    # generic smooth case: certification at 1e-9 is out of floating point's
    # reach, so the ladder reports an honest (and tight) quotient bracket
    d = dir_deriv_detailed(lp(2, 2), (1.0, 0.3), (0.4, -0.2), +1)
    assert d.lo <= d.value <= d.hi
    assert d.hi - d.lo < 1e-7
    x = np.array([1.0, 0.3])
    grad = x / np.linalg.norm(x)
    want = float(grad @ np.array([0.4, -0.2]))
    assert d.value == pytest.approx(want, abs=1e-7)


def test_dir_deriv_zero_base_rejected():
    with pytest.raises(UndefinedInput):
        dir_deriv(lp(2, 2), (0, 0), (1, 0), +1)


# ---------------------------------------------------------------------------
# extreme_points / sphere_sample


def test_extremes_l1():
    E = extreme_points(lp(3, 1))
    assert E.shape == (6, 3)
    want = {tuple(r) for r in np.vstack([np.eye(3), -np.eye(3)])}
    assert {tuple(r) for r in E} == want


def test_extremes_linf():
    E = extreme_points(lp(2, "inf"))
    assert sorted(map(tuple, E)) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def test_extremes_polyhedral_prunes_interior_vertex():
    # (0.5, 0.5) sits inside the square's hull and must be dropped
    sp = polyhedral(
        [[1, 1], [1, -1], [-1, 1], [-1, -1], [0.5, 0.5], [-0.5, -0.5]]
    )
    E = extreme_points(sp)
    assert sorted(map(tuple, E)) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def test_extremes_unavailable_for_curved_balls():
    assert not has_extreme_enumeration(stadium2())
    assert not has_extreme_enumeration(lp(2, 2))
    with pytest.raises(UnsupportedSpace):
        extreme_points(stadium2())


def test_sphere_sample_axis_anchors():
    S = sphere_sample(lp(2, 2), 4)
    for target in [(1, 0), (0, 1), (-1, 0), (0, -1)]:
        assert np.min(np.linalg.norm(S - np.asarray(target), axis=1)) < 1e-9


def test_sphere_sample_stadium_unit_norms():
    sp = stadium2()
    S = sphere_sample(sp, 4096)
    norms = batch_norm(sp, np.asarray(S))
    assert np.max(np.abs(norms - 1.0)) < 1e-6


def test_sphere_sample_l1_euclidean_max():
    S = np.asarray(sphere_sample(lp(3, 1), 1000))
    assert np.abs(np.linalg.norm(S, axis=1).max() - 1.0) < 1e-6


def test_sphere_sample_zero_resolution_rejected():
    with pytest.raises(UndefinedInput):
        sphere_sample(lp(2, 2), 0)


def test_sphere_sample_high_dim_unit_norms():
    sp = lp(5, 3)
    S = np.asarray(sphere_sample(sp, 64))
    norms = batch_norm(sp, S)
    assert np.max(np.abs(norms - 1.0)) < 1e-9


# ---------------------------------------------------------------------------
# serialization / tolerances


@pytest.mark.parametrize("space", FAMILIES, ids=lambda s: f"{s.kind}{s.dim}")
def test_space_roundtrip(space):
    assert space_from_dict(space.to_dict()) == space


def test_space_roundtrip_opnorm():
    from normgeo import op_space

    sp = op_space(lp(2, "inf"), stadium2())
    assert space_from_dict(sp.to_dict()) == sp
    assert sp.dim == 4


def test_space_from_dict_rejects_malformed():
    for bad in [
        {"kind": "wat", "dim": 2},
        {"kind": "lp", "dim": 2, "p": 0.5},
        {"kind": "lp", "dim": 2},
        {"kind": "cylcap3", "dim": 2},
        {"kind": "stadium2", "dim": 3},
        {"kind": "polyhedral", "dim": 2, "vertices": [[1, 0], [0, 1]]},
        "not a dict",
    ]:
        with pytest.raises((ParseError, UndefinedInput)):
            space_from_dict(bad)


def test_polyhedral_rejects_asymmetric_vertices():
    with pytest.raises(UndefinedInput):
        polyhedral([[1, 0], [0, 1], [-1, 0], [0, -0.5]])


def test_space_tolerance_paths():
    from normgeo import EQ_TOL, SAMPLE_TOL, op_space

    assert space_tolerance(lp(3, 1)) == EQ_TOL
    assert space_tolerance(stadium2()) == EQ_TOL
    # enumeration keeps the operator norm exact
    assert space_tolerance(op_space(lp(2, "inf"), lp(2, 1))) == EQ_TOL
    # sampled operator norms carry the looser tolerance
    assert space_tolerance(op_space(stadium2(), stadium2())) == SAMPLE_TOL
    # two-sided euclidean operator norms are exact via singular values
    assert space_tolerance(op_space(lp(3, 2), lp(3, 2))) == EQ_TOL
