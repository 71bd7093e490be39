"""Independent reference implementations used to cross-check the library.

Everything here is deliberately written from first principles — dense grid
scans, containment bisection, small linear programs — and shares no code
path with the package internals it checks.  Slow and simple beats fast and
entangled for an oracle.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linprog


# ---------------------------------------------------------------------------
# norms from first principles


def lp_norm_ref(v, p) -> float:
    """Direct l_p norm (p may be the string "inf")."""
    a = np.abs(np.asarray(v, dtype=float))
    if p == "inf" or p == math.inf:
        return float(a.max()) if a.size else 0.0
    if p == 1:
        return float(a.sum())
    return float((a**p).sum() ** (1.0 / p))


def _stadium2_contains(p) -> bool:
    """Membership in the unit ball: disk of radius 1 swept along
    the segment {0} x [-1, 1]."""
    a, b = float(p[0]), float(p[1])
    return math.hypot(a, max(0.0, abs(b) - 1.0)) <= 1.0


def _cylcap3_contains(p) -> bool:
    """Membership in the unit ball: euclidean ball swept along
    the segment {(0,0)} x [-1, 1]."""
    rho = math.hypot(float(p[0]), float(p[1]))
    return math.hypot(rho, max(0.0, abs(float(p[2])) - 1.0)) <= 1.0


def gauge_by_bisection(contains, v, hi_cap: float = 1e9) -> float:
    """Minkowski gauge of the body given only a containment test.

    Shrinks/grows a bracket around the smallest t with v/t inside, then
    bisects.  Exact for any star-shaped body containing a neighbourhood
    of the origin.
    """
    v = np.asarray(v, dtype=float)
    if not np.any(v):
        return 0.0
    hi = 1.0
    while not contains(v / hi):
        hi *= 2.0
        if hi > hi_cap:
            raise RuntimeError("unbounded gauge bracket")
    lo = 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if mid == 0.0:
            break
        if contains(v / mid):
            hi = mid
        else:
            lo = mid
    return hi


def stadium2_norm_ref(v) -> float:
    return gauge_by_bisection(_stadium2_contains, v)


def cylcap3_norm_ref(v) -> float:
    return gauge_by_bisection(_cylcap3_contains, v)


def polyhedral_gauge_lp(vertices, v) -> float:
    """Minkowski gauge of conv(vertices) as a linear program.

    minimize t  subject to  W^T lam = v,  sum(lam) = t,  lam >= 0.
    The vertex set is assumed symmetric, so the hull contains 0 and the
    gauge is a norm.
    """
    W = np.asarray(vertices, dtype=float)
    v = np.asarray(v, dtype=float)
    m, d = W.shape
    # variables: lam (m), t (1)
    c = np.zeros(m + 1)
    c[-1] = 1.0
    A_eq = np.zeros((d + 1, m + 1))
    A_eq[:d, :m] = W.T
    A_eq[d, :m] = 1.0
    A_eq[d, -1] = -1.0
    b_eq = np.concatenate([v, [0.0]])
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * (m + 1))
    if not res.success:
        raise RuntimeError(f"gauge LP failed: {res.message}")
    return float(res.fun)


# ---------------------------------------------------------------------------
# line scans and derivatives


def grid_line_scan(norm, x, y, lo=-8.0, hi=8.0, steps=200001):
    """Dense scan of phi(lam) = norm(x + lam*y); returns (argmin, min)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lams = np.linspace(lo, hi, steps)
    best_l, best_v = 0.0, norm(x)
    for lam in lams:
        v = norm(x + lam * y)
        if v < best_v:
            best_l, best_v = float(lam), v
    return best_l, best_v


def quotient_deriv(norm, x, y, h=1e-7):
    """One-sided difference quotients of phi at 0: (left, right)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n0 = norm(x)
    right = (norm(x + h * y) - n0) / h
    left = (n0 - norm(x - h * y)) / h
    return left, right


def euclid_line_min(x, y) -> float:
    """Closed-form min over lam of ||x + lam*y||_2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ny2 = float(y @ y)
    if ny2 == 0.0:
        return float(np.linalg.norm(x))
    val2 = float(x @ x) - float(x @ y) ** 2 / ny2
    return math.sqrt(max(0.0, val2))


# ---------------------------------------------------------------------------
# duals and operator norms by brute force


def support_dual_max(norm, f, dim, res=200000, seed=99) -> float:
    """Dual norm by maximizing f over a dense sample of the unit sphere."""
    f = np.asarray(f, dtype=float)
    if dim == 2:
        ang = np.linspace(0.0, 2.0 * math.pi, res, endpoint=False)
        dirs = np.column_stack([np.cos(ang), np.sin(ang)])
    else:
        rng = np.random.default_rng(seed)
        dirs = rng.standard_normal((res, dim))
        dirs = dirs[np.linalg.norm(dirs, axis=1) > 1e-12]
    norms = np.array([norm(d) for d in dirs])
    keep = norms > 1e-12
    vals = dirs[keep] @ f / norms[keep]
    return float(np.abs(vals).max())


def sphere_cloud(dim, res, seed=7) -> np.ndarray:
    """A dense set of directions: angular grid (dim 2), Fibonacci sphere
    (dim 3), or seeded gaussians (higher)."""
    if dim == 2:
        ang = np.linspace(0.0, 2.0 * math.pi, res, endpoint=False)
        return np.column_stack([np.cos(ang), np.sin(ang)])
    if dim == 3:
        i = np.arange(res, dtype=float) + 0.5
        z = 1.0 - 2.0 * i / res
        r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
        golden = math.pi * (3.0 - math.sqrt(5.0))
        th = golden * i
        return np.column_stack([r * np.cos(th), r * np.sin(th), z])
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((res, dim))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def brute_sphere_opnorm(matrix, dom_norms, cod_norms, res=1_000_000, extra_dirs=None) -> float:
    """max ||M d||_cod / ||d||_dom over a dense direction cloud.

    dom_norms / cod_norms map an (n, dim) array to an (n,) array of norms;
    vectorized callables keep a million points tractable.  SpaceSpec-like
    objects (anything with .kind/.dim) are adapted via vec_norms.  extra_dirs
    appends caller-chosen directions (e.g. known extreme points) to the cloud.
    """
    M = np.asarray(matrix, dtype=float)
    if not callable(dom_norms):
        dom_norms = vec_norms(dom_norms)
    if not callable(cod_norms):
        cod_norms = vec_norms(cod_norms)
    dirs = sphere_cloud(M.shape[1], res)
    if extra_dirs is not None:
        extra = np.asarray(extra_dirs, dtype=float).reshape(-1, M.shape[1])
        dirs = np.vstack([dirs, extra])
    dn = dom_norms(dirs)
    keep = dn > 1e-12
    images = dirs[keep] @ M.T
    return float((cod_norms(images) / dn[keep]).max())


def _capsule_norms(rho, c):
    flat = np.abs(c) <= rho
    out = np.where(flat, rho, (rho * rho + c * c) / np.maximum(2.0 * np.abs(c), 1e-300))
    return np.where((rho == 0.0) & (c == 0.0), 0.0, out)


def vec_norms(space):
    """Vectorized (n, dim) -> (n,) norm evaluator from a space description.

    Dispatches on the descriptive fields only; the formulas are this file's
    own (the capsule closed form is cross-checked against containment
    bisection elsewhere in the suite)."""
    kind = space.kind
    if kind == "lp":
        p = space.p
        if p == float("inf"):
            return lambda a: np.abs(a).max(axis=1)
        if p == 1:
            return lambda a: np.abs(a).sum(axis=1)
        return lambda a: (np.abs(a) ** p).sum(axis=1) ** (1.0 / p)
    if kind == "stadium2":
        return lambda a: _capsule_norms(np.abs(a[:, 0]), a[:, 1])
    if kind == "cylcap3":
        return lambda a: _capsule_norms(np.hypot(a[:, 0], a[:, 1]), a[:, 2])
    raise ValueError(f"no vectorized oracle norm for kind {kind!r}")
