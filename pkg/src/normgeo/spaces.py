"""Finite-dimensional normed spaces and the core norm operations.

A space is described by an immutable :class:`SpaceSpec`. Supported kinds:

``lp``
    R^n with the p-norm, 1 <= p <= inf.
``polyhedral``
    The Minkowski gauge of a symmetric full-dimensional polytope given by its
    vertex list; evaluated by a small linear program.
``stadium2``
    R^2 normed so that the unit sphere is the boundary of the unit-radius
    neighbourhood of the segment from (0,-1) to (0,1): two vertical flats
    joined by semicircular caps.
``cylcap3``
    The solid of revolution of the same profile in R^3: a unit cylinder with
    spherical caps around the segment from (0,0,-1) to (0,0,1).
``opnorm``
    Linear maps between two spaces, flattened row-major and measured in the
    operator norm. Built via :func:`normgeo.operators.op_space`.

Vectors and covectors are plain float arrays; a covector is measured in the
dual norm. All operations are pure functions of their arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np
from scipy.optimize import linprog

from .errors import (
    DimensionMismatch,
    ParseError,
    UndefinedInput,
    UnsupportedSpace,
)
from .tolerances import DEFAULT_SEED, EQ_TOL, SAMPLE_TOL

Vector = np.ndarray
Covector = np.ndarray

_KINDS = ("lp", "polyhedral", "stadium2", "cylcap3", "opnorm")


@dataclass(frozen=True)
class SpaceSpec:
    """Immutable description of a normed space. Hashable, so results that
    depend only on the space (extreme points, sphere samples) are cached."""

    dim: int
    kind: str
    p: float | None = None
    vertices: tuple[tuple[float, ...], ...] | None = None
    domain: "SpaceSpec | None" = None
    codomain: "SpaceSpec | None" = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise UnsupportedSpace(f"unknown space kind {self.kind!r}")
        if self.dim < 1:
            raise UndefinedInput("space dimension must be positive")
        if self.kind == "lp":
            if self.p is None or (not math.isinf(self.p) and self.p < 1.0):
                raise UndefinedInput("lp exponent must satisfy p >= 1")
        if self.kind == "polyhedral":
            self._validate_vertices()
        if self.kind == "stadium2" and self.dim != 2:
            raise UndefinedInput("stadium2 is two-dimensional")
        if self.kind == "cylcap3" and self.dim != 3:
            raise UndefinedInput("cylcap3 is three-dimensional")
        if self.kind == "opnorm":
            if self.domain is None or self.codomain is None:
                raise UndefinedInput("opnorm spaces need domain and codomain")
            if self.dim != self.domain.dim * self.codomain.dim:
                raise DimensionMismatch("opnorm dim must be domain.dim * codomain.dim")

    def _validate_vertices(self) -> None:
        if not self.vertices:
            raise UndefinedInput("polyhedral space needs a vertex list")
        W = np.asarray(self.vertices, dtype=float)
        if W.ndim != 2 or W.shape[1] != self.dim:
            raise DimensionMismatch("vertex rows must match the space dimension")
        if W.shape[0] < 2 * self.dim:
            raise UndefinedInput("too few vertices for a symmetric full ball")
        if np.linalg.matrix_rank(W, tol=1e-10) < self.dim:
            raise UndefinedInput("vertex set does not span the space (empty interior)")
        for row in W:
            d = np.abs(W + row).sum(axis=1).min()
            if d > 1e-9 * (1.0 + np.abs(row).sum()):
                raise UndefinedInput("vertex set is not symmetric under negation")

    def to_dict(self) -> dict:
        d: dict = {"dim": self.dim, "kind": self.kind}
        if self.kind == "lp":
            d["p"] = "inf" if math.isinf(self.p) else self.p
        elif self.kind == "polyhedral":
            d["vertices"] = [list(v) for v in self.vertices]
        elif self.kind == "opnorm":
            d["domain"] = self.domain.to_dict()
            d["codomain"] = self.codomain.to_dict()
        return d


def lp(dim: int, p: float) -> SpaceSpec:
    """R^dim with the p-norm; p may be math.inf (or the string 'inf')."""
    if isinstance(p, str):
        if p.lower() != "inf":
            raise ParseError(f"bad lp exponent {p!r}")
        p = math.inf
    return SpaceSpec(dim=dim, kind="lp", p=float(p))


def polyhedral(vertices: Iterable[Iterable[float]]) -> SpaceSpec:
    """Gauge of the symmetric polytope with the given vertices."""
    vt = tuple(tuple(float(c) for c in v) for v in vertices)
    if not vt:
        raise UndefinedInput("polyhedral space needs a vertex list")
    return SpaceSpec(dim=len(vt[0]), kind="polyhedral", vertices=vt)


def stadium2() -> SpaceSpec:
    return SpaceSpec(dim=2, kind="stadium2")


def cylcap3() -> SpaceSpec:
    return SpaceSpec(dim=3, kind="cylcap3")


def space_from_dict(d: dict) -> SpaceSpec:
    """Inverse of SpaceSpec.to_dict; raises ParseError on malformed input."""
    if not isinstance(d, dict):
        raise ParseError("space description must be a JSON object")
    kind = d.get("kind")
    try:
        if kind == "lp":
            return lp(int(d["dim"]), d["p"])
        if kind == "polyhedral":
            sp = polyhedral(d["vertices"])
            if sp.dim != int(d["dim"]):
                raise ParseError("vertex dimension disagrees with dim")
            return sp
        if kind == "stadium2":
            if int(d.get("dim", 2)) != 2:
                raise ParseError("stadium2 is 2-dimensional")
            return stadium2()
        if kind == "cylcap3":
            if int(d.get("dim", 3)) != 3:
                raise ParseError("cylcap3 is 3-dimensional")
            return cylcap3()
        if kind == "opnorm":
            from .operators import op_space

            return op_space(space_from_dict(d["domain"]), space_from_dict(d["codomain"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad space description: {exc}") from exc
    raise ParseError(f"unknown space kind {kind!r}")


def as_vector(space: SpaceSpec, v) -> Vector:
    """Validate shape and finiteness; returns a float array copy."""
    arr = np.asarray(v, dtype=float).ravel()
    if arr.size != space.dim:
        raise DimensionMismatch(
            f"vector of length {arr.size} in a {space.dim}-dimensional space"
        )
    if not np.all(np.isfinite(arr)):
        raise UndefinedInput("vector has non-finite components")
    return arr


def space_tolerance(space: SpaceSpec) -> float:
    """Equality tolerance appropriate to this space's norm path.

    Sampled-and-refined paths (operator norms over domains with no extreme
    enumeration and no spectral shortcut) get SAMPLE_TOL; every other norm
    here is closed-form, vertex-enumerated, or spectral, and gets EQ_TOL.
    """
    if space.kind != "opnorm":
        return EQ_TOL
    dom, cod = space.domain, space.codomain
    if has_extreme_enumeration(dom):
        return EQ_TOL
    if dom.kind == "lp" and dom.p == 2.0 and cod.kind == "lp" and cod.p == 2.0:
        return EQ_TOL
    return SAMPLE_TOL


# ---------------------------------------------------------------------------
# norm evaluation


def _capsule(rho: float, c: float) -> float:
    # gauge of (segment [-e_axis, e_axis]) + (unit Euclidean ball)
    ac = abs(c)
    if ac <= rho:
        return rho
    return 0.5 * (rho * rho + c * c) / ac


def _gauge_lp(space: SpaceSpec, v: np.ndarray) -> float:
    # minimal total weight writing v as a nonnegative combination of vertices
    W = np.asarray(space.vertices, dtype=float)
    m = W.shape[0]
    res = linprog(
        c=np.ones(m),
        A_eq=W.T,
        b_eq=v,
        bounds=[(0.0, None)] * m,
        method="highs",
    )
    if not res.success:  # pragma: no cover - symmetric spanning set is always feasible
        raise UndefinedInput(f"gauge LP failed: {res.message}")
    return float(res.fun)


@lru_cache(maxsize=None)
def _facet_functionals(space: SpaceSpec) -> np.ndarray:
    """Rows f with the unit ball equal to {v : f·v <= 1 for all f}.

    The gauge is then max_f f·v — the support-function form of the Minkowski
    gauge, precomputed once per space from the convex hull of the vertices.
    """
    W = np.asarray(space.vertices, dtype=float)
    if space.dim == 1:
        a = np.abs(W).max()
        F = np.array([[1.0 / a], [-1.0 / a]])
    else:
        from scipy.spatial import ConvexHull

        hull = ConvexHull(W)
        # hull facets are a·v + b <= 0 with b < 0 (0 is interior), so f = -a/b
        A = hull.equations[:, :-1]
        b = hull.equations[:, -1]
        F = A / (-b[:, None])
    F = np.ascontiguousarray(F)
    F.setflags(write=False)
    return F


@lru_cache(maxsize=None)
def _scalar_norm(space: SpaceSpec):
    """A tuple-of-floats -> float norm closure, kind-specialized for speed."""
    kind = space.kind
    if kind == "lp":
        p = space.p
        if math.isinf(p):
            return lambda v: max(abs(c) for c in v)
        if p == 1.0:
            return lambda v: sum(abs(c) for c in v)
        if p == 2.0:
            return lambda v: math.sqrt(sum(c * c for c in v))

        def general(v, p=p):
            m = max(abs(c) for c in v)
            if m == 0.0:
                return 0.0
            return m * sum((abs(c) / m) ** p for c in v) ** (1.0 / p)

        return general
    if kind == "stadium2":
        return lambda v: _capsule(abs(v[0]), v[1])
    if kind == "cylcap3":
        return lambda v: _capsule(math.hypot(v[0], v[1]), v[2])
    if kind == "polyhedral":
        F = _facet_functionals(space)
        return lambda v: float(max(0.0, (F @ np.asarray(v, dtype=float)).max()))
    if kind == "opnorm":

        def op(v, space=space):
            from .operators import LinearOperator, operator_norm

            mat = np.asarray(v, dtype=float).reshape(
                space.codomain.dim, space.domain.dim
            )
            return operator_norm(LinearOperator(mat, space.domain, space.codomain)).value

        return op
    raise UnsupportedSpace(kind)  # pragma: no cover


def norm_eval(space: SpaceSpec, v) -> float:
    """The norm of v in the given space."""
    arr = as_vector(space, v)
    return float(_scalar_norm(space)(tuple(arr)))


def batch_norm(space: SpaceSpec, P: np.ndarray) -> np.ndarray:
    """Norms of the rows of P. Vectorized for the closed-form kinds."""
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[1] != space.dim:
        raise DimensionMismatch("batch rows must match the space dimension")
    kind = space.kind
    if kind == "lp":
        p = space.p
        if math.isinf(p):
            return np.abs(P).max(axis=1)
        if p == 1.0:
            return np.abs(P).sum(axis=1)
        if p == 2.0:
            return np.sqrt(np.einsum("ij,ij->i", P, P))
        m = np.abs(P).max(axis=1)
        safe = np.maximum(m, 1e-300)
        return m * ((np.abs(P) / safe[:, None]) ** p).sum(axis=1) ** (1.0 / p)
    if kind == "stadium2":
        rho = np.abs(P[:, 0])
        c = P[:, 1]
        return _capsule_batch(rho, c)
    if kind == "cylcap3":
        rho = np.hypot(P[:, 0], P[:, 1])
        return _capsule_batch(rho, P[:, 2])
    if kind == "polyhedral":
        F = _facet_functionals(space)
        return np.maximum((P @ F.T).max(axis=1), 0.0)
    f = _scalar_norm(space)
    return np.array([f(tuple(row)) for row in P])


def _capsule_batch(rho: np.ndarray, c: np.ndarray) -> np.ndarray:
    ac = np.abs(c)
    cap = 0.5 * (rho * rho + c * c) / np.maximum(ac, 1e-300)
    return np.where(ac <= rho, rho, cap)


# ---------------------------------------------------------------------------
# dual norm and norming functionals


def dual_norm_eval(space: SpaceSpec, f) -> float:
    """The dual norm sup{f(x) : ||x|| <= 1}.

    lp duals use the conjugate exponent; polyhedral duals scan the vertex
    list; the capsule gauges have support function |f_axis| + |f|_2 because
    their balls are Minkowski sums of a segment and a Euclidean ball.
    """
    arr = as_vector(space, f)
    kind = space.kind
    if kind == "lp":
        p = space.p
        if math.isinf(p):
            q = 1.0
        elif p == 1.0:
            q = math.inf
        else:
            q = p / (p - 1.0)
        return float(_scalar_norm(lp(space.dim, q))(tuple(arr)))
    if kind == "polyhedral":
        W = np.asarray(space.vertices, dtype=float)
        return float((W @ arr).max())
    if kind == "stadium2":
        return float(abs(arr[1]) + math.hypot(arr[0], arr[1]))
    if kind == "cylcap3":
        return float(abs(arr[2]) + math.sqrt(arr @ arr))
    raise UnsupportedSpace("dual norm is not available for opnorm spaces")


def norming_functional(space: SpaceSpec, x) -> Covector:
    """A covector f with ||f||_* = 1 and f(x) = ||x||.

    Smooth norms (lp with 1 < p < inf, and both capsule gauges, whose spheres
    have a unique supporting line everywhere) return the gradient. lp(1),
    lp(inf) and polyhedral norms return a deterministic element of the
    subdifferential; polyhedral uses the support linear program.
    """
    arr = as_vector(space, x)
    nx = norm_eval(space, arr)
    if nx <= 0.0:
        raise UndefinedInput("norming functional of the zero vector")
    kind = space.kind
    if kind == "lp":
        p = space.p
        if math.isinf(p):
            j = int(np.argmax(np.abs(arr)))
            f = np.zeros(space.dim)
            f[j] = math.copysign(1.0, arr[j])
            return f
        if p == 1.0:
            return np.sign(arr)
        u = np.abs(arr) / nx
        return np.sign(arr) * u ** (p - 1.0)
    if kind == "stadium2":
        rho, c = abs(arr[0]), arr[1]
        if abs(c) <= rho:
            return np.array([math.copysign(1.0, arr[0]), 0.0])
        return np.array(
            [arr[0] / abs(c), math.copysign(1.0, c) * (c * c - rho * rho) / (2 * c * c)]
        )
    if kind == "cylcap3":
        rho = math.hypot(arr[0], arr[1])
        c = arr[2]
        if abs(c) <= rho:
            return np.array([arr[0] / rho, arr[1] / rho, 0.0])
        return np.array(
            [
                arr[0] / abs(c),
                arr[1] / abs(c),
                math.copysign(1.0, c) * (c * c - rho * rho) / (2 * c * c),
            ]
        )
    if kind == "polyhedral":
        F = _facet_functionals(space)
        return np.array(F[int(np.argmax(F @ arr))])
    raise UnsupportedSpace("norming functionals are not available for opnorm spaces")


# ---------------------------------------------------------------------------
# one-sided directional derivatives


@dataclass(frozen=True)
class DirDeriv:
    """Result of the monotone difference-quotient ladder."""

    value: float
    certified: bool
    lo: float
    hi: float
    steps: int


def dir_deriv_detailed(
    space: SpaceSpec, x, y, side: int, cert_tol: float | None = None
) -> DirDeriv:
    """One-sided derivative of t -> ||x + t y|| at 0 with certification data.

    Difference quotients at t = 2^-k are monotone for a convex map (falling
    toward the limit on the plus side, rising on the minus side) with error
    a*t + O(t^2), so the step-halving extrapolant 2*q_k - q_{k-1} kills the
    linear term; two consecutive extrapolants agreeing within cert_tol
    certify the value.  The ladder stops early when the cancellation noise
    of the quotient (eps-sized norm differences divided by t) reaches
    cert_tol, or when a quotient moves against the monotone direction —
    both mean rounding has overtaken the signal, and the last clean
    extrapolant is returned uncertified with the final pair as a bracket.
    """
    if side not in (1, -1):
        raise UndefinedInput("side must be +1 or -1")
    xa = as_vector(space, x)
    ya = as_vector(space, y)
    f = _scalar_norm(space)
    xt = tuple(xa)
    yt = tuple(ya)
    n0 = f(xt)
    if n0 == 0.0:
        raise UndefinedInput("directional derivative needs a nonzero base point")
    scale = max(1.0, n0, f(yt))
    if cert_tol is None:
        cert_tol = EQ_TOL * scale
    prev_q = prev_e = None
    e = 0.0
    steps = 10
    for k in range(10, 41):
        t = 2.0**-k
        if side > 0:
            ft = f(tuple(a + t * b for a, b in zip(xt, yt)))
            q = (ft - n0) / t
        else:
            ft = f(tuple(a - t * b for a, b in zip(xt, yt)))
            q = (n0 - ft) / t
        steps = k
        if prev_q is None:
            prev_q, prev_e = q, q
            e = q
            continue
        e = 2.0 * q - prev_q
        noise = 16.0 * 2.2e-16 * max(n0, abs(ft)) / t
        if abs(e - prev_e) <= cert_tol and noise <= cert_tol:
            lo, hi = (min(e, prev_e), max(e, prev_e))
            return DirDeriv(value=e, certified=True, lo=lo, hi=hi, steps=k)
        if noise > cert_tol or (q - prev_q) * side > 0.0:
            lo, hi = (min(e, prev_e), max(e, prev_e))
            return DirDeriv(value=prev_e, certified=False, lo=lo, hi=hi, steps=k)
        prev_q, prev_e = q, e
    lo, hi = (min(e, prev_e), max(e, prev_e))
    return DirDeriv(value=e, certified=False, lo=lo, hi=hi, steps=steps)


def dir_deriv(space: SpaceSpec, x, y, side: int) -> float:
    """One-sided directional derivative of the norm at x along y."""
    return dir_deriv_detailed(space, x, y, side).value


# ---------------------------------------------------------------------------
# extreme points and sphere sampling


def has_extreme_enumeration(space: SpaceSpec) -> bool:
    """True when the unit ball's extreme points form a small finite set."""
    if space.kind == "polyhedral":
        return True
    if space.kind == "lp":
        return space.p == 1.0 or (math.isinf(space.p) and space.dim <= 16)
    return False


@lru_cache(maxsize=None)
def extreme_points(space: SpaceSpec) -> np.ndarray:
    """The extreme points of the unit ball, one per row.

    lp(1): the signed standard basis. lp(inf): all sign vectors. polyhedral:
    the vertex list pruned of points inside the hull of the others (a small
    feasibility LP per vertex). Other kinds have no finite enumeration.
    """
    if not has_extreme_enumeration(space):
        raise UnsupportedSpace(
            f"{space.kind} unit ball has no finite extreme-point enumeration"
        )
    if space.kind == "lp" and space.p == 1.0:
        eye = np.eye(space.dim)
        out = np.vstack([eye, -eye])
    elif space.kind == "lp":
        grid = np.array(
            [
                [1.0 - 2.0 * ((i >> j) & 1) for j in range(space.dim)]
                for i in range(2**space.dim)
            ]
        )
        out = grid
    else:
        W = np.asarray(space.vertices, dtype=float)
        uniq: list[np.ndarray] = []
        for row in W:
            if not any(np.allclose(row, u, atol=1e-12) for u in uniq):
                uniq.append(row)
        U = np.array(uniq)
        keep = [
            i for i in range(U.shape[0]) if not _in_hull(np.delete(U, i, axis=0), U[i])
        ]
        out = U[keep]
    out.setflags(write=False)
    return out


def _in_hull(points: np.ndarray, target: np.ndarray) -> bool:
    m = points.shape[0]
    res = linprog(
        c=np.zeros(m),
        A_eq=np.vstack([points.T, np.ones(m)]),
        b_eq=np.concatenate([target, [1.0]]),
        bounds=[(0.0, None)] * m,
        method="highs",
    )
    return bool(res.success)


@lru_cache(maxsize=None)
def sphere_sample(space: SpaceSpec, resolution: int) -> np.ndarray:
    """At least `resolution` unit vectors covering all directions.

    dim 2 uses a uniform angular grid; dim 3 a Fibonacci direction lattice;
    higher dimensions a seeded quasi-random normal cloud. Canonical anchors
    (normalized signed basis vectors, plus the extreme points when they are
    enumerable) are appended so that polytope corners are hit exactly.
    """
    if resolution < 1:
        raise UndefinedInput("resolution must be positive")
    dim = space.dim
    if dim == 1:
        dirs = np.array([[1.0], [-1.0]])
    elif dim == 2:
        theta = np.linspace(0.0, 2.0 * math.pi, resolution, endpoint=False)
        dirs = np.column_stack([np.cos(theta), np.sin(theta)])
    elif dim == 3:
        i = np.arange(resolution, dtype=float)
        z = 1.0 - 2.0 * (i + 0.5) / resolution
        r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        golden_angle = math.pi * (3.0 - math.sqrt(5.0))
        phi = golden_angle * i
        dirs = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    else:
        rng = np.random.default_rng([DEFAULT_SEED, dim, resolution])
        dirs = rng.standard_normal((resolution + 8, dim))
        lens = np.sqrt(np.einsum("ij,ij->i", dirs, dirs))
        good = lens > 1e-12
        dirs = dirs[good] / lens[good, None]
    anchors = [np.eye(dim), -np.eye(dim)]
    if has_extreme_enumeration(space):
        anchors.append(np.asarray(extreme_points(space)))
    dirs = np.vstack([dirs] + anchors)
    norms = batch_norm(space, dirs)
    pts = dirs / norms[:, None]
    pts.setflags(write=False)
    return pts
