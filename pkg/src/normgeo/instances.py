"""Named example instances with hand-checkable behavior.

Each constructor returns a small, exactly-representable configuration that
exhibits one geometric phenomenon: parallelism without linear dependence,
strong orthogonality at a corner, norm-parallel nilpotents, parallel
idempotents with trivially intersecting ranges, flat or split attainment
sets, and the aligned rank-one perturbations whose norm doubles.  The
verification suites and the reproduction catalog build on these.
"""
from __future__ import annotations

import numpy as np

from .operators import LinearOperator, rank_one
from .spaces import SpaceSpec, lp, norming_functional, norm_eval, stadium2


def independent_parallel_pair() -> tuple[SpaceSpec, np.ndarray, np.ndarray]:
    """Max-norm plane pair that is norm-parallel yet linearly independent.

    x = (1,1) and y = (1,0): ||x+y|| = 2 = ||x|| + ||y||, but x is not a
    multiple of y — parallelism is strictly weaker than dependence once the
    sphere has flat faces.  (In a strictly convex space this cannot happen.)
    """
    return lp(2, "inf"), np.array([1.0, 1.0]), np.array([1.0, 0.0])


def corner_semirotund_point() -> tuple[SpaceSpec, np.ndarray, np.ndarray]:
    """A corner of the max-norm cube with an explicit strong partner.

    At x = (1,1,0) the direction y = (1,-1,0) gives ||x + t*y|| = 1 + |t|
    exactly, so x is strongly Birkhoff-orthogonal to y: a certificate that
    corners of the cube are semi-rotund points.
    """
    return lp(3, "inf"), np.array([1.0, 1.0, 0.0]), np.array([1.0, -1.0, 0.0])


def nilpotent_collapse_chain() -> tuple[LinearOperator, LinearOperator]:
    """A nilpotent sum-norm operator that is parallel to its own square.

    A sends e1 -> -e2 -> e3 -> 0, so A and A^2 both have norm one and
    ||A + A^2|| = 2 (witness e1, whose images (0,-1,0) and (0,0,1) add
    norms in the sum norm).  Away from such lattice alignments, nilpotents
    over Euclidean balls are never parallel to their nonzero powers.
    """
    space = lp(3, 1)
    A = np.array([[0.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0]])
    return (
        LinearOperator(A, space, space),
        LinearOperator(A @ A, space, space),
    )


def idempotent_disjoint_ranges() -> tuple[LinearOperator, LinearOperator]:
    """Parallel sum-norm idempotents whose ranges intersect only in 0.

    A projects onto span{e1}; B is idempotent with range span{e2, e3}.
    Both have norm one and ||A + B|| = 2 (witness e1: images e1 and e3 add
    norms), yet range(A) ∩ range(B) = {0} — over Euclidean balls, parallel
    idempotents must share a range direction, and this pair shows the
    sum norm breaks that rule.
    """
    space = lp(3, 1)
    A = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    B = np.array([[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 1.0]])
    return LinearOperator(A, space, space), LinearOperator(B, space, space)


def flat_attainment_pair() -> tuple[LinearOperator, LinearOperator]:
    """Stadium-gauge pair: strong orthogonality held only at the operator level.

    T replicates the first coordinate, so it attains its norm on the whole
    flat side {(1, t) : |t| <= 1} of the stadium sphere (and its negative).
    A is tuned so that ||T + lam*A|| grows for every lam != 0 — through the
    cap for lam > 0 and through the radial part for lam < 0 — while no
    single flat-side point x has T(x) strongly orthogonal to A(x): the
    orthogonality is carried by the attainment set as a whole.
    """
    space = stadium2()
    T = np.array([[1.0, 0.0], [1.0, 0.0]])
    A = np.array([[-0.5, 0.5], [2.5, -0.5]])
    return LinearOperator(T, space, space), LinearOperator(A, space, space)


def two_component_attainment_pair() -> tuple[LinearOperator, LinearOperator]:
    """Max-norm plane pair attaining on two opposite faces.

    T = first-coordinate replication attains exactly on the faces x0 = 1
    and x0 = -1 (two components of the sphere); with A flipping the first
    output coordinate, ||T + lam*A|| = 1 + |lam| exactly, a kink at 0 —
    strong orthogonality with literally zero sublevel width.
    """
    space = lp(2, "inf")
    T = np.array([[1.0, 0.0], [1.0, 0.0]])
    A = np.array([[-1.0, 0.0], [1.0, 0.0]])
    return LinearOperator(T, space, space), LinearOperator(A, space, space)


def replicating_pair() -> tuple[LinearOperator, LinearOperator]:
    """Three-dimensional max-norm analogue of the replication construction.

    T copies x0 into every output coordinate; A moves mass into the second
    input coordinate with mixed signs so that at x = (1,1,0) the images give
    ||(T + lam*A)x|| = 1 + |lam| exactly: strong orthogonality again comes
    with a zero-width kink, now with a fatter attainment set.
    """
    space = lp(3, "inf")
    T = np.array([[1.0, 0.0, 0.0]] * 3)
    A = np.array([[0.0, -1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 1.0, 0.0]])
    return LinearOperator(T, space, space), LinearOperator(A, space, space)


def truncated_shift(n: int) -> LinearOperator:
    """The shift e_i -> e_{i+1} (killing the last basis vector) on Euclidean
    (n+1)-space.

    ||T_n + I|| tends to 2 from below as n grows: the perturbation I becomes
    asymptotically parallel to T_n without ever attaining parallelism at
    finite n.  The explicit probe (1,...,1,0)/sqrt(n) gives the lower bound
    sqrt((2 + 4(n-1))/n).
    """
    space = lp(n + 1, 2)
    return LinearOperator(np.eye(n + 1, k=-1), space, space)


def aligned_rank_one(space: SpaceSpec, x0) -> LinearOperator:
    """The rank-one operator z -> f(z) * x0 for a norming functional f of x0.

    x0 is normalized first, so the operator has norm one, fixes x0, and
    satisfies ||T + I|| = 2 with witness x0 — the canonical way to make a
    perturbation exactly parallel to the identity.
    """
    x = np.asarray(x0, dtype=float)
    x = x / norm_eval(space, x)
    return rank_one(space, space, x, norming_functional(space, x))
