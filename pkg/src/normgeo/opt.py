"""Scalar search kernels: golden section, convex line minimization, bisection.

Dependency-free and allocation-light on purpose; the operator-norm refinement
loops call these with plain-float closures many thousands of times.
"""
from __future__ import annotations

import math
from typing import Callable, Sequence

from .errors import UndefinedInput
from .tolerances import BRACKET_WIDTH

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_min(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = BRACKET_WIDTH,
    max_iter: int = 300,
) -> tuple[float, float]:
    """Minimize a unimodal function on [a, b] by golden-section search.

    Returns (x, f(x)) for the best point actually evaluated. Comparisons are
    weak so that a flat-bottomed convex function keeps a minimizer inside the
    shrinking bracket instead of drifting off one edge.
    """
    if b < a:
        a, b = b, a
    if b - a <= tol:
        mid = 0.5 * (a + b)
        return mid, f(mid)
    x1 = b - INVPHI * (b - a)
    x2 = a + INVPHI * (b - a)
    f1 = f(x1)
    f2 = f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INVPHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INVPHI * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def golden_max(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = BRACKET_WIDTH,
) -> tuple[float, float]:
    """golden_min applied to -f; returns (x, f(x))."""
    x, neg = golden_min(lambda t: -f(t), a, b, tol=tol)
    return x, -neg


def convex_line_min(
    phi: Callable[[float], float],
    tol: float = BRACKET_WIDTH,
    max_doublings: int = 200,
) -> tuple[float, float]:
    """Global minimum of a coercive convex function on the real line.

    Brackets by doubling outward from [-1, 1] until each endpoint sits at or
    above the last interior value seen on its side, then golden-sections the
    bracket. Returns (argmin, value); the value is the minimum over every
    point evaluated, so it never exceeds phi(0) by rounding alone.
    """
    f0 = phi(0.0)
    a, fa = -1.0, phi(-1.0)
    inner_a, finner_a = 0.0, f0
    n = 0
    while fa < finner_a:
        inner_a, finner_a = a, fa
        a *= 2.0
        fa = phi(a)
        n += 1
        if n > max_doublings:
            raise UndefinedInput("line objective does not grow leftward; not coercive")
    b, fb = 1.0, phi(1.0)
    inner_b, finner_b = 0.0, f0
    n = 0
    while fb < finner_b:
        inner_b, finner_b = b, fb
        b *= 2.0
        fb = phi(b)
        n += 1
        if n > max_doublings:
            raise UndefinedInput("line objective does not grow rightward; not coercive")
    width_tol = max(tol, tol * 0.5 * (abs(a) + abs(b)))
    x, fx = golden_min(phi, a, b, tol=width_tol)
    for xc, fc in ((0.0, f0), (inner_a, finner_a), (inner_b, finner_b)):
        if fc < fx:
            x, fx = xc, fc
    return x, fx


def bisect_boundary(
    pred: Callable[[float], bool],
    inside: float,
    outside: float,
    width: float = BRACKET_WIDTH,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Shrink a (pred-true, pred-false) pair to a bracket of the given width.

    Requires pred(inside) true and pred(outside) false on entry; returns the
    certified (inside, outside) pair with |outside - inside| <= width (up to
    float resolution around large endpoints).
    """
    for _ in range(max_iter):
        gap = abs(outside - inside)
        if gap <= width or gap <= 4.0 * abs(outside) * 2.23e-16:
            break
        mid = 0.5 * (inside + outside)
        if pred(mid):
            inside = mid
        else:
            outside = mid
    return inside, outside


def coordinate_min(
    f: Callable[[Sequence[float]], float],
    x0: Sequence[float],
    step: float,
    min_step: float = 1e-13,
    shrink: float = 0.5,
    max_rounds: int = 80,
) -> tuple[list[float], float]:
    """Cyclic coordinate minimization with golden-section line searches.

    Each round line-searches every coordinate on [xi - step, xi + step]; the
    step shrinks when a round makes no material progress. Suitable for small
    dimension and convex (or locally unimodal) objectives; callers wanting a
    global answer pair it with a coarse grid or multiple starts.
    """
    x = [float(c) for c in x0]
    fx = f(x)
    k = len(x)
    for _ in range(max_rounds):
        improved = False
        for i in range(k):
            xi = x[i]

            def line(t: float, i: int = i, xi: float = xi) -> float:
                x[i] = xi + t
                v = f(x)
                x[i] = xi
                return v

            t, ft = golden_min(line, -step, step, tol=max(min_step * 0.5, step * 1e-9))
            if ft < fx - 1e-15 * (1.0 + abs(fx)):
                x[i] = xi + t
                fx = ft
                improved = True
        if not improved:
            step *= shrink
            if step < min_step:
                break
    return x, fx
