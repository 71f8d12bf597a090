"""
Vectorised float evaluation of polynomials and a predictor-corrector
tracer for implicitly defined real curves.
"""
from functools import cached_property
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from polar_roadmap.polyring.poly import Poly

logger = logging.getLogger(__name__)


class CompiledPoly:
    """A polynomial as exponent and coefficient arrays for batch evaluation."""

    def __init__(self, p: Poly):
        self.poly = p
        self.nvars = p.ring.nvars
        terms = list(p.terms.items())
        self.exponents = np.array([m for m, _ in terms], dtype=np.int64).reshape(len(terms), self.nvars)
        self.coefficients = np.array([float(c) for _, c in terms], dtype=float)

    def __call__(self, points) -> np.ndarray:
        X = np.atleast_2d(np.asarray(points, dtype=float))
        if not len(self.coefficients):
            return np.zeros(X.shape[0])
        powers = np.prod(X[:, None, :] ** self.exponents[None, :, :], axis=2)
        return powers @ self.coefficients

    def value(self, point) -> float:
        return float(self(point)[0])

    @cached_property
    def partials(self) -> List["CompiledPoly"]:
        return [CompiledPoly(self.poly.derivative(k)) for k in range(self.nvars)]

    def gradient(self, points) -> np.ndarray:
        """Shape (m, n): one gradient row per point."""
        return np.stack([d(points) for d in self.partials], axis=1)


class CompiledSystem:
    def __init__(self, polys: Sequence[Poly]):
        self.polys = [CompiledPoly(p) for p in polys]

    def __len__(self) -> int:
        return len(self.polys)

    def values(self, points) -> np.ndarray:
        """Shape (m, p)."""
        X = np.atleast_2d(np.asarray(points, dtype=float))
        if not self.polys:
            return np.zeros((X.shape[0], 0))
        return np.stack([p(X) for p in self.polys], axis=1)

    def residuals(self, points) -> np.ndarray:
        """Max absolute value of the system at each point."""
        values = self.values(points)
        if values.shape[1] == 0:
            return np.zeros(values.shape[0])
        return np.max(np.abs(values), axis=1)

    def jacobian(self, point) -> np.ndarray:
        """Shape (p, n) at a single point."""
        return np.vstack([p.gradient(point)[0] for p in self.polys])


def newton_project(system: CompiledSystem, x0, tolerance: float, max_iterations: int = 30) -> Optional[np.ndarray]:
    """
    Gauss-Newton with minimal-norm steps onto {system = 0}; ``None`` when
    it does not converge.
    """
    x = np.asarray(x0, dtype=float).copy()
    for _ in range(max_iterations):
        f = system.values(x)[0]
        if np.max(np.abs(f)) <= tolerance:
            return x
        J = system.jacobian(x)
        step, *_ = np.linalg.lstsq(J, -f, rcond=None)
        x = x + step
        if not np.all(np.isfinite(x)):
            return None
    f = system.values(x)[0]
    return x if np.max(np.abs(f)) <= tolerance else None


def tangent(system: CompiledSystem, x) -> Optional[np.ndarray]:
    """
    Unit tangent of a curve whose Jacobian has rank n - 1 (the system may
    have more equations than that); ``None`` at rank drops.
    """
    J = system.jacobian(x)
    n = J.shape[1]
    _, s, vt = np.linalg.svd(J)
    if len(s) < n - 1 or (n > 1 and s[n - 2] < 1e-10 * max(1.0, s[0])):
        return None
    t = vt[n - 1]
    return t / np.linalg.norm(t)


def trace_curve(
    system: CompiledSystem,
    start,
    step: float,
    tolerance: float,
    max_steps: int = 2000,
    inside=None,
) -> Tuple[np.ndarray, str]:
    """
    Follow the curve through ``start`` in both directions with an Euler
    predictor and a Newton corrector. Stops on a closed loop, on leaving
    ``inside`` (a predicate on points), at a rank drop or after
    ``max_steps``. Returns the vertices in order and the stop reason.
    """
    x0 = newton_project(system, start, tolerance)
    if x0 is None:
        return np.empty((0, len(start))), "no-start"
    halves = []
    reason = "max-steps"
    for sign in (1.0, -1.0):
        t0 = tangent(system, x0)
        if t0 is None:
            return x0[None, :], "singular-start"
        direction = sign * t0
        path = [x0]
        x = x0
        h = step
        reason = "max-steps"
        for _ in range(max_steps):
            t = tangent(system, x)
            if t is None:
                reason = "singular"
                break
            if np.dot(t, direction) < 0:
                t = -t
            y = newton_project(system, x + h * t, tolerance, max_iterations=8)
            if y is None or np.linalg.norm(y - x) > 3 * h:
                h /= 2
                if h < step / 64:
                    reason = "stalled"
                    break
                continue
            direction = t
            x = y
            path.append(x)
            h = min(step, h * 1.5)
            if inside is not None and not inside(x):
                reason = "left-region"
                break
            if len(path) > 3 and np.linalg.norm(x - x0) < step / 2:
                reason = "closed"
                break
        halves.append(path)
        if reason == "closed":
            return np.array(path), reason
    backward = halves[1][1:][::-1] if len(halves) > 1 else []
    vertices = list(backward) + list(halves[0])
    return np.array(vertices), reason
