"""Finite-difference oracles for the mean curvature of a vertical graph.

Two routes are provided and kept deliberately independent:

* :func:`mean_curvature_div` differences the flux field
  ``X = (alpha/W) e1 + (beta/W) e2`` and takes its divergence on the
  hyperbolic base.  With ``e_i = lam^{-1} d_i`` and area element
  ``lam^2 dx dy`` the conformal divergence is

      div X = lam^{-2} [ d_x(lam alpha / W) + d_y(lam beta / W) ]

  and ``H = div X / 2``.
* :func:`mean_curvature_pde` (half-plane only) plugs finite-difference
  second derivatives of ``u`` into the non-divergence quasilinear form

      2 H lam^2 m^3 = u_xx (lam^3 + lam u_y^2) + u_yy lam (lam^2 + P^2)
                      - 2 u_xy lam P u_y - u_x u_y lam^2 P - lam^2 u_y^3

  with ``P = u_x - 2 tau lam`` and ``m = sqrt(lam^2 + P^2 + u_y^2)``.

Orientation: the unit normal has positive E3 component, so a graph that
bends upward (``u`` convex-like, mean curvature vector pointing up) reports
``H > 0``.  The bowl ``2 sqrt(cosh r) - 2 arctan sqrt(cosh r)`` in the disk
with ``tau = -1/2`` reads ``+1/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

from .ambient import AmbientSpace, MobiusSpec, Model, cayley_lift, cayley_lift_inverse, conformal_factor, isometry_apply
from .errors import DomainError, NonFinite, StepTooLarge

DEFAULT_STEP = 1e-4
DEFAULT_STEP_TOL = 1e-5
GRADIENT_STEP = 1e-4


@dataclass
class GraphFunction:
    """Height function ``t = u(x, y)`` of a vertical graph.

    ``grad`` may be omitted, in which case a fourth-order central difference
    of ``u`` with step :data:`GRADIENT_STEP` is used.  ``domain`` is a
    predicate describing Omega; it defaults to the whole model domain.
    """

    u: Callable[[float, float], float]
    grad: Optional[Callable[[float, float], tuple[float, float]]] = None
    domain: Optional[Callable[[float, float], bool]] = None

    def __call__(self, x: float, y: float) -> float:
        return self.u(x, y)

    def contains(self, x: float, y: float) -> bool:
        return True if self.domain is None else bool(self.domain(x, y))

    def gradient(self, x: float, y: float) -> tuple[float, float]:
        if self.grad is not None:
            gx, gy = self.grad(x, y)
        else:
            h = GRADIENT_STEP
            u = self.u
            gx = (8.0 * (u(x + h, y) - u(x - h, y)) - (u(x + 2 * h, y) - u(x - 2 * h, y))) / (12.0 * h)
            gy = (8.0 * (u(x, y + h) - u(x, y - h)) - (u(x, y + 2 * h) - u(x, y - 2 * h))) / (12.0 * h)
        if not (math.isfinite(gx) and math.isfinite(gy)):
            raise NonFinite(f"gradient of u is not finite at ({x!r}, {y!r})")
        return gx, gy


class FluxField(NamedTuple):
    """Components of ``alpha/W e1 + beta/W e2`` in the base frame."""

    a: float
    b: float

    @property
    def norm(self) -> float:
        return math.hypot(self.a, self.b)


def _alpha_beta(space: AmbientSpace, u: GraphFunction, x: float, y: float):
    lm, lx, ly = conformal_factor(space, x, y)
    ux, uy = u.gradient(x, y)
    tau = space.tau
    alpha = ux / lm + 2.0 * tau * ly / (lm * lm)
    beta = uy / lm - 2.0 * tau * lx / (lm * lm)
    return lm, alpha, beta


def flux_field(space: AmbientSpace, u: GraphFunction, x: float, y: float) -> FluxField:
    if not u.contains(x, y):
        raise DomainError(f"({x!r}, {y!r}) is outside the graph domain")
    _, alpha, beta = _alpha_beta(space, u, x, y)
    w = math.sqrt(1.0 + alpha * alpha + beta * beta)
    return FluxField(alpha / w, beta / w)


def _check_stencil(space: AmbientSpace, u: GraphFunction, x: float, y: float, reach: float) -> None:
    for px, py in ((x, y), (x + reach, y), (x - reach, y), (x, y + reach), (x, y - reach)):
        space.check(px, py)
        if not u.contains(px, py):
            raise DomainError(f"({x!r}, {y!r}) is closer than {reach!r} to the graph boundary")


def _richardson(estimate: Callable[[float], float], h: float, tol: float) -> float:
    coarse = estimate(h)
    fine = estimate(0.5 * h)
    if not (math.isfinite(coarse) and math.isfinite(fine)):
        raise NonFinite("mean curvature estimate is not finite")
    err = abs(fine - coarse) / 3.0
    if err > tol:
        raise StepTooLarge(f"Richardson error estimate {err:.3g} exceeds {tol:.3g} (h={h!r})")
    return (4.0 * fine - coarse) / 3.0


def mean_curvature_div(
    space: AmbientSpace,
    u: GraphFunction,
    x: float,
    y: float,
    h: float = DEFAULT_STEP,
    tol: float = DEFAULT_STEP_TOL,
) -> float:
    """Mean curvature from the divergence of the flux field."""
    _check_stencil(space, u, x, y, 2.0 * h)
    lm0 = conformal_factor(space, x, y).lam

    def weighted(px, py):
        lm, alpha, beta = _alpha_beta(space, u, px, py)
        w = math.sqrt(1.0 + alpha * alpha + beta * beta)
        return lm * alpha / w, lm * beta / w

    def estimate(step):
        dx = (weighted(x + step, y)[0] - weighted(x - step, y)[0]) / (2.0 * step)
        dy = (weighted(x, y + step)[1] - weighted(x, y - step)[1]) / (2.0 * step)
        return 0.5 * (dx + dy) / (lm0 * lm0)

    return _richardson(estimate, h, tol)


def mean_curvature_pde(
    space: AmbientSpace,
    u: GraphFunction,
    x: float,
    y: float,
    h: float = DEFAULT_STEP,
    tol: float = DEFAULT_STEP_TOL,
) -> float:
    """Mean curvature from the quasilinear equation on the half-plane."""
    if space.model is not Model.HALF_PLANE:
        raise DomainError("the quasilinear oracle is written for the half-plane model")
    _check_stencil(space, u, x, y, 2.0 * h)
    lm = 1.0 / y
    tau = space.tau
    ux, uy = u.gradient(x, y)

    def estimate(step):
        gxp, gyp = u.gradient(x + step, y)
        gxm, gym = u.gradient(x - step, y)
        hxp, hyp = u.gradient(x, y + step)
        hxm, hym = u.gradient(x, y - step)
        uxx = (gxp - gxm) / (2.0 * step)
        uyy = (hyp - hym) / (2.0 * step)
        uxy = 0.5 * ((gyp - gym) + (hxp - hxm)) / (2.0 * step)
        p = ux - 2.0 * tau * lm
        m = math.sqrt(lm * lm + p * p + uy * uy)
        rhs = (
            uxx * (lm ** 3 + lm * uy * uy)
            + uyy * lm * (lm * lm + p * p)
            - 2.0 * uxy * lm * p * uy
            - ux * uy * lm * lm * p
            - lm * lm * uy ** 3
        )
        return rhs / (2.0 * lm * lm * m ** 3)

    return _richardson(estimate, h, tol)


def mean_curvature(space: AmbientSpace, u: GraphFunction, x: float, y: float, oracle: str = "div", **kw) -> float:
    """Dispatch to one oracle by name (``"div"`` or ``"pde"``)."""
    if oracle == "div":
        return mean_curvature_div(space, u, x, y, **kw)
    if oracle == "pde":
        return mean_curvature_pde(space, u, x, y, **kw)
    raise ValueError(f"unknown oracle {oracle!r}")


# --------------------------------------------------------------------------
# moving graphs by isometries
# --------------------------------------------------------------------------

def push_graph(space: AmbientSpace, f: MobiusSpec, c: float, u: GraphFunction) -> GraphFunction:
    """Graph of ``F(Sigma(u))`` for the isometry ``F(z, t) = (f z, t - 2 tau arg f' + c)``.

    The image is again a vertical graph because ``F`` maps fibers to fibers.
    The gradient of the result is left to finite differences.
    """
    finv = f.inverse()

    def pushed(x, y):
        z = finv(complex(x, y))
        return isometry_apply(space, f, c, (z.real, z.imag, u(z.real, z.imag))).t

    def inside(x, y):
        if not space.contains(x, y):
            return False
        z = finv(complex(x, y))
        return space.contains(z.real, z.imag) and u.contains(z.real, z.imag)

    return GraphFunction(pushed, None, inside)


def disk_graph_to_half_plane(tau: float, u: GraphFunction) -> GraphFunction:
    """Transport a disk graph through the Cayley lift so the half-plane oracle applies."""
    disk = AmbientSpace(Model.DISK, tau)

    def moved(x, y):
        q = cayley_lift_inverse(tau, (x, y, 0.0))
        return cayley_lift(tau, (q.x, q.y, u(q.x, q.y))).t

    def inside(x, y):
        if y <= 0:
            return False
        q = cayley_lift_inverse(tau, (x, y, 0.0))
        return disk.contains(q.x, q.y) and u.contains(q.x, q.y)

    return GraphFunction(moved, None, inside)
