"""Generating curves of rotational and rotational-screw CMC surfaces.

A screw-motion surface is swept by ``(rho, theta) -> (tanh(rho/2) e^{i theta},
u(rho) + pitch * theta)`` in the disk model.  Integrating the divergence form
of the mean curvature equation over an annulus gives the first integral

    sinh(rho) u' / W = 2 H cosh(rho) + d,
    W^2 = 1 + u'^2 + (pitch / sinh(rho) - 2 tau tanh(rho/2))^2,

hence

    u'(rho) = g(rho) sqrt(1 + A(rho)^2) / sqrt(f(rho)),
    g = d + 2 H cosh(rho),   f = sinh(rho)^2 - g^2,
    A = pitch / sinh(rho) - 2 tau tanh(rho/2).

The pitch term uses ``pitch / sinh(rho)``; the alternative
``pitch / sinh(rho)^2`` fails the curvature oracle on sampled screw surfaces
(see ``tests/test_rot_profiles.py::test_pitch_term_selected_by_oracle``).
With ``pitch = 0`` the twist factor is ``sqrt(1 + 4 tau^2 tanh(rho/2)^2)``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curvature import GraphFunction
from .curves import EMBEDDED, ProfileCurve, Regime, RegimeReport
from .errors import DomainError, EmptyFamily, InvalidH, OutsideDomain
from .quadrature import SQRT, EndpointIntegrator

ATOL = 1e-14  # relative; regime boundaries only absorb input rounding
DEFAULT_TOL = float(os.environ.get("CMC_PSL2_TOL", "1e-10"))
DEFAULT_RHO_SPAN = 5.0


@dataclass(frozen=True)
class RotScrewParams:
    H: float
    d: float
    tau: float = -0.5
    pitch: float = 0.0

    def __post_init__(self):
        if not (self.H >= 0 and math.isfinite(self.H)):
            raise InvalidH(f"H>=0 required, got H={self.H!r}")


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= ATOL * max(1.0, abs(b))


def _is_half(H: float) -> bool:
    return _close(H, 0.5)


# --------------------------------------------------------------------------
# the functions f and g
# --------------------------------------------------------------------------

def g_fun(H: float, d: float, rho):
    """``g(rho) = d + 2 H cosh(rho)``; the sign of ``u'``."""
    return d + 2.0 * H * np.cosh(rho)


def f_poly(H: float, d: float, rho):
    """``f(rho) = sinh(rho)^2 - (d + 2 H cosh(rho))^2``; ``u`` exists where ``f > 0``."""
    return np.sinh(rho) ** 2 - g_fun(H, d, rho) ** 2


def f_expanded(H: float, d: float, rho):
    """The same ``f`` written as a quadratic in ``cosh(rho)``."""
    c = np.cosh(rho)
    return (1.0 - 4.0 * H * H) * c * c - 4.0 * H * d * c - (1.0 + d * d)


def _quadratic_roots(H: float, d: float) -> tuple[float, float]:
    """Roots in ``c = cosh(rho)`` of ``f``; requires ``1 - 4H^2 + d^2 >= 0``."""
    a = 1.0 - 4.0 * H * H
    b = -4.0 * H * d
    cc = -(1.0 + d * d)
    disc = 2.0 * math.sqrt(max(1.0 - 4.0 * H * H + d * d, 0.0))
    q = -0.5 * (b + math.copysign(disc, b if b != 0 else 1.0))
    return q / a, cc / q


def _acosh1(c: float) -> float:
    # clamp rounding just below 1 onto the axis
    return math.acosh(max(c, 1.0))


def classify_rotational(H: float, d: float) -> RegimeReport:
    """Sort a rotational pair ``(H, d)`` into its regime with critical radii."""
    if not (H >= 0 and math.isfinite(H) and math.isfinite(d)):
        raise InvalidH(f"H>=0 required, got H={H!r}")

    def report(regime, notes="", neck=None, **critical):
        return RegimeReport("rotational", regime, H, d, critical, neck, regime in EMBEDDED, notes)

    if H == 0.0:
        if d == 0.0:
            return report(Regime.SLICE, "minimal slice t=const")
        rho1 = math.asinh(abs(d))
        notes = "minimal catenoid" if d > 0 else "minimal catenoid, reflected (u decreasing)"
        return report(Regime.CATENOID, notes, rho1, rho1=rho1)

    if H < 0.5 and not _is_half(H):
        if _close(d, -2.0 * H):
            return report(Regime.ENTIRE_GRAPH, "entire vertical graph tangent to t=0 at the origin", rho1=0.0)
        c_big, c_small = _quadratic_roots(H, d)
        rho1 = _acosh1(max(c_big, c_small))
        if d > -2.0 * H:
            return report(Regime.EMBEDDED_ANNULUS, "properly embedded annulus", rho1, rho1=rho1)
        rho0 = math.acosh(-d / (2.0 * H))
        return report(Regime.IMMERSED_ANNULUS, "properly immersed annulus", rho1, rho1=rho1, rho0=rho0)

    if _is_half(H):
        if not d < 0:
            raise EmptyFamily(f"d<0 required for H=1/2 (got d={d!r})")
        if _close(d, -1.0):
            return report(Regime.ENTIRE_GRAPH, "entire vertical graph tangent to t=0 at the origin", rho1=0.0)
        rho1 = _acosh1((1.0 + d * d) / (-2.0 * d))
        if d > -1.0:
            return report(Regime.EMBEDDED_ANNULUS, "properly embedded annulus", rho1, rho1=rho1)
        rho0 = math.acosh(-d)
        return report(Regime.IMMERSED_ANNULUS, "properly immersed annulus", rho1, rho1=rho1, rho0=rho0)

    s = math.sqrt(4.0 * H * H - 1.0)
    if _close(d, -s):
        rho_c = math.acosh(2.0 * H / s)
        return report(Regime.CYLINDER, "vertical cylinder", rho_c, rho1=rho_c, rho2=rho_c)
    if d > -s:
        raise EmptyFamily(f"d<=-sqrt(4H^2-1) required for H>1/2 (got H={H!r}, d={d!r})")
    if _close(d, -2.0 * H):
        rho2 = math.acosh((4.0 * H * H + 1.0) / (4.0 * H * H - 1.0))
        return report(Regime.SPHERE, "embedded rotational sphere", rho1=0.0, rho2=rho2)
    r1, r2 = _quadratic_roots(H, d)
    rho1, rho2 = _acosh1(min(r1, r2)), math.acosh(max(r1, r2))
    if d < -2.0 * H:
        rho0 = math.acosh(-d / (2.0 * H))
        return report(
            Regime.NODOID, "immersed nodoid-type annulus, vertically periodic", rho1, rho1=rho1, rho0=rho0, rho2=rho2
        )
    return report(Regime.UNDULOID, "embedded unduloid-type annulus, vertically periodic", rho1, rho1=rho1, rho2=rho2)


# --------------------------------------------------------------------------
# integrand and quadrature
# --------------------------------------------------------------------------

def _cosh_gap(rho_e: float, gap: float) -> float:
    """``cosh(rho_e + gap) - cosh(rho_e)`` without cancellation."""
    return 2.0 * math.sinh(rho_e + 0.5 * gap) * math.sinh(0.5 * gap)


class RotationalProfile:
    """Exact integrand, domain and quadrature for one parameter set.

    The height is normalized to vanish at ``reference``: ``rho0`` when the
    profile has an interior horizontal tangent, otherwise the lower end of
    the domain.
    """

    def __init__(self, params: RotScrewParams, tol: float = DEFAULT_TOL):
        self.params = params
        self.tol = tol
        self.report = classify_rotational(params.H, params.d)
        H, d = params.H, params.d
        regime = self.report.regime
        crit = self.report.critical
        self.regime = regime
        self._entire_form = regime in (Regime.ENTIRE_GRAPH, Regime.SPHERE)
        self._half = _is_half(H)
        if self._half:
            H = 0.5
        if self._entire_form:
            d = -2.0 * H
        self._H, self._d = H, d
        self.rho1 = crit.get("rho1")
        self.rho0 = crit.get("rho0")
        self.rho2 = crit.get("rho2")

        if regime is Regime.CYLINDER:
            self.lo = self.hi = self.rho1
            self.lo_kind = self.hi_kind = SQRT
        elif regime in (Regime.SLICE, Regime.ENTIRE_GRAPH):
            self.lo, self.hi, self.lo_kind, self.hi_kind = 0.0, math.inf, None, None
        elif regime is Regime.SPHERE:
            self.lo, self.hi, self.lo_kind, self.hi_kind = 0.0, self.rho2, None, SQRT
        elif regime in (Regime.NODOID, Regime.UNDULOID):
            self.lo, self.hi, self.lo_kind, self.hi_kind = self.rho1, self.rho2, SQRT, SQRT
        else:
            self.lo, self.hi, self.lo_kind, self.hi_kind = self.rho1, math.inf, SQRT, None
        self.reference = self.rho0 if self.rho0 is not None else self.lo

        # roots of f in c = cosh(rho) for the factored evaluation
        if not self._entire_form and regime not in (Regime.SLICE, Regime.CYLINDER):
            if self._half:
                self._roots = ((1.0 + d * d) / (-2.0 * d),)
            else:
                self._roots = _quadratic_roots(H, d)
        else:
            self._roots = ()
        self._integrator = None
        if regime is not Regime.CYLINDER:
            self._integrator = EndpointIntegrator(self.du, self.lo, self.hi, self.lo_kind, self.hi_kind, tol=tol)

    # ------------------------------------------------------------------
    def _twist_sq(self, rho: float) -> float:
        p = self.params
        a = p.pitch / math.sinh(rho) - 2.0 * p.tau * math.tanh(0.5 * rho) if p.pitch else -2.0 * p.tau * math.tanh(0.5 * rho)
        return 1.0 + a * a

    def _diff_to_root(self, rho: float, root_c: float, lo_gap, hi_gap) -> float:
        """``cosh(rho) - root_c`` evaluated stably near the domain ends."""
        if root_c >= 1.0:
            root_rho = math.acosh(root_c)
            if lo_gap is not None and self.lo_kind == SQRT and _close(root_rho, self.lo):
                return _cosh_gap(self.lo, lo_gap)
            if hi_gap is not None and self.hi_kind == SQRT and _close(root_rho, self.hi):
                return -_cosh_gap(self.hi - hi_gap, hi_gap)
            return 2.0 * math.sinh(0.5 * (rho + root_rho)) * math.sinh(0.5 * (rho - root_rho))
        return math.cosh(rho) - root_c

    def f(self, rho: float, lo_gap=None, hi_gap=None) -> float:
        """``f`` in factored form, accurate near its roots."""
        H, d = self._H, self._d
        if self._half:
            return -2.0 * d * self._diff_to_root(rho, self._roots[0], lo_gap, hi_gap)
        a = 1.0 - 4.0 * H * H
        r1, r2 = self._roots
        return a * self._diff_to_root(rho, r1, lo_gap, hi_gap) * self._diff_to_root(rho, r2, lo_gap, hi_gap)

    def du(self, rho: float, lo_gap=None, hi_gap=None) -> float:
        """``du/drho``; raises :class:`OutsideDomain` where ``f <= 0``."""
        H, d = self._H, self._d
        p = self.params
        if self.regime is Regime.SLICE:
            return 0.0
        if self.regime is Regime.CYLINDER:
            raise OutsideDomain("the cylinder is vertical; u(rho) is not a function")
        if self._entire_form:
            if rho < 0 or (self.hi_kind == SQRT and rho >= self.hi and hi_gap is None):
                raise OutsideDomain(f"rho={rho!r} outside [0, {self.hi!r})")
            # d = -2H: f = (cosh - 1) ((1 - 4H^2) cosh + 1 + 4H^2), g = 2H (cosh - 1)
            sh = math.sinh(0.5 * rho)
            cm1 = 2.0 * sh * sh
            if self.regime is Regime.SPHERE:
                # (1 - 4H^2) cosh + 1 + 4H^2 = (4H^2 - 1) (cosh(rho2) - cosh)
                k = 4.0 * H * H
                rc = (k + 1.0) / (k - 1.0)
                tail = -(k - 1.0) * self._diff_to_root(rho, rc, None, hi_gap)
            else:
                tail = (1.0 - 4.0 * H * H) * math.cosh(rho) + 1.0 + 4.0 * H * H
            if tail <= 0:
                raise OutsideDomain(f"rho={rho!r} outside the sphere profile")
            # sqrt(cosh - 1) * A with sqrt(cosh - 1)/sinh = 1/(sqrt(2) cosh(rho/2))
            twist = p.pitch / (math.sqrt(2.0) * math.cosh(0.5 * rho)) - 2.0 * p.tau * math.tanh(0.5 * rho) * math.sqrt(cm1)
            return 2.0 * H * math.sqrt(cm1 + twist * twist) / math.sqrt(tail)
        fv = self.f(rho, lo_gap, hi_gap)
        if not fv > 0:
            raise OutsideDomain(f"f(rho)={fv!r} <= 0 at rho={rho!r}")
        g = d + 2.0 * H * math.cosh(rho)
        return g * math.sqrt(self._twist_sq(rho)) / math.sqrt(fv)

    def endpoint_slope(self, which: str) -> float:
        kind = self.lo_kind if which == "lo" else self.hi_kind
        rho = self.lo if which == "lo" else self.hi
        if kind == SQRT:
            return math.copysign(math.inf, self._d + 2.0 * self._H * math.cosh(rho))
        return self.du(rho)

    # ------------------------------------------------------------------
    def height(self, rho: float) -> float:
        """``u(rho)`` with the profile's normalization."""
        if self.regime is Regime.CYLINDER:
            raise OutsideDomain("the cylinder is vertical; u(rho) is not a function")
        if not (self.lo <= rho <= self.hi):
            raise OutsideDomain(f"rho={rho!r} outside [{self.lo!r}, {self.hi!r}]")
        if self.regime is Regime.SLICE:
            return 0.0
        return self._integrator.integral(self.reference, rho)

    def nodes(self, n: int, rho_max: Optional[float] = None) -> np.ndarray:
        """Sample radii clustered towards singular endpoints."""
        if n < 2:
            raise ValueError("need at least two samples")
        top = self.hi if math.isfinite(self.hi) else (rho_max if rho_max is not None else self.lo + DEFAULT_RHO_SPAN)
        if rho_max is not None:
            top = min(top, rho_max)
        if not top > self.lo:
            raise ValueError(f"rho_max={rho_max!r} must exceed the lower end {self.lo!r}")
        s = np.linspace(0.0, 1.0, n)
        lo_sing = self.lo_kind == SQRT
        hi_sing = self.hi_kind == SQRT and top == self.hi
        if lo_sing and hi_sing:
            r = 0.5 * (self.lo + top) - 0.5 * (top - self.lo) * np.cos(np.pi * s)
        elif lo_sing:
            r = self.lo + (top - self.lo) * s * s
        elif hi_sing:
            r = top - (top - self.lo) * (1.0 - s) ** 2
        else:
            r = self.lo + (top - self.lo) * s
        r[0], r[-1] = self.lo, top
        return r

    def sample(self, n: int = 512, rho_max: Optional[float] = None) -> ProfileCurve:
        if self.regime is Regime.CYLINDER:
            return ProfileCurve(
                [self.lo], [0.0], [math.inf], (self.lo, self.hi),
                {"lo": "vertical_tangent", "hi": "vertical_tangent"}, self.params, self.regime, self.lo,
            )
        rho = self.nodes(n, rho_max)
        if self.regime is Regime.SLICE:
            u = np.zeros_like(rho)
        else:
            cum = np.asarray(self._integrator.cumulative(rho.tolist()))
            u = cum - self._integrator.integral(rho[0], self.reference)
        slope = np.empty_like(rho)
        for i, r in enumerate(rho):
            if i == 0:
                slope[i] = self.endpoint_slope("lo")
            elif i == len(rho) - 1 and r == self.hi:
                slope[i] = self.endpoint_slope("hi")
            else:
                slope[i] = self.du(r)
        flags = {
            "lo": "vertical_tangent" if self.lo_kind == SQRT else "zero_derivative",
            "hi": "vertical_tangent" if (self.hi_kind == SQRT and rho[-1] == self.hi) else "asymptotic",
        }
        return ProfileCurve(rho, u, slope, (self.lo, self.hi), flags, self.params, self.regime, self.reference)

    # ------------------------------------------------------------------
    def graph(self) -> GraphFunction:
        """The surface as a (possibly multivalued) graph over the disk.

        The gradient is analytic: ``grad u = u'(rho) grad rho + pitch grad theta``
        with ``|grad rho| = lam``.  For ``pitch != 0`` the angle is the
        principal one, so evaluate away from the negative x-axis.
        """
        pitch = self.params.pitch
        lo, hi = self.lo, self.hi

        def rho_of(x, y):
            return 2.0 * math.atanh(math.hypot(x, y))

        def u(x, y):
            t = self.height(rho_of(x, y))
            return t + pitch * math.atan2(y, x) if pitch else t

        def grad(x, y):
            r2 = x * x + y * y
            r = math.sqrt(r2)
            lam = 2.0 / (1.0 - r2)
            if r == 0.0:
                return 0.0, 0.0
            slope = self.du(rho_of(x, y)) * lam / r
            gx, gy = slope * x, slope * y
            if pitch:
                gx -= pitch * y / r2
                gy += pitch * x / r2
            return gx, gy

        def inside(x, y):
            r2 = x * x + y * y
            if r2 >= 1.0:
                return False
            rho = rho_of(x, y)
            return lo < rho < hi or (lo == 0.0 and rho == 0.0)

        return GraphFunction(u, grad, inside)


def rot_integrand(p: RotScrewParams, rho: float) -> float:
    """``du/drho`` of the screw-motion profile at an interior radius."""
    return RotationalProfile(p).du(rho)


def profile_numeric(p: RotScrewParams, n: int = 512, rho_max: Optional[float] = None, tol: float = DEFAULT_TOL) -> ProfileCurve:
    """Sample the generating curve of ``p`` at ``n`` radii.

    Unbounded profiles are truncated at ``rho_max`` (default: five units
    past the lower end).
    """
    return RotationalProfile(p, tol).sample(n, rho_max)


# --------------------------------------------------------------------------
# closed forms for tau = -1/2, d = -2H
# --------------------------------------------------------------------------

ABOVE = "above"      # 4H^2 > 1, compact sphere profile
CRITICAL = "critical"  # H = 1/2
BELOW = "below"      # 4H^2 < 1


def closed_form_case(H: float) -> str:
    if _is_half(H):
        return CRITICAL
    return ABOVE if H > 0.5 else BELOW


def rot_closed_form(H: float, rho: float, case: Optional[str] = None) -> float:
    """Explicit height of the ``d = -2H`` profile for ``tau = -1/2``.

    With ``c = cosh(rho)`` and ``k = 4 H^2``:

    * ``k > 1``, ``a = (k+1)/(k-1)``::

        u = 4 sqrt(2) H / sqrt(k-1) * arctan(sqrt(c) / sqrt(a - c))
            - 2 arctan(sqrt(2k/(k-1)) sqrt(c) / sqrt(a - c))

    * ``k < 1``, ``b = (1+k)/(1-k)``::

        u = 4 sqrt(2) H / sqrt(1-k) * log(sqrt(c) + sqrt(b + c))
            - 2 arctan(sqrt(2k/(1-k)) sqrt(c) / sqrt(b + c))

    * ``k = 1``: ``u = 2 sqrt(c) - 2 arctan(sqrt(c))``.

    The arctangents are evaluated with ``atan2`` so the ``k > 1`` form is
    continuous up to the equator ``c = a``.  Heights are not normalized.
    """
    if case is None:
        case = closed_form_case(H)
    if case != closed_form_case(H):
        raise DomainError(f"case {case!r} does not match H={H!r}")
    if rho < 0:
        raise DomainError("rho must be non-negative")
    c = math.cosh(rho)
    sc = math.sqrt(c)
    if case == CRITICAL:
        return 2.0 * sc - 2.0 * math.atan(sc)
    k = 4.0 * H * H
    if case == ABOVE:
        a = (k + 1.0) / (k - 1.0)
        if c > a * (1 + 1e-15):
            raise DomainError(f"rho={rho!r} beyond the equator arccosh({a!r})")
        w = math.sqrt(max(a - c, 0.0))
        return (4.0 * math.sqrt(2.0) * H / math.sqrt(k - 1.0)) * math.atan2(sc, w) - 2.0 * math.atan2(
            math.sqrt(2.0 * k / (k - 1.0)) * sc, w
        )
    b = (1.0 + k) / (1.0 - k)
    w = math.sqrt(b + c)
    return (4.0 * math.sqrt(2.0) * H / math.sqrt(1.0 - k)) * math.log(sc + w) - 2.0 * math.atan(
        math.sqrt(2.0 * k / (1.0 - k)) * sc / w
    )


# --------------------------------------------------------------------------
# applications
# --------------------------------------------------------------------------

def growth_coefficient(alpha: float, tau: float) -> float:
    """Leading coefficient of ``u(rho) ~ beta exp(rho/2)`` for ``H = 1/2, d = -alpha``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    return math.sqrt(1.0 + 4.0 * tau * tau) / math.sqrt(alpha)


def end_growth(alpha: float, tau: float, rho: float, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Height of the ``H = 1/2, d = -alpha`` end at ``rho`` and ``u(rho) exp(-rho/2)``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    prof = RotationalProfile(RotScrewParams(0.5, -alpha, tau), tol)
    u = prof.height(rho)
    return u, u * math.exp(-0.5 * rho)


def sphere_barrier(H: float, tau: float = -0.5, n: int = 512) -> tuple[float, ProfileCurve]:
    """The compact ``d = -2H`` sphere profile and its maximal radius."""
    if not H > 0.5 or _is_half(H):
        raise InvalidH(f"H>1/2 required for the sphere barrier (got H={H!r})")
    prof = RotationalProfile(RotScrewParams(H, -2.0 * H, tau))
    return prof.rho2, prof.sample(n)
