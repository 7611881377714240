"""Generating curves of parabolic and parabolic-screw CMC surfaces.

In the half-plane model the parabolic isometries are the horizontal
translations ``x -> x + b``.  The surface ``(x, y) -> (x, y, u(y) + pitch * x)``
has mean curvature ``H`` iff

    u'(y) = (d y - 2H) sqrt(1 + (pitch y - 2 tau)^2) / (y sqrt(1 - (d y - 2H)^2)).

Near the asymptotic boundary ``y -> 0`` with ``0 < H < 1/2`` the integrand
behaves like ``K / y`` with ``K = -2H sqrt(1 + 4 tau^2) / sqrt(1 - 4H^2)``; that
part is integrated in closed form below ``y = 1e-3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curvature import GraphFunction
from .curves import EMBEDDED, ParProfileCurve, Regime, RegimeReport
from .errors import DomainError, EmptyFamily, InvalidH, OutsideDomain
from .quadrature import LOG, SQRT, EndpointIntegrator
from .rot_profiles import DEFAULT_TOL, _close, _is_half

LOG_SPLIT = 1e-3
DEFAULT_Y_MIN_FRACTION = 1e-3


@dataclass(frozen=True)
class ParScrewParams:
    H: float
    d: float
    tau: float = -0.5
    pitch: float = 0.0

    def __post_init__(self):
        if not (self.H >= 0 and math.isfinite(self.H)):
            raise InvalidH(f"H>=0 required, got H={self.H!r}")


@dataclass(frozen=True)
class ParDomain:
    """Where the parabolic profile lives.

    ``lo``/``hi`` bound the open-or-closed interval of heights ``y``;
    ``lo_kind``/``hi_kind`` describe the integrand there (``"sqrt"`` for a
    vertical tangent, ``"log"`` for the ``K/y`` blow-up, ``None`` otherwise).
    """

    lo: float
    hi: float
    lo_kind: Optional[str]
    hi_kind: Optional[str]
    y1: Optional[float] = None
    y0: Optional[float] = None
    y2: Optional[float] = None
    regime: Regime = Regime.SLICE
    lo_flag: str = "asymptotic_boundary"
    hi_flag: str = "vertical_tangent"

    @property
    def critical(self) -> dict:
        return {k: v for k, v in (("y1", self.y1), ("y0", self.y0), ("y2", self.y2)) if v is not None}


def par_domain(H: float, d: float) -> ParDomain:
    """Domain of the parabolic profile for ``(H, d)`` with its critical heights."""
    if not (H >= 0 and math.isfinite(H) and math.isfinite(d)):
        raise InvalidH(f"H>=0 required, got H={H!r}")
    if H == 0.0:
        if d == 0.0:
            return ParDomain(0.0, math.inf, None, None, regime=Regime.SLICE, hi_flag="asymptotic")
        top = 1.0 / abs(d)
        return ParDomain(0.0, top, None, SQRT, y2=top, regime=Regime.VERTICAL_GRAPH)
    if _is_half(H):
        if not d > 0:
            raise EmptyFamily(f"d>0 required for H=1/2 (got d={d!r})")
        return ParDomain(0.0, 2.0 / d, None, SQRT, y0=1.0 / d, y2=2.0 / d, regime=Regime.IMMERSED_ANNULUS)
    if H > 0.5:
        if not d > 0:
            raise EmptyFamily(f"d>0 required for H>1/2 (got d={d!r})")
        y1, y2 = (2.0 * H - 1.0) / d, (2.0 * H + 1.0) / d
        return ParDomain(y1, y2, SQRT, SQRT, y1=y1, y0=2.0 * H / d, y2=y2,
                         regime=Regime.IMMERSED_ANNULUS, lo_flag="vertical_tangent")
    if d == 0.0:
        return ParDomain(0.0, math.inf, LOG, None, regime=Regime.ENTIRE_GRAPH, hi_flag="asymptotic")
    if d > 0:
        y2 = (2.0 * H + 1.0) / d
        return ParDomain(0.0, y2, LOG, SQRT, y0=2.0 * H / d, y2=y2, regime=Regime.IMMERSED_ANNULUS)
    y2 = (1.0 - 2.0 * H) / (-d)
    return ParDomain(0.0, y2, LOG, SQRT, y2=y2, regime=Regime.EMBEDDED_ANNULUS)


_NOTES = {
    Regime.SLICE: "minimal slice t=const",
    Regime.VERTICAL_GRAPH: "minimal vertical graph over 0<y<1/|d|, reaches the asymptotic boundary at finite height",
    Regime.ENTIRE_GRAPH: "entire graph, the d->0 limit surface",
    Regime.EMBEDDED_ANNULUS: "properly embedded annulus symmetric about t=0, asymptotic to the asymptotic boundary",
}


def classify_parabolic(H: float, d: float) -> RegimeReport:
    dom = par_domain(H, d)
    regime = dom.regime
    if regime is Regime.IMMERSED_ANNULUS:
        if H > 0.5 and not _is_half(H):
            notes = f"immersed annulus between the vertical cylinders y={dom.y1!r} and y={dom.y2!r}, vertically periodic"
        elif _is_half(H):
            notes = "immersed annulus symmetric about t=0, asymptotic to the asymptotic boundary"
        else:
            notes = "properly immersed annulus symmetric about t=0, asymptotic to the asymptotic boundary"
    else:
        notes = _NOTES[regime]
    return RegimeReport("parabolic", regime, H, d, dom.critical, None, regime in EMBEDDED, notes)


class ParabolicProfile:
    """Exact integrand, domain and quadrature for one parabolic parameter set.

    The height vanishes at ``y0`` when it exists, otherwise at the finite
    upper end, otherwise at ``y = 1``.
    """

    def __init__(self, params: ParScrewParams, tol: float = DEFAULT_TOL):
        self.params = params
        self.tol = tol
        self.domain = par_domain(params.H, params.d)
        self.report = classify_parabolic(params.H, params.d)
        self.regime = self.domain.regime
        self._H = 0.5 if _is_half(params.H) else params.H
        dom = self.domain
        self.lo, self.hi = dom.lo, dom.hi
        if dom.y0 is not None:
            self.reference = dom.y0
        elif math.isfinite(dom.hi):
            self.reference = dom.hi
        else:
            self.reference = 1.0
        k = 0.0
        if dom.lo_kind == LOG:
            H, tau = self._H, params.tau
            k = -2.0 * H * math.sqrt(1.0 + 4.0 * tau * tau) / math.sqrt(1.0 - 4.0 * H * H)
        self.log_coeff = k
        split = min(LOG_SPLIT, 0.25 * dom.hi) if math.isfinite(dom.hi) else LOG_SPLIT
        self._integrator = EndpointIntegrator(
            self.du, dom.lo, dom.hi, dom.lo_kind, dom.hi_kind, log_coeff=k, log_split=split, tol=tol
        )

    def _radicand(self, y: float, lo_gap=None, hi_gap=None) -> float:
        """``1 - (d y - 2H)^2`` with the vanishing factor taken from the gap."""
        d = self.params.d
        g = d * y - 2.0 * self._H
        one_minus, one_plus = 1.0 - g, 1.0 + g
        dom = self.domain
        # at an endpoint e with g(e) = s (s = +-1): 1 - s g = s d (e - y)
        if hi_gap is not None and dom.hi_kind == SQRT:
            s = 1.0 if d * dom.hi - 2.0 * self._H > 0 else -1.0
            if s > 0:
                one_minus = d * hi_gap
            else:
                one_plus = -d * hi_gap
        if lo_gap is not None and dom.lo_kind == SQRT:
            # lower vertical tangent only occurs for H > 1/2, where g(y1) = -1
            one_plus = d * lo_gap
        return one_minus * one_plus

    def du(self, y: float, lo_gap=None, hi_gap=None) -> float:
        """``du/dy``; raises :class:`OutsideDomain` off the open domain."""
        p = self.params
        if not y > 0:
            raise OutsideDomain(f"y={y!r} must be positive")
        if self.regime is Regime.SLICE:
            return 0.0
        rad = self._radicand(y, lo_gap, hi_gap)
        if not rad > 0:
            raise OutsideDomain(f"|dy-2H| >= 1 at y={y!r}")
        g = p.d * y - 2.0 * self._H
        w = p.pitch * y - 2.0 * p.tau
        return g * math.sqrt(1.0 + w * w) / (y * math.sqrt(rad))

    def endpoint_slope(self, which: str) -> float:
        dom = self.domain
        kind = dom.lo_kind if which == "lo" else dom.hi_kind
        y = dom.lo if which == "lo" else dom.hi
        if kind == SQRT:
            return math.copysign(math.inf, self.params.d * y - 2.0 * self._H)
        raise ValueError("endpoint is not a vertical tangent")

    def height(self, y: float) -> float:
        if not (self.lo < y <= self.hi or (self.lo == y and self.domain.lo_kind == SQRT)):
            raise OutsideDomain(f"y={y!r} outside the profile domain")
        if self.regime is Regime.SLICE:
            return 0.0
        return self._integrator.integral(self.reference, y)

    def nodes(self, n: int, y_min: Optional[float] = None, y_max: Optional[float] = None) -> np.ndarray:
        if n < 2:
            raise ValueError("need at least two samples")
        dom = self.domain
        scale = dom.hi if math.isfinite(dom.hi) else 1.0
        top = dom.hi if math.isfinite(dom.hi) else (y_max if y_max is not None else 10.0 * scale)
        if y_max is not None:
            top = min(top, y_max)
        s = np.linspace(0.0, 1.0, n)
        hi_sing = dom.hi_kind == SQRT and top == dom.hi
        if dom.lo > 0:
            bottom = dom.lo if y_min is None else max(y_min, dom.lo)
            if bottom == dom.lo and hi_sing:
                y = 0.5 * (bottom + top) - 0.5 * (top - bottom) * np.cos(np.pi * s)
            else:
                y = bottom + (top - bottom) * s
        else:
            bottom = DEFAULT_Y_MIN_FRACTION * scale if y_min is None else y_min
            if not 0 < bottom < top:
                raise ValueError(f"need 0 < y_min < {top!r}")
            w = 1.0 - (1.0 - s) ** 2 if hi_sing else s
            y = np.exp(math.log(bottom) + (math.log(top) - math.log(bottom)) * w)
        y[0], y[-1] = bottom, top
        return y

    def sample(self, n: int = 512, y_min: Optional[float] = None, y_max: Optional[float] = None) -> ParProfileCurve:
        y = self.nodes(n, y_min, y_max)
        dom = self.domain
        if self.regime is Regime.SLICE:
            u = np.zeros_like(y)
        else:
            cum = np.asarray(self._integrator.cumulative(y.tolist()))
            u = cum - self._integrator.integral(y[0], self.reference)
        slope = np.empty_like(y)
        for i, v in enumerate(y):
            if i == 0 and v == dom.lo and dom.lo_kind == SQRT:
                slope[i] = self.endpoint_slope("lo")
            elif i == len(y) - 1 and v == dom.hi and dom.hi_kind == SQRT:
                slope[i] = self.endpoint_slope("hi")
            else:
                slope[i] = self.du(v)
        flags = {
            "lo": dom.lo_flag,
            "hi": dom.hi_flag if y[-1] == dom.hi else "asymptotic",
        }
        return ParProfileCurve(y, u, slope, (dom.lo, dom.hi), flags, self.params, self.regime, self.reference)

    def graph(self) -> GraphFunction:
        """The swept surface as a graph ``t = u(y) + pitch x`` over the half-plane."""
        pitch = self.params.pitch
        lo, hi = self.lo, self.hi

        def u(x, y):
            return self.height(y) + pitch * x

        def grad(x, y):
            return pitch, self.du(y)

        def inside(x, y):
            return lo < y < hi

        return GraphFunction(u, grad, inside)


def par_integrand(p: ParScrewParams, y: float) -> float:
    """``du/dy`` of the parabolic screw profile at ``y``."""
    if not y > 0:
        raise OutsideDomain(f"y={y!r} must be positive")
    g = p.d * y - 2.0 * p.H
    if not abs(g) < 1.0:
        raise OutsideDomain(f"|dy-2H| = {abs(g)!r} >= 1 at y={y!r}")
    w = p.pitch * y - 2.0 * p.tau
    return g * math.sqrt(1.0 + w * w) / (y * math.sqrt(1.0 - g * g))


def par_profile_numeric(
    p: ParScrewParams, n: int = 512, y_min: Optional[float] = None, y_max: Optional[float] = None, tol: float = DEFAULT_TOL
) -> ParProfileCurve:
    """Sample the parabolic generating curve at ``n`` heights.

    Profiles reaching the asymptotic boundary are cut at ``y_min`` (default
    ``1e-3`` times the upper end).
    """
    return ParabolicProfile(p, tol).sample(n, y_min, y_max)


def par_closed_form(H: float, d: float, tau: float, y: float) -> float:
    """Explicit parabolic heights for ``H = 0``, ``H = 1/2`` and ``H > 1/2``.

    With ``K = sqrt(1 + 4 tau^2)`` and ``phi = arcsin(d y - 2H)``:

    * ``H = 0``: ``K arcsin(d y)``
    * ``H = 1/2``: ``K (phi + 2 / (tan(phi/2) + 1))``
    * ``H > 1/2``: ``K (phi - 4H/sqrt(4H^2-1) arctan((2H tan(phi/2) + 1)/sqrt(4H^2-1)))``

    On the profile domain ``phi`` stays in ``[-pi/2, pi/2]``, so
    ``tan(phi/2)`` is in ``[-1, 1]`` and every expression is continuous; the
    ``H = 1/2`` pole ``tan(phi/2) = -1`` sits at ``y = 0``.
    """
    if not y > 0:
        raise DomainError("y must be positive")
    k = math.sqrt(1.0 + 4.0 * tau * tau)
    half = _is_half(H)
    if H == 0.0:
        arg = d * y
    elif half:
        arg = d * y - 1.0
    elif H > 0.5:
        arg = d * y - 2.0 * H
    else:
        raise DomainError(f"no closed form for 0<H<1/2 (H={H!r})")
    if abs(arg) > 1.0 + 1e-15:
        raise DomainError(f"y={y!r} outside the profile domain")
    phi = math.asin(max(-1.0, min(1.0, arg)))
    if H == 0.0:
        return k * phi
    t = math.tan(0.5 * phi)
    if half:
        if t <= -1.0:
            raise DomainError("the H=1/2 closed form is singular at y=0")
        return k * (phi + 2.0 / (t + 1.0))
    s = math.sqrt(4.0 * H * H - 1.0)
    return k * (phi - (4.0 * H / s) * math.atan((2.0 * H * t + 1.0) / s))


def par_limit_surface(H: float, tau: float, y: float) -> float:
    """``F(y) = -2 sqrt(1 + 4 tau^2) H log(y) / sqrt(1 - 4H^2)``, the ``d -> 0`` limit."""
    if not (0.0 < H < 0.5):
        raise DomainError(f"0<H<1/2 required (H={H!r})")
    if not y > 0:
        raise DomainError("y must be positive")
    return -2.0 * math.sqrt(1.0 + 4.0 * tau * tau) * H * math.log(y) / math.sqrt(1.0 - 4.0 * H * H)
