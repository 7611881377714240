"""Quadrature of profile integrands with singular endpoints.

Profile integrands blow up like ``1/sqrt(x - e)`` at vertical-tangent
endpoints and, for parabolic curves with ``H > 0``, like ``K/x`` at the
asymptotic boundary ``x -> 0``.  Both are handled before the adaptive
Gauss-Kronrod rule (``scipy.integrate.quad``) sees them:

* inverse square root: ``x = e + s^2`` (or ``e - s^2`` at an upper end),
  which turns ``dx / sqrt(x - e)`` into the bounded ``2 ds``;
* logarithmic: below ``log_split`` the ``K/x`` part is integrated in
  closed form and only the bounded remainder goes to quadrature.

The integrand is called as ``func(x, lo_gap=None, hi_gap=None)``.  When a
substitution is active the exact distance to the singular endpoint is
passed along so the caller can evaluate the vanishing factor without
cancellation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

from scipy import integrate

from .errors import QuadratureFailure

SQRT = "sqrt"
LOG = "log"

QUAD_EPS = 1e-13
QUAD_LIMIT = 200


@dataclass
class EndpointIntegrator:
    """Integrate ``func`` over sub-intervals of ``[lo, hi]``.

    ``lo_kind`` / ``hi_kind`` are ``"sqrt"``, ``"log"`` (lower end only) or
    ``None`` for a regular endpoint.  ``hi`` may be ``math.inf`` when the
    upper end is regular.  An integral is accepted when the error estimate
    is below ``max(tol, rel_tol * |value|)``; ``rel_tol`` defaults to ``tol``.
    """

    func: Callable[..., float]
    lo: float
    hi: float
    lo_kind: Optional[str] = None
    hi_kind: Optional[str] = None
    log_coeff: float = 0.0
    log_split: float = 1e-3
    tol: float = 1e-9
    rel_tol: Optional[float] = None

    def __post_init__(self):
        if self.rel_tol is None:
            self.rel_tol = self.tol
        if self.hi_kind == LOG:
            raise ValueError("logarithmic singularities are supported at the lower end only")
        if self.lo_kind == LOG and self.lo != 0.0:
            raise ValueError("the logarithmic endpoint must sit at x = 0")
        finite = math.isfinite(self.hi)
        if self.hi_kind == SQRT and not finite:
            raise ValueError("a square-root endpoint must be finite")
        width = self.hi - self.lo if finite else math.inf
        # [lo, z1] uses the lower substitution, [z2, hi] the upper one
        if self.lo_kind == SQRT:
            self._z1 = self.lo + (0.5 * width if finite else 1.0)
        elif self.lo_kind == LOG:
            self._z1 = min(self.log_split, 0.25 * width)
        else:
            self._z1 = self.lo
        if self.hi_kind == SQRT:
            self._z2 = self.hi - 0.5 * width
            self._z1 = min(self._z1, self._z2)
        else:
            self._z2 = self.hi

    # ------------------------------------------------------------------
    def _quad(self, g, a, b):
        if a == b:
            return 0.0, 0.0
        # the error estimate is checked by the caller, so the warning is redundant
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, err = integrate.quad(g, a, b, epsabs=QUAD_EPS, epsrel=QUAD_EPS, limit=QUAD_LIMIT)
        return val, err

    def _lower_sqrt(self, a, b):
        lo, f = self.lo, self.func
        return self._quad(lambda s: 2.0 * s * f(lo + s * s, lo_gap=s * s), math.sqrt(a - lo), math.sqrt(b - lo))

    def _upper_sqrt(self, a, b):
        hi, f = self.hi, self.func
        val, err = self._quad(lambda s: 2.0 * s * f(hi - s * s, hi_gap=s * s), math.sqrt(hi - b), math.sqrt(hi - a))
        return val, err

    def _lower_log(self, a, b):
        k, f = self.log_coeff, self.func
        val, err = self._quad(lambda x: f(x) - k / x, a, b)
        return val + k * math.log(b / a), err

    def _plain(self, a, b):
        return self._quad(self.func, a, b)

    def integral_with_error(self, a: float, b: float) -> tuple[float, float]:
        """Return ``(integral, error estimate)`` of ``func`` over ``[a, b]``."""
        if a > b:
            val, err = self.integral_with_error(b, a)
            return -val, err
        if a < self.lo or b > self.hi or (self.lo_kind == LOG and a <= 0.0):
            raise ValueError(f"[{a!r}, {b!r}] leaves the integration domain")
        total = 0.0
        error = 0.0
        pieces = (
            (self.lo, self._z1, {SQRT: self._lower_sqrt, LOG: self._lower_log}.get(self.lo_kind, self._plain)),
            (self._z1, self._z2, self._plain),
            (self._z2, self.hi, self._upper_sqrt if self.hi_kind == SQRT else self._plain),
        )
        for zl, zr, rule in pieces:
            pa, pb = max(a, zl), min(b, zr)
            if pa < pb:
                val, err = rule(pa, pb)
                total += val
                error += err
        return total, error

    def integral(self, a: float, b: float) -> float:
        val, err = self.integral_with_error(a, b)
        if not math.isfinite(val) or err > max(self.tol, self.rel_tol * abs(val)):
            raise QuadratureFailure(f"quadrature error estimate {err:.3g} exceeds tolerance on [{a!r}, {b!r}]")
        return val

    def cumulative(self, nodes) -> list[float]:
        """Integrals from ``nodes[0]`` to every node, accumulated piecewise."""
        out = [0.0]
        total = 0.0
        error = 0.0
        for a, b in zip(nodes[:-1], nodes[1:]):
            val, err = self.integral_with_error(a, b)
            total += val
            error += err
            out.append(total)
        if not math.isfinite(total) or error > max(self.tol, self.rel_tol * max(abs(v) for v in out)):
            raise QuadratureFailure(f"accumulated quadrature error {error:.3g} exceeds tolerance")
        return out
