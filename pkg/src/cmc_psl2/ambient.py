"""Geometry of the homogeneous space PSL2(R, tau).

Points are triples ``(x, y, t)`` where ``(x, y)`` lies in a model of the
hyperbolic plane (Poincare disk or upper half-plane) and ``t`` is the fiber
coordinate.  The metric is

    g = lam^2 (dx^2 + dy^2) + (2 tau (lam_y/lam dx - lam_x/lam dy) + dt)^2

with ``lam = 2 / (1 - x^2 - y^2)`` on the disk and ``lam = 1 / y`` on the
half-plane.  Derivatives of ``lam`` are analytic so that the curvature
oracles downstream only ever difference the height function.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InvalidIsometry


class Model(enum.Enum):
    DISK = "disk"
    HALF_PLANE = "half-plane"


@dataclass(frozen=True)
class AmbientSpace:
    model: Model
    tau: float = -0.5

    def contains(self, x: float, y: float) -> bool:
        if self.model is Model.DISK:
            return x * x + y * y < 1.0
        return y > 0.0

    def check(self, x: float, y: float) -> None:
        if not (math.isfinite(x) and math.isfinite(y)) or not self.contains(x, y):
            raise DomainError(f"({x!r}, {y!r}) is not in the open {self.model.value} model")


class Point3(NamedTuple):
    x: float
    y: float
    t: float


class ConformalFactor(NamedTuple):
    lam: float
    lam_x: float
    lam_y: float


class Frame(NamedTuple):
    E1: np.ndarray
    E2: np.ndarray
    E3: np.ndarray


def conformal_factor(space: AmbientSpace, x: float, y: float) -> ConformalFactor:
    """Return ``lam`` and its analytic partial derivatives at ``(x, y)``."""
    space.check(x, y)
    if space.model is Model.DISK:
        lam = 2.0 / (1.0 - (x * x + y * y))
        # d/dx [2/(1-r^2)] = 4x/(1-r^2)^2 = lam^2 x
        return ConformalFactor(lam, lam * lam * x, lam * lam * y)
    return ConformalFactor(1.0 / y, 0.0, -1.0 / (y * y))


def lam(space: AmbientSpace, x: float, y: float) -> float:
    """Conformal factor of the hyperbolic metric at ``(x, y)``."""
    return conformal_factor(space, x, y).lam


def connection_coefficients(space: AmbientSpace, x: float, y: float) -> tuple[float, float]:
    """Coefficients ``(a, b)`` of the vertical one-form ``a dx + b dy + dt``."""
    lm, lx, ly = conformal_factor(space, x, y)
    return 2.0 * space.tau * ly / lm, -2.0 * space.tau * lx / lm


def metric_tensor(space: AmbientSpace, p) -> np.ndarray:
    """Matrix of ``g`` at ``p`` in the coordinate basis (dx, dy, dt)."""
    x, y = p[0], p[1]
    lm = conformal_factor(space, x, y).lam
    a, b = connection_coefficients(space, x, y)
    l2 = lm * lm
    return np.array(
        [
            [l2 + a * a, a * b, a],
            [a * b, l2 + b * b, b],
            [a, b, 1.0],
        ]
    )


def frame(space: AmbientSpace, p) -> Frame:
    """Orthonormal frame: horizontal lifts E1, E2 of the base frame and E3 = d/dt."""
    lm, lx, ly = conformal_factor(space, p[0], p[1])
    tau = space.tau
    e1 = np.array([1.0 / lm, 0.0, -2.0 * tau * ly / (lm * lm)])
    e2 = np.array([0.0, 1.0 / lm, 2.0 * tau * lx / (lm * lm)])
    return Frame(e1, e2, np.array([0.0, 0.0, 1.0]))


def complex_form_metric(space: AmbientSpace, p) -> np.ndarray:
    """The metric rebuilt from its complex-coordinate expression.

    Disk: ``lam^2 |dz|^2 + (i tau lam (conj(z) dz - z conj(dz)) + dt)^2``.
    Half-plane: ``lam^2 |dz|^2 + (-tau lam (dz + conj(dz)) + dt)^2``.
    Used only as an independent check on :func:`metric_tensor`.
    """
    x, y = p[0], p[1]
    space.check(x, y)
    z = complex(x, y)
    tau = space.tau
    if space.model is Model.DISK:
        lm = 2.0 / (1.0 - abs(z) ** 2)
        # coefficient of dz and conj(dz) in the vertical form
        cz = 1j * tau * lm * z.conjugate()
        czb = -1j * tau * lm * z
    else:
        lm = 1.0 / y
        cz = -tau * lm
        czb = -tau * lm
    # dz = dx + i dy, conj(dz) = dx - i dy
    a = cz + czb
    b = 1j * (cz - czb)
    if abs(a.imag) > 1e-12 * (1 + abs(a)) or abs(b.imag) > 1e-12 * (1 + abs(b)):
        raise ArithmeticError("vertical form is not real")
    a, b = a.real, b.real
    w = np.array([a, b, 1.0])
    return lm * lm * np.diag([1.0, 1.0, 0.0]) + np.outer(w, w)


# --------------------------------------------------------------------------
# polar coordinates on the disk
# --------------------------------------------------------------------------

def polar_to_cartesian(rho: float, theta: float) -> tuple[float, float]:
    """Hyperbolic polar coordinates about the origin of the disk."""
    if rho < 0:
        raise DomainError("rho must be non-negative")
    r = math.tanh(0.5 * rho)
    return r * math.cos(theta), r * math.sin(theta)


def cartesian_to_polar(x: float, y: float) -> tuple[float, float]:
    r = math.hypot(x, y)
    if r >= 1.0:
        raise DomainError(f"({x!r}, {y!r}) is not in the open disk")
    return 2.0 * math.atanh(r), math.atan2(y, x) % (2.0 * math.pi)


# --------------------------------------------------------------------------
# positive isometries
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MobiusSpec:
    """Moebius map ``z -> (a z + b) / (c z + d)`` tagged with its model.

    Disk maps must have the form ``(alpha z + beta) / (conj(beta) z + conj(alpha))``
    with ``|alpha| > |beta|``; half-plane maps must have real coefficients and
    ``ad - bc > 0``.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    model: Model

    def __post_init__(self):
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        scale = max(abs(a), abs(b), abs(c), abs(d))
        tol = 1e-12 * scale
        if self.model is Model.HALF_PLANE:
            if max(abs(a.imag), abs(b.imag), abs(c.imag), abs(d.imag)) > tol:
                raise InvalidIsometry("half-plane isometries need real coefficients")
            if (a * d - b * c).real <= 0:
                raise InvalidIsometry("ad - bc must be positive (orientation-preserving)")
        else:
            if abs(c - b.conjugate()) > tol or abs(d - a.conjugate()) > tol:
                raise InvalidIsometry("disk isometries must have the form (az+b)/(conj(b)z+conj(a))")
            if abs(a) <= abs(b):
                raise InvalidIsometry("|a| > |b| required for a positive disk isometry")

    @classmethod
    def identity(cls, model: Model) -> "MobiusSpec":
        return cls(1, 0, 0, 1, model)

    @classmethod
    def rotation(cls, theta0: float) -> "MobiusSpec":
        """Rotation of the disk by ``theta0`` about the origin."""
        h = cmath.exp(0.5j * theta0)
        return cls(h, 0, 0, h.conjugate(), Model.DISK)

    @classmethod
    def disk_automorphism(cls, alpha: complex, beta: complex) -> "MobiusSpec":
        return cls(alpha, beta, complex(beta).conjugate(), complex(alpha).conjugate(), Model.DISK)

    @classmethod
    def translation(cls, shift: float) -> "MobiusSpec":
        """Parabolic translation ``z -> z + shift`` of the half-plane."""
        return cls(1, shift, 0, 1, Model.HALF_PLANE)

    @classmethod
    def dilation(cls, k: float) -> "MobiusSpec":
        if k <= 0:
            raise InvalidIsometry("dilation factor must be positive")
        return cls(k, 0, 0, 1, Model.HALF_PLANE)

    def __call__(self, z: complex) -> complex:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def derivative(self, z: complex) -> complex:
        det = self.a * self.d - self.b * self.c
        return det / (self.c * z + self.d) ** 2

    def arg_derivative(self, z: complex) -> float:
        """A branch of ``arg f'(z)`` that is continuous on the whole model."""
        # arg f' = arg(ad - bc) - 2 arg(cz + d), with ad - bc > 0
        if self.model is Model.HALF_PLANE:
            # Im(cz + d) = c y keeps one sign on the half-plane
            return -2.0 * cmath.phase(self.c * z + self.d)
        # |c z| < |d| on the disk, so 1 + cz/d stays in the right half-plane
        return -2.0 * (cmath.phase(self.d) + cmath.phase(1 + self.c * z / self.d))

    def inverse(self) -> "MobiusSpec":
        return MobiusSpec(self.d, -self.b, -self.c, self.a, self.model)


def isometry_apply(space: AmbientSpace, f: MobiusSpec, c: float, p) -> Point3:
    """Apply ``F(z, t) = (f(z), t - 2 tau arg f'(z) + c)``."""
    if f.model is not space.model:
        raise InvalidIsometry(f"map is tagged {f.model.value}, space is {space.model.value}")
    space.check(p[0], p[1])
    z = complex(p[0], p[1])
    w = f(z)
    return Point3(w.real, w.imag, p[2] - 2.0 * space.tau * f.arg_derivative(z) + c)


def cayley_lift(tau: float, p) -> Point3:
    """Isometry from the disk model onto the half-plane model.

    The base map is ``z -> i (1 + z) / (1 - z)``; the fiber coordinate is
    corrected by ``-2 tau arg f'`` exactly as for isometries within a model.
    """
    AmbientSpace(Model.DISK, tau).check(p[0], p[1])
    z = complex(p[0], p[1])
    w = 1j * (1 + z) / (1 - z)
    return Point3(w.real, w.imag, p[2] - 2.0 * tau * _cayley_arg(z))


def _cayley_arg(z: complex) -> float:
    # arg of 2i/(1-z)^2 on the branch continuous over the disk (Re(1-z) > 0)
    return 0.5 * math.pi - 2.0 * cmath.phase(1 - z)


def cayley_lift_inverse(tau: float, p) -> Point3:
    AmbientSpace(Model.HALF_PLANE, tau).check(p[0], p[1])
    w = complex(p[0], p[1])
    z = (w - 1j) / (w + 1j)
    return Point3(z.real, z.imag, p[2] + 2.0 * tau * _cayley_arg(z))
