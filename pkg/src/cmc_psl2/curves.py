"""Data carriers shared by the profile and surface modules."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

REPORT_SCHEMA = "cmc-psl2/regime-report"
REPORT_VERSION = 1


class Regime(str, enum.Enum):
    SLICE = "Slice"
    CATENOID = "Catenoid"
    EMBEDDED_ANNULUS = "EmbeddedAnnulus"
    ENTIRE_GRAPH = "EntireGraph"
    IMMERSED_ANNULUS = "ImmersedAnnulus"
    SPHERE = "Sphere"
    NODOID = "Nodoid"
    UNDULOID = "Unduloid"
    CYLINDER = "Cylinder"
    # parabolic minimal graph over the strip 0 < y < 1/|d|
    VERTICAL_GRAPH = "VerticalGraph"


EMBEDDED = {
    Regime.SLICE,
    Regime.CATENOID,
    Regime.EMBEDDED_ANNULUS,
    Regime.ENTIRE_GRAPH,
    Regime.SPHERE,
    Regime.UNDULOID,
    Regime.CYLINDER,
    Regime.VERTICAL_GRAPH,
}


@dataclass
class RegimeReport:
    """Outcome of classifying a parameter pair ``(H, d)``.

    ``critical`` holds the named radii (``rho1``, ``rho0``, ``rho2``) for
    rotational families or heights (``y1``, ``y0``, ``y2``) for parabolic
    ones; only the radii that exist for the regime are present.
    """

    family: str
    regime: Regime
    H: float
    d: float
    critical: dict = field(default_factory=dict)
    neck_distance: Optional[float] = None
    embedded: bool = True
    notes: str = ""

    def to_dict(self) -> dict:
        out = {
            "schema": REPORT_SCHEMA,
            "version": REPORT_VERSION,
            "family": self.family,
            "regime": self.regime.value,
            "H": self.H,
            "d": self.d,
            "embedded": self.embedded,
            "neck_distance": self.neck_distance,
            "notes": self.notes,
        }
        out.update(self.critical)
        return out


def _as_array(values) -> np.ndarray:
    return np.asarray(values, dtype=float)


@dataclass
class ProfileCurve:
    """Sampled generating curve ``t = u(rho)`` in the xt-plane.

    ``dudrho`` is exact (the integrand); at vertical-tangent endpoints it is
    ``+-inf``.  ``reference`` is the radius where ``u`` vanishes.
    """

    rho: np.ndarray
    u: np.ndarray
    dudrho: np.ndarray
    domain: tuple
    endpoint_flags: dict
    params: object = None
    regime: Optional[Regime] = None
    reference: float = 0.0

    coord = "rho"
    header = ("rho", "u", "dudrho")

    def __post_init__(self):
        self.rho = _as_array(self.rho)
        self.u = _as_array(self.u)
        self.dudrho = _as_array(self.dudrho)
        if len(self.rho) > 1 and not np.all(np.diff(self.rho) > 0):
            raise ValueError("profile abscissae must be strictly increasing")

    @property
    def abscissa(self) -> np.ndarray:
        return self.rho

    @property
    def slope(self) -> np.ndarray:
        return self.dudrho

    def __len__(self) -> int:
        return len(self.rho)

    def height_at(self, r: float) -> float:
        """Sampled height at an abscissa that is one of the samples."""
        i = int(np.argmin(np.abs(self.abscissa - r)))
        if not math.isclose(self.abscissa[i], r, rel_tol=0, abs_tol=1e-12):
            raise KeyError(f"{r!r} is not a sample abscissa")
        return float(self.u[i])

    def normalized_at(self, r: float) -> "ProfileCurve":
        """Copy translated so that ``u(r) = 0``; ``r`` must be a sample."""
        out = replace(self, u=self.u - self.height_at(r))
        out.reference = r
        return out

    def rows(self):
        return zip(self.abscissa.tolist(), self.u.tolist(), self.slope.tolist())


@dataclass
class ParProfileCurve(ProfileCurve):
    """Sampled generating curve ``t = u(y)`` of a parabolic surface."""

    coord = "y"
    header = ("y", "u", "dudy")

    @property
    def y(self) -> np.ndarray:
        return self.rho

    @property
    def dudy(self) -> np.ndarray:
        return self.dudrho


@dataclass
class PlanarCurve:
    """A polyline ``(r_i, t_i)`` in the generating half-plane.

    Produced by reflecting a profile across a horizontal slice.  ``r`` is the
    hyperbolic radius for rotational curves and ``y`` for parabolic ones.
    ``period`` is the vertical translation that continues the curve
    periodically (``None`` when it does not close up that way).
    """

    r: np.ndarray
    t: np.ndarray
    coord: str
    closed: bool = False
    period: Optional[float] = None
    params: object = None
    regime: Optional[Regime] = None

    def __post_init__(self):
        self.r = _as_array(self.r)
        self.t = _as_array(self.t)

    def __len__(self) -> int:
        return len(self.r)

    def translated(self, dt: float) -> "PlanarCurve":
        return replace(self, t=self.t + dt)

    def periodic_extension(self, periods: int) -> "PlanarCurve":
        """Concatenate ``periods`` vertically translated copies."""
        if self.period is None:
            raise ValueError("curve has no vertical period")
        if periods < 1:
            raise ValueError("periods must be >= 1")
        rs = [self.r]
        ts = [self.t]
        for k in range(1, periods):
            # consecutive copies share their end point
            rs.append(self.r[1:])
            ts.append(self.t[1:] + k * self.period)
        return replace(self, r=np.concatenate(rs), t=np.concatenate(ts))
