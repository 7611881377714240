"""Constant mean curvature surfaces invariant by rotations and parabolic
translations in the homogeneous space PSL2(R, tau)."""

from .ambient import AmbientSpace, MobiusSpec, Model, Point3
from .curves import ParProfileCurve, PlanarCurve, ProfileCurve, Regime, RegimeReport
from .errors import (
    CMCError,
    DomainError,
    EmptyFamily,
    EmptyMesh,
    InvalidH,
    InvalidIsometry,
    NonFinite,
    NotNormalized,
    OutsideDomain,
    ParamMismatch,
    QuadratureFailure,
    StepTooLarge,
)

__version__ = "0.1.0"
