"""Sweep generating curves into triangle meshes and write them to disk.

Mesh coordinates are the model coordinates ``(x, y, t)`` written straight
into OBJ ``(x, y, z)``.  Rotational sweeps live in the disk model,
parabolic sweeps in the half-plane model.
"""

from __future__ import annotations

import csv
import datetime as _dt
import json
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .ambient import AmbientSpace, Model
from .curves import PlanarCurve, ProfileCurve, Regime, RegimeReport
from .errors import DomainError, EmptyMesh, NotNormalized, ParamMismatch
from .par_profiles import ParScrewParams
from .rot_profiles import RotScrewParams

NORMALIZATION_TOL = 1e-12
PERIODIC = {Regime.NODOID, Regime.UNDULOID}


@dataclass
class SurfaceMesh:
    vertices: np.ndarray
    faces: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)
        if len(self.faces) and (self.faces.min() < 0 or self.faces.max() >= len(self.vertices)):
            raise ValueError("face index out of range")

    def edges(self) -> np.ndarray:
        e = np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]])
        e.sort(axis=1)
        return np.unique(e, axis=0)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges()) + len(self.faces)

    def boundary_edges(self) -> np.ndarray:
        e = np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]])
        e.sort(axis=1)
        uniq, counts = np.unique(e, axis=0, return_counts=True)
        return uniq[counts == 1]

    def is_manifold(self) -> bool:
        e = np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]])
        e.sort(axis=1)
        _, counts = np.unique(e, axis=0, return_counts=True)
        return bool(np.all(counts <= 2))


# --------------------------------------------------------------------------
# reflection across a slice
# --------------------------------------------------------------------------

def _junction(curve: ProfileCurve) -> str:
    """Which end the mirror image is glued to."""
    flags = curve.endpoint_flags
    if flags.get("lo") == "vertical_tangent":
        return "lo"
    if flags.get("hi") == "vertical_tangent":
        return "hi"
    return "lo"


def reflect_union(curve: ProfileCurve) -> PlanarCurve:
    """Join a profile with its mirror image across the slice ``t = 0``.

    The mirror is glued at the vertical-tangent end (the lower one when both
    ends are vertical), where the curve must sit at height zero.  For
    vertically periodic regimes the result is one period and carries the
    translation ``2 (u(hi) - u(lo))`` that continues it.
    """
    if len(curve) < 2:
        raise ValueError("cannot reflect a single-point curve")
    side = _junction(curve)
    j = 0 if side == "lo" else len(curve) - 1
    if abs(curve.u[j]) > NORMALIZATION_TOL:
        raise NotNormalized(f"u={curve.u[j]!r} at the {side} junction; normalize there first")
    r, t = curve.abscissa, curve.u.copy()
    t[j] = 0.0
    if side == "lo":
        rr = np.concatenate([r[:0:-1], r])
        tt = np.concatenate([-t[:0:-1], t])
    else:
        rr = np.concatenate([r, r[-2::-1]])
        tt = np.concatenate([t, -t[-2::-1]])
    period = None
    closed = False
    if curve.regime in PERIODIC or (
        curve.coord == "y" and curve.endpoint_flags.get("lo") == "vertical_tangent"
    ):
        period = 2.0 * (curve.u[-1] - curve.u[0])
    elif curve.regime is Regime.SPHERE:
        closed = True
    return PlanarCurve(rr, tt, curve.coord, closed, period, curve.params, curve.regime)


def normalize_for_reflection(curve: ProfileCurve) -> ProfileCurve:
    """Translate a profile so it vanishes at its reflection junction."""
    side = _junction(curve)
    return curve.normalized_at(curve.abscissa[0] if side == "lo" else curve.abscissa[-1])


# --------------------------------------------------------------------------
# sweeps
# --------------------------------------------------------------------------

def _grid_faces(rows: list, ncols: int, wrap: bool) -> list:
    """Triangles between consecutive rows; ``rows[i]`` is a list of vertex ids.

    A row of length one is a pole and is fanned.
    """
    faces = []
    span = ncols if wrap else ncols - 1
    for a, b in zip(rows[:-1], rows[1:]):
        if len(a) == 1 and len(b) == 1:
            continue
        for j in range(span):
            j1 = (j + 1) % ncols
            if len(a) == 1:
                faces.append((a[0], b[j], b[j1]))
            elif len(b) == 1:
                faces.append((a[j], b[0], a[j1]))
            else:
                faces.append((a[j], b[j], b[j1]))
                faces.append((a[j], b[j1], a[j1]))
    return faces


def _check_params(curve, p, kind):
    if not isinstance(p, kind):
        raise ParamMismatch(f"expected {kind.__name__}, got {type(p).__name__}")
    if curve.params is not None and curve.params != p:
        raise ParamMismatch(f"curve was generated for {curve.params!r}, not {p!r}")


def _metadata(family: str, p, normalization: str, extra: Optional[dict] = None) -> dict:
    meta = {
        "family": family,
        "params": {"H": p.H, "d": p.d, "tau": p.tau, "pitch": p.pitch},
        "generated": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "normalization": normalization,
    }
    if extra:
        meta.update(extra)
    return meta


def sweep_rotational(
    curve: Union[ProfileCurve, PlanarCurve],
    p: RotScrewParams,
    n_theta: int = 128,
    cylinder_height: float = 1.0,
    n_height: int = 16,
) -> SurfaceMesh:
    """Orbit of a rotational generating curve: ``(tanh(r/2) e^{i th}, t + pitch th)``.

    With ``pitch == 0`` the angular seam is closed and samples on the axis
    collapse to a single pole vertex; otherwise the helicoidal strip over
    ``theta in [0, 2 pi]`` is left open.  The cylinder regime (a single
    vertical-tangent sample) is swept over ``t in [-h/2, h/2]``.
    """
    _check_params(curve, p, RotScrewParams)
    if n_theta < 3:
        raise ValueError("n_theta must be at least 3")
    if isinstance(curve, ProfileCurve):
        if curve.regime is Regime.CYLINDER:
            r = np.full(n_height, curve.abscissa[0])
            t = np.linspace(-0.5 * cylinder_height, 0.5 * cylinder_height, n_height)
        else:
            r, t = curve.abscissa, curve.u
        normalization = f"u(rho={curve.reference!r})=0"
    else:
        r, t = curve.r, curve.t
        normalization = "reflected across t=0"
    if len(r) < 2:
        raise EmptyMesh("curve has fewer than two samples")
    pitch = p.pitch
    wrap = pitch == 0.0
    ncols = n_theta if wrap else n_theta + 1
    theta = 2.0 * np.pi * np.arange(ncols) / n_theta
    verts = []
    rows = []
    for ri, ti in zip(r, t):
        if ri < 0 or not math.isfinite(ri):
            raise DomainError(f"radius {ri!r} is not a point of the disk")
        rad = math.tanh(0.5 * ri)
        if not rad < 1.0:
            raise DomainError(f"radius {ri!r} rounds onto the ideal boundary")
        if ri == 0.0 and wrap:
            rows.append([len(verts)])
            verts.append((0.0, 0.0, ti))
            continue
        start = len(verts)
        for th in theta:
            verts.append((rad * math.cos(th), rad * math.sin(th), ti + pitch * th))
        rows.append(list(range(start, start + ncols)))
    faces = _grid_faces(rows, ncols, wrap)
    return SurfaceMesh(np.array(verts), np.array(faces, dtype=np.int64), _metadata("rotational", p, normalization, {"model": Model.DISK.value}))


def sweep_parabolic(
    curve: Union[ProfileCurve, PlanarCurve],
    p: ParScrewParams,
    x_range: tuple = (-1.0, 1.0),
    n_x: int = 128,
) -> SurfaceMesh:
    """Orbit of a parabolic generating curve: ``(x, y, u(y) + pitch x)``."""
    _check_params(curve, p, ParScrewParams)
    if n_x < 2:
        raise ValueError("n_x must be at least 2")
    if isinstance(curve, ProfileCurve):
        ys, ts = curve.abscissa, curve.u
        normalization = f"u(y={curve.reference!r})=0"
    else:
        ys, ts = curve.r, curve.t
        normalization = "reflected across t=0"
    if len(ys) < 2:
        raise EmptyMesh("curve has fewer than two samples")
    if np.any(ys <= 0):
        raise DomainError("parabolic curves must stay in y > 0")
    xs = np.linspace(x_range[0], x_range[1], n_x)
    verts = []
    rows = []
    for yi, ti in zip(ys, ts):
        start = len(verts)
        for x in xs:
            verts.append((x, yi, ti + p.pitch * x))
        rows.append(list(range(start, start + n_x)))
    faces = _grid_faces(rows, n_x, wrap=False)
    return SurfaceMesh(np.array(verts), np.array(faces, dtype=np.int64), _metadata("parabolic", p, normalization, {"model": Model.HALF_PLANE.value}))


# --------------------------------------------------------------------------
# export
# --------------------------------------------------------------------------

def _fmt(v: float) -> str:
    return repr(float(v))


def obj_text(mesh: SurfaceMesh) -> str:
    if len(mesh.vertices) == 0 or len(mesh.faces) == 0:
        raise EmptyMesh("refusing to write an empty mesh")
    lines = []
    meta = mesh.metadata
    if "family" in meta:
        lines.append(f"# family {meta['family']}")
    if "params" in meta:
        lines.append("# params " + " ".join(f"{k}={_fmt(v)}" for k, v in meta["params"].items()))
    for x, y, t in mesh.vertices:
        lines.append(f"v {_fmt(x)} {_fmt(y)} {_fmt(t)}")
    for i, j, k in mesh.faces:
        lines.append(f"f {i + 1} {j + 1} {k + 1}")
    return "\n".join(lines) + "\n"


def export_obj(mesh: SurfaceMesh, path) -> None:
    """Write ``v x y t`` and 1-based ``f i j k`` lines.

    The generation timestamp stays in memory so repeated exports are
    byte-identical.
    """
    text = obj_text(mesh)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def load_obj(path) -> SurfaceMesh:
    verts, faces = [], []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if parts[0] == "v":
                verts.append([float(v) for v in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(v.split("/")[0]) - 1 for v in parts[1:4]])
    return SurfaceMesh(np.array(verts), np.array(faces, dtype=np.int64))


def csv_text(curve: ProfileCurve) -> str:
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(curve.header)
    for row in curve.rows():
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def export_csv(curve: ProfileCurve, path) -> None:
    """Columns ``rho,u,dudrho`` (rotational) or ``y,u,dudy`` (parabolic)."""
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(csv_text(curve))


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def json_text(report: RegimeReport) -> str:
    data = {k: _json_safe(v) for k, v in report.to_dict().items()}
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def export_json(report: RegimeReport, path) -> None:
    """Compact JSON with keys sorted; see ``RegimeReport.to_dict`` for the schema."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(json_text(report))


# --------------------------------------------------------------------------
# curvature at vertices
# --------------------------------------------------------------------------

def vertex_curvature(
    space: AmbientSpace,
    u,
    vertices: np.ndarray,
    oracle: str = "div",
    h: float = 1e-4,
    height_tol: Optional[float] = 1e-6,
) -> tuple[np.ndarray, np.ndarray]:
    """Measure ``H`` of the graph ``u`` at the horizontal positions of ``vertices``.

    Vertices whose FD stencil leaves the graph's domain are skipped, as are
    vertices that do not lie on the graph (``|t - u(x, y)| > height_tol``),
    which filters out mirrored sheets of a reflected mesh.  Returns the
    indices used and the measured values.
    """
    from .curvature import mean_curvature

    idx, vals = [], []
    for i, (x, y, t) in enumerate(np.asarray(vertices, dtype=float)):
        try:
            if height_tol is not None and abs(t - u(x, y)) > height_tol:
                continue
            vals.append(mean_curvature(space, u, x, y, oracle=oracle, h=h))
        except (DomainError, ValueError, ArithmeticError):
            continue
        idx.append(i)
    return np.array(idx, dtype=np.int64), np.array(vals)
