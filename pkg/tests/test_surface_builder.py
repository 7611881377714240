import json
import math

import numpy as np
import pytest

from cmc_psl2.ambient import AmbientSpace, Model
from cmc_psl2.errors import EmptyMesh, NotNormalized, ParamMismatch
from cmc_psl2.par_profiles import ParabolicProfile, ParScrewParams
from cmc_psl2.rot_profiles import RotationalProfile, RotScrewParams, classify_rotational, profile_numeric
from cmc_psl2.surface_builder import (
    SurfaceMesh,
    export_csv,
    export_json,
    export_obj,
    load_obj,
    normalize_for_reflection,
    reflect_union,
    sweep_parabolic,
    sweep_rotational,
    vertex_curvature,
)


def _sphere_mesh(n=48, n_theta=24):
    p = RotScrewParams(1.0, -2.0)
    half = normalize_for_reflection(profile_numeric(p, n))
    return p, sweep_rotational(reflect_union(half), p, n_theta)


def test_slice_is_flat_disk():
    p = RotScrewParams(0.0, 0.0)
    mesh = sweep_rotational(profile_numeric(p, 20, rho_max=2.0), p, 16)
    assert np.all(mesh.vertices[:, 2] == 0.0)
    assert mesh.euler_characteristic() == 1
    assert np.hypot(mesh.vertices[:, 0], mesh.vertices[:, 1]).max() == pytest.approx(math.tanh(1.0))


def test_sphere_is_closed_genus_zero():
    _, mesh = _sphere_mesh()
    assert mesh.euler_characteristic() == 2
    assert len(mesh.boundary_edges()) == 0
    assert mesh.is_manifold()


def test_sphere_reflection_symmetry():
    _, mesh = _sphere_mesh()
    v = mesh.vertices
    mirrored = v * np.array([1.0, 1.0, -1.0])
    key = lambda a: np.round(a, 9)
    assert {tuple(r) for r in key(v)} == {tuple(r) for r in key(mirrored)}


def test_unduloid_period_and_extension():
    p = RotScrewParams(1.0, -1.9)
    half = normalize_for_reflection(profile_numeric(p, 64))
    one = reflect_union(half)
    assert one.period == pytest.approx(2.0 * (half.u[-1] - half.u[0]))
    two = one.periodic_extension(2)
    assert len(two) == 2 * len(one) - 1
    assert two.t[-1] - two.t[0] == pytest.approx(2.0 * one.period)
    mesh = sweep_rotational(two, p, 16)
    assert mesh.euler_characteristic() == 0 and mesh.is_manifold()


def test_reflection_is_c1_at_junction():
    p = RotScrewParams(0.25, 0.0)
    half = normalize_for_reflection(profile_numeric(p, 80, rho_max=3.0))
    assert half.dudrho[0] == math.inf
    doubled = reflect_union(half)
    j = len(half) - 1
    # mirror pair about the neck shares the radius and flips the height
    assert doubled.r[j - 1] == doubled.r[j + 1]
    assert doubled.t[j - 1] == -doubled.t[j + 1]


def test_entire_graph_reflects_without_error():
    p = RotScrewParams(0.5, -1.0)
    curve = profile_numeric(p, 32, rho_max=2.0)
    doubled = reflect_union(curve)
    assert doubled.t.min() == pytest.approx(-doubled.t.max())


def test_not_normalized():
    p = RotScrewParams(1.0, -3.0)
    curve = profile_numeric(p, 32)
    with pytest.raises(NotNormalized):
        reflect_union(curve)


def test_param_mismatch():
    curve = profile_numeric(RotScrewParams(0.5, -1.0), 16, rho_max=1.0)
    with pytest.raises(ParamMismatch):
        sweep_rotational(curve, RotScrewParams(0.5, -0.9), 8)
    with pytest.raises(ParamMismatch):
        sweep_parabolic(curve, ParScrewParams(0.0, 1.0))


def test_entire_graph_mesh_passes_oracle():
    p = RotScrewParams(0.5, -1.0)
    prof = RotationalProfile(p)
    mesh = sweep_rotational(prof.sample(24, rho_max=2.5), p, 12)
    idx, H = vertex_curvature(AmbientSpace(Model.DISK, p.tau), prof.graph(), mesh.vertices)
    assert len(idx) >= 100
    assert np.abs(H - 0.5).max() < 1e-3


def test_screw_seam_open():
    p = RotScrewParams(0.25, 0.0, pitch=0.5)
    mesh = sweep_rotational(profile_numeric(p, 10, rho_max=2.0), p, 8)
    assert len(mesh.boundary_edges()) > 0
    first_ring = mesh.vertices[:9]
    assert first_ring[-1, 2] - first_ring[0, 2] == pytest.approx(2 * math.pi * 0.5)
    assert mesh.euler_characteristic() == 1


def test_cylinder_mesh():
    p = RotScrewParams(1.0, -math.sqrt(3.0))
    mesh = sweep_rotational(profile_numeric(p), p, 16, cylinder_height=2.0, n_height=5)
    radii = np.hypot(mesh.vertices[:, 0], mesh.vertices[:, 1])
    assert np.allclose(radii, math.tanh(0.5 * math.acosh(2.0 / math.sqrt(3.0))))
    assert mesh.euler_characteristic() == 0


def test_parabolic_strip():
    p = ParScrewParams(0.0, 1.0, pitch=0.0)
    prof = ParabolicProfile(p)
    mesh = sweep_parabolic(prof.sample(20, y_min=0.2, y_max=0.9), p, (-1.0, 1.0), 9)
    assert mesh.euler_characteristic() == 1
    idx, H = vertex_curvature(AmbientSpace(Model.HALF_PLANE, p.tau), prof.graph(), mesh.vertices)
    assert len(idx) > 100 and np.abs(H).max() < 1e-3


def test_parabolic_shear():
    p = ParScrewParams(0.0, 1.0, pitch=0.3)
    curve = ParabolicProfile(p).sample(5, y_min=0.2)
    mesh = sweep_parabolic(curve, p, (-1.0, 1.0), 3)
    row = mesh.vertices[:3]
    assert row[2, 2] - row[0, 2] == pytest.approx(0.6)


def test_empty_mesh():
    with pytest.raises(EmptyMesh):
        export_obj(SurfaceMesh(np.zeros((0, 3)), np.zeros((0, 3))), "/tmp/never.obj")


def test_obj_round_trip(tmp_path):
    p = RotScrewParams(0.0, 0.0)
    mesh = sweep_rotational(profile_numeric(p, 10, rho_max=1.0), p, 12)
    path = tmp_path / "slice.obj"
    export_obj(mesh, path)
    back = load_obj(path)
    assert np.array_equal(back.vertices, mesh.vertices)
    assert np.array_equal(back.faces, mesh.faces)
    text = path.read_text()
    assert "\nf 1 " in text and "generated" not in text


def test_obj_deterministic(tmp_path):
    _, a = _sphere_mesh(16, 8)
    _, b = _sphere_mesh(16, 8)
    export_obj(a, tmp_path / "a.obj")
    export_obj(b, tmp_path / "b.obj")
    assert (tmp_path / "a.obj").read_bytes() == (tmp_path / "b.obj").read_bytes()
    assert "generated" in a.metadata


def test_csv_headers(tmp_path):
    export_csv(profile_numeric(RotScrewParams(1.0, -2.0), 8), tmp_path / "r.csv")
    export_csv(ParabolicProfile(ParScrewParams(0.0, 1.0)).sample(8), tmp_path / "p.csv")
    assert (tmp_path / "r.csv").read_text().splitlines()[0] == "rho,u,dudrho"
    assert (tmp_path / "p.csv").read_text().splitlines()[0] == "y,u,dudy"


def test_json_report(tmp_path):
    export_json(classify_rotational(1.0, -2.0), tmp_path / "s.json")
    text = (tmp_path / "s.json").read_text()
    assert '"regime":"Sphere"' in text
    assert '"rho2":1.098612' in text
    data = json.loads(text)
    assert data["schema"] == "cmc-psl2/regime-report" and data["version"] == 1


def test_bad_face_index():
    with pytest.raises(ValueError):
        SurfaceMesh(np.zeros((3, 3)), np.array([[0, 1, 3]]))
