import json
import math

import numpy as np
import pytest

import sasaki

PI2 = math.pi ** 2


def test_round_metric_is_euclidean():
    p = sasaki.random_sphere_point(1, 3)
    assert abs(np.linalg.norm(p) - 1.0) < 1e-12
    g = sasaki.sasaki_metric([1, 1], p)["g"]
    proj = np.eye(4) - np.outer(p, p)
    assert np.abs(g - proj).max() < 1e-12


def test_frame_and_scalar():
    p = sasaki.random_sphere_point(2, 5)
    assert sasaki.frame_residual([1, 2, 3], p) < 1e-10
    closed = sasaki.scalar_closed([1, 2, 3], p)
    assert closed["s"] == closed["s_transverse"] - 4
    fd = sasaki.scalar_fd([1, 2, 3], p)
    assert abs(fd - closed["s"]) < 1e-3 * abs(closed["s_transverse"])
    assert sasaki.mean_scalar([1, 2]) == 10


def test_volume_and_futaki():
    assert abs(sasaki.volume_closed([1, 2]) - PI2) < 1e-12
    closed, numeric = sasaki.volume([1, 1, 1])
    assert abs(numeric - math.pi ** 3) < 1e-8
    assert abs(sasaki.futaki_closed([1, 2], [1, 0]) + 2 * PI2) < 1e-12
    for method in ("closed", "chart", "sphere"):
        assert abs(sasaki.futaki_numeric([1, 2], [0, 1], method) - PI2) < 1e-8


def test_classify():
    r = sasaki.classify([1, 1, 1])
    assert r["csc"] and r["einstein"]
    r = sasaki.classify([1, 2], fd_check=False)
    assert not r["csc"] and r["lambda"] is None


def test_energy_and_flow():
    assert abs(sasaki.energy([1, 1], [0.0] * 8) - 72 * PI2) < 1e-6 * 72 * PI2
    rep = sasaki.run_flow([1, 2], [0.05] + [0.0] * 7)
    assert rep["converged"]
    assert abs(rep["energies"][-1] - rep["baseline_energy"]) < 1e-3 * rep["baseline_energy"]
    assert all(b <= a for a, b in zip(rep["energies"], rep["energies"][1:]))


def test_errors():
    with pytest.raises(ValueError):
        sasaki.volume_closed([1, -1])
    with pytest.raises(sasaki.ComputationError):
        sasaki.energy([1, 2], [2.0])


def test_cli_and_criteria():
    code, out, err = sasaki.run_cli(["classify", "--weights", "1,1", "--output", "json"])
    assert code == 0 and err == ""
    assert json.loads(out)["einstein"] is True
    code, _, err = sasaki.run_cli(["classify", "--weights", "1,0"])
    assert code == 2 and "--weights" in err
    assert sasaki.run_criterion(5)["pass"]
