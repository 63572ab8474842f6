"""Backend selection and numba/numpy agreement on the hot kernels."""

import json
import os
import subprocess
import sys

import numpy as np

from deltagas._kernels import backend_name, exp_dot, lorentz_apply, lorentz_system
from deltagas.fredholm import Statistics, solve_love


def test_backend_is_known():
    assert backend_name() in ("numba", "numpy")


def test_lorentz_system_reference():
    rng = np.random.default_rng(11)
    x = np.sort(rng.uniform(-1.0, 1.0, 40))
    w = rng.uniform(0.1, 0.5, 40)
    got = lorentz_system(x, w, 1.0, -0.3, 0.7)
    d = x[:, None] - x[None, :]
    want = -0.3 * w[None, :] / (d * d + 0.49) + np.eye(40)
    assert np.max(np.abs(got - want)) < 1e-14


def test_lorentz_apply_reference():
    rng = np.random.default_rng(12)
    x = np.sort(rng.uniform(-1.0, 1.0, 30))
    xe = np.linspace(-2.0, 2.0, 17)
    w = rng.uniform(0.1, 0.5, 30)
    f = rng.standard_normal(30)
    got = lorentz_apply(xe, x, w, f, 0.4, 0.9)
    d = xe[:, None] - x[None, :]
    want = 0.4 * ((w * f)[None, :] / (d * d + 0.81)).sum(axis=1)
    assert np.max(np.abs(got - want)) < 1e-13


def test_exp_dot_reference_including_underflow():
    c = np.array([0.5, -1.5, 2.0])
    t = np.array([0.1, 1.0, 5.0])
    x = np.array([0.0, 1.0, 3.0, 10000.0])
    got = exp_dot(c, t, x)
    want = np.exp(-np.outer(x, t)) @ c
    # x=10000 puts every exponent past 745; both paths must return exactly 0
    assert got[-1] == 0.0
    assert np.max(np.abs(got - want)) < 1e-14


def _run_with_backend(backend, code):
    env = dict(os.environ)
    env["DELTAGAS_BACKEND"] = backend
    return subprocess.run(
        [sys.executable, "-c", code], env=env,
        capture_output=True, text=True,
    )


def test_numpy_backend_matches_in_process():
    probe = (
        "import json\n"
        "from deltagas._kernels import backend_name\n"
        "from deltagas.fredholm import Statistics, solve_love\n"
        "sol = solve_love(Statistics.FERMI, 0.3, 120, check=False)\n"
        "print(json.dumps({'backend': backend_name(), 'm0': sol.m0,"
        " 'm2': sol.m2}))\n"
    )
    proc = _run_with_backend("numpy", probe)
    assert proc.returncode == 0, proc.stderr
    got = json.loads(proc.stdout)
    assert got["backend"] == "numpy"
    here = solve_love(Statistics.FERMI, 0.3, 120, check=False)
    assert abs(got["m0"] - here.m0) < 1e-13 * abs(here.m0)
    assert abs(got["m2"] - here.m2) < 1e-13 * abs(here.m2)


def test_forced_numba_backend():
    probe = (
        "from deltagas._kernels import backend_name\n"
        "print(backend_name())\n"
    )
    proc = _run_with_backend("numba", probe)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "numba"


def test_unknown_backend_is_rejected():
    proc = _run_with_backend("cuda", "import deltagas\n")
    assert proc.returncode != 0
    assert "DELTAGAS_BACKEND" in proc.stderr
