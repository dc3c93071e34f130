import os
import subprocess
import sys

import numpy as np
import pytest

from airydet import _backend

compiled = _backend.compiled
pure = _backend.pure
needs_ext = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


@needs_ext
def test_airy_pair_agrees():
    x = np.concatenate([np.linspace(-60, 40, 5001), [-9.0, 9.0, 0.0, -2999.0, 2999.0]])
    a = compiled.airy_pair(x)
    b = pure.airy_pair(x)
    for u, v in zip(a, b):
        assert np.max(np.abs(u - v) / np.maximum(1.0, np.abs(v))) < 1e-14


@needs_ext
def test_airy_kernel_matrix_agrees():
    x = np.linspace(-30, 8, 157)
    y = x[::3] + 1e-7
    assert np.max(np.abs(compiled.airy_kernel_matrix(x, y, 1e-6) - pure.airy_kernel_matrix(x, y, 1e-6))) < 1e-13


@needs_ext
@pytest.mark.parametrize("n", [1, 7, 300, 3000])
def test_hermite_agrees(n):
    x = np.linspace(-np.sqrt(2 * n) - 10, np.sqrt(2 * n) + 10, 301)
    a = compiled.hermite_tail(n, x)
    b = pure.hermite_tail(n, x)
    for u, v in zip(a, b):
        assert np.max(np.abs(u - v)) < 1e-13
    if n <= 300:
        assert np.max(np.abs(compiled.hermite_table(n, x) - pure.hermite_table(n, x))) < 1e-13


@needs_ext
def test_cd_kernel_agrees():
    x = np.linspace(-25, 25, 90)
    assert np.max(np.abs(compiled.cd_kernel_matrix(200, x, x, 1e-6) - pure.cd_kernel_matrix(200, x, x, 1e-6))) < 1e-12


@needs_ext
def test_read_only_inputs_accepted():
    x = np.linspace(-2, 2, 9)
    x.setflags(write=False)
    compiled.airy_pair(x)
    compiled.airy_kernel_matrix(x, x, 1e-6)


def test_environment_forces_python_backend():
    code = "import airydet; print(airydet.BACKEND); print(repr(airydet.airy_log_det(airydet.parse_symbol('gauss:t=-0.5'), 4.0)))"
    env = dict(os.environ, AIRYDET_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    name, value = out.stdout.split()
    assert name == "python"
    from airydet import airy_log_det, parse_symbol
    assert float(value) == pytest.approx(airy_log_det(parse_symbol("gauss:t=-0.5"), 4.0), abs=1e-12)


def test_active_backend_name():
    assert _backend.NAME in ("cython", "python")
    if compiled is not None and os.environ.get("AIRYDET_BACKEND", "") != "python":
        assert _backend.NAME == "cython"
