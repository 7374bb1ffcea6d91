import os
import subprocess
import sys

import pytest

from partition_qseries import _backend
from partition_qseries.closed_forms import dynkin_form
from partition_qseries.lattice import LatticePlan, _kernels_for, plan

CHECK = "import partition_qseries as p; print(p.BACKEND)"


def backend_in_subprocess(pure):
    env = dict(os.environ)
    env.pop("PQSERIES_PURE_PYTHON", None)
    if pure:
        env["PQSERIES_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", CHECK], env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_pure_python_switch():
    assert backend_in_subprocess(pure=True) == "python"


def test_default_prefers_compiled():
    expected = "cython" if _backend.compiled_kernels is not None else "python"
    assert backend_in_subprocess(pure=False) == expected


def test_get():
    assert _backend.get("python") is _backend.python_kernels
    assert _backend.get(None) is _backend.kernels
    with pytest.raises(ValueError):
        _backend.get("fortran")
    assert "python" in _backend.available()


@pytest.mark.skipif(_backend.compiled_kernels is None, reason="extension not built")
def test_large_entries_fall_back_to_python():
    p = plan(dynkin_form("A2"), 4)
    assert _kernels_for(p, "cython") is _backend.compiled_kernels
    huge = LatticePlan(p.strategy, [[2**40, 0], [0, 2**40]], p.rmax, p.cutoff, p.W, p.d, kmax=2**12)
    assert not huge.fits_int64()
    assert _kernels_for(huge, "cython") is _backend.python_kernels


def test_benchmark_quick_run():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    script = os.path.join(root, "benchmarks", "bench_kernels.py")
    out = subprocess.run([sys.executable, script, "--quick", "--repeat", "1"], capture_output=True, text=True)
    assert out.returncode == 0, out.stdout + out.stderr
    assert "MISMATCH" not in out.stdout
