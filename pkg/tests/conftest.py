import sys

import numpy as np
import pytest

import normcompress.numkit as numkit
import normcompress.planegeom as planegeom
from normcompress._backend import available


@pytest.fixture
def square():
    return np.array([1, 1j, -1, -1j])


@pytest.fixture
def pentagon():
    return np.exp(2j * np.pi * np.arange(5) / 5)


@pytest.fixture(params=["python", "cython"])
def backend(request, monkeypatch):
    mods = available()
    if request.param not in mods:
        pytest.skip(f"{request.param} kernels not built")
    monkeypatch.setattr(numkit, "kernels", mods[request.param])
    monkeypatch.setattr(planegeom, "kernels", mods[request.param])
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
