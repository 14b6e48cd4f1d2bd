import sys

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from gorenstein_lab.algebra import preset
from gorenstein_lab.explorer import random_module
from gorenstein_lab.linalg import GF, QQ

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

PRESET_NAMES = ["k", "kx2", "kx3", "rad2", "comm2", "a2"]
FIELDS = {"F2": GF(2), "F3": GF(3), "Q": QQ}

_cache = {}


def algebra(name, field="F2"):
    key = (name, field)
    if key not in _cache:
        _cache[key] = preset(name, FIELDS[field])
    return _cache[key]


@pytest.fixture(params=PRESET_NAMES)
def any_preset(request):
    return algebra(request.param)


def module_from_seed(name, field, seed, max_rank=2, depth=2):
    rng = np.random.default_rng(seed)
    return random_module(algebra(name, field), max_rank, depth, rng)[0]


@st.composite
def modules(draw, names=PRESET_NAMES, fields=("F2", "F3")):
    name = draw(st.sampled_from(names))
    field = draw(st.sampled_from(fields))
    seed = draw(st.integers(0, 10**6))
    return module_from_seed(name, field, seed)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results is not None:
        terminalreporter.section("acceptance criteria")
        for n in range(1, 10):
            terminalreporter.write_line(results.get(n, f"criterion {n}: FAIL  did not complete"))
