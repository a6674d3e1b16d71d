import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from quatfa.quat_core import Quaternion

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
quaternions = st.tuples(finite, finite, finite, finite).map(lambda t: Quaternion(*t))
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def assert_q(actual, expected, atol=1e-12):
    a = actual.to_array() if isinstance(actual, Quaternion) else np.asarray(actual, dtype=float)
    e = expected.to_array() if isinstance(expected, Quaternion) else np.asarray(expected, dtype=float)
    np.testing.assert_allclose(a, e, atol=atol, rtol=0)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
