import numpy as np
import pytest

from linksched.blossom import solve_max_weight_matching


@pytest.fixture(scope="session", autouse=True)
def warm_matching_kernel():
    """Compile the matching kernel once so runtime-gated tests measure
    steady-state work, not JIT compilation."""
    eu = np.array([0, 1, 2], dtype=np.int64)
    ev = np.array([1, 2, 0], dtype=np.int64)
    ew = np.array([3, 2, 1], dtype=np.int64)
    solve_max_weight_matching(3, eu, ev, ew)
