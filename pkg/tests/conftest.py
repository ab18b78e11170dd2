import numpy as np
import pytest

from renyinfo.dist import JointPmf


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def diag_binary():
    """X = Y uniform on two symbols."""
    return JointPmf(("0", "1"), ("0", "1"), [[0.5, 0.0], [0.0, 0.5]])


@pytest.fixture
def uniform_22():
    return JointPmf(("0", "1"), ("0", "1"), [[0.25, 0.25], [0.25, 0.25]])


def bsc_joint(p: float) -> JointPmf:
    """Uniform-input binary symmetric channel with flip probability p."""
    return JointPmf(
        ("0", "1"), ("0", "1"), [[(1 - p) / 2, p / 2], [p / 2, (1 - p) / 2]]
    )


@pytest.fixture
def bsc01():
    return bsc_joint(0.1)
