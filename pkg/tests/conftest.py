import numpy as np
import pytest

from opsplit import build_matrix_A, build_matrix_B


@pytest.fixture(scope="session")
def gen_a():
    return build_matrix_A()


@pytest.fixture(scope="session")
def gen_b():
    return build_matrix_B()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
