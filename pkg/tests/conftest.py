import numpy as np
import pytest


def rel_l2(actual, expected):
    num = np.linalg.norm(np.asarray(actual) - np.asarray(expected))
    den = np.linalg.norm(np.asarray(expected))
    return float(num / den) if den else float(num)


def random_batch(rng, shape, dtype=np.complex128):
    data = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return data.astype(dtype)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
