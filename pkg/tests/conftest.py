import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def rel_frobenius(a, b):
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)) / np.linalg.norm(np.asarray(b)))
