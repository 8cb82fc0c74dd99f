import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "idemlab", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("idemlab")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def cgauss(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
