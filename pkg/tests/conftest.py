import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "skybeam",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("skybeam")


@pytest.fixture
def rng():
    return np.random.default_rng(42)
