import os

import pytest
from hypothesis import HealthCheck, settings

from hypersum import parse

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def P():
    """Shorthand parser used throughout the tests."""
    return parse
