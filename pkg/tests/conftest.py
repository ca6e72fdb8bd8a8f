import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(autouse=True, scope="session")
def _session_cache(tmp_path_factory):
    """Route the solver's on-disk cache to a throwaway dir so test runs
    share solves without littering the working tree."""
    os.environ["TURANKIT_CACHE"] = str(tmp_path_factory.mktemp("cache"))
    yield
    os.environ.pop("TURANKIT_CACHE", None)
