import pytest
from hypothesis import HealthCheck, settings

from greenkit.corpus import by_name

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = by_name(name)
        return cache[name]

    return get
