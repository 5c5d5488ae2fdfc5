import pytest

from jkepler.algebra import make_algebra

_CACHE = {}


@pytest.fixture(scope="session")
def algebra():
    """Session-cached algebra factory keyed by spec string."""

    def get(spec: str):
        if spec not in _CACHE:
            _CACHE[spec] = make_algebra(spec)
        return _CACHE[spec]

    return get
