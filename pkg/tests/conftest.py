import pytest

from polarb.geom import enumerate_generators, polar_space_make
from polarb.scheme import build_relations

_CATALOGS = {}
_RELATIONS = {}


@pytest.fixture(scope="session")
def catalog():
    """Memoized catalog factory shared by the whole session."""

    def get(family, d, q):
        key = (family, d, q)
        if key not in _CATALOGS:
            _CATALOGS[key] = enumerate_generators(polar_space_make(family, d, q))
        return _CATALOGS[key]

    return get


@pytest.fixture(scope="session")
def relations(catalog):
    def get(family, d, q):
        key = (family, d, q)
        if key not in _RELATIONS:
            _RELATIONS[key] = build_relations(catalog(family, d, q))
        return _RELATIONS[key]

    return get
