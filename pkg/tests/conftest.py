from functools import lru_cache

import pytest

from qid.attacks import make_attack, standard_attacks
from qid.protocol import ProtocolInstance


@lru_cache(maxsize=None)
def _spec(kind: str, n: int):
    for spec in standard_attacks(n):
        if spec.kind == kind:
            return spec
    raise KeyError(kind)


@lru_cache(maxsize=None)
def _channel(kind: str, n: int):
    return make_attack(_spec(kind, n))


@lru_cache(maxsize=None)
def _instance(kind: str, n: int):
    return ProtocolInstance.from_channel(_channel(kind, n))


@pytest.fixture(scope="session")
def attack_spec():
    """Factory (kind, n) -> canonical AttackSpec, memoized."""
    return _spec


@pytest.fixture(scope="session")
def channel():
    """Factory (kind, n) -> built channel, memoized."""
    return _channel


@pytest.fixture(scope="session")
def instance():
    """Factory (kind, n) -> ProtocolInstance with caches, memoized."""
    return _instance
