"""
Shared pytest fixtures.

Rings are built once per session through the DSL so tests name them the
way users do: `ring("Triv(Z(4))")`.
"""

from typing import Callable, Dict

import pytest

from dsl.dsl_elaborate import ring_from_text
from rings.ring_core import FiniteRing
from utils.utils_config import RunConfig


@pytest.fixture(scope="session")
def run_config() -> RunConfig:
    """Defaults only, single-threaded, independent of any local .env."""
    return RunConfig(threads=1)


@pytest.fixture(scope="session")
def ring(run_config) -> Callable[[str], FiniteRing]:
    built: Dict[str, FiniteRing] = {}

    def make(text: str) -> FiniteRing:
        if text not in built:
            built[text] = ring_from_text(text, run_config)
        return built[text]

    return make


@pytest.fixture(autouse=True)
def _no_env_cache(monkeypatch):
    monkeypatch.delenv("RING_CACHE_PATH", raising=False)
    monkeypatch.delenv("RING_SUITE_FILE", raising=False)
