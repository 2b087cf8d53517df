"""Shared fixtures: contexts are expensive to warm up, so cache per session."""

from functools import lru_cache

import pytest

from periodic_hall.derived import DerivedContext
from periodic_hall.repcat import Quiver, RepContext


@lru_cache(maxsize=None)
def _rep_context(quiver_text: str, q: int) -> RepContext:
    return RepContext(Quiver.parse(quiver_text), q)


@lru_cache(maxsize=None)
def _derived_context(quiver_text: str, q: int) -> DerivedContext:
    return DerivedContext(_rep_context(quiver_text, q))


@pytest.fixture
def ctx_factory():
    return _rep_context


@pytest.fixture
def dctx_factory():
    return _derived_context


@pytest.fixture
def a2_q2():
    return _derived_context("A2", 2)


@pytest.fixture
def a2_q3():
    return _derived_context("A2", 3)


@pytest.fixture
def a1_q2():
    return _derived_context("A1", 2)
