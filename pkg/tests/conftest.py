"""Shared fixtures: gadget pipelines and table expansions are expensive
enough (k = 15, 16 hypercubes) to compute once per session."""

from __future__ import annotations

import pytest

from subgadgets import expand_fixture, gadget_report


@pytest.fixture(scope="session")
def reports():
    cache = {}

    def get(origin: str, l: int, **kw):
        key = (origin, l, tuple(sorted(kw.items())))
        if key not in cache:
            cache[key] = gadget_report(origin, l, **kw)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def tables():
    cache = {}

    def get(gadget_id: str):
        if gadget_id not in cache:
            cache[gadget_id] = expand_fixture(gadget_id)
        return cache[gadget_id]

    return get
