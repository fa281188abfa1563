from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from upord.axioms import EdgeOrder
from upord.digraph import Digraph
from upord.generate import random_dag
from upord.search import SearchConfig, enumerate_upos

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--opt-in-long", action="store_true", default=False, help="run long-running checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--opt-in-long"):
        return
    skip = pytest.mark.skip(reason="needs --opt-in-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.summary():
            terminalreporter.write_line(line)


@st.composite
def dags(draw, max_edges: int = 6, max_vertices: int = 6) -> Digraph:
    seed = draw(st.integers(0, 2**32 - 1))
    return random_dag(random.Random(seed), max_edges=max_edges, max_vertices=max_vertices)


@st.composite
def upo_graphs(draw, max_edges: int = 6) -> tuple[Digraph, EdgeOrder]:
    g = draw(dags(max_edges=max_edges))
    witnesses = enumerate_upos(g, SearchConfig(mode="all")).witnesses
    assume(witnesses)
    return g, EdgeOrder(draw(st.sampled_from(witnesses)))
