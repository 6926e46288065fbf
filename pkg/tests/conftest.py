"""Shared fixtures: temp-file writers and the canonical worked example.

The worked example used throughout the suite is the n=3, r=3 family whose
level-1 relation is generated by p2 <= p3 and whose level-2 relation is
generated by p1 <= p2.  Every golden constant in the tests below was frozen
from an independent hand computation on this family.
"""

import json

import pytest

from cmgraphs import RelationFamily
from cmgraphs.graphs import graph_to_dict
from cmgraphs.posets import family_to_dict


def make_sample_family() -> RelationFamily:
    return RelationFamily.from_pairs(3, 3, {1: [(2, 3)], 2: [(1, 2)]})


@pytest.fixture
def sample():
    return make_sample_family()


@pytest.fixture
def write_json(tmp_path):
    """Write an arbitrary JSON payload and return its path as a string."""

    def _write(payload, name="input.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    return _write


@pytest.fixture
def family_file(tmp_path):
    def _write(family, name="family.json"):
        path = tmp_path / name
        path.write_text(json.dumps(family_to_dict(family)))
        return str(path)

    return _write


@pytest.fixture
def graph_file(tmp_path):
    def _write(graph, name="graph.json"):
        path = tmp_path / name
        path.write_text(json.dumps(graph_to_dict(graph)))
        return str(path)

    return _write
