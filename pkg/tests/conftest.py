from fractions import Fraction

import pytest

from collective_arb.market import build_market

F = Fraction


def toy_market_spec():
    """One period, two outcomes, two complete single-asset markets whose
    unique pricing measures disagree: (1/2,1/2) vs (1/6,5/6)."""
    return {
        "atoms": ["w1", "w2"],
        "prob": ["1/2", "1/2"],
        "times": 1,
        "global_filtration": [[["w1", "w2"]], [["w1"], ["w2"]]],
        "assets": {"X1": ["2", ["3", "1"]], "X2": ["4", ["9", "3"]]},
        "agents": [
            {"assets": ["X1"], "filtration": "global"},
            {"assets": ["X2"], "filtration": "global"},
        ],
    }


def tree_market_spec():
    """Two periods, six outcomes on a three-node recombining tree; each
    agent's market is incomplete with a one-parameter measure family."""
    return {
        "atoms": ["w1", "w2", "w3", "w4", "w5", "w6"],
        "prob": ["1/6", "1/6", "1/6", "1/6", "1/6", "1/6"],
        "times": 2,
        "global_filtration": [
            [["w1", "w2", "w3", "w4", "w5", "w6"]],
            [["w1", "w2"], ["w3", "w4"], ["w5", "w6"]],
            [["w1"], ["w2"], ["w3"], ["w4"], ["w5"], ["w6"]],
        ],
        "assets": {
            "X1": ["16", ["24", "24", "16", "16", "8", "8"],
                   ["32", "16", "24", "8", "12", "6"]],
            "X2": ["12", ["16", "16", "12", "12", "8", "8"],
                   ["24", "8", "16", "8", "6", "12"]],
        },
        "agents": [
            {"assets": ["X1"], "filtration": "global"},
            {"assets": ["X2"], "filtration": "global"},
        ],
    }


TREE_CLAIMS = (
    ("26", "18", "24", "20", "12", "9"),
    ("12", "8", "6", "6", "24", "18"),
)


@pytest.fixture
def toy_market():
    return build_market(toy_market_spec())


@pytest.fixture
def tree_market():
    return build_market(tree_market_spec())
