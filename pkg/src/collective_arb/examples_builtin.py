"""Ready-to-run model files for the two benchmark markets and cone variants.

"toy71": one period, two states, two complete single-asset markets with
distinct pricing measures.  "tree72": two periods, six states, three-node
tree, both agents' markets incomplete.  Variants select different exchange
cones over the same markets.
"""

from __future__ import annotations

import json

_TOY_BASE = {
    "atoms": ["w1", "w2"],
    "prob": ["1/2", "1/2"],
    "times": 1,
    "global_filtration": [[["w1", "w2"]], [["w1"], ["w2"]]],
    "assets": {"X1": ["2", ["3", "1"]], "X2": ["4", ["9", "3"]]},
    "agents": [
        {"assets": ["X1"], "filtration": "global"},
        {"assets": ["X2"], "filtration": "global"},
    ],
    "claims": [["3", "1"], ["9", "3"]],
}

_TOY_SPAN = {"kind": "span", "generators": [
    [["3", "1"], ["-3", "-1"]],
    [["9", "3"], ["-9", "-3"]],
]}

_TREE_BASE = {
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
    "claims": [["26", "18", "24", "20", "12", "9"],
               ["12", "8", "6", "6", "24", "18"]],
}


def _with_exchange(base, exchange):
    doc = json.loads(json.dumps(base))
    doc["exchange"] = exchange
    return doc


BUILTIN_MODELS = {
    "toy71": _with_exchange(_TOY_BASE, {"kind": "Y0", "t": 0}),
    "toy71-y0T": _with_exchange(_TOY_BASE, {"kind": "Y0", "t": 1}),
    "toy71-span": _with_exchange(_TOY_BASE, _TOY_SPAN),
    "toy71-span-rn0": _with_exchange(
        _TOY_BASE, {"kind": "sum", "parts": [_TOY_SPAN, {"kind": "Y0", "t": 0}]}),
    "tree72": _with_exchange(_TREE_BASE, {"kind": "Y0", "t": 1}),
    "tree72-y00": _with_exchange(_TREE_BASE, {"kind": "Y0", "t": 0}),
    "tree72-y0T": _with_exchange(_TREE_BASE, {"kind": "Y0", "t": 2}),
}


def example_names():
    return sorted(BUILTIN_MODELS)


def example_document(name: str) -> dict:
    if name not in BUILTIN_MODELS:
        raise KeyError(name)
    return json.loads(json.dumps(BUILTIN_MODELS[name]))


def write_example(name: str, directory: str = ".") -> str:
    import os

    doc = example_document(name)
    path = os.path.join(directory, f"{name}.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return path
