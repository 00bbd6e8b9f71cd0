"""Seeded random market/cone/claim instances for the property suites.

COLLECTIVE_ARB_SEED overrides the default seed so randomized runs are
reproducible from the environment.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .cones import (cone_add, make_grouping, make_rays, make_span, make_Y0,
                    make_zero)
from .market import MarketModel, build_market
from .pricing import ClaimVector, claim_vector

F = Fraction


def seeded_rng(default: int = 20240) -> random.Random:
    return random.Random(int(os.environ.get("COLLECTIVE_ARB_SEED", default)))


def _random_partition(rng: random.Random, atoms: int, max_blocks: int):
    """Random ordered partition into contiguous blocks."""
    cuts = sorted(rng.sample(range(1, atoms), min(rng.randint(0, max_blocks - 1),
                                                  atoms - 1)))
    blocks, prev = [], 0
    for c in cuts + [atoms]:
        blocks.append(list(range(prev, c)))
        prev = c
    return blocks


def random_market(rng: random.Random) -> MarketModel:
    """Small market: <= 4 atoms, T <= 2, N <= 3, small integer prices on the
    information tree, strictly positive rational weights."""
    n_atoms = rng.randint(2, 4)
    T = rng.randint(1, 2)
    atoms = [f"w{k+1}" for k in range(n_atoms)]

    weights = [rng.randint(1, 4) for _ in range(n_atoms)]
    total = sum(weights)
    prob = [f"{w}/{total}" for w in weights]

    partitions = [[list(range(n_atoms))]]
    if T == 2:
        partitions.append(_random_partition(rng, n_atoms, 3))
    partitions.append([[k] for k in range(n_atoms)])
    filt_labels = [[[atoms[a] for a in blk] for blk in part] for part in partitions]

    # prices evolve block-by-block along the information tree; most moves
    # straddle the parent value so both arbitrage-free and arbitrage-prone
    # instances occur with healthy frequency
    J = rng.randint(1, 3)
    assets = {}
    for j in range(J):
        rows = []
        values = {tuple(partitions[0][0]): rng.randint(1, 8)}
        rows.append([str(values[tuple(partitions[0][0])])] * n_atoms)
        for t in range(1, T + 1):
            level = {}
            for parent, v in values.items():
                children = [tuple(blk) for blk in partitions[t]
                            if set(blk) <= set(parent)]
                if rng.random() < 0.75 and len(children) > 1:
                    up, down = rng.randint(1, 3), rng.randint(1, 3)
                    level[children[0]] = v + up
                    level[children[-1]] = max(v - down, 0)
                    for blk in children[1:-1]:
                        level[blk] = max(v + rng.randint(-down, up), 0)
                elif rng.random() < 0.75 and len(children) == 1:
                    level[children[0]] = v
                else:
                    for blk in children:
                        level[blk] = rng.randint(0, 8)
            row = [0] * n_atoms
            for blk, v in level.items():
                for a in blk:
                    row[a] = v
            rows.append([str(v) for v in row])
            values = level
        if rng.random() < 0.3:  # non-integer rational prices
            den = rng.choice([2, 3])
            rows = [[f"{F(v)/den}" for v in r] for r in rows]
        assets[f"X{j+1}"] = rows

    N = rng.randint(1, 3)
    owner = [rng.randrange(N) for _ in range(J)]
    agent_assets = [set() for _ in range(N)]
    for j, i in enumerate(owner):
        agent_assets[i].add(f"X{j+1}")
    for i in range(N):
        for j in range(J):
            if rng.random() < 0.3:
                agent_assets[i].add(f"X{j+1}")
        if not agent_assets[i]:
            agent_assets[i].add(f"X{rng.randint(1, J)}")
    agents = [{"assets": sorted(agent_assets[i]), "filtration": "global"}
              for i in range(N)]

    return build_market({
        "atoms": atoms, "prob": prob, "times": T,
        "global_filtration": filt_labels, "assets": assets, "agents": agents,
    })


def _random_zero_sum_matrix(rng: random.Random, market: MarketModel):
    N, n = market.n_agents, market.n_atoms
    rows = [[F(rng.randint(-4, 4)) for _ in range(n)] for _ in range(N - 1)]
    last = [-sum(col) for col in zip(*rows)] if rows else [F(0)] * n
    rows.append(last)
    return rows


def _random_constant_zero_sum(rng: random.Random, market: MarketModel):
    N, n = market.n_agents, market.n_atoms
    vals = [rng.randint(-4, 4) for _ in range(N - 1)]
    vals.append(-sum(vals))
    return [[F(v)] * n for v in vals]


def random_cone(rng: random.Random, market: MarketModel):
    """Random exchange cone inside the zero-sum space; returns (cone, info)
    where info records the construction for theorem-specific checks."""
    kind = rng.choice(["zero", "y0", "y0", "grouping", "span", "rays",
                       "span_rn0", "span0", "rays0"])
    t = rng.randint(0, market.T)
    if kind == "zero" or market.n_agents == 1:
        return make_zero(market), {"kind": "zero", "t": None}
    if kind == "y0":
        return make_Y0(market, t), {"kind": "y0", "t": t}
    if kind == "grouping":
        groups, pool = [], list(range(market.n_agents))
        rng.shuffle(pool)
        while pool:
            size = rng.randint(1, len(pool))
            groups.append(pool[:size])
            pool = pool[size:]
        return make_grouping(market, groups, t), {"kind": "grouping", "t": t}
    if kind in ("span0", "rays0"):
        gens = [_random_constant_zero_sum(rng, market)
                for _ in range(rng.randint(1, 2))]
        cone = make_span(market, gens) if kind == "span0" else make_rays(market, gens)
        return cone, {"kind": kind, "t": 0}
    gens = [_random_zero_sum_matrix(rng, market) for _ in range(rng.randint(1, 2))]
    if kind == "span":
        return make_span(market, gens), {"kind": "span", "t": None}
    if kind == "rays":
        return make_rays(market, gens), {"kind": "rays", "t": None}
    cone = cone_add(market, make_span(market, gens), make_Y0(market, 0))
    return cone, {"kind": "span_rn0", "t": None}


def random_claims(rng: random.Random, market: MarketModel) -> ClaimVector:
    den = rng.choice([1, 1, 2, 3])
    rows = [[str(F(rng.randint(-8, 8), den)) for _ in range(market.n_atoms)]
            for _ in range(market.n_agents)]
    return claim_vector(market, rows)
