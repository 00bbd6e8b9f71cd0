"""Walk-through: two agents, one period, and what cooperation changes.

Each agent trades a single binomial stock.  Both markets are individually
arbitrage-free and complete, but their pricing measures disagree, so the
pooled market admits an arbitrage.  Whether the *agents* can exploit it
depends entirely on which exchanges they are allowed.

Run:  python3 demos/one_period_cooperation.py
"""

from fractions import Fraction

from collective_arb import (build_market, claim_vector, detect_NA_agent,
                            detect_NA_global, detect_NCA, find_emm_vector,
                            make_Y0, pi_N_plus, pi_Y_plus, rho_N_plus, rho_Y_plus)

market = build_market({
    "atoms": ["up", "down"],
    "prob": ["1/2", "1/2"],
    "times": 1,
    "global_filtration": [[["up", "down"]], [["up"], ["down"]]],
    "assets": {
        "X1": ["2", ["3", "1"]],   # returns (3/2, 1/2)
        "X2": ["4", ["9", "3"]],   # returns (9/4, 3/4)
    },
    "agents": [
        {"assets": ["X1"], "filtration": "global"},
        {"assets": ["X2"], "filtration": "global"},
    ],
})

print("Single markets first.")
for i in range(2):
    cert = detect_NA_agent(market, i)
    print(f"  agent {i + 1}: arbitrage-free={not cert.found}, "
          f"pricing measure={cert.dual_witness[0]}")

print("\nThe pooled market is NOT arbitrage-free (the measures disagree):")
pooled = detect_NA_global(market)
print(f"  global arbitrage found: {pooled.found}; gains row {pooled.gains_rows[0]}")

# Deterministic zero-sum transfers: each agent may promise the other a fixed
# amount.  That is not enough to import the pooled arbitrage...
deterministic = make_Y0(market, 0)
print("\nWith deterministic zero-sum transfers:")
print(f"  collective arbitrage: {detect_NCA(market, deterministic).found}")
mv = find_emm_vector(market, deterministic)
print(f"  compatible measure vector: {mv.densities}")

# ...but terminal, state-dependent transfers are: agent 1 can hand over its
# arbitrage gains state by state.
terminal = make_Y0(market, 1)
print("\nWith state-dependent terminal transfers:")
print(f"  collective arbitrage: {detect_NCA(market, terminal).found}")
print(f"  compatible measure vector: {find_emm_vector(market, terminal)}")

# Pricing under the safe cone: each agent sells the other's stock payoff.
claims = claim_vector(market, [["3", "1"], ["9", "3"]])
rho_n = rho_N_plus(market, claims)
rho_y, _ = rho_Y_plus(market, deterministic, claims)
pi_n = pi_N_plus(market, claims)
pi_y, _ = pi_Y_plus(market, deterministic, claims)
print("\nSuper-replication of the claim pair (X1_1, X2_1):")
print(f"  both claims, stand-alone: {rho_n};  cooperating: {rho_y}")
print(f"  any ONE claim, stand-alone: {pi_n};  cooperating: {pi_y}")
print("  covering both claims costs the same either way, but a fixed transfer")
print("  of", Fraction(pi_n.value - pi_y.value), "halves go to whoever needs them,"
      " so covering any single claim becomes cheaper.")
