"""The uniform-fee game end to end: follower response, certificate, stage I.

One expected fee is offered to the aggregate device pool.  The pool's best
response has a closed form; the leader then picks the fee that maximizes
its additional profit.
"""

import numpy as np

from edgeminer import GameParams, UniformGame, aggregate_miner_utility, \
    best_response_uniform, grid_argmax, leader_delta_utility_uniform, \
    optimal_fee_uniform, solve_uniform, uniqueness_certificate_uniform

params = GameParams()
game = UniformGame(edge_power=50.0, fee=2.0, unit_cost=0.005, params=params)

print("== stage II: device pool best response ==")
y_star = best_response_uniform(game)
print(f"  closed form Y* = {y_star:.6f}")
argmax, value = grid_argmax(lambda y: aggregate_miner_utility(game, y), 0.0, 400.0, 1e-3)
print(f"  grid oracle    = {argmax:.6f} (pool utility {value:.6f})")

print("\n== uniqueness certificate ==")
cert = uniqueness_certificate_uniform(game)
print(f"  edge power {game.edge_power} vs quarter bound {cert.quarter_bound:.2f} "
      f"-> certified: {cert.certified}")
print(f"  positivity bound {cert.positivity_bound:.2f} "
      f"(also satisfied: {cert.below_positivity_bound})")

print("\n== leader profit at this fee ==")
print(f"  full (fee charged):   {leader_delta_utility_uniform(game, 'full'):+.4f}")
print(f"  simplified (no fee):  {leader_delta_utility_uniform(game, 'simplified'):+.4f}")

print("\n== stage I: optimal fee ==")
for objective in ("full", "simplified"):
    fee, profit = optimal_fee_uniform(50.0, 0.005, params, objective=objective,
                                      bracket=(0.1, 40.0))
    note = "(monotone objective runs to the bracket top)" if objective == "simplified" else ""
    print(f"  {objective:10s}: fee {fee:8.4f}  profit {profit:+.4f} {note}")

print("\n== everything in one result ==")
best_fee, _ = optimal_fee_uniform(50.0, 0.005, params)
result = solve_uniform(UniformGame(50.0, best_fee, 0.005, params))
print(f"  fee {best_fee:.4f}: devices supply {result.follower_powers.powers[0]:.2f}, "
      f"pool utility {result.follower_utilities[0]:+.4f}")
print(f"  leader full {result.leader_profit_full:+.4f}, "
      f"simplified {result.leader_profit_simplified:+.4f}, "
      f"certified {result.uniqueness_certified}")
