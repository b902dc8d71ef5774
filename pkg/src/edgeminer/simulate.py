"""Monte-Carlo block mining and the delayed-baseline profit comparison.

Each simulated block is one categorical draw: miner i wins with probability
share_i * e^(-rate*delay*tx), and the residual 1 - e^(-rate*delay*tx) is an
orphaned round with no winner, so per-miner win probabilities match the
model exactly.  The PRNG is pinned to numpy's PCG64 so seeded runs are
bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import GameParams, as_profile, edge_utility
from .uniform import optimal_fee_uniform

__all__ = [
    "SimConfig",
    "SimOutcome",
    "emg_vs_mdg_sweep",
    "empirical_success_prob",
    "mdg_baseline_profit",
    "simulate_mining",
]


@dataclass(frozen=True)
class SimConfig:
    """Simulation setup; defaults are 1000 blocks of 10 transactions."""

    n_blocks: int = 1000
    tx_per_block: int = 10
    seed: int = 0
    params: GameParams = field(default_factory=GameParams)

    def __post_init__(self):
        if not isinstance(self.n_blocks, (int, np.integer)) or self.n_blocks < 1:
            raise ValueError(f"n_blocks must be an integer >= 1, got {self.n_blocks!r}")
        if not isinstance(self.tx_per_block, (int, np.integer)) or self.tx_per_block < 1:
            raise ValueError(f"tx_per_block must be an integer >= 1, got {self.tx_per_block!r}")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")


@dataclass(frozen=True)
class SimOutcome:
    """Per-miner win counts plus the no-winner (orphan) count."""

    wins: np.ndarray
    orphans: int
    n_blocks: int

    @property
    def frequencies(self) -> np.ndarray:
        return self.wins / self.n_blocks


def simulate_mining(profile, cfg: SimConfig) -> SimOutcome:
    """Run cfg.n_blocks categorical mining rounds; deterministic per seed."""
    shares = as_profile(profile).shares()
    win_probs = shares * cfg.params.delay_discount(cfg.tx_per_block)
    cum = np.cumsum(win_probs)
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    draws = rng.random(cfg.n_blocks)
    winners = np.searchsorted(cum, draws, side="right")
    counts = np.bincount(winners, minlength=shares.size + 1)
    return SimOutcome(
        wins=counts[:shares.size].astype(np.int64),
        orphans=int(counts[shares.size:].sum()),
        n_blocks=cfg.n_blocks,
    )


def empirical_success_prob(outcome: SimOutcome, i: int) -> float:
    """Observed win frequency of miner i."""
    if not 0 <= i < outcome.wins.size:
        raise IndexError(f"miner index {i} out of range")
    return float(outcome.wins[i]) / outcome.n_blocks


def mdg_baseline_profit(total_power: float, fee_schedule, params: GameParams,
                        mdg_delay_multiplier: float = 1.5) -> float:
    """Leader profit when devices do all mining under an inflated delay.

    With no edge power of its own the leader still collects the pool reward,
    but every transaction now pays the multiplied propagation penalty.  At
    multiplier 1 this equals edge_utility with the same fees.
    """
    if total_power <= 0:
        raise ValueError("total_power must be > 0")
    if mdg_delay_multiplier < 1:
        raise ValueError("mdg_delay_multiplier must be >= 1")
    fees = np.atleast_1d(np.asarray(fee_schedule, dtype=float))
    if fees.size and (not np.all(np.isfinite(fees)) or np.any(fees < 0)):
        raise ValueError("fees must be finite and >= 0")
    discount = params.delay_discount(params.tx_per_block * mdg_delay_multiplier)
    return params.total_reward * discount - math.fsum(fees) - params.edge_overhead


def emg_vs_mdg_sweep(total_power_grid, edge_fraction: float, params: GameParams,
                     unit_cost: float, mdg_delay_multiplier: float = 1.5,
                     objective: str = "full", fee_bracket=None):
    """Profit comparison at equal total power, row per grid point.

    The edge scheme contributes edge_fraction of the total power itself and
    pays the stage-I optimal fee for the recruited remainder; the baseline
    recruits the full total at the same per-power fee rate, so the edge's
    own share goes un-fee'd.  Rows are ordered by total power.
    """
    if not 0 < edge_fraction < 1:
        raise ValueError(f"edge_fraction must lie in (0, 1), got {edge_fraction!r}")
    rows = []
    for total in sorted(float(w) for w in np.atleast_1d(np.asarray(total_power_grid, float))):
        if total <= 0:
            raise ValueError("total power grid entries must be > 0")
        edge_power = edge_fraction * total
        device_power = total - edge_power
        fee_emg, _ = optimal_fee_uniform(edge_power, unit_cost, params,
                                         objective=objective, bracket=fee_bracket)
        fee_mdg = fee_emg * total / device_power
        profit_emg = edge_utility(params, [fee_emg])
        profit_mdg = mdg_baseline_profit(total, [fee_mdg], params, mdg_delay_multiplier)
        rows.append({
            "total_power": total,
            "edge_power": edge_power,
            "device_power": device_power,
            "fee_emg": fee_emg,
            "fee_mdg": fee_mdg,
            "profit_emg": profit_emg,
            "profit_mdg": profit_mdg,
            "profit_gap": profit_emg - profit_mdg,
        })
    return rows
