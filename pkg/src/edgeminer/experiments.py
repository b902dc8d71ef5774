"""Experiment harness: flat-text configs, sweep builders, CSV/JSON reports.

Output is data, not images: every figure-style experiment emits the series
behind one plot.  All builders are deterministic for a fixed config and
seed, and every row is recomputable through the matching single-instance
subcommand.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .core import ConfigError, GameParams, InfeasibleEquilibriumError, edge_utility
from .search import SearchConfig, multiplicative_fee_search
from .discriminatory import (
    DiscriminatoryGame,
    leader_delta_utility_discriminatory,
    miner_utility_i,
    nash_equilibrium_closed_form,
    uniqueness_certificate_discriminatory,
)
from .simulate import SimConfig, emg_vs_mdg_sweep, mdg_baseline_profit, simulate_mining
from .uniform import (
    UniformGame,
    aggregate_miner_utility,
    best_response_uniform,
    leader_delta_utility_uniform,
    optimal_fee_uniform,
    uniqueness_certificate_uniform,
)

__all__ = [
    "ExperimentConfig",
    "KINDS",
    "matched_heterogeneous_fees",
    "render_report",
    "run_experiment",
    "validate_config",
]

KINDS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6",
         "solve-uniform", "solve-disc", "simulate", "compare-mdg")

DEFAULT_GRIDS = {
    "fig1": (1.0, 100.0, 100),
    "fig2": (1.0, 50.0, 50),
    "fig3": (0.0, 100.0, 101),
    "fig4": (0.0, 100.0, 101),
    "fig5": (10.0, 200.0, 20),
    "fig6": (10.0, 200.0, 20),
    "compare-mdg": (10.0, 200.0, 20),
}

# full keeps the fee cost (finite stage-I optimum); the simplified objective
# is monotone in the fee, which suits the induced-power profit curves
DEFAULT_OBJECTIVES = {
    "fig2": "full", "fig3": "simplified", "fig4": "simplified",
    "fig5": "full", "fig6": "full", "compare-mdg": "full",
    "solve-uniform": "full", "solve-disc": "full",
}


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str = ""
    params: GameParams = field(default_factory=GameParams)
    edge_power: float = 50.0
    device_power: float = 50.0
    unit_cost: float = 0.005
    fee: float | None = None
    fees: tuple | None = None
    n_miners: int = 5
    objective: str | None = None
    fee_basis: str = "lump"
    fee_search: str = "golden"
    grid_start: float | None = None
    grid_stop: float | None = None
    grid_steps: int | None = None
    edge_fraction: float = 0.5
    edge_fractions: tuple = (0.1, 0.5, 0.9)
    mdg_delay_mult: float = 1.5
    seed: int = 0
    n_seeds: int = 10
    n_blocks: int = 1000
    powers: tuple = (50.0, 50.0)
    initial_fee: float = 1.0
    step_factor: float = 0.05
    tolerance: float = 1e-6
    max_iters: int = 10_000
    out: str | None = None
    format: str = "csv"

    def resolved_grid(self):
        """Grid spec with missing pieces filled from the kind's default."""
        default = DEFAULT_GRIDS.get(self.kind, (None, None, None))
        start = self.grid_start if self.grid_start is not None else default[0]
        stop = self.grid_stop if self.grid_stop is not None else default[1]
        steps = self.grid_steps if self.grid_steps is not None else default[2]
        return start, stop, steps

    def grid(self) -> np.ndarray:
        start, stop, steps = self.resolved_grid()
        return np.linspace(start, stop, steps)

    def resolved_objective(self) -> str:
        return self.objective or DEFAULT_OBJECTIVES.get(self.kind, "full")


def _parse_float(text: str) -> float:
    return float(text)


def _parse_int(text: str) -> int:
    return int(text)


def _parse_str(text: str) -> str:
    return text


def _parse_float_list(text: str) -> tuple:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("expected a comma-separated list of numbers")
    return tuple(float(p) for p in parts)


_PARAM_KEYS = {
    "fixed_reward": _parse_float,
    "tx_reward": _parse_float,
    "poisson_rate": _parse_float,
    "delay_factor": _parse_float,
    "tx_per_block": _parse_int,
    "mobile_tx_load": _parse_int,
    "edge_overhead": _parse_float,
    "min_consumption": _parse_float,
}

_CONFIG_KEYS = {
    "kind": _parse_str,
    "edge_power": _parse_float,
    "device_power": _parse_float,
    "unit_cost": _parse_float,
    "fee": _parse_float,
    "fees": _parse_float_list,
    "n_miners": _parse_int,
    "objective": _parse_str,
    "fee_basis": _parse_str,
    "fee_search": _parse_str,
    "grid_start": _parse_float,
    "grid_stop": _parse_float,
    "grid_steps": _parse_int,
    "edge_fraction": _parse_float,
    "edge_fractions": _parse_float_list,
    "mdg_delay_mult": _parse_float,
    "seed": _parse_int,
    "n_seeds": _parse_int,
    "n_blocks": _parse_int,
    "powers": _parse_float_list,
    "initial_fee": _parse_float,
    "step_factor": _parse_float,
    "tolerance": _parse_float,
    "max_iters": _parse_int,
    "out": _parse_str,
    "format": _parse_str,
    **_PARAM_KEYS,
}


def parse_config_text(text: str) -> dict:
    """Parse flat ``key = value`` lines into a raw settings dict."""
    errors = []
    data = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
            continue
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_KEYS:
            errors.append(f"line {lineno}: unknown key {key!r}")
            continue
        if key in data:
            errors.append(f"line {lineno}: duplicate key {key!r}")
            continue
        try:
            data[key] = _CONFIG_KEYS[key](value)
        except ValueError as exc:
            errors.append(f"line {lineno}: key {key!r}: {exc}")
    if errors:
        raise ConfigError(errors)
    return data


def build_config(data: dict) -> ExperimentConfig:
    """Assemble and validate an ExperimentConfig from raw settings."""
    errors = []
    unknown = set(data) - set(_CONFIG_KEYS)
    if unknown:
        errors.append(f"unknown keys: {sorted(unknown)}")
        raise ConfigError(errors)

    param_kwargs = {k: data[k] for k in _PARAM_KEYS if k in data}
    try:
        params = GameParams(**param_kwargs)
    except ValueError as exc:
        errors.append(str(exc))
        params = GameParams()

    cfg_kwargs = {k: v for k, v in data.items() if k not in _PARAM_KEYS}
    cfg_field_names = {f.name for f in fields(ExperimentConfig)}
    cfg = ExperimentConfig(**{k: v for k, v in cfg_kwargs.items() if k in cfg_field_names},
                           params=params)

    if cfg.kind not in KINDS:
        errors.append(f"kind must be one of {KINDS}, got {cfg.kind!r}")
    if not 0 < cfg.step_factor < 1:
        errors.append(f"step_factor must lie strictly inside (0, 1), got {cfg.step_factor!r}")
    if cfg.tolerance <= 0:
        errors.append(f"tolerance must be > 0, got {cfg.tolerance!r}")
    if cfg.initial_fee <= 0:
        errors.append(f"initial_fee must be > 0, got {cfg.initial_fee!r}")
    if cfg.max_iters < 1:
        errors.append(f"max_iters must be >= 1, got {cfg.max_iters!r}")
    if cfg.unit_cost <= 0:
        errors.append(f"unit_cost must be > 0, got {cfg.unit_cost!r}")
    if cfg.n_miners < 2:
        errors.append(f"n_miners must be >= 2, got {cfg.n_miners!r}")
    if cfg.n_blocks < 1:
        errors.append(f"n_blocks must be >= 1, got {cfg.n_blocks!r}")
    if cfg.n_seeds < 1:
        errors.append(f"n_seeds must be >= 1, got {cfg.n_seeds!r}")
    if cfg.seed < 0:
        errors.append(f"seed must be >= 0, got {cfg.seed!r}")
    if cfg.fee is not None and cfg.fee <= 0:
        errors.append(f"fee must be > 0, got {cfg.fee!r}")
    if cfg.fees is not None and any(f <= 0 for f in cfg.fees):
        errors.append("fees must all be > 0")
    if not 0 < cfg.edge_fraction < 1:
        errors.append(f"edge_fraction must lie in (0, 1), got {cfg.edge_fraction!r}")
    if any(not 0 < f < 1 for f in cfg.edge_fractions):
        errors.append("edge_fractions must all lie in (0, 1)")
    if cfg.mdg_delay_mult < 1:
        errors.append(f"mdg_delay_mult must be >= 1, got {cfg.mdg_delay_mult!r}")
    if cfg.objective is not None and cfg.objective not in ("full", "simplified"):
        errors.append(f"objective must be 'full' or 'simplified', got {cfg.objective!r}")
    if cfg.fee_basis not in ("lump", "per_power"):
        errors.append(f"fee_basis must be 'lump' or 'per_power', got {cfg.fee_basis!r}")
    if cfg.fee_search not in ("golden", "hillclimb"):
        errors.append(f"fee_search must be 'golden' or 'hillclimb', got {cfg.fee_search!r}")
    if cfg.format not in ("csv", "json"):
        errors.append(f"format must be 'csv' or 'json', got {cfg.format!r}")
    if cfg.edge_power <= 0:
        errors.append(f"edge_power must be > 0, got {cfg.edge_power!r}")
    if cfg.device_power <= 0:
        errors.append(f"device_power must be > 0, got {cfg.device_power!r}")

    start, stop, steps = cfg.resolved_grid()
    grid_given = any(v is not None for v in (cfg.grid_start, cfg.grid_stop, cfg.grid_steps))
    if cfg.kind in DEFAULT_GRIDS or grid_given:
        if start is None or stop is None or steps is None:
            errors.append("grid_start, grid_stop and grid_steps must be given together "
                          f"for kind {cfg.kind!r} (no default grid)")
        else:
            if not start < stop:
                errors.append(f"grid_start must be < grid_stop, got [{start!r}, {stop!r}]")
            if steps < 2:
                errors.append(f"grid_steps must be >= 2, got {steps!r}")
    if cfg.kind == "solve-disc" and cfg.fees is None:
        errors.append("solve-disc requires a 'fees' list")
    if cfg.kind == "simulate":
        if len(cfg.powers) < 1 or any(p < 0 for p in cfg.powers) or sum(cfg.powers) <= 0:
            errors.append("powers must be nonnegative with a positive total")

    if errors:
        raise ConfigError(errors)
    return cfg


def validate_config(text: str) -> ExperimentConfig:
    """Parse and validate a flat config file into an ExperimentConfig."""
    return build_config(parse_config_text(text))


def matched_heterogeneous_fees(device_power: float, n_miners: int, unit_cost: float,
                               params: GameParams, spread: float | None = None) -> np.ndarray:
    """Per-miner fees whose interior equilibrium total equals device_power.

    Fees follow an evenly spaced multiplier pattern around a base level; the
    spread shrinks with the miner count to keep the allocation interior.
    """
    if device_power <= 0:
        raise ValueError("device_power must be > 0")
    if spread is None:
        spread = min(0.2, 0.5 / n_miners)
    multipliers = np.linspace(1.0 - spread, 1.0 + spread, n_miners)
    discount = params.delay_discount(params.mobile_tx_load)
    base = device_power * unit_cost * math.fsum(1.0 / multipliers) / ((n_miners - 1) * discount)
    return base * multipliers


def _inducing_fee(edge_power: float, device_power: float, unit_cost: float,
                  params: GameParams) -> float:
    """Uniform fee whose best response is exactly device_power."""
    discount = params.delay_discount(params.mobile_tx_load)
    return unit_cost * (edge_power + device_power) ** 2 / (edge_power * discount)


def _failed(template: dict, status: str) -> dict:
    # result columns in the template start as nan; only the status changes
    row = dict(template)
    row["status"] = status
    return row


def _rows_fig1(cfg: ExperimentConfig):
    """Edge-miner mining success probability against its computing power."""
    params = cfg.params
    device_power = cfg.device_power
    rows = []
    # same seeds for every grid point: with common draws the empirical
    # frequency is monotone in the win probability by construction
    seeds = [cfg.seed + k for k in range(cfg.n_seeds)]
    for x in cfg.grid():
        share = x / (x + device_power)
        model = share * params.delay_discount(params.tx_per_block)
        freqs = []
        for seed in seeds:
            sim = SimConfig(n_blocks=cfg.n_blocks, tx_per_block=params.tx_per_block,
                            seed=seed, params=params)
            outcome = simulate_mining([x, device_power], sim)
            freqs.append(outcome.wins[0] / outcome.n_blocks)
        rows.append({
            "edge_power": float(x),
            "device_power": device_power,
            "edge_share": share,
            "success_prob_model": model,
            "success_prob_empirical": float(np.mean(freqs)),
            "status": "ok",
        })
    return rows


def _rows_fig2(cfg: ExperimentConfig):
    """Stage-I optimal fee against the fixed block reward."""
    objective = cfg.resolved_objective()
    rows = []
    for r in cfg.grid():
        params = replace(cfg.params, fixed_reward=float(r))
        fee, profit = optimal_fee_uniform(cfg.edge_power, cfg.unit_cost, params,
                                          objective=objective)
        rows.append({
            "fixed_reward": float(r),
            "optimal_fee": fee,
            "leader_profit": profit,
            "status": "ok",
        })
    return rows


def _profit_rows_power_sweep(cfg: ExperimentConfig, axis: str):
    """Shared builder for the leader-profit curves (fig3 and fig4).

    Same-fee column: the uniform fee inducing the device power as the pool's
    best response.  Diff-fee column: heterogeneous per-miner fees matched to
    the same device total, reward credited on the edge-inclusive pool share.
    """
    params = cfg.params
    objective = cfg.resolved_objective()
    scale = params.total_reward * params.delay_discount(params.mobile_tx_load)
    rows = []
    for value in cfg.grid():
        if axis == "device_power":
            edge_power, device_power = cfg.edge_power, float(value)
            template = {"device_power": device_power, "edge_power": edge_power}
        else:
            edge_power, device_power = float(value), cfg.device_power
            template = {"edge_power": edge_power, "device_power": device_power}
        template.update(fee_same=math.nan, profit_same_fee=math.nan,
                        fee_bill_diff=math.nan, profit_diff_fee=math.nan, status="ok")
        if edge_power <= 0:
            rows.append(_failed(template, "infeasible: edge power must be > 0"))
            continue
        row = dict(template)
        row["fee_same"] = _inducing_fee(edge_power, device_power, cfg.unit_cost, params)
        row["profit_same_fee"] = leader_delta_utility_uniform(
            UniformGame(edge_power, row["fee_same"], cfg.unit_cost, params), objective)
        if device_power == 0:
            row["fee_bill_diff"] = 0.0
            row["profit_diff_fee"] = 0.0
            rows.append(row)
            continue
        try:
            fees = matched_heterogeneous_fees(device_power, cfg.n_miners,
                                              cfg.unit_cost, params)
            allocation = nash_equilibrium_closed_form(
                DiscriminatoryGame(fees, cfg.unit_cost, params))
        except (InfeasibleEquilibriumError, ValueError) as exc:
            rows.append(_failed(template, f"infeasible: {exc}"))
            continue
        reward_diff = scale * math.fsum(allocation.powers) / (edge_power + device_power)
        row["fee_bill_diff"] = math.fsum(fees)
        row["profit_diff_fee"] = (reward_diff if objective == "simplified"
                                  else reward_diff - row["fee_bill_diff"])
        rows.append(row)
    return rows


def _rows_fig3(cfg: ExperimentConfig):
    return _profit_rows_power_sweep(cfg, "device_power")


def _rows_fig4(cfg: ExperimentConfig):
    return _profit_rows_power_sweep(cfg, "edge_power")


def _rows_fig5(cfg: ExperimentConfig):
    """Edge scheme vs delayed baseline; heterogeneous per-miner fees."""
    params = cfg.params
    rows = []
    for fraction in cfg.edge_fractions:
        for total in cfg.grid():
            total = float(total)
            edge_power = fraction * total
            device_power = total - edge_power
            template = {
                "edge_fraction": fraction, "total_power": total,
                "edge_power": edge_power, "device_power": device_power,
                "fee_bill_emg": math.nan, "profit_emg": math.nan,
                "fee_bill_mdg": math.nan, "profit_mdg": math.nan,
                "profit_gap": math.nan, "status": "ok",
            }
            try:
                fees = matched_heterogeneous_fees(device_power, cfg.n_miners,
                                                  cfg.unit_cost, params)
                nash_equilibrium_closed_form(DiscriminatoryGame(fees, cfg.unit_cost, params))
                fee_bill = math.fsum(fees)
                fee_bill_mdg = fee_bill / (1.0 - fraction)
                profit_emg = edge_utility(params, fees)
                profit_mdg = mdg_baseline_profit(total, [fee_bill_mdg], params,
                                                 cfg.mdg_delay_mult)
            except (InfeasibleEquilibriumError, ValueError) as exc:
                rows.append(_failed(template, f"infeasible: {exc}"))
                continue
            row = dict(template)
            row.update(fee_bill_emg=fee_bill, profit_emg=profit_emg,
                       fee_bill_mdg=fee_bill_mdg, profit_mdg=profit_mdg,
                       profit_gap=profit_emg - profit_mdg)
            rows.append(row)
    return rows


def _rows_fig6(cfg: ExperimentConfig):
    """Edge scheme vs delayed baseline; one stage-I optimized uniform fee."""
    rows = []
    for fraction in cfg.edge_fractions:
        for sweep_row in emg_vs_mdg_sweep(cfg.grid(), fraction, cfg.params,
                                          cfg.unit_cost, cfg.mdg_delay_mult,
                                          objective=cfg.resolved_objective()):
            row = {"edge_fraction": fraction}
            row.update(sweep_row)
            row["status"] = "ok"
            rows.append(row)
    return rows


def _rows_compare_mdg(cfg: ExperimentConfig):
    rows = []
    for sweep_row in emg_vs_mdg_sweep(cfg.grid(), cfg.edge_fraction, cfg.params,
                                      cfg.unit_cost, cfg.mdg_delay_mult,
                                      objective=cfg.resolved_objective()):
        row = dict(sweep_row)
        row["status"] = "ok"
        rows.append(row)
    return rows


def _optimize_fee(cfg: ExperimentConfig, objective: str):
    params = cfg.params
    if cfg.fee_search == "golden":
        return optimal_fee_uniform(cfg.edge_power, cfg.unit_cost, params,
                                   objective=objective)
    floor = max(params.min_consumption, 1e-6)

    def profit_fn(fee):
        if fee < floor:
            return -math.inf  # devices refuse fees below their consumption
        game = UniformGame(cfg.edge_power, fee, cfg.unit_cost, params)
        return (leader_delta_utility_uniform(game, objective),
                best_response_uniform(game))

    search = SearchConfig(initial_fee=max(cfg.initial_fee, floor),
                          step_factor=cfg.step_factor,
                          tolerance=cfg.tolerance, max_iters=cfg.max_iters)
    best_fee, _ = multiplicative_fee_search(profit_fn, search)
    return best_fee, profit_fn(best_fee)[0]


def _rows_solve_uniform(cfg: ExperimentConfig):
    params = cfg.params
    objective = cfg.resolved_objective()
    optimal_fee, optimal_profit = _optimize_fee(cfg, objective)
    fee = cfg.fee if cfg.fee is not None else optimal_fee
    game = UniformGame(cfg.edge_power, fee, cfg.unit_cost, params)
    response = best_response_uniform(game)
    certificate = uniqueness_certificate_uniform(game)
    return [{
        "edge_power": cfg.edge_power,
        "fee": fee,
        "unit_cost": cfg.unit_cost,
        "best_response_power": response,
        "follower_utility": aggregate_miner_utility(game, response),
        "leader_profit_full": leader_delta_utility_uniform(game, "full"),
        "leader_profit_simplified": leader_delta_utility_uniform(game, "simplified"),
        "certified_unique": certificate.certified,
        "below_quarter_bound": certificate.below_quarter_bound,
        "below_positivity_bound": certificate.below_positivity_bound,
        "optimal_fee": optimal_fee,
        "optimal_profit": optimal_profit,
        "status": "ok",
    }]


def _rows_solve_disc(cfg: ExperimentConfig):
    game = DiscriminatoryGame(np.asarray(cfg.fees, dtype=float), cfg.unit_cost, cfg.params)
    template = {
        "miner": -1, "fee": math.nan, "power": math.nan, "share": math.nan,
        "utility": math.nan, "certified_unique_i": False,
        "leader_delta_full": math.nan, "leader_delta_simplified": math.nan,
        "status": "ok",
    }
    try:
        allocation = nash_equilibrium_closed_form(game)
    except InfeasibleEquilibriumError as exc:
        return [_failed(template, f"infeasible: miners {list(exc.indices)}")]
    certificate = uniqueness_certificate_discriminatory(game)
    shares = allocation.shares()
    rows = []
    for i in range(game.n_miners):
        rows.append({
            "miner": i,
            "fee": float(game.fees[i]),
            "power": float(allocation.powers[i]),
            "share": float(shares[i]),
            "utility": miner_utility_i(game, allocation, i),
            "certified_unique_i": bool(certificate.per_miner[i]),
            "leader_delta_full": leader_delta_utility_discriminatory(
                game, i, "full", cfg.fee_basis),
            "leader_delta_simplified": leader_delta_utility_discriminatory(
                game, i, "simplified"),
            "status": "ok",
        })
    return rows


def _rows_simulate(cfg: ExperimentConfig):
    sim = SimConfig(n_blocks=cfg.n_blocks, tx_per_block=cfg.params.tx_per_block,
                    seed=cfg.seed, params=cfg.params)
    outcome = simulate_mining(list(cfg.powers), sim)
    shares = np.asarray(cfg.powers, dtype=float) / math.fsum(cfg.powers)
    discount = cfg.params.delay_discount(sim.tx_per_block)
    rows = []
    for i, power in enumerate(cfg.powers):
        rows.append({
            "miner": i,
            "power": float(power),
            "share": float(shares[i]),
            "win_prob_model": float(shares[i] * discount),
            "wins": int(outcome.wins[i]),
            "frequency": float(outcome.frequencies[i]),
            "status": "ok",
        })
    rows.append({
        "miner": -1,
        "power": math.nan,
        "share": math.nan,
        "win_prob_model": 1.0 - discount,
        "wins": outcome.orphans,
        "frequency": outcome.orphans / outcome.n_blocks,
        "status": "ok",
    })
    return rows


_BUILDERS = {
    "fig1": _rows_fig1, "fig2": _rows_fig2, "fig3": _rows_fig3, "fig4": _rows_fig4,
    "fig5": _rows_fig5, "fig6": _rows_fig6, "compare-mdg": _rows_compare_mdg,
    "solve-uniform": _rows_solve_uniform, "solve-disc": _rows_solve_disc,
    "simulate": _rows_simulate,
}


def _format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def render_report(rows, fmt: str) -> str:
    """Serialize rows to CSV or JSON text with round-trippable floats."""
    if fmt == "json":
        clean = []
        for row in rows:
            clean.append({k: (bool(v) if isinstance(v, np.bool_) else
                              int(v) if isinstance(v, np.integer) else
                              float(v) if isinstance(v, np.floating) else v)
                          for k, v in row.items()})
        return json.dumps(clean, indent=2) + "\n"
    if not rows:
        return ""
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_cell(row[key]) for key in header))
    return "\n".join(lines) + "\n"


def run_experiment(cfg: ExperimentConfig):
    """Build the rows for cfg, write the report file, print a summary.

    Returns (rows, path, n_failed); infeasible instances become row-level
    markers in the ``status`` column rather than aborting the run.
    """
    if cfg.kind not in _BUILDERS:
        raise ConfigError(f"unknown experiment kind {cfg.kind!r}")
    rows = _BUILDERS[cfg.kind](cfg)
    path = cfg.out or f"{cfg.kind}.{cfg.format}"
    text = render_report(rows, cfg.format)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    n_failed = sum(1 for row in rows if row.get("status") != "ok")
    print(f"{cfg.kind}: wrote {len(rows)} rows to {path}"
          + (f" ({n_failed} infeasible)" if n_failed else ""))
    return rows, path, n_failed
