"""Game-theoretic parking-spot search.

Thin re-export of the compiled ``_core`` extension.
"""

from ._core import (
    CostModel,
    EpisodeResult,
    Graph,
    IntegrityError,
    Knowledge,
    LotLayout,
    Scenario,
    ScenarioError,
    best_response_cost,
    decide,
    feasible_x1_counts,
    load_scenario,
    lot_action_count,
    parking_lot_actions,
    parse_scenario,
    secure_guarded_values,
    random_scenario,
    run_batch,
    run_episode,
    secure_value,
    serialize_scenario,
    vehicle_traversals,
)

__all__ = [name for name in dir() if not name.startswith("_")]
