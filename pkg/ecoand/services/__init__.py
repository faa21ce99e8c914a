from ecoand.services.baseline import compare, improvement, simulate_human
from ecoand.services.planner import plan, scenario_at

__all__ = ["compare", "improvement", "plan", "scenario_at", "simulate_human"]
