"""Online pickup-and-delivery on circuits and lines.

Thin wrapper over the C++ core: instance generators, exact offline optima
(interval coloring on circuits, min-cost integer flow on lines), the online
dispatch policies, and policy-vs-optimum evaluation.
"""

from ._core import (  # noqa: F401
    Instance,
    arc_loads,
    evaluate,
    gen_adversary,
    gen_scenario,
    opt_cost,
    run_policy,
)

__all__ = [
    "Instance",
    "arc_loads",
    "evaluate",
    "gen_adversary",
    "gen_scenario",
    "opt_cost",
    "run_policy",
]
