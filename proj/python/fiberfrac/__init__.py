"""Fiber-network fracture solver with embedded softening hinges."""

from ._fiberfrac import (
    Error,
    FiberSection,
    FormatError,
    HingeState,
    InvalidConfig,
    NetworkModel,
    alpha_max,
    cantilever_model,
    fiber_table_section,
    generate_network,
    solve,
    update_hinge,
)

__all__ = [
    "Error",
    "FiberSection",
    "FormatError",
    "HingeState",
    "InvalidConfig",
    "NetworkModel",
    "alpha_max",
    "cantilever_model",
    "fiber_table_section",
    "generate_network",
    "solve",
    "update_hinge",
]
