"""Quarter-wave impedance-matching design by particle swarm search.

The heavy lifting lives in the compiled ``swarmmatch._core`` extension; this
package just re-exports its public surface. Impedance vectors are always
ordered load-adjacent first.
"""

from swarmmatch._core import (
    Bound,
    ConfigError,
    DesignProblem,
    DesignResult,
    DomainError,
    SingularityError,
    SwarmConfig,
    RunResult,
    SweepSettings,
    Termination,
    __version__,
    cascade_fitness,
    check_ordering,
    closed_form_fitness,
    default_swarm_config,
    design,
    ordering_penalty,
    reflection,
    run,
    verify,
)

__all__ = [
    "Bound",
    "ConfigError",
    "DesignProblem",
    "DesignResult",
    "DomainError",
    "SingularityError",
    "SwarmConfig",
    "RunResult",
    "SweepSettings",
    "Termination",
    "__version__",
    "cascade_fitness",
    "check_ordering",
    "closed_form_fitness",
    "default_swarm_config",
    "design",
    "ordering_penalty",
    "reflection",
    "run",
    "verify",
]
