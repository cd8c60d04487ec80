"""Early-work maximization on identical parallel machines with a common due date.

Given integer job sizes, a machine count and one shared due date, every
solver here maximizes the total work processed before the due date.  The
package offers:

* exact oracles for small instances (:func:`brute_force`, :func:`exact_dp`),
* the LPT list-scheduling heuristic with its structural certificate,
* two approximation schemes driven by an exact unit-fraction accuracy
  parameter: a configuration integer program solved by rational
  branch-and-bound (:func:`solve_eptas`, machine-count independent) and a
  grid dynamic program (:func:`solve_fptas`, for small machine counts),
* a CLI (``earlywork``) with instance generation, verification and a
  benchmark harness.

Hot kernels run from a compiled extension when available; a numpy fallback
is selected automatically (see :func:`backend_name`).
"""

from ._backend import backend_name
from .configip import (
    ConfigProgram,
    ConfigSolution,
    Configuration,
    assemble_rounded_schedule,
    build_config_program,
    count_configurations,
    enumerate_configurations,
    solve_config_ip,
    solve_eptas,
)
from .dp import dp_solve_rounded, dp_table, solve_fptas
from .errors import (
    ContractViolationError,
    EarlyWorkError,
    ResourceLimitError,
    ValidationError,
)
from .generate import GeneratorSpec, default_suite, generate_instance
from .instance import (
    Instance,
    LptDichotomy,
    PreprocessResult,
    Schedule,
    a2_certified,
    evaluate,
    lpt,
    lpt_dichotomy,
    merge_core_schedule,
    normalize_loads,
    preprocess,
)
from .oracles import OracleBudget, brute_force, exact_dp
from .rounding import (
    Classification,
    Delta,
    RoundedInstance,
    RoundedJob,
    RoundedSchedule,
    build_auxiliary,
    classify,
    delta_from_epsilon,
    lift_solution,
    rounding_bound_violations,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    "EarlyWorkError",
    "ValidationError",
    "ContractViolationError",
    "ResourceLimitError",
    "Instance",
    "Schedule",
    "PreprocessResult",
    "LptDichotomy",
    "evaluate",
    "preprocess",
    "lpt",
    "lpt_dichotomy",
    "a2_certified",
    "normalize_loads",
    "merge_core_schedule",
    "Delta",
    "delta_from_epsilon",
    "Classification",
    "classify",
    "RoundedJob",
    "RoundedInstance",
    "build_auxiliary",
    "RoundedSchedule",
    "lift_solution",
    "rounding_bound_violations",
    "Configuration",
    "ConfigProgram",
    "ConfigSolution",
    "count_configurations",
    "enumerate_configurations",
    "build_config_program",
    "solve_config_ip",
    "assemble_rounded_schedule",
    "solve_eptas",
    "dp_solve_rounded",
    "dp_table",
    "solve_fptas",
    "OracleBudget",
    "brute_force",
    "exact_dp",
    "GeneratorSpec",
    "generate_instance",
    "default_suite",
]
