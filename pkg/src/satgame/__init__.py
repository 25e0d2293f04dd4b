"""Saturation games on intersecting k-uniform families and on antichains."""

from .engine import (
    GameKind,
    GameState,
    Mode,
    Role,
    RoleAssignment,
    Strategy,
    Transcript,
    apply_move,
    baseline_strategies,
    new_game,
    replay,
    run_game,
)
from .errors import (
    ConsistencyError,
    ForfeitError,
    ParameterError,
    ResourceLimitError,
    RuleViolation,
    SatGameError,
    StateError,
    UniverseTooSmall,
)
from .maximizer import MaximizerStrategy
from .minimizer import MinimizerStrategy
from .setfam import CoverCertificate, KSet, Params, SetFamily, covering_number, legal_moves
from .solver import SolveResult, solve
from .sperner import solve_sperner

__version__ = "0.1.0"
