"""Exact short pivot sequences for canonical LPs and matrix games."""

from .algebra import Matrix, determinant, is_nonsingular, solve_linear, transpose_solve
from .decompose import (
    CaseTag,
    DecompositionTrace,
    StepSign,
    basis_identities,
    decompose,
    directions,
    ratio_step,
    reduce_once,
    relaxed_reduce,
    replay,
)
from .game import (
    Direction,
    MatrixGame,
    bordered_pair,
    game_decompose,
    game_directions,
    game_reduce_once,
    solve_game,
)
from .model import (
    BasicPair,
    CanonicalLP,
    IndexPartition,
    PartitionCertificate,
    basic_pair,
    check_certificate,
    generate_instance,
    subproblem,
)
from .simplex import Status, solve_canonical

__version__ = "0.1.0"
