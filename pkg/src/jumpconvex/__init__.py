"""Jump systems, jump M- and M-natural-convex functions, and their operations."""

from .core import (
    DimensionError,
    EmptyDomainError,
    IntBox,
    IntVector,
    JumpConvexError,
    increment_pairs,
    increments,
    parity,
    vec,
)
from .embed import MalformedLiftError, tilde_fn, tilde_set, untilde_fn, untilde_set
from .functions import (
    INF,
    DiscreteFunction,
    check_jm_exc,
    check_jm_exc_loc,
    check_jmnat_exc,
    domain,
    is_jump_m_convex,
    is_jump_mnat_convex,
    local_search_minimize,
    minimize,
    replay_fn,
)
from .systems import (
    AxiomVerdict,
    ClassReport,
    PointSet,
    Witness,
    check_bexc,
    check_jexc,
    check_jexc_plus,
    check_jnat_exc,
    check_two_step,
    classify,
    is_constant_parity,
    is_constant_sum,
    replay_set,
)

__version__ = "0.1.0"
