"""Network construction from ordered connectivity constraints.

Online solvers for general graphs, stars, and paths; the fractional
relaxation with threshold rounding; exact offline oracles; and the
adversaries that pin the competitive ratios.
"""

from .model import (
    ConnectivityConstraint,
    EdgeSet,
    Instance,
    OrderedConstraint,
    ValidationError,
    all_satisfied,
    cost_of,
    edge_key,
    expand_to_connectivity,
    is_connectivity_satisfied,
    is_ordered_satisfied,
)
from .pqtree import (
    DUMMY,
    Infeasible,
    PQTree,
    TraceStep,
    forced_adjacencies,
    frontier,
    new_universal,
    potential,
    reduce,
    stats,
    tree_from_text,
)
from .fractional import CutCertificate, WeightMap, fractional_cost, fractional_satisfy, min_cut_induced
from .online_path import NotPathConsistent, PathSolver
from .online_star import NotStarConsistent, StarSolver
from .online_general import GeneralSolver, replay_rounding, fractional_trajectory, threshold_value
from .adversaries import (
    AdversaryScript,
    ObliviousScript,
    general_lb_instance,
    path_lb_adversary,
    star_lb_adversary,
)
from .oracle import (
    HittingSetInstance,
    OracleCapacityError,
    ReducedInstance,
    brute_force_hitting_set,
    brute_force_opt,
    extract_hitting_set,
    hitting_set_reduction,
)

__all__ = [name for name in dir() if not name.startswith("_")]
