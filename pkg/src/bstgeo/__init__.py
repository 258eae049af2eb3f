"""Equivalent combinatorial models of the dynamic BST problem on
permutations: pointer-machine traces, satisfied supersets, rectangulation
flips and monotone-tree relaxation, with the transforms between them and
the independent-rectangle / manhattan-network bounds machinery."""

from .geometry import (
    FamilySpec,
    GridFrame,
    PermutationPointSet,
    Point,
    generate,
    make_permutation_point_set,
    manhattan_path,
    manhattan_path_exists,
    orientation,
    rect_is_empty,
)
from .satisfied import (
    OptimumReport,
    PointSuperset,
    Sign,
    brute_force_opt,
    greedy_sweep,
    is_satisfied,
    signed_greedy,
)
from .bst import (
    BstOp,
    BstTrace,
    BstTree,
    TraceError,
    balanced_bst_trace,
    balanced_tree,
    validate_trace,
)
from .rectangulation import (
    CLASS_M,
    CLASS_P,
    ELBOWS_NONE,
    ELBOW_PRESETS,
    Elbow,
    FlipSequence,
    FlipStep,
    InvalidAOp,
    InvalidFlip,
    InvalidRemoval,
    RectState,
    Segment,
    apply_a_flip,
    apply_a_rotate,
    apply_flip,
    enumerate_valid_a_ops,
    enumerate_valid_flips,
    enumerate_valid_removals,
    flip_diameter_bfs,
    initial_state,
    is_end_state,
    is_valid_state,
    linear_flip_sequence_neighbor_elbows,
    remove_segment,
    replay,
)
from .treerelax import (
    EdgeFlip,
    MonotoneTree,
    PotentialReport,
    apply_edge_flip,
    build_path,
    build_treap,
    potentials,
    run_heuristic,
    valid_edge_flips,
)
from .transforms import (
    ELBOWS_FOR_SIGN,
    SIGN_FOR_ELBOWS,
    StuckError,
    a_op_to_flips,
    rect_to_satisfied,
    satisfied_to_rect,
    treerelax_to_rect,
)
from .bounds import (
    IndependentSet,
    MirReport,
    UnsatisfiedRectangle,
    gkks_network,
    is_manhattan_network,
    max_independent_rectangles,
    mir,
    unsatisfied_rectangles,
    verify_signed_mn_lower_bound,
)

__version__ = "0.1.0"
