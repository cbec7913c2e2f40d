"""Pliable index codes built from conflict-free colorings of hypergraphs."""

from .coloring import (
    KFoldColoring,
    exact_chi_cf,
    expand_to_kfold,
    greedy_cf_coloring,
    is_cf,
    is_cf_for_edge,
)
from .collection import (
    ColoringCollection,
    binary_collection,
    bucket_cover,
    bucket_decomposition,
    build_log2_collection,
    exact_alpha_cf,
    is_cf_collection,
    random_round_coloring,
)
from .encoder import (
    FieldMatrix,
    ReceiverVerdict,
    cover_mds_stack,
    decode,
    encode,
    indicator_matrix,
    mds_generator,
    mds_matrix,
    satisfies_receiver,
    stack,
    validate_encoder,
)
from .errors import BudgetExceeded, InvalidInputError, PicodError, ResampleCapExceeded
from .field import rank, solve_left
from .instance import (
    IntersectionProfile,
    PicodInstance,
    complete_two_uniform,
    example2,
    example3,
    gamma,
    load,
    pentagon,
    random_instance,
    save,
)
from .localcf import (
    EssentialSelection,
    delta_of,
    edges_satisfied,
    exact_delta_k,
    exact_lambda_k,
    merge_collection,
    min_delta_for_coloring,
)
from .oracle import brute_force_length, certify_chain

__version__ = "0.1.0"
