"""Instance reductions with witness translators."""

from .base import ReductionOutput, VerificationReport, check_witness, compose, verify_reduction
from .color_coding import LazyUnion, color_code_embedding
from .connectify import (
    connectify_td,
    connectify_td_reduction,
    connectify_tw,
    connectify_tw_reduction,
    expand_target,
    prepare_tw_decomposition,
)
from .decomposition import reduce_via_tree_decomposition
from .hashing import HashParams, find_injective_hash, hash_eval, primes_below
from .path_chain import (
    dipath_to_stpath,
    exact_length_form,
    homstar_path_to_dipath,
    stpath_to_cyclestar,
    stpath_to_dicycle,
)
from .structure_chain import (
    reduce_add_constants,
    reduce_core_to_structure,
    reduce_drop_constants_core,
    reduce_gaifman_to_structure,
    reduce_minor_to_host,
)
