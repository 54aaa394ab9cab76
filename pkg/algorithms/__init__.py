from .cutset import CutsetResult, check_cut_promise, cutset_finder, cutset_parameters
from .edge_finder import (
    edge_finder,
    empirical_distribution,
    measure_directed_edge,
    stconn_program,
    stconn_witness_state,
    total_variation,
)
from .path_finders import (
    SinglePathParameters,
    general_path_finder,
    single_path_finder,
    single_path_parameters,
)
from .subroutines import (
    SteppedSubroutine,
    coupon_expected_samples,
    path_detection_stepper,
    path_detection_steps,
    run_lockstep,
    witness_size_cost,
    witness_size_est,
)
from .witness_generation import (
    ATTEMPT_SUCCESS,
    WitnessState,
    generation_attempts,
    probing_schedule,
    witness_generation,
)

__all__ = (
    "ATTEMPT_SUCCESS",
    "CutsetResult",
    "SinglePathParameters",
    "SteppedSubroutine",
    "WitnessState",
    "check_cut_promise",
    "coupon_expected_samples",
    "cutset_finder",
    "cutset_parameters",
    "edge_finder",
    "empirical_distribution",
    "general_path_finder",
    "generation_attempts",
    "measure_directed_edge",
    "path_detection_stepper",
    "path_detection_steps",
    "probing_schedule",
    "run_lockstep",
    "single_path_finder",
    "single_path_parameters",
    "stconn_program",
    "stconn_witness_state",
    "total_variation",
    "witness_generation",
    "witness_size_cost",
    "witness_size_est",
)
