"""Locally private counting of below-threshold triangles in weighted graphs."""

from .graph import (
    GraphStructureError,
    Triangle,
    WeightedGraph,
    canonical_edge,
    enumerate_triangles,
    exact_below_threshold_count,
    make_triangle,
    triangle_weight,
)
from .assignment import (
    Assignment,
    InstanceTooLargeError,
    brute_force_optimal_assign,
    count_c4_instances,
    greedy_assign,
)
from .mechanisms import (
    PrivacyBudget,
    RandomSource,
    SmoothNoiseConfig,
    dlap_cdf,
    dlap_pmf,
    dlap_sample,
    laplace_sample,
    privatize_weight_vector,
    smooth_noise_sample,
)
from .estimators import (
    EstimatorKind,
    biased_indicator,
    closed_form_moments,
    expected_biased,
    h_value,
)
from .ostree import OrderStatTree
from .target_index import DoubleTargetIndex, SingleTargetIndex
from .sensitivity import (
    SmoothSensInstance,
    build_instance,
    global_sensitivity,
    joint_kth_distance,
    local_sensitivity,
    smooth_sensitivity,
    smooth_sensitivity_biased,
    smooth_sensitivity_bruteforce,
    smooth_sensitivity_unbiased,
)
from .protocol import (
    Mechanism,
    RunReport,
    communication_report,
    run_baseline,
    run_two_step,
)
from .experiments import (
    ExperimentConfig,
    ErrorReport,
    default_lambda,
    generate_synthetic,
    induced_subgraph,
    milan_scale_weights,
    parse_edge_list,
    run_sweep,
    sample_induced_subgraph,
    write_edge_list,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
