"""Coset leader graphs of LDPC duals and rate-vs-distance bounds."""

from .bounds import (
    BoundCurve,
    CrossoverError,
    CrossoverResult,
    OptimizationSettings,
    bh_bound,
    crossover,
    entropy,
    gv,
    improved_bound,
    jpl1,
    jpl2,
    lp_chernoff_bound,
    r3_bound,
    r4_bound,
    rho_of_delta,
    sample_curve,
)
from .codes import (
    CodeFormatError,
    LinearCode,
    fingerprint,
    format_code,
    from_supports,
    load_alist,
    load_code,
    parse_alist,
    parse_code,
    save_code,
)
from .cosetgraph import (
    CosetTable,
    ResourceLimitError,
    ball_size,
    build_table,
    coset_index,
    coset_leader,
    diameter,
    exact_leader_probability,
    is_min_weight_in_coset,
    next_sphere_neighbor_count,
)
from .gf2 import BitVector, EchelonBasis, canonical_rep, lex_compare, reduce_echelon, xor_add
from .harness import GeneratorConfig, default_configs, generate_code, run_suite
from .normalize4 import (
    AlphaProfile,
    diameter_bound,
    eliminate_class1,
    exact_structured_minweight_probability,
    max_structure_probability,
    normalize_representative,
    quad_base_dominates,
    structure_probability,
)
from .partition import (
    HeavyClassCertificate,
    Partition,
    chernoff_check,
    chernoff_constant,
    find_heavy_class,
    montecarlo_leader_probability,
    partition_coordinates,
    tuple_containment_count,
    verify_leader_tuple_claim,
)
from .report import VerificationReport, Violation

__version__ = "0.1.0"
