"""Realizability of candidate surface branched covers.

Decide whether a candidate branched cover between closed surfaces is
realized by an actual map, either by exhibiting permutation monodromy or by
one of the known exceptionality criteria, and cross-check those criteria
against an exhaustive search.
"""
from .arith import is_loeschian, is_sum_of_two_squares
from .core import (
    PROJECTIVE_PLANE,
    SPHERE,
    TORUS,
    Applies,
    CandidateCover,
    Exceptional,
    Partition,
    Realizable,
    Surface,
    Unknown,
    euler_characteristic,
    normalize_partition,
)
from .criteria import (
    CriterionConflict,
    audit_candidate,
    criterion_23,
    criterion_53,
    criterion_chi_nonpositive,
    criterion_dminus2,
    criterion_even_juxtaposition,
    criterion_multiple_k,
    criterion_odd_divisor,
    decide,
    halve_candidate,
)
from .harness import emit_report, run_campaign, verify_prime_conjecture
from .orbifold import (
    Geometry,
    Orbifold,
    chi_orb,
    classify_geometry,
    criterion_orbifold,
    induced_orbifold_cover,
)
from .permgroup import (
    MonodromyWitness,
    SearchBudget,
    compose,
    conjugacy_class_stream,
    cycle_type,
    inverse,
    is_transitive,
    realizable_by_search,
    verify_witness,
)
from .validation import (
    InvalidCandidate,
    check_candidate,
    enumerate_candidates,
    forced_cover_surface,
    parse_candidate,
    validate_candidate,
)

__version__ = "0.1.0"
