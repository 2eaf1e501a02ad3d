"""sigtak: exact computation with signed Takagi functions.

Functions f(x) = sum_n r_n 2^(-n) phi(2^n x) with signs r_n = +-1, phi the
distance to the nearest integer: exact extrema from walk hitting times,
certified evaluation and range enclosures, hump/Catalan combinatorics,
sound level-set covers, and local-level-set statistics.
"""

from ._kernel import backend
from .dyadics import BinaryWord, DyadicRational, WalkTrace, digits, is_balanced, walk
from .errors import BudgetError, DomainError, SignSpecError, SigtakError
from .evaluate import (
    Enclosure,
    c_of_r,
    eval_dyadic,
    eval_enclosure,
    eval_partial,
    eval_via_d,
    phi,
    range_on_interval,
)
from .humps import (
    Hump,
    TruncatedHump,
    catalan,
    catalan_series,
    coverage_of_first_generation,
    enumerate_humps,
    hump_projection,
    pair_with_principal,
    truncated_projection,
)
from .levelsets import (
    LevelCover,
    SkeletonSolution,
    WitnessTriple,
    box_dimension_estimate,
    component_profile,
    f_star,
    in_balanced_image,
    level_cover,
    non_monotonicity_witness,
    solve_on_X,
)
from .localsets import (
    LocalSignature,
    classify_local,
    count_local_level_sets,
    local_class_members,
    principal_representative,
    signature,
)
from .signs import (
    INFINITE,
    ExtremaReport,
    HeightClass,
    HittingTime,
    SignSequence,
    classify_height,
    extrema,
    hitting_time,
    negate,
    parse_spec,
    partial_sum,
    shift,
)
from .stats import (
    CardinalityReport,
    McReport,
    average_local_count,
    banach_lower_bound,
    cardinality_histogram,
    integral_local_count_truncated,
    make_rng,
)

__version__ = "0.1.0"
