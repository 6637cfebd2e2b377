"""Exact verification of sumset lower bounds and their equality cases.

Point sets have rational coordinates and every predicate is decided with
``fractions.Fraction`` arithmetic.  The main entry points:

* :func:`minkowski_sum`, :func:`k_fold`, :func:`check_bound` for sumsets and
  their lower bounds;
* :func:`placing_triangulation`, :func:`h_vector`, :func:`is_stacked` for
  triangulations;
* :func:`is_k_critical` and :func:`classify` for the equality cases.
"""

from .criticality import (
    CriticalCase,
    CriticalVerdict,
    check_corollary_kA,
    check_monotonicity,
    classify,
    is_k_critical,
    shelling_criterion,
)
from .errors import ClassifierDefect, DefectError, InputError, SumcritError
from .families import FamilyParams, generate_family
from .geometry import PointSet, affine_dimension, carrier, convex_hull, faces, membership, simplex_volume
from .lattice import (
    ap_decompose,
    difference_lattice,
    dim1_critical,
    interior_stability_count,
    is_stable,
    rational_gcd,
    stable_closure,
)
from .sumsets import (
    BoundReport,
    check_bound,
    corollary_kA_bound,
    corollary_kA_h_bound,
    freiman_bound,
    k_fold,
    minkowski_sum,
    mr_bound,
    refined_bound,
    simplex_sum_cardinality,
)
from .triangulation import (
    classify_shape,
    f_vector,
    find_shelling,
    h_from_f,
    h_from_shelling,
    h_vector,
    is_stacked,
    is_totally_stackable,
    is_unimodular,
    placing_triangulation,
    verify_triangulation,
)

__version__ = "0.1.0"
