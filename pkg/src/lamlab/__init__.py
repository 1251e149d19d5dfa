"""lamlab: exact combinatorics of quadratic invariant laminations and matings."""

from .circle import (
    Angle,
    Arc,
    Leaf,
    angle,
    arc,
    arc_contains,
    conjugate,
    conjugate_leaf,
    crosses,
    double,
    fmt_angle,
    leaf,
    leaf_length,
    parse_angle,
    period_under_doubling,
    preimages,
)
from .errors import (
    DegenerateMinorError,
    DomainError,
    InternalConsistencyError,
    ResourceCapError,
)
from .lamination import (
    LaminationApprox,
    LaminationSpec,
    Polygon,
    arc_clear_of_periodic_leaves,
    build,
    class_angles,
    itinerary,
    leaf_in,
    major_of,
    periodic_leaves,
    polygons_of,
    polygons_of_approx,
    same_class,
    spec_for,
)
from .mating import (
    EquivClass,
    MatingReport,
    MatingSpec,
    check_theorem_3_5,
    class_of,
    detect_linked_gaps,
    mating_spec,
    periodic_classes,
)
from .qml import (
    MinorLeaf,
    companion,
    exact_period_angles,
    is_mateable,
    is_tuning,
    minimal_minor_below,
    pairing_of_period,
    separates_from_zero,
)
from .symdyn import (
    Address24,
    Address313,
    TransitionMatrix,
    count_exact_period,
    count_fixed,
    component_count_from_points,
    enumerate_addresses,
    mandelbrot_component_count,
    refined_itinerary_unique,
    validate_lemma314,
    validate_thm24,
)

__version__ = "0.1.0"
