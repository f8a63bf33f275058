"""Diagrams of chain complexes over a Reedy category: (co)limits, latching
and matching objects, Reedy classification, Kan extensions, the copower
adjunction with set presheaves, tensors and enriched homs."""

from .boxdot import (
    boundary_representable,
    check_two_variable_adjunction,
    generating_set,
    mor_boxdot,
    pushout_diagram,
    representable,
)
from .core import (
    COVARIANT,
    PRESHEAF,
    Diagram,
    DiagramError,
    DiagramMap,
    SetPresheaf,
    constant,
    validate_diagram,
    validate_diagram_map,
    validate_set_presheaf,
)
from .kan import left_kan, left_quillen_oracle, restrict, right_quillen_oracle
from .limits import (
    classify_objectwise,
    classify_reedy,
    colimit,
    has_lifting_property,
    latching_object,
    limit,
    matching_object,
    solve_lifting,
)
from .monoidal import (
    day_convolution,
    diagonal_hom,
    diagonal_tensor,
    enriched_hom,
    exterior_tensor,
    pushout_product,
)

__all__ = [
    "COVARIANT", "PRESHEAF", "Diagram", "DiagramError", "DiagramMap", "SetPresheaf",
    "boundary_representable", "check_two_variable_adjunction", "classify_objectwise",
    "classify_reedy", "colimit", "constant", "day_convolution", "diagonal_hom", "diagonal_tensor",
    "enriched_hom", "exterior_tensor", "generating_set", "has_lifting_property", "latching_object",
    "left_kan", "left_quillen_oracle", "limit", "matching_object", "mor_boxdot", "pushout_diagram",
    "pushout_product", "representable", "restrict", "right_quillen_oracle", "solve_lifting",
    "validate_diagram", "validate_diagram_map", "validate_set_presheaf",
]
