from polar_roadmap.groebner.ideal import GroebnerBasis, Ideal
from polar_roadmap.groebner.operations import (
    elimination_ideal,
    groebner_basis,
    ideal_membership,
    intersect_ideals,
    krull_dimension,
    normal_form,
    quotient_basis,
    saturation,
)

__all__ = [
    "GroebnerBasis",
    "Ideal",
    "elimination_ideal",
    "groebner_basis",
    "ideal_membership",
    "intersect_ideals",
    "krull_dimension",
    "normal_form",
    "quotient_basis",
    "saturation",
]
