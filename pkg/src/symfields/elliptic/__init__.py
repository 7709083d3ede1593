"""Elliptic curves in Weierstrass form: invariants, the group H, twist data
and the maps beta_{q,a}."""

from .isomorphism import isomorphic_over, isomorphism_classes, orbit, smooth_short_forms
from .reduction import char_reduction_consistency
from .twists import (
    BetaMap,
    ShortFormInvariants,
    TwistDatum,
    beta_image,
    beta_map,
    char2_a4_class,
    char2_a6_class,
    char2_ordinary_class,
    char3_a6_class,
    char3_ordinary_class,
    cokernel_size_by_enumeration,
    isomorphic_by_invariants,
    power_class,
    short_form_invariants,
)
from .weierstrass import (
    BInvariants,
    HTransform,
    WeierstrassQuintuple,
    b_invariants,
    discriminant,
    h_transform,
    is_smooth,
    j_invariant,
)

__all__ = [
    "BInvariants", "BetaMap", "HTransform", "ShortFormInvariants", "TwistDatum", "WeierstrassQuintuple",
    "b_invariants", "beta_image", "beta_map", "char2_a4_class", "char2_a6_class", "char2_ordinary_class",
    "char3_a6_class", "char3_ordinary_class", "char_reduction_consistency", "cokernel_size_by_enumeration",
    "discriminant", "h_transform", "is_smooth", "isomorphic_by_invariants", "isomorphic_over",
    "isomorphism_classes", "j_invariant", "orbit", "power_class", "short_form_invariants", "smooth_short_forms",
]
