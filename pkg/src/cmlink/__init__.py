"""Exact commutative algebra for linkage-based ideal membership.

Sparse multivariate polynomials over QQ (optionally with inverted
parameters), Groebner bases and syzygies, Koszul complexes and free
resolutions, the comparison morphism between them, colon-ideal linkage,
and the Weierstrass/Euclid pipeline emitting residue-current recipes.
"""

from .complexes import (
    ChainComplex,
    ComplexError,
    ExactnessReport,
    FreeResolution,
    KoszulComplex,
    free_resolution,
    is_cohen_macaulay,
    koszul_complex,
    verify_exactness,
)
from .groebner import (
    GREVLEX,
    DivisionResult,
    Ideal,
    buchberger,
    divide_exact,
    eliminate,
    ideal_codim,
    ideal_colon,
    ideal_intersect,
    ideal_member,
    ideal_sum,
    normal_form,
    reduce_poly,
    s_polynomial,
)
from .linkage import (
    ComplexMorphism,
    ContainmentFailureError,
    GenericCIError,
    LinkageReport,
    MorphismError,
    comparison_morphism,
    det_transform_member,
    generic_ci,
    link_decomposition_check,
    membership_via_link,
)
from .modules import (
    ModuleOrder,
    NotInImageError,
    PolyMatrix,
    det_bareiss,
    lift_through,
    module_groebner,
    module_normal_form,
    syzygy_matrix,
)
from .poly import (
    LEX,
    LinearChange,
    MonomialOrder,
    OriginPoleError,
    ParseError,
    Polynomial,
    Ring,
    RingMismatchError,
    SingularMatrixError,
    apply_linear_change,
    block_order,
    grevlex_order,
    lex_order,
    parse_poly,
    parse_ring_header,
    poly_mul,
)
from .weier import (
    CurrentRecipe,
    NotRegularError,
    RecipeError,
    WeierstrassForm,
    current_recipe,
    extended_euclid,
    resultant_sylvester,
    weierstrass_ready,
)

__all__ = [
    "ChainComplex",
    "ComplexError",
    "ComplexMorphism",
    "ContainmentFailureError",
    "CurrentRecipe",
    "DivisionResult",
    "ExactnessReport",
    "FreeResolution",
    "GREVLEX",
    "GenericCIError",
    "Ideal",
    "KoszulComplex",
    "LEX",
    "LinearChange",
    "LinkageReport",
    "ModuleOrder",
    "MonomialOrder",
    "MorphismError",
    "NotInImageError",
    "NotRegularError",
    "OriginPoleError",
    "ParseError",
    "PolyMatrix",
    "Polynomial",
    "RecipeError",
    "Ring",
    "RingMismatchError",
    "SingularMatrixError",
    "WeierstrassForm",
    "apply_linear_change",
    "block_order",
    "buchberger",
    "comparison_morphism",
    "current_recipe",
    "det_bareiss",
    "det_transform_member",
    "divide_exact",
    "eliminate",
    "extended_euclid",
    "free_resolution",
    "generic_ci",
    "grevlex_order",
    "ideal_codim",
    "ideal_colon",
    "ideal_intersect",
    "ideal_member",
    "ideal_sum",
    "is_cohen_macaulay",
    "koszul_complex",
    "lex_order",
    "lift_through",
    "link_decomposition_check",
    "membership_via_link",
    "module_groebner",
    "module_normal_form",
    "normal_form",
    "parse_poly",
    "parse_ring_header",
    "poly_mul",
    "reduce_poly",
    "resultant_sylvester",
    "s_polynomial",
    "syzygy_matrix",
    "verify_exactness",
    "weierstrass_ready",
]

__version__ = "0.1.0"
