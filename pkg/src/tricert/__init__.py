"""tricert: exact-arithmetic certificates for the triangulated structure on P(Z/4).

The package computes, in exact modular arithmetic, both sides of a
contradiction: the triple bracket of (2, 2, 2) on the free rank-one
Z/4-module is nonzero, while every degree-3 cohomology class of the
bracket-classifying category that comes from mod-2 coefficients induces a
vanishing bracket on the same diagram.
"""

from .abgroup import Coset, FinAbGroup, GroupHom, Subquotient, subquotient
from .errors import (CoeffsNotReducedError, DimensionError, ImNotInKerError,
                     NoFillInError, NotExactError, NotNaturalError,
                     SizeLimitError, TricertError)
from .frobenius import (FgModule, FgMorphism, injective_hull, is_stably_zero,
                        suspension)
from .toda import TodaBracket, TodaInput, bracket_of_triangle, indeterminacy, toda_bracket
from .triangles import (CandidateTriangle, Homotopy, TriangleMorphism,
                        cone_of_map, decompose_exact, direct_sum,
                        is_contractible, is_exact, mapping_cone,
                        octahedron_modify, solve_homotopy, x2_triangle)
from .zmod import SmithForm, ZModMatrix, smith_normal_form, solve

__version__ = "0.1.0"

__all__ = [
    "ZModMatrix", "SmithForm", "smith_normal_form", "solve",
    "FinAbGroup", "Coset", "GroupHom", "Subquotient", "subquotient",
    "FgModule", "FgMorphism", "injective_hull", "suspension", "is_stably_zero",
    "CandidateTriangle", "TriangleMorphism", "Homotopy",
    "x2_triangle", "direct_sum", "solve_homotopy", "is_contractible",
    "mapping_cone", "cone_of_map", "is_exact", "decompose_exact",
    "octahedron_modify",
    "TodaInput", "TodaBracket", "toda_bracket", "indeterminacy",
    "bracket_of_triangle",
    "TricertError", "DimensionError", "ImNotInKerError", "NotExactError",
    "SizeLimitError", "CoeffsNotReducedError", "NotNaturalError", "NoFillInError",
    "__version__",
]
