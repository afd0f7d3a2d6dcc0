"""Finite subset spaces of finite simplicial sets: construction, exact
integer homology, and connectivity verification."""

from .simplicial import (DegeneracyWord, FormalSimplex, SimplicialSet,
                         SimplicialError, ValidationReport, apply_face,
                         compose_degeneracy, enumerate_level,
                         find_isomorphism, load_simplicial_set, validate)
from .spaces import WedgeSpec, sphere, subdivided_circle, wedge
from .expk import (ExpkSpace, ResourceCapError, SubsetSimplex, build_expk,
                   colimit_level_oracle, strip_degeneracies)
from .homology import (ChainComplex, ChainComplexError, HomologyResult,
                       SmithResult, homology, normalized_chains,
                       smith_normal_form, space_homology)

__all__ = [
    "DegeneracyWord", "FormalSimplex", "SimplicialSet", "SimplicialError",
    "ValidationReport", "apply_face", "compose_degeneracy", "enumerate_level",
    "find_isomorphism", "load_simplicial_set", "validate",
    "WedgeSpec", "sphere", "subdivided_circle", "wedge",
    "ExpkSpace", "ResourceCapError", "SubsetSimplex", "build_expk",
    "colimit_level_oracle", "strip_degeneracies",
    "ChainComplex", "ChainComplexError", "HomologyResult", "SmithResult",
    "homology", "normalized_chains", "smith_normal_form", "space_homology",
]

__version__ = "0.1.0"
