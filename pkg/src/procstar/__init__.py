"""Universal *-algebra presentations of simplicial sets, with symbolic and numerical checks."""
from .functor import induced_hom, is_proper, verify_relation_preservation
from .presentation import present
from .rewrite import compile_system, decide_equal, normal_form
from .sset import (FiniteSimplicialSet, Simplex, SimplicialMap, disjoint_union, minimal_circle,
                   product, standard_simplex, validate)
from .subdivision import subdivide, subdivide_map

__all__ = [
    "FiniteSimplicialSet", "Simplex", "SimplicialMap", "compile_system", "decide_equal",
    "disjoint_union", "induced_hom", "is_proper", "minimal_circle", "normal_form", "present",
    "product", "standard_simplex", "subdivide", "subdivide_map", "validate",
    "verify_relation_preservation",
]
