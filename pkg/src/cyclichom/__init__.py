"""Exact computation of the eight flavours of cyclic homology of mixed complexes."""

from .cyclic import (CyclicComplex, connes_equivalences, connes_homology,
                     convention_intertwiner, corollary_cyccochain_check, k_map,
                     polynomial_resolution, theta_total, to_mixed, validate_relations)
from .dga import (DgaSpec, hochschild, normalized_mixed, reduced_mixed, reduced_precyclic,
                  validate_dga)
from .dual import cyclic_dual_check, dualize, duality_check
from .mixed import (Flavour, MixedComplex, MixedMorphism, ModuleTable, Window, cone,
                    direct_sum, flavour_homology, morphism_flavour_map, shift, validate_mixed)
from .models import (FreeGCASpec, builtin, equivariant_loop_table, loop_model, quiso_chain,
                     sphere_cohomology)
from .report import Report
from .sequences import gysin_check

__all__ = [
    "CyclicComplex", "DgaSpec", "Flavour", "FreeGCASpec", "MixedComplex", "MixedMorphism",
    "ModuleTable", "Report", "Window", "builtin", "cone", "connes_equivalences",
    "connes_homology", "convention_intertwiner", "corollary_cyccochain_check",
    "cyclic_dual_check", "direct_sum", "dualize", "duality_check", "equivariant_loop_table",
    "flavour_homology", "gysin_check", "hochschild", "k_map", "loop_model",
    "morphism_flavour_map", "normalized_mixed", "polynomial_resolution", "quiso_chain",
    "reduced_mixed", "reduced_precyclic", "shift", "sphere_cohomology", "theta_total",
    "to_mixed", "validate_dga", "validate_mixed", "validate_relations",
]
