"""Exact arithmetic toolkit for chain complexes, CSS codes, lifts of
boundary operators to Z4 and Z, and locality-preserving integer lifts."""

from .exact import ExactMatrix, SmithForm, smith_normal_form, Z2, Z4, ZZ
from .chain import (ChainComplex, ChainMap, HomologyReport, homology,
                    mapping_cylinder, tensor_product, validate_complex)
from .builders import (ResolutionProfile, build_collapse_map, build_interval,
                       build_polygon, build_product, build_rp3,
                       build_telescope, join_spheres)
from .css import (CssCode, add_stabilizer, build_code_b, build_code_c,
                  from_complex, logical_count, sparsity_stats)
from .lifts import (CorrectionPair, LiftPair, LiftReport, ansatz_span_check,
                    apply_correction, cellular_lift, error_matrix,
                    explicit_solution, min_weight_cycle, naive_lift,
                    residual, sparse_search, verify_lift)
from .local import (LocalCircuit, Move, SitedCssCode, apply_circuit,
                    disentangle, integer_lift_local, random_sited_instance,
                    validate_sited, verify_local_lift)

__version__ = "0.1.0"

__all__ = [
    "ExactMatrix", "SmithForm", "smith_normal_form", "Z2", "Z4", "ZZ",
    "ChainComplex", "ChainMap", "HomologyReport", "homology",
    "mapping_cylinder", "tensor_product", "validate_complex",
    "ResolutionProfile", "build_collapse_map", "build_interval",
    "build_polygon", "build_product", "build_rp3", "build_telescope",
    "join_spheres",
    "CssCode", "add_stabilizer", "build_code_b", "build_code_c",
    "from_complex", "logical_count", "sparsity_stats",
    "CorrectionPair", "LiftPair", "LiftReport", "ansatz_span_check",
    "apply_correction", "cellular_lift", "error_matrix", "explicit_solution",
    "min_weight_cycle", "naive_lift", "residual", "sparse_search",
    "verify_lift",
    "LocalCircuit", "Move", "SitedCssCode", "apply_circuit", "disentangle",
    "integer_lift_local", "random_sited_instance", "validate_sited",
    "verify_local_lift",
]
