"""Complexes of projectives, homotopy classes of maps, and tilting steps."""
from .category import (
    CategoryError, LinearCategory, category_ambient, category_from_projectives, generator_list,
    module_from_spaces, regular_module, simple_cat_module,
)
from .complexes import (
    BlockMat, ProjectiveComplex, bm, check_chain_map, compose_maps, cone, direct_sum, identity_map,
    is_minimal, minimize, notation, shift, stalk, zero_complex,
)
from .chainmaps import ChainMapBasis, hom_k, hom_k_dim
from .tilt import (
    Family, approximation_multiplicities, direct_shape_tilt, elementary_tilt, end_algebra,
    endo_scalar, families_isomorphic, global_shift, isomorphic_complexes, left_approximation,
    lower_at_complement,
    right_approximation, simply_alternating_tilt, stalk_family,
)
from .pipeline import (
    PipelineError, PipelineResult, StepResult, TiltingReport, block_category, family_amplitude,
    grothendieck_matrix, int_det, run_pipeline, verify_tilting,
)
