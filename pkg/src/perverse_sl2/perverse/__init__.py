"""Perverse-equivalence bookkeeping and the hypothesis checks of the tilting string."""
from .data import (
    FilteredPerverseData, HomologyProfile, PerverseError, PosetPerverseData, coarsest_poset,
    compose, identity_data, linear_filtration, refine_filtration, refine_order, reverse,
    to_poset, topological_order, transitive_closure, transitive_reduction, validate_filtered,
    validate_poset,
)
from .images import (
    Image, basic_module, build_simple_images, check_duality, graded, hom_complex_dims,
    image_layers, images_profile, largest_submodule_with, module_sandwich,
    socle_constrained_submodule, strip_socle, top_constrained_quotient, verify_smc,
)
from .checks import (
    block_times, check_composition_criteria, check_okuyama_conditions, check_simple_tracing,
    check_tpc, compute_K, tilde,
)
from .verify import (
    PI_CONVENTION, check_green_images, check_step_perversity, step_filtration, step_images,
    verify_block,
)
