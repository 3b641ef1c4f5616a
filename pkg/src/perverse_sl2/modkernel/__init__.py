"""Modules over groups and finite-dimensional algebras as matrix representations."""
from .rep import (
    ModuleError, Quotient, Representation, Submodule, direct_sum, dual, frobenius_twist,
    get_global_seed, monomials, opposite, quotient, rng_for, set_global_seed, submodule,
    submodule_generated, sym_power, tensor, trivial_module, zero_module,
)
from .homs import HomBasis, hom_dim, hom_space, hom_space_kron, is_hom, spin
from .structure import (
    Ambient, ProjectiveCover, SubmoduleChain, composition_factors, ext1_dim, loewy_layers,
    multiplicity, projective_cover, radical, socle, socle_layers, socle_multiplicities,
    stable_hom_dim, syzygy, top_multiplicities,
)
from .split import (
    SplitError, Summand, UndecidedIsomorphism, find_isomorphism, fitting_split, is_indecomposable,
    is_isomorphic, local_check,
)
from .serialize import dump_representation, load_representation
