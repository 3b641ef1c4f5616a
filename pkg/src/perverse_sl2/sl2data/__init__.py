"""SL(2,q) in defining characteristic: simple modules, blocks, Borel data."""
from .groups import GroupSpec, borel_group, coset_representatives, induction_data, sl2_group
from .modules import (
    BlockSpec, block_by_name, block_of, blocks, borel_element, borel_simple, cartan_borel, digits,
    induce_from_borel, natural_module, restrict_to_borel, simple_module, steinberg, torus_induced,
)
from .context import SL2Context, context, pin_borel_convention
