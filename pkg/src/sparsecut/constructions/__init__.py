"""
Instance factories: random generators, designs and tight families.
"""

from .covering import make_dsc, make_ssc, make_tight_cover
from .designs import (AffineDesign, PlanesPartition, make_affine_design,
                      make_planes_partition)
from .random_instances import (GenParams, gen_random_instance,
                               random_partition, two_stage_instance)
from .registry import (TIGHT_FAMILIES, TightnessCheck, TightnessReport,
                       verify_tightness)
from .tight import (make_tight_3cycle, make_tight_cycle_ns,
                    make_tight_general_ns, make_tight_general_ss,
                    make_tight_star_ss, make_tight_tree_ns)

__all__ = [
    "AffineDesign",
    "GenParams",
    "PlanesPartition",
    "TIGHT_FAMILIES",
    "TightnessCheck",
    "TightnessReport",
    "gen_random_instance",
    "make_affine_design",
    "make_dsc",
    "make_planes_partition",
    "make_ssc",
    "make_tight_3cycle",
    "make_tight_cover",
    "make_tight_cycle_ns",
    "make_tight_general_ns",
    "make_tight_general_ss",
    "make_tight_star_ss",
    "make_tight_tree_ns",
    "random_partition",
    "two_stage_instance",
    "verify_tightness",
]
