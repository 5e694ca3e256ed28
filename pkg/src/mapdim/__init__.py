"""Order dimension of incidence posets of planar maps."""
from .incidence import vef_poset, vf_poset
from .oracle import dim_at_most, dimension
from .pathlike import build_vef_realizer, permissible_coloring
from .planar_map import PlanarMap, dual
from .poset import Poset, critical_pairs, verify_realizer
from .vfbuilder import build_vf_realizer

__all__ = [
    "PlanarMap", "Poset", "build_vef_realizer", "build_vf_realizer", "critical_pairs",
    "dim_at_most", "dimension", "dual", "permissible_coloring", "vef_poset", "verify_realizer",
    "vf_poset",
]
__version__ = "0.1.0"
