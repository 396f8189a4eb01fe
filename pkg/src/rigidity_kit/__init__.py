"""Flexibility and rigidity of bar-joint frameworks built from parallelograms.

The package decides NAC-colorings, computes ribbons and bracing graphs,
builds explicit flexes, and generates exact Penrose rhombus patches.
"""

from .cyclotomic import Cyclo5, QSqrt5
from .dixon import DixonLinkage, dixon_flex, dixon_flexible
from .framework import (
    Flex,
    Framework,
    check_flex,
    evaluate_flex,
    flex_from_nac,
    pframework_flex,
    ribbon_directions,
    symmetric_flex,
    validate_framework,
    validate_parallelogram,
)
from .graph import Graph, SymmetryAction, four_cycles, validate_symmetry_action
from .nac import (
    EdgeColoring,
    TowerInstance,
    enumerate_nac,
    is_cartesian,
    is_nac,
    is_nac_oracle,
    is_symmetric_nac,
    tower_chain,
)
from .penrose import (
    PenrosePatch,
    PentagridParams,
    brace,
    generate_patch,
    monte_carlo_rigidity,
    symmetric_patch,
    tile_type,
    verify_ribbon_properties,
)
from .ribbons import (
    BracedGraph,
    braced_ribbons,
    cartesian_nac_from_partition,
    compute_ribbons,
    decide_rigidity,
    decide_symmetric_rigidity,
    is_ribbon_cutting,
    quotient_bracing_graph,
    ribbon_graph,
)

__all__ = [
    "BracedGraph",
    "Cyclo5",
    "DixonLinkage",
    "EdgeColoring",
    "Flex",
    "Framework",
    "Graph",
    "PenrosePatch",
    "PentagridParams",
    "QSqrt5",
    "SymmetryAction",
    "TowerInstance",
    "brace",
    "braced_ribbons",
    "cartesian_nac_from_partition",
    "check_flex",
    "compute_ribbons",
    "decide_rigidity",
    "decide_symmetric_rigidity",
    "dixon_flex",
    "dixon_flexible",
    "enumerate_nac",
    "evaluate_flex",
    "flex_from_nac",
    "four_cycles",
    "generate_patch",
    "is_cartesian",
    "is_nac",
    "is_nac_oracle",
    "is_ribbon_cutting",
    "is_symmetric_nac",
    "monte_carlo_rigidity",
    "pframework_flex",
    "quotient_bracing_graph",
    "ribbon_directions",
    "ribbon_graph",
    "symmetric_flex",
    "symmetric_patch",
    "tile_type",
    "tower_chain",
    "validate_framework",
    "validate_parallelogram",
    "validate_symmetry_action",
    "verify_ribbon_properties",
]

__version__ = "0.1.0"
