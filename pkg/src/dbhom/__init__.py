"""Recursive De Bruijn sequences from De Bruijn graph homomorphisms."""

from dbhom.core import Alphabet, Cycle, weight, translate, conjugates, index_of, is_primitive
from dbhom.homo import (
    HomKernel,
    LiftDecomposition,
    make_linear_kernel,
    apply,
    is_property_D,
    lift_sequence,
    lift_cycle_decomposition,
    seed_map,
    count_property_D,
)
from dbhom.construct import (
    ConstructionPlan,
    base_cycle,
    algorithm_A,
    algorithm_B,
    algorithm_AA,
    cross_join_position,
    enumerate_family,
)
from dbhom.binary2 import fixed_seed, decompose_d2, find_cross_join, join
from dbhom.oracle import is_de_bruijn, is_vertex_disjoint, enumerate_de_bruijn, check_lift_structure

__version__ = "0.1.0"
