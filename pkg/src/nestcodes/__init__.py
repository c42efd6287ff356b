"""Cyclic subspace codes from nested towers of finite fields."""

from .bounds import johnson, predicted_size, table1_size
from .constructions import (
    construct_mixed,
    construct_multi_prime,
    construct_nested_2e,
    construct_nested_pe,
    construct_rrt,
    construct_zhang,
)
from .field import FieldCtx, make_field
from .nesting import LinMap, map_apply, map_compose, map_scale, odot_chain, odot_codes, odot_subspace
from .orbits import CyclicCode, code_min_distance, code_size, is_sidon, stabilizer_degree
from .subspaces import SubspaceFq, distance, intersect_dim, scalar_mul, span

__version__ = "0.1.0"
