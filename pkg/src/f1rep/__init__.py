"""Representations of finite quivers over F1: Hom, Yoneda Ext, decomposition, projectivity."""

from ._kernels import BACKEND
from .errors import ContractError, F1RepError, InputError, UnsupportedShapeError
from .f1 import F1Map, PointedSet, compose, dual, enumerate_maps, identity_map, zero_map
from .quiver import (
    Arrow,
    Quiver,
    RepMorphism,
    Representation,
    build_interval,
    canonical_form,
    direct_sum,
    enumerate_morphisms,
    hom_dim,
    isomorphic,
    linear_quiver,
    resolve_name,
)
from .homology import ExactSequence, ExtClassSet, cokernel, ext, image, kernel, leadsto, zero_sequence
from .structure import decompose, is_projective, projective_cover_surjection, split_epi, tree_indecomposables
from .euler import descent_check, euler_form, grothendieck_class
from .gldim import global_dimension

__version__ = "0.1.0"
