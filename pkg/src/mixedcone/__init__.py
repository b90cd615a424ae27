"""Exact mixed volumes, mixed area measures and their supports for
polytopes and polyoids."""

from .criticality import classify, independent_selection, is_semicritical, switching
from .errors import MixedConeError
from .exact import EpsScalar, Subspace
from .mixedvol import afi_gap, mixed_area_measure, mixed_volume, reduction_check, volume_oracle
from .polyoid import (
    FamilyAtom,
    GeneratingMeasure,
    Verdict,
    certify_extreme,
    supp_membership,
    support_equal_on_ext,
    ts_nontrivial,
)
from .polytope import Polytope, PolytopeFamily, fan_cells, minkowski_sum
from .pruning import prune_star_witness, prune_step, sticky_check
from .touching import cusp, touching_space_polytope

__version__ = "0.1.0"
