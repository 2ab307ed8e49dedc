"""Exact Chern-character calculus for constructive exceptional bundles on P^3.

The public entry points are re-exported here; see the submodules for the
building blocks (K-group arithmetic, perp, mutations, the epsilon map, the
mutation tree, the P^2 companion and the catalog).  The function ``epsilon``
is not re-exported so that ``p3helix.epsilon`` stays the submodule.
"""

from .catalog import audit_table, generate_table, run_verification
from .epsilon import (
    ThreeAdicRational,
    bundle_record,
    distinguished_foundation,
    epsilon_inverse,
    is_globally_generated,
    order,
    parents,
    standard_resolutions,
    wbn_profile,
)
from .helix import Foundation, MutationMove, apply_move, enumerate_mutations, verify_helix_relation
from .kgroup import ChernCharacter, ch_line, chern_classes, dual, euler_chi, euler_pair, slope, twist
from .perp import perp
from .tree import build_tree, verify_tree

__version__ = "0.1.0"

__all__ = [
    "ChernCharacter",
    "Foundation",
    "MutationMove",
    "ThreeAdicRational",
    "apply_move",
    "audit_table",
    "build_tree",
    "bundle_record",
    "ch_line",
    "chern_classes",
    "distinguished_foundation",
    "dual",
    "enumerate_mutations",
    "epsilon_inverse",
    "euler_chi",
    "euler_pair",
    "generate_table",
    "is_globally_generated",
    "order",
    "parents",
    "perp",
    "run_verification",
    "slope",
    "standard_resolutions",
    "twist",
    "verify_helix_relation",
    "verify_tree",
    "wbn_profile",
]
