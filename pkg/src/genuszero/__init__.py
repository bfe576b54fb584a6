"""Combinatorics of the genus zero modular operad.

Stable trees and their morphisms (:mod:`.trees`), boundary strata of the
moduli spaces of stable curves (:mod:`.strata`), cofinite permutations and
posets in groupoids (:mod:`.symmetric`), and the tower of groups mGT_q with
its projective-limit truncations (:mod:`.mgt`).
"""

from . import mgt, strata, symmetric, trees
from .errors import GenusZeroError, OutOfRange
from .strata import build_poset, codim_profile, enumerate_trees
from .trees import StableTree, are_isomorphic, canonical_code, glue

__version__ = "0.1.0"
