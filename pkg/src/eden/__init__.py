"""Garden of Eden toolkit: cellular automata on subshifts, strong irreducibility,
entropy, independence and principal algebraic actions."""

from eden.automaton import BlockCode, ClassificationReport, classify, eca, linear_code
from eden.entropy import entropy_estimate, entropy_exact_1d, entropy_gap_bound
from eden.errors import (CapacityError, EdenError, GapError, InconclusiveError, InvalidInput,
                         InvariantBreach, RepresentationError)
from eden.lattice import Configuration, Pattern, Window
from eden.laurent import LaurentPoly, parse_poly
from eden.principal import fundamental_homoclinic, glue_specification, is_l1_invertible, l1_inverse
from eden.specification import strong_irreducibility_gap, weak_specification_check
from eden.subshift import Subshift, load_shift

__version__ = "0.1.0"

__all__ = [
    "BlockCode", "CapacityError", "ClassificationReport", "Configuration", "EdenError", "GapError",
    "InconclusiveError", "InvalidInput", "InvariantBreach", "LaurentPoly", "Pattern", "RepresentationError",
    "Subshift", "Window", "classify", "eca", "entropy_estimate", "entropy_exact_1d", "entropy_gap_bound",
    "fundamental_homoclinic", "glue_specification", "is_l1_invertible", "l1_inverse", "linear_code",
    "load_shift", "parse_poly", "strong_irreducibility_gap", "weak_specification_check",
]
