"""Graph amplitudes of point configurations in R^3 and related inequalities."""

__version__ = "0.1.0"

from .amplitude import (
    AmplitudeResult,
    EdgeSpinorSystem,
    amplitude,
    amplitude_bruteforce,
    amplitude_complete,
    amplitude_frontier,
    amplitude_tree,
    build_spinor_system,
)
from .atiyah import a_constant, atiyah_determinant, atiyah_polynomials
from .errors import (
    BudgetExceeded,
    CoincidentPoints,
    DimensionMismatch,
    NotATree,
    NotPSD,
    SearchExhausted,
    TooLarge,
)
from .geometry import direction, hopf_lift, inner, jtilde, omega
from .graphs import SimpleGraph, enumerate_nonisomorphic
from .matrix import Partition, check_conjecture_d, f_sim, gram_matrix, permanent, random_psd
from .oracle import amplitude_tensor_contraction, amplitude_tensor_oracle
