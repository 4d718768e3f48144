"""
Exact symbolic computation in `C_p`-equivariant complex cobordism.

The package is organized like a small numerical library:

``lazard``
    the universal formal group law, its coefficient tables and integrality
    certificates in the Lazard ring `MU_*`;
``series``
    truncated two-variable power series over `MU_* (x) Q`;
``presentations``
    the geometric ring in normal form, the localized target ring and the
    pullback description of `MU^{C_p}_*`;
``verify``
    relation suites, basis checks and the catalog of geometric generators;
``parser`` and ``cli``
    the expression language and the command-line front end.
"""
from .errors import NotDivisibleError, NotIntegralError, ParseError, TruncationError
from .graded import GradedRational
from .lazard import (FGLContext, LazardElement, divide_by_p, integrality_witness,
                     make_context, n_series, universal_fgl, universal_log_exp)
from .parser import evaluate, parse
from .presentations import (PresentationElement, PullbackElement, TargetElement,
                            mu_ring, omega_ring)
from .series import XUSeries, divide_by_p_series

__version__ = "0.1.0"

__all__ = [
    "NotDivisibleError", "NotIntegralError", "ParseError", "TruncationError",
    "GradedRational", "FGLContext", "LazardElement", "divide_by_p",
    "integrality_witness", "make_context", "n_series", "universal_fgl",
    "universal_log_exp", "evaluate", "parse", "PresentationElement",
    "PullbackElement", "TargetElement", "mu_ring", "omega_ring", "XUSeries",
    "divide_by_p_series",
]
