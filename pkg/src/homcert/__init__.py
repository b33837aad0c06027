"""homcert: exact verification of low-degree abelian-cohomology identities,
module membership certificates, and cusp-ring constructions.

Everything is computed over arbitrary-precision integers; every check either
reproduces a closed-form value or emits a certificate that can be re-verified
by independent expansion.
"""

from homcert.intlinalg import (
    IntMatrix,
    NotAComplexError,
    PresentedGroup,
    SmithForm,
    hnf,
    homology,
    kernel,
    rank,
    snf,
    snf_factors,
    solve,
)
from homcert.groups import FinGenAbGroup

__version__ = "0.1.0"

__all__ = [
    "IntMatrix",
    "NotAComplexError",
    "PresentedGroup",
    "SmithForm",
    "FinGenAbGroup",
    "hnf",
    "homology",
    "kernel",
    "rank",
    "snf",
    "snf_factors",
    "solve",
    "__version__",
]
