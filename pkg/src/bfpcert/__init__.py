"""Non-realizability certificates for oriented matroids.

Non-degenerate pivot cycles of oriented matroid programs are converted into
biquadratic final polynomials; an exact rational LP over the log-linearized
biquadratic system serves as an independent second route.
"""

__version__ = "0.1.0"

from .biquadratic import BiquadraticSystem, bracket_normal_form, enumerate_system, normalize_pair
from .certify import (
    BfpCertificate,
    VerificationReport,
    certify,
    classify_gp,
    cycle_to_bfp,
    gp_relation_for_pivot,
    verify_certificate,
)
from .chirotope import AxiomReport, Chirotope, VectorConfiguration, check_axioms, is_uniform
from .omp import (
    OMProgram,
    affine_bases,
    build_pivot_graph,
    classify_pivot,
    find_nondegenerate_cycle,
    is_euclidean,
    pivot_direction,
    vertex,
)
from .rational_lp import bfp_from_farkas, encode_system, solve_feasibility

__all__ = [
    "AxiomReport",
    "BfpCertificate",
    "BiquadraticSystem",
    "Chirotope",
    "OMProgram",
    "VectorConfiguration",
    "VerificationReport",
    "affine_bases",
    "bfp_from_farkas",
    "bracket_normal_form",
    "build_pivot_graph",
    "certify",
    "check_axioms",
    "classify_gp",
    "classify_pivot",
    "cycle_to_bfp",
    "encode_system",
    "enumerate_system",
    "find_nondegenerate_cycle",
    "gp_relation_for_pivot",
    "is_euclidean",
    "is_uniform",
    "normalize_pair",
    "pivot_direction",
    "solve_feasibility",
    "verify_certificate",
    "vertex",
]
