"""isojet: exact jet-level contact equivalence of singularities.

Truncated polynomial rings over Q and F_{p^m}, the truncated contact group
and its orbits, logarithmic and Hasse-Schmidt derivation systems, and
desk-scale isosingular scans, all in exact arithmetic.
"""

from .fields import Field, Scalar, field_arith, pth_root
from .linalg import Infeasible, Matrix, Subspace, solve_linear, subspace_ops
from .trunc import (PolySystem, RingSpec, TruncPoly, compose, ideal_span,
                    ring_arith, taylor_shift, unit_ops)
from .contact import (ContactElement, act, group_mul, invert,
                      mather_complement, verify_equivalence_witness,
                      witness_from_cofactors)
from .tangent import (Fingerprint, fingerprint, orbit_tangent_space,
                      quartic_j_invariant, tangent_cone)
from .derlog import (Derivation, InsepCertificate, LogInfeasible, SplitResult,
                     inseparability_certificate, solvable_directions,
                     solve_log_derivation, straighten_and_split)
from .hs import Exhausted, HSDerivation, hs_search, hs_verify
from .isoscan import (ScanReport, brute_force_equiv, classify,
                      decide_equivalence, enumerate_points)
from .parsing import (make_ring, parse_field, parse_point, parse_poly,
                      parse_scalar, parse_system)

__version__ = "0.1.0"

__all__ = [
    "Field", "Scalar", "field_arith", "pth_root",
    "Infeasible", "Matrix", "Subspace", "solve_linear", "subspace_ops",
    "PolySystem", "RingSpec", "TruncPoly", "compose", "ideal_span",
    "ring_arith", "taylor_shift", "unit_ops",
    "ContactElement", "act", "group_mul", "invert", "mather_complement",
    "verify_equivalence_witness", "witness_from_cofactors",
    "Fingerprint", "fingerprint", "orbit_tangent_space",
    "quartic_j_invariant", "tangent_cone",
    "Derivation", "InsepCertificate", "LogInfeasible", "SplitResult",
    "inseparability_certificate", "solvable_directions",
    "solve_log_derivation", "straighten_and_split",
    "Exhausted", "HSDerivation", "hs_search", "hs_verify",
    "ScanReport", "brute_force_equiv", "classify", "decide_equivalence",
    "enumerate_points",
    "make_ring", "parse_field", "parse_point", "parse_poly", "parse_scalar",
    "parse_system",
    "__version__",
]
