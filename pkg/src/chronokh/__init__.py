"""Unified (covering) Khovanov homology of tangles over Z[X,Y,Z^-1]/(X^2=Y^2=1),
with truncated Jones-Wenzl projector complexes."""

from .ring import BiDegree, RingElem, lam, lambda_mono, parse_elem, EVEN, ODD, MOD2
from .planar import FlatTangle, identity_tangle, tl_generator, matchings, close, stack as stack_flat, trace_closure
from .diagrams import Crossing, TangleDiagram, builtin, braid_tangle, parse_pd, load_pd, resolve, twist_tangle
from .tqft import (Event, apply_birth, apply_death, apply_dot, apply_merge, apply_split, evaluate,
                   evaluate_cobordism)
from .cube import (PROJECTOR, STANDARD, build_complex, chronology_Wv, edge_sign, iota_edge, saddle_type,
                   shift_Wv_bidegree)
from .complex import (GradedComplex, GradedObject, chi_q, chi_q_tl, cone, deloop, flat_complex,
                      gaussian_eliminate, juxtapose, simplify, stack, trace)
from .shifts import WeightedShift, compose_shifts
from .homology import HomologyTable, homology, homology_overR_restricted, smith_normal_form
from .jones import LaurentPoly, jones_normalized, kauffman_bracket, quantum_integer, tl_jones_wenzl
from .projectors import (TruncatedProjector, check_turnback_killing, colored_unknot, p2_explicit,
                         trace_homology_overR, twist_projector)

__version__ = "0.1.0"
