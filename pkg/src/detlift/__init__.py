"""Completion and determinant lifting of 2x2 unimodular matrices over commutative rings.

Decides, and builds verified witnesses for, four properties of a unimodular
``A = [[a, b], [c, d]]``: extendability to a determinant-1 3x3 matrix, simple
extendability (the (3,3) entry can be 0), determinant liftability and weak
determinant liftability.
"""

from .bezout import (
    HenselLift,
    NonFullFactorization,
    SnfResult,
    det_lift_witness,
    hensel_det_lift,
    nonfull_factor,
    simple_extension_witness,
    smith_normal_form,
)
from .census import CensusReport, enumerate_um2, run_census
from .construct import (
    IdentityReport,
    Role,
    Witness,
    bordered,
    build_extension,
    check_identities,
    companion,
    lift_matrix,
    phi_eval,
    rho_witness,
    transport_witness,
)
from .errors import DetliftError
from .finite import (
    Classification,
    classify,
    decide_det_liftable,
    decide_det_liftable_direct,
    decide_extendable,
    decide_simply_extendable,
    decide_weakly_det_liftable,
    phi_root_search,
    refine_phi_root,
    wj21_check,
)
from .mat import Mat2, Mat3, adjugate2, congruent_mod, det2, det3, is_unimodular2, mat_mul, trace2
from .rings import (
    GaloisPrime,
    Integers,
    Modular,
    PolyOverPrime,
    PolyQuotient,
    Product,
    arith,
    divides,
    elements,
    extended_gcd,
    ideal_contains_one,
    is_nilpotent,
    is_unit,
    make_ring,
)
from .ringspec import parse_element, parse_matrix2, parse_matrix3, parse_ring, parse_ring_spec

__version__ = "0.1.0"
