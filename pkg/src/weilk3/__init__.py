"""Exact arithmetic of Weil polynomials of K3 type on fourfolds and
Tate-class bookkeeping on their powers.

Everything is exact: rational coefficient arithmetic, resultant-based
root combinatorics, p-adic Newton polygons, Sturm root counts, and
fraction-free rank computations over a Laurent ring.  No floating
point, no randomness.
"""

from .errors import (
    BadConstantTerm,
    BoundaryRoot,
    BoundTooLarge,
    DivisionByZero,
    GuardError,
    HypothesesNotMet,
    InputError,
    JTooSmall,
    ModelTooLarge,
    NoFixtureFound,
    NonExactDivision,
    NotPrime,
    NotSelfInversive,
    NotSquarefree,
    OrderTooLarge,
    OutOfRange,
    RootAtUnity,
    SchemaError,
    ToolkitError,
    TooLarge,
    WrongDegree,
    ZeroConstantTerm,
)
from .ratpoly import (
    RatPoly,
    composed_product,
    cyclotomic,
    euler_phi,
    factor_out_root,
    is_prime,
    next_prime,
    poly_gcd,
    power_roots,
    primitive_positive,
    resultant,
    sturm_roots_in_interval,
    val_p,
)
from .newton import (
    FOURFOLD_ORDINARY,
    FOURFOLD_TWISTED,
    NewtonPolygon,
    is_k3_type,
    is_ordinary_fourfold_profile,
    newton_polygon,
)
from .weil import (
    INCONCLUSIVE,
    PROVED,
    SEARCH_VERIFIED,
    THEOREM_DERIVED,
    UNVERIFIED,
    WITNESS_FOUND,
    IndependenceSearch,
    PairScan,
    WeilContext,
    WeilReport,
    analyze,
    base_change,
    bounded_independence_check,
    cyclotomic_scan,
    irreducibility_certificate,
    is_q_admissible,
    pair_relation_scan,
    self_inversive_sign,
    semistable_exponent,
    split_unit,
    twist,
    unit_circle_certificate,
    untwist,
)
from .invariants import (
    EigenStructure,
    from_report,
    inv_dim,
    inv_dim_bruteforce,
    pair_decomposition_check,
)
from .spanmodel import (
    DiagonalModel,
    Laurent,
    generation_rank,
    graph_tensor,
    invariant_basis_vv,
    product_tate_check,
    span_rank,
    square_tate_dim,
    verify_generation_vv,
)
from .kunneth import (
    betti_profile,
    chunk_table,
    decomposable_check,
    enumerate_jmaps,
    tate_dim_power,
)
from .cli import FixtureSpec, gen_fixtures

__all__ = [name for name in dir() if not name.startswith("_")]
