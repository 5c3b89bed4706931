"""umrow: exact calculus of unimodular rows over explicit commutative rings.

Build rings from a small JSON DSL, act on rows by elementary and
elementary-symplectic generators, enumerate orbits with replayable word
certificates, multiply orbit classes by van der Kallen's formula, and test
the niceness identity over finite rings.
"""

from .elementary import (
    Decision,
    MennickeClass,
    UnimodularRow,
    act_row,
    elem_gen,
    elementary_membership,
    first_row_orbit_test,
    mennicke,
    mennicke_equal,
    orbit_bfs,
    same_orbit,
)
from .errors import UmrowError
from .matrices import MatrixR
from .rings import (
    ExcisionRing,
    Ideal,
    IntegerRing,
    IntegersModRing,
    PolyExtRing,
    PolyQuotientRing,
    PrimeFieldRing,
    ProductRing,
    QuotientRing,
    RingElement,
    enumerate_ring,
    gamma_section,
    is_unit,
    lex_least_witness,
    lift_row,
    omega_map,
    parse_ring,
    pi_map,
    ring_arith,
    ring_from_descriptor,
    solve_unimodular,
    um_rel_member,
)
from .symplectic import (
    compare_e_esp_orbits,
    compare_relative_orbits,
    is_symplectic,
    rel_esp_orbit,
    se_gen,
    sigma,
    symplectic_form,
)
from .vdk import (
    OrbitTable,
    build_group_table,
    common_tail_reps,
    enumerate_unimodular,
    nice_check,
    relative_transitivity,
    sdim,
    sr,
    stable_range_condition,
    vdk_product,
    verify_ms_multiplicativity,
)
from .polyext import (
    bounded_unimodular_solve,
    completion_check,
    euclidean_reduce_word,
    jacobson_radical,
    jacobson_reduce,
    poly_eval0,
    poly_ring,
    poly_row,
    specialization_consistent,
    vdk_product_poly,
)
from .version import MATH_VERSION, SCHEMA_VERSION, __version__
from .words import ElementaryWord, elem_letter, map_word_parameters, symp_letter

__all__ = [name for name in dir() if not name.startswith("_")]
