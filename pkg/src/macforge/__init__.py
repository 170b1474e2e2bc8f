"""Exact arithmetic and automorphism-group verification for the Macdonald
2-groups J, H = J/Z(J) and K = H/Z(H).

Normal-form element arithmetic from closed product/power/commutator
formulas, the named automorphism catalog with certification, exhaustive
closure of automorphism generating sets with centrality filtrations, and
an independent Todd-Coxeter coset-table oracle that cross-validates all
of it, including the odd-prime commutator identities.
"""

from .params import GroupParams, OddPrimeParams
from .groups import (
    Element,
    GroupFamily,
    central_level,
    central_level_generic,
    commutator_generic,
    commutator_mod_z1,
    commutator_special,
    conj,
    element_order,
    family,
    in_z,
    invert,
    mul,
    parse_element,
    power,
    project,
    z1_elements,
)
from .numfn import phi, varphi, sigma, xi
from .morphisms import (
    GenMap,
    apply,
    aut_inverse,
    catalog,
    centrality_level,
    check_endomorphism,
    compose,
    identity_map,
    induce_on_quotient,
    inner,
    is_automorphism,
)
from .autenum import (
    AutSet,
    closure,
    expected_aut_order,
    filtration,
    inner_closure,
    standard_generators,
    verify_structure,
)
from .coset import (
    CosetLimitExceeded,
    CosetTable,
    Presentation,
    builtin_presentation,
    family_presentation,
    family_table,
    todd_coxeter,
)
from .crosscheck import cross_check, oddp_commutator, oddp_report
from .verify import formula_report
from .report import Check, Report

__version__ = "0.1.0"
