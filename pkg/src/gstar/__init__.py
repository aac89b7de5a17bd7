"""Graded polynomial identities of matrix algebras with the transpose involution.

The package decides whether a polynomial in graded, starred variables is an
identity of the n x n matrices under an elementary group grading whose
neutral component is the diagonal, and certifies identities by reduction
against the canonical basis: the neutral commutator, the neutral star
relation, the off-support variables, and the monomial identities of degree
at most 2n-1.
"""

from .errors import (
    GradingError,
    GroupError,
    GstarError,
    InternalCheckError,
    ParseError,
    PreconditionError,
    ResourceCapError,
    ShapeError,
    TraceDomainError,
    VariableError,
)
from .freealg import (
    GMonomial,
    GPolynomial,
    GVar,
    evaluate,
    evaluate_monomial,
    format_poly,
    gdegree,
    multihomogeneous_components,
    parse_poly,
    star_polynomial,
    subword,
    variable,
)
from .genmat import (
    CMonomial,
    CPolynomial,
    EntryVar,
    RowTrace,
    SparseMatrix,
    closed_form_product,
    generic_matrix,
    generic_matrix_signed,
    generic_matrix_star,
    row_trace,
    star_omega,
)
from .gradings import (
    Grading,
    PartialInjection,
    SignedElement,
    build_grading,
    grading_from_json,
)
from .groups import Group, group_from_json, make_cyclic, make_from_table
from .identities import (
    BasisReduction,
    CongruenceClass,
    DerivationStep,
    IdentityTerm,
    IdentityVerdict,
    MonomialWitness,
    basis_reduce,
    congruent_mod_neutral,
    derivation_mod_neutral,
    enumerate_monomial_identities,
    is_identity,
    is_monomial_identity,
    minimal_identities_up_to,
    neutral_commutator,
    neutral_star_difference,
    off_support_variable,
    sandwich_commutator,
    subword_identity_certificate,
    verify_basis,
    witness_for_word,
    word_is_identity,
    word_monomial,
)
from .rings import RATIONALS, Fp, PrimeField, Rationals, parse_field
from .selftest import exhaustive_word_scan, run_selftest

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
