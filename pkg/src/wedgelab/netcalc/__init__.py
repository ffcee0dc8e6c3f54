"""Symbolic net calculus: terms, rewriting, cosets."""

from .cosets import CertificateNotViolated, ChainReport, CosetNet, coset_equal, mink_noncov_chain
from .rules import (CONTEXTS, RULE_TAGS, IdentityResult, NetContext, NormalizationError, Step,
                    UnknownSymbol, check_duality, covariance_closure, duality_identity, make_context,
                    normalize, verify_identity)
from .terms import (Apply, Base, Complement, DirectSum, Tensor, Term, TermSyntaxError, Twist, Wedge,
                    parse_identity, parse_term, print_term, print_wedge)

__all__ = [
    "CertificateNotViolated", "ChainReport", "CosetNet", "coset_equal", "mink_noncov_chain",
    "CONTEXTS", "RULE_TAGS", "IdentityResult", "NetContext", "NormalizationError", "Step",
    "UnknownSymbol", "check_duality", "covariance_closure", "duality_identity", "make_context",
    "normalize", "verify_identity",
    "Apply", "Base", "Complement", "DirectSum", "Tensor", "Term", "TermSyntaxError", "Twist",
    "Wedge", "parse_identity", "parse_term", "print_term", "print_wedge",
]
