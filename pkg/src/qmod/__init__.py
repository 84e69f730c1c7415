"""Executable calculus for quantale-enriched categories and their modules."""

from .errors import BoundaryError, InputError, PreconditionError, QmodError, Verdict, Violation
from .quantale import QMatrix, Quantale, builtin_quantale, matrix_star, validate_quantale
from .enriched import (
    QCategory,
    QFunctor,
    codiagonal,
    coproduct,
    tensor_product,
    validate_category,
    validate_functor,
)
from .modules import (
    QModule,
    check_adjunction,
    compose,
    direct_sum_check,
    identity_module,
    leq_2cell,
    lower_star,
    module_tensor,
    upper_star,
    validate_module,
)
from .collage import collage, coslice, is_opsieve, is_sieve, sieve_pushout
from .homodular import QuantaleHom, builtin_hom, check_H1, check_H2, extend
from .intcon import IntMorphism, IntObject, free_monad, int_compose, int_identity
from .setmod import FinCategory, FinFunctor, SetModule, set_check_adjunction, set_compose
from .document import Document, emit, parse

__version__ = "0.1.0"

__all__ = [
    "BoundaryError", "InputError", "PreconditionError", "QmodError", "Verdict", "Violation",
    "QMatrix", "Quantale", "builtin_quantale", "matrix_star", "validate_quantale",
    "QCategory", "QFunctor", "codiagonal", "coproduct", "tensor_product", "validate_category",
    "validate_functor", "QModule", "check_adjunction", "compose", "direct_sum_check",
    "identity_module", "leq_2cell", "lower_star", "module_tensor", "upper_star", "validate_module",
    "collage", "coslice", "is_opsieve", "is_sieve", "sieve_pushout", "QuantaleHom", "builtin_hom",
    "check_H1", "check_H2", "extend", "IntMorphism", "IntObject", "free_monad", "int_compose",
    "int_identity", "FinCategory", "FinFunctor", "SetModule", "set_check_adjunction", "set_compose",
    "Document", "emit", "parse",
]
