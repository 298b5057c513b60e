"""Faithful completely reducible modules for Lie algebras over F_p, with certificates."""

from .lie import LieAlgebra
from .restricted import PMap, RestrictedAlgebra
from .meataxe import LieModule, chop, composition_factors
from .envelope import build_envelope, verify_envelope
from .induced import choose_character, induced_module
from .pipeline import Certificate, faithful_cr, faithful_cr_restricted, verify_certificate
from .formats import emit_lie, emit_mod, parse_lie, parse_mod

__all__ = [
    "LieAlgebra", "PMap", "RestrictedAlgebra", "LieModule", "chop", "composition_factors",
    "build_envelope", "verify_envelope", "choose_character", "induced_module",
    "Certificate", "faithful_cr", "faithful_cr_restricted", "verify_certificate",
    "emit_lie", "emit_mod", "parse_lie", "parse_mod",
]
__version__ = "0.1.0"
