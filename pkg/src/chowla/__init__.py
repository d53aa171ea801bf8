"""Exact arithmetic for periodic arithmetic functions and the vanishing of L(1, f)."""
from __future__ import annotations

from .characters import DirichletCharacter, enumerate_characters, unit_group
from .cyclotomic import CyclotomicField, CyclotomicNumber, embed, make_field, rational, zeta_pow
from .enclosure import ComplexEnclosure
from .lvalue import VanishingVerdict, decide_vanishing, eval_function, eval_log_form, eval_partial, log_form
from .periodic import PeriodicFunction, dft, from_values, idft

__version__ = "0.1.0"

__all__ = [
    "ComplexEnclosure",
    "CyclotomicField",
    "CyclotomicNumber",
    "DirichletCharacter",
    "PeriodicFunction",
    "VanishingVerdict",
    "decide_vanishing",
    "dft",
    "embed",
    "enumerate_characters",
    "eval_function",
    "eval_log_form",
    "eval_partial",
    "from_values",
    "idft",
    "log_form",
    "make_field",
    "rational",
    "unit_group",
    "zeta_pow",
]
