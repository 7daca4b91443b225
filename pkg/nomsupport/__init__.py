"""Finite supports of nominal values, checked under an oracle query budget."""
from .atoms import Atom, atom, format_atoms, fresh
from .exceptions import NominalError, ParseError
from .models import ExitStatus, LeastSupport, SeqSpec, SupportReport, Verdict
from .nomset import NomValue, act, ambient_support, eq
from .perm import FinPerm, compose, identity, inverse, transposition
from .props import Prop, Truth
from .services.counterexamples import CounterexampleBuilder
from .services.support_calculus import SupportCalculus
from .syntax import parse_perm, parse_value

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "CounterexampleBuilder",
    "ExitStatus",
    "FinPerm",
    "LeastSupport",
    "NomValue",
    "NominalError",
    "ParseError",
    "Prop",
    "SeqSpec",
    "SupportCalculus",
    "SupportReport",
    "Truth",
    "Verdict",
    "act",
    "ambient_support",
    "atom",
    "compose",
    "eq",
    "format_atoms",
    "fresh",
    "identity",
    "inverse",
    "parse_perm",
    "parse_value",
    "transposition",
]
