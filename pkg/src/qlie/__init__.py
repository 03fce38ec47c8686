"""Exact rewriting engine for the q-deformed algebras U_q(r, s)."""

from .algebras import AlgebraModel, build_model, model_by_kind
from .coeffs import Q, R, S, RatFunc, q_bracket
from .freealg import THREE_LETTERS, TWO_LETTERS, NCPoly
from .parse import parse_poly

__version__ = "0.1.0"

__all__ = [
    "AlgebraModel",
    "NCPoly",
    "Q",
    "R",
    "RatFunc",
    "S",
    "THREE_LETTERS",
    "TWO_LETTERS",
    "build_model",
    "model_by_kind",
    "parse_poly",
    "q_bracket",
]
