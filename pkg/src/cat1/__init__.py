"""Homotopy theory of finite categories: fundamental groups, coverings,
lifting-property classifiers, mapping-category factorizations and nerves."""

from .errors import Cat1Error
from .fincat import FinCat, Functor
from .verdict import DEFAULT_LIMITS, Limits, Verdict

__all__ = ["Cat1Error", "DEFAULT_LIMITS", "FinCat", "Functor", "Limits", "Verdict"]
__version__ = "0.1.0"
