"""Certified normalized Bessel numerics and Frame/Cusa/Turan inequality checks."""

from ._backend import BACKEND
from .kernel import (
    BesselSpec,
    Evaluation,
    Kind,
    eval_dI,
    eval_dJ,
    eval_I,
    eval_I_asymptotic,
    eval_J,
    product_coeffs,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BesselSpec",
    "Evaluation",
    "Kind",
    "eval_J",
    "eval_I",
    "eval_dJ",
    "eval_dI",
    "eval_I_asymptotic",
    "product_coeffs",
]
