"""Sylow subgroups of the Macdonald groups G(alpha) = <A, B | A^[A,B] = A^alpha, B^[B,A] = B^alpha>.

Two concrete models (collected normal forms and an iterated cyclic-extension
tower), a coset enumerator as an independent third model, structure
computations over any of them, and closed-form predictions to check against.
"""

from ._accel import BACKEND
from .interface import GlobalReport, direct_formula, predict_global, verify

__version__ = "0.1.0"

__all__ = ["BACKEND", "GlobalReport", "direct_formula", "predict_global", "verify", "__version__"]
