"""Exact sign-reversing involution engine for psi-class integrals and strata sums."""

from srikit.errors import ConsistencyError, InputError
from srikit.profiles import ColorProfile, ExponentProfile

__all__ = ["ColorProfile", "ConsistencyError", "ExponentProfile", "InputError"]
__version__ = "0.1.0"
