"""Stationary states of canonical quantum wells.

Closed-form eigenstates of the infinite square well, the 1D and 3D
harmonic oscillators and the Coulomb well; an independent Numerov
shooting solver that recovers their spectra; ladder-operator algebra;
semiclassical (action) quantization; and amplitude-modulated bound
states embedded in the continuum. A CLI (``qwells``) serializes all of
it to CSV and runs the cross-verification suite.
"""

from . import bic, ladder, oldquantum, specfun, sturm, wells
from .wells import CONSTANTS

__all__ = ["bic", "ladder", "oldquantum", "specfun", "sturm", "wells", "CONSTANTS"]

__version__ = "0.1.0"
