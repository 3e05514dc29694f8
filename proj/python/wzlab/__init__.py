"""Wong-Zakai approximation lab.

Python bindings for the wzlab C++ core: time grids, Brownian path sampling,
smoothing kernels, exact Wick calculus on stochastic exponentials,
Stratonovich/Ito solvers with their Wong-Zakai approximations, and the
convergence-rate estimation toolkit.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
