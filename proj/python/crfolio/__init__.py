"""Numerical verification of Morera-type theorems on families of analytic discs.

Thin re-export of the compiled extension module.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
