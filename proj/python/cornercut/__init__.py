"""Corner cutting refinement of polylines and nets of functions.

Thin Python surface over the C++ core: weight validation and contraction
certificates, polyline refinement with its distance bounds, Coons patch
evaluation, and refinement of nets of functions.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
