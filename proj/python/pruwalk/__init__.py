"""Adsorbing prudent walks: exact enumeration, kernel-method series and phase analysis.

The heavy lifting lives in the `_pruwalk` extension module; everything it
exports is re-exported here. All exact quantities cross the boundary as
strings (monomial -> rational coefficient), so no precision is lost.
"""

from ._pruwalk import *  # noqa: F401,F403
from ._pruwalk import __version__  # noqa: F401
