"""Moment-sequence toolkit: atomic-measure fitting, exact determinant
identities, rank probes, and bound tables.

The heavy lifting lives in the C++ extension ``_caratheo``; this package
re-exports its public surface.
"""

try:
    from ._caratheo import *  # noqa: F401,F403
    from ._caratheo import __version__  # noqa: F401
except ImportError:
    # in-tree use: the extension is built by CMake next to the C++ targets
    # and found on sys.path instead of inside the package
    from _caratheo import *  # noqa: F401,F403
    from _caratheo import __version__  # noqa: F401
