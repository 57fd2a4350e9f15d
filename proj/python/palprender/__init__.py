"""Hybrid platform + pneumatic bubble palpation rendering and simulation."""

try:
    from ._palprender import *  # noqa: F401,F403
    from ._palprender import __doc__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _palprender import *  # noqa: F401,F403

__version__ = "0.1.0"
