"""Finite operations, generalized constraints, clusters and their Galois connections."""

from galoiskit._core import *  # noqa: F401,F403
from galoiskit._core import __doc__  # noqa: F401
