"""Protocork plumbing graphs, their Kirby diagrams, homology, cobordisms and
the Z[U]-module bookkeeping of their Floer groups."""

__version__ = "0.1.0"

from . import cobordisms, floer, graphs, homology, kirby, linalg  # noqa: E402,F401
from .errors import *  # noqa: E402,F401,F403
from .graphs import ProtocorkGraph, SignedEdge, validate  # noqa: E402,F401
