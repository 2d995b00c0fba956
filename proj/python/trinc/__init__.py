"""Triangular network coding toolkit: shift-padded XOR coding over GF(2),
bit-level peeling decode, RLNC baseline, transmission bounds and an
erasure-channel multicast simulator."""

from ._trinc import *  # noqa: F401,F403
from ._trinc import __all__, __version__  # noqa: F401
