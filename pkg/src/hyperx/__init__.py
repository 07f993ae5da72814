"""Spectral bounds for linear uniform hypergraphs without Berge cycles, books or K_{2,t}.

Modules: :mod:`hypercore` (validated k-graphs), :mod:`spectral`
(alpha-spectral radius), :mod:`walks` (Berge walk counts), :mod:`berge`
(Berge-subgraph detection), :mod:`bounds` (bound and claim checks),
:mod:`genlab` (instance generation) and :mod:`cli`.
"""

from .hypercore import Hypergraph, build, is_connected, is_linear
from .spectral import SpectralResult, spectral_radius

__all__ = ["Hypergraph", "SpectralResult", "build", "is_connected", "is_linear", "spectral_radius"]
__version__ = "0.1.0"
