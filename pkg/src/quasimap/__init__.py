"""Exact virtual structure constants, mirror maps and Gromov-Witten
invariants for projective spaces and hypersurfaces."""

__version__ = "0.1.0"

from .correlators import Model, OpenTruncationPolicy, vsc_closed, vsc_open
from .mirror import disk_invariant_cp2, gw_closed_gf, gw_open_gf, mirror_map_closed

__all__ = [
    "Model",
    "OpenTruncationPolicy",
    "vsc_closed",
    "vsc_open",
    "disk_invariant_cp2",
    "gw_closed_gf",
    "gw_open_gf",
    "mirror_map_closed",
]
