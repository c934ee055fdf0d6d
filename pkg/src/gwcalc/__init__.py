"""Exact closed and open Gromov-Witten invariants of projective spaces.

Closed invariants of CP^n are reconstructed from the two-point line count
by the WDVV associativity equations; open invariants of (CP^n, RP^n) for
odd n follow from the open analogues, with all arithmetic exact.
"""

from .closed import closed_admissible, gw_closed, kontsevich_n2_oracle
from .kernel import (
    CacheFormatError,
    ClosedKey,
    CycleError,
    Fraction,
    MemoStore,
    OpenKey,
    StoreConflictError,
    cache_load,
    cache_save,
    default_store,
)
from .open_gw import DIAMOND, normalize, ogw, ogw_linear, ogwb, open_admissible

__all__ = [
    "Fraction",
    "MemoStore",
    "ClosedKey",
    "OpenKey",
    "CycleError",
    "StoreConflictError",
    "CacheFormatError",
    "cache_save",
    "cache_load",
    "default_store",
    "closed_admissible",
    "gw_closed",
    "kontsevich_n2_oracle",
    "DIAMOND",
    "open_admissible",
    "normalize",
    "ogwb",
    "ogw",
    "ogw_linear",
]
