"""Classical shadows: acquisition, estimation, virtual gates, shadow kernel."""

from .acquire import acquire
from .estimation import estimate, single_shot_values, virtual_unitary
from .io import load, save
from .kernel import (
    gram,
    log_shadow_kernel,
    overlap_matrix,
    shadow_kernel,
    snapshot_overlap,
)
from .records import LocalObservable, ShadowSet

__all__ = [
    "acquire", "estimate", "single_shot_values", "virtual_unitary",
    "load", "save", "gram", "log_shadow_kernel", "overlap_matrix",
    "shadow_kernel", "snapshot_overlap", "LocalObservable", "ShadowSet",
]
