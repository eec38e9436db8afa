"""Hot-kernel backend selection.

Prefers the compiled extension; falls back to vectorised numpy when the
extension is missing or ``SHADOWLAB_PURE_PYTHON=1`` is set.
"""
import os

if os.environ.get("SHADOWLAB_PURE_PYTHON") == "1":
    from . import fallback as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import fallback as kernels

from . import fallback

IMPL = kernels.IMPL

apply_1q = kernels.apply_1q
apply_1q_distinct = kernels.apply_1q_distinct
apply_2q = kernels.apply_2q
apply_cx = kernels.apply_cx
apply_cz = kernels.apply_cz
born_sample = kernels.born_sample
overlap_gram = kernels.overlap_gram
rotate_block = kernels.rotate_block
gaussian_sample = kernels.gaussian_sample
