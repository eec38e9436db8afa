"""shadowlab: classical-shadow data, free-fermion pipelines and kernel ML
on simulated quantum experiments."""

from ._core import IMPL as kernel_backend

__version__ = "0.1.0"
__all__ = ["kernel_backend", "__version__"]
