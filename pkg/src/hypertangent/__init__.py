"""Exact invariants of the tangent bundle of smooth projective hypersurfaces.

Submodules: ``chow`` (Chern/Todd/HRR), ``bott`` (cohomology of twisted
differentials on P^n), ``les`` (exact-sequence dimension solver),
``tables`` (closed forms with provenance), ``tensors``/``fibers``
(deformation space and fiber checks) and ``cli``.
"""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
