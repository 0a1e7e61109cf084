"""Finite-field kernels, compiled when available.

The compiled extension ``hypertangent._fp`` is used if it imports; set
``HYPERTANGENT_PURE=1`` to force the pure-Python implementation.
"""
from __future__ import annotations

import os

from . import _fp_py

BACKEND = "python"
_impl = _fp_py

if os.environ.get("HYPERTANGENT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _fp as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"


def _check_prime(p: int) -> None:
    if p < 2 or any(p % f == 0 for f in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not a prime")
    if p >= 1 << 31:
        raise ValueError(f"prime {p} too large for 64-bit products")


def projective_common_zeros(polys, nvars: int, p: int, limit: int = 10, impl=None):
    """Common zeros over P^(nvars-1)(F_p) of polynomials with F_p coefficients.

    ``polys`` is a list of ``{exponent_tuple: coefficient}`` dicts.
    """
    _check_prime(p)
    exps, coefs, offsets = [], [], [0]
    for f in polys:
        for e, c in sorted(f.items()):
            if c % p:
                exps.append(tuple(e))
                coefs.append(c % p)
        offsets.append(len(coefs))
    return (impl or _impl).projective_common_zeros(exps, coefs, offsets, nvars, p, limit)


def rank_mod_p(rows, ncols: int, p: int, impl=None) -> int:
    _check_prime(p)
    return (impl or _impl).rank_mod_p([list(r) for r in rows], ncols, p)


def projective_point_count(nvars: int, p: int) -> int:
    return (p ** nvars - 1) // (p - 1)
