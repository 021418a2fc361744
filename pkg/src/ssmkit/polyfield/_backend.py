"""Kernel selection: compiled extension when available, numpy fallback otherwise.

Set ``SSMKIT_PURE_PYTHON=1`` to force the fallback regardless of what is
installed.
"""

import os

import numpy as np

from ssmkit.polyfield import _fallback

if os.environ.get("SSMKIT_PURE_PYTHON") == "1":
    _speedups = None
else:
    try:
        from ssmkit import _poly_speedups as _speedups
    except ImportError:
        _speedups = None

# Packed keys hold 8 bits per variable in a 64-bit word.
_PACK_MAX_VARS = 8
_PACK_MAX_ORDER = 255


def backend_name():
    return "compiled" if _speedups is not None else "python"


def _pack(items):
    n = len(items)
    keys = np.empty(n, dtype=np.uint64)
    coefs = np.empty(n, dtype=np.complex128)
    degs = np.empty(n, dtype=np.int64)
    for idx, (exps, c) in enumerate(items):
        key = 0
        for j, e in enumerate(exps):
            key |= e << (8 * j)
        keys[idx] = key
        coefs[idx] = c
        degs[idx] = sum(exps)
    return keys, coefs, degs


def _unpack(key, n_vars):
    key = int(key)
    return tuple((key >> (8 * j)) & 0xFF for j in range(n_vars))


def multiply_scalar_terms(a_items, b_items, n_vars, max_order):
    """Truncated product of two scalar term lists.

    Parameters
    ----------
    a_items, b_items : list of (exponent tuple, complex coefficient)
    n_vars : int
    max_order : int
        Terms of total degree above this are discarded.

    Returns
    -------
    dict mapping exponent tuple -> complex coefficient (unpruned).
    """
    if not a_items or not b_items or max_order < 0:
        return {}
    if n_vars <= _PACK_MAX_VARS and max_order <= _PACK_MAX_ORDER:
        ka, ca, da = _pack(a_items)
        kb, cb, db = _pack(b_items)
        fn = _speedups.mul_packed if _speedups is not None else _fallback.mul_packed
        packed = fn(ka, ca, da, kb, cb, db, max_order)
        return {_unpack(k, n_vars): v for k, v in packed.items()}
    return _fallback.mul_generic(a_items, b_items, max_order)
