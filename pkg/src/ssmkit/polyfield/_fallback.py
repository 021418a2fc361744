"""Pure Python/numpy kernels mirroring ``ssmkit._poly_speedups``."""

import numpy as np


def mul_packed(ka, ca, da, kb, cb, db, max_order):
    """Truncated product on packed-key arrays; see the compiled twin.

    Accumulation runs in the same (i, j-ascending) order as the compiled
    kernel so a given build is deterministic.
    """
    out = {}
    ka_list = ka.tolist()
    da_list = da.tolist()
    for i in range(len(ka_list)):
        budget = max_order - da_list[i]
        if budget < 0:
            continue
        mask = db <= budget
        if not mask.any():
            continue
        keys = (ka_list[i] + kb[mask]).tolist()
        vals = (ca[i] * cb[mask]).tolist()
        for k, v in zip(keys, vals):
            if k in out:
                out[k] += v
            else:
                out[k] = v
    return out


def mul_generic(a_items, b_items, max_order):
    """Truncated product on (exponent tuple, coefficient) pairs.

    Used when the packed representation does not apply (more than 8
    variables or degrees beyond 255).
    """
    out = {}
    for ea, va in a_items:
        budget = max_order - sum(ea)
        if budget < 0:
            continue
        for eb, vb in b_items:
            if sum(eb) > budget:
                continue
            key = tuple(x + y for x, y in zip(ea, eb))
            v = va * vb
            if key in out:
                out[key] += v
            else:
                out[key] = v
    return out
