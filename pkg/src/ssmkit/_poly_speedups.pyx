# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for truncated products of sparse multivariate polynomials.

Exponent tuples arrive packed 8 bits per variable into a 64-bit key, so adding
keys adds exponents (no carries below the 255-per-variable cap enforced by the
caller). The pure-Python fallback in ``ssmkit.polyfield._fallback`` implements
the same contract with the same accumulation order.
"""

from libc.stdint cimport int64_t, uint64_t


def mul_packed(uint64_t[::1] ka, double complex[::1] ca, int64_t[::1] da,
               uint64_t[::1] kb, double complex[::1] cb, int64_t[::1] db,
               int64_t max_order):
    """Truncated product of two packed scalar polynomials.

    Returns a dict mapping packed exponent key -> complex coefficient, keeping
    only terms with total degree <= max_order.
    """
    cdef dict out = {}
    cdef Py_ssize_t i, j, na, nb
    cdef int64_t di, budget
    cdef uint64_t key
    cdef double complex c
    cdef object pykey

    na = ka.shape[0]
    nb = kb.shape[0]
    for i in range(na):
        di = da[i]
        budget = max_order - di
        if budget < 0:
            continue
        for j in range(nb):
            if db[j] > budget:
                continue
            key = ka[i] + kb[j]
            c = ca[i] * cb[j]
            pykey = key
            if pykey in out:
                out[pykey] = out[pykey] + c
            else:
                out[pykey] = c
    return out
