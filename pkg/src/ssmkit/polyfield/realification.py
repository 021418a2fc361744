"""Moving polynomial maps between real and conjugate-pair complex coordinates.

A pairing is a sequence ``pairing[i] = j`` marking coordinate ``j`` as the
complex conjugate of coordinate ``i`` (``i`` itself for a real coordinate);
the positive-imaginary member of each pair must precede its partner. With
real coordinates ``xi`` and complex ones ``c`` the convention is

    c_i = (xi_i - 1j*xi_j) / 2,   c_j = conj(c_i)

so that a rotation block diag(Re, Im; -Im, Re) in the real coordinates is
diagonal in the complex ones.
"""

import numpy as np

from ssmkit.errors import ConjugateSymmetryError
from ssmkit.polyfield.polymap import PolyMap


def pairing_matrices(pairing):
    """Return (S, S_inv) with c = S xi and xi = S_inv c."""
    n = len(pairing)
    S = np.zeros((n, n), dtype=np.complex128)
    S_inv = np.zeros((n, n), dtype=np.complex128)
    for i, p in enumerate(pairing):
        if p == i:
            S[i, i] = 1.0
            S_inv[i, i] = 1.0
        elif p > i:
            S[i, i] = 0.5
            S[i, p] = -0.5j
            S[p, i] = 0.5
            S[p, p] = 0.5j
            S_inv[i, i] = 1.0
            S_inv[i, p] = 1.0
            S_inv[p, i] = 1.0j
            S_inv[p, p] = -1.0j
    return S, S_inv


def realify(p, in_pairing, out_pairing, tol=1e-12):
    """Rewrite a complex-coordinate map in the paired real coordinates.

    The result must be real up to ``tol`` relative to the largest
    coefficient; a violation signals broken conjugate symmetry upstream.
    """
    S_in, _ = pairing_matrices(in_pairing)
    _, S_out_inv = pairing_matrices(out_pairing)
    order = p.truncation_order
    composed = p.compose(PolyMap.from_linear(S_in, order), order, allow_constant=True)
    composed = composed.left_multiply(S_out_inv)
    scale = 1.0
    for vec in composed.terms.values():
        scale = max(scale, float(np.max(np.abs(vec))))
    worst = 0.0
    real_terms = {}
    for exps, vec in composed.terms.items():
        worst = max(worst, float(np.max(np.abs(vec.imag))))
        real_terms[exps] = vec.real
    if worst > tol * scale:
        raise ConjugateSymmetryError(
            f"imaginary residue {worst:.3e} exceeds {tol:.1e} x scale {scale:.3e}")
    return PolyMap(p.n_in, p.n_out, order, real_terms, is_complex=False)


def complexify(p, in_pairing, out_pairing):
    """Inverse of :func:`realify`: rewrite a real-coordinate map in complex pairs."""
    _, S_in_inv = pairing_matrices(in_pairing)
    S_out, _ = pairing_matrices(out_pairing)
    order = p.truncation_order
    composed = p.compose(PolyMap.from_linear(S_in_inv, order), order, allow_constant=True)
    return composed.left_multiply(S_out)
