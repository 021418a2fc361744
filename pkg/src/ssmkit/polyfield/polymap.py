"""Sparse truncated multivariate polynomial maps.

A :class:`PolyMap` represents a polynomial map from ``n_in`` variables to
``n_out`` components as a dict from exponent tuples (one nonnegative integer
per input variable) to coefficient vectors. All operations return new maps;
instances are treated as immutable and are safe to share across threads.

Terms are kept graded-lexicographically sorted (total degree, then tuple
order) for deterministic iteration and reproducible serialization, and
coefficient vectors entirely below :data:`PRUNE_TOL` are dropped.
"""

import numpy as np

from ssmkit.errors import ConstantTermError, DimensionMismatchError
from ssmkit.polyfield._backend import multiply_scalar_terms

#: Absolute zero-pruning tolerance applied after each operation.
PRUNE_TOL = 1e-14


def monomials_of_degree(n_vars, degree):
    """Yield all exponent tuples of the given total degree in grlex order."""
    if n_vars == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in monomials_of_degree(n_vars - 1, degree - first):
            yield (first,) + rest


def grlex_key(exps):
    return (sum(exps), exps)


class PolyMap:
    """Truncated polynomial map R^n_in -> R^n_out (or complex).

    Parameters
    ----------
    n_in, n_out : int
    truncation_order : int
        Maximum total degree retained; higher-degree terms are discarded
        on construction.
    terms : dict, optional
        Exponent tuple -> coefficient vector (scalar allowed for n_out=1).
    is_complex : bool, optional
        Coefficient field flag; inferred from the coefficients if omitted.
    """

    __slots__ = ("n_in", "n_out", "truncation_order", "is_complex", "terms")

    def __init__(self, n_in, n_out, truncation_order, terms=None, is_complex=None):
        if n_in < 1 or n_out < 1:
            raise DimensionMismatchError("n_in and n_out must be positive")
        if truncation_order < 0:
            raise ValueError("truncation_order must be nonnegative")
        self.n_in = int(n_in)
        self.n_out = int(n_out)
        self.truncation_order = int(truncation_order)

        cleaned = {}
        complex_seen = False
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n_in:
                raise DimensionMismatchError(
                    f"exponent tuple {exps} has length {len(exps)}, expected {n_in}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if sum(exps) > self.truncation_order:
                continue
            vec = np.atleast_1d(np.asarray(coeff))
            if vec.shape != (n_out,):
                raise DimensionMismatchError(
                    f"coefficient for {exps} has shape {vec.shape}, expected ({n_out},)"
                )
            if np.max(np.abs(vec)) <= PRUNE_TOL:
                continue
            complex_seen = complex_seen or np.iscomplexobj(vec)
            cleaned[exps] = vec
        if is_complex is None:
            is_complex = complex_seen
        dtype = np.complex128 if is_complex else np.float64
        if not is_complex:
            for exps, vec in cleaned.items():
                if np.iscomplexobj(vec) and np.max(np.abs(vec.imag)) > 0:
                    raise ValueError("complex coefficients in a real map")
        self.is_complex = bool(is_complex)
        self.terms = {
            exps: cleaned[exps].astype(dtype, copy=True)
            for exps in sorted(cleaned, key=grlex_key)
        }

    # ------------------------------------------------------------------ #
    # constructors
    # ------------------------------------------------------------------ #

    @classmethod
    def zero(cls, n_in, n_out, truncation_order, is_complex=False):
        return cls(n_in, n_out, truncation_order, {}, is_complex=is_complex)

    @classmethod
    def identity(cls, n, truncation_order, is_complex=False):
        terms = {}
        for j in range(n):
            exps = tuple(1 if i == j else 0 for i in range(n))
            vec = np.zeros(n, dtype=np.complex128 if is_complex else np.float64)
            vec[j] = 1.0
            terms[exps] = vec
        return cls(n, n, truncation_order, terms, is_complex=is_complex)

    @classmethod
    def from_linear(cls, matrix, truncation_order):
        """Linear map x -> matrix @ x as a PolyMap."""
        matrix = np.atleast_2d(np.asarray(matrix))
        n_out, n_in = matrix.shape
        terms = {}
        for j in range(n_in):
            exps = tuple(1 if i == j else 0 for i in range(n_in))
            terms[exps] = matrix[:, j]
        return cls(n_in, n_out, truncation_order, terms,
                   is_complex=np.iscomplexobj(matrix))

    @classmethod
    def monomial(cls, n_in, powers, coeff, truncation_order):
        coeff = np.atleast_1d(np.asarray(coeff))
        return cls(n_in, coeff.shape[0], truncation_order, {tuple(powers): coeff})

    # ------------------------------------------------------------------ #
    # basic queries
    # ------------------------------------------------------------------ #

    def __repr__(self):
        field = "C" if self.is_complex else "R"
        return (f"PolyMap({field}^{self.n_in} -> {field}^{self.n_out}, "
                f"order<={self.truncation_order}, {len(self.terms)} terms)")

    @property
    def max_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    @property
    def min_degree(self):
        """Smallest total degree with a stored term (0 for the zero map)."""
        return min((sum(e) for e in self.terms), default=0)

    def is_zero(self):
        return not self.terms

    def coefficient(self, exps):
        """Coefficient vector of a monomial (zeros if absent)."""
        exps = tuple(exps)
        if exps in self.terms:
            return self.terms[exps].copy()
        dtype = np.complex128 if self.is_complex else np.float64
        return np.zeros(self.n_out, dtype=dtype)

    def degree_part(self, degree):
        """New map keeping only terms of exactly this total degree."""
        terms = {e: v for e, v in self.terms.items() if sum(e) == degree}
        return PolyMap(self.n_in, self.n_out, self.truncation_order, terms,
                       is_complex=self.is_complex)

    def truncated(self, order):
        terms = {e: v for e, v in self.terms.items() if sum(e) <= order}
        return PolyMap(self.n_in, self.n_out, order, terms, is_complex=self.is_complex)

    def component(self, j):
        """Scalar map given by output component j."""
        terms = {e: v[j:j + 1] for e, v in self.terms.items()}
        return PolyMap(self.n_in, 1, self.truncation_order, terms,
                       is_complex=self.is_complex)

    # ------------------------------------------------------------------ #
    # evaluation
    # ------------------------------------------------------------------ #

    def evaluate(self, x):
        """Evaluate at a point; returns an array of length n_out."""
        x = np.asarray(x)
        if x.shape != (self.n_in,):
            raise DimensionMismatchError(
                f"point has shape {x.shape}, expected ({self.n_in},)")
        dtype = np.complex128 if (self.is_complex or np.iscomplexobj(x)) else np.float64
        out = np.zeros(self.n_out, dtype=dtype)
        for exps, vec in self.terms.items():
            mono = 1.0
            for xi, e in zip(x, exps):
                if e:
                    mono = mono * xi ** e
            out += vec * mono
        return out

    __call__ = evaluate

    def jacobian_at(self, x):
        """Jacobian matrix (n_out x n_in) at a point."""
        jac = np.zeros(
            (self.n_out, self.n_in),
            dtype=np.complex128 if self.is_complex else np.float64,
        )
        for var in range(self.n_in):
            jac[:, var] = self.partial_derivative(var).evaluate(x)
        return jac

    # ------------------------------------------------------------------ #
    # linear structure
    # ------------------------------------------------------------------ #

    def _check_same_shape(self, other):
        if self.n_in != other.n_in or self.n_out != other.n_out:
            raise DimensionMismatchError(
                f"cannot combine {self!r} with {other!r}")

    def add(self, other):
        """Coefficient-wise sum; truncation order is the min of the inputs."""
        self._check_same_shape(other)
        order = min(self.truncation_order, other.truncation_order)
        terms = {e: v.copy() for e, v in self.terms.items() if sum(e) <= order}
        for e, v in other.terms.items():
            if sum(e) > order:
                continue
            if e in terms:
                terms[e] = terms[e] + v
            else:
                terms[e] = v.copy()
        return PolyMap(self.n_in, self.n_out, order, terms,
                       is_complex=self.is_complex or other.is_complex)

    def scale(self, s):
        is_complex = self.is_complex or isinstance(s, complex)
        terms = {e: v * s for e, v in self.terms.items()}
        return PolyMap(self.n_in, self.n_out, self.truncation_order, terms,
                       is_complex=is_complex)

    def left_multiply(self, matrix):
        """Apply a constant matrix on the output: x -> matrix @ p(x)."""
        matrix = np.asarray(matrix)
        if matrix.shape[1] != self.n_out:
            raise DimensionMismatchError("matrix columns must equal n_out")
        terms = {e: matrix @ v for e, v in self.terms.items()}
        return PolyMap(self.n_in, matrix.shape[0], self.truncation_order, terms,
                       is_complex=self.is_complex or np.iscomplexobj(matrix))

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.add(other.scale(-1.0))

    def __neg__(self):
        return self.scale(-1.0)

    # ------------------------------------------------------------------ #
    # products and composition
    # ------------------------------------------------------------------ #

    def _scalar_items(self):
        return [(e, complex(v[0])) for e, v in self.terms.items()]

    def multiply(self, other, order, componentwise=False):
        """Truncated product, discarding total degree above ``order``.

        Scalar * scalar and scalar * vector (broadcast) are supported by
        default; two vector maps of equal n_out require componentwise=True.
        """
        if self.n_in != other.n_in:
            raise DimensionMismatchError("factors must share the input space")
        is_complex = self.is_complex or other.is_complex
        if self.n_out == 1 or other.n_out == 1:
            scalar, vector = (self, other) if self.n_out == 1 else (other, self)
            s_items = scalar._scalar_items()
            terms = {}
            for j in range(vector.n_out):
                comp = [(e, complex(v[j])) for e, v in vector.terms.items()
                        if abs(v[j]) > 0.0]
                prod = multiply_scalar_terms(s_items, comp, self.n_in, order)
                for e, c in prod.items():
                    vec = terms.setdefault(e, np.zeros(vector.n_out, dtype=np.complex128))
                    vec[j] += c
            return self._cast(terms, vector.n_out, order, is_complex)
        if componentwise and self.n_out == other.n_out:
            terms = {}
            for j in range(self.n_out):
                a = [(e, complex(v[j])) for e, v in self.terms.items() if abs(v[j]) > 0.0]
                b = [(e, complex(v[j])) for e, v in other.terms.items() if abs(v[j]) > 0.0]
                prod = multiply_scalar_terms(a, b, self.n_in, order)
                for e, c in prod.items():
                    vec = terms.setdefault(e, np.zeros(self.n_out, dtype=np.complex128))
                    vec[j] += c
            return self._cast(terms, self.n_out, order, is_complex)
        raise DimensionMismatchError(
            "multiply requires a scalar factor or componentwise=True on equal shapes")

    def _cast(self, complex_terms, n_out, order, is_complex):
        if not is_complex:
            complex_terms = {e: v.real for e, v in complex_terms.items()}
        return PolyMap(self.n_in, n_out, order, complex_terms, is_complex=is_complex)

    def compose(self, inner, order, allow_constant=False):
        """Taylor coefficients of self(inner(x)), truncated at total degree ``order``.

        ``inner`` must map into this map's input space and, unless
        ``allow_constant`` is set, carry no constant term (otherwise the
        truncated composition would not be exact for polynomial inputs).
        """
        if inner.n_out != self.n_in:
            raise DimensionMismatchError(
                f"inner maps into {inner.n_out} components, outer expects {self.n_in}")
        if not allow_constant and any(sum(e) == 0 for e in inner.terms):
            raise ConstantTermError("inner map has a constant term")
        is_complex = self.is_complex or inner.is_complex
        n_in = inner.n_in

        components = []
        for j in range(self.n_in):
            comp = [(e, complex(v[j])) for e, v in inner.terms.items() if abs(v[j]) > 0.0]
            components.append(comp)

        one = {tuple(0 for _ in range(n_in)): 1.0 + 0.0j}
        pow_cache = {}

        def power(j, e):
            if e == 0:
                return one
            key = (j, e)
            if key not in pow_cache:
                if e == 1:
                    pow_cache[key] = dict(components[j])
                else:
                    lower = power(j, e - 1)
                    pow_cache[key] = multiply_scalar_terms(
                        sorted(lower.items(), key=lambda kv: grlex_key(kv[0])),
                        components[j], n_in, order)
            return pow_cache[key]

    # accumulate coeff_vec * prod_j inner_j^{m_j} over the outer terms
        out_terms = {}
        for exps, vec in self.terms.items():
            mono = one
            for j, e in enumerate(exps):
                if e == 0:
                    continue
                mono = multiply_scalar_terms(
                    sorted(mono.items(), key=lambda kv: grlex_key(kv[0])),
                    sorted(power(j, e).items(), key=lambda kv: grlex_key(kv[0])),
                    n_in, order)
                if not mono:
                    break
            for e_out, s in mono.items():
                acc = out_terms.setdefault(e_out, np.zeros(self.n_out, dtype=np.complex128))
                acc += vec * s
        result = PolyMap(n_in, self.n_out, order,
                         out_terms if is_complex
                         else {e: v.real for e, v in out_terms.items()},
                         is_complex=is_complex)
        return result

    def partial_derivative(self, var):
        """Term-by-term derivative in input variable ``var``."""
        if not 0 <= var < self.n_in:
            raise IndexError(f"variable index {var} out of range for n_in={self.n_in}")
        terms = {}
        for exps, vec in self.terms.items():
            e = exps[var]
            if e == 0:
                continue
            new = list(exps)
            new[var] = e - 1
            key = tuple(new)
            if key in terms:
                terms[key] = terms[key] + vec * e
            else:
                terms[key] = vec * e
        return PolyMap(self.n_in, self.n_out, max(self.truncation_order - 1, 0),
                       terms, is_complex=self.is_complex)

    # ------------------------------------------------------------------ #
    # serialization
    # ------------------------------------------------------------------ #

    def to_json_terms(self):
        """Graded-lex sorted list of {"powers": [...], "coeff": [...]} entries.

        Real coefficients serialize as floats, complex ones as [re, im]
        pairs; round-trips are bit-exact.
        """
        out = []
        for exps, vec in self.terms.items():
            if self.is_complex:
                coeff = [[float(c.real), float(c.imag)] for c in vec]
            else:
                coeff = [float(c) for c in vec]
            out.append({"powers": list(exps), "coeff": coeff})
        return out

    @classmethod
    def from_json_terms(cls, entries, n_in=None, n_out=None,
                        truncation_order=None, is_complex=None):
        """Inverse of :meth:`to_json_terms`; dimensions inferred when omitted."""
        terms = {}
        seen_complex = False
        for entry in entries:
            exps = tuple(int(e) for e in entry["powers"])
            raw = entry["coeff"]
            if raw and isinstance(raw[0], (list, tuple)):
                vec = np.array([complex(c[0], c[1]) for c in raw])
                seen_complex = True
            else:
                vec = np.array([float(c) for c in raw])
            terms[exps] = vec
        if n_in is None:
            if not terms:
                raise ValueError("cannot infer n_in from an empty term list")
            n_in = len(next(iter(terms)))
        if n_out is None:
            n_out = len(next(iter(terms.values()))) if terms else 1
        if truncation_order is None:
            truncation_order = max((sum(e) for e in terms), default=0)
        if is_complex is None:
            is_complex = seen_complex
        return cls(n_in, n_out, truncation_order, terms, is_complex=is_complex)


def max_coefficient_difference(a, b):
    """Largest coefficient-wise |a - b| over the union of stored monomials."""
    diff = 0.0
    for e in set(a.terms) | set(b.terms):
        diff = max(diff, float(np.max(np.abs(a.coefficient(e) - b.coefficient(e)))))
    return diff
