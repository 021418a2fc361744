"""Eigen-analysis of the linear part: ordered spectra, spectral subspaces,
spectral quotients, nonresonance verification, subspace classification, the
slow-subspace hierarchy, and the explicit non-unique linear manifold family.

Mode indices are 1-based throughout the public API (mode 1 = slowest-decaying
eigenvalue), matching the usual engineering numbering.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from ssmkit.errors import (
    DimensionMismatchError,
    NotSemisimpleError,
    UnstableSpectrumError,
)
from ssmkit.polyfield import PolyMap, monomials_of_degree, pairing_matrices

#: |lambda_i - conj(lambda_j)| below this (relative) identifies a conjugate pair.
PAIRING_TOL = 1e-9
#: |lhs - lambda_l| below this (relative) counts as a resonance violation.
VIOLATION_TOL = 1e-8
#: Absolute margin below this is reported as a near-miss.
NEAR_MISS_TOL = 1e-2


def _int_part(ratio):
    """Integer part (truncation toward zero) of a positive ratio."""
    return int(ratio)


def _normalize_eigenvector(v):
    """Canonical phase and scale: largest-|.| component real positive, max-norm 1."""
    mags = np.abs(v)
    peak = mags.max()
    idx = int(np.argmax(mags >= peak * (1.0 - 1e-12)))
    v = v / (v[idx] / abs(v[idx]))
    return v / abs(v[idx])


@dataclass
class Spectrum:
    """Ordered eigen-decomposition of a real matrix.

    Attributes
    ----------
    eigenvalues : (N,) complex ndarray
        Ordered by non-increasing real part; conjugate pairs adjacent with
        the positive-imaginary member first.
    vectors : (N, N) complex ndarray
        Eigenvector columns aligned with ``eigenvalues``; conjugate pairs
        are exact conjugates; canonical phase/scale normalization.
    conjugate_pairs : tuple of int
        0-based partner slot per slot (the slot itself for real eigenvalues).
    semisimple : bool
    matrix : (N, N) float ndarray
        The analyzed matrix.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    conjugate_pairs: tuple
    semisimple: bool
    matrix: np.ndarray
    _modal: np.ndarray = field(default=None, repr=False)
    _modal_inv: np.ndarray = field(default=None, repr=False)

    @property
    def N(self):
        return len(self.eigenvalues)

    @property
    def real_modal_transform(self):
        """Real change of basis T with x = T xi: columns (Re v, Im v) per pair."""
        if self._modal is None:
            T = np.empty((self.N, self.N))
            for i, p in enumerate(self.conjugate_pairs):
                if p == i:
                    T[:, i] = self.vectors[:, i].real
                elif p > i:
                    T[:, i] = self.vectors[:, i].real
                    T[:, p] = self.vectors[:, i].imag
            self._modal = T
        return self._modal

    @property
    def real_modal_inverse(self):
        if self._modal_inv is None:
            self._modal_inv = np.linalg.inv(self.real_modal_transform)
        return self._modal_inv

    def local_pairing(self, positions):
        """Conjugate pairing restricted to a slot subset, in local indices."""
        positions = list(positions)
        lookup = {pos: i for i, pos in enumerate(positions)}
        local = []
        for pos in positions:
            partner = self.conjugate_pairs[pos]
            if partner == pos:
                local.append(lookup[pos])
            else:
                if partner not in lookup:
                    raise ValueError(
                        f"slot subset {positions} is not conjugate-closed")
                local.append(lookup[partner])
        return tuple(local)

    def reconstruction_error(self):
        """Relative error of vectors @ diag(eigenvalues) @ vectors^-1 vs the matrix."""
        V = self.vectors
        rebuilt = (V * self.eigenvalues) @ np.linalg.inv(V)
        return float(
            np.max(np.abs(rebuilt.real - self.matrix)) / (1.0 + np.max(np.abs(self.matrix)))
        )

    def complex_nonlinearity(self, f0, order):
        """Nonlinearity in complex eigenbasis coordinates: V^-1 f0(V c)."""
        Vmap = PolyMap.from_linear(self.vectors, order)
        return f0.compose(Vmap, order).left_multiply(np.linalg.inv(self.vectors))

    def to_json(self):
        return {
            "eigenvalues": [[float(l.real), float(l.imag)] for l in self.eigenvalues],
            "conjugate_pairs": [int(p) + 1 for p in self.conjugate_pairs],
            "semisimple": bool(self.semisimple),
        }


def compute_spectrum(A, pairing_tol=PAIRING_TOL):
    """Eigen-analysis with canonical ordering and conjugate-pair structure.

    Raises
    ------
    DimensionMismatchError
        If the matrix is not square.
    ValueError
        On non-finite entries.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"matrix has shape {A.shape}, expected square")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    N = A.shape[0]
    w, V = np.linalg.eig(A)

    scale = 1.0 + np.max(np.abs(w)) if N else 1.0
    used = [False] * N
    entries = []  # ("real", lam, v) or ("pair", lam(+Im), v)
    for i in range(N):
        if used[i]:
            continue
        if abs(w[i].imag) <= pairing_tol * (1.0 + abs(w[i])):
            used[i] = True
            v = _normalize_eigenvector(V[:, i]).real
            v = v / np.max(np.abs(v))
            entries.append(("real", complex(w[i].real, 0.0), v))
        else:
            best, best_dist = -1, np.inf
            for j in range(N):
                if used[j] or j == i:
                    continue
                dist = abs(w[j] - np.conj(w[i]))
                if dist < best_dist:
                    best, best_dist = j, dist
            if best < 0 or best_dist > pairing_tol * (1.0 + abs(w[i])):
                raise NotSemisimpleError(
                    f"eigenvalue {w[i]} has no conjugate partner within tolerance")
            used[i] = used[best] = True
            lam_pos, v_pos = (w[i], V[:, i]) if w[i].imag > 0 else (w[best], V[:, best])
            lam_neg = w[best] if w[i].imag > 0 else w[i]
            lam = (lam_pos + np.conj(lam_neg)) / 2.0
            entries.append(("pair", lam, _normalize_eigenvector(v_pos)))

    entries.sort(key=lambda ent: (-ent[1].real, abs(ent[1].imag),
                                  int(np.argmax(np.abs(ent[2])))))

    eigenvalues = np.empty(N, dtype=complex)
    vectors = np.empty((N, N), dtype=complex)
    pairs = [0] * N
    slot = 0
    for kind, lam, v in entries:
        if kind == "real":
            eigenvalues[slot] = lam
            vectors[:, slot] = v
            pairs[slot] = slot
            slot += 1
        else:
            eigenvalues[slot] = lam
            eigenvalues[slot + 1] = np.conj(lam)
            vectors[:, slot] = v
            vectors[:, slot + 1] = np.conj(v)
            pairs[slot] = slot + 1
            pairs[slot + 1] = slot
            slot += 2

    # geometric vs algebraic multiplicity on eigenvalue clusters
    semisimple = True
    cluster_tol = 1e-7 * scale
    visited = [False] * N
    for i in range(N):
        if visited[i]:
            continue
        cluster = [j for j in range(N) if abs(eigenvalues[j] - eigenvalues[i]) <= cluster_tol]
        for j in cluster:
            visited[j] = True
        if len(cluster) > 1:
            lam = eigenvalues[cluster].mean() if isinstance(cluster, np.ndarray) else np.mean(
                [eigenvalues[j] for j in cluster])
            geo = N - np.linalg.matrix_rank(A - lam * np.eye(N))
            if geo < len(cluster):
                semisimple = False

    return Spectrum(eigenvalues, vectors, tuple(pairs), bool(semisimple), A)


# ---------------------------------------------------------------------- #
# spectral subspaces
# ---------------------------------------------------------------------- #

@dataclass(frozen=True)
class SpectralSubspace:
    """A conjugate-closed selection of eigenvalue indices (1-based)."""

    indices: tuple
    label: str = ""

    @property
    def dimension(self):
        return len(self.indices)

    def positions(self):
        """0-based slots into the spectrum arrays."""
        return tuple(i - 1 for i in self.indices)


def subspace(spectrum, selector, label=""):
    """Build a conjugate-closed spectral subspace.

    ``selector`` is an iterable of 1-based mode indices, or a string
    ``"slow:q"`` / ``"fast:q"`` picking the q slowest / fastest slots
    before conjugate closure.
    """
    N = spectrum.N
    if isinstance(selector, str):
        kind, _, count = selector.partition(":")
        q = int(count)
        if not 1 <= q <= N:
            raise ValueError(f"subspace size {q} out of range")
        if kind == "slow":
            chosen = set(range(1, q + 1))
        elif kind == "fast":
            chosen = set(range(N - q + 1, N + 1))
        else:
            raise ValueError(f"unknown subspace selector {selector!r}")
        if not label:
            label = selector
    else:
        chosen = {int(i) for i in selector}
    for i in chosen:
        if not 1 <= i <= N:
            raise ValueError(f"mode index {i} out of range 1..{N}")
    closed = set(chosen)
    for i in chosen:
        closed.add(spectrum.conjugate_pairs[i - 1] + 1)
    return SpectralSubspace(tuple(sorted(closed)), label)


@dataclass(frozen=True)
class SpectralQuotients:
    """Relative and absolute spectral quotients of a subspace.

    ``sigma`` is None when the subspace is the full space (the relative
    quotient is undefined there); ``Sigma`` is always defined.
    """

    sigma: int
    Sigma: int


def spectral_quotients(spectrum, E):
    """Quotients Int[min outside Re / max inside Re] and Int[min overall / max inside].

    Requires a strictly decaying spectrum and a nonempty subspace.
    """
    re = spectrum.eigenvalues.real
    if re.max() >= 0.0:
        raise UnstableSpectrumError(
            f"max Re lambda = {re.max():.3e}; quotients need Re lambda < 0")
    inside = list(E.positions())
    if not inside:
        raise ValueError("empty spectral subspace")
    outside = [i for i in range(spectrum.N) if i not in set(inside)]
    max_inside = re[inside].max()
    Sigma = _int_part(re.min() / max_inside)
    sigma = _int_part(re[outside].min() / max_inside) if outside else None
    return SpectralQuotients(sigma, Sigma)


class SubspaceClass(enum.Enum):
    FAST = "fast"
    INTERMEDIATE = "intermediate"
    SLOW = "slow"


@dataclass(frozen=True)
class SubspaceClassification:
    kind: SubspaceClass
    indices: tuple

    def to_json(self):
        return {"class": self.kind.value, "indices": list(self.indices)}


def classify_subspace(spectrum, E):
    """Fast / intermediate / slow per the index-range test."""
    N = spectrum.N
    q = E.dimension
    idx = tuple(sorted(E.indices))
    if idx == tuple(range(1, q + 1)):
        kind = SubspaceClass.SLOW
    elif idx == tuple(range(N - q + 1, N + 1)):
        kind = SubspaceClass.FAST
    else:
        kind = SubspaceClass.INTERMEDIATE
    return SubspaceClassification(kind, idx)


# ---------------------------------------------------------------------- #
# nonresonance verification
# ---------------------------------------------------------------------- #

@dataclass(frozen=True)
class ResonanceRecord:
    m: tuple
    outer_index: int
    lhs: complex
    margin: float

    def to_json(self):
        lhs = self.lhs
        return {
            "m": list(self.m),
            "outer_index": self.outer_index,
            "lhs": [float(np.real(lhs)), float(np.imag(lhs))],
            "margin": float(self.margin),
        }


@dataclass
class ResonanceReport:
    """Outcome of enumerating low-order resonance conditions.

    ``passed`` is True exactly when no violation was found. Forced-mode
    results are the epsilon = 0 conditions; they are not convergence
    guarantees for finite forcing.
    """

    mode: str
    max_order: int
    violations: list
    near_misses: list
    passed: bool
    vacuous: bool = False

    def to_json(self):
        return {
            "mode": self.mode,
            "max_order": self.max_order,
            "passed": self.passed,
            "vacuous": self.vacuous,
            "epsilon0_conditions_only": self.mode == "forced",
            "violations": [r.to_json() for r in self.violations],
            "near_misses": [r.to_json() for r in self.near_misses],
        }


def check_nonresonance(spectrum, E, mode="autonomous", max_order=None,
                       violation_tol=VIOLATION_TOL, near_tol=NEAR_MISS_TOL):
    """Enumerate <m, lambda>_E vs outer eigenvalues up to ``max_order``.

    Autonomous mode compares full complex combinations against outer
    eigenvalues; forced mode compares real parts only. The default order
    bound is the relative (autonomous) or absolute (forced) spectral
    quotient. Orders below 2 pass vacuously and are flagged as such.
    """
    if mode not in ("autonomous", "forced"):
        raise ValueError(f"unknown mode {mode!r}")
    if max_order is None:
        q = spectral_quotients(spectrum, E)
        max_order = q.sigma if mode == "autonomous" else q.Sigma
        if max_order is None:
            max_order = q.Sigma
    inside = list(E.positions())
    outside = [i for i in range((spectrum.N)) if i not in set(inside)]
    if max_order < 2:
        return ResonanceReport(mode, max_order, [], [], True, vacuous=True)

    lam_inside = spectrum.eigenvalues[inside]
    violations, near_misses = [], []
    for order in range(2, max_order + 1):
        for m in monomials_of_degree(len(inside), order):
            if mode == "autonomous":
                lhs = complex(np.dot(m, lam_inside))
            else:
                lhs = float(np.dot(m, lam_inside.real))
            for pos in outside:
                target = spectrum.eigenvalues[pos] if mode == "autonomous" \
                    else spectrum.eigenvalues[pos].real
                margin = abs(lhs - target)
                record = ResonanceRecord(m, pos + 1, lhs, margin)
                if margin < violation_tol * (1.0 + abs(target)):
                    violations.append(record)
                elif margin < near_tol:
                    near_misses.append(record)
    return ResonanceReport(mode, max_order, violations, near_misses,
                           passed=not violations)


# ---------------------------------------------------------------------- #
# slow hierarchy
# ---------------------------------------------------------------------- #

@dataclass(frozen=True)
class SlowHierarchy:
    """Nested slow-subspace cuts at successive largest real-part gaps."""

    cut_indices: tuple
    gaps: tuple

    def to_json(self):
        return {"cut_indices": list(self.cut_indices), "gaps": list(self.gaps)}


def slow_hierarchy(spectrum):
    """Cut the ordered spectrum at the largest real-part gaps, recursively.

    Ties break toward the smaller index; the sequence is strictly
    decreasing and terminates at 1.
    """
    re = spectrum.eigenvalues.real
    if re.max() >= 0.0:
        raise UnstableSpectrumError("slow hierarchy needs Re lambda < 0")
    N = spectrum.N
    if N < 2:
        raise ValueError("need at least two eigenvalues")
    gap = np.abs(np.diff(re))  # gap[j-1] = |Re l_{j+1} - Re l_j| (1-based j)
    cuts, gaps = [], []
    upper = N - 1  # consider j in [1, upper]
    while upper >= 1:
        window = gap[:upper]
        j = int(np.argmax(window)) + 1  # first argmax -> smallest index
        cuts.append(j)
        gaps.append(float(window[j - 1]))
        if j == 1:
            break
        upper = j - 1
    if cuts[-1] != 1:
        cuts.append(1)
        gaps.append(float(gap[0]))
    return SlowHierarchy(tuple(cuts), tuple(gaps))


# ---------------------------------------------------------------------- #
# linear flat manifold family
# ---------------------------------------------------------------------- #

@dataclass
class LinearFlatFamily:
    """One member of the explicit invariant-manifold family of the linear flow.

    In amplitude-phase coordinates per underdamped mode pair, the outer
    amplitudes are r_l = sum_i C[(l, j_i)] * r_{j_i} ** (Re l_l / Re l_{j_i})
    and the outer phases follow the first master phase. The all-zero-constant
    member is the spectral subspace itself, the unique smoothest member.

    Pair ids are the 1-based index of the positive-imaginary member.
    """

    subspace: SpectralSubspace
    master_ids: tuple
    outer_ids: tuple
    C: dict
    D: dict
    smoothness_class: dict
    eigenvalues: np.ndarray

    def evaluate(self, radii, phases=None):
        """Map master radii/phases to outer (radius, phase) tuples.

        ``radii`` maps master pair id -> r >= 0; ``phases`` needs at least
        the first master id (others do not enter the closed form). Outer
        real eigenvalues get phase None.
        """
        phases = phases or {}
        first = self.master_ids[0]
        phi1 = phases.get(first, 0.0)
        lam1 = self.eigenvalues[first - 1]
        out = {}
        for l in self.outer_ids:
            lam_l = self.eigenvalues[l - 1]
            r = 0.0
            for j in self.master_ids:
                c = self.C.get((l, j), 0.0)
                if c == 0.0:
                    continue
                rj = radii[j]
                expo = lam_l.real / self.eigenvalues[j - 1].real
                r += c * rj ** expo
            if lam_l.imag != 0.0:
                phi = self.D.get(l, 0.0) + (lam_l.imag / lam1.imag) * phi1
            else:
                phi = None
            out[l] = (r, phi)
        return out


def flat_family_member(spectrum, E, C=None, D=None):
    """Build a member of the linear invariant-graph family over ``E``.

    Requires Re lambda < 0 throughout and non-real eigenvalues inside ``E``
    (the amplitude-phase form); raises on a selected real eigenvalue.
    """
    re = spectrum.eigenvalues.real
    if re.max() >= 0.0:
        raise UnstableSpectrumError("flat family needs Re lambda < 0")
    inside = set(E.positions())
    for pos in inside:
        if spectrum.conjugate_pairs[pos] == pos:
            raise ValueError(
                f"mode {pos + 1} is real; the amplitude-phase family needs "
                "underdamped (non-real) master modes")
    master_ids = tuple(pos + 1 for pos in sorted(inside)
                       if spectrum.conjugate_pairs[pos] > pos)
    outer_ids = tuple(pos + 1 for pos in range(spectrum.N)
                      if pos not in inside
                      and spectrum.conjugate_pairs[pos] >= pos)
    C = dict(C or {})
    D = dict(D or {})
    for (l, j) in C:
        if l not in outer_ids or j not in master_ids:
            raise ValueError(f"constant C[{(l, j)}] does not match the subspace split")
    smooth = {}
    for l in outer_ids:
        for j in master_ids:
            smooth[(l, j)] = _int_part(re[l - 1] / re[j - 1])
    return LinearFlatFamily(E, master_ids, outer_ids, C, D, smooth,
                            spectrum.eigenvalues.copy())
