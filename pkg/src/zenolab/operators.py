"""Dense complex operator algebra.

Hermitian eigendecomposition with cached spectra, matrix exponentials for
real and complex time, operator norms, PSD square roots, and orthogonal
projections built from spanning sets. Everything is immutable after
construction and safe for concurrent read-only use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatch,
    NonFinite,
    NotHermitian,
    NotPSD,
    Overflow,
    ZeroSpan,
)
from .numeric import EXP_LIMIT, tol

__all__ = [
    "HermitianOperator",
    "OrthogonalProjection",
    "eigendecompose",
    "evolve",
    "expm",
    "operator_norm",
    "psd_sqrt",
    "projection_from_span",
    "projection_from_matrix",
    "identity_projection",
    "complement",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


def as_complex_matrix(m) -> np.ndarray:
    """Validate and return a square, finite, complex dense matrix."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if a.size and not np.all(np.isfinite(a.view(float))):
        raise NonFinite("matrix contains non-finite entries")
    return a


def operator_norm(m) -> float:
    """Largest singular value; zero exactly for the zero (or empty) matrix."""
    a = as_complex_matrix(m)
    if a.size == 0 or not np.any(a):
        return 0.0
    return float(np.linalg.norm(a, 2))


@dataclass(frozen=True)
class HermitianOperator:
    """Self-adjoint matrix with its cached eigendecomposition.

    ``eigenvalues`` ascend and ``eigenvectors`` holds the corresponding
    orthonormal eigenvectors in its columns.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        m, w, v = self.matrix, self.eigenvalues, self.eigenvectors
        norm = float(np.max(np.abs(w))) if w.size else 0.0
        defect = operator_norm(m - m.conj().T)
        if defect > tol(1e-12, norm):
            raise NotHermitian(f"hermiticity defect {defect:.3e} exceeds tolerance")
        if w.size:
            if np.any(np.diff(w) < 0):
                raise ValueError("eigenvalues must ascend")
            recon = operator_norm(m - (v * w) @ v.conj().T)
            if recon > tol(1e-10, norm):
                raise ValueError(f"reconstruction residual {recon:.3e} exceeds tolerance")
            ortho = operator_norm(v.conj().T @ v - np.eye(self.dim))
            if ortho > tol(1e-10):
                raise ValueError(f"eigenvector orthonormality defect {ortho:.3e}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def norm(self) -> float:
        """Spectral norm, read off the eigenvalues."""
        return float(np.max(np.abs(self.eigenvalues))) if self.eigenvalues.size else 0.0

    @property
    def spread(self) -> float:
        if not self.eigenvalues.size:
            return 0.0
        return float(self.eigenvalues[-1] - self.eigenvalues[0])


@dataclass(frozen=True)
class OrthogonalProjection:
    """Idempotent self-adjoint matrix together with its integer rank."""

    matrix: np.ndarray
    rank: int

    def __post_init__(self):
        p = self.matrix
        norm = operator_norm(p)
        if operator_norm(p - p.conj().T) > tol(1e-12, norm):
            raise NotHermitian("projection is not self-adjoint within tolerance")
        if operator_norm(p @ p - p) > tol(1e-10, norm):
            raise ValueError("projection is not idempotent within tolerance")
        trace = float(np.trace(p).real)
        if abs(trace - self.rank) > tol(1e-8):
            raise ValueError(f"trace {trace:.12f} disagrees with rank {self.rank}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def eigendecompose(m) -> HermitianOperator:
    """Eigendecompose a Hermitian-within-tolerance matrix.

    Raises NotHermitian when the adjoint defect exceeds 1e-12 * (1 + ||M||),
    NonFinite on NaN/Inf entries.
    """
    a = as_complex_matrix(m)
    defect = operator_norm(a - a.conj().T)
    if defect > tol(1e-12, operator_norm(a)):
        raise NotHermitian(f"matrix is not Hermitian: defect {defect:.3e}")
    sym = (a + a.conj().T) / 2.0
    if a.size:
        w, v = np.linalg.eigh(sym)
    else:
        w = np.zeros(0)
        v = np.zeros((0, 0), dtype=complex)
    return HermitianOperator(_freeze(sym), _freeze(w), _freeze(v.astype(complex)))


def evolve(h: HermitianOperator, z: complex) -> np.ndarray:
    """exp(i z H) through the cached eigenbasis.

    Unitary for real z; raises Overflow if |Im z| * max|eigenvalue| would
    overflow the exponential rather than clamping silently.
    """
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise NonFinite("time argument must be finite")
    if h.eigenvalues.size:
        worst = abs(z.imag) * float(np.max(np.abs(h.eigenvalues)))
        if worst > EXP_LIMIT:
            raise Overflow(f"exp argument magnitude {worst:.3e} exceeds {EXP_LIMIT}")
    phases = np.exp(1j * z * h.eigenvalues)
    v = h.eigenvectors
    return (v * phases) @ v.conj().T


def _expm_general(m: np.ndarray) -> np.ndarray:
    # scaling-and-squaring with Pade error control
    return scipy.linalg.expm(m)


def expm(m) -> np.ndarray:
    """General matrix exponential.

    Hermitian and normal inputs go through exact diagonalization; everything
    else through scaling-and-squaring. Normality test:
    ||M M* - M* M|| <= 1e-12 ||M||^2.
    """
    a = as_complex_matrix(m)
    if a.size == 0:
        return np.zeros((0, 0), dtype=complex)
    norm = operator_norm(a)
    if norm == 0.0:
        return np.eye(a.shape[0], dtype=complex)
    adj = a.conj().T
    if operator_norm(a - adj) <= tol(1e-12, norm):
        w, v = np.linalg.eigh((a + adj) / 2.0)
        return (v * np.exp(w)) @ v.conj().T
    if operator_norm(a @ adj - adj @ a) <= tol(1e-12) * norm**2:
        # normal: complex Schur form is diagonal up to roundoff
        t, q = scipy.linalg.schur(a, output="complex")
        return (q * np.exp(np.diag(t))) @ q.conj().T
    return _expm_general(a)


def psd_sqrt(h: HermitianOperator) -> HermitianOperator:
    """Positive square root of a PSD operator.

    Eigenvalues in [-1e-10*(1+||H||), 0) are clamped to zero; anything lower
    raises NotPSD.
    """
    w = h.eigenvalues
    if w.size and float(w[0]) < -tol(1e-10, h.norm):
        raise NotPSD(f"minimum eigenvalue {w[0]:.3e} is negative beyond tolerance")
    roots = np.sqrt(np.clip(w, 0.0, None))
    v = h.eigenvectors
    mat = (v * roots) @ v.conj().T
    mat = (mat + mat.conj().T) / 2.0
    return HermitianOperator(_freeze(mat), _freeze(roots), v)


def projection_from_span(vectors) -> OrthogonalProjection:
    """Orthogonal projection onto the span of the given vectors.

    Rank equals the numerical dimension of the span (singular values below
    1e-10 of the largest are treated as zero). Raises ZeroSpan when every
    input is numerically zero.
    """
    cols = np.column_stack([np.asarray(v, dtype=complex) for v in vectors])
    if not np.all(np.isfinite(cols.view(float))):
        raise NonFinite("spanning vectors contain non-finite entries")
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    if not s.size or s[0] <= tol(1e-300):
        raise ZeroSpan("all spanning vectors are numerically zero")
    keep = s > tol(1e-10) * s[0]
    q = u[:, keep]
    p = q @ q.conj().T
    p = (p + p.conj().T) / 2.0
    return OrthogonalProjection(_freeze(p), int(np.count_nonzero(keep)))


def projection_from_matrix(p) -> OrthogonalProjection:
    """Wrap an already-idempotent self-adjoint matrix, validating its invariants."""
    a = as_complex_matrix(p)
    rank = int(round(float(np.trace(a).real)))
    return OrthogonalProjection(_freeze(a), rank)


def identity_projection(dim: int) -> OrthogonalProjection:
    return OrthogonalProjection(_freeze(np.eye(dim, dtype=complex)), dim)


def complement(p: OrthogonalProjection) -> OrthogonalProjection:
    """The projection onto the orthogonal complement of range(P)."""
    q = np.eye(p.dim, dtype=complex) - p.matrix
    return OrthogonalProjection(_freeze((q + q.conj().T) / 2.0), p.dim - p.rank)


def range_basis(p: OrthogonalProjection) -> np.ndarray:
    """Orthonormal basis of range(P) as columns, dim x rank."""
    if p.rank == 0:
        return np.zeros((p.dim, 0), dtype=complex)
    u, s, _ = np.linalg.svd(p.matrix)
    return np.ascontiguousarray(u[:, : p.rank])


def check_dims(*operands) -> int:
    """Assert all operands act on the same dimension; return it."""
    dims = []
    for op in operands:
        if isinstance(op, (HermitianOperator, OrthogonalProjection)):
            dims.append(op.dim)
        else:
            dims.append(np.asarray(op).shape[0])
    if len(set(dims)) > 1:
        raise DimensionMismatch(f"operands have mismatched dimensions {dims}")
    return dims[0]
