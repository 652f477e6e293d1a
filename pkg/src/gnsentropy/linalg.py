"""Dense complex linear-algebra helpers shared across the package.

All operators are plain ``numpy`` arrays of ``complex128``. Matrices pair
through the Hilbert-Schmidt inner product ``<X, Y> = trace(X^dag Y)``, so a
matrix flattened row-major is just a vector in C^(D*D) and span arithmetic
reduces to ordinary vector algebra.

Rank and null-space decisions use a relative threshold: ``DEFAULT_RTOL``
times the largest eigenvalue or singular value of the matrix being cut.
"""

from __future__ import annotations

import numpy as np

#: Relative threshold for rank / null-space decisions.
DEFAULT_RTOL = 1e-10

#: Eigenvalues of a unit-HS-norm Hermitian element closer than this are
#: grouped into one cluster (absolute gap).
CLUSTER_TOL = 1e-8

#: Agreement tolerance between independently computed spectra.
ORACLE_TOL = 1e-8

#: Absolute floor under the relative cut, so that identically-zero positive
#: semidefinite matrices (scale ~ roundoff) classify as all-null.
NULL_FLOOR = 1e-24


def dagger(x: np.ndarray) -> np.ndarray:
    """Conjugate transpose, broadcasting over leading axes."""
    return x.conj().swapaxes(-1, -2)


def hermitize(x: np.ndarray) -> np.ndarray:
    return 0.5 * (x + dagger(x))


def hs_inner(x: np.ndarray, y: np.ndarray) -> complex:
    """Hilbert-Schmidt pairing trace(x^dag y)."""
    return complex(np.vdot(x, y))


def hs_norm(x: np.ndarray) -> float:
    return float(np.linalg.norm(x))


def as_square(x, ambient_dim: int | None = None, name: str = "matrix") -> np.ndarray:
    """Validate and convert to a finite square complex matrix."""
    a = np.asarray(x, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if ambient_dim is not None and a.shape[0] != ambient_dim:
        raise ValueError(
            f"{name} has dimension {a.shape[0]}, expected {ambient_dim}"
        )
    if not np.isfinite(a).all():
        raise ValueError(f"{name} has non-finite entries")
    return a


def orthonormalize_rows(
    rows, against: np.ndarray | None = None, rtol: float | None = None
) -> np.ndarray:
    """Modified Gram-Schmidt over row vectors, one re-orthogonalization pass.

    Rows numerically dependent on earlier rows (or on ``against``, an
    orthonormal row block that is fixed but not returned) are dropped when
    their residual falls below ``rtol`` times their original norm.
    """
    rtol = DEFAULT_RTOL if rtol is None else rtol
    rows = [np.asarray(r, dtype=complex).ravel() for r in rows]
    fixed = 0 if against is None else against.shape[0]
    ortho: list[np.ndarray] = [] if against is None else list(against)
    # relative cut against the largest candidate, so roundoff-sized rows
    # never masquerade as new directions
    scale = max((np.linalg.norm(v) for v in rows), default=0.0)
    cut = rtol * scale
    for v in rows:
        if np.linalg.norm(v) <= cut:
            continue
        w = v.copy()
        for _ in range(2):
            for q in ortho:
                w = w - np.vdot(q, w) * q
        nrm = np.linalg.norm(w)
        if nrm > cut:
            ortho.append(w / nrm)
    kept = ortho[fixed:]
    width = rows[0].size if rows else (against.shape[1] if against is not None else 0)
    if not kept:
        return np.zeros((0, width), dtype=complex)
    return np.array(kept)


def eigh_null_split(M: np.ndarray, rtol: float | None = None):
    """Eigendecompose a Hermitian PSD matrix and locate its null part.

    Returns ``(vals, vecs, n_null)`` with eigenvalues ascending; the first
    ``n_null`` eigenpairs fall at or below the relative cut.
    """
    rtol = DEFAULT_RTOL if rtol is None else rtol
    vals, vecs = np.linalg.eigh(hermitize(M))
    scale = max(float(vals[-1]), 0.0) if vals.size else 0.0
    cut = max(rtol * scale, NULL_FLOOR)
    n_null = int(np.count_nonzero(vals <= cut))
    return vals, vecs, n_null


def matrix_rank(A: np.ndarray, rtol: float | None = None) -> int:
    """Numerical rank with a relative singular-value cut."""
    rtol = DEFAULT_RTOL if rtol is None else rtol
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def eig_clusters(vals: np.ndarray, tol: float) -> list[slice]:
    """Group ascending real values into clusters separated by gaps > tol."""
    slices = []
    start = 0
    for i in range(1, len(vals)):
        if vals[i] - vals[i - 1] > tol:
            slices.append(slice(start, i))
            start = i
    slices.append(slice(start, len(vals)))
    return slices


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary from the QR of a complex Gaussian matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return hermitize(z)
