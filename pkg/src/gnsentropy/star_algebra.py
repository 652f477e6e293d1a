"""Finite-dimensional *-algebras as concrete spans of complex matrices.

An :class:`OperatorSpan` stores an orthonormal basis (under the
Hilbert-Schmidt pairing) of a subspace of D x D matrices. The operations
here close spans under products and adjoints, compute centers and
commutants as null spaces of commutator maps, and split a unital *-closed
span into its irreducible matrix blocks by eigendecomposing a seeded
random Hermitian element of the center.

Every function is pure and deterministic: randomized steps draw from a
``numpy`` generator created from an explicit seed, and basis ordering is
fixed by input order plus a deterministic enumeration of products.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ClosureError, DecompositionError
from .linalg import (
    CLUSTER_TOL,
    DEFAULT_RTOL,
    as_square,
    dagger,
    eig_clusters,
    eigh_null_split,
    hermitize,
    hs_norm,
    matrix_rank,
    orthonormalize_rows,
)

#: Retry budget for random draws whose eigenvalues must separate.
MAX_DRAWS = 64

#: Absolute tolerance when a computed block rank or multiplicity must
#: round to an integer.
INTEGER_TOL = 1e-6


class OperatorSpan:
    """A linear span of D x D complex matrices with an orthonormal basis.

    Instances are immutable after construction and safe to share between
    threads. The basis is orthonormal under ``<X, Y> = trace(X^dag Y)``;
    coefficient vectors therefore carry the same inner product as the
    matrices they represent.

    Parameters
    ----------
    basis : ndarray, shape (n, D, D)
        Orthonormal basis matrices. Orthonormality is trusted, not
        re-checked; use :meth:`validate` in tests.
    rtol : float, optional
        Relative tolerance used by membership queries.
    """

    def __init__(self, basis: np.ndarray, rtol: float | None = None):
        basis = np.array(basis, dtype=complex)
        if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
            raise ValueError(f"basis must have shape (n, D, D), got {basis.shape}")
        self.basis = basis
        self.basis.setflags(write=False)
        self.rtol = DEFAULT_RTOL if rtol is None else rtol
        eye = np.eye(self.ambient_dim)
        self.unit_coords = self.coords(eye)
        self.has_unit = bool(
            hs_norm(eye - self.reconstruct(self.unit_coords))
            <= self.rtol * hs_norm(eye)
        )
        if not self.has_unit:
            self.unit_coords = None
        self._structure: tuple[np.ndarray, float] | None = None

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[1]

    def __repr__(self) -> str:
        unital = "unital" if self.has_unit else "non-unital"
        return f"OperatorSpan(dim={self.dim}, ambient={self.ambient_dim}, {unital})"

    def coords(self, X: np.ndarray) -> np.ndarray:
        """Coefficients of X against the basis (its HS-orthogonal projection)."""
        return np.einsum("aij,ij->a", self.basis.conj(), np.asarray(X, dtype=complex))

    def reconstruct(self, coeffs: np.ndarray) -> np.ndarray:
        return np.tensordot(np.asarray(coeffs, dtype=complex), self.basis, axes=(0, 0))

    def project(self, X: np.ndarray) -> np.ndarray:
        return self.reconstruct(self.coords(X))

    def residual(self, X: np.ndarray) -> float:
        """HS distance from X to the span."""
        return hs_norm(np.asarray(X, dtype=complex) - self.project(X))

    def contains(self, X: np.ndarray, rtol: float | None = None) -> bool:
        rtol = self.rtol if rtol is None else rtol
        scale = hs_norm(X)
        return scale == 0.0 or self.residual(X) <= rtol * scale

    def unit(self) -> np.ndarray:
        if not self.has_unit:
            raise ValueError("span does not contain the ambient identity")
        return self.reconstruct(self.unit_coords)

    def structure_constants(self) -> tuple[np.ndarray, float]:
        """Expansion of all basis products back in the basis.

        Returns ``(coeff, residual)`` where ``B_a B_b = sum_c coeff[a,b,c] B_c``
        up to ``residual``, the largest HS norm left unexpanded. A residual
        above tolerance means the span is not multiplicatively closed.
        """
        if self._structure is None:
            B = self.basis
            n, D = self.dim, self.ambient_dim
            prod = np.einsum("aij,bjk->abik", B, B)
            flat = prod.reshape(n * n, D * D)
            coeff = (flat @ B.conj().reshape(n, D * D).T).reshape(n, n, n)
            recon = np.tensordot(coeff, B.reshape(n, D * D), axes=(2, 0))
            diff = flat - recon.reshape(n * n, D * D)
            resid = float(np.linalg.norm(diff, axis=1).max()) if n else 0.0
            self._structure = (coeff, resid)
        return self._structure

    def adjoint_coords(self) -> tuple[np.ndarray, float]:
        """Matrix S with ``B_a^dag = sum_b S[a,b] B_b`` and the worst residual."""
        B = self.basis
        n, D = self.dim, self.ambient_dim
        adj = dagger(B).reshape(n, D * D)
        S = adj @ B.conj().reshape(n, D * D).T
        resid = float(np.linalg.norm(adj - S @ B.reshape(n, D * D), axis=1).max()) if n else 0.0
        return S, resid

    def hermitian_basis(self) -> np.ndarray:
        """Orthonormal Hermitian matrices spanning the Hermitian part.

        For a *-closed span of complex dimension n the Hermitian part has
        real dimension n; for a non-*-closed span fewer vectors come back.
        """
        cands = []
        for b in self.basis:
            cands.append(0.5 * (b + dagger(b)))
            cands.append(-0.5j * (b - dagger(b)))
        D = self.ambient_dim
        rows = orthonormalize_rows([c.ravel() for c in cands], rtol=self.rtol)
        return hermitize(rows.reshape(-1, D, D))

    def validate(self, rtol: float | None = None) -> dict[str, float]:
        """Residuals of the span invariants, for tests and diagnostics."""
        rtol = self.rtol if rtol is None else rtol
        n, D = self.dim, self.ambient_dim
        flat = self.basis.reshape(n, D * D)
        gram = flat.conj() @ flat.T
        _, mul_resid = self.structure_constants()
        _, adj_resid = self.adjoint_coords()
        out = {
            "gram": float(np.abs(gram - np.eye(n)).max()),
            "product_closure": mul_resid,
            "adjoint_closure": adj_resid,
        }
        if self.has_unit:
            out["unit"] = self.residual(np.eye(D))
        return out


@dataclass(frozen=True)
class WedderburnData:
    """Minimal central projections of a unital *-closed span.

    Block ``k`` is a full matrix algebra of rank ``block_ranks[k]`` acting on
    the range of ``projections[k]`` with ambient multiplicity
    ``multiplicities[k]``; ``trace(z_k) = n_k * m_k`` and the block
    dimensions ``n_k**2`` add up to the span dimension.
    """

    projections: np.ndarray
    block_ranks: tuple[int, ...]
    multiplicities: tuple[int, ...]
    center_dim: int
    eigenvalues: tuple[float, ...] = field(default=(), repr=False)

    @property
    def n_blocks(self) -> int:
        return len(self.block_ranks)

    @property
    def block_dims(self) -> tuple[int, ...]:
        return tuple(n * n for n in self.block_ranks)

    def block_table(self) -> list[tuple[int, int]]:
        return list(zip(self.block_ranks, self.multiplicities))


def span_closure(
    generators,
    include_unit: bool = False,
    ambient_dim: int | None = None,
    rtol: float | None = None,
    max_rounds: int | None = None,
) -> OperatorSpan:
    """Smallest *-closed (optionally unital) span containing the generators.

    The basis lists the orthonormalized generators first, in input order,
    followed by their adjoints, the identity when requested, and then new
    directions from products in a deterministic enumeration order, so the
    result is reproducible for a fixed input order.

    Raises
    ------
    ValueError
        Generators of mismatched dimension, or an empty non-unital span.
    ClosureError
        The span kept growing after ``D*D`` enlargement rounds, which
        signals numerical breakdown rather than a real algebra.
    """
    rtol = DEFAULT_RTOL if rtol is None else rtol
    mats = [as_square(g, name=f"generators[{i}]") for i, g in enumerate(generators)]
    dims = {m.shape[0] for m in mats}
    if len(dims) > 1:
        raise ValueError(f"generators have mixed dimensions {sorted(dims)}")
    if mats:
        D = dims.pop()
        if ambient_dim is not None and ambient_dim != D:
            raise ValueError(f"generators are {D}x{D}, expected ambient_dim={ambient_dim}")
    elif ambient_dim is not None:
        D = ambient_dim
    else:
        raise ValueError("ambient_dim is required when no generators are given")

    seeds = [m.ravel() for m in mats] + [dagger(m).ravel() for m in mats]
    if include_unit:
        seeds.append(np.eye(D, dtype=complex).ravel())
    basis = orthonormalize_rows(seeds, rtol=rtol)
    if basis.shape[0] == 0:
        raise ValueError("empty span: no generators and include_unit=False")

    max_rounds = D * D if max_rounds is None else max_rounds
    for _ in range(max_rounds):
        B = basis.reshape(-1, D, D)
        prods = np.einsum("aij,bjk->abik", B, B).reshape(-1, D * D)
        new = orthonormalize_rows(prods, against=basis, rtol=rtol)
        if new.shape[0] == 0:
            span = OperatorSpan(basis.reshape(-1, D, D), rtol=rtol)
            _, adj_resid = span.adjoint_coords()
            if adj_resid > 1e3 * rtol:
                raise ClosureError(
                    f"closure is not adjoint-stable (residual {adj_resid:.3e})"
                )
            return span
        basis = np.vstack([basis, new])
    raise ClosureError(
        f"span did not stabilize within {max_rounds} enlargement rounds"
    )


def full_matrix_algebra(D: int, rtol: float | None = None) -> OperatorSpan:
    """The full algebra of D x D matrices, basis = matrix units in row order."""
    basis = np.zeros((D * D, D, D), dtype=complex)
    for i in range(D):
        for j in range(D):
            basis[i * D + j, i, j] = 1.0
    return OperatorSpan(basis, rtol=rtol)


def center(span: OperatorSpan, rtol: float | None = None) -> OperatorSpan:
    """Elements of the span commuting with the whole span.

    Solved on coefficient space: the null space of the positive
    semidefinite Gram matrix of the commutator map ``x -> [x, B_a]``.
    """
    rtol = span.rtol if rtol is None else rtol
    B = span.basis
    n, D = span.dim, span.ambient_dim
    left = np.einsum("iuv,avw->iauw", B, B)
    comm = left - np.einsum("auv,ivw->iauw", B, B)
    K = comm.reshape(n, n * D * D)
    M = K.conj() @ K.T
    _, vecs, n_null = eigh_null_split(M, rtol=rtol)
    coeffs = vecs[:, :n_null].T
    mats = np.tensordot(coeffs, B, axes=(1, 0))
    return OperatorSpan(mats.reshape(-1, D, D), rtol=rtol)


def commutant(rep_matrices, rtol: float | None = None) -> OperatorSpan:
    """All matrices commuting with every given matrix.

    Accumulates the normal equations of the commutator map ``X -> [X, R]``
    (a PSD matrix on C^(r*r), assembled from Kronecker products) and takes
    its null space, so the result is exact for the full input set with no
    random choices. Always contains the identity.
    """
    rtol = DEFAULT_RTOL if rtol is None else rtol
    mats = [as_square(m, name=f"rep_matrices[{i}]") for i, m in enumerate(rep_matrices)]
    if not mats:
        raise ValueError("commutant needs at least one matrix")
    r = mats[0].shape[0]
    for m in mats:
        as_square(m, ambient_dim=r, name="rep_matrices")
    eye = np.eye(r)
    M = np.zeros((r * r, r * r), dtype=complex)
    for R in mats:
        Rd = dagger(R)
        M += np.kron(eye, (R @ Rd).conj())
        M += np.kron(Rd @ R, eye)
        M -= np.kron(R, R.conj())
        M -= np.kron(Rd, R.T)
    _, vecs, n_null = eigh_null_split(M, rtol=rtol)
    basis = vecs[:, :n_null].T.reshape(-1, r, r)
    return OperatorSpan(basis, rtol=rtol)


def _check_int(value: float, what: str) -> int:
    rounded = int(round(value))
    if abs(value - rounded) > INTEGER_TOL or rounded <= 0:
        raise DecompositionError(f"{what} = {value!r} is not a positive integer")
    return rounded


def minimal_projections(
    commutative: OperatorSpan,
    rng: np.random.Generator,
    cluster_tol: float | None = None,
    max_draws: int = MAX_DRAWS,
) -> list[tuple[np.ndarray, float]]:
    """Minimal projections of a commutative unital *-closed span.

    Draws a random real combination of a Hermitian basis, normalizes it to
    unit HS norm, and groups its eigenvalues; a draw is accepted once the
    number of clusters equals the span dimension. Returns ``(projection,
    cluster eigenvalue)`` pairs.
    """
    cluster_tol = CLUSTER_TOL if cluster_tol is None else cluster_tol
    herm = commutative.hermitian_basis()
    want = commutative.dim
    for _ in range(max_draws):
        coeffs = rng.standard_normal(len(herm))
        H = np.tensordot(coeffs, herm, axes=(0, 0))
        nrm = hs_norm(H)
        if nrm == 0.0:
            continue
        H = H / nrm
        vals, vecs = np.linalg.eigh(H)
        clusters = eig_clusters(vals, cluster_tol)
        if len(clusters) != want:
            continue
        out = []
        for cl in clusters:
            V = vecs[:, cl]
            out.append((V @ dagger(V), float(vals[cl].mean())))
        return out
    raise DecompositionError(
        f"no random central element separated {want} blocks in {max_draws} draws"
    )


def wedderburn(
    span: OperatorSpan,
    seed: int = 0,
    rtol: float | None = None,
    cluster_tol: float | None = None,
) -> WedderburnData:
    """Block decomposition of a unital *-closed span into matrix algebras.

    The minimal central projections come from :func:`minimal_projections`
    applied to :func:`center`; each block rank is read off as the square
    root of the corner span dimension and the ambient multiplicity as
    ``trace(z_k) / n_k``, both checked to be integers. Blocks are sorted by
    descending rank, then multiplicity, then cluster eigenvalue, so the
    output is deterministic for a fixed seed and seed-independent as a
    multiset.
    """
    rtol = span.rtol if rtol is None else rtol
    if not span.has_unit:
        raise ValueError("wedderburn requires a unital span")
    _, adj_resid = span.adjoint_coords()
    if adj_resid > 1e3 * rtol:
        raise ClosureError(
            f"wedderburn requires a *-closed span (adjoint residual {adj_resid:.3e})"
        )
    Z = center(span, rtol=rtol)
    rng = np.random.default_rng(seed)
    projs = minimal_projections(Z, rng, cluster_tol=cluster_tol)
    B = span.basis
    n_dim, D = span.dim, span.ambient_dim
    blocks = []
    for z, lam in projs:
        corner = np.einsum("ij,ajk,kl->ail", z, B, z).reshape(n_dim, D * D)
        block_dim = matrix_rank(corner, rtol=rtol)
        n_k = _check_int(np.sqrt(block_dim), "sqrt(block dimension)")
        m_k = _check_int(float(np.trace(z).real) / n_k, "block multiplicity")
        blocks.append((n_k, m_k, lam, z))
    blocks.sort(key=lambda b: (-b[0], -b[1], b[2]))
    data = WedderburnData(
        projections=np.array([b[3] for b in blocks]),
        block_ranks=tuple(b[0] for b in blocks),
        multiplicities=tuple(b[1] for b in blocks),
        center_dim=Z.dim,
        eigenvalues=tuple(b[2] for b in blocks),
    )
    if span.has_unit and sum(data.block_dims) != span.dim:
        raise DecompositionError(
            f"block dimensions {data.block_dims} do not add up to span dim {span.dim}"
        )
    return data
