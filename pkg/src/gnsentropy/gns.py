"""GNS construction for a state on an operator span.

Given a unital span ``A0`` and a state ``omega`` on the ambient space, the
pipeline is: the Gram matrix ``G[a,b] = omega(B_a^dag B_b)``, its null
space (the left ideal quotiented away), an orthonormal quotient basis from
the retained Gram eigenvectors, the left-multiplication representation
projected onto the quotient, and the class of the unit as cyclic vector.
Matrix elements of the representation against the cyclic vector recover
the state.

The quotient representation is then split into isotypic components. The
component projections are the minimal projections of the center of the
commutant of the representation. Inside a component of multiplicity m the
state weight spreads over m Schmidt directions; the canonical refined
weights are the eigenvalues of the overlap matrix ``W[i,j] =
<cyclic| E_ij |cyclic>`` built from matrix units ``E_ij`` of the
commutant block, which makes the weight multiset independent of how the
component is carved into irreducible summands.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ClosureError, DecompositionError, StateError
from .linalg import (
    CLUSTER_TOL,
    DEFAULT_RTOL,
    NULL_FLOOR,
    dagger,
    eig_clusters,
    hermitize,
    hs_norm,
    orthonormalize_rows,
)
from .star_algebra import MAX_DRAWS, OperatorSpan, center, commutant, minimal_projections


class AlgebraState:
    """A normalized positive linear functional on D x D matrices.

    Backed either by a unit vector (``omega(X) = <psi|X|psi>``) or by a
    density matrix (``omega(X) = trace(rho X)``). Construction validates
    normalization, Hermiticity and positivity; pass ``normalize=True`` to
    rescale an almost-normalized input instead of rejecting it.
    """

    def __init__(self, vector=None, density=None, normalize: bool = False,
                 rtol: float | None = None):
        if (vector is None) == (density is None):
            raise StateError("provide exactly one of vector= or density=")
        self.rtol = DEFAULT_RTOL if rtol is None else rtol
        if vector is not None:
            psi = np.asarray(vector, dtype=complex).ravel()
            if not np.isfinite(psi).all():
                raise StateError("state vector has non-finite entries")
            nrm = np.linalg.norm(psi)
            if nrm == 0.0:
                raise StateError("state vector is zero")
            if abs(nrm - 1.0) > 1e-9 and not normalize:
                raise StateError(f"state vector has norm {nrm!r}, not 1")
            self.vector = psi / nrm
            self.density = None
        else:
            rho = np.asarray(density, dtype=complex)
            if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
                raise StateError(f"density matrix must be square, got {rho.shape}")
            if not np.isfinite(rho).all():
                raise StateError("density matrix has non-finite entries")
            scale = max(hs_norm(rho), 1.0)
            if hs_norm(rho - dagger(rho)) > 1e-9 * scale:
                raise StateError("density matrix is not Hermitian")
            rho = hermitize(rho)
            tr = float(np.trace(rho).real)
            if abs(tr - 1.0) > 1e-9 and not normalize:
                raise StateError(f"density matrix has trace {tr!r}, not 1")
            if tr <= 0.0:
                raise StateError("density matrix has non-positive trace")
            self.vector = None
            self.density = rho / tr

    @classmethod
    def from_vector(cls, psi, **kw) -> "AlgebraState":
        return cls(vector=psi, **kw)

    @classmethod
    def from_density(cls, rho, **kw) -> "AlgebraState":
        return cls(density=rho, **kw)

    @property
    def is_vector(self) -> bool:
        return self.vector is not None

    @property
    def dim(self) -> int:
        return len(self.vector) if self.is_vector else self.density.shape[0]

    @cached_property
    def factor(self) -> np.ndarray:
        """Low-rank factor L with backing = L L^dag (a column for vectors)."""
        if self.is_vector:
            return self.vector.reshape(-1, 1)
        vals, vecs = np.linalg.eigh(self.density)
        floor = -1e-9 * max(float(vals[-1]), 0.0)
        if float(vals[0]) < floor:
            raise StateError(f"density matrix has negative eigenvalue {vals[0]!r}")
        keep = vals > max(self.rtol * max(float(vals[-1]), 0.0), NULL_FLOOR)
        return vecs[:, keep] * np.sqrt(vals[keep])

    def value(self, X: np.ndarray) -> complex:
        """Evaluate the functional on one matrix."""
        X = np.asarray(X, dtype=complex)
        if self.is_vector:
            return complex(np.vdot(self.vector, X @ self.vector))
        return complex(np.trace(self.density @ X))

    def values(self, mats: np.ndarray) -> np.ndarray:
        """Evaluate on a stack of matrices, shape (n, D, D) -> (n,)."""
        mats = np.asarray(mats, dtype=complex)
        if self.is_vector:
            v = mats @ self.vector
            return v @ self.vector.conj()
        return np.einsum("ij,aji->a", self.density, mats)

    def gram(self, mats: np.ndarray) -> np.ndarray:
        """Gram matrix ``G[a,b] = omega(M_a^dag M_b)`` over a matrix stack.

        Assembled as an explicit Gramian of the vectors ``M_a L``, so the
        result is Hermitian positive semidefinite by construction.
        """
        mats = np.asarray(mats, dtype=complex)
        L = self.factor
        V = (mats @ L).reshape(mats.shape[0], -1)
        return V.conj() @ V.T


def gram_matrix(algebra, state: AlgebraState, validate: bool = True) -> np.ndarray:
    """Gram matrix of a span's basis (or of an explicit matrix list) under a state."""
    mats = algebra.basis if isinstance(algebra, OperatorSpan) else np.asarray(algebra, dtype=complex)
    if mats.ndim != 3:
        raise ValueError(f"expected a stack of matrices, got shape {mats.shape}")
    if mats.shape[1] != state.dim:
        raise ValueError(
            f"algebra acts on dimension {mats.shape[1]}, state lives on {state.dim}"
        )
    G = state.gram(mats)
    if validate and G.size:
        vals = np.linalg.eigvalsh(hermitize(G))
        if float(vals[0]) < -1e-9 * max(float(vals[-1]), 1.0):
            raise StateError(f"Gram matrix not PSD: min eigenvalue {vals[0]!r}")
    return G


@dataclass(frozen=True)
class GnsSpace:
    """Quotient Hilbert-space data for one (span, state) pair.

    ``quotient_coords`` holds the retained Gram eigenvectors scaled to unit
    quotient norm, as columns of coefficients in the algebra basis;
    ``null_coords`` the discarded directions. ``rep_matrices[a]`` is the
    action of basis element ``a`` on the quotient, and ``cyclic_vector``
    the class of the ambient identity.
    """

    span: OperatorSpan
    state: AlgebraState
    gram: np.ndarray
    null_coords: np.ndarray
    quotient_coords: np.ndarray
    rep_matrices: np.ndarray
    cyclic_vector: np.ndarray
    rtol: float

    @property
    def gns_dim(self) -> int:
        return self.quotient_coords.shape[1]

    @property
    def null_dim(self) -> int:
        return self.null_coords.shape[1]

    def quotient_norm(self, algebra_coords: np.ndarray) -> float:
        """Norm of the class of an algebra element given by coefficients."""
        v = np.asarray(algebra_coords, dtype=complex)
        return float(np.sqrt(max(np.vdot(v, self.gram @ v).real, 0.0)))

    def state_values(self) -> np.ndarray:
        """Matrix elements ``<cyclic| pi(B_a) |cyclic>``, which recover the state."""
        c = self.cyclic_vector
        return np.einsum("i,aij,j->a", c.conj(), self.rep_matrices, c)


def build_gns(span: OperatorSpan, state: AlgebraState, rtol: float | None = None) -> GnsSpace:
    """Run the GNS construction for a state restricted to a unital span.

    The null space is spanned by Gram eigenvectors at or below the relative
    cut; the remaining eigenvectors, scaled by inverse root eigenvalue,
    form an orthonormal quotient basis. Representation matrices come from
    the span's structure constants compressed to the quotient.
    """
    rtol = span.rtol if rtol is None else rtol
    if not span.has_unit:
        raise ValueError("GNS construction requires a unital span")
    G = gram_matrix(span, state, validate=False)
    vals, vecs = np.linalg.eigh(hermitize(G))
    top = max(float(vals[-1]), 0.0)
    if float(vals[0]) < -1e-9 * max(top, 1.0):
        raise StateError(f"Gram matrix not PSD: min eigenvalue {vals[0]!r}")
    cut = max(rtol * top, NULL_FLOOR)
    null_mask = vals <= cut
    null_coords = vecs[:, null_mask]
    kept = vecs[:, ~null_mask]
    kept_vals = vals[~null_mask]
    Q = kept / np.sqrt(kept_vals)

    coeff, resid = span.structure_constants()
    if resid > 1e3 * rtol:
        raise ClosureError(
            f"span is not multiplicatively closed (residual {resid:.3e}); "
            "GNS needs an algebra"
        )
    # left multiplication by B_a on coefficient space: (L_a)[c, b] = coeff[a, b, c]
    L = coeff.transpose(0, 2, 1)
    rep = np.einsum("ir,ij,ajk,ks->ars", Q.conj(), G, L, Q, optimize=True)
    cyclic = Q.conj().T @ (G @ span.unit_coords)
    return GnsSpace(
        span=span,
        state=state,
        gram=G,
        null_coords=null_coords,
        quotient_coords=Q,
        rep_matrices=rep,
        cyclic_vector=cyclic,
        rtol=rtol,
    )


@dataclass(frozen=True)
class IsotypicComponent:
    """One isotypic block of the quotient representation."""

    projection: np.ndarray
    irrep_dim: int
    multiplicity: int
    weight: float
    refined_weights: np.ndarray

    @property
    def dim(self) -> int:
        return self.irrep_dim * self.multiplicity


@dataclass(frozen=True)
class IsotypicDecomposition:
    """Isotypic components of a GNS representation plus the state weights.

    ``components[k].weight`` is the squared norm of the cyclic vector's
    component; the refined weights per component sum to it and flatten to
    the spectrum of the restricted state.
    """

    components: tuple[IsotypicComponent, ...]
    commutant_dim: int
    seed: int

    @property
    def weights(self) -> np.ndarray:
        return np.array([c.weight for c in self.components])

    def flattened_weights(self) -> np.ndarray:
        if not self.components:
            return np.zeros(0)
        return np.concatenate([c.refined_weights for c in self.components])


def _corner_span(P: np.ndarray, span: OperatorSpan, rtol: float) -> np.ndarray:
    """Orthonormal basis of ``P span P`` as a matrix stack."""
    corner = np.einsum("ij,ajk,kl->ail", P, span.basis, P)
    rows = orthonormalize_rows(corner.reshape(corner.shape[0], -1), rtol=rtol)
    return rows.reshape(-1, P.shape[0], P.shape[0])


def _range_basis(P: np.ndarray) -> np.ndarray:
    """Orthonormal columns spanning the range of a Hermitian projection."""
    vals, vecs = np.linalg.eigh(hermitize(P))
    return vecs[:, vals > 0.5]


def _refined_weights(
    P: np.ndarray,
    corner: np.ndarray,
    cyclic: np.ndarray,
    n_k: int,
    m_k: int,
    rng: np.random.Generator,
    rtol: float,
    cluster_tol: float,
) -> np.ndarray:
    """Schmidt weights of the cyclic vector inside one isotypic component.

    Builds matrix units of the commutant corner: eigenprojections of a
    random Hermitian corner element give the diagonal units; polar parts of
    projected random elements give the partial isometries connecting them.
    The eigenvalues of the resulting overlap matrix are the weights.
    """
    V = _range_basis(P)
    herm = []
    for b in corner:
        herm.append(0.5 * (b + dagger(b)))
        herm.append(-0.5j * (b - dagger(b)))
    herm = orthonormalize_rows([h.ravel() for h in herm], rtol=rtol)
    herm = hermitize(herm.reshape(-1, P.shape[0], P.shape[0]))

    for _ in range(MAX_DRAWS):
        h = np.tensordot(rng.standard_normal(len(herm)), herm, axes=(0, 0))
        nrm = hs_norm(h)
        if nrm == 0.0:
            continue
        h = h / nrm
        hc = dagger(V) @ h @ V
        vals, vecs = np.linalg.eigh(hermitize(hc))
        clusters = eig_clusters(vals, cluster_tol)
        if len(clusters) != m_k or any(
            cl.stop - cl.start != n_k for cl in clusters
        ):
            continue
        projs = []
        for cl in clusters:
            W = V @ vecs[:, cl]
            projs.append(W @ dagger(W))
        g_coeff = rng.standard_normal(len(corner)) + 1j * rng.standard_normal(len(corner))
        g = np.tensordot(g_coeff, corner, axes=(0, 0))
        vectors = [projs[0] @ cyclic]
        ok = True
        for Qi in projs[1:]:
            X = Qi @ g @ projs[0]
            U, s, Vh = np.linalg.svd(X)
            if s[0] == 0.0 or np.count_nonzero(s > rtol * s[0]) != n_k:
                ok = False
                break
            E = U[:, :n_k] @ Vh[:n_k, :]
            vectors.append(dagger(E) @ cyclic)
        if not ok:
            continue
        U_mat = np.array(vectors)
        W = U_mat.conj() @ U_mat.T
        weights = np.linalg.eigvalsh(hermitize(W))
        return np.clip(weights[::-1], 0.0, None)
    raise DecompositionError(
        f"failed to split a multiplicity-{m_k} component in {MAX_DRAWS} draws"
    )


def isotypic_decompose(
    space: GnsSpace,
    seed: int = 0,
    rtol: float | None = None,
    cluster_tol: float | None = None,
) -> IsotypicDecomposition:
    """Split a GNS representation into isotypic components with weights.

    The component projections are the minimal projections of the center of
    the representation's commutant (equivalently, the minimal central
    projections of the algebra generated by the representation together
    with its commutant). Components come back sorted by descending irrep
    dimension, then multiplicity.
    """
    rtol = space.rtol if rtol is None else rtol
    cluster_tol = CLUSTER_TOL if cluster_tol is None else cluster_tol
    reps = space.rep_matrices
    if space.gns_dim == 0:
        raise ValueError("GNS space is zero-dimensional")
    C = commutant(list(reps), rtol=rtol)
    Z = center(C, rtol=rtol)
    rng = np.random.default_rng(seed)
    projs = minimal_projections(Z, rng, cluster_tol=cluster_tol)
    cyclic = space.cyclic_vector
    components = []
    for P, lam in projs:
        t = int(round(float(np.trace(P).real)))
        corner = _corner_span(P, C, rtol)
        m_sq = corner.shape[0]
        m_k = int(round(np.sqrt(m_sq)))
        if m_k * m_k != m_sq:
            raise DecompositionError(
                f"commutant corner dimension {m_sq} is not a perfect square"
            )
        if t % m_k != 0:
            raise DecompositionError(
                f"component dimension {t} not divisible by multiplicity {m_k}"
            )
        n_k = t // m_k
        w_k = float(np.vdot(cyclic, P @ cyclic).real)
        if m_k == 1:
            refined = np.array([w_k])
        else:
            refined = _refined_weights(
                P, corner, cyclic, n_k, m_k, rng, rtol, cluster_tol
            )
            if abs(refined.sum() - w_k) > 1e-8 * max(w_k, 1.0):
                raise DecompositionError(
                    f"refined weights sum to {refined.sum()!r}, expected {w_k!r}"
                )
        components.append(
            IsotypicComponent(
                projection=P,
                irrep_dim=n_k,
                multiplicity=m_k,
                weight=w_k,
                refined_weights=refined,
            )
        )
    components.sort(key=lambda c: (-c.irrep_dim, -c.multiplicity, -c.weight))
    total = sum(c.weight for c in components)
    if abs(total - 1.0) > 1e-8:
        raise DecompositionError(f"component weights sum to {total!r}, not 1")
    return IsotypicDecomposition(
        components=tuple(components), commutant_dim=C.dim, seed=seed
    )


def gns_density(iso: IsotypicDecomposition, tol: float = DEFAULT_RTOL):
    """Spectrum of the restricted state: all refined weights above ``tol``.

    Zero-weight entries are kept in the decomposition report but dropped
    here; what remains sums to 1 within tolerance.
    """
    from .entropy import SpectralState

    w = iso.flattened_weights()
    w = np.sort(w[w > tol])[::-1]
    return SpectralState(weights=w)
