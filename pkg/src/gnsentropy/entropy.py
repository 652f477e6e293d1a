"""Entropy of restricted states, plus the independent block-trace oracle.

Two routes lead to the spectrum of a state restricted to a subalgebra:

* the GNS route (quotient space, isotypic decomposition, refined weights),
* the block route: solve for the Hermitian density element ``Drho`` inside
  the span satisfying ``Tr_W(Drho B_a) = omega(B_a)``, where ``Tr_W``
  counts each irreducible block once with ambient multiplicities divided
  out, and read the spectrum off the blocks.

``restriction_entropy`` runs either or both and, when both, enforces that
the two spectra agree as multisets.

The block trace is the right normalization: with ambient multiplicities
m > 1 the naive ambient trace would inflate every block eigenvalue by m
and shift the entropy by ``sum_k lambda_k log m_k``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DecompositionError, OracleMismatchError, StateError
from .gns import AlgebraState, GnsSpace, IsotypicDecomposition, build_gns, gns_density, isotypic_decompose
from .linalg import DEFAULT_RTOL, ORACLE_TOL, dagger, hermitize, hs_norm
from .star_algebra import OperatorSpan, WedderburnData, wedderburn

LN2 = float(np.log(2.0))

#: A state counts as pure when its restriction entropy falls below this.
PURITY_TOL = 1e-9


@dataclass(frozen=True)
class SpectralState:
    """A spectrum of positive weights summing to one, with a log convention."""

    weights: np.ndarray
    log_base: str = "e"

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if w.size and w.min() <= 0.0:
            raise ValueError(f"spectral weights must be positive, got min {w.min()!r}")
        if abs(w.sum() - 1.0) > 1e-8:
            raise ValueError(f"spectral weights sum to {w.sum()!r}, not 1")
        if self.log_base not in ("e", "2"):
            raise ValueError(f"log_base must be 'e' or '2', got {self.log_base!r}")


def von_neumann_entropy(spectrum, base: str | None = None) -> float:
    """Entropy ``-sum(w log w)`` with the ``0 log 0 = 0`` convention.

    Accepts a :class:`SpectralState` (whose ``log_base`` applies unless
    ``base`` overrides it) or any array of nonnegative weights.
    """
    if isinstance(spectrum, SpectralState):
        w = spectrum.weights
        base = spectrum.log_base if base is None else base
    else:
        w = np.asarray(spectrum, dtype=float)
        base = "e" if base is None else base
    base = str(base)
    w = w[w > 0.0]
    s = float(-(w * np.log(w)).sum()) if w.size else 0.0
    if s <= 0.0:
        s = 0.0
    return s / LN2 if base == "2" else s


def partial_trace(state, dims: tuple[int, int], keep: str = "A") -> np.ndarray:
    """Reduced density matrix of one tensor factor.

    ``state`` is a vector of length dA*dB or a density matrix on the
    product space; ``keep`` selects which factor survives.
    """
    dA, dB = dims
    if keep not in ("A", "B"):
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        if arr.size != dA * dB:
            raise ValueError(f"vector of length {arr.size} does not factor as {dA}x{dB}")
        M = arr.reshape(dA, dB)
        if keep == "A":
            return M @ dagger(M)
        return M.T @ M.conj()
    if arr.shape != (dA * dB, dA * dB):
        raise ValueError(
            f"density matrix of shape {arr.shape} does not factor as {dA}x{dB}"
        )
    rho = arr.reshape(dA, dB, dA, dB)
    if keep == "A":
        return np.einsum("abcb->ac", rho)
    return np.einsum("abad->bd", rho)


@dataclass(frozen=True)
class DensityElement:
    """The Hermitian element of the span representing a restricted state.

    ``block_spectra[k]`` lists the eigenvalues of the element on block k,
    each ambient eigenvalue family divided down by the block multiplicity,
    so the concatenation is the spectrum of the abstract restricted state.
    """

    matrix: np.ndarray
    block_spectra: tuple[np.ndarray, ...]
    blocks: WedderburnData

    def spectrum(self, tol: float = DEFAULT_RTOL) -> np.ndarray:
        """All block eigenvalues above ``tol``, descending."""
        if not self.block_spectra:
            return np.zeros(0)
        w = np.concatenate(self.block_spectra)
        return np.sort(w[w > tol])[::-1]


def _block_range(z: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(hermitize(z))
    return vecs[:, vals > 0.5]


def density_element(
    span: OperatorSpan,
    blocks: WedderburnData,
    state: AlgebraState,
    rtol: float | None = None,
) -> DensityElement:
    """Solve ``Tr_W(Drho B_a) = omega(B_a)`` for ``Drho`` in the span.

    ``Tr_W(X) = sum_k trace(z_k X) / m_k`` is faithful on the span, so the
    linear system has a unique solution; Hermiticity follows and is
    checked. Block spectra are read off the compression of ``Drho`` to
    each projection range: eigenvalues come in groups of size m_k, and one
    representative per group is kept.
    """
    rtol = span.rtol if rtol is None else rtol
    B = span.basis
    n = span.dim
    omega_weights = sum(
        z / m for z, m in zip(blocks.projections, blocks.multiplicities)
    )
    T = np.einsum("ij,cjk,aki->ac", omega_weights, B, B, optimize=True)
    y = state.values(B)
    try:
        coeffs = np.linalg.solve(T, y)
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(
            "block-trace moment system is singular; Wedderburn data does not "
            "match the span"
        ) from exc
    D_mat = np.tensordot(coeffs, B, axes=(0, 0))
    scale = max(hs_norm(D_mat), 1.0)
    if hs_norm(D_mat - dagger(D_mat)) > 1e-8 * scale:
        raise StateError("density element came out non-Hermitian; state is not real-valued on the span")
    D_mat = hermitize(D_mat)

    spectra = []
    for z, n_k, m_k in zip(blocks.projections, blocks.block_ranks, blocks.multiplicities):
        V = _block_range(z)
        comp = hermitize(dagger(V) @ D_mat @ V)
        vals = np.linalg.eigvalsh(comp)
        if vals.size != n_k * m_k:
            raise DecompositionError(
                f"block range has dimension {vals.size}, expected {n_k * m_k}"
            )
        groups = vals.reshape(n_k, m_k)
        spread = float((groups.max(axis=1) - groups.min(axis=1)).max()) if m_k > 1 else 0.0
        if spread > 1e-8 * max(1.0, float(np.abs(vals).max())):
            raise DecompositionError(
                f"block eigenvalues do not come in multiplicity-{m_k} groups "
                f"(spread {spread:.3e})"
            )
        block_vals = groups.mean(axis=1)
        if block_vals.size and float(block_vals.min()) < -1e-9:
            raise StateError(
                f"restricted state has negative block eigenvalue {block_vals.min()!r}"
            )
        spectra.append(np.clip(block_vals, 0.0, None))
    return DensityElement(matrix=D_mat, block_spectra=tuple(spectra), blocks=blocks)


@dataclass(frozen=True)
class RestrictionReport:
    """Everything one run of the restriction pipeline produced.

    ``spectrum`` (and the entropies) come from the GNS route when it ran,
    otherwise from the block route. ``methods_agree`` is set only when both
    ran; disagreement raises :class:`OracleMismatchError` instead of
    producing a report.
    """

    method: str
    entropy_nats: float
    entropy_bits: float
    spectrum: np.ndarray
    pure: bool
    gns_dim: int | None = None
    null_dim: int | None = None
    commutant_dim: int | None = None
    components: tuple | None = None
    blocks: tuple | None = None
    entropy_nats_gns: float | None = None
    entropy_nats_blocks: float | None = None
    methods_agree: bool | None = None
    seed: int = 0
    gns: GnsSpace | None = None
    isotypic: IsotypicDecomposition | None = None
    density: DensityElement | None = None


def spectra_agree(a: np.ndarray, b: np.ndarray, tol: float = ORACLE_TOL) -> bool:
    """Multiset comparison of two spectra, padding the shorter with zeros."""
    a = np.sort(np.asarray(a, dtype=float))[::-1]
    b = np.sort(np.asarray(b, dtype=float))[::-1]
    size = max(a.size, b.size)
    a = np.pad(a, (0, size - a.size))
    b = np.pad(b, (0, size - b.size))
    return bool(size == 0 or np.abs(a - b).max() <= tol)


def restriction_entropy(
    span: OperatorSpan,
    state: AlgebraState,
    method: str = "both",
    seed: int = 0,
    rtol: float | None = None,
    oracle_tol: float = ORACLE_TOL,
    blocks: WedderburnData | None = None,
) -> RestrictionReport:
    """Entropy of a state restricted to a unital subalgebra span.

    Parameters
    ----------
    method : {"gns", "wedderburn", "both"}
        Which route(s) to run. With ``"both"`` the two spectra must agree
        as multisets within ``oracle_tol`` or :class:`OracleMismatchError`
        is raised.
    blocks : WedderburnData, optional
        Precomputed block decomposition of ``span`` (it does not depend on
        the state, so sweeps should share one).
    """
    if method not in ("gns", "wedderburn", "both"):
        raise ValueError(f"unknown method {method!r}")
    rtol = span.rtol if rtol is None else rtol

    gns_space = iso = None
    spectrum_gns = None
    if method in ("gns", "both"):
        gns_space = build_gns(span, state, rtol=rtol)
        iso = isotypic_decompose(gns_space, seed=seed, rtol=rtol)
        spectrum_gns = gns_density(iso).weights

    dens = None
    spectrum_blocks = None
    if method in ("wedderburn", "both"):
        if blocks is None:
            blocks = wedderburn(span, seed=seed, rtol=rtol)
        dens = density_element(span, blocks, state, rtol=rtol)
        spectrum_blocks = dens.spectrum()

    agree = None
    if method == "both":
        agree = spectra_agree(spectrum_gns, spectrum_blocks, tol=oracle_tol)
        if not agree:
            raise OracleMismatchError(
                "GNS and block spectra disagree: "
                f"{spectrum_gns!r} vs {spectrum_blocks!r}"
            )

    spectrum = spectrum_gns if spectrum_gns is not None else spectrum_blocks
    s_nats = von_neumann_entropy(spectrum)
    report = RestrictionReport(
        method=method,
        entropy_nats=s_nats,
        entropy_bits=s_nats / LN2,
        spectrum=spectrum,
        pure=bool(s_nats < PURITY_TOL),
        gns_dim=gns_space.gns_dim if gns_space is not None else None,
        null_dim=gns_space.null_dim if gns_space is not None else None,
        commutant_dim=iso.commutant_dim if iso is not None else None,
        components=tuple(
            (c.irrep_dim, c.multiplicity, c.weight) for c in iso.components
        ) if iso is not None else None,
        blocks=tuple(
            (n, m, tuple(spec))
            for n, m, spec in zip(
                dens.blocks.block_ranks, dens.blocks.multiplicities, dens.block_spectra
            )
        ) if dens is not None else None,
        entropy_nats_gns=von_neumann_entropy(spectrum_gns) if spectrum_gns is not None else None,
        entropy_nats_blocks=von_neumann_entropy(spectrum_blocks) if spectrum_blocks is not None else None,
        methods_agree=agree,
        seed=seed,
        gns=gns_space,
        isotypic=iso,
        density=dens,
    )
    return report
