import numpy as np
import pytest

from gnsentropy import (
    AlgebraState,
    OperatorSpan,
    SpectralState,
    density_element,
    f_basis_embedding,
    full_matrix_algebra,
    partial_trace,
    restriction_entropy,
    spectra_agree,
    von_neumann_entropy,
    wedderburn,
)
from gnsentropy.entropy import LN2

import bruteforce as bf


def unit(d, i, j):
    m = np.zeros((d, d), dtype=complex)
    m[i, j] = 1.0
    return m


# ---------------------------------------------------------------------------
# entropy of spectra


def test_half_half_gives_log_two():
    assert abs(von_neumann_entropy([0.5, 0.5]) - LN2) < 1e-12


def test_singleton_spectrum_has_zero_entropy():
    assert von_neumann_entropy([1.0]) == 0.0


def test_two_level_entropy_at_thirty_degrees():
    theta = np.pi / 6
    got = von_neumann_entropy([np.cos(theta) ** 2, np.sin(theta) ** 2])
    assert abs(got - 0.5623351446188083) < 1e-9


def test_zero_weights_are_dropped():
    assert abs(von_neumann_entropy([0.5, 0.0, 0.5, 0.0]) - LN2) < 1e-12


def test_base_two_conversion():
    assert abs(von_neumann_entropy([0.5, 0.5], base="2") - 1.0) < 1e-12
    s = SpectralState(weights=np.array([0.25, 0.75]), log_base="2")
    assert abs(von_neumann_entropy(s) - von_neumann_entropy([0.25, 0.75]) / LN2) < 1e-12


def test_spectral_state_validation():
    with pytest.raises(ValueError):
        SpectralState(weights=np.array([0.5, -0.5]))
    with pytest.raises(ValueError):
        SpectralState(weights=np.array([0.5, 0.4]))


# ---------------------------------------------------------------------------
# partial trace


def test_singlet_partial_trace_is_maximally_mixed():
    psi = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
    rho = partial_trace(psi, (2, 2), keep="A")
    assert np.abs(rho - np.eye(2) / 2).max() < 1e-12
    assert abs(von_neumann_entropy(np.linalg.eigvalsh(rho)) - LN2) < 1e-12


def test_product_state_partial_trace_is_pure():
    u = np.array([1, 2j, 0.5]) / np.linalg.norm([1, 2j, 0.5])
    v = np.array([0.3, 1.0]) / np.linalg.norm([0.3, 1.0])
    rho = partial_trace(np.kron(u, v), (3, 2), keep="A")
    assert np.abs(rho - np.outer(u, u.conj())).max() < 1e-12


@pytest.mark.parametrize("seed", range(4))
def test_partial_trace_consistency(seed):
    rng = np.random.default_rng(seed)
    dA, dB = int(rng.integers(2, 5)), int(rng.integers(2, 5))
    psi = rng.standard_normal(dA * dB) + 1j * rng.standard_normal(dA * dB)
    psi /= np.linalg.norm(psi)
    rho_a = partial_trace(psi, (dA, dB), keep="A")
    rho_b = partial_trace(psi, (dA, dB), keep="B")
    for rho in (rho_a, rho_b):
        assert abs(np.trace(rho).real - 1.0) < 1e-12
        assert np.linalg.eigvalsh(rho).min() > -1e-12
    # both sides of a pure state share their nonzero spectrum
    sa = von_neumann_entropy(np.linalg.eigvalsh(rho_a))
    sb = von_neumann_entropy(np.linalg.eigvalsh(rho_b))
    assert abs(sa - sb) < 1e-10
    # the density-matrix input path agrees with the vector path
    rho_full = np.outer(psi, psi.conj())
    assert np.abs(partial_trace(rho_full, (dA, dB), keep="A") - rho_a).max() < 1e-12


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ValueError):
        partial_trace(np.zeros(5), (2, 2))
    with pytest.raises(ValueError):
        partial_trace(np.zeros(4), (2, 2), keep="C")


def test_slater_basis_states_have_one_bit_of_tensor_entropy():
    embed = f_basis_embedding()
    rng = np.random.default_rng(9)
    psi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    psi /= np.linalg.norm(psi)
    rho = partial_trace(embed @ psi, (3, 3), keep="A")
    s = von_neumann_entropy(np.linalg.eigvalsh(rho))
    assert abs(s - LN2) < 1e-9
    assert abs(von_neumann_entropy(np.linalg.eigvalsh(rho), base="2") - 1.0) < 1e-9


# ---------------------------------------------------------------------------
# density element (block route)


@pytest.mark.parametrize("lam", [0.15, 0.5, 0.8])
def test_qubit_family_block_spectrum(presets, preset_blocks, lam):
    span, family = presets["ex1_m2"]
    dens = density_element(span, preset_blocks["ex1_m2"], family.state(**{"lambda": lam}))
    assert spectra_agree(dens.spectrum(), sorted([lam, 1 - lam], reverse=True))


@pytest.mark.parametrize("theta", [0.3, 1.1])
def test_pair_subalgebra_block_spectra(presets, preset_blocks, theta):
    span, family = presets["ex3_choice2"]
    dens = density_element(span, preset_blocks["ex3_choice2"], family.state(theta=theta))
    by_rank = {
        n: np.sort(spec)
        for n, spec in zip(dens.blocks.block_ranks, dens.block_spectra)
    }
    assert np.abs(by_rank[2] - np.sort([0.0, np.cos(theta) ** 2])).max() < 1e-9
    assert np.abs(by_rank[1] - [np.sin(theta) ** 2]).max() < 1e-9


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tracial_state_has_uniform_block_spectrum(n):
    span = full_matrix_algebra(n)
    blocks = wedderburn(span, seed=0)
    state = AlgebraState(density=np.eye(n, dtype=complex) / n)
    dens = density_element(span, blocks, state)
    assert np.abs(dens.spectrum() - 1.0 / n).max() < 1e-12


def test_block_trace_moments_reproduce_the_state(preset_cases, preset_blocks):
    for name, span, state in preset_cases:
        blocks = preset_blocks[name]
        dens = density_element(span, blocks, state)
        weights = sum(
            z / m for z, m in zip(blocks.projections, blocks.multiplicities)
        )
        got = np.einsum("ij,jk,aki->a", weights, dens.matrix, span.basis,
                        optimize=True)
        want = state.values(span.basis)
        assert np.abs(got - want).max() < 1e-9


def test_density_element_lies_in_the_span(preset_cases, preset_blocks):
    for name, span, state in preset_cases:
        dens = density_element(span, preset_blocks[name], state)
        assert span.residual(dens.matrix) < 1e-9
        assert np.abs(dens.matrix - dens.matrix.conj().T).max() < 1e-9


# ---------------------------------------------------------------------------
# the full restriction pipeline


def test_singlet_restriction_report(presets):
    span, family = presets["ex2_bell"]
    rep = restriction_entropy(span, family.state())
    assert abs(rep.entropy_nats - LN2) < 1e-9
    assert abs(rep.entropy_bits - 1.0) < 1e-9
    assert rep.gns_dim == 4 and rep.null_dim == 0
    assert rep.methods_agree
    assert not rep.pure


def test_full_algebra_restriction_is_pure(presets):
    span, family = presets["ex3_choice1"]
    rng = np.random.default_rng(21)
    for _ in range(5):
        psi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        rep = restriction_entropy(span, AlgebraState(vector=psi, normalize=True))
        assert rep.entropy_nats < 1e-9
        assert rep.pure


def test_boson_restriction_matches_closed_form(presets):
    span, family = presets["ex5_bosons"]
    theta, phi = 1.1, 0.4
    rep = restriction_entropy(span, family.state(theta=theta, phi=phi))
    assert abs(rep.entropy_nats - bf.entropy_of(bf.boson_weights(theta, phi))) < 1e-9
    assert rep.gns_dim == 6
    assert [(n, m) for n, m, _ in rep.blocks] == [(3, 1), (2, 1), (1, 1)]


def test_single_method_reports(presets):
    span, family = presets["ex3_choice2"]
    state = family.state(theta=0.5)
    g = restriction_entropy(span, state, method="gns")
    w = restriction_entropy(span, state, method="wedderburn")
    assert g.methods_agree is None and w.methods_agree is None
    assert g.blocks is None and w.gns_dim is None
    assert abs(g.entropy_nats - w.entropy_nats) < 1e-9
    with pytest.raises(ValueError):
        restriction_entropy(span, state, method="fancy")


def test_entropy_invariant_under_joint_unitary_rotation():
    rng = np.random.default_rng(77)
    basis, _ = bf.random_block_span(rng, 5)
    psi = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    psi /= np.linalg.norm(psi)
    base = restriction_entropy(OperatorSpan(basis), AlgebraState(vector=psi))
    for seed in range(3):
        U = np.linalg.qr(
            np.random.default_rng(seed).standard_normal((5, 5))
            + 1j * np.random.default_rng(seed + 50).standard_normal((5, 5))
        )[0]
        rotated = OperatorSpan(np.einsum("ij,ajk,kl->ail", U, basis, U.conj().T))
        rep = restriction_entropy(rotated, AlgebraState(vector=U @ psi))
        assert abs(rep.entropy_nats - base.entropy_nats) < 1e-9


def test_entropy_vanishes_at_parameter_boundaries(presets):
    span, family = presets["ex3_choice2"]
    for theta in (1e-4, np.pi / 2 - 1e-4):
        rep = restriction_entropy(span, family.state(theta=theta))
        assert rep.entropy_nats < 1e-3


@pytest.mark.parametrize("seed", range(5))
def test_one_sided_restriction_equals_partial_trace(seed):
    rng = np.random.default_rng(400 + seed)
    dA, dB = int(rng.integers(2, 5)), int(rng.integers(2, 5))
    basis = np.array([
        np.kron(unit(dA, i, j), np.eye(dB) / np.sqrt(dB))
        for i in range(dA)
        for j in range(dA)
    ])
    span = OperatorSpan(basis)
    psi = rng.standard_normal(dA * dB) + 1j * rng.standard_normal(dA * dB)
    psi /= np.linalg.norm(psi)
    rep = restriction_entropy(span, AlgebraState(vector=psi))
    rho = partial_trace(psi, (dA, dB), keep="A")
    want = von_neumann_entropy(np.linalg.eigvalsh(rho))
    assert abs(rep.entropy_nats - want) < 1e-9


@pytest.mark.parametrize("seed", range(3))
def test_one_sided_functional_equals_reduced_state_moments(seed):
    # restriction to one-sided observables and the reduced density matrix
    # are the same functional: omega(K (x) 1) = trace(rho_A K)
    rng = np.random.default_rng(500 + seed)
    dA, dB = 3, 2
    psi = rng.standard_normal(dA * dB) + 1j * rng.standard_normal(dA * dB)
    psi /= np.linalg.norm(psi)
    state = AlgebraState(vector=psi)
    rho_a = partial_trace(psi, (dA, dB), keep="A")
    for _ in range(5):
        K = rng.standard_normal((dA, dA)) + 1j * rng.standard_normal((dA, dA))
        lhs = state.value(np.kron(K, np.eye(dB)))
        rhs = np.trace(rho_a @ K)
        assert abs(lhs - rhs) < 1e-12


def test_spectra_agreement_helper():
    assert spectra_agree([0.5, 0.5], [0.5, 0.5 + 1e-10])
    assert spectra_agree([0.5, 0.5, 1e-12], [0.5, 0.5])
    assert not spectra_agree([0.6, 0.4], [0.5, 0.5])
