import numpy as np
import pytest

from gnsentropy import (
    AlgebraError,
    ClosureError,
    OperatorSpan,
    center,
    commutant,
    full_matrix_algebra,
    span_closure,
    wedderburn,
)

import bruteforce as bf


def unit(d, i, j):
    m = np.zeros((d, d), dtype=complex)
    m[i, j] = 1.0
    return m


# ---------------------------------------------------------------------------
# span_closure


def test_pair_subalgebra_closes_to_dimension_five():
    gens = [unit(3, i, j) for i in range(2) for j in range(2)]
    span = span_closure(gens, include_unit=True)
    assert span.dim == 5
    assert span.has_unit


def test_unit_alone_spans_scalars():
    span = span_closure([], include_unit=True, ambient_dim=2)
    assert span.dim == 1
    assert np.allclose(span.basis[0], np.eye(2) / np.sqrt(2))


def test_all_matrix_units_close_to_full_algebra():
    gens = [unit(2, i, j) for i in range(2) for j in range(2)]
    assert span_closure(gens).dim == 4


def test_mismatched_generator_dimensions_rejected():
    with pytest.raises(ValueError):
        span_closure([np.eye(2), np.eye(3)])


def test_empty_non_unital_span_rejected():
    with pytest.raises(ValueError):
        span_closure([], ambient_dim=3)


def test_closure_is_deterministic():
    rng = np.random.default_rng(11)
    gens = [rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))]
    a = span_closure(gens, include_unit=True)
    b = span_closure([g.copy() for g in gens], include_unit=True)
    assert np.array_equal(a.basis, b.basis)


@pytest.mark.parametrize("seed", range(6))
def test_closure_invariants_for_random_generators(seed):
    rng = np.random.default_rng(seed)
    D = int(rng.integers(2, 5))
    k = int(rng.integers(1, 3))
    gens = [rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D)) for _ in range(k)]
    span = span_closure(gens, include_unit=True)
    checks = span.validate()
    assert checks["gram"] < 1e-10
    assert checks["product_closure"] < 1e-10
    assert checks["adjoint_closure"] < 1e-10
    assert checks["unit"] < 1e-10
    for g in gens:
        assert span.contains(g)


def test_single_projection_with_unit():
    span = span_closure([unit(2, 0, 0)], include_unit=True)
    assert span.dim == 2


# ---------------------------------------------------------------------------
# center


def test_center_of_full_matrix_algebra_is_scalars():
    Z = center(full_matrix_algebra(2))
    assert Z.dim == 1
    assert Z.has_unit


def test_center_of_pair_subalgebra_is_two_dimensional():
    gens = [unit(3, i, j) for i in range(2) for j in range(2)]
    span = span_closure(gens, include_unit=True)
    Z = center(span)
    assert Z.dim == 2
    assert bf.center_dim(span.basis) == 2


def test_center_of_block_diagonal_boson_algebra(presets):
    span, _ = presets["ex5_bosons"]
    Z = center(span)
    assert Z.dim == 3
    assert bf.center_dim(span.basis) == 3


def test_center_of_commutative_span_is_itself():
    span = span_closure([np.diag([1.0, 2.0, 3.0]).astype(complex)], include_unit=True)
    assert center(span).dim == span.dim


def test_center_is_commutative_and_star_closed():
    gens = [unit(3, i, j) for i in range(2) for j in range(2)]
    Z = center(span_closure(gens, include_unit=True))
    checks = Z.validate()
    assert checks["adjoint_closure"] < 1e-10
    for x in Z.basis:
        for y in Z.basis:
            assert np.abs(x @ y - y @ x).max() < 1e-10


@pytest.mark.parametrize("seed", range(8))
def test_center_matches_bruteforce_on_random_block_algebras(seed):
    rng = np.random.default_rng(100 + seed)
    D = int(rng.integers(2, 7))
    basis, blocks = bf.random_block_span(rng, D)
    span = OperatorSpan(basis)
    assert center(span).dim == len(blocks)
    assert bf.center_dim(basis) == len(blocks)


# ---------------------------------------------------------------------------
# commutant


def test_commutant_of_irreducible_action_is_scalars():
    reps = [unit(2, i, j) for i in range(2) for j in range(2)]
    C = commutant(reps)
    assert C.dim == 1
    assert C.has_unit


def test_commutant_of_doubled_qubit_action():
    # left-multiplication matrices of the 2x2 matrix units on the basis
    # (e00, e01, e10, e11), a reducible action with two equivalent parts
    pi = {}
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        mat = np.zeros((4, 4), dtype=complex)
        for (k, l) in [(0, 0), (0, 1), (1, 0), (1, 1)]:
            if j == k:
                mat[2 * i + l, 2 * k + l] = 1.0
        pi[(i, j)] = mat
    mats = list(pi.values())
    assert commutant(mats).dim == 4
    assert bf.commutant_dim(mats) == 4


def test_commutant_of_quotient_action_with_inequivalent_parts():
    e01 = unit(3, 0, 1)
    mats = [np.diag([1.0, 0, 0]).astype(complex), e01, e01.conj().T,
            np.diag([0, 1.0, 0]).astype(complex), np.diag([0, 0, 1.0]).astype(complex)]
    assert commutant(mats).dim == 2
    assert bf.commutant_dim(mats) == 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_commutant_duality_for_full_algebra(n):
    full = [unit(n, i, j) for i in range(n) for j in range(n)]
    C = commutant(full)
    assert C.dim == 1
    CC = commutant(list(C.basis))
    assert CC.dim == n * n


@pytest.mark.parametrize("seed", range(8))
def test_commutant_matches_bruteforce_on_random_block_algebras(seed):
    rng = np.random.default_rng(200 + seed)
    D = int(rng.integers(2, 7))
    basis, blocks = bf.random_block_span(rng, D)
    want = sum(m * m for _, m in blocks)
    assert commutant(list(basis)).dim == want
    assert bf.commutant_dim(list(basis)) == want


def test_commutant_always_contains_identity():
    rng = np.random.default_rng(3)
    mats = [rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))]
    C = commutant(mats)
    assert C.has_unit
    assert C.contains(np.eye(4))


# ---------------------------------------------------------------------------
# wedderburn


def test_boson_block_algebra_decomposes_as_3_2_1(presets):
    span, _ = presets["ex5_bosons"]
    data = wedderburn(span, seed=0)
    assert sorted(zip(data.block_ranks, data.multiplicities), reverse=True) == [
        (3, 1), (2, 1), (1, 1),
    ]
    assert sum(data.block_dims) == 14


def test_scalars_have_one_block_with_full_multiplicity():
    span = span_closure([], include_unit=True, ambient_dim=5)
    data = wedderburn(span, seed=0)
    assert data.block_ranks == (1,)
    assert data.multiplicities == (5,)


def test_left_location_algebra_contains_a_2_2_block():
    gens = bf.left_location_generators()
    span = span_closure(gens, include_unit=True)
    assert span.dim == 6
    data = wedderburn(span, seed=0)
    assert (2, 2) in data.block_table()


def test_projection_invariants_on_preset_spans(presets, preset_blocks):
    for name, (span, _) in presets.items():
        data = preset_blocks[name]
        D = span.ambient_dim
        total = np.zeros((D, D), dtype=complex)
        for k, z in enumerate(data.projections):
            assert np.abs(z - z.conj().T).max() < 1e-9
            assert np.abs(z @ z - z).max() < 1e-9
            n, m = data.block_ranks[k], data.multiplicities[k]
            assert abs(np.trace(z).real - n * m) < 1e-8
            for l, z2 in enumerate(data.projections):
                if l != k:
                    assert np.abs(z @ z2).max() < 1e-9
            # central: the projection belongs to the span and commutes with it
            assert span.contains(z)
            assert np.abs(z @ span.basis - span.basis @ z).max() < 1e-9
            total += z
        assert np.abs(total - np.eye(D)).max() < 1e-9
        assert sum(data.block_dims) == span.dim


@pytest.mark.parametrize("seed", range(10))
def test_wedderburn_recovers_planted_blocks(seed):
    rng = np.random.default_rng(300 + seed)
    D = int(rng.integers(2, 7))
    basis, blocks = bf.random_block_span(rng, D)
    data = wedderburn(OperatorSpan(basis), seed=seed)
    assert sorted(data.block_table()) == sorted(blocks)


def test_wedderburn_is_seed_independent_up_to_ordering(presets):
    span, _ = presets["ex4_left"]
    a = wedderburn(span, seed=1)
    b = wedderburn(span, seed=99)
    key = lambda d: sorted(
        (n, m, round(np.trace(z).real, 6))
        for n, m, z in zip(d.block_ranks, d.multiplicities, d.projections)
    )
    assert key(a) == key(b)


def test_wedderburn_requires_a_unit():
    span = OperatorSpan(np.array([unit(2, 0, 1)]))
    with pytest.raises(ValueError):
        wedderburn(span)


def test_non_star_closed_span_fails_decomposition():
    basis = np.array([np.eye(2, dtype=complex) / np.sqrt(2), unit(2, 0, 1)])
    span = OperatorSpan(basis)
    with pytest.raises(AlgebraError):
        wedderburn(span)


def test_closure_breakdown_raises():
    with pytest.raises(ClosureError):
        span_closure([np.eye(2)], include_unit=True, max_rounds=0)


def test_block_separation_retries_exhaust_on_merged_clusters():
    # a grouping tolerance wider than any eigenvalue spread makes every
    # draw collapse to one cluster, so separation must give up cleanly
    span = span_closure([np.diag([1.0, 2.0]).astype(complex)], include_unit=True)
    with pytest.raises(AlgebraError):
        wedderburn(span, seed=0, cluster_tol=10.0)
