import math

import numpy as np
import pytest

import cstarconv as cc
from cstarconv.sampling import (
    random_functional,
    random_generating_functional,
    random_state,
)

GRID = (0.0, 2.0**-6, 0.25, 1.0, 4.0)


def random_map(b, rng):
    dim = b.algebra.dim
    mat = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return cc.LinearMap(b.algebra, b.algebra, mat)


def test_zero_generator_gives_identity_flow(s3_dual):
    zero = s3_dual.algebra.functional([np.zeros((n, n)) for n in s3_dual.algebra.blocks])
    sg = cc.associated_semigroup(s3_dual, zero)
    for t in GRID:
        assert np.abs(sg.operator_at(t).matrix - np.eye(s3_dual.algebra.dim)).max() < 1e-12


def test_two_state_flow_stochastic_matrix(z2_functions, z2_rate_functional):
    sg = cc.associated_semigroup(z2_functions, z2_rate_functional)
    for t in (0.0, 0.5, 1.0, 2.5):
        p = (1 - math.exp(-2 * t)) / 2
        expected = np.array([[1 - p, p], [p, 1 - p]])
        assert np.abs(sg.operator_at(t).matrix.real - expected).max() < 1e-12


def test_exponential_route_matches_translation_route(s3_dual, q8_dual, rng):
    for b in (s3_dual, q8_dual):
        gamma = random_generating_functional(b, rng)
        sg = cc.associated_semigroup(b, gamma)
        for t in GRID:
            via_exp = sg.operator_at(t).matrix
            via_translation = cc.right_convolution_operator(
                b, cc.convolution_exp(b, gamma, t)
            ).matrix
            assert np.abs(via_exp - via_translation).max() < 1e-8


def test_recover_functional(s3_dual, rng):
    b = s3_dual
    gamma = random_generating_functional(b, rng)
    sg = cc.associated_semigroup(b, gamma)
    assert (
        cc.functional_norm(
            cc.recover_functional(b, cc.LinearMap.identity(b.algebra)) - b.epsilon
        )
        == 0.0
    )
    for t in GRID:
        recovered = cc.recover_functional(b, sg.operator_at(t))
        assert cc.functional_norm(recovered - sg.functional_at(t)) < 1e-9


def test_associated_maps_pass_all_characterisations(s3_dual, rng):
    b = s3_dual
    gamma = random_generating_functional(b, rng)
    sg = cc.associated_semigroup(b, gamma)
    samples = [random_functional(b.algebra, rng) for _ in range(3)]
    for t in GRID:
        p_t = sg.operator_at(t)
        assert cc.commutation_residual(b, p_t, samples) < 1e-9
        assert cc.strong_invariance_residual(b, p_t) < 1e-9
        assert cc.weak_invariance_residual(b, p_t) < 1e-9


def test_commutation_detects_noncommutative_convolution(s3_functions, s3_dual):
    """Translation by a noncentral measure fails to commute on C(S3).

    Functions on a nonabelian group have a noncommutative convolution dual
    (measures under group convolution), so left translations do not all
    commute there.  The cocommutative C*(S3) has a commutative dual and its
    left translations commute across the board.
    """
    worst = 0.0
    for k in range(s3_functions.algebra.dim):
        mu = s3_functions.algebra.functional_from_dual_coords(
            np.eye(s3_functions.algebra.dim)[k]
        )
        t_map = cc.left_convolution_operator(s3_functions, mu)
        worst = max(worst, cc.commutation_residual(s3_functions, t_map))
    assert worst > 0.01
    cocommutative_worst = 0.0
    for k in range(s3_dual.algebra.dim):
        mu = s3_dual.algebra.functional_from_dual_coords(np.eye(s3_dual.algebra.dim)[k])
        t_map = cc.left_convolution_operator(s3_dual, mu)
        cocommutative_worst = max(cocommutative_worst, cc.commutation_residual(s3_dual, t_map))
    assert cocommutative_worst < 1e-12


def test_identity_commutes(s3_dual):
    assert cc.commutation_residual(s3_dual, cc.LinearMap.identity(s3_dual.algebra)) == 0.0


def test_weak_invariance_of_translations_and_random_maps(s3_dual, rng):
    b = s3_dual
    for _ in range(10):
        mu = random_functional(b.algebra, rng)
        r_map = cc.right_convolution_operator(b, mu)
        assert cc.weak_invariance_residual(b, r_map) < 1e-10
        assert cc.is_right_convolution_operator(b, r_map, tol=1e-9)
    for _ in range(10):
        t_map = random_map(b, rng)
        assert cc.weak_invariance_residual(b, t_map) > 1e-3


def test_perturbed_associated_map_fails_both_ways(s3_dual, rng):
    """Maps failing weak invariance also fail the commutation property."""
    b = s3_dual
    gamma = random_generating_functional(b, rng)
    p_1 = cc.associated_semigroup(b, gamma).operator_at(1.0)
    for _ in range(10):
        noise = random_map(b, rng)
        perturbed = cc.LinearMap(b.algebra, b.algebra, p_1.matrix + 0.01 * noise.matrix)
        assert cc.weak_invariance_residual(b, perturbed) > 1e-3
        assert cc.commutation_residual(b, perturbed) > 1e-3


def test_multiplication_map_is_not_translation_unless_scalar():
    z3 = cc.function_bialgebra(cc.cyclic_group(3))
    alg = z3.algebra
    point = alg.functional_from_dual_coords(np.eye(3)[0])  # delta at the identity
    mult = cc.LinearMap(alg, alg, cc.left_multiplication_matrix(alg, alg.from_coords([1, 0, 0])))
    assert not cc.is_right_convolution_operator(z3, mult, tol=1e-9)
    scalar = cc.LinearMap(alg, alg, cc.left_multiplication_matrix(alg, 0.7 * alg.unit()))
    assert cc.is_right_convolution_operator(z3, scalar, tol=1e-9)
    assert cc.is_right_convolution_operator(z3, cc.LinearMap.identity(alg), tol=1e-12)


def test_reconstruction_exact_on_translation_range(s3_dual, rng):
    b = s3_dual
    mu = random_functional(b.algebra, rng)
    r_map = cc.right_convolution_operator(b, mu)
    rebuilt = cc.right_convolution_operator(b, cc.recover_functional(b, r_map))
    assert np.abs(r_map.matrix - rebuilt.matrix).max() < 1e-10


# ---------------------------------------------------------------------------
# Complete positivity
# ---------------------------------------------------------------------------


def test_identity_is_completely_positive():
    alg = cc.Algebra((2, 1))
    report = cc.is_completely_positive(cc.LinearMap.identity(alg))
    assert report.cp
    assert min(report.min_choi_eigenvalues) >= -1e-12


def test_transpose_is_not_completely_positive():
    m2 = cc.Algebra((2,))
    # transpose permutes matrix-unit coordinates: (r, s) -> (s, r)
    mat = np.zeros((4, 4))
    for r in range(2):
        for s in range(2):
            mat[s * 2 + r, r * 2 + s] = 1.0
    report = cc.is_completely_positive(cc.LinearMap(m2, m2, mat))
    assert not report.cp
    assert min(report.min_choi_eigenvalues) == pytest.approx(-1.0, abs=1e-12)


def test_flow_is_cp_and_unital_iff_state(s3_dual, rng):
    b = s3_dual
    gamma = random_generating_functional(b, rng)
    sg = cc.associated_semigroup(b, gamma)
    for t in GRID:
        p_t = sg.operator_at(t)
        report = cc.is_completely_positive(p_t)
        assert report.cp
        assert cc.unitality_residual(p_t) < 1e-10
        assert cc.state_check(sg.functional_at(t)).is_state(1e-9)


def test_non_state_translation_fails_cp(s3_dual, rng):
    b = s3_dual
    mu = random_state(b.algebra, rng) - 0.05 * random_generating_functional(b, rng, norm=1.0)
    # mu(1) = 1 still, but some dual eigenvalue may dip negative; engineer one:
    blocks = [np.array(blk) for blk in mu.dual_blocks]
    blocks[-1] = blocks[-1] - 0.2 * np.eye(blocks[-1].shape[0])
    blocks[0] = blocks[0] + 0.4
    bad = b.algebra.functional(blocks)
    assert not cc.state_check(bad).is_state(1e-9)
    report = cc.is_completely_positive(cc.right_convolution_operator(b, bad))
    assert not report.cp


# ---------------------------------------------------------------------------
# Generator pairing
# ---------------------------------------------------------------------------


def test_generator_pairing_identity(s3_dual, q8_dual, rng):
    for b in (s3_dual, q8_dual):
        gamma = random_generating_functional(b, rng)
        assert cc.generator_pairing_residual(b, gamma) < 1e-10
        zero = b.algebra.functional([np.zeros((n, n)) for n in b.algebra.blocks])
        assert cc.generator_pairing_residual(b, zero) == 0.0


def test_generator_pairing_separates_functionals(s3_dual, rng):
    """Pairing the generator of gamma against a different functional fails."""
    b = s3_dual
    gamma = random_generating_functional(b, rng)
    other = random_generating_functional(b, rng)
    z_matrix = cc.right_convolution_operator(b, gamma).matrix
    t3 = b.structure_tensor
    paired = np.einsum("j,kjl->kl", b.algebra.dual_coords(other), t3)
    assert np.abs(z_matrix - paired).max() > 1e-3


def test_generator_commutes_with_translations(s3_dual, rng):
    b = s3_dual
    gamma = random_generating_functional(b, rng)
    z_map = cc.right_convolution_operator(b, gamma)
    assert cc.commutation_residual(b, z_map) < 1e-9


def test_strong_continuity_modulus(s3_dual, rng):
    b = s3_dual
    gamma = random_generating_functional(b, rng)
    sg = cc.associated_semigroup(b, gamma)
    norm = cc.functional_norm(gamma)
    eye = np.eye(b.algebra.dim)
    for t in (2.0**-10, 2.0**-4, 0.25, 1.0):
        deviation = np.abs(sg.operator_at(t).matrix - eye).max()
        assert deviation <= t * norm * math.exp(t * norm) + 1e-12


def test_semigroup_law_triangular_grid(s3_dual, rng):
    b = s3_dual
    gamma = random_generating_functional(b, rng)
    sg = cc.associated_semigroup(b, gamma)
    times = (0.125, 0.5, 1.0, 2.0)
    for s in times:
        for t in times:
            lhs = sg.operator_at(s).matrix @ sg.operator_at(t).matrix
            assert np.abs(lhs - sg.operator_at(s + t).matrix).max() < 1e-8
