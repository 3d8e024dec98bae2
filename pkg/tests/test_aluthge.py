"""Weighted Aluthge transforms, iteration chains, and the norm residual."""

from __future__ import annotations

import numpy as np
import pytest

from conftest import draw
from numrad import (
    ComplexMatrix,
    aluthge_iterate,
    aluthge_t,
    frac_power,
    nilpotent_norm_residual,
    polar_decompose,
    spectral_norm,
    spectral_radius,
)

T_GRID = tuple(np.linspace(0.0, 1.0, 11))

RANDOM_CASES = [
    ("ginibre", 3, 1),
    ("ginibre", 6, 2),
    ("nilpotent2", 5, 1),
    ("strict-upper", 4, 1),
    ("normal", 5, 1),
]


class TestAluthgeT:
    def test_fixture_b_half_weight(self, fixtures):
        # |B| = diag(0,2,3) and U shifts columns, so the transform is
        # sqrt(2)*sqrt(3) in the (2,3) slot and zero elsewhere.
        tilde = aluthge_t(fixtures["B"], 0.5)
        expected = np.zeros((3, 3), dtype=complex)
        expected[1, 2] = np.sqrt(6.0)
        assert np.allclose(tilde.entries, expected, atol=1e-12)

    def test_matches_explicit_product(self):
        # Dual route: rebuild from the public polar pieces.
        for kind, dim, seed in RANDOM_CASES:
            m = draw(kind, dim, seed)[0]
            parts = polar_decompose(m)
            for t in (0.0, 0.3, 0.5, 1.0):
                direct = (
                    frac_power(parts, t).entries
                    @ parts.u.entries
                    @ frac_power(parts, 1.0 - t).entries
                )
                assert np.allclose(
                    aluthge_t(m, t).entries, direct, atol=1e-13 * max(1.0, spectral_norm(m))
                )

    def test_endpoint_weights_use_rank_projector(self, fixtures):
        # t = 0 gives U*U * U * |T| and t = 1 gives |T| * U * U*U.
        a = fixtures["A"]
        parts = polar_decompose(a)
        u = parts.u.entries
        p = parts.p.entries
        proj = np.conj(u.T) @ u
        assert np.allclose(aluthge_t(a, 0.0).entries, proj @ u @ p, atol=1e-12)
        assert np.allclose(aluthge_t(a, 1.0).entries, p @ u @ proj, atol=1e-12)

    def test_rejects_out_of_range_weight(self, fixtures):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            aluthge_t(fixtures["E"], 1.5)

    @pytest.mark.parametrize("kind,dim,seed", RANDOM_CASES)
    def test_norm_never_grows(self, kind, dim, seed):
        m = draw(kind, dim, seed)[0]
        norm = spectral_norm(m)
        for t in T_GRID:
            assert spectral_norm(aluthge_t(m, float(t))) <= norm + 1e-10

    @pytest.mark.parametrize("kind,dim,seed", RANDOM_CASES)
    def test_half_weight_below_square_root(self, kind, dim, seed):
        m = draw(kind, dim, seed)[0]
        sq_norm = spectral_norm(ComplexMatrix(m.entries @ m.entries))
        assert spectral_norm(aluthge_t(m, 0.5)) <= np.sqrt(sq_norm) + 1e-10

    @pytest.mark.parametrize("dim", [2, 4, 7])
    def test_square_zero_collapses_transform(self, dim):
        for seed in (1, 2, 3):
            m = draw("nilpotent2", dim, seed)[0]
            norm = spectral_norm(m)
            for t in T_GRID:
                assert spectral_norm(aluthge_t(m, float(t))) <= 1e-10 * norm

    def test_collapse_converse(self):
        # A transform that vanishes at some weight forces a tiny square.
        for kind, dim, seed in RANDOM_CASES:
            m = draw(kind, dim, seed)[0]
            norm = spectral_norm(m)
            sq_norm = spectral_norm(ComplexMatrix(m.entries @ m.entries))
            for t in T_GRID:
                if spectral_norm(aluthge_t(m, float(t))) <= 1e-12:
                    assert sq_norm <= 1e-8 * norm**2

    def test_spectral_radius_invariant_at_half(self):
        for kind in ("ginibre", "normal", "nilpotent2"):
            m = draw(kind, 5, 6)[0]
            r_before = spectral_radius(m)
            r_after = spectral_radius(aluthge_t(m, 0.5))
            assert r_after == pytest.approx(r_before, abs=1e-8 * max(1.0, r_before))


class TestAluthgeIterate:
    def test_first_term_is_input(self, fixtures):
        chain = aluthge_iterate(fixtures["C"], 0.5, 3)
        assert chain.terms[0] is fixtures["C"]
        assert len(chain.terms) == 4
        assert chain.t == 0.5

    def test_zero_iterations(self, fixtures):
        chain = aluthge_iterate(fixtures["C"], 0.25, 0)
        assert len(chain.terms) == 1

    def test_rejects_negative_count(self, fixtures):
        with pytest.raises(ValueError, match="nonnegative"):
            aluthge_iterate(fixtures["C"], 0.5, -1)

    @pytest.mark.parametrize("kind,dim,seed", RANDOM_CASES)
    def test_norms_nonincreasing(self, kind, dim, seed):
        m = draw(kind, dim, seed)[0]
        chain = aluthge_iterate(m, 0.5, 6)
        norms = [spectral_norm(term) for term in chain.terms]
        for prev, cur in zip(norms, norms[1:]):
            assert cur <= prev + 1e-10

    def test_stages_recompute_polar(self):
        # Stage k+1 must equal the one-step transform of stage k.
        m = draw("ginibre", 4, 13)[0]
        chain = aluthge_iterate(m, 0.3, 3)
        for prev, cur in zip(chain.terms, chain.terms[1:]):
            assert np.allclose(
                cur.entries, aluthge_t(prev, 0.3).entries, atol=1e-12
            )

    def test_normal_full_rank_is_fixed_point(self):
        m = draw("normal", 4, 2)[0]
        if np.min(np.linalg.svd(m.entries, compute_uv=False)) < 1e-8:
            pytest.skip("unlucky rank-deficient draw")
        chain = aluthge_iterate(m, 0.5, 2)
        for term in chain.terms:
            assert np.allclose(
                term.entries, m.entries, atol=1e-10 * max(1.0, spectral_norm(m))
            )


class TestNilpotentNormResidual:
    @pytest.mark.parametrize("kind,dim,seed", RANDOM_CASES)
    def test_nonnegative_on_grid(self, kind, dim, seed):
        m = draw(kind, dim, seed)[0]
        for t in T_GRID:
            assert nilpotent_norm_residual(m, float(t)) >= -1e-10

    def test_zero_matrix_returns_zero(self):
        m = ComplexMatrix(np.zeros((3, 3)))
        assert nilpotent_norm_residual(m, 0.3) == 0.0

    def test_tight_for_two_nilpotent_at_half(self, fixtures):
        # For a square-zero matrix the claim bound at t = 1/2 is zero and
        # the transform vanishes, so the residual is exactly zero.
        assert nilpotent_norm_residual(fixtures["E"], 0.5) == pytest.approx(0.0, abs=1e-12)

    def test_branch_formulas(self):
        m = draw("ginibre", 4, 21)[0]
        norm = spectral_norm(m)
        sq_norm = spectral_norm(ComplexMatrix(m.entries @ m.entries))
        for t in (0.2, 0.8):
            if t <= 0.5:
                bound = sq_norm**t * norm ** (1.0 - 2.0 * t)
            else:
                bound = sq_norm ** (1.0 - t) * norm ** (2.0 * t - 1.0)
            expected = bound - spectral_norm(aluthge_t(m, t))
            assert nilpotent_norm_residual(m, t) == pytest.approx(expected, abs=1e-12)

    def test_rejects_out_of_range_weight(self, fixtures):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            nilpotent_norm_residual(fixtures["E"], -0.2)
