"""Matrix container, JSON format, ensembles, and reference fixtures."""

from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numrad import (
    ENSEMBLE_KINDS,
    ComplexMatrix,
    EnsembleConfig,
    MatrixFormatError,
    make_ensemble,
    parse_matrix,
    reference_fixtures,
    serialize_matrix,
)


class TestComplexMatrix:
    def test_copies_and_freezes_input(self):
        src = np.zeros((2, 2), dtype=np.complex128)
        m = ComplexMatrix(src)
        src[0, 0] = 5.0
        assert m.entries[0, 0] == 0.0
        with pytest.raises(ValueError):
            m.entries[0, 0] = 1.0

    def test_dim_property(self):
        assert ComplexMatrix(np.eye(3)).dim == 3

    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            ComplexMatrix(np.zeros((2, 3)))
        with pytest.raises(ValueError, match="square"):
            ComplexMatrix(np.zeros(4))

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="square"):
            ComplexMatrix(np.zeros((0, 0)))

    def test_rejects_non_finite(self):
        bad = np.zeros((2, 2), dtype=np.complex128)
        bad[1, 0] = np.nan
        with pytest.raises(ValueError, match="row 2, column 1"):
            ComplexMatrix(bad)

    def test_from_rows(self):
        m = ComplexMatrix.from_rows([[0, 1], [0, 0]])
        assert m.entries[0, 1] == 1.0 + 0j


class TestParseMatrix:
    def test_basic_two_by_two(self):
        m = parse_matrix('{"dim":2,"data":[[0,0],[1,0],[0,0],[0,0]]}')
        assert np.array_equal(m.entries, np.array([[0, 1], [0, 0]], dtype=np.complex128))

    def test_fixture_a_encoding(self, fixtures):
        text = (
            '{"dim":3,"data":[[0,0],[2,0],[0,0],[0,0],[0,0],[0,0],'
            "[0,0],[0,0],[1,0]]}"
        )
        assert np.array_equal(parse_matrix(text).entries, fixtures["A"].entries)

    def test_one_by_one_complex(self):
        m = parse_matrix('{"dim":1,"data":[[3,-4]]}')
        assert m.entries[0, 0] == 3.0 - 4.0j

    def test_malformed_json(self):
        with pytest.raises(MatrixFormatError, match="malformed syntax"):
            parse_matrix("{not json")

    def test_top_level_not_object(self):
        with pytest.raises(MatrixFormatError, match="object"):
            parse_matrix("[1, 2]")

    def test_missing_keys(self):
        with pytest.raises(MatrixFormatError, match="missing required"):
            parse_matrix('{"dim": 2}')

    def test_unexpected_keys(self):
        with pytest.raises(MatrixFormatError, match="unexpected keys"):
            parse_matrix('{"dim":1,"data":[[0,0]],"comment":"hi"}')

    def test_bool_dim_rejected(self):
        with pytest.raises(MatrixFormatError, match="positive integer"):
            parse_matrix('{"dim":true,"data":[[0,0]]}')

    def test_non_positive_dim(self):
        with pytest.raises(MatrixFormatError, match="positive integer"):
            parse_matrix('{"dim":0,"data":[]}')

    def test_non_square_data(self):
        with pytest.raises(MatrixFormatError, match="non-square data"):
            parse_matrix('{"dim":2,"data":[[0,0],[1,0],[0,0]]}')

    def test_malformed_entry_location(self):
        with pytest.raises(MatrixFormatError, match="row 2, column 1"):
            parse_matrix('{"dim":2,"data":[[0,0],[1,0],[0],[0,0]]}')

    def test_bool_entry_rejected(self):
        with pytest.raises(MatrixFormatError, match="row 1, column 1"):
            parse_matrix('{"dim":1,"data":[[true,0]]}')

    def test_string_entry_rejected(self):
        with pytest.raises(MatrixFormatError, match="malformed entry"):
            parse_matrix('{"dim":1,"data":[["1",0]]}')

    def test_non_finite_entry(self):
        with pytest.raises(MatrixFormatError, match="non-finite entry"):
            parse_matrix('{"dim":1,"data":[[1e999,0]]}')


class TestSerializeMatrix:
    def test_round_trip_fixture_b(self, fixtures):
        b = fixtures["B"]
        again = parse_matrix(serialize_matrix(b))
        assert np.array_equal(again.entries, b.entries)

    def test_round_trip_one_by_one_zero(self):
        m = ComplexMatrix(np.zeros((1, 1)))
        assert np.array_equal(parse_matrix(serialize_matrix(m)).entries, m.entries)

    def test_output_is_valid_json_with_expected_shape(self, fixtures):
        doc = json.loads(serialize_matrix(fixtures["E"]))
        assert set(doc) == {"dim", "data"}
        assert doc["dim"] == 2
        assert doc["data"] == [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]

    @settings(max_examples=50, deadline=None)
    @given(
        st.integers(min_value=1, max_value=5).flatmap(
            lambda n: st.lists(
                st.tuples(
                    st.floats(allow_nan=False, allow_infinity=False, width=64),
                    st.floats(allow_nan=False, allow_infinity=False, width=64),
                ),
                min_size=n * n,
                max_size=n * n,
            )
        )
    )
    def test_round_trip_is_exact(self, pairs):
        dim = int(round(len(pairs) ** 0.5))
        arr = np.array([complex(re, im) for re, im in pairs]).reshape(dim, dim)
        m = ComplexMatrix(arr)
        again = parse_matrix(serialize_matrix(m))
        assert np.array_equal(again.entries, m.entries)

    def test_serialization_is_byte_stable(self, fixtures):
        a = fixtures["A"]
        assert serialize_matrix(a) == serialize_matrix(a)


class TestEnsembleConfig:
    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown ensemble kind"):
            EnsembleConfig(kind="wishart", dim=2, count=1, seed=0)

    def test_rejects_bad_dim(self):
        with pytest.raises(ValueError, match="dim"):
            EnsembleConfig(kind="ginibre", dim=0, count=1, seed=0)

    def test_rejects_zero_count(self):
        with pytest.raises(ValueError, match="count"):
            EnsembleConfig(kind="ginibre", dim=2, count=0, seed=0)


class TestMakeEnsemble:
    def test_deterministic(self):
        cfg = EnsembleConfig(kind="ginibre", dim=3, count=2, seed=7)
        first = make_ensemble(cfg)
        second = make_ensemble(cfg)
        for m1, m2 in zip(first, second):
            assert np.array_equal(m1.entries, m2.entries)

    def test_count_prefix_stability(self):
        # Draw index k does not depend on how many matrices were requested.
        cfg_small = EnsembleConfig(kind="normal", dim=3, count=2, seed=5)
        cfg_large = EnsembleConfig(kind="normal", dim=3, count=5, seed=5)
        small = make_ensemble(cfg_small)
        large = make_ensemble(cfg_large)
        for m1, m2 in zip(small, large):
            assert np.array_equal(m1.entries, m2.entries)

    def test_seeds_differ(self):
        a = make_ensemble(EnsembleConfig(kind="ginibre", dim=2, count=1, seed=1))[0]
        b = make_ensemble(EnsembleConfig(kind="ginibre", dim=2, count=1, seed=2))[0]
        assert not np.array_equal(a.entries, b.entries)

    @pytest.mark.parametrize("dim", [1, 2, 3, 7])
    def test_nilpotent2_square_is_exactly_zero(self, dim):
        for seed in (1, 2, 3):
            m = make_ensemble(
                EnsembleConfig(kind="nilpotent2", dim=dim, count=1, seed=seed)
            )[0]
            sq = m.entries @ m.entries
            assert np.count_nonzero(sq) == 0

    @pytest.mark.parametrize("dim", [2, 4, 6])
    def test_normal_draws_commute(self, dim):
        m = make_ensemble(EnsembleConfig(kind="normal", dim=dim, count=1, seed=9))[0]
        arr = m.entries
        comm = np.conj(arr.T) @ arr - arr @ np.conj(arr.T)
        norm_sq = np.linalg.norm(arr, 2) ** 2
        assert np.linalg.norm(comm, 2) <= 1e-12 * max(1.0, norm_sq)

    def test_strict_upper_support(self):
        m = make_ensemble(EnsembleConfig(kind="strict-upper", dim=4, count=1, seed=3))[0]
        assert np.count_nonzero(np.tril(m.entries)) == 0
        assert np.count_nonzero(m.entries) > 0

    def test_ginibre_is_dense_complex(self):
        m = make_ensemble(EnsembleConfig(kind="ginibre", dim=4, count=1, seed=3))[0]
        assert np.count_nonzero(m.entries.real) == 16
        assert np.count_nonzero(m.entries.imag) == 16

    def test_reference_kind_cycles(self, fixtures):
        cfg = EnsembleConfig(kind="reference", dim=9, count=7, seed=42)
        mats = make_ensemble(cfg)
        names = list(fixtures)
        assert len(mats) == 7
        for i, m in enumerate(mats):
            assert np.array_equal(m.entries, fixtures[names[i % 5]].entries)

    def test_all_kinds_listed(self):
        assert ENSEMBLE_KINDS == (
            "ginibre",
            "nilpotent2",
            "strict-upper",
            "normal",
            "reference",
        )


class TestReferenceFixtures:
    def test_entries(self):
        fx = reference_fixtures()
        assert np.array_equal(
            fx["A"].entries, np.array([[0, 2, 0], [0, 0, 0], [0, 0, 1]], dtype=complex)
        )
        assert np.array_equal(
            fx["B"].entries, np.array([[0, 2, 0], [0, 0, 3], [0, 0, 0]], dtype=complex)
        )
        assert np.array_equal(fx["C"].entries, np.array([[1, 1], [0, -1]], dtype=complex))
        assert np.array_equal(fx["D"].entries, np.array([[1, 2], [0, -1]], dtype=complex))
        assert np.array_equal(fx["E"].entries, np.array([[0, 1], [0, 0]], dtype=complex))

    def test_names_and_order(self):
        assert list(reference_fixtures()) == ["A", "B", "C", "D", "E"]
