"""File format tests: parsing, round trips, binarization, masking."""

import os
import tempfile

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mebf.boolmat import BinaryMatrix, bool_product, elementwise
from mebf.matio import (
    MatrixFormatError,
    RealMatrix,
    binarize,
    mask_denoise,
    read_matrix,
    write_matrix,
)


class TestRealMatrix:
    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            RealMatrix([[1.0, float("nan")]])
        with pytest.raises(ValueError, match="finite"):
            RealMatrix([[float("inf")]])

    def test_rejects_wrong_ndim(self):
        with pytest.raises(ValueError, match="2-D"):
            RealMatrix([1.0, 2.0])

    def test_equality(self):
        assert RealMatrix([[1.5, 0.0]]) == RealMatrix([[1.5, 0.0]])
        assert RealMatrix([[1.5, 0.0]]) != RealMatrix([[1.5, 1.0]])


class TestDense01:
    def test_read_identity(self, tmp_path):
        path = tmp_path / "x.txt"
        path.write_text("10\n01\n")
        assert read_matrix(path, "dense01") == BinaryMatrix.identity(2)

    def test_read_with_spaces(self, tmp_path):
        path = tmp_path / "x.txt"
        path.write_text("1 0\n0 1\n")
        assert read_matrix(path, "dense01") == BinaryMatrix.identity(2)

    def test_invalid_character_reports_line(self, tmp_path):
        path = tmp_path / "x.txt"
        path.write_text("10\n0x\n")
        with pytest.raises(MatrixFormatError, match="line 2"):
            read_matrix(path, "dense01")

    def test_ragged_row_reports_line(self, tmp_path):
        path = tmp_path / "x.txt"
        path.write_text("10\n011\n")
        with pytest.raises(MatrixFormatError, match="line 2"):
            read_matrix(path, "dense01")

    def test_written_form_is_canonical(self, tmp_path):
        path = tmp_path / "x.txt"
        write_matrix(BinaryMatrix.identity(2), path, "dense01")
        assert path.read_text() == "10\n01\n"


class TestCoo:
    def test_read_single_coordinate(self, tmp_path):
        path = tmp_path / "x.coo"
        path.write_text("2 2 1\n1 2\n")
        mat = read_matrix(path, "coo")
        assert mat.to_dense().tolist() == [[0, 1], [0, 0]]

    @pytest.mark.parametrize("content,message", [
        ("", "header"),
        ("2 2\n", "header"),
        ("a 2 1\n1 1\n", "integers"),
        ("2 2 2\n1 1\n", "coordinate lines"),
        ("2 2 1\n3 1\n", "outside"),
        ("2 2 1\n0 1\n", "outside"),
        ("2 2 2\n1 1\n1 1\n", "duplicate"),
        ("2 2 1\n1\n", "expected 'i j'"),
    ])
    def test_malformed(self, tmp_path, content, message):
        path = tmp_path / "x.coo"
        path.write_text(content)
        with pytest.raises(MatrixFormatError, match=message):
            read_matrix(path, "coo")

    def test_preserves_empty_shape(self, tmp_path):
        path = tmp_path / "x.coo"
        write_matrix(BinaryMatrix.zeros(0, 5), path, "coo")
        out = read_matrix(path, "coo")
        assert out.shape == (0, 5)


class TestCsv:
    def test_read_reals(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1.5,0\n0,2.0\n")
        assert read_matrix(path, "csv") == RealMatrix([[1.5, 0.0],
                                                       [0.0, 2.0]])

    def test_bad_token_reports_line(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1.5,0\n0,two\n")
        with pytest.raises(MatrixFormatError, match="line 2"):
            read_matrix(path, "csv")

    def test_non_finite_rejected(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1.0,nan\n")
        with pytest.raises(MatrixFormatError, match="non-finite"):
            read_matrix(path, "csv")

    def test_ragged_rejected(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1.0,2.0\n3.0\n")
        with pytest.raises(MatrixFormatError, match="line 2"):
            read_matrix(path, "csv")


def _round_trips(mat, fmt):
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "m.dat")
        write_matrix(mat, path, fmt)
        return read_matrix(path, fmt) == mat


class TestRoundTrips:
    @given(arrays(np.uint8,
                  st.tuples(st.integers(1, 10), st.integers(0, 12)),
                  elements=st.integers(0, 1)))
    @settings(max_examples=60)
    def test_dense01(self, dense):
        assert _round_trips(BinaryMatrix.from_dense(dense), "dense01")

    @given(arrays(np.uint8,
                  st.tuples(st.integers(0, 10), st.integers(0, 12)),
                  elements=st.integers(0, 1)))
    @settings(max_examples=60)
    def test_coo(self, dense):
        assert _round_trips(BinaryMatrix.from_dense(dense), "coo")

    @given(arrays(np.float64,
                  st.tuples(st.integers(1, 8), st.integers(0, 8)),
                  elements=st.floats(allow_nan=False, allow_infinity=False,
                                     width=64)))
    @settings(max_examples=60)
    def test_csv(self, values):
        assert _round_trips(RealMatrix(values), "csv")

    def test_empty_matrix(self, tmp_path):
        for fmt, mat in (("dense01", BinaryMatrix.zeros(0, 0)),
                         ("coo", BinaryMatrix.zeros(0, 0)),
                         ("csv", RealMatrix(np.zeros((0, 0))))):
            path = tmp_path / f"empty.{fmt}"
            write_matrix(mat, path, fmt)
            assert read_matrix(path, fmt) == mat

    def test_large_random(self, tmp_path):
        rng = np.random.default_rng(131)
        big = BinaryMatrix.from_dense(rng.random((1000, 1000)) < 0.01)
        for fmt in ("dense01", "coo"):
            path = tmp_path / f"big.{fmt}"
            write_matrix(big, path, fmt)
            assert read_matrix(path, fmt) == big
        real = RealMatrix(np.round(rng.random((300, 120)), 6))
        path = tmp_path / "big.csv"
        write_matrix(real, path, "csv")
        assert read_matrix(path, "csv") == real


class TestFormatDispatch:
    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError, match="unknown format"):
            read_matrix(tmp_path / "x", "tsv")
        with pytest.raises(ValueError, match="unknown format"):
            write_matrix(BinaryMatrix.zeros(1, 1), tmp_path / "x", "tsv")

    def test_type_mismatch(self, tmp_path):
        with pytest.raises(MatrixFormatError, match="binary"):
            write_matrix(RealMatrix([[1.0]]), tmp_path / "x", "dense01")
        with pytest.raises(MatrixFormatError, match="real"):
            write_matrix(BinaryMatrix.zeros(1, 1), tmp_path / "x", "csv")

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            read_matrix(tmp_path / "nope.txt", "dense01")


class TestBinarize:
    def test_zeros_stay_zero(self):
        assert binarize(RealMatrix(np.zeros((3, 3)))).count() == 0

    def test_strictly_positive_only(self):
        real = RealMatrix([[-1.0, 0.0], [0.5, -0.001]])
        assert binarize(real).to_dense().tolist() == [[0, 0], [1, 0]]

    def test_hand_example(self):
        real = RealMatrix([[1.5, 0.0], [0.0, 2.0]])
        assert binarize(real) == BinaryMatrix.identity(2)

    def test_threshold_override(self):
        real = RealMatrix([[1.5, 0.0], [0.0, 2.0]])
        assert binarize(real, threshold=1.6).to_dense().tolist() == [[0, 0],
                                                                     [0, 1]]


class TestMaskDenoise:
    def test_full_support_keeps_everything(self):
        real = RealMatrix([[1.5, -2.0], [0.25, 3.0]])
        a = BinaryMatrix.ones(2, 1)
        b = BinaryMatrix.ones(1, 2)
        assert mask_denoise(real, a, b) == real

    def test_empty_support_zeroes_everything(self):
        real = RealMatrix([[1.5, -2.0], [0.25, 3.0]])
        a = BinaryMatrix.zeros(2, 1)
        b = BinaryMatrix.zeros(1, 2)
        assert mask_denoise(real, a, b) == RealMatrix(np.zeros((2, 2)))

    def test_hand_example(self):
        real = RealMatrix([[1.5, 0.0], [0.0, 2.0]])
        a, b = (BinaryMatrix.from_dense([[1], [0]]),
                BinaryMatrix.from_dense([[1, 1]]))
        assert mask_denoise(real, a, b) == RealMatrix([[1.5, 0.0],
                                                       [0.0, 0.0]])

    def test_shape_mismatch(self):
        with pytest.raises(ValueError, match="does not match"):
            mask_denoise(RealMatrix([[1.0]]), BinaryMatrix.zeros(2, 1),
                         BinaryMatrix.zeros(1, 2))

    def test_binarize_commutes_with_masking(self):
        rng = np.random.default_rng(137)
        for _ in range(40):
            n, m = rng.integers(1, 9, size=2)
            k = int(rng.integers(1, 4))
            real = RealMatrix(rng.normal(size=(n, m)))
            a = BinaryMatrix.from_dense(rng.random((n, k)) < 0.5)
            b = BinaryMatrix.from_dense(rng.random((k, m)) < 0.5)
            lhs = binarize(mask_denoise(real, a, b))
            rhs = elementwise("and", binarize(real), bool_product(a, b))
            assert lhs == rhs
