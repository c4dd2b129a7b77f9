"""Matrix file formats, binarization, and mask-based denoising.

Three bit-exact text formats, all LF-terminated:

* ``dense01`` -- one line per matrix row, characters '0'/'1', single
  spaces between entries allowed on read.  Binary matrices.
* ``coo`` -- header line ``n m nnz`` followed by nnz lines ``i j`` of
  1-based coordinates of the ones; duplicates are rejected.  Binary
  matrices.
* ``csv`` -- comma-separated numeric fields with '.' as the decimal
  separator.  Real matrices; floats are written in shortest round-trip
  form, so write-then-read is the identity.
"""

from __future__ import annotations

import numpy as np

from .boolmat import BinaryMatrix, bool_product

__all__ = [
    "FORMATS",
    "MatrixFormatError",
    "RealMatrix",
    "binarize",
    "mask_denoise",
    "read_matrix",
    "write_matrix",
]

FORMATS = ("dense01", "coo", "csv")


class MatrixFormatError(ValueError):
    """Raised for unparseable or inconsistent matrix files."""


class RealMatrix:
    """Dense matrix of finite float64 values."""

    __slots__ = ("n_rows", "n_cols", "values")

    def __init__(self, values):
        arr = np.array(values, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got ndim={arr.ndim}")
        if arr.size and not np.isfinite(arr).all():
            raise ValueError("all values must be finite")
        self.values = arr
        self.n_rows, self.n_cols = arr.shape

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RealMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(
            self.values, other.values)

    def __repr__(self) -> str:
        return f"RealMatrix(shape={self.n_rows}x{self.n_cols})"


def _read_dense01(lines: list[str]) -> BinaryMatrix:
    rows = []
    width = None
    for lineno, line in enumerate(lines, start=1):
        entries = line.replace(" ", "")
        for ch in entries:
            if ch not in "01":
                raise MatrixFormatError(
                    f"line {lineno}: invalid character {ch!r}, expected "
                    f"'0' or '1'")
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise MatrixFormatError(
                f"line {lineno}: expected {width} entries, got "
                f"{len(entries)}")
        rows.append([int(ch) for ch in entries])
    if not rows:
        return BinaryMatrix.zeros(0, 0)
    return BinaryMatrix.from_dense(rows)


def _read_coo(lines: list[str]) -> BinaryMatrix:
    if not lines:
        raise MatrixFormatError("line 1: missing 'n m nnz' header")
    header = lines[0].split()
    if len(header) != 3:
        raise MatrixFormatError("line 1: header must be 'n m nnz'")
    try:
        n, m, nnz = (int(tok) for tok in header)
    except ValueError:
        raise MatrixFormatError("line 1: header must be three integers") \
            from None
    if n < 0 or m < 0 or nnz < 0:
        raise MatrixFormatError("line 1: header values must be non-negative")
    if len(lines) - 1 != nnz:
        raise MatrixFormatError(
            f"expected {nnz} coordinate lines, found {len(lines) - 1}")

    dense = np.zeros((n, m), dtype=np.uint8)
    seen: set[tuple[int, int]] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise MatrixFormatError(
                f"line {lineno}: expected 'i j', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise MatrixFormatError(
                f"line {lineno}: coordinates must be integers") from None
        if not (1 <= i <= n and 1 <= j <= m):
            raise MatrixFormatError(
                f"line {lineno}: coordinate ({i}, {j}) outside {n}x{m}")
        if (i, j) in seen:
            raise MatrixFormatError(
                f"line {lineno}: duplicate coordinate ({i}, {j})")
        seen.add((i, j))
        dense[i - 1, j - 1] = 1
    return BinaryMatrix(n, m, np.packbits(dense, axis=1))


def _read_csv(lines: list[str]) -> RealMatrix:
    rows = []
    width = None
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split(",") if line else []
        row = []
        for token in tokens:
            try:
                value = float(token)
            except ValueError:
                raise MatrixFormatError(
                    f"line {lineno}: invalid numeric field {token!r}") \
                    from None
            if not np.isfinite(value):
                raise MatrixFormatError(
                    f"line {lineno}: non-finite value {token!r}")
            row.append(value)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFormatError(
                f"line {lineno}: expected {width} fields, got {len(row)}")
        rows.append(row)
    if not rows:
        return RealMatrix(np.zeros((0, 0)))
    return RealMatrix(rows)


def read_matrix(path, format: str) -> BinaryMatrix | RealMatrix:
    """Parse a matrix file; dense01/coo yield binary, csv yields real."""
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}, expected one of "
                         f"{FORMATS}")
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if format == "dense01":
        return _read_dense01(lines)
    if format == "coo":
        return _read_coo(lines)
    return _read_csv(lines)


def _dense01_lines(mat: BinaryMatrix) -> list[str]:
    return ["".join(map(str, row)) for row in mat.to_dense().tolist()]


def _coo_lines(mat: BinaryMatrix) -> list[str]:
    rows, cols = mat.nonzero()
    lines = [f"{mat.n_rows} {mat.n_cols} {len(rows)}"]
    lines.extend(f"{i + 1} {j + 1}" for i, j in zip(rows, cols))
    return lines


def _csv_lines(mat: RealMatrix) -> list[str]:
    return [",".join(repr(v) for v in row) for row in mat.values.tolist()]


def write_matrix(mat, path, format: str) -> None:
    """Write a matrix in the given format; inverse of :func:`read_matrix`."""
    if format in ("dense01", "coo"):
        if not isinstance(mat, BinaryMatrix):
            raise MatrixFormatError(
                f"format {format!r} stores binary matrices, got "
                f"{type(mat).__name__}")
        lines = (_dense01_lines(mat) if format == "dense01"
                 else _coo_lines(mat))
    elif format == "csv":
        if not isinstance(mat, RealMatrix):
            raise MatrixFormatError(
                f"format 'csv' stores real matrices, got "
                f"{type(mat).__name__}")
        lines = _csv_lines(mat)
    else:
        raise ValueError(f"unknown format {format!r}, expected one of "
                         f"{FORMATS}")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")


def binarize(real: RealMatrix, threshold: float = 0.0) -> BinaryMatrix:
    """1 where the value strictly exceeds the threshold, else 0."""
    return BinaryMatrix.from_dense(real.values > threshold)


def mask_denoise(real: RealMatrix, a_mat: BinaryMatrix,
                 b_mat: BinaryMatrix) -> RealMatrix:
    """Keep entries supported by the Boolean product of A and B, zero rest."""
    recon = bool_product(a_mat, b_mat)
    if recon.shape != real.shape:
        raise ValueError(
            f"support {recon.shape} does not match matrix {real.shape}")
    return RealMatrix(real.values * recon.to_dense())
