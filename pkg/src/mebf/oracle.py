"""Exhaustive exact factorization and naive reference kernels.

These exist to verify the fast bit-packed kernels and to bound the
heuristic on small instances.  They are deliberately simple and slow:
``naive_bool_product`` is a literal triple loop, and ``exhaustive_bmf``
enumerates every factor pair.
"""

from __future__ import annotations

from .boolmat import BinaryMatrix

# 2^((n+m)*k) candidate factor pairs are enumerated; this bound keeps the
# search space at ~10^6.
MAX_SEARCH_BITS = 20


def naive_bool_product(a_mat: BinaryMatrix,
                       b_mat: BinaryMatrix) -> BinaryMatrix:
    """Triple-loop Boolean product, the reference for ``bool_product``."""
    if a_mat.n_cols != b_mat.n_rows:
        raise ValueError(
            f"incompatible shapes for product: {a_mat.shape} x {b_mat.shape}")
    a = a_mat.to_dense()
    b = b_mat.to_dense()
    k = a_mat.n_cols
    out = [[0] * b_mat.n_cols for _ in range(a_mat.n_rows)]
    for i in range(a_mat.n_rows):
        for j in range(b_mat.n_cols):
            out[i][j] = int(any(a[i][l] and b[l][j] for l in range(k)))
    if a_mat.n_rows == 0 or b_mat.n_cols == 0:
        return BinaryMatrix.zeros(a_mat.n_rows, b_mat.n_cols)
    return BinaryMatrix.from_dense(out)


def _int_to_bits(value: int, n_bits: int) -> list[int]:
    """Bits of value, most significant first."""
    return [(value >> (n_bits - 1 - i)) & 1 for i in range(n_bits)]


def exhaustive_bmf(x: BinaryMatrix,
                   k: int) -> tuple[BinaryMatrix, BinaryMatrix, int]:
    """Globally optimal k-pattern factorization by brute force.

    Enumerates A then B, each counting in binary over row-major entries,
    and keeps the first pair attaining the minimal cost, so ties break
    lexicographically and the result is reproducible.

    Raises:
        ValueError: if (n_rows + n_cols) * k exceeds ``MAX_SEARCH_BITS``.
    """
    n, m = x.shape
    if k < 0:
        raise ValueError("k must be non-negative")
    total_bits = (n + m) * k
    if total_bits > MAX_SEARCH_BITS:
        raise ValueError(
            f"instance too large: (n + m) * k = {total_bits} exceeds the "
            f"exhaustive search bound of {MAX_SEARCH_BITS} bits")

    # Rows of x as integers with column 0 in the most significant bit.
    x_rows = [int("".join(map(str, row)), 2) if m else 0
              for row in x.to_dense().tolist()]

    best_cost = None
    best_pair = None
    for a_code in range(1 << (n * k)):
        # a_cols[l] holds column l of A as an n-bit row-index mask.
        a_bits = _int_to_bits(a_code, n * k)
        a_cols = [0] * k
        for i in range(n):
            for l in range(k):
                if a_bits[i * k + l]:
                    a_cols[l] |= 1 << (n - 1 - i)
        for b_code in range(1 << (k * m)):
            b_bits = _int_to_bits(b_code, k * m)
            b_rows = [0] * k
            for l in range(k):
                for j in range(m):
                    if b_bits[l * m + j]:
                        b_rows[l] |= 1 << (m - 1 - j)
            cost = 0
            for i in range(n):
                recon = 0
                for l in range(k):
                    if a_cols[l] >> (n - 1 - i) & 1:
                        recon |= b_rows[l]
                cost += (x_rows[i] ^ recon).bit_count()
            if best_cost is None or cost < best_cost:
                best_cost = cost
                best_pair = (a_code, b_code)
                if cost == 0:
                    break
        if best_cost == 0:
            break

    a_code, b_code = best_pair
    a_dense = [_int_to_bits(a_code, n * k)[i * k:(i + 1) * k]
               for i in range(n)]
    b_dense = [_int_to_bits(b_code, k * m)[l * m:(l + 1) * m]
               for l in range(k)]
    a_mat = (BinaryMatrix.from_dense(a_dense) if n and k
             else BinaryMatrix.zeros(n, k))
    b_mat = (BinaryMatrix.from_dense(b_dense) if k and m
             else BinaryMatrix.zeros(k, m))
    return a_mat, b_mat, best_cost
