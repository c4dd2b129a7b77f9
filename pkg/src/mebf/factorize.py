"""Median-expansion factorization of binary matrices.

Each round arranges the residual matrix upper-triangular-like, grows a
rank-1 pattern out of the median column and median row of the active
block, and keeps whichever direction approximates the residual better.
When that pattern would raise the cost against the input, a weak-signal
fallback seeds a pattern from the overlap of the two densest columns or
rows instead.  Accepted patterns zero out the residual entries they cover.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolmat import (
    BinaryMatrix,
    BinaryVector,
    bool_product,
    col_dot_counts,
    complement,
    elementwise,
    rank1_cost,
    rank1_product,
    row_dot_counts,
    utl_rearrange,
)

__all__ = [
    "FactorResult",
    "MebfConfig",
    "bidirectional_growth",
    "mebf_factorize",
    "weak_signal_detection",
]

Pattern = tuple[BinaryVector, BinaryVector]


@dataclass(frozen=True)
class MebfConfig:
    """Factorization knobs.

    t: similarity threshold in the open interval (0, 1); a column or row
       joins a pattern only when its overlap ratio with the anchor
       strictly exceeds t.
    k_max: maximum number of patterns to accept.
    stop_on_no_improvement: always on.  A candidate that would raise the
       cost (after the weak-signal fallback also fails) ends the run.
    """

    t: float
    k_max: int
    stop_on_no_improvement: bool = True

    def __post_init__(self):
        if not 0.0 < self.t < 1.0:
            raise ValueError(
                f"t must lie strictly between 0 and 1, got {self.t}")
        if self.k_max < 1:
            raise ValueError(f"k_max must be at least 1, got {self.k_max}")
        if not self.stop_on_no_improvement:
            raise ValueError("the no-improvement stop cannot be disabled")


@dataclass(frozen=True)
class FactorResult:
    """Accepted patterns and the traces recorded while they accumulated.

    Pattern l is column l of A paired with row l of B.  ``cost_history``
    holds the cost against the input after each acceptance and never
    increases; ``residual_history`` holds the residual one-count after
    each acceptance and strictly decreases.  ``iterations`` counts growth
    attempts, which exceeds ``k`` by one when the run ended on a rejected
    candidate.  ``weak_signal_uses`` counts accepted patterns that came
    from the fallback finder.
    """

    A: BinaryMatrix
    B: BinaryMatrix
    cost_history: tuple[int, ...]
    k: int
    iterations: int
    weak_signal_uses: int
    residual_history: tuple[int, ...]

    def __post_init__(self):
        if self.A.n_cols != self.k or self.B.n_rows != self.k:
            raise ValueError("factor shapes disagree with the pattern count")
        if len(self.cost_history) != self.k:
            raise ValueError("cost history length must equal k")
        if any(a < b for a, b in zip(self.cost_history,
                                     self.cost_history[1:])):
            raise ValueError("cost history must be non-increasing")
        if any(a <= b for a, b in zip(self.residual_history,
                                      self.residual_history[1:])):
            raise ValueError("residual history must strictly decrease")

    def pattern(self, l: int) -> Pattern:
        """The l-th rank-1 pattern as (rows vector, columns vector)."""
        return self.A.col(l), self.B.row(l)

    def reconstruction(self) -> BinaryMatrix:
        """Boolean product of the accumulated factors."""
        return bool_product(self.A, self.B)


def _threshold_mask(counts, denom: int, t: float) -> BinaryVector:
    """Membership vector: 1 where counts / denom strictly exceeds t."""
    return BinaryVector.from_dense(counts / denom > t)


def bidirectional_growth(x_res: BinaryMatrix, t: float) -> Pattern | None:
    """Grow a pattern from the median column and row of the residual.

    The residual is viewed upper-triangular-like; the median active column
    anchors a column pattern (columns whose overlap ratio with the anchor
    exceeds t) and the median active row anchors a row pattern.  Returns
    whichever costs less against the residual, the column pattern on ties,
    or None when the residual has no ones.
    """
    view = utl_rearrange(x_res)
    if view.n_active == 0:
        return None

    med_col = int(view.active_cols[(view.m_active + 1) // 2 - 1])
    med_row = int(view.active_rows[(view.n_active + 1) // 2 - 1])

    anchor_col = x_res.col(med_col)
    col_members = _threshold_mask(
        col_dot_counts(x_res, anchor_col), anchor_col.count(), t)

    anchor_row = x_res.row(med_row)
    row_members = _threshold_mask(
        row_dot_counts(x_res, anchor_row), anchor_row.count(), t)

    col_cost = rank1_cost(anchor_col, col_members, x_res)
    row_cost = rank1_cost(row_members, anchor_row, x_res)
    if col_cost > row_cost:
        return row_members, anchor_row
    return anchor_col, col_members


def weak_signal_detection(x_res: BinaryMatrix, t: float) -> Pattern | None:
    """Seed a pattern from the overlap of the two densest columns or rows.

    Each candidate anchors on the AND of the two densest lines along one
    axis and grows along the other axis exactly like bidirectional growth.
    A candidate is skipped when its axis has fewer than two active lines
    or the overlap is empty.  Returns the cheaper candidate against the
    residual (the column-seeded one on ties), or None when both are
    skipped.
    """
    view = utl_rearrange(x_res)
    candidates: list[Pattern] = []

    if view.m_active >= 2:
        dense_cols = view.active_cols
        anchor = (x_res.col(int(dense_cols[-1]))
                  & x_res.col(int(dense_cols[-2])))
        if anchor.count():
            members = _threshold_mask(
                col_dot_counts(x_res, anchor), anchor.count(), t)
            candidates.append((anchor, members))

    if view.n_active >= 2:
        dense_rows = view.active_rows
        anchor = x_res.row(int(dense_rows[0])) & x_res.row(int(dense_rows[1]))
        if anchor.count():
            members = _threshold_mask(
                row_dot_counts(x_res, anchor), anchor.count(), t)
            candidates.append((members, anchor))

    if not candidates:
        return None
    return min(candidates, key=lambda ab: rank1_cost(ab[0], ab[1], x_res))


def mebf_factorize(x: BinaryMatrix, cfg: MebfConfig) -> FactorResult:
    """Factorize x into at most cfg.k_max rank-1 patterns.

    The loop grows one pattern per round from the residual and accepts it
    while the cost against x does not increase (the first pattern is
    always accepted).  A rejected growth candidate triggers the
    weak-signal fallback; if that candidate is also rejected the run ends.
    Accepted patterns are flipped to zero in the residual, so the run also
    ends when the residual empties or the budget is reached.
    """
    if x.n_rows < 1 or x.n_cols < 1:
        raise ValueError(f"matrix must have at least one row and one "
                         f"column, got {x.shape}")

    residual = x.copy()
    recon = BinaryMatrix.zeros(x.n_rows, x.n_cols)
    best_cost: int | None = None
    row_parts: list[BinaryVector] = []
    col_parts: list[BinaryVector] = []
    cost_history: list[int] = []
    residual_history: list[int] = []
    iterations = 0
    weak_uses = 0

    while len(row_parts) < cfg.k_max and not residual.is_zero():
        iterations += 1
        pair = bidirectional_growth(residual, cfg.t)
        pattern = rank1_product(*pair)
        candidate_recon = elementwise("or", recon, pattern)
        cost = elementwise("xor", x, candidate_recon).count()
        from_weak = False

        if best_cost is not None and cost > best_cost:
            pair = weak_signal_detection(residual, cfg.t)
            if pair is None:
                break
            pattern = rank1_product(*pair)
            candidate_recon = elementwise("or", recon, pattern)
            cost = elementwise("xor", x, candidate_recon).count()
            if cost > best_cost:
                break
            from_weak = True

        row_parts.append(pair[0])
        col_parts.append(pair[1])
        recon = candidate_recon
        best_cost = cost
        cost_history.append(cost)
        next_residual = elementwise("and", residual, complement(pattern))
        if next_residual.count() >= residual.count():
            raise RuntimeError(
                "accepted pattern covered no residual ones; "
                "factorization cannot progress")
        residual = next_residual
        residual_history.append(residual.count())
        weak_uses += from_weak

    return FactorResult(
        A=BinaryMatrix.from_columns(row_parts, x.n_rows),
        B=BinaryMatrix.from_rows(col_parts, x.n_cols),
        cost_history=tuple(cost_history),
        k=len(row_parts),
        iterations=iterations,
        weak_signal_uses=weak_uses,
        residual_history=tuple(residual_history),
    )
