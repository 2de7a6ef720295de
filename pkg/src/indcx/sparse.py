"""Sparse integer matrices stored column-wise."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SparseIntMatrix:
    """``cols[j]`` maps row index to a nonzero Python int. Zeros are never stored."""

    row_count: int
    col_count: int
    cols: tuple

    def __post_init__(self):
        if len(self.cols) != self.col_count:
            raise ValueError("column count mismatch")
        for col in self.cols:
            for r, v in col.items():
                if not 0 <= r < self.row_count:
                    raise ValueError(f"row index {r} out of range")
                if v == 0:
                    raise ValueError("stored zero entry")

    @classmethod
    def from_entries(cls, row_count: int, col_count: int, entries: dict) -> "SparseIntMatrix":
        cols = [dict() for _ in range(col_count)]
        for (r, c), v in entries.items():
            if v:
                cols[c][r] = int(v)
        return cls(row_count, col_count, tuple(cols))

    @classmethod
    def from_dense(cls, rows: list) -> "SparseIntMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        cols = tuple({r: int(rows[r][c]) for r in range(nr) if rows[r][c]} for c in range(nc))
        return cls(nr, nc, cols)

    @property
    def shape(self) -> tuple:
        return self.row_count, self.col_count

    @property
    def entries(self) -> dict:
        return {(r, c): v for c, col in enumerate(self.cols) for r, v in col.items()}

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self.cols)

    def get(self, r: int, c: int) -> int:
        return self.cols[c].get(r, 0)

    def to_dense(self) -> list:
        out = [[0] * self.col_count for _ in range(self.row_count)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def rows(self) -> list:
        """Row-wise copy: list of ``{col: value}`` dicts."""
        out = [dict() for _ in range(self.row_count)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.col_count != other.row_count:
            raise ValueError("shape mismatch")
        cols = []
        for ocol in other.cols:
            acc = {}
            for k, w in ocol.items():
                for r, v in self.cols[k].items():
                    acc[r] = acc.get(r, 0) + v * w
            cols.append({r: v for r, v in acc.items() if v})
        return SparseIntMatrix(self.row_count, other.col_count, tuple(cols))

    def is_zero(self) -> bool:
        return not any(self.cols)
