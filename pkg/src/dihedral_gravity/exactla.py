"""Exact sparse linear algebra over the rationals.

Matrices are sparse maps ``(row, col) -> Fraction``.  Rank and pivot columns
use fraction-free integer elimination (rows cleared of denominators, reduced
by integer row combinations and gcd-normalized).  Reduced row echelon forms
and kernels use sparse Gauss-Jordan over ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence


class ComplexError(ValueError):
    """Raised when a would-be cochain complex has ``d o d != 0`` or bad shapes."""


@dataclass
class RationalMatrix:
    rows: int
    cols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry {(r, c)} outside a {self.rows}x{self.cols} matrix")
            v = Fraction(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        ent = {(r, c): Fraction(v) for r, row in enumerate(data) for c, v in enumerate(row) if v}
        return cls(rows, cols, ent)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, object]]) -> "RationalMatrix":
        ent = {(r, c): v for c, col in enumerate(columns) for r, v in col.items() if v}
        return cls(rows, len(columns), ent)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, {})

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def column_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], Fraction] = {}
        for (r, k), v in self.entries.items():
            for c, w in right[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return RationalMatrix(self.rows, other.cols, acc)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        acc = dict(self.entries)
        for key, v in other.entries.items():
            acc[key] = acc.get(key, 0) - v
        return RationalMatrix(self.rows, self.cols, acc)

    def apply(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        cols = self.column_dicts()
        out: dict[int, Fraction] = {}
        for c, x in vec.items():
            for r, v in cols[c].items():
                out[r] = out.get(r, 0) + v * x
        return {r: v for r, v in out.items() if v}

    def is_zero(self) -> bool:
        return not self.entries

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries


# ---------------------------------------------------------------------------
# elimination kernels


def _integer_rows(rows: Iterable[Mapping[int, Fraction]]) -> list[dict[int, int]]:
    out = []
    for row in rows:
        if not row:
            continue
        den = lcm(*(Fraction(v).denominator for v in row.values()))
        out.append({c: int(Fraction(v) * den) for c, v in row.items()})
    return out


def _normalize(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _rank_python(m: RationalMatrix) -> int:
    # eliminate along the shorter dimension
    rows = m.row_dicts() if m.rows <= m.cols else m.column_dicts()
    pivots: dict[int, dict[int, int]] = {}
    for row in sorted(_integer_rows(rows), key=len):
        while row:
            lead = min(row)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = _normalize(row)
                break
            a, b = p[lead], row[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {c: a * v for c, v in row.items()}
            for c, v in p.items():
                w = new.get(c, 0) - b * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            row = _normalize(new) if new else new
    return len(pivots)


def _rref_python(m: RationalMatrix) -> tuple[list[int], list[dict[int, Fraction]]]:
    rows = [r for r in m.row_dicts() if r]
    pivot_rows: list[dict[int, Fraction]] = []
    pivot_cols: list[int] = []
    by_col: dict[int, int] = {}
    for row in sorted(rows, key=len):
        row = dict(row)
        # reduce against existing pivots (all columns, keeps fully reduced form)
        for c in [c for c in row if c in by_col]:
            v = row.get(c)
            if not v:
                continue
            for cc, w in pivot_rows[by_col[c]].items():
                x = row.get(cc, 0) - v * w
                if x:
                    row[cc] = x
                else:
                    row.pop(cc, None)
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {c: v * inv for c, v in row.items()}
        # clear the new pivot column from earlier rows
        for pr in pivot_rows:
            v = pr.get(lead)
            if v:
                for cc, w in row.items():
                    x = pr.get(cc, 0) - v * w
                    if x:
                        pr[cc] = x
                    else:
                        pr.pop(cc, None)
        by_col[lead] = len(pivot_rows)
        pivot_rows.append(row)
        pivot_cols.append(lead)
    order = sorted(range(len(pivot_cols)), key=lambda i: pivot_cols[i])
    return [pivot_cols[i] for i in order], [pivot_rows[i] for i in order]


def rank(m: RationalMatrix) -> int:
    if not m.entries:
        return 0
    return _rank_python(m)


def rref(m: RationalMatrix) -> tuple[list[int], list[dict[int, Fraction]]]:
    """Pivot columns and the non-zero rows of the reduced row echelon form."""
    if not m.entries:
        return [], []
    return _rref_python(m)


def kernel_basis(m: RationalMatrix) -> list[dict[int, Fraction]]:
    """Basis of ``{v : m v = 0}`` as sparse vectors, one per free column."""
    pivot_cols, rows = rref(m)
    pivots = set(pivot_cols)
    basis = []
    for free in range(m.cols):
        if free in pivots:
            continue
        vec = {free: Fraction(1)}
        for pc, row in zip(pivot_cols, rows):
            v = row.get(free)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def column_coordinates(m: RationalMatrix) -> tuple[list[int], list[dict[int, Fraction]]]:
    """Pivot columns (leftmost basis of the column space) and every column's
    coordinates in that basis, as ``{pivot position: coefficient}``."""
    pivot_cols, rows = rref(m)
    coords: list[dict[int, Fraction]] = [{} for _ in range(m.cols)]
    for pos, row in enumerate(rows):
        for c, v in row.items():
            coords[c][pos] = v
    return pivot_cols, coords


# ---------------------------------------------------------------------------
# cochain complexes


@dataclass
class FiniteComplex:
    """``0 -> V_0 -> V_1 -> ... -> V_m -> 0`` with ``differentials[p]: V_p -> V_{p+1}``."""

    spaces: list[int]
    differentials: list[RationalMatrix]

    def __post_init__(self):
        if len(self.differentials) != max(len(self.spaces) - 1, 0):
            raise ComplexError("need one differential between consecutive spaces")
        for p, d in enumerate(self.differentials):
            if d.shape != (self.spaces[p + 1], self.spaces[p]):
                raise ComplexError(
                    f"d_{p} has shape {d.shape}, expected {(self.spaces[p + 1], self.spaces[p])}"
                )
        for p in range(len(self.differentials) - 1):
            if not (self.differentials[p + 1] @ self.differentials[p]).is_zero():
                raise ComplexError(f"d_{p + 1} o d_{p} != 0")

    def ranks(self) -> list[int]:
        return [rank(d) for d in self.differentials]


def homology_dims(c: FiniteComplex) -> list[int]:
    rk = c.ranks() + [0]
    out = []
    for p, dim in enumerate(c.spaces):
        incoming = rk[p - 1] if p > 0 else 0
        out.append(dim - rk[p] - incoming)
    return out


def pivot_columns(m: RationalMatrix) -> list[int]:
    """Leftmost columns spanning the column space (same set as the rref pivots).

    Columns are inserted one at a time into an integer echelon basis; the scan
    stops as soon as the rank reaches the number of rows.
    """
    pivots: dict[int, dict[int, int]] = {}
    chosen = []
    for c, col in enumerate(_integer_rows_keep(m.column_dicts())):
        row = col
        while row:
            lead = min(row)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = _normalize(row)
                chosen.append(c)
                break
            a, b = p[lead], row[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {r: a * v for r, v in row.items()}
            for r, v in p.items():
                w = new.get(r, 0) - b * v
                if w:
                    new[r] = w
                else:
                    new.pop(r, None)
            row = _normalize(new) if new else new
        if len(chosen) == m.rows:
            break
    return chosen


def _integer_rows_keep(rows: Iterable[Mapping[int, Fraction]]) -> Iterable[dict[int, int]]:
    for row in rows:
        if not row:
            yield {}
            continue
        den = lcm(*(Fraction(v).denominator for v in row.values()))
        yield {c: int(Fraction(v) * den) for c, v in row.items()}
