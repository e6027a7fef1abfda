"""Sparse exact linear algebra over the Gaussian rationals.

Rank, kernel and solve are implemented by exact Gaussian elimination.  In the
sparse path the pivot row for each column is the candidate with the fewest
nonzero entries, which keeps fill-in low on the operator matrices this
package produces (a handful of entries per column).  Matrices with both
dimensions under :data:`DENSE_CUTOFF` use a dense elimination instead, where
the dict bookkeeping costs more than it saves.  Both paths compute the
reduced row echelon form, which is unique, so they agree entry for entry.

There is no epsilon anywhere: a pivot is usable iff it is structurally
nonzero.
"""

from __future__ import annotations

from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .rationals import ZERO, GaussianRational

DENSE_CUTOFF = 64

Entry = Tuple[Tuple[int, int], GaussianRational]


class SparseMatrix:
    """An immutable rows x cols matrix storing only nonzero entries."""

    __slots__ = ("rows", "cols", "entries", "_columns")

    def __init__(self, rows: int, cols: int,
                 entries: Optional[Mapping[Tuple[int, int], GaussianRational]] = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        clean: Dict[Tuple[int, int], GaussianRational] = {}
        if entries:
            for (r, c), value in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r}, {c}) outside {rows}x{cols} matrix")
                if value:
                    clean[(r, c)] = value
        self.entries = clean
        self._columns = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        from .rationals import ONE
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[GaussianRational]],
                   cols: Optional[int] = None) -> "SparseMatrix":
        n_rows = len(rows)
        n_cols = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {}
        for r, row in enumerate(rows):
            for c, value in enumerate(row):
                if value:
                    entries[(r, c)] = value
        return cls(n_rows, n_cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, GaussianRational]],
                     rows: int) -> "SparseMatrix":
        entries = {}
        for c, col in enumerate(columns):
            for r, value in col.items():
                if value:
                    entries[(r, c)] = value
        return cls(rows, len(columns), entries)

    # -- access -----------------------------------------------------------

    def entry(self, r: int, c: int) -> GaussianRational:
        return self.entries.get((r, c), ZERO)

    def column_lists(self) -> List[List[Tuple[int, GaussianRational]]]:
        """Per-column nonzero (row, value) lists, cached."""
        if self._columns is None:
            cols: List[List[Tuple[int, GaussianRational]]] = [[] for _ in range(self.cols)]
            for (r, c), value in self.entries.items():
                cols[c].append((r, value))
            self._columns = cols
        return self._columns

    def apply(self, vector: Mapping[int, GaussianRational]) -> Dict[int, GaussianRational]:
        """Matrix-vector product for a sparse coordinate vector."""
        out: Dict[int, GaussianRational] = {}
        columns = self.column_lists()
        for c, coeff in vector.items():
            if not coeff:
                continue
            for r, value in columns[c]:
                acc = out.get(r, ZERO) + value * coeff
                if acc:
                    out[r] = acc
                elif r in out:
                    del out[r]
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        by_row: Dict[int, List[Tuple[int, GaussianRational]]] = {}
        for (r, c), value in other.entries.items():
            by_row.setdefault(r, []).append((c, value))
        out: Dict[Tuple[int, int], GaussianRational] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                key = (r, c)
                acc = out.get(key, ZERO) + a * b
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return SparseMatrix(self.rows, other.cols, out)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        out = dict(self.entries)
        for key, value in other.entries.items():
            acc = out.get(key, ZERO) + value
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        return SparseMatrix(self.rows, self.cols, out)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def nnz(self) -> int:
        return len(self.entries)

    def to_dense(self) -> List[List[GaussianRational]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            out[r][c] = value
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


# -- elimination core -------------------------------------------------------
#
# Forward phase: sweep columns left to right; among not-yet-pivoted rows with
# a nonzero in the current column, pick the shortest row and eliminate the
# column from the other unpivoted rows.  Unpivoted rows then never regain
# entries in processed columns, so after the sweep every unpivoted row is
# empty (its right-hand side decides consistency).  Backward phase (RREF
# only): normalize pivots to 1 and clear each pivot column from the other
# pivot rows.


class _Echelon:
    __slots__ = ("rows", "cols", "row_data", "pivots", "pivot_rows", "rhs")

    def __init__(self, matrix: SparseMatrix, rhs: Optional[List[GaussianRational]] = None):
        self.rows = matrix.rows
        self.cols = matrix.cols
        self.row_data: List[Dict[int, GaussianRational]] = [{} for _ in range(matrix.rows)]
        for (r, c), value in matrix.entries.items():
            self.row_data[r][c] = value
        self.pivots: List[Tuple[int, int]] = []
        self.pivot_rows: set = set()
        self.rhs = list(rhs) if rhs is not None else None

    def forward(self) -> None:
        col_to_rows: Dict[int, set] = {}
        for r, data in enumerate(self.row_data):
            for c in data:
                col_to_rows.setdefault(c, set()).add(r)
        for c in range(self.cols):
            holders = col_to_rows.get(c)
            if not holders:
                continue
            candidates = [r for r in holders if r not in self.pivot_rows]
            if not candidates:
                continue
            pivot = min(candidates, key=lambda r: (len(self.row_data[r]), r))
            self.pivots.append((pivot, c))
            self.pivot_rows.add(pivot)
            pivot_value = self.row_data[pivot][c]
            for r in candidates:
                if r == pivot:
                    continue
                self._subtract(r, pivot, self.row_data[r][c] / pivot_value, col_to_rows)

    def reduce(self) -> None:
        """Normalize pivots and clear pivot columns upward (full RREF)."""
        for pivot, c in self.pivots:
            value = self.row_data[pivot][c]
            if value != 1:
                inv = GaussianRational(1) / value
                self.row_data[pivot] = {k: v * inv for k, v in self.row_data[pivot].items()}
                if self.rhs is not None:
                    self.rhs[pivot] = self.rhs[pivot] * inv
        for pivot, c in reversed(self.pivots):
            for other, _ in self.pivots:
                if other != pivot and c in self.row_data[other]:
                    self._subtract(other, pivot, self.row_data[other][c], None)

    def _subtract(self, target: int, source: int, factor: GaussianRational,
                  col_to_rows: Optional[Dict[int, set]]) -> None:
        trow = self.row_data[target]
        for c, value in self.row_data[source].items():
            acc = trow.get(c, ZERO) - factor * value
            if acc:
                trow[c] = acc
                if col_to_rows is not None:
                    col_to_rows.setdefault(c, set()).add(target)
            elif c in trow:
                del trow[c]
                if col_to_rows is not None:
                    col_to_rows[c].discard(target)
        if self.rhs is not None:
            self.rhs[target] = self.rhs[target] - factor * self.rhs[source]

    # -- results ---------------------------------------------------------

    def rank(self) -> int:
        return len(self.pivots)

    def kernel_columns(self) -> List[Dict[int, GaussianRational]]:
        pivot_cols = {c for _, c in self.pivots}
        from .rationals import ONE
        vectors = []
        for free in range(self.cols):
            if free in pivot_cols:
                continue
            vec: Dict[int, GaussianRational] = {free: ONE}
            for pivot, c in self.pivots:
                value = self.row_data[pivot].get(free)
                if value:
                    vec[c] = -value
            vectors.append(vec)
        return vectors

    def particular_solution(self) -> Optional[Dict[int, GaussianRational]]:
        assert self.rhs is not None
        for r in range(self.rows):
            if r not in self.pivot_rows and self.rhs[r]:
                return None
        solution: Dict[int, GaussianRational] = {}
        for pivot, c in self.pivots:
            if self.rhs[pivot]:
                solution[c] = self.rhs[pivot]
        return solution


def _eliminate_dense(matrix: SparseMatrix, rhs: Optional[List[GaussianRational]] = None):
    """Dense twin of :class:`_Echelon` for small blocks."""
    data = matrix.to_dense()
    rows, cols = matrix.rows, matrix.cols
    rhs = list(rhs) if rhs is not None else None
    pivots: List[Tuple[int, int]] = []
    pivot_rows: set = set()
    for c in range(cols):
        pivot = None
        for r in range(rows):
            if r not in pivot_rows and data[r][c]:
                pivot = r
                break
        if pivot is None:
            continue
        pivots.append((pivot, c))
        pivot_rows.add(pivot)
        pivot_value = data[pivot][c]
        for r in range(rows):
            if r in pivot_rows or not data[r][c]:
                continue
            factor = data[r][c] / pivot_value
            for k in range(c, cols):
                if data[pivot][k]:
                    data[r][k] = data[r][k] - factor * data[pivot][k]
            if rhs is not None:
                rhs[r] = rhs[r] - factor * rhs[pivot]
    return data, pivots, pivot_rows, rhs


def _reduce_dense(data, pivots, rhs):
    from .rationals import ONE
    for pivot, c in pivots:
        value = data[pivot][c]
        if value != 1:
            inv = ONE / value
            data[pivot] = [v * inv if v else v for v in data[pivot]]
            if rhs is not None:
                rhs[pivot] = rhs[pivot] * inv
    for pivot, c in reversed(pivots):
        for other, _ in pivots:
            if other != pivot and data[other][c]:
                factor = data[other][c]
                for k in range(len(data[other])):
                    if data[pivot][k]:
                        data[other][k] = data[other][k] - factor * data[pivot][k]
                if rhs is not None:
                    rhs[other] = rhs[other] - factor * rhs[pivot]


def _use_dense(matrix: SparseMatrix) -> bool:
    return matrix.rows < DENSE_CUTOFF and matrix.cols < DENSE_CUTOFF


def rank(matrix: SparseMatrix) -> int:
    """Exact rank over Q(i)."""
    if _use_dense(matrix):
        _, pivots, _, _ = _eliminate_dense(matrix)
        return len(pivots)
    ech = _Echelon(matrix)
    ech.forward()
    return ech.rank()


def kernel_vectors(matrix: SparseMatrix) -> List[Dict[int, GaussianRational]]:
    """Kernel basis as sparse coordinate dicts (from the unique RREF)."""
    if _use_dense(matrix):
        data, pivots, pivot_rows, _ = _eliminate_dense(matrix)
        _reduce_dense(data, pivots, None)
        from .rationals import ONE
        pivot_cols = {c for _, c in pivots}
        vectors = []
        for free in range(matrix.cols):
            if free in pivot_cols:
                continue
            vec: Dict[int, GaussianRational] = {free: ONE}
            for pivot, c in pivots:
                if data[pivot][free]:
                    vec[c] = -data[pivot][free]
            vectors.append(vec)
        return vectors
    ech = _Echelon(matrix)
    ech.forward()
    ech.reduce()
    return ech.kernel_columns()


def kernel_basis(matrix: SparseMatrix) -> List[List[GaussianRational]]:
    """Kernel basis as dense coefficient vectors; len == cols - rank."""
    out = []
    for vec in kernel_vectors(matrix):
        dense = [ZERO] * matrix.cols
        for c, value in vec.items():
            dense[c] = value
        out.append(dense)
    return out


def solve(matrix: SparseMatrix, b: Sequence[GaussianRational]) -> Optional[List[GaussianRational]]:
    """Some x with Mx = b, or None when the system is inconsistent.

    Free variables are set to zero, so when rank == cols the returned
    solution is the unique one.  Raises ValueError on a length mismatch.
    """
    if len(b) != matrix.rows:
        raise ValueError(f"rhs length {len(b)} != rows {matrix.rows}")
    rhs = [v if isinstance(v, GaussianRational) else GaussianRational(v) for v in b]
    if _use_dense(matrix):
        data, pivots, pivot_rows, rhs = _eliminate_dense(matrix, rhs)
        for r in range(matrix.rows):
            if r not in pivot_rows and rhs[r]:
                return None
        _reduce_dense(data, pivots, rhs)
        solution = [ZERO] * matrix.cols
        for pivot, c in pivots:
            solution[c] = rhs[pivot]
        return solution
    ech = _Echelon(matrix, rhs)
    ech.forward()
    partial = ech.particular_solution()
    if partial is None:
        return None
    ech.reduce()
    solution = [ZERO] * matrix.cols
    refined = ech.particular_solution()
    assert refined is not None
    for c, value in refined.items():
        solution[c] = value
    return solution


class SpanBuilder:
    """Incremental row-space builder over sparse coordinate vectors.

    Used for lower-central-series spans, layer complements, and membership
    tests.  Vectors are reduced against the stored pivot rows; a vector is
    new iff its residual is nonzero.
    """

    def __init__(self):
        self._rows: List[Dict[int, GaussianRational]] = []
        self._pivots: List[int] = []

    def _residual(self, vector: Mapping[int, GaussianRational]) -> Dict[int, GaussianRational]:
        residual = {c: v for c, v in vector.items() if v}
        for row, pivot in zip(self._rows, self._pivots):
            coeff = residual.get(pivot)
            if not coeff:
                continue
            for c, value in row.items():
                acc = residual.get(c, ZERO) - coeff * value
                if acc:
                    residual[c] = acc
                elif c in residual:
                    del residual[c]
        return residual

    def add(self, vector: Mapping[int, GaussianRational]) -> bool:
        """Add a vector; True iff it enlarged the span."""
        residual = self._residual(vector)
        if not residual:
            return False
        pivot = min(residual)
        inv = GaussianRational(1) / residual[pivot]
        self._rows.append({c: v * inv for c, v in residual.items()})
        self._pivots.append(pivot)
        return True

    def contains(self, vector: Mapping[int, GaussianRational]) -> bool:
        return not self._residual(vector)

    @property
    def dimension(self) -> int:
        return len(self._rows)

    def basis(self) -> List[Dict[int, GaussianRational]]:
        """Fully reduced (RREF) basis rows, sorted by pivot."""
        order = sorted(range(len(self._rows)), key=lambda i: self._pivots[i])
        rows = [dict(self._rows[i]) for i in order]
        pivots = [self._pivots[i] for i in order]
        for i in range(len(rows) - 1, -1, -1):
            for j in range(i):
                coeff = rows[j].get(pivots[i])
                if not coeff:
                    continue
                for c, value in rows[i].items():
                    acc = rows[j].get(c, ZERO) - coeff * value
                    if acc:
                        rows[j][c] = acc
                    elif c in rows[j]:
                        del rows[j][c]
        return rows
