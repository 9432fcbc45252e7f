"""Exact sparse linear algebra over the rationals.

Matrices are immutable after construction and all arithmetic is exact:
ranks come from a fraction-managed integer Gaussian elimination (rows are
cleared to integers, every update is an exact cross-multiplication with a
gcd strip), kernels from a deterministic rational echelon in natural
column order.  Pivot columns for the rank path are ordered by ascending
support, a cheap Markowitz-style choice that keeps fill-in low on the
incidence-like differentials this package produces.
"""

from __future__ import annotations

from math import gcd

from .rationals import QQ, ZERO
from .errors import CompositionNonzeroError, NotSquareError


class SparseMatrix:
    """Immutable sparse matrix over QQ: no stored zeros, bounds-checked."""

    __slots__ = ("rows", "cols", "_rowdata", "_rank", "_echelon")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        rowdata = [None] * rows
        if entries:
            for (i, j), v in entries.items() if isinstance(entries, dict) else entries:
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i},{j}) outside {rows}x{cols}")
                v = QQ(v)
                if v == 0:
                    continue
                row = rowdata[i]
                if row is None:
                    row = rowdata[i] = {}
                if j in row:
                    raise ValueError(f"duplicate entry at ({i},{j})")
                row[j] = v
        self._rowdata = tuple(row if row is not None else {} for row in rowdata)
        self._rank = None
        self._echelon = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_dense(cls, data, rows=None, cols=None):
        rows = len(data) if rows is None else rows
        cols = (len(data[0]) if data else 0) if cols is None else cols
        entries = {}
        for i, row in enumerate(data):
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = QQ(v)
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, rows, columns):
        """columns: iterable of sparse dicts row->value."""
        entries = {}
        ncols = 0
        for j, col in enumerate(columns):
            ncols += 1
            for i, v in col.items():
                if v:
                    entries[(i, j)] = v
        return cls(rows, ncols, entries)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): QQ(1) for i in range(n)})

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    # -- accessors ----------------------------------------------------

    def row(self, i):
        return self._rowdata[i]

    def entry(self, i, j):
        return self._rowdata[i].get(j, ZERO)

    def items(self):
        for i, row in enumerate(self._rowdata):
            for j, v in row.items():
                yield (i, j), v

    def nnz(self):
        return sum(len(row) for row in self._rowdata)

    def is_zero(self):
        return all(not row for row in self._rowdata)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._rowdata == other._rowdata
        )

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    # -- arithmetic ---------------------------------------------------

    def transpose(self):
        entries = {(j, i): v for (i, j), v in self.items()}
        return SparseMatrix(self.cols, self.rows, entries)

    def __add__(self, other):
        self._check_shape(other)
        entries = {k: v for k, v in self.items()}
        for k, v in other.items():
            s = entries.get(k, ZERO) + v
            if s:
                entries[k] = s
            else:
                entries.pop(k, None)
        return SparseMatrix(self.rows, self.cols, entries)

    def __sub__(self, other):
        return self + other.scale(QQ(-1))

    def scale(self, c):
        c = QQ(c)
        if c == 0:
            return SparseMatrix.zero(self.rows, self.cols)
        return SparseMatrix(self.rows, self.cols, {k: c * v for k, v in self.items()})

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        entries = {}
        orows = other._rowdata
        for i, row in enumerate(self._rowdata):
            acc = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, ZERO) + a * b
            for j, v in acc.items():
                if v:
                    entries[(i, j)] = v
        return SparseMatrix(self.rows, other.cols, entries)

    def apply(self, vec):
        """Matrix times sparse vector (dict col->value) -> dict row->value."""
        out = {}
        for i, row in enumerate(self._rowdata):
            s = ZERO
            for j, a in row.items():
                b = vec.get(j)
                if b is not None:
                    s += a * b
            if s:
                out[i] = s
        return out

    def _check_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # -- elimination --------------------------------------------------

    def rank(self):
        if self._rank is None:
            self._rank = _int_rank(self._int_rows(), self.cols)
        return self._rank

    def _int_rows(self):
        """Rows cleared to integers; row scaling does not change the row space."""
        out = []
        for row in self._rowdata:
            if not row:
                continue
            mult = 1
            for v in row.values():
                d = v.denominator
                if d != 1:
                    mult = mult * d // gcd(mult, d)
            out.append({j: int(v * mult) for j, v in row.items()})
        return out

    def echelon(self):
        if self._echelon is None:
            ech = Echelon(self.cols)
            for row in self._rowdata:
                if row:
                    ech.add_row(dict(row))
            self._echelon = ech
        return self._echelon

    def kernel_basis(self):
        """Exact basis of the right null space, deterministic in column order."""
        ech = self.echelon()
        return ech.kernel_vectors()

    def column_space_contains(self, vec):
        """Is the sparse vector (dict row->value) a combination of columns?"""
        return self.solve(vec) is not None

    def solve(self, vec):
        """One exact solution x (dict col->value) of M x = vec, or None."""
        nrows = self.rows
        ech = Echelon(nrows + self.cols)
        cols = {}
        for (i, j), v in self.items():
            cols.setdefault(j, {})[i] = v
        for j in range(self.cols):
            # column data leads, the combination is tracked in the tail block
            row = dict(cols.get(j, {}))
            row[nrows + j] = QQ(1)
            ech.add_row(row)
        combo, residual = ech.reduce_tracked(dict(vec), nrows)
        if residual:
            return None
        return {j: -c for j, c in combo.items()}


class Echelon:
    """Incremental rational row echelon in natural column order.

    Stores one pivot row per pivot column; rows are reduced against all
    earlier pivots on insertion, so membership tests are a simple sweep.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.pivot_rows = {}  # pivot col -> row dict (pivot value normalized to 1)

    @property
    def rank(self):
        return len(self.pivot_rows)

    def reduce(self, row):
        """Residual of row modulo the current row space (row is consumed)."""
        pivots = self.pivot_rows
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                return row
            a = row.pop(c)
            for j, v in prow.items():
                if j == c:
                    continue
                s = row.get(j, ZERO) - a * v
                if s:
                    row[j] = s
                else:
                    row.pop(j, None)
        return row

    def add_row(self, row):
        """Insert a row; returns the new pivot column, or None if dependent."""
        row = self.reduce(row)
        if not row:
            return None
        c = min(row)
        pv = row[c]
        if pv != 1:
            row = {j: v / pv for j, v in row.items()}
        self.pivot_rows[c] = row
        return c

    def contains(self, row):
        return not self.reduce(dict(row))

    def reduce_tracked(self, row, split):
        """Reduce, then split the residual at column index `split`.

        Returns (tail part with col >= split, head part with col < split).
        """
        row = self.reduce(dict(row))
        tail = {j - split: v for j, v in row.items() if j >= split}
        head = {j: v for j, v in row.items() if j < split}
        return tail, head

    def kernel_vectors(self):
        """Kernel of the matrix whose row space this echelon spans... not quite:
        this is only valid when the echelon was built from the matrix rows, in
        which case ker(M) = ker(echelon rows)."""
        pivots = self.pivot_rows
        free_cols = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        pivot_cols_desc = sorted(pivots, reverse=True)
        for f in free_cols:
            v = {f: QQ(1)}
            for c in pivot_cols_desc:
                if c > f:
                    continue
                prow = pivots[c]
                s = ZERO
                for j, a in prow.items():
                    if j == c:
                        continue
                    b = v.get(j)
                    if b is not None:
                        s += a * b
                if s:
                    v[c] = -s
            basis.append(v)
        return basis


def _int_rank(rows, ncols):
    """Rank of integer rows by fraction-managed Markowitz elimination.

    Pivots are picked greedily by (col count - 1) * (row length - 1) with
    unit pivot values preferred; singleton columns therefore cascade first,
    which keeps fill-in near zero on the incidence-like differentials this
    package produces.  Each update is pv*row - a*pivot followed by a content
    strip, so entries stay integral and small.
    """
    import heapq as _hq

    rows = [dict(r) for r in rows if r]
    if not rows or ncols == 0:
        return 0
    colrows = {}
    for ridx, row in enumerate(rows):
        for c in row:
            colrows.setdefault(c, set()).add(ridx)
    heap = [(len(rids), c) for c, rids in colrows.items()]
    _hq.heapify(heap)
    rank = 0
    while heap:
        cnt, c = _hq.heappop(heap)
        rids = colrows.get(c)
        if not rids:
            continue
        if len(rids) != cnt:
            _hq.heappush(heap, (len(rids), c))
            continue
        # among this column's rows, prefer unit pivot values and short rows
        best_key = None
        pividx = -1
        for ridx in rids:
            row = rows[ridx]
            key = (abs(row[c]) != 1, len(row), ridx)
            if best_key is None or key < best_key:
                best_key, pividx = key, ridx
        prow = rows[pividx]
        pv = prow[c]
        for j in prow:
            s = colrows.get(j)
            if s is not None:
                s.discard(pividx)
        rank += 1
        victims = list(colrows.pop(c))
        refreshed = set()
        for ridx in victims:
            row = rows[ridx]
            a = row.pop(c)
            g = gcd(a, pv)
            ma = pv // g
            mp = a // g
            if ma < 0:
                ma, mp = -ma, -mp
            if ma != 1:
                for j in row:
                    row[j] *= ma
            for j, v in prow.items():
                if j == c:
                    continue
                old = row.get(j)
                if old is None:
                    row[j] = -mp * v
                    colrows.setdefault(j, set()).add(ridx)
                    refreshed.add(j)
                else:
                    s = old - mp * v
                    if s:
                        row[j] = s
                    else:
                        del row[j]
                        cs = colrows.get(j)
                        if cs is not None:
                            cs.discard(ridx)
                            refreshed.add(j)
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for j in row:
                        row[j] //= g
        for j in refreshed:
            s = colrows.get(j)
            if s:
                _hq.heappush(heap, (len(s), j))
    return rank


class QuotientSpace:
    """Cycles modulo boundaries with exact class coordinates.

    Built from two consecutive differentials d_in: C' -> C and
    d_out: C -> C''; representatives are the kernel vectors that add pivots
    after the boundary columns, in deterministic column order.
    """

    def __init__(self, d_in: SparseMatrix, d_out: SparseMatrix):
        if d_in.cols and d_out.rows and not (d_out @ d_in).is_zero():
            from .errors import SanityError

            raise SanityError("d_out . d_in != 0 while building a quotient space")
        self.ambient_dim = d_out.cols
        self._ech = Echelon(2 * self.ambient_dim + 1)
        cols = {}
        for (i, j), v in d_in.items():
            cols.setdefault(j, {})[i] = v
        for j in sorted(cols):
            self._ech.add_row(cols[j])
        self.reps = []
        for z in d_out.kernel_basis():
            row = dict(z)
            row[self.ambient_dim + len(self.reps)] = QQ(1)
            reduced = self._ech.reduce(row)
            if any(c < self.ambient_dim for c in reduced):
                c = min(reduced)
                pv = reduced[c]
                if pv != 1:
                    reduced = {j: v / pv for j, v in reduced.items()}
                self._ech.pivot_rows[c] = reduced
                self.reps.append(z)
            # dependent candidates are discarded so class coords stay well defined

    @property
    def dim(self):
        return len(self.reps)

    def coords(self, vec):
        """Class coordinates of a cycle vector as {rep index: QQ}."""
        from .errors import PreconditionError

        reduced = self._ech.reduce(dict(vec))
        out = {}
        for c, v in reduced.items():
            if c < self.ambient_dim:
                raise PreconditionError("vector is not a cycle in this slice")
            out[c - self.ambient_dim] = -v
        return out

    def induced_matrix(self, op: SparseMatrix, target: "QuotientSpace") -> SparseMatrix:
        """Matrix on classes of an ambient chain map into `target`'s slice."""
        entries = {}
        for j, rep in enumerate(self.reps):
            img = op.apply(rep)
            for i, v in target.coords(img).items():
                entries[(i, j)] = v
        return SparseMatrix(target.dim, self.dim, entries)


def rank(matrix: SparseMatrix) -> int:
    """Exact rank over QQ."""
    return matrix.rank()


def kernel_basis(matrix: SparseMatrix):
    """Exact right null space basis; len = cols - rank, each v has Mv = 0."""
    return matrix.kernel_basis()


def homology_dim(d_in: SparseMatrix, d_out: SparseMatrix) -> int:
    """dim ker(d_out) - rank(d_in) for consecutive differentials.

    d_in : C_{n+1} -> C_n,  d_out : C_n -> C_{n-1}.  The composite is
    checked exactly; a nonzero product means a differential is wrong.
    """
    if d_in.cols and d_out.rows:
        if d_out.cols != d_in.rows:
            raise ValueError("differentials do not compose")
        if not (d_out @ d_in).is_zero():
            raise CompositionNonzeroError("d_out . d_in != 0")
    nullity_out = d_out.cols - d_out.rank()
    return nullity_out - d_in.rank()


def eigenspace(matrix: SparseMatrix, lam):
    """Kernel basis of (M - lam*I); M must be square."""
    if matrix.rows != matrix.cols:
        raise NotSquareError(f"eigenspace of a {matrix.rows}x{matrix.cols} matrix")
    lam = QQ(lam)
    shifted = matrix - SparseMatrix.identity(matrix.rows).scale(lam)
    return shifted.kernel_basis()
