"""Exact dense linear algebra over a Field: solving, kernels, subspaces.

Row reduction always picks the first nonzero entry in column order, so every
result (echelon bases, particular solutions, certificates) is reproducible.
"""

from __future__ import annotations

from .errors import DimensionMismatch, FieldMismatch, SingularMatrix


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise DimensionMismatch("ragged rows")

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    def copy(self):
        return Matrix(self.field, self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows)

    def __add__(self, other):
        self._conform(other)
        return Matrix(self.field, [[a + b for a, b in zip(r, s)]
                                   for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._conform(other)
        return Matrix(self.field, [[a - b for a, b in zip(r, s)]
                                   for r, s in zip(self.rows, other.rows)])

    def _conform(self, other):
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix shapes differ")

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch("inner dimensions differ")
            z = self.field.zero
            out = []
            for r in self.rows:
                row = []
                for j in range(other.ncols):
                    acc = z
                    for k, a in enumerate(r):
                        if not a.is_zero():
                            acc = acc + a * other.rows[k][j]
                    row.append(acc)
                out.append(row)
            return Matrix(self.field, out)
        # vector (list of scalars)
        if len(other) != self.ncols:
            raise DimensionMismatch("vector length != ncols")
        z = self.field.zero
        return [sum((a * v for a, v in zip(r, other) if not a.is_zero()),
                    start=z) for r in self.rows]

    def transpose(self):
        return Matrix(self.field,
                      [[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)])

    def column(self, j):
        return [r[j] for r in self.rows]

    def det(self):
        if self.nrows != self.ncols:
            raise DimensionMismatch("determinant of a non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        det = self.field.one
        for col in range(n):
            piv = next((i for i in range(col, n)
                        if not rows[i][col].is_zero()), None)
            if piv is None:
                return self.field.zero
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                det = -det
            det = det * rows[col][col]
            inv = rows[col][col].inverse()
            for i in range(col + 1, n):
                if rows[i][col].is_zero():
                    continue
                factor = rows[i][col] * inv
                for j in range(col, n):
                    rows[i][j] = rows[i][j] - factor * rows[col][j]
        return det

    def inverse(self):
        if self.nrows != self.ncols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.nrows
        aug = [list(r) + list(ir)
               for r, ir in zip(self.rows, Matrix.identity(self.field, n).rows)]
        reduced, pivots = rref(aug, self.field)
        if pivots != list(range(n)):
            raise SingularMatrix("matrix is not invertible")
        return Matrix(self.field, [r[n:] for r in reduced])

    def rank(self):
        _, pivots = rref(self.rows, self.field)
        return len(pivots)

    def is_invertible(self):
        return self.nrows == self.ncols and self.rank() == self.nrows


def rref(rows, field):
    """Reduced row echelon form; returns (rows, pivot column list).

    Deterministic: the pivot is the first row with a nonzero entry in the
    current column; pivots are normalized to 1 and cleared above and below.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        piv = next((i for i in range(r, len(rows))
                    if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


class LinearSolution:
    """Particular solution (free variables = 0) plus kernel data."""

    __slots__ = ("x", "kernel_vectors", "free_cols", "field", "ncols")

    def __init__(self, field, x, kernel_vectors, free_cols):
        self.field = field
        self.x = x
        self.kernel_vectors = kernel_vectors
        self.free_cols = free_cols
        self.ncols = len(x)

    @property
    def kernel(self):
        return Subspace.from_vectors(self.field, self.ncols,
                                     self.kernel_vectors)

    def point(self, free_values):
        """Solution whose free coordinates take the given values (in order)."""
        out = list(self.x)
        for val, vec, col in zip(free_values, self.kernel_vectors,
                                 self.free_cols):
            delta = val - self.x[col]
            if delta.is_zero():
                continue
            out = [o + delta * v for o, v in zip(out, vec)]
        return out


class Infeasible:
    """Certificate of inconsistency: y with y.A = 0 and y.b != 0."""

    __slots__ = ("certificate",)

    def __init__(self, certificate):
        self.certificate = certificate


def solve_linear(A, b):
    """Solve A x = b exactly; returns LinearSolution or Infeasible.

    The Infeasible certificate is a left null row extracted from the tracked
    row-reduction transform, independently checkable by the caller.
    """
    field = A.field
    if len(b) != A.nrows:
        raise DimensionMismatch("rhs length != nrows")
    n, m = A.nrows, A.ncols
    ident = Matrix.identity(field, n).rows
    aug = [list(A.rows[i]) + [b[i]] + list(ident[i]) for i in range(n)]

    # forward elimination restricted to the A-block for pivot choice
    rows = [list(r) for r in aug]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1

    for i in range(r, n):
        if not rows[i][m].is_zero():
            return Infeasible(rows[i][m + 1:])

    zero = field.zero
    x = [zero] * m
    for row_idx, c in enumerate(pivots):
        x[c] = rows[row_idx][m]

    pivot_set = set(pivots)
    free_cols = [c for c in range(m) if c not in pivot_set]
    kernel_vectors = []
    for fc in free_cols:
        vec = [zero] * m
        vec[fc] = field.one
        for row_idx, c in enumerate(pivots):
            vec[c] = -rows[row_idx][fc]
        kernel_vectors.append(vec)

    return LinearSolution(field, x, kernel_vectors, free_cols)


class Subspace:
    """Subspace of k^ambient with a reduced-row-echelon basis."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient, basis, pivots):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def from_vectors(cls, field, ambient, vectors):
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch("vector length != ambient dimension")
        reduced, pivots = rref(list(vectors), field)
        basis = [tuple(r) for r in reduced[:len(pivots)]]
        return cls(field, ambient, basis, pivots)

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, [], [])

    @classmethod
    def full(cls, field, ambient):
        ident = Matrix.identity(field, ambient).rows
        return cls.from_vectors(field, ambient, ident)

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def reduce(self, vector):
        """Remainder of vector after eliminating all pivots of the basis."""
        if len(vector) != self.ambient:
            raise DimensionMismatch("vector length != ambient dimension")
        v = list(vector)
        for row, p in zip(self.basis, self.pivots):
            if not v[p].is_zero():
                factor = v[p]
                v = [a - factor * b for a, b in zip(v, row)]
        return v

    def contains_vector(self, vector):
        return all(c.is_zero() for c in self.reduce(vector))

    def contains(self, other):
        self._conform(other)
        return all(self.contains_vector(list(v)) for v in other.basis)

    def _conform(self, other):
        if self.field != other.field:
            raise FieldMismatch("subspaces over different fields")
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")

    def sum(self, other):
        self._conform(other)
        return Subspace.from_vectors(self.field, self.ambient,
                                     [list(v) for v in self.basis]
                                     + [list(v) for v in other.basis])

    def intersect(self, other):
        """Zassenhaus: reduce [[u,u]] + [[v,0]]; zero-left rows give it."""
        self._conform(other)
        amb = self.ambient
        zero_row = [self.field.zero] * amb
        rows = [list(u) + list(u) for u in self.basis]
        rows += [list(v) + zero_row for v in other.basis]
        reduced, pivots = rref(rows, self.field)
        inter = []
        for row, p in zip(reduced[:len(pivots)], pivots):
            if p >= amb:
                inter.append(row[amb:])
        return Subspace.from_vectors(self.field, amb, inter)

    def project(self, coords):
        """Image under projection onto the listed coordinates."""
        vecs = [[v[c] for c in coords] for v in self.basis]
        return Subspace.from_vectors(self.field, len(coords), vecs)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field.key(), self.ambient, tuple(self.basis)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def subspace_ops(U, V, op):
    """Dispatch form: sum / intersect return a Subspace, contains a bool."""
    if op == "sum":
        return U.sum(V)
    if op == "intersect":
        return U.intersect(V)
    if op == "contains":
        return U.contains(V)
    raise DimensionMismatch(f"unknown op {op!r}")
