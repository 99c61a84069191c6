"""Z2-graded vector spaces and exact linear algebra over Q, F_p, F_{p^2}.

Everything is deterministic: pivots are always chosen at the lowest column
index with the lowest row index, so derived bases are reproducible across
runs.  Subspaces are stored in reduced row-echelon form, making equality
syntactic.  Matrices are lists of rows of field scalars; large F_p
eliminations are dispatched to an int64 numpy kernel (exact: all values
stay far below 2^63 for p <= 11).
"""

from __future__ import annotations

import numpy as np

from .errors import AmbientMismatch, NoSolution
from .fields import PrimeField

EVEN, ODD = 0, 1

_NUMPY_MIN_CELLS = 4096  # below this the pure-python path is faster


class GradedSpace:
    """A finite-dimensional Z2-graded space with named, parity-tagged basis."""

    __slots__ = ("names", "parities")

    def __init__(self, names, parities):
        if len(names) != len(parities):
            raise ValueError("names/parities length mismatch")
        self.names = tuple(names)
        self.parities = tuple(int(p) % 2 for p in parities)

    @property
    def dim(self):
        return len(self.names)

    @property
    def dim_even(self):
        return sum(1 for p in self.parities if p == EVEN)

    @property
    def dim_odd(self):
        return sum(1 for p in self.parities if p == ODD)

    def graded_dim(self):
        return (self.dim_even, self.dim_odd)

    def __eq__(self, other):
        return (isinstance(other, GradedSpace)
                and self.names == other.names
                and self.parities == other.parities)

    def __hash__(self):
        return hash((self.names, self.parities))

    def __repr__(self):
        return f"GradedSpace({self.dim_even}|{self.dim_odd})"


def zeros(field, n):
    return [field.zero] * n

def unit_vector(field, n, i):
    v = [field.zero] * n
    v[i] = field.one
    return v

def vec_add(field, a, b):
    return [field.add(x, y) for x, y in zip(a, b)]

def vec_sub(field, a, b):
    return [field.sub(x, y) for x, y in zip(a, b)]

def vec_scale(field, c, a):
    return [field.mul(c, x) for x in a]

def vec_is_zero(field, a):
    return all(x == field.zero for x in a)

def mat_vec(field, mat, v):
    out = []
    for row in mat:
        acc = field.zero
        for x, y in zip(row, v):
            if x != field.zero and y != field.zero:
                acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return out

def mat_mul(field, a, b):
    bt = list(zip(*b))
    out = []
    for row in a:
        orow = []
        for col in bt:
            acc = field.zero
            for x, y in zip(row, col):
                if x != field.zero and y != field.zero:
                    acc = field.add(acc, field.mul(x, y))
            orow.append(acc)
        out.append(orow)
    return out

def identity(field, n):
    return [unit_vector(field, n, i) for i in range(n)]

def transpose(mat):
    return [list(r) for r in zip(*mat)]


def rref(field, rows):
    """Reduced row-echelon form with deterministic pivoting.

    Returns (rows, pivot_columns); zero rows are dropped.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    if (isinstance(field, PrimeField)
            and len(rows) * ncols >= _NUMPY_MIN_CELLS):
        return _rref_fp_numpy(field.p, rows)
    rank = 0
    pivots = []
    for col in range(ncols):
        sel = None
        for r in range(rank, len(rows)):
            if rows[r][col] != field.zero:
                sel = r
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != field.zero:
                c = rows[r][col]
                rows[r] = [field.sub(x, field.mul(c, y))
                           for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _rref_fp_numpy(p, rows):
    a = np.array(rows, dtype=np.int64) % p
    nrows, ncols = a.shape
    rank = 0
    pivots = []
    for col in range(ncols):
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        sel = rank + int(nz[0])
        if sel != rank:
            a[[rank, sel]] = a[[sel, rank]]
        a[rank] = a[rank] * pow(int(a[rank, col]), p - 2, p) % p
        other = np.nonzero(a[:, col])[0]
        other = other[other != rank]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, col], a[rank])) % p
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return [[int(x) for x in row] for row in a[:rank]], pivots


class Subspace:
    """A subspace in canonical reduced echelon form.

    Two equal subspaces have identical `rows`, so == is syntactic.
    """

    __slots__ = ("ambient", "field", "rows", "pivots")

    def __init__(self, ambient, field, generators):
        self.ambient = ambient
        self.field = field
        rows, pivots = rref(field, list(generators))
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @property
    def dim(self):
        return len(self.rows)

    def graded_dims(self):
        """(even, odd) dimensions; requires every echelon row to be
        parity-pure, which holds for all graded subspaces produced here."""
        even = odd = 0
        for row in self.rows:
            pars = {self.ambient.parities[i]
                    for i, x in enumerate(row) if x != self.field.zero}
            if len(pars) != 1:
                raise ValueError("subspace basis row mixes parities")
            if pars == {EVEN}:
                even += 1
            else:
                odd += 1
        return (even, odd)

    def reduce_vector(self, v):
        """Residual of v after eliminating against the echelon basis."""
        f = self.field
        v = list(v)
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c != f.zero:
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return v

    def contains(self, v):
        return vec_is_zero(self.field, self.reduce_vector(v))

    def coords_of(self, v):
        """Coefficients of v against the echelon basis; NoSolution if v is
        outside the subspace."""
        f = self.field
        coords = [v[piv] for piv in self.pivots]
        if not self.contains(v):
            raise NoSolution("vector not in subspace")
        return coords

    def sum(self, other):
        self._check(other)
        return Subspace(self.ambient, self.field,
                        list(self.rows) + list(other.rows))

    def intersect(self, other):
        """Zassenhaus-free intersection: solve for combinations of self.rows
        lying in other."""
        self._check(other)
        f = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient, f, [])
        # x ranges over coefficient space of self.rows; condition: the
        # residual of sum x_i row_i against other vanishes.
        resid = [other.reduce_vector(row) for row in self.rows]
        ker = kernel_of_matrix(f, transpose(resid))
        gens = []
        for coef in ker:
            v = zeros(f, self.ambient.dim)
            for c, row in zip(coef, self.rows):
                if c != f.zero:
                    v = vec_add(f, v, vec_scale(f, c, row))
            gens.append(v)
        return Subspace(self.ambient, f, gens)

    def basis_vectors(self):
        return [list(r) for r in self.rows]

    def _check(self, other):
        if self.ambient != other.ambient or self.field != other.field:
            raise AmbientMismatch("subspaces live in different ambients")

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient == other.ambient
                and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient, self.field, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient!r})"


def full_space(ambient, field):
    return Subspace(ambient, field, identity(field, ambient.dim))

def zero_space(ambient, field):
    return Subspace(ambient, field, [])


class GradedMap:
    """A linear map between graded spaces, stored as a dense matrix acting on
    column vectors; parity is 0, 1, or None (not parity-homogeneous)."""

    __slots__ = ("field", "matrix", "source", "target", "parity")

    def __init__(self, field, matrix, source, target, parity=None):
        self.field = field
        self.matrix = [list(r) for r in matrix]
        self.source = source
        self.target = target
        self.parity = parity
        if len(self.matrix) != target.dim or (
                self.matrix and len(self.matrix[0]) != source.dim):
            raise ValueError("matrix shape does not match spaces")

    def apply(self, v):
        return mat_vec(self.field, self.matrix, v)

    def kernel(self):
        return kernel(self)


def kernel_of_matrix(field, mat):
    """Canonical echelon basis of the nullspace of a dense matrix (columns =
    unknowns).  Returns a list of basis row-vectors."""
    if not mat or not mat[0]:
        n = len(mat[0]) if mat else 0
        return identity(field, n)
    rows, pivots = rref(field, mat)
    n = len(mat[0])
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    basis = []
    for fc in free:
        v = zeros(field, n)
        v[fc] = field.one
        for row, piv in zip(rows, pivots):
            v[piv] = field.neg(row[fc])
        basis.append(v)
    return basis


def kernel(f: GradedMap) -> Subspace:
    """Canonical kernel subspace; computed blockwise when f is
    parity-homogeneous so the result splits into even and odd parts."""
    field = f.field
    src = f.source
    if f.parity is None:
        gens = kernel_of_matrix(field, f.matrix)
        return Subspace(src, field, gens)
    gens = []
    for par in (EVEN, ODD):
        cols = [j for j in range(src.dim) if src.parities[j] == par]
        if not cols:
            continue
        sub = [[f.matrix[i][j] for j in cols] for i in range(f.target.dim)]
        for kv in kernel_of_matrix(field, sub):
            v = zeros(field, src.dim)
            for c, j in zip(kv, cols):
                v[j] = c
            gens.append(v)
    return Subspace(src, field, gens)


def solve_right(field, mat, b):
    """Solve mat . x = b.  Returns (particular, kernel_basis); raises
    NoSolution on inconsistency."""
    if not mat:
        if any(x != field.zero for x in b):
            raise NoSolution("empty matrix, nonzero rhs")
        return [], []
    n = len(mat[0])
    aug = [list(row) + [bv] for row, bv in zip(mat, b)]
    rows, pivots = rref(field, aug)
    for row, piv in zip(rows, pivots):
        if piv == n:
            raise NoSolution("inconsistent linear system")
    x = zeros(field, n)
    for row, piv in zip(rows, pivots):
        x[piv] = row[n]
    ker = kernel_of_matrix(field, mat)
    return x, ker


def rank(field, mat):
    if not mat:
        return 0
    _, pivots = rref(field, mat)
    return len(pivots)


def mat_inverse(field, mat):
    n = len(mat)
    aug = [list(row) + unit_vector(field, n, i) for i, row in enumerate(mat)]
    rows, pivots = rref(field, aug)
    if list(pivots) != list(range(n)):
        raise NoSolution("matrix is singular")
    return [row[n:] for row in rows]


def change_field(vec, src_field, dst_field):
    """Map a vector coordinatewise via from_fraction/from_int semantics."""
    if src_field == dst_field:
        return list(vec)
    return [dst_field.from_fraction(x) for x in vec]
