"""Exact integer linear algebra over arbitrary-precision integers.

Dense matrices, Smith normal form with unimodular transforms, linear
solvers over Z and Z/m, canonical (Hermite) lattice and kernel bases, and
a small multi-unknown matrix-equation solver.  Everything is a pure
function of immutable values; matrices are never mutated after
construction.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels


class IntMatrix:
    """Immutable dense matrix of Python ints (row-major)."""

    __slots__ = ("rows", "cols", "_a")

    def __init__(self, rows, cols, array):
        self.rows = rows
        self.cols = cols
        self._a = array

    @staticmethod
    def from_rows(rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        a = np.zeros((rows, cols), dtype=object)
        for i, row in enumerate(rows_list):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, x in enumerate(row):
                a[i, j] = int(x)
        return IntMatrix(rows, cols, a)

    @staticmethod
    def wrap(array):
        """Adopt an object ndarray (caller promises ints, no aliasing)."""
        r, c = array.shape
        return IntMatrix(r, c, array)

    @staticmethod
    def zeros(rows, cols):
        return IntMatrix(rows, cols, np.zeros((rows, cols), dtype=object))

    @staticmethod
    def identity(n):
        a = np.zeros((n, n), dtype=object)
        for i in range(n):
            a[i, i] = 1
        return IntMatrix(n, n, a)

    @staticmethod
    def diagonal(values, rows=None, cols=None):
        vals = [int(v) for v in values]
        r = rows if rows is not None else len(vals)
        c = cols if cols is not None else len(vals)
        a = np.zeros((r, c), dtype=object)
        for i, v in enumerate(vals):
            a[i, i] = v
        return IntMatrix(r, c, a)

    @staticmethod
    def column(values):
        vals = [int(v) for v in values]
        a = np.zeros((len(vals), 1), dtype=object)
        for i, v in enumerate(vals):
            a[i, 0] = v
        return IntMatrix(len(vals), 1, a)

    def numpy(self):
        """Internal array; treat as read-only."""
        return self._a

    def entry(self, i, j):
        return self._a[i, j]

    def row(self, i):
        return tuple(self._a[i, :])

    def col(self, j):
        return tuple(self._a[:, j])

    def tolist(self):
        return [[int(x) for x in row] for row in self._a]

    def transpose(self):
        return IntMatrix(self.cols, self.rows, self._a.T.copy())

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(
                f"dimension mismatch: {self.rows}x{self.cols} @ "
                f"{other.rows}x{other.cols}"
            )
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix(self.rows, other.cols, self._a @ other._a)

    def __add__(self, other):
        self._check_shape(other)
        return IntMatrix(self.rows, self.cols, self._a + other._a)

    def __sub__(self, other):
        self._check_shape(other)
        return IntMatrix(self.rows, self.cols, self._a - other._a)

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, -self._a)

    def scale(self, k):
        k = int(k)
        return IntMatrix(self.rows, self.cols, self._a * k)

    def mod(self, m):
        if m is None:
            return self
        return IntMatrix(self.rows, self.cols, self._a % int(m))

    def matvec(self, vec):
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch in matvec")
        out = []
        for i in range(self.rows):
            out.append(sum(self._a[i, j] * int(vec[j]) for j in range(self.cols)))
        return tuple(out)

    def submatrix(self, row_slice, col_slice):
        part = self._a[row_slice, col_slice]
        return IntMatrix(part.shape[0], part.shape[1], part.copy())

    def is_zero(self):
        return all(x == 0 for x in self._a.reshape(-1))

    def _check_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and bool((self._a == other._a).all())
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self._a.reshape(-1))))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"


def hstack(mats):
    mats = list(mats)
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("row mismatch in hstack")
    cols = sum(m.cols for m in mats)
    a = np.zeros((rows, cols), dtype=object)
    at = 0
    for m in mats:
        a[:, at : at + m.cols] = m.numpy()
        at += m.cols
    return IntMatrix(rows, cols, a)


def vstack(mats):
    mats = list(mats)
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("col mismatch in vstack")
    rows = sum(m.rows for m in mats)
    a = np.zeros((rows, cols), dtype=object)
    at = 0
    for m in mats:
        a[at : at + m.rows, :] = m.numpy()
        at += m.rows
    return IntMatrix(rows, cols, a)


def block_diagonal(mats):
    mats = list(mats)
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    a = np.zeros((rows, cols), dtype=object)
    r = c = 0
    for m in mats:
        a[r : r + m.rows, c : c + m.cols] = m.numpy()
        r += m.rows
        c += m.cols
    return IntMatrix(rows, cols, a)


def kronecker(a, b):
    """Kronecker product, consistent with column-major vec: vec(AXB) =
    kron(B^T, A) @ vec(X)."""
    out = np.zeros((a.rows * b.rows, a.cols * b.cols), dtype=object)
    for i in range(a.rows):
        for j in range(a.cols):
            v = a.entry(i, j)
            if v != 0:
                out[
                    i * b.rows : (i + 1) * b.rows, j * b.cols : (j + 1) * b.cols
                ] = b.numpy() * v
    return IntMatrix(a.rows * b.rows, a.cols * b.cols, out)


def vec(m):
    """Column-major vectorisation as a one-column matrix."""
    return IntMatrix(m.rows * m.cols, 1, m.numpy().T.reshape(-1, 1).copy())


def unvec(column, rows, cols):
    a = column.numpy().reshape(cols, rows).T.copy()
    return IntMatrix(rows, cols, a)


@dataclass(frozen=True)
class SnfDecomposition:
    """U @ M @ V = D with U, V unimodular and d1 | d2 | ... >= 0."""

    u: IntMatrix
    u_inv: IntMatrix
    d: IntMatrix
    v: IntMatrix
    v_inv: IntMatrix

    @property
    def diagonal(self):
        n = min(self.d.rows, self.d.cols)
        return tuple(self.d.entry(i, i) for i in range(n))


def snf(m):
    u, ui, d, v, vi = kernels.snf_transforms(m.numpy())
    return SnfDecomposition(
        IntMatrix.wrap(u),
        IntMatrix.wrap(ui),
        IntMatrix.wrap(d),
        IntMatrix.wrap(v),
        IntMatrix.wrap(vi),
    )


def col_hnf(m):
    """Canonical (Hermite) basis of the column lattice of ``m``."""
    h = kernels.hnf_rows(m.numpy().T.copy())
    return IntMatrix.wrap(h.T.copy())


def lattice_basis(m):
    return col_hnf(m)


class LinearSolver:
    """SNF-backed solver for M x = b over Z, or M x = b (mod modulus)."""

    def __init__(self, m, modulus=None):
        if modulus is not None and modulus <= 0:
            raise ValueError("modulus must be positive")
        self.m = m
        self.modulus = modulus

    @cached_property
    def _snf(self):
        return snf(self.m)

    def solve(self, b):
        """One solution of M x = b (congruent mod modulus), or None."""
        if len(b) != self.m.rows:
            raise ValueError("right-hand side has wrong length")
        dec = self._snf
        y = dec.u.matvec(b)
        n = self.m.cols
        mod = self.modulus
        z = [0] * n
        rank = min(self.m.rows, n)
        for i in range(self.m.rows):
            d = dec.d.entry(i, i) if i < rank else 0
            yi = y[i]
            if mod is None:
                if d == 0:
                    if yi != 0:
                        return None
                else:
                    if yi % d != 0:
                        return None
                    if i < n:
                        z[i] = yi // d
            else:
                if i >= n:
                    if yi % mod != 0:
                        return None
                else:
                    g = math.gcd(d, mod)
                    if yi % g != 0:
                        return None
                    if g == mod:
                        z[i] = 0
                    else:
                        mg = mod // g
                        inv = pow((d // g) % mg, -1, mg)
                        z[i] = ((yi // g) % mg) * inv % mg
        x = dec.v.matvec(z)
        if mod is not None:
            x = tuple(c % mod for c in x)
        return tuple(x)

    def solve_matrix(self, b):
        """X with M @ X = B column-wise, or None."""
        cols = []
        for j in range(b.cols):
            x = self.solve(b.col(j))
            if x is None:
                return None
            cols.append(x)
        a = np.zeros((self.m.cols, b.cols), dtype=object)
        for j, x in enumerate(cols):
            for i, xi in enumerate(x):
                a[i, j] = xi
        return IntMatrix(self.m.cols, b.cols, a)

    @cached_property
    def kernel(self):
        return kernel_basis(self.m, self.modulus)

    def contains(self, b):
        return self.solve(b) is not None


def solve_int_linear(m, b, modulus=None):
    """Some x with M x = b (mod modulus when given), else None."""
    return LinearSolver(m, modulus).solve(b)


def kernel_basis(m, modulus=None):
    """Canonical generating columns of {x : M x = 0 (mod modulus)}.

    Over Z the columns are a lattice basis in column-HNF; with a modulus
    they generate the solution subgroup of (Z/m)^cols.
    """
    if modulus is None:
        work = m
    else:
        work = hstack([m, IntMatrix.diagonal([modulus] * m.rows)])
    # Row-HNF of [M^T | I]: rows whose M^T block vanished carry a canonical
    # basis of the integer kernel in their identity block.
    aug = hstack([work.transpose(), IntMatrix.identity(work.cols)])
    h = kernels.hnf_rows(aug.numpy().copy())
    h = IntMatrix.wrap(h)
    rows = []
    for i in range(h.rows):
        if all(h.entry(i, j) == 0 for j in range(work.rows)):
            rows.append([h.entry(i, j) for j in range(work.rows, work.rows + work.cols)])
    if not rows:
        return IntMatrix.zeros(m.cols, 0)
    ker = IntMatrix.from_rows(rows).transpose()
    ker = ker.submatrix(slice(0, m.cols), slice(0, ker.cols))
    if modulus is not None:
        ker = col_hnf(hstack([ker, IntMatrix.diagonal([modulus] * m.cols)]))
        keep = [
            j
            for j in range(ker.cols)
            if any(ker.entry(i, j) % modulus != 0 for i in range(ker.rows))
        ]
        a = np.zeros((m.cols, len(keep)), dtype=object)
        for idx, j in enumerate(keep):
            for i in range(m.cols):
                a[i, idx] = ker.entry(i, j) % modulus
        return IntMatrix(m.cols, len(keep), a)
    return col_hnf(ker)


def preimage_basis(f, lattice):
    """Canonical basis of {x : f x in column-lattice(L)} over Z."""
    if lattice.cols == 0:
        return kernel_basis(f)
    ker = kernel_basis(hstack([f, lattice]))
    return col_hnf(ker.submatrix(slice(0, f.cols), slice(0, ker.cols)))


class MatrixEqSystem:
    """Simultaneous linear matrix equations in several unknown blocks.

    Each equation states  sum_i A_i @ X_i @ B_i = C  modulo an optional
    column lattice on the target (slack unknowns are added per equation)
    and an optional global modulus.
    """

    def __init__(self, modulus=None):
        self.modulus = modulus
        self._shapes = []
        self._eqs = []

    def unknown(self, rows, cols):
        self._shapes.append((rows, cols))
        return len(self._shapes) - 1

    def add_equation(self, terms, rhs, lattice=None):
        """terms: list of (A, idx, B) contributing A @ X_idx @ B."""
        for a, idx, b in terms:
            r, c = self._shapes[idx]
            if a.cols != r or b.rows != c:
                raise ValueError("term shape mismatch")
            if a.rows != rhs.rows or b.cols != rhs.cols:
                raise ValueError("equation shape mismatch")
        if lattice is not None and lattice.rows != rhs.rows:
            raise ValueError("lattice shape mismatch")
        self._eqs.append((terms, rhs, lattice))

    def solve(self):
        offsets = []
        total = 0
        for r, c in self._shapes:
            offsets.append(total)
            total += r * c
        slack_offsets = []
        for terms, rhs, lattice in self._eqs:
            slack_offsets.append(total)
            if lattice is not None:
                total += lattice.cols * rhs.cols
        rows_total = sum(rhs.rows * rhs.cols for _, rhs, _ in self._eqs)
        big = np.zeros((rows_total, total), dtype=object)
        rhs_vec = np.zeros((rows_total, 1), dtype=object)
        at = 0
        for eq_i, (terms, rhs, lattice) in enumerate(self._eqs):
            n = rhs.rows * rhs.cols
            for a, idx, b in terms:
                k = kronecker(b.transpose(), a)
                big[at : at + n, offsets[idx] : offsets[idx] + k.cols] += k.numpy()
            if lattice is not None:
                k = kronecker(IntMatrix.identity(rhs.cols), lattice)
                so = slack_offsets[eq_i]
                big[at : at + n, so : so + k.cols] = k.numpy()
            rhs_vec[at : at + n, 0] = vec(rhs).numpy()[:, 0]
            at += n
        sol = solve_int_linear(
            IntMatrix(rows_total, total, big),
            tuple(rhs_vec[:, 0]),
            self.modulus,
        )
        if sol is None:
            return None
        out = []
        for idx, (r, c) in enumerate(self._shapes):
            start = offsets[idx]
            col = IntMatrix.column(sol[start : start + r * c])
            out.append(unvec(col, r, c))
        return out
