"""Integer normal-form kernels (Smith and Hermite reduction cores).

Two interchangeable implementations of each core: a numba-jitted int64 path
and an exact object-dtype numpy path whose entries are arbitrary-precision
Python ints.  The jitted path guards every destructive update against
leaving the int64-safe window and aborts cleanly, in which case the caller
reruns the exact path, so results are always exact and bit-identical
between paths (same pivot rule, same elementary operations).

Selection is controlled by the environment variable ``CHAINALG_KERNEL``:

* ``auto`` (default) - jitted path when available and the input fits int64,
  exact path otherwise or on guard abort;
* ``numba``          - like auto, but raises if numba cannot be imported;
* ``numpy``          - always the exact object-dtype path.
"""

import os

import numpy as np

ENV_VAR = "CHAINALG_KERNEL"

# Inputs whose entries exceed this go straight to the exact path; guards
# still protect intermediate growth.
_I64_INPUT_LIMIT = 1 << 59
_GUARD = 4.0e18  # < 2**62, conservative headroom for a+q*b updates

try:  # pragma: no cover - exercised indirectly
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap if not (args and callable(args[0])) else args[0]


def kernel_mode():
    mode = os.environ.get(ENV_VAR, "auto")
    if mode not in ("auto", "numba", "numpy"):
        raise ValueError("CHAINALG_KERNEL must be auto, numba or numpy")
    if mode == "numba" and not _HAVE_NUMBA:
        raise RuntimeError("CHAINALG_KERNEL=numba but numba is unavailable")
    return mode


def _to_object(a):
    """int64 array -> object array of Python ints (never numpy scalars)."""
    out = np.empty(a.shape, dtype=object)
    flat_out = out.reshape(-1)
    for idx, val in enumerate(a.reshape(-1)):
        flat_out[idx] = int(val)
    return out


def _fits_i64(a):
    if a.size == 0:
        return True
    return all(-_I64_INPUT_LIMIT < x < _I64_INPUT_LIMIT for x in a.reshape(-1))


# ---------------------------------------------------------------------------
# Smith normal form with all four transforms: U @ A @ V = D,
# A = Uinv @ D @ Vinv, U/V unimodular, D diagonal with d1 | d2 | ... >= 0.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _row_guard_i64(D, U, Ui, i, t, q):
    m = 0.0
    for a in (D, U):
        x = 0.0
        y = 0.0
        for j in range(a.shape[1]):
            v = abs(a[i, j])
            if v > x:
                x = v
            w = abs(a[t, j])
            if w > y:
                y = w
        s = x + abs(q) * y
        if s > m:
            m = s
    x = 0.0
    y = 0.0
    for j in range(Ui.shape[0]):
        v = abs(Ui[j, t])
        if v > x:
            x = v
        w = abs(Ui[j, i])
        if w > y:
            y = w
    s = x + abs(q) * y
    if s > m:
        m = s
    return m < _GUARD


@njit(cache=True)
def _col_guard_i64(D, V, Vi, j, t, q):
    m = 0.0
    for a in (D, V):
        x = 0.0
        y = 0.0
        for i in range(a.shape[0]):
            v = abs(a[i, j])
            if v > x:
                x = v
            w = abs(a[i, t])
            if w > y:
                y = w
        s = x + abs(q) * y
        if s > m:
            m = s
    x = 0.0
    y = 0.0
    for c in range(Vi.shape[1]):
        v = abs(Vi[t, c])
        if v > x:
            x = v
        w = abs(Vi[j, c])
        if w > y:
            y = w
    s = x + abs(q) * y
    if s > m:
        m = s
    return m < _GUARD


@njit(cache=True)
def _snf_i64(D, U, Ui, V, Vi):
    rows, cols = D.shape
    t = 0
    while t < rows and t < cols:
        # smallest-|entry| pivot in the trailing submatrix, row-major ties
        pr = -1
        pc = -1
        best = 0
        for i in range(t, rows):
            for j in range(t, cols):
                v = D[i, j]
                if v != 0:
                    a = -v if v < 0 else v
                    if pr < 0 or a < best:
                        best = a
                        pr = i
                        pc = j
        if pr < 0:
            break
        if pr != t:
            for j in range(cols):
                D[t, j], D[pr, j] = D[pr, j], D[t, j]
            for j in range(rows):
                U[t, j], U[pr, j] = U[pr, j], U[t, j]
            for i in range(rows):
                Ui[i, t], Ui[i, pr] = Ui[i, pr], Ui[i, t]
        if pc != t:
            for i in range(rows):
                D[i, t], D[i, pc] = D[i, pc], D[i, t]
            for i in range(cols):
                V[i, t], V[i, pc] = V[i, pc], V[i, t]
            for j in range(cols):
                Vi[t, j], Vi[pc, j] = Vi[pc, j], Vi[t, j]
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if D[i, t] != 0:
                    q = D[i, t] // D[t, t]
                    if q != 0:
                        if not _row_guard_i64(D, U, Ui, i, t, q):
                            return False
                        for j in range(cols):
                            D[i, j] -= q * D[t, j]
                        for j in range(rows):
                            U[i, j] -= q * U[t, j]
                        for j in range(rows):
                            Ui[j, t] += q * Ui[j, i]
                    if D[i, t] != 0:
                        for j in range(cols):
                            D[t, j], D[i, j] = D[i, j], D[t, j]
                        for j in range(rows):
                            U[t, j], U[i, j] = U[i, j], U[t, j]
                        for j in range(rows):
                            Ui[j, t], Ui[j, i] = Ui[j, i], Ui[j, t]
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, cols):
                if D[t, j] != 0:
                    q = D[t, j] // D[t, t]
                    if q != 0:
                        if not _col_guard_i64(D, V, Vi, j, t, q):
                            return False
                        for i in range(rows):
                            D[i, j] -= q * D[i, t]
                        for i in range(cols):
                            V[i, j] -= q * V[i, t]
                        for c in range(cols):
                            Vi[t, c] += q * Vi[j, c]
                    if D[t, j] != 0:
                        for i in range(rows):
                            D[i, t], D[i, j] = D[i, j], D[i, t]
                        for i in range(cols):
                            V[i, t], V[i, j] = V[i, j], V[i, t]
                        for c in range(cols):
                            Vi[t, c], Vi[j, c] = Vi[j, c], Vi[t, c]
                        dirty = True
            if dirty:
                continue
            clean = True
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if D[i, j] % D[t, t] != 0:
                        if not _row_guard_i64(D, U, Ui, t, i, -1):
                            return False
                        for c in range(cols):
                            D[t, c] += D[i, c]
                        for c in range(rows):
                            U[t, c] += U[i, c]
                        for c in range(rows):
                            Ui[c, i] -= Ui[c, t]
                        clean = False
                        break
                if not clean:
                    break
            if clean:
                break
        if D[t, t] < 0:
            for j in range(cols):
                D[t, j] = -D[t, j]
            for j in range(rows):
                U[t, j] = -U[t, j]
            for i in range(rows):
                Ui[i, t] = -Ui[i, t]
        t += 1
    return True


def _snf_obj(D, U, Ui, V, Vi):
    rows, cols = D.shape
    t = 0
    while t < rows and t < cols:
        pr = pc = -1
        best = 0
        for i in range(t, rows):
            for j in range(t, cols):
                v = D[i, j]
                if v != 0:
                    a = -v if v < 0 else v
                    if pr < 0 or a < best:
                        best = a
                        pr, pc = i, j
        if pr < 0:
            break
        if pr != t:
            D[[t, pr], :] = D[[pr, t], :]
            U[[t, pr], :] = U[[pr, t], :]
            Ui[:, [t, pr]] = Ui[:, [pr, t]]
        if pc != t:
            D[:, [t, pc]] = D[:, [pc, t]]
            V[:, [t, pc]] = V[:, [pc, t]]
            Vi[[t, pc], :] = Vi[[pc, t], :]
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if D[i, t] != 0:
                    q = D[i, t] // D[t, t]
                    if q != 0:
                        D[i, :] -= q * D[t, :]
                        U[i, :] -= q * U[t, :]
                        Ui[:, t] += q * Ui[:, i]
                    if D[i, t] != 0:
                        D[[t, i], :] = D[[i, t], :]
                        U[[t, i], :] = U[[i, t], :]
                        Ui[:, [t, i]] = Ui[:, [i, t]]
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, cols):
                if D[t, j] != 0:
                    q = D[t, j] // D[t, t]
                    if q != 0:
                        D[:, j] -= q * D[:, t]
                        V[:, j] -= q * V[:, t]
                        Vi[t, :] += q * Vi[j, :]
                    if D[t, j] != 0:
                        D[:, [t, j]] = D[:, [j, t]]
                        V[:, [t, j]] = V[:, [j, t]]
                        Vi[[t, j], :] = Vi[[j, t], :]
                        dirty = True
            if dirty:
                continue
            clean = True
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if D[i, j] % D[t, t] != 0:
                        D[t, :] += D[i, :]
                        U[t, :] += U[i, :]
                        Ui[:, i] -= Ui[:, t]
                        clean = False
                        break
                if not clean:
                    break
            if clean:
                break
        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]
            Ui[:, t] = -Ui[:, t]
        t += 1


def snf_transforms(a):
    """Return (U, Uinv, D, V, Vinv) object arrays with U@a@V = D."""
    rows, cols = a.shape
    mode = kernel_mode()
    if mode != "numpy" and _HAVE_NUMBA and _fits_i64(a):
        D = np.array(a.tolist(), dtype=np.int64).reshape(rows, cols)
        U = np.eye(rows, dtype=np.int64)
        Ui = np.eye(rows, dtype=np.int64)
        V = np.eye(cols, dtype=np.int64)
        Vi = np.eye(cols, dtype=np.int64)
        if _snf_i64(D, U, Ui, V, Vi):
            return (
                _to_object(U),
                _to_object(Ui),
                _to_object(D),
                _to_object(V),
                _to_object(Vi),
            )
    D = a.astype(object, copy=True)
    U = _obj_eye(rows)
    Ui = _obj_eye(rows)
    V = _obj_eye(cols)
    Vi = _obj_eye(cols)
    _snf_obj(D, U, Ui, V, Vi)
    return U, Ui, D, V, Vi


def _obj_eye(n):
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


# ---------------------------------------------------------------------------
# Row-style Hermite normal form: unique echelon basis of the row lattice,
# pivots positive, entries above a pivot reduced into [0, pivot).
# ---------------------------------------------------------------------------


@njit(cache=True)
def _hnf_guard_i64(A, i, t, q):
    x = 0.0
    y = 0.0
    for j in range(A.shape[1]):
        v = abs(A[i, j])
        if v > x:
            x = v
        w = abs(A[t, j])
        if w > y:
            y = w
    return x + abs(q) * y < _GUARD


@njit(cache=True)
def _hnf_rows_i64(A):
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        while True:
            pr = -1
            best = 0
            for i in range(r, rows):
                v = A[i, c]
                if v != 0:
                    a = -v if v < 0 else v
                    if pr < 0 or a < best:
                        best = a
                        pr = i
            if pr < 0:
                break
            if pr != r:
                for j in range(cols):
                    A[r, j], A[pr, j] = A[pr, j], A[r, j]
            done = True
            for i in range(r + 1, rows):
                if A[i, c] != 0:
                    q = A[i, c] // A[r, c]
                    if q != 0:
                        if not _hnf_guard_i64(A, i, r, q):
                            return -1
                        for j in range(cols):
                            A[i, j] -= q * A[r, j]
                    if A[i, c] != 0:
                        done = False
            if done:
                break
        if r < rows and A[r, c] != 0:
            if A[r, c] < 0:
                for j in range(cols):
                    A[r, j] = -A[r, j]
            for i in range(r):
                q = A[i, c] // A[r, c]
                if q != 0:
                    if not _hnf_guard_i64(A, i, r, q):
                        return -1
                    for j in range(cols):
                        A[i, j] -= q * A[r, j]
            r += 1
    return r


def _hnf_rows_obj(A):
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        while True:
            pr = -1
            best = 0
            for i in range(r, rows):
                v = A[i, c]
                if v != 0:
                    a = -v if v < 0 else v
                    if pr < 0 or a < best:
                        best = a
                        pr = i
            if pr < 0:
                break
            if pr != r:
                A[[r, pr], :] = A[[pr, r], :]
            done = True
            for i in range(r + 1, rows):
                if A[i, c] != 0:
                    q = A[i, c] // A[r, c]
                    if q != 0:
                        A[i, :] -= q * A[r, :]
                    if A[i, c] != 0:
                        done = False
            if done:
                break
        if r < rows and A[r, c] != 0:
            if A[r, c] < 0:
                A[r, :] = -A[r, :]
            for i in range(r):
                q = A[i, c] // A[r, c]
                if q != 0:
                    A[i, :] -= q * A[r, :]
            r += 1
    return r


def hnf_rows(a):
    """Unique row-HNF basis of the row lattice of ``a`` (object array)."""
    rows, cols = a.shape
    mode = kernel_mode()
    if mode != "numpy" and _HAVE_NUMBA and _fits_i64(a):
        A = np.array(a.tolist(), dtype=np.int64).reshape(rows, cols)
        r = _hnf_rows_i64(A)
        if r >= 0:
            return _to_object(A[:r])
    A = a.astype(object, copy=True)
    r = _hnf_rows_obj(A)
    return A[:r]
