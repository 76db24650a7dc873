"""Exact dense linear algebra over GF(2^n), plus semilinear operators.

Matrices are numpy uint16 arrays of coefficient bitmasks; addition is
XOR and multiplication goes through the field's log/exp tables.  The
Gaussian-elimination and matrix-product inner loops are the hot path of
the whole package (they run on 2g x 2g matrices with 2g up to 2032), so
they are compiled with numba when available.  A pure-numpy fallback
implements the same kernels; select it by setting the environment
variable ``SUZUKICOH_BACKEND=numpy`` (``numba`` forces the jit path,
anything else / unset means "numba if importable").

``benchmarks/bench_linalg.py`` compares the two backends.

Semilinear conventions: an operator with twist e acts on column
coordinate vectors by x -> M @ (x^(2^e)) entrywise, i.e. it is
sigma^e-semilinear for the Frobenius sigma.  Images and preimages of
subspaces twist the coordinates by the field automorphism, which never
changes ranks.
"""

from __future__ import annotations

import os

import numpy as np

from .gf2m import FieldParams

_ENV_BACKEND = "SUZUKICOH_BACKEND"


def _resolve_backend():
    choice = os.environ.get(_ENV_BACKEND, "auto").lower()
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise RuntimeError("SUZUKICOH_BACKEND=numba but numba is not installed")
        return "numpy"
    return "numba"


_BACKEND = _resolve_backend()


def backend():
    """Active kernel backend, "numba" or "numpy"."""
    return _BACKEND


def set_backend(name):
    """Switch kernels at runtime (tests and benchmarks)."""
    global _BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError("backend must be 'numba' or 'numpy'")
    if name == "numba":
        import numba  # noqa: F401
    _BACKEND = name


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised via the numpy backend
    njit = None

if njit is not None:

    @njit(cache=True)
    def _rref_numba(A, logt, expt, qm1):
        m, n = A.shape
        piv_cols = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            p = -1
            for i in range(r, m):
                if A[i, c] != 0:
                    p = i
                    break
            if p == -1:
                continue
            if p != r:
                for j in range(n):
                    t = A[p, j]
                    A[p, j] = A[r, j]
                    A[r, j] = t
            # normalize pivot row
            a = A[r, c]
            if a != 1:
                inv_log = qm1 - logt[a]
                for j in range(c, n):
                    v = A[r, j]
                    if v != 0:
                        A[r, j] = expt[(logt[v] + inv_log) % qm1]
            # eliminate in all other rows
            for i in range(m):
                if i == r:
                    continue
                f = A[i, c]
                if f == 0:
                    continue
                lf = logt[f]
                for j in range(c, n):
                    v = A[r, j]
                    if v != 0:
                        A[i, j] ^= expt[(logt[v] + lf) % qm1]
            piv_cols[r] = c
            r += 1
        return piv_cols[:r].copy()

    @njit(cache=True)
    def _matmul_numba(A, B, logt, expt, qm1):
        m, k = A.shape
        n = B.shape[1]
        C = np.zeros((m, n), dtype=np.uint16)
        for i in range(m):
            for t in range(k):
                a = A[i, t]
                if a == 0:
                    continue
                la = logt[a]
                for j in range(n):
                    b = B[t, j]
                    if b != 0:
                        C[i, j] ^= expt[(la + logt[b]) % qm1]
        return C


# ---------------------------------------------------------------------------
# numpy kernels
# ---------------------------------------------------------------------------


def _rref_numpy(A, logt, expt, qm1):
    m, n = A.shape
    piv_cols = []
    r = 0
    for c in range(n):
        if r == m:
            break
        col = A[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[p, r]] = A[[r, p]]
        a = int(A[r, c])
        if a != 1:
            inv = expt[qm1 - logt[a]]
            row = A[r]
            mask = row != 0
            row[mask] = expt[(logt[row[mask]] + int(logt[inv])) % qm1]
        factors = A[:, c].copy()
        factors[r] = 0
        rows = np.nonzero(factors)[0]
        if rows.size:
            lf = logt[factors[rows]]
            prow = A[r]
            pmask = prow != 0
            pl = logt[prow[pmask]]
            upd = expt[(lf[:, None] + pl[None, :]) % qm1].astype(np.uint16)
            sub = A[np.ix_(rows, np.nonzero(pmask)[0])]
            A[np.ix_(rows, np.nonzero(pmask)[0])] = sub ^ upd
        piv_cols.append(c)
        r += 1
    return np.asarray(piv_cols, dtype=np.int64)


def _matmul_numpy(A, B, logt, expt, qm1):
    m, k = A.shape
    n = B.shape[1]
    C = np.zeros((m, n), dtype=np.uint16)
    logB = np.where(B != 0, logt[B], 0)
    for t in range(k):
        col = A[:, t]
        rows = np.nonzero(col)[0]
        if rows.size == 0:
            continue
        bmask = B[t] != 0
        if not np.any(bmask):
            continue
        la = logt[col[rows]]
        lb = logB[t][bmask]
        upd = expt[(la[:, None] + lb[None, :]) % qm1].astype(np.uint16)
        sub = C[np.ix_(rows, np.nonzero(bmask)[0])]
        C[np.ix_(rows, np.nonzero(bmask)[0])] = sub ^ upd
    return C


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------


def rref(A, field):
    """Reduced row echelon form. Returns (R, pivot_columns); A is not modified."""
    R = np.array(A, dtype=np.uint16, copy=True)
    if R.size == 0:
        return R, np.zeros(0, dtype=np.int64)
    if _BACKEND == "numba":
        piv = _rref_numba(R, field.log_np, field.exp_np, field.q - 1)
    else:
        piv = _rref_numpy(R, field.log_np, field.exp_np, field.q - 1)
    return R, piv


def rank(A, field):
    _, piv = rref(A, field)
    return len(piv)


def matmul(A, B, field):
    A = np.asarray(A, dtype=np.uint16)
    B = np.asarray(B, dtype=np.uint16)
    if A.shape[1] != B.shape[0]:
        raise ValueError("shape mismatch in matmul")
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.uint16)
    if _BACKEND == "numba":
        return _matmul_numba(A, B, field.log_np, field.exp_np, field.q - 1)
    return _matmul_numpy(A, B, field.log_np, field.exp_np, field.q - 1)


def frob_entrywise(A, field, k):
    """Apply x -> x^(2^k) to every entry (a field automorphism)."""
    return field.frob_np[k % field.n][np.asarray(A, dtype=np.uint16)]


def mat_vec(A, x, field):
    return matmul(A, np.asarray(x, dtype=np.uint16).reshape(-1, 1), field).ravel()


def kernel(A, field):
    """Basis (rows) of the right kernel {x : A @ x = 0}."""
    A = np.asarray(A, dtype=np.uint16)
    m, n = A.shape
    R, piv = rref(A, field)
    piv = list(piv)
    free = [j for j in range(n) if j not in piv]
    basis = np.zeros((len(free), n), dtype=np.uint16)
    for bi, j in enumerate(free):
        basis[bi, j] = 1
        for ri, pc in enumerate(piv):
            basis[bi, pc] = R[ri, j]  # char 2: -a = a
    return basis


def solve(A, b, field):
    """One solution x of A @ x = b, or None if inconsistent."""
    A = np.asarray(A, dtype=np.uint16)
    b = np.asarray(b, dtype=np.uint16).reshape(-1, 1)
    aug = np.hstack([A, b])
    R, piv = rref(aug, field)
    n = A.shape[1]
    if any(pc == n for pc in piv):
        return None
    x = np.zeros(n, dtype=np.uint16)
    for ri, pc in enumerate(piv):
        x[pc] = R[ri, n]
    return x


def inverse(A, field):
    A = np.asarray(A, dtype=np.uint16)
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("inverse of a non-square matrix")
    aug = np.hstack([A, np.eye(n, dtype=np.uint16)])
    R, piv = rref(aug, field)
    if len(piv) < n or any(pc >= n for pc in piv[:n]):
        raise ValueError("matrix is singular")
    return R[:, n:].copy()


# -- subspaces (rows of an RREF matrix span the space) ----------------------


def row_space(A, field):
    """Canonical RREF basis of the row space (zero rows dropped)."""
    R, piv = rref(A, field)
    return R[: len(piv)].copy()


def subspace_key(B):
    """Hashable canonical key for an RREF basis."""
    return (B.shape[1], B.tobytes())


def subspace_sum(B1, B2, field):
    if B1.shape[0] == 0:
        return row_space(B2, field)
    if B2.shape[0] == 0:
        return row_space(B1, field)
    return row_space(np.vstack([B1, B2]), field)


def annihilator(B, n, field):
    """Basis of {e : B @ e = 0}, the linear functionals vanishing on rows(B)."""
    if B.shape[0] == 0:
        return np.eye(n, dtype=np.uint16)
    return row_space(kernel(B, field), field)


def subspace_intersect(B1, B2, n, field):
    E = np.vstack([annihilator(B1, n, field), annihilator(B2, n, field)])
    return row_space(kernel(E, field), field)


def subspace_contains(B, v, field):
    """Is the vector v in the row space of the RREF basis B?"""
    if not np.any(v):
        return True
    if B.shape[0] == 0:
        return False
    R, piv = rref(np.vstack([B, v.reshape(1, -1)]), field)
    return len(piv) == B.shape[0]


def subspace_leq(B1, B2, field):
    if B1.shape[0] == 0:
        return True
    if B1.shape[0] > B2.shape[0]:
        return False
    R, piv = rref(np.vstack([B2, B1]), field)
    return len(piv) == B2.shape[0]


class SemilinearOp:
    """A matrix over GF(2^n) tagged with a Frobenius-twist exponent.

    Acts on column coordinate vectors by x -> matrix @ x^(2^twist)
    (entrywise power), so twist +1 is Frobenius-semilinear and twist -1
    is inverse-Frobenius-semilinear.  twist 0 is plain linear.
    """

    def __init__(self, field, matrix, twist):
        self.field = field
        self.matrix = np.asarray(matrix, dtype=np.uint16)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise ValueError("SemilinearOp expects a square matrix")
        self.twist = int(twist)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __call__(self, x):
        xt = frob_entrywise(np.asarray(x, dtype=np.uint16), self.field, self.twist)
        return mat_vec(self.matrix, xt, self.field)

    def compose(self, other):
        """self after other; twists add, matrices compose with a twist."""
        if self.field != other.field:
            raise ValueError("mixed fields")
        m = matmul(self.matrix, frob_entrywise(other.matrix, self.field, self.twist), self.field)
        return SemilinearOp(self.field, m, self.twist + other.twist)

    def image_of(self, B):
        """Row basis of the image of the row space of B."""
        Bt = frob_entrywise(B, self.field, self.twist)
        return row_space(matmul(Bt, self.matrix.T, self.field), self.field)

    def preimage_of(self, B):
        """Row basis of {x : self(x) in rowspace(B)}."""
        n = self.dim
        E = annihilator(B, n, self.field)
        pre_tw = kernel(matmul(E, self.matrix, self.field), self.field)
        return row_space(frob_entrywise(pre_tw, self.field, -self.twist), self.field)

    def kernel_space(self):
        ker_tw = kernel(self.matrix, self.field)
        return row_space(frob_entrywise(ker_tw, self.field, -self.twist), self.field)

    def __eq__(self, other):
        return (
            isinstance(other, SemilinearOp)
            and self.field == other.field
            and self.twist == other.twist
            and self.matrix.shape == other.matrix.shape
            and bool(np.all(self.matrix == other.matrix))
        )

    def __repr__(self):
        return "SemilinearOp(dim=%d, twist=%+d)" % (self.dim, self.twist)
