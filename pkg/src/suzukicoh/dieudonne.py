"""Semilinear (F, V)-module analysis over GF(2^n).

An E-module here is a finite-dimensional space with a Frobenius-
semilinear F (twist +1) and an inverse-Frobenius-semilinear V
(twist -1) satisfying FV = VF = 0, optionally carrying a diagonalizable
torus action of order q-1 that commutes with both.  From it we compute

* a-number  = dim(ker F  intersect  ker V),
* 2-rank    = dimension of the stable image of F,
* the canonical filtration (smallest flag stable under V and F^-1),
* the Ekedahl-Oort type [nu_1..nu_g],
* the decomposition into indecomposables via the block permutation:
  on each canonical-filtration block V is zero or injective, V-moves and
  F^-1-moves permute the blocks, and each orbit spells a cyclic word in
  {F^-1, V} whose module E(w) occurs with multiplicity = block
  dimension.

When a torus action is present, F and V shift its eigenvalue exponents
by w -> 2w and w -> w/2 (mod q-1), so every object in sight is graded
by exponent and all linear algebra happens in blocks of size
dim/(q-1)-ish instead of dim.  Modules without a torus run through the
same code with the trivial grading.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import SemilinearOp
from .suzuki_ff import ConsistencyError


# ---------------------------------------------------------------------------
# the module and its grading
# ---------------------------------------------------------------------------


class EModule:
    """A (F, V)-module, optionally graded by torus-eigenvalue exponents."""

    def __init__(self, field, F, V, tau=None, weights=None, validate=True):
        if not isinstance(F, SemilinearOp):
            F = SemilinearOp(field, F, +1)
        if not isinstance(V, SemilinearOp):
            V = SemilinearOp(field, V, -1)
        if F.twist != 1 or V.twist != -1:
            raise ValueError("F must have twist +1 and V twist -1")
        if F.dim != V.dim:
            raise ValueError("F and V dimensions differ")
        self.field = field
        self.F = F
        self.V = V
        self.tau = tau
        self.dim = F.dim
        self.qm1 = field.q - 1 if field.q > 2 else 1
        if weights is None and tau is not None:
            weights = _diagonal_weights(field, tau)
        if weights is None:
            weights = np.zeros(self.dim, dtype=np.int64)
        self.weights = np.asarray(weights, dtype=np.int64) % self.qm1
        self._inv2 = (self.qm1 + 1) // 2
        self.block_index = {}
        for w in sorted(set(int(x) for x in self.weights)):
            self.block_index[w] = np.nonzero(self.weights == w)[0]
        self._fblocks = {}
        self._vblocks = {}
        if validate:
            self._validate()

    # weight arithmetic ----------------------------------------------------

    def wdouble(self, w):
        return (2 * w) % self.qm1

    def whalf(self, w):
        return (w * self._inv2) % self.qm1

    def _op_block(self, cache, mat, w, wout):
        key = w
        if key not in cache:
            rows = self.block_index.get(wout, np.zeros(0, dtype=np.int64))
            cols = self.block_index[w]
            cache[key] = mat[np.ix_(rows, cols)] if rows.size else np.zeros((0, cols.size), dtype=np.uint16)
        return cache[key]

    def fblock(self, w):
        return self._op_block(self._fblocks, self.F.matrix, w, self.wdouble(w))

    def vblock(self, w):
        return self._op_block(self._vblocks, self.V.matrix, w, self.whalf(w))

    def _validate(self):
        # operators must respect the grading
        for mat, shift, name in (
            (self.F.matrix, self.wdouble, "F"),
            (self.V.matrix, self.whalf, "V"),
        ):
            for w, cols in self.block_index.items():
                rows_ok = self.block_index.get(shift(w), np.zeros(0, dtype=np.int64))
                sub = mat[:, cols]
                nz_rows = np.nonzero(sub.any(axis=1))[0]
                if not np.isin(nz_rows, rows_ok).all():
                    raise ConsistencyError("%s does not shift weights as expected" % name)
        # FV = VF = 0, checked blockwise
        F_ = self.field
        for w in self.block_index:
            # F(V(block w)): V: w -> w/2 with coords frob^-1; F twists by +1
            fv = linalg.matmul(
                self.fblock(self.whalf(w)),
                linalg.frob_entrywise(self.vblock(w), F_, +1),
                F_,
            )
            vf = linalg.matmul(
                self.vblock(self.wdouble(w)),
                linalg.frob_entrywise(self.fblock(w), F_, -1),
                F_,
            )
            if fv.any() or vf.any():
                raise ConsistencyError("FV = VF = 0 fails")

    def __repr__(self):
        return "EModule(dim=%d, q=%d, graded=%s)" % (
            self.dim,
            self.field.q,
            self.qm1 > 1 and len(self.block_index) > 1,
        )


def _diagonal_weights(field, tau):
    """Exponent vector when tau is diagonal; None triggers the general path."""
    mat = tau.matrix if isinstance(tau, SemilinearOp) else np.asarray(tau)
    if not np.all(mat == np.diag(np.diagonal(mat))):
        return None
    diag = np.diagonal(mat)
    if np.any(diag == 0):
        raise ValueError("tau must be invertible")
    return np.array([field.dlog(int(x)) for x in diag], dtype=np.int64)


# ---------------------------------------------------------------------------
# graded subspaces
# ---------------------------------------------------------------------------


def _canon(space):
    return {w: B for w, B in space.items() if B.shape[0]}


def _zero_space():
    return {}


def _full_space(M):
    return _canon(
        {w: np.eye(idx.size, dtype=np.uint16) for w, idx in M.block_index.items()}
    )


def space_dim(S):
    return sum(B.shape[0] for B in S.values())


def space_key(S):
    return tuple(sorted((w, B.tobytes()) for w, B in S.items()))


def space_leq(M, S1, S2):
    for w, B in S1.items():
        B2 = S2.get(w)
        if B2 is None or not linalg.subspace_leq(B, B2, M.field):
            return False
    return True


def space_sum(M, S1, S2):
    out = dict(S1)
    for w, B in S2.items():
        out[w] = linalg.subspace_sum(out.get(w, B[:0]), B, M.field) if w in out else B
    return _canon(out)


def space_intersect(M, S1, S2):
    out = {}
    for w, B in S1.items():
        B2 = S2.get(w)
        if B2 is None:
            continue
        n = M.block_index[w].size
        out[w] = linalg.subspace_intersect(B, B2, n, M.field)
    return _canon(out)


def image_V(M, S):
    out = {}
    F = M.field
    for w, B in S.items():
        img = linalg.row_space(
            linalg.matmul(linalg.frob_entrywise(B, F, -1), M.vblock(w).T, F), F
        )
        wout = M.whalf(w)
        if img.shape[0]:
            out[wout] = linalg.subspace_sum(out.get(wout, img[:0]), img, F) if wout in out else img
    return _canon(out)


def image_F(M, S):
    out = {}
    F = M.field
    for w, B in S.items():
        img = linalg.row_space(
            linalg.matmul(linalg.frob_entrywise(B, F, +1), M.fblock(w).T, F), F
        )
        wout = M.wdouble(w)
        if img.shape[0]:
            out[wout] = linalg.subspace_sum(out.get(wout, img[:0]), img, F) if wout in out else img
    return _canon(out)


def preimage_F(M, S):
    """{x : F(x) in S}; contains ker F."""
    out = {}
    F = M.field
    for w, idx in M.block_index.items():
        blk = M.fblock(w)
        wout = M.wdouble(w)
        target = S.get(wout, blk[:0, :0])
        if target.shape[0] == 0:
            pre_tw = linalg.kernel(blk, F)
        else:
            E = linalg.annihilator(target, M.block_index[wout].size, F)
            pre_tw = linalg.kernel(linalg.matmul(E, blk, F), F)
        pre = linalg.row_space(linalg.frob_entrywise(pre_tw, F, -1), F)
        if pre.shape[0]:
            out[w] = pre
    return _canon(out)


def kernel_F(M):
    return preimage_F(M, _zero_space())


def kernel_V(M):
    out = {}
    F = M.field
    for w in M.block_index:
        ker_tw = linalg.kernel(M.vblock(w), F)
        ker = linalg.row_space(linalg.frob_entrywise(ker_tw, F, +1), F)
        if ker.shape[0]:
            out[w] = ker
    return _canon(out)


def space_to_dense(M, S):
    """Rows of a global RREF basis (block-embedded, sorted by pivot)."""
    rows = []
    for w, B in S.items():
        idx = M.block_index[w]
        for r in B:
            v = np.zeros(M.dim, dtype=np.uint16)
            v[idx] = r
            rows.append(v)
    if not rows:
        return np.zeros((0, M.dim), dtype=np.uint16)
    mat = np.vstack(rows)
    leads = [int(np.nonzero(r)[0][0]) for r in mat]
    return mat[np.argsort(leads, kind="stable")]


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


def check_fv_zero(M):
    """FV = VF = 0, verified block by block (cheap even at dim 2032)."""
    F_ = M.field
    for w in M.block_index:
        fv = linalg.matmul(
            M.fblock(M.whalf(w)), linalg.frob_entrywise(M.vblock(w), F_, +1), F_
        )
        vf = linalg.matmul(
            M.vblock(M.wdouble(w)), linalg.frob_entrywise(M.fblock(w), F_, -1), F_
        )
        if fv.any() or vf.any():
            return False
    return True


def a_number(M):
    """dim(ker F intersect ker V)."""
    return space_dim(space_intersect(M, kernel_F(M), kernel_V(M)))


def p_rank(M):
    """Dimension of the stable image of F (the etale part)."""
    S = _full_space(M)
    while True:
        nxt = image_F(M, S)
        if space_dim(nxt) == space_dim(S):
            return space_dim(S)
        S = nxt


@dataclass
class Filtration:
    """Canonical filtration: subspace bases, dimensions, V-image dims."""

    dims: list
    nus: list
    bases: list  # dense RREF row bases

    def __len__(self):
        return len(self.dims)


def _canonical_filtration_spaces(M):
    """All members of the smallest flag stable under V and F^-1, sorted."""
    cached = getattr(M, "_filtration_cache", None)
    if cached is not None:
        return cached
    seen = {}
    for S in (_zero_space(), _full_space(M)):
        seen[space_key(S)] = S
    work = list(seen.values())
    while work:
        S = work.pop()
        for nxt in (image_V(M, S), preimage_F(M, S)):
            k = space_key(nxt)
            if k not in seen:
                seen[k] = nxt
                work.append(nxt)
    spaces = sorted(seen.values(), key=space_dim)
    for i in range(len(spaces) - 1):
        if space_dim(spaces[i]) == space_dim(spaces[i + 1]) or not space_leq(
            M, spaces[i], spaces[i + 1]
        ):
            raise ConsistencyError("canonical filtration is not totally ordered")
    M._filtration_cache = spaces
    return spaces


def canonical_filtration(M):
    spaces = _canonical_filtration_spaces(M)
    dims = [space_dim(S) for S in spaces]
    nus = [space_dim(image_V(M, S)) for S in spaces]
    bases = [space_to_dense(M, S) for S in spaces]
    return Filtration(dims, nus, bases)


def eo_type(M):
    """[nu_1..nu_g]: V-image dimensions along a final filtration.

    The canonical filtration pins nu at its break dimensions; inside a
    block nu climbs by 1 per step when V is injective on the block and
    is flat when V kills the block.
    """
    if M.dim % 2:
        raise ValueError("EO type needs an even-dimensional module")
    g = M.dim // 2
    spaces = _canonical_filtration_spaces(M)
    dims = [space_dim(S) for S in spaces]
    nus = [space_dim(image_V(M, S)) for S in spaces]
    nu = [0] * (g + 1)
    for j in range(1, len(spaces)):
        lo, hi = dims[j - 1], dims[j]
        rise = nus[j] - nus[j - 1]
        if rise not in (0, hi - lo):
            raise ConsistencyError("V is neither zero nor injective on a block")
        for i in range(lo + 1, min(hi, g) + 1):
            nu[i] = nus[j - 1] + (i - lo) if rise else nus[j - 1]
        if hi >= g:
            break
    return nu[1:]


# ---------------------------------------------------------------------------
# decomposition into indecomposables (cyclic words)
# ---------------------------------------------------------------------------


def canonical_word(word):
    """Lexicographically minimal rotation ('f' < 'v')."""
    rots = [word[i:] + word[:i] for i in range(len(word))]
    return min(rots)


def word_from_runs(runs):
    """Cyclic word from [(v_len, f_len), ...] around the cycle."""
    return canonical_word("".join("v" * a + "f" * b for a, b in runs))


def word_a_number(word):
    """Number of maximal v-runs (0 for the pure etale/toric words)."""
    if "f" not in word or "v" not in word:
        return 0
    n = len(word)
    return sum(1 for i in range(n) if word[i] == "v" and word[i - 1] == "f")


def word_presentation(word):
    """Generator/relation form of E(w)."""
    if "v" not in word:
        return "etale(%d)" % len(word)
    if "f" not in word:
        return "multiplicative(%d)" % len(word)
    w = canonical_word(word)
    # rotate so the word starts at a peak (a v preceded by f): canonical
    # form starts with 'f', so the first peak is the first 'v'.
    start = w.index("v")
    w = w[start:] + w[:start]
    runs = []
    i = 0
    n = len(w)
    while i < n:
        j = i
        while j < n and w[j] == "v":
            j += 1
        k = j
        while k < n and w[k] == "f":
            k += 1
        runs.append((j - i, k - j))
        i = k
    if len(runs) == 1 and runs[0][0] == runs[0][1]:
        return "E/E(F^%d+V^%d)" % runs[0]
    parts = []
    r = len(runs)
    for idx, (a, b) in enumerate(runs):
        parts.append("V^%d X%d = F^%d X%d" % (a, idx + 1, b, (idx + 1) % r + 1))
    return "E(%s | %s)" % (
        ", ".join("X%d" % (i + 1) for i in range(r)),
        "; ".join(parts),
    )


@dataclass
class Summand:
    word: str
    rank: int
    multiplicity: int
    a_number: int
    presentation: str

    def to_json(self):
        return {
            "word": self.word,
            "rank": self.rank,
            "multiplicity": self.multiplicity,
            "a_number": self.a_number,
            "presentation": self.presentation,
        }


@dataclass
class Decomposition:
    summands: list

    def to_json(self):
        return [s.to_json() for s in self.summands]

    def total_dim(self):
        return sum(s.rank * s.multiplicity for s in self.summands)

    def total_a_number(self):
        return sum(s.a_number * s.multiplicity for s in self.summands)

    def multiplicity_of(self, word):
        word = canonical_word(word)
        for s in self.summands:
            if s.word == word:
                return s.multiplicity
        return 0

    def as_multiset(self):
        return sorted((s.word, s.multiplicity) for s in self.summands)

    def __str__(self):
        bits = []
        for s in self.summands:
            p = s.presentation
            bits.append(p if s.multiplicity == 1 else "(%s)^%d" % (p, s.multiplicity))
        return " + ".join(bits) or "0"


def decompose(M):
    """Indecomposable decomposition via the block permutation.

    Pure F-cycles (etale) and pure V-cycles (toric) are emitted as their
    own summands when the 2-rank is positive; for 2-rank zero every word
    contains both letters.
    """
    spaces = _canonical_filtration_spaces(M)
    dims = [space_dim(S) for S in spaces]
    pos_of = {space_key(S): i for i, S in enumerate(spaces)}
    z = len(spaces) - 1
    vimgs = [image_V(M, S) for S in spaces]
    letters = {}
    target = {}
    for i in range(1, z + 1):
        bdim = dims[i] - dims[i - 1]
        vi = vimgs[i]
        vim1 = vimgs[i - 1]
        if space_dim(vi) > space_dim(vim1):
            if space_dim(vi) - space_dim(vim1) != bdim:
                raise ConsistencyError("V-image of a block is not a block")
            j = pos_of[space_key(vi)]
            if pos_of[space_key(vim1)] != j - 1:
                raise ConsistencyError("V does not map blocks to blocks")
            letters[i] = "v"
            target[i] = j
        else:
            fi = preimage_F(M, spaces[i])
            fim1 = preimage_F(M, spaces[i - 1])
            if space_dim(fi) - space_dim(fim1) != bdim:
                raise ConsistencyError("F-preimage of a block is not a block")
            j = pos_of[space_key(fi)]
            if pos_of[space_key(fim1)] != j - 1:
                raise ConsistencyError("F^-1 does not map blocks to blocks")
            letters[i] = "f"
            target[i] = j
    # orbits of the permutation
    seen = set()
    counts = {}
    for i0 in range(1, z + 1):
        if i0 in seen:
            continue
        orbit = []
        i = i0
        while i not in seen:
            seen.add(i)
            orbit.append(i)
            i = target[i]
        if i != i0:
            raise ConsistencyError("block permutation has a non-cyclic orbit")
        odims = {dims[i] - dims[i - 1] for i in orbit}
        if len(odims) != 1:
            raise ConsistencyError("blocks in one orbit have unequal dimensions")
        word = canonical_word("".join(letters[i] for i in orbit))
        counts[word] = counts.get(word, 0) + odims.pop()
    summands = [
        Summand(w, len(w), mult, word_a_number(w), word_presentation(w))
        for w, mult in counts.items()
    ]
    summands.sort(key=lambda s: (s.rank, s.word))
    dec = Decomposition(summands)
    if dec.total_dim() != M.dim:
        raise ConsistencyError("decomposition does not exhaust the module")
    return dec


# ---------------------------------------------------------------------------
# torus splitting
# ---------------------------------------------------------------------------


def tau_split(M):
    """(M_0, M_nonzero, eigenvalue-exponent multiplicities) under tau.

    tau must be present with tau^(q-1) = 1; its eigenspaces refine the
    module since F and V double / halve the exponents.
    """
    if M.tau is None:
        raise ValueError("module carries no torus action")
    Mg = M if _weights_match_tau(M) else _diagonalize_tau(M)
    weights = Mg.weights
    mults = {}
    for w in weights:
        mults[int(w)] = mults.get(int(w), 0) + 1
    zero_idx = np.nonzero(weights == 0)[0]
    nonzero_idx = np.nonzero(weights != 0)[0]
    return (
        _restrict(Mg, zero_idx),
        _restrict(Mg, nonzero_idx),
        dict(sorted(mults.items())),
    )


def _weights_match_tau(M):
    F = M.field
    mat = M.tau.matrix if isinstance(M.tau, SemilinearOp) else np.asarray(M.tau)
    if not np.all(mat == np.diag(np.diagonal(mat))):
        return False
    diag = np.diagonal(mat)
    want = np.array([F.pow(F.zeta, int(w)) for w in M.weights], dtype=np.uint16)
    return bool(np.all(diag == want))


def _diagonalize_tau(M):
    """Change basis so that tau is diagonal; returns a graded EModule."""
    F = M.field
    mat = M.tau.matrix if isinstance(M.tau, SemilinearOp) else np.asarray(M.tau)
    qm1 = M.qm1
    power = np.eye(M.dim, dtype=np.uint16)
    for _ in range(qm1):
        power = linalg.matmul(mat, power, F)
    if not np.all(power == np.eye(M.dim, dtype=np.uint16)):
        raise ValueError("tau does not have order dividing q-1")
    rows = []
    weights = []
    for w in range(qm1):
        lam = F.pow(F.zeta, w)
        shifted = mat ^ (lam * np.eye(M.dim, dtype=np.uint16).astype(np.uint16))
        eig = linalg.kernel(shifted, F)
        for r in eig:
            rows.append(r)
            weights.append(w)
    P = np.vstack(rows).T.astype(np.uint16)  # columns = eigenbasis
    if P.shape[1] != M.dim:
        raise ValueError("tau is not diagonalizable over this field")
    Pinv = linalg.inverse(P, F)
    Fmat = linalg.matmul(
        linalg.matmul(Pinv, M.F.matrix, F), linalg.frob_entrywise(P, F, +1), F
    )
    Vmat = linalg.matmul(
        linalg.matmul(Pinv, M.V.matrix, F), linalg.frob_entrywise(P, F, -1), F
    )
    taud = np.zeros_like(mat)
    for i, w in enumerate(weights):
        taud[i, i] = F.pow(F.zeta, w)
    return EModule(
        F,
        SemilinearOp(F, Fmat, +1),
        SemilinearOp(F, Vmat, -1),
        tau=SemilinearOp(F, taud, 0),
        weights=np.asarray(weights),
    )


def _restrict(M, idx):
    F = M.field
    sel = np.asarray(idx, dtype=np.int64)
    Fmat = M.F.matrix[np.ix_(sel, sel)]
    Vmat = M.V.matrix[np.ix_(sel, sel)]
    tau = None
    if M.tau is not None:
        tmat = (M.tau.matrix if isinstance(M.tau, SemilinearOp) else M.tau)[np.ix_(sel, sel)]
        tau = SemilinearOp(F, tmat, 0)
    return EModule(
        F,
        SemilinearOp(F, Fmat, +1),
        SemilinearOp(F, Vmat, -1),
        tau=tau,
        weights=M.weights[sel],
    )


# ---------------------------------------------------------------------------
# constructions for tests and models
# ---------------------------------------------------------------------------


def module_from_word(field, word):
    """The cyclic-word module E(w): basis e_i around the cycle."""
    L = len(word)
    Fm = np.zeros((L, L), dtype=np.uint16)
    Vm = np.zeros((L, L), dtype=np.uint16)
    for i, ch in enumerate(word):
        j = (i + 1) % L
        if ch == "v":
            Vm[j, i] = 1
        else:
            Fm[i, j] = 1
    return EModule(field, SemilinearOp(field, Fm, +1), SemilinearOp(field, Vm, -1))


def direct_sum(modules):
    field = modules[0].field
    dim = sum(m.dim for m in modules)
    Fm = np.zeros((dim, dim), dtype=np.uint16)
    Vm = np.zeros((dim, dim), dtype=np.uint16)
    off = 0
    for m in modules:
        Fm[off : off + m.dim, off : off + m.dim] = m.F.matrix
        Vm[off : off + m.dim, off : off + m.dim] = m.V.matrix
        off += m.dim
    return EModule(field, SemilinearOp(field, Fm, +1), SemilinearOp(field, Vm, -1))
