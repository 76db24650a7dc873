"""The published m = 1 Frobenius/Verschiebung action table, verified.

The table lists V and F on 28 vectors: 14 lambda(g) rows and 14 psi(f)
rows in the "convenient" basis (single elements plus five 2-term
combinations chosen so every image is a single basis vector).

What is checkable exactly and what is not: lambda rows and the
H^1(O)-components of psi-row images are independent of how df is split
between the two charts, so they must match on the nose.  The
lambda-components of psi-row images shift by lambda(C(s_t)) (V rows)
and by the matching linear combination of s_u (F rows) when the
published split differs from the canonical cone split by global
regular differentials s_t.  The published computations demonstrably
mix split conventions between rows, so the verifier classifies each
row as

* ``exact``          - equal as printed,
* ``section_shift``  - equal for some choice of splits {s_t}, checked
                       globally by solving one GF(2)-linear system,
* ``mismatch``       - not explainable by any split (a genuine
                       discrepancy; one such F row is known, printed
                       with the same image as another row).
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .gf2m import field_f2
from .cohomology import DeRhamSpace, frobenius_matrix, tau_matrix, verschiebung_matrix

# the published "convenient" bases: combinations of index tuples
NEW_BASIS_COMBOS = [
    ((0, 0, 0, 0),),
    ((2, 0, 0, 0),),
    ((0, 1, 0, 0), (3, 0, 0, 0)),
    ((2, 1, 0, 0), (0, 0, 1, 0)),
    ((0, 0, 0, 1), (1, 0, 1, 0)),
    ((1, 0, 0, 0),),
    ((2, 1, 0, 0),),
    ((1, 0, 0, 1),),
    ((0, 0, 1, 1),),
    ((1, 0, 1, 0),),
    ((3, 0, 0, 0),),
    ((1, 1, 0, 0),),
    ((0, 1, 1, 0),),
    ((0, 1, 0, 1),),
]

_L = "lam"
_P = "psi"

# 28 published rows: (kind, input combo, V image or None, F image or None)
ACTION_TABLE = [
    (_L, ((0, 0, 0, 0),), None, None),
    (_L, ((2, 0, 0, 0),), None, None),
    (_L, ((0, 1, 0, 0), (3, 0, 0, 0)), None, None),
    (_L, ((2, 1, 0, 0), (0, 0, 1, 0)), None, None),
    (_L, ((0, 0, 0, 1), (1, 0, 1, 0)), None, None),
    (_L, ((1, 0, 0, 0),), (_L, ((0, 0, 0, 0),)), None),
    (_L, ((0, 0, 1, 0),), (_L, ((2, 0, 0, 0),)), None),
    (_L, ((1, 0, 0, 1),), (_L, ((0, 1, 0, 0), (3, 0, 0, 0))), None),
    (_L, ((0, 0, 1, 1),), (_L, ((2, 1, 0, 0), (0, 0, 1, 0))), None),
    (_L, ((1, 0, 1, 0),), (_L, ((0, 0, 0, 1), (1, 0, 1, 0))), None),
    (_L, ((0, 1, 0, 0),), (_L, ((1, 0, 0, 0),)), None),
    (_L, ((1, 1, 0, 0),), (_L, ((0, 0, 1, 0),)), None),
    (_L, ((0, 1, 1, 0),), (_L, ((1, 0, 0, 1),)), None),
    (_L, ((0, 1, 0, 1),), (_L, ((0, 0, 1, 1),)), None),
    (_P, ((0, 1, 0, 1),), None, (_L, ((0, 0, 0, 0),))),
    (_P, ((0, 1, 1, 0),), None, (_L, ((2, 0, 0, 0),))),
    (_P, ((1, 1, 0, 0),), None, (_L, ((0, 1, 0, 0), (3, 0, 0, 0)))),
    (_P, ((0, 1, 0, 0), (3, 0, 0, 0)), None, (_L, ((2, 1, 0, 0), (0, 0, 1, 0)))),
    (_P, ((0, 0, 0, 1), (1, 0, 1, 0)), None, (_L, ((0, 0, 0, 1), (1, 0, 1, 0)))),
    (_P, ((0, 0, 1, 1),), None, (_P, ((0, 1, 0, 1),))),
    (_P, ((1, 0, 0, 1),), None, (_P, ((0, 1, 1, 0),))),
    (_P, ((2, 1, 0, 0), (0, 0, 1, 0)), None, (_P, ((1, 1, 0, 0),))),
    (_P, ((1, 0, 0, 0),), None, (_P, ((0, 1, 1, 0),))),  # known discrepancy
    (_P, ((1, 0, 1, 0),), (_L, ((1, 0, 1, 0),)), (_P, ((0, 0, 0, 1), (1, 0, 1, 0)))),
    (_P, ((2, 1, 0, 0),), (_L, ((0, 1, 0, 0),)), (_P, ((0, 0, 1, 1),))),
    (_P, ((3, 0, 0, 0),), (_L, ((1, 1, 0, 0),)), (_P, ((1, 0, 0, 1),))),
    (_P, ((2, 0, 0, 0),), (_L, ((0, 1, 1, 0),)), (_P, ((2, 1, 0, 0), (0, 0, 1, 0)))),
    (_P, ((0, 0, 0, 0),), (_L, ((0, 1, 0, 1),)), (_P, ((1, 0, 0, 0),))),
]


def _tuple_str(t):
    return "(%s)" % ",".join(str(x) for x in t)


def _combo_str(kind, combo):
    sym = "f_" if kind == _P else "g_"
    inner = "+".join(sym + _tuple_str(t) for t in combo)
    return "%s(%s)" % ("psi" if kind == _P else "lambda", inner)


def _vec(space, kind, combo):
    v = np.zeros(space.dim, dtype=np.uint16)
    for t in combo:
        v[space.index[t] + (0 if kind == _P else space.g)] ^= 1
    return v


def _expected_vec(space, image):
    if image is None:
        return np.zeros(space.dim, dtype=np.uint16)
    kind, combo = image
    return _vec(space, kind, combo)


class _Bits:
    """GF(2)-linearization of GF(q)-vectors (bit-planes of coordinates)."""

    def __init__(self, field, length):
        self.field = field
        self.n = field.n
        self.length = length
        self.width = length * self.n

    def to_bits(self, vec):
        out = np.zeros(self.width, dtype=np.uint16)
        for i, c in enumerate(vec):
            for k in range(self.n):
                if (int(c) >> k) & 1:
                    out[i * self.n + k] = 1
        return out

    def map_matrix(self, func):
        """GF(2) matrix of a GF(2)-linear map on coordinate vectors."""
        cols = []
        for i in range(self.length):
            for k in range(self.n):
                e = np.zeros(self.length, dtype=np.uint16)
                e[i] = 1 << k
                cols.append(self.to_bits(func(e)))
        return np.array(cols, dtype=np.uint16).T


def verify_action_table(params, space=None, Fop=None, Vop=None):
    """Recompute the 28 published rows and classify each one.

    Returns {"rows": [...], "section_shift_consistent": bool,
    "mismatch_rows": [...]}.  The GF(2) solve also covers all exact
    rows (their shift contribution is forced to something compatible),
    so consistency means: one global choice of chart splits makes every
    non-mismatch row equal to print.
    """
    if params.m != 1:
        raise ValueError("the published action table is for m = 1")
    space = space or DeRhamSpace(params)
    Fop = Fop or frobenius_matrix(params, space)
    Vop = Vop or verschiebung_matrix(params, space)
    F = params.field
    g = space.g

    rows = []
    v_deltas = {}  # row index -> (combo, delta lambda-vector)
    f_eqs = []  # (psi-coeff map {tuple: coeff}, delta lambda-vector)
    mismatch_rows = []
    for ridx, (kind, combo, v_img, f_img) in enumerate(ACTION_TABLE, start=1):
        x = _vec(space, kind, combo)
        report = {"row": ridx, "input": _combo_str(kind, combo)}
        for opname, op, image in (("V", Vop, v_img), ("F", Fop, f_img)):
            comp = op(x)
            exp = _expected_vec(space, image)
            if np.array_equal(comp, exp):
                verdict = "exact"
            elif kind == _L:
                verdict = "mismatch"  # lambda rows are split-independent
            elif np.array_equal(comp[:g], exp[:g]):
                verdict = "section_shift"
            else:
                verdict = "mismatch"
            delta = (comp[g:] ^ exp[g:]).astype(np.uint16)
            report[opname] = {
                "printed": _combo_str(*image) if image else "0",
                "computed": _class_str(space, comp),
                "verdict": verdict,
            }
            if verdict == "mismatch":
                mismatch_rows.append((ridx, opname))
            if kind == _P and verdict != "mismatch":
                if opname == "V":
                    v_deltas[ridx] = (combo, delta)
                else:
                    coeffs = {space.tuples[i]: int(comp[i]) for i in range(g) if comp[i]}
                    f_eqs.append((coeffs, delta))
        rows.append(report)

    consistent = _shifts_consistent(space, Vop, v_deltas, f_eqs)
    return {
        "rows": rows,
        "section_shift_consistent": consistent,
        "mismatch_rows": mismatch_rows,
    }


def _class_str(space, vec):
    parts = []
    for i, c in enumerate(vec):
        if c:
            kind, t = space.label(i)
            cs = "" if c == 1 else "%d*" % int(c)
            name = "psi(f_" if kind == "psi" else "lambda(g_"
            parts.append("%s%s%s)" % (cs, name, _tuple_str(t)))
    return " + ".join(parts) or "0"


def _shifts_consistent(space, Vop, v_deltas, f_eqs):
    """Solve for chart-split shifts s_t in H^0 explaining all deltas.

    V rows demand C(sum_{t in combo} s_t) = delta (C is the lower-right
    block of V, inverse-Frobenius semilinear); F rows demand
    sum_u c_u s_u = delta.  Everything is GF(2)-linear after writing
    GF(q) coordinates in bit planes.
    """
    F = space.params.field
    g = space.g
    bits = _Bits(F, g)
    C_block = Vop.matrix[g:, g:]

    def c_map(s):
        return linalg.mat_vec(C_block, linalg.frob_entrywise(s, F, -1), F)

    C2 = bits.map_matrix(c_map)
    unknowns = {t: i for i, t in enumerate(space.tuples)}
    width = bits.width
    nvars = g * width
    A_rows = []

    # C(sum s_t) = sum C(s_t): per-unknown block is C2
    for combo, delta in v_deltas.values():
        db = bits.to_bits(delta)
        for k in range(width):
            row = np.zeros(nvars, dtype=np.uint16)
            for t in combo:
                j = unknowns[t] * width
                row[j : j + width] ^= C2[k]
            A_rows.append((row, int(db[k])))
    for coeffs, delta in f_eqs:
        db = bits.to_bits(delta)
        blockmats = {}
        for t, c in coeffs.items():
            blockmats[t] = bits.map_matrix(lambda s, c=c: np.array([F.mul(int(x), c) for x in s], dtype=np.uint16))
        for k in range(width):
            row = np.zeros(nvars, dtype=np.uint16)
            for t, mat in blockmats.items():
                j = unknowns[t] * width
                row[j : j + width] ^= mat[k]
            A_rows.append((row, int(db[k])))

    A = np.array([r for r, _ in A_rows], dtype=np.uint16)
    b = np.array([v for _, v in A_rows], dtype=np.uint16)
    f2 = field_f2()
    return linalg.solve(A, b, f2) is not None
