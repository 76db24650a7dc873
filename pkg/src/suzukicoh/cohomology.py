"""Explicit de Rham cohomology of the Suzuki curves.

The Cech cover is U_inf = curve minus P_inf and U_0 = curve minus the
fiber over y = 0.  A cone monomial is regular on U_inf iff its
y-exponent a is >= 0, and regular on U_0 iff it has no pole at P_inf;
monomials with a < 0 and a pole at P_inf are exactly the scalar
multiples of the H^1(O) basis functions

    f_t = y^-(a+1) z^(1-b) h1^(q0-1-c) h2^(q0-1-d),   t = (a,b,c,d)

for t in the index set E_m, which also labels the regular differentials
g_t = y^a z^b h1^c h2^d dy.  That three-way classification is a
partition (pole orders form a numeration system), so reducing a de Rham
cocycle to coordinates in psi(f_t), lambda(g_t) is a finite monomial
sort plus coboundary bookkeeping.

Frobenius acts by F(f, g) = (f^2, (0,0)); Verschiebung by
V(f, g) = (0, C(g)) with C the Cartier operator.  Splitting df into its
U_inf / U_0 parts is canonical here: cone monomials with a >= 0 go to
the infinity side.  Any other legal split differs by a global regular
differential, which moves the section psi by a lambda-shift; the action
table verifier in :mod:`suzukicoh.tables` accounts for exactly that.
"""

from __future__ import annotations

import numpy as np

from .linalg import SemilinearOp
from .suzuki_ff import (
    ConeFunc,
    ConsistencyError,
    RawFunc,
    cone_normalize,
    derivative,
    h1,
    h2,
    pole_order,
    tau_weight,
    to_cone,
    to_raw,
)


class Differential:
    """A regular-enough differential written as f dy, f a RawFunc."""

    __slots__ = ("f",)

    def __init__(self, f):
        if not isinstance(f, RawFunc):
            raise TypeError("Differential wraps the dy-coefficient RawFunc")
        self.f = f

    @property
    def params(self):
        return self.f.params

    def __add__(self, other):
        return Differential(self.f + other.f)

    def __eq__(self, other):
        return isinstance(other, Differential) and self.f == other.f

    def is_zero(self):
        return self.f.is_zero()

    def __repr__(self):
        return "(%r) dy" % self.f


# ---------------------------------------------------------------------------
# index set and bases
# ---------------------------------------------------------------------------


def index_set(params):
    """The tuples (a,b,c,d) with pole weight <= 2g-2; exactly g of them."""
    q0 = params.q0
    bound = 2 * params.genus - 2
    out = []
    for a in range(bound // params.pole_y + 1):
        for b in range(2):
            for c in range(q0):
                for d in range(q0):
                    if pole_order(params, (a, b, c, d)) <= bound:
                        out.append((a, b, c, d))
    out.sort()
    if len(out) != params.genus:
        raise ConsistencyError(
            "index set has %d elements, expected g = %d" % (len(out), params.genus)
        )
    return out


def h1O_basis_fn(params, t):
    """The H^1(O) representative f_t as a single cone monomial."""
    a, b, c, d = t
    q0 = params.q0
    if not (a >= 0 and 0 <= b <= 1 and 0 <= c < q0 and 0 <= d < q0):
        raise ValueError("%r is not an index tuple" % (t,))
    if pole_order(params, t) > 2 * params.genus - 2:
        raise ValueError("%r exceeds the pole bound" % (t,))
    key = (-(a + 1), 1 - b, q0 - 1 - c, q0 - 1 - d)
    return ConeFunc(params, {key: 1}, normalize=False)


def omega_basis_fn(params, t):
    """The dy-coefficient of the regular differential g_t (cone monomial)."""
    a, b, c, d = t
    if pole_order(params, t) > 2 * params.genus - 2:
        raise ValueError("%r exceeds the pole bound" % (t,))
    return ConeFunc(params, {(a, b, c, d): 1}, normalize=False)


def _classify(params, key):
    """'inf' (regular off P_inf), 'zero' (regular off y=0), or ('psi', t)."""
    a, b, c, d = key
    if a >= 0:
        return "inf"
    if pole_order(params, key) <= 0:
        return "zero"
    q0 = params.q0
    t = (-(a + 1), 1 - b, q0 - 1 - c, q0 - 1 - d)
    return ("psi", t)


def cone_derivative(g):
    """d/dy of a ConeFunc, via d(z)=y^q0 dy, d(h1)=y^(2q0) dy, d(h2)=z^(2q0) dy."""
    params = g.params
    q0 = params.q0
    terms = {}

    def put(key, c):
        s = terms.get(key, 0) ^ c
        if s:
            terms[key] = s
        else:
            terms.pop(key, None)

    for (a, b, c, d), v in g.terms.items():
        if a & 1:
            put((a - 1, b, c, d), v)
        if b & 1:
            put((a + q0, b - 1, c, d), v)
        if c & 1:
            put((a + 2 * q0, b, c - 1, d), v)
        if d & 1:
            put((a, b + 2 * q0, c, d - 1), v)
    return ConeFunc(params, terms)


def split_differential(omega_cone):
    """Split a differential's cone form into (U_inf part, U_0 part).

    Monomials with a >= 0 go to the infinity side; the rest must be
    regular at P_inf as differentials (pole weight <= 2g-2).
    """
    params = omega_cone.params
    bound = 2 * params.genus - 2
    inf_part, zero_part = {}, {}
    for key, v in omega_cone.terms.items():
        if key[0] >= 0:
            inf_part[key] = v
        elif pole_order(params, key) <= bound:
            zero_part[key] = v
        else:
            raise ConsistencyError(
                "differential monomial %r is regular on neither chart" % (key,)
            )
    return (
        ConeFunc(params, inf_part, normalize=False),
        ConeFunc(params, zero_part, normalize=False),
    )


# ---------------------------------------------------------------------------
# Cartier operator
# ---------------------------------------------------------------------------


def _expand_odd_z(params, terms):
    """Substitute z -> z^q + y^(q+q0) + y^(q0+1) into odd-z monomials.

    Afterwards every z-exponent is even (q is even); z-degrees may
    temporarily exceed q-1 and are NOT reduced here.
    """
    q, q0 = params.q, params.q0
    out = {}

    def put(key, c):
        s = out.get(key, 0) ^ c
        if s:
            out[key] = s
        else:
            out.pop(key, None)

    for (i, j), c in terms.items():
        if j & 1:
            put((i, j - 1 + q), c)
            put((i + q + q0, j - 1), c)
            put((i + q0 + 1, j - 1), c)
        else:
            put((i, j), c)
    return out


def cartier_raw(params, f):
    """Cartier image of f dy, returned as the dy-coefficient.

    Algorithm: make all z-exponents even, drop monomials with even
    y-exponent, halve c y^(2k+1) z^(2j) to sqrt(c) y^k z^j, z-reduce.
    """
    F = params.field
    even = _expand_odd_z(params, f.terms)
    out = {}
    for (i, j), c in even.items():
        if i & 1:
            key = ((i - 1) // 2, j // 2)
            s = out.get(key, 0) ^ F.sqrt(c)
            if s:
                out[key] = s
            else:
                del out[key]
    return RawFunc(params, out)


def cartier(omega):
    """Cartier operator on differentials (annihilates exact forms)."""
    return Differential(cartier_raw(omega.params, omega.f))


def sqrt_raw(params, f):
    """The square root of f when f is a square in the function field."""
    F = params.field
    even = _expand_odd_z(params, f.terms)
    out = {}
    for (i, j), c in even.items():
        if i & 1:
            raise ValueError("function is not a square in the function field")
        out[(i // 2, j // 2)] = F.sqrt(c)
    return RawFunc(params, out)


def cartier_by_derivative(params, f):
    """Independent route: C(f dy) = sqrt(df/dy) dy in characteristic 2."""
    return sqrt_raw(params, derivative(f))


# ---------------------------------------------------------------------------
# the de Rham space and its operators
# ---------------------------------------------------------------------------


class DeRhamClass:
    """Coordinates of a de Rham class in the psi/lambda basis."""

    __slots__ = ("space", "coords")

    def __init__(self, space, coords):
        self.space = space
        self.coords = np.asarray(coords, dtype=np.uint16)
        if self.coords.shape != (2 * space.g,):
            raise ValueError("coordinate vector must have length 2g")

    def psi_part(self):
        return self.coords[: self.space.g]

    def lambda_part(self):
        return self.coords[self.space.g :]

    def __eq__(self, other):
        return (
            isinstance(other, DeRhamClass)
            and self.space is other.space
            and bool(np.all(self.coords == other.coords))
        )

    def support(self):
        out = []
        for i, c in enumerate(self.coords):
            if c:
                out.append((self.space.label(i), int(c)))
        return out

    def __repr__(self):
        parts = []
        for (kind, t), c in self.support():
            cs = "" if c == 1 else "%d*" % c
            parts.append("%s%s(f_%r)" % (cs, "psi" if kind == "psi" else "lam", t))
        return "DeRhamClass(%s)" % (" + ".join(parts) or "0")


class CocycleError(ValueError):
    """The pair (f, (w_inf, w_0)) is not a closed de Rham cocycle."""


class DeRhamSpace:
    """Bases of H^1_dR for one curve, plus the cocycle reduction.

    Basis order: psi(f_t) for t in lexicographic order over the index
    set, then lambda(g_t) likewise.
    """

    def __init__(self, params):
        self.params = params
        self.tuples = index_set(params)
        self.g = params.genus
        self.dim = 2 * self.g
        self.index = {t: i for i, t in enumerate(self.tuples)}
        self._psi_splits = {}

    def label(self, i):
        if i < self.g:
            return ("psi", self.tuples[i])
        return ("lam", self.tuples[i - self.g])

    def psi_split(self, t):
        """Canonical (U_inf, U_0) split of d(f_t)."""
        if t not in self._psi_splits:
            df = cone_derivative(h1O_basis_fn(self.params, t))
            self._psi_splits[t] = split_differential(df)
        return self._psi_splits[t]

    # -- weights ---------------------------------------------------------

    def weight(self, i):
        """tau-eigenvalue exponent of basis vector i (tau acts diagonally)."""
        qm1 = self.params.q - 1
        kind, t = self.label(i)
        if kind == "psi":
            a, b, c, d = t
            q0 = self.params.q0
            key = (-(a + 1), 1 - b, q0 - 1 - c, q0 - 1 - d)
            return tau_weight(self.params, key)
        return (tau_weight(self.params, t) + 1) % qm1

    def weights(self):
        return np.array([self.weight(i) for i in range(self.dim)], dtype=np.int64)

    # -- cocycle reduction -------------------------------------------------

    def reduce_cocycle(self, f_cone, om_inf, om_zero, check=True):
        """Coordinates of the class of (f, (om_inf, om_0)).

        f is a ConeFunc; om_inf/om_zero are ConeFuncs holding the
        dy-coefficients of the two chart differentials.  The closedness
        condition df = om_inf - om_0 is verified unless check=False.
        """
        params = self.params
        if check:
            df = cone_derivative(f_cone)
            if df + om_inf + om_zero != ConeFunc(params, {}, normalize=False):
                raise CocycleError("df != delta(omega): not a closed cocycle")
        psi_coords = np.zeros(self.g, dtype=np.uint16)
        kappa_inf, kappa_zero = {}, {}
        for key, c in f_cone.terms.items():
            cls = _classify(params, key)
            if cls == "inf":
                kappa_inf[key] = c
            elif cls == "zero":
                kappa_zero[key] = c
            else:
                t = cls[1]
                i = self.index.get(t)
                if i is None:
                    raise ConsistencyError("cocycle monomial %r outside the basis" % (key,))
                psi_coords[i] = c
        om_a = om_inf + cone_derivative(ConeFunc(params, kappa_inf, normalize=False))
        om_b = om_zero + cone_derivative(ConeFunc(params, kappa_zero, normalize=False))
        for t, i in self.index.items():
            c = int(psi_coords[i])
            if c:
                dinf, dzero = self.psi_split(t)
                om_a = om_a + dinf.scale(c)
                om_b = om_b + dzero.scale(c)
        if om_a != om_b:
            raise ConsistencyError("residual differentials disagree between charts")
        lam_coords = np.zeros(self.g, dtype=np.uint16)
        for key, c in om_a.terms.items():
            i = self.index.get(key)
            if i is None:
                raise ConsistencyError(
                    "leftover differential monomial %r is not a basis differential" % (key,)
                )
            lam_coords[i] = c
        return DeRhamClass(self, np.concatenate([psi_coords, lam_coords]))

    def psi_class(self, t):
        v = np.zeros(self.dim, dtype=np.uint16)
        v[self.index[t]] = 1
        return DeRhamClass(self, v)

    def lambda_class(self, t):
        v = np.zeros(self.dim, dtype=np.uint16)
        v[self.g + self.index[t]] = 1
        return DeRhamClass(self, v)

    # -- operator columns --------------------------------------------------

    def frobenius_of_psi(self, t):
        """F(psi(f_t)) = class of (f_t^2, (0, 0))."""
        f2 = h1O_basis_fn(self.params, t).square()
        zero = ConeFunc(self.params, {}, normalize=False)
        return self.reduce_cocycle(f2, zero, zero)

    def verschiebung_of_psi(self, t):
        """V(psi(f_t)) = lambda(C(df_inf)); both chart images must agree."""
        dinf, dzero = self.psi_split(t)
        ci = to_cone(cartier_raw(self.params, to_raw(dinf)))
        cz = to_cone(cartier_raw(self.params, to_raw(dzero)))
        if ci != cz:
            raise ConsistencyError("Cartier images of the two chart parts differ")
        return self._lambda_coords_class(ci)

    def verschiebung_of_lambda(self, t):
        c = to_cone(cartier_raw(self.params, to_raw(omega_basis_fn(self.params, t))))
        return self._lambda_coords_class(c)

    def _lambda_coords_class(self, omega_cone):
        lam = np.zeros(self.g, dtype=np.uint16)
        for key, c in omega_cone.terms.items():
            i = self.index.get(key)
            if i is None:
                raise ConsistencyError(
                    "Cartier image monomial %r is not a basis differential" % (key,)
                )
            lam[i] = c
        return DeRhamClass(self, np.concatenate([np.zeros(self.g, dtype=np.uint16), lam]))


def frobenius_matrix(params, space=None):
    """F on H^1_dR as a twist +1 semilinear operator (columns = images)."""
    space = space or DeRhamSpace(params)
    M = np.zeros((space.dim, space.dim), dtype=np.uint16)
    for i, t in enumerate(space.tuples):
        M[:, i] = space.frobenius_of_psi(t).coords
    return SemilinearOp(params.field, M, +1)


def verschiebung_matrix(params, space=None):
    """V on H^1_dR as a twist -1 semilinear operator."""
    space = space or DeRhamSpace(params)
    M = np.zeros((space.dim, space.dim), dtype=np.uint16)
    for i, t in enumerate(space.tuples):
        M[:, i] = space.verschiebung_of_psi(t).coords
        M[:, space.g + i] = space.verschiebung_of_lambda(t).coords
    return SemilinearOp(params.field, M, -1)


def tau_matrix(params, space=None):
    """The order-(q-1) torus automorphism; diagonal in this basis."""
    space = space or DeRhamSpace(params)
    F = params.field
    M = np.zeros((space.dim, space.dim), dtype=np.uint16)
    for i in range(space.dim):
        M[i, i] = F.pow(F.zeta, space.weight(i))
    return SemilinearOp(params.field, M, 0)


# ---------------------------------------------------------------------------
# the published Cartier action table (15 product rows)
# ---------------------------------------------------------------------------


def _cartier_table_rows(params):
    """(label, lhs, printed rhs) for the tabulated Cartier images.

    The printed formulas are stated for general q0.  The last row's h2
    exponent is garbled in print ("q0 2"); we encode the q0/2 reading
    and flag the row either way.
    """
    y = params.y()
    z = params.z()
    H1 = h1(params)
    H2 = h2(params)
    one = params.one()
    q0 = params.q0
    h = q0 // 2
    rows = [
        ("1", one, params.zero(), False),
        ("y", y, one, False),
        ("z", z, params.y(h), False),
        ("h1", H1, params.y(q0), False),
        ("h2", H2, (y * H1) ** h + H2, False),
        ("y*z", y * z, H1**h, False),
        ("y*h1", y * H1, (y * H1) ** h + H2, False),
        ("z*h1", z * H1, (y * H2) ** h, False),
        ("z*h2", z * H2, (H1 * H2) ** h, False),
        ("h1*h2", H1 * H2, H1 + z * params.y(q0), False),
        ("y*z*h1", y * z * H1, params.y(h) * z + (H1 * H2) ** h, False),
        ("y*z*h2", y * z * H2, z * H1**h + params.y(h + 1) * H2**h, False),
        ("z*h1*h2", z * H1 * H2, z * params.y(h) * H2**h + H1 ** (h + 1), False),
        ("y*h1*h2", y * H1 * H2, (y * H1) ** h * z + H2**h * z, False),
        ("y*z*h1*h2", y * z * H1 * H2, params.y(h) * H2 + z * H1**h * H2**h, True),
    ]
    return rows


def verify_cartier_table(params):
    """Recompute all 15 tabulated Cartier rows and diff against print.

    Returns a list of row reports; rows that do not match carry the
    recomputed right-hand side (never silently corrected).
    """
    if params.m > 3:
        raise ValueError("table verification is desk-scale only (m <= 3)")
    report = []
    for label, lhs, printed, garbled in _cartier_table_rows(params):
        computed = cartier_raw(params, lhs)
        report.append(
            {
                "row": label,
                "matches_printed": computed == printed,
                "printed_rhs": printed.to_json(),
                "computed_rhs": computed.to_json(),
                "printed_exponent_garbled": garbled,
            }
        )
    return report
