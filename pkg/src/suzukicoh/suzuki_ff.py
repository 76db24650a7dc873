"""Function-field arithmetic on the Suzuki curve z^q + z = y^q0 (y^q + y).

Here q0 = 2^m and q = 2^(2m+1).  Scalars live in GF(q): every
eigenvalue of the order-(q-1) torus automorphism already lies there, so
all linear algebra stays finite and exact.

Two representations of functions regular away from {P_inf, fiber y=0}:

* :class:`RawFunc` - Laurent polynomial in y and z with z-degree < q,
  reduced eagerly through z^q = z + y^(q+q0) + y^(q0+1).
* :class:`ConeFunc` - combination of cone monomials y^a z^b h1^c h2^d
  with b in {0,1} and 0 <= c,d < q0, where h1 = z^(2q0) + y^(2q0+1) and
  h2 = z^(2q0) y + h1^(2q0).  Distinct cone monomials have distinct pole
  orders at P_inf; in fact a*q + b*(q+q0) + c*(q+2q0) + d*(q+2q0+1) is a
  numeration system: every integer has exactly one such representation.

Conversion between the two uses three exact identities that hold on the
curve for every m (each is checked in the test suite by brute force):

    z^2    = y*h1 + h2
    h1^q0  = z + y^(q0+1)
    h2^q0  = h1 + y^q0 * z

Local expansions: the fiber points (0, z0) are unramified over y = 0,
so power series there come from a single Hensel lift.  P_inf is wildly
ramified over y = inf and admits no expansion with y = s^(-q) exactly;
instead we parametrize the completed local ring at P_inf by pulling the
(0,0)-chart through the involution

    y -> h1/h2,  z -> z/h2,  h1 -> y/h2,  h2 -> 1/h2,

which swaps P_(0,0) and P_inf.  The resulting pair (Y(t), Z(t)) of
Laurent series is verified against the curve equation to working
precision every time the chart is built, which pins the valuation: any
series point with v(Y) = -q computes v at P_inf on the nose.
"""

from __future__ import annotations

from . import gf2m

_PREC_EXACT = 1 << 60


class IncreaseOrderError(ValueError):
    """Truncation order too small to see the leading term."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed (would contradict the theory)."""


# ---------------------------------------------------------------------------
# curve parameters
# ---------------------------------------------------------------------------


class CurveParams:
    """Numerical data of the m-th Suzuki curve plus per-curve caches."""

    def __init__(self, m, field=None):
        if not 1 <= m <= gf2m.MAX_M:
            raise ValueError("m must satisfy 1 <= m <= %d" % gf2m.MAX_M)
        self.m = m
        self.q0 = 1 << m
        self.q = 1 << (2 * m + 1)
        self.genus = self.q0 * (self.q - 1)
        self.field = field if field is not None else gf2m.make_field(m)
        if self.field.q != self.q:
            raise ValueError("field size does not match the curve")
        # pole orders at P_inf of y, z, h1, h2
        self.pole_y = self.q
        self.pole_z = self.q + self.q0
        self.pole_h1 = self.q + 2 * self.q0
        self.pole_h2 = self.q + 2 * self.q0 + 1
        self._z2_cone_pows = {0: {(0, 0, 0, 0): 1}, 1: {(1, 0, 1, 0): 1, (0, 0, 0, 1): 1}}
        self._h_raw_pows = {}
        self._charts = {}

    # raw/cone constructors ------------------------------------------------

    def raw(self, terms):
        return RawFunc(self, terms)

    def cone(self, terms):
        return ConeFunc(self, dict(terms))

    def zero(self):
        return RawFunc(self, {})

    def one(self):
        return RawFunc(self, {(0, 0): 1})

    def y(self, e=1):
        return RawFunc(self, {(e, 0): 1})

    def z(self):
        return RawFunc(self, {(0, 1): 1})

    def h1(self):
        return h1(self)

    def h2(self):
        return h2(self)

    def __eq__(self, other):
        return isinstance(other, CurveParams) and self.m == other.m and self.field == other.field

    def __hash__(self):
        return hash((self.m, self.field))

    def __repr__(self):
        return "CurveParams(m=%d, q0=%d, q=%d, g=%d)" % (self.m, self.q0, self.q, self.genus)


def curve_params(m):
    return CurveParams(m)


# ---------------------------------------------------------------------------
# RawFunc
# ---------------------------------------------------------------------------


def _zreduce(params, terms):
    """Reduce all z-exponents below q via z^q = z + y^(q+q0) + y^(q0+1)."""
    q, q0 = params.q, params.q0
    out = {}
    work = list(terms.items())
    while work:
        (i, j), c = work.pop()
        if c == 0:
            continue
        if j < q:
            key = (i, j)
            prev = out.get(key, 0)
            s = prev ^ c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        else:
            work.append(((i, j - q + 1), c))
            work.append(((i + q + q0, j - q), c))
            work.append(((i + q0 + 1, j - q), c))
    return out


class RawFunc:
    """Sparse Laurent polynomial in y, z with z-degree < q (z-reduced)."""

    __slots__ = ("params", "terms")

    def __init__(self, params, terms, reduce=True):
        self.params = params
        self.terms = _zreduce(params, terms) if reduce else terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) ^ c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return RawFunc(self.params, out, reduce=False)

    __sub__ = __add__  # char 2

    def _coerce(self, other):
        if isinstance(other, RawFunc):
            if other.params != self.params:
                raise ValueError("mixed curves")
            return other
        if isinstance(other, int):
            return RawFunc(self.params, {(0, 0): other % self.params.q} if other else {})
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        F = self.params.field
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                c = F.mul(c1, c2)
                key = (i1 + i2, j1 + j2)
                s = out.get(key, 0) ^ c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return RawFunc(self.params, out)

    __rmul__ = __mul__

    def scale(self, c):
        if c == 0:
            return RawFunc(self.params, {}, reduce=False)
        F = self.params.field
        return RawFunc(
            self.params, {k: F.mul(v, c) for k, v in self.terms.items()}, reduce=False
        )

    def square(self):
        F = self.params.field
        return RawFunc(
            self.params,
            {(2 * i, 2 * j): F.mul(c, c) for (i, j), c in self.terms.items()},
        )

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers of RawFunc are not supported")
        result = self.params.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.square()
        return result

    def __eq__(self, other):
        if not isinstance(other, RawFunc):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self):
        return hash((self.params, tuple(sorted(self.terms.items()))))

    def to_json(self):
        return sorted([i, j, c] for (i, j), c in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "RawFunc(0)"
        bits = []
        for (i, j), c in sorted(self.terms.items()):
            mono = []
            if c != 1 or (i == 0 and j == 0):
                mono.append(str(c))
            if i:
                mono.append("y^%d" % i)
            if j:
                mono.append("z^%d" % j)
            bits.append("*".join(mono))
        return "RawFunc(%s)" % " + ".join(bits)


def raw_from_json(params, data):
    return RawFunc(params, {(i, j): c for i, j, c in data})


def h1(params):
    """h1 = z^(2q0) + y^(2q0+1), pole order q + 2q0 at P_inf."""
    q0 = params.q0
    return RawFunc(params, {(0, 2 * q0): 1, (2 * q0 + 1, 0): 1})


def h2(params):
    """h2 = z^(2q0) y + h1^(2q0), pole order q + 2q0 + 1 at P_inf."""
    q0 = params.q0
    return RawFunc(params, {(1, 2 * q0): 1}) + h1(params).square() ** q0


def derivative(f):
    """df/dy = df/dy + y^q0 * df/dz, using dz = y^q0 dy on the curve."""
    q0 = f.params.q0
    out = {}
    for (i, j), c in f.terms.items():
        if i & 1:
            key = (i - 1, j)
            s = out.get(key, 0) ^ c
            if s:
                out[key] = s
            else:
                del out[key]
        if j & 1:
            key = (i + q0, j - 1)
            s = out.get(key, 0) ^ c
            if s:
                out[key] = s
            else:
                del out[key]
    return RawFunc(f.params, out, reduce=False)


def tau_on_raw(f):
    """Pullback along the torus automorphism y -> zeta y, z -> zeta^(q0+1) z."""
    F = f.params.field
    q0, qm1 = f.params.q0, f.params.q - 1
    out = {}
    for (i, j), c in f.terms.items():
        w = (i + (q0 + 1) * j) % qm1
        out[(i, j)] = F.mul(c, F.pow(F.zeta, w))
    return RawFunc(f.params, out, reduce=False)


# ---------------------------------------------------------------------------
# ConeFunc and conversions
# ---------------------------------------------------------------------------


def pole_order(params, key):
    """Pole order at P_inf of the cone monomial y^a z^b h1^c h2^d."""
    a, b, c, d = key
    return a * params.pole_y + b * params.pole_z + c * params.pole_h1 + d * params.pole_h2


def monomial_with_pole_order(params, n):
    """The unique cone exponent tuple with pole order n (numeration system)."""
    q, q0 = params.q, params.q0
    d = n % q0
    n2 = n - d * params.pole_h2
    r = n2 % q
    if r % q0:
        raise ConsistencyError("numeration failure at %d" % n)
    bc = r // q0
    b, c = bc & 1, bc >> 1
    a, rem = divmod(n2 - b * params.pole_z - c * params.pole_h1, q)
    if rem:
        raise ConsistencyError("numeration failure at %d" % n)
    return (a, b, c, d)


def tau_weight(params, key):
    """Exponent w with tau(monomial) = zeta^w * monomial, mod q-1."""
    a, b, c, d = key
    q0 = params.q0
    return (a + (q0 + 1) * b + (2 * q0 + 1) * c + (2 * q0 + 2) * d) % (params.q - 1)


def cone_normalize(params, terms, guard=None):
    """Rewrite until b <= 1 and c,d <= q0-1, merging coefficients.

    Every rewrite strictly decreases the non-y pole-order weight of the
    monomial it touches, so this terminates; the guard is belt and
    braces per the to_cone contract.
    """
    q0 = params.q0
    cur = {}
    for k, c in terms.items():
        if c:
            s = cur.get(k, 0) ^ c
            if s:
                cur[k] = s
            else:
                del cur[k]
    if guard is None:
        guard = 64 * (len(cur) + 8) * params.q * params.q0
    steps = 0
    while True:
        viol = [k for k in cur if k[1] > 1 or k[2] >= q0 or k[3] >= q0]
        if not viol:
            return cur
        for k in viol:
            c = cur.pop(k, 0)
            if c == 0:
                continue
            steps += 1
            if steps > guard:
                raise ConsistencyError("cone normalization exceeded its step guard")
            a, b, cc, d = k
            if b >= 2:
                repl = (((a + 1, b - 2, cc + 1, d)), ((a, b - 2, cc, d + 1)))
            elif cc >= q0:
                repl = (((a + q0 + 1, b, cc - q0, d)), ((a, b + 1, cc - q0, d)))
            else:
                repl = (((a, b, cc + 1, d - q0)), ((a + q0, b + 1, cc, d - q0)))
            for k2 in repl:
                s = cur.get(k2, 0) ^ c
                if s:
                    cur[k2] = s
                else:
                    del cur[k2]


class ConeFunc:
    """Combination of cone monomials y^a z^b h1^c h2^d (normalized)."""

    __slots__ = ("params", "terms")

    def __init__(self, params, terms, normalize=True):
        self.params = params
        self.terms = cone_normalize(params, terms) if normalize else terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, ConeFunc) or other.params != self.params:
            raise ValueError("mixed operands in ConeFunc addition")
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) ^ c
            if s:
                out[k] = s
            else:
                del out[k]
        return ConeFunc(self.params, out, normalize=False)

    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, ConeFunc) or other.params != self.params:
            raise ValueError("mixed operands in ConeFunc product")
        F = self.params.field
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3])
                c = F.mul(c1, c2)
                s = out.get(key, 0) ^ c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return ConeFunc(self.params, out)

    __rmul__ = __mul__

    def scale(self, c):
        if c == 0:
            return ConeFunc(self.params, {}, normalize=False)
        F = self.params.field
        return ConeFunc(
            self.params, {k: F.mul(v, c) for k, v in self.terms.items()}, normalize=False
        )

    def square(self):
        F = self.params.field
        return ConeFunc(
            self.params,
            {(2 * a, 2 * b, 2 * c, 2 * d): F.mul(v, v) for (a, b, c, d), v in self.terms.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, ConeFunc):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self):
        return hash((self.params, tuple(sorted(self.terms.items()))))

    def to_json(self):
        return sorted([a, b, c, d, v] for (a, b, c, d), v in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "ConeFunc(0)"
        bits = []
        for (a, b, c, d), v in sorted(self.terms.items()):
            mono = [] if v == 1 else [str(v)]
            for sym, e in (("y", a), ("z", b), ("h1", c), ("h2", d)):
                if e:
                    mono.append(sym if e == 1 else "%s^%d" % (sym, e))
            bits.append("*".join(mono) or "1")
        return "ConeFunc(%s)" % " + ".join(bits)


def cone_from_json(params, data):
    return ConeFunc(params, {(a, b, c, d): v for a, b, c, d, v in data})


def _z2_cone_pow(params, k):
    """Cone form of (z^2)^k, memoized (z^2 = y h1 + h2)."""
    pows = params._z2_cone_pows
    if k in pows:
        return pows[k]
    if k % 2 == 0:
        half = ConeFunc(params, _z2_cone_pow(params, k // 2), normalize=False)
        res = half.square().terms
    else:
        prev = ConeFunc(params, _z2_cone_pow(params, k - 1), normalize=False)
        res = (prev * ConeFunc(params, pows[1], normalize=False)).terms
    pows[k] = res
    return res


def to_cone(f):
    """Exact rewrite of a RawFunc into the cone basis.

    Each raw monomial y^i z^j becomes y^i z^(j mod 2) (z^2)^(j div 2)
    and the result is normalized through the three curve identities.
    The observable contract (round trips with to_raw, leading pole
    orders) is cross-checked in the tests against the slower
    leading-term elimination in :func:`to_cone_by_elimination`.
    """
    params = f.params
    F = params.field
    acc = {}
    for (i, j), c in f.terms.items():
        for (a, b, cc, d), v in _z2_cone_pow(params, j >> 1).items():
            key = (a + i, b + (j & 1), cc, d)
            w = F.mul(v, c)
            s = acc.get(key, 0) ^ w
            if s:
                acc[key] = s
            else:
                del acc[key]
    guard = 64 * (len(f.terms) + 8) * params.q * params.q0
    return ConeFunc(params, cone_normalize(params, acc, guard=guard), normalize=False)


def _h_raw_pow(params, which, e):
    """Raw form of h1^e or h2^e, memoized."""
    pows = params._h_raw_pows
    key = (which, e)
    if key in pows:
        return pows[key]
    if e == 0:
        res = params.one()
    elif e == 1:
        res = h1(params) if which == 1 else h2(params)
    elif e % 2 == 0:
        res = _h_raw_pow(params, which, e // 2).square()
    else:
        res = _h_raw_pow(params, which, e - 1) * _h_raw_pow(params, which, 1)
    pows[key] = res
    return res


def to_raw(g):
    """Expand h1, h2 powers and z-reduce."""
    params = g.params
    out = params.zero()
    for (a, b, c, d), v in g.terms.items():
        t = _h_raw_pow(params, 1, c) * _h_raw_pow(params, 2, d)
        if b:
            t = t * params.z()
        shifted = {(i + a, j): cv for (i, j), cv in t.terms.items()}
        out = out + RawFunc(params, shifted, reduce=False).scale(v)
    return out


def tau_on_cone(g):
    F = g.params.field
    out = {}
    for k, v in g.terms.items():
        out[k] = F.mul(v, F.pow(F.zeta, tau_weight(g.params, k)))
    return ConeFunc(g.params, out, normalize=False)


# ---------------------------------------------------------------------------
# Laurent series and local expansions
# ---------------------------------------------------------------------------


class LocalSeries:
    """Truncated Laurent series over GF(q): terms exact below ``prec``."""

    __slots__ = ("field", "terms", "prec", "label")

    def __init__(self, field, terms, prec, label="t"):
        self.field = field
        self.prec = prec
        self.terms = {e: c for e, c in terms.items() if c and e < prec}
        self.label = label

    def is_zero_to_prec(self):
        return not self.terms

    def valuation(self):
        if not self.terms:
            raise IncreaseOrderError(
                "no terms below precision %s; increase order" % self.prec
            )
        return min(self.terms)

    def leading_coeff(self):
        return self.terms[self.valuation()]

    def __add__(self, other):
        prec = min(self.prec, other.prec)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) ^ c
            if s:
                out[e] = s
            else:
                del out[e]
        return LocalSeries(self.field, out, prec, self.label)

    __sub__ = __add__

    def _min_exp(self):
        return min(self.terms) if self.terms else self.prec

    def __mul__(self, other):
        F = self.field
        prec = min(self.prec + other._min_exp(), other.prec + self._min_exp())
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e >= prec:
                    continue
                c = F.mul(c1, c2)
                s = out.get(e, 0) ^ c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LocalSeries(F, out, prec, self.label)

    def square(self):
        F = self.field
        return LocalSeries(
            F,
            {2 * e: F.mul(c, c) for e, c in self.terms.items()},
            2 * self.prec,
            self.label,
        )

    def scale(self, c):
        F = self.field
        if c == 0:
            return LocalSeries(F, {}, self.prec, self.label)
        return LocalSeries(F, {e: F.mul(v, c) for e, v in self.terms.items()}, self.prec, self.label)

    def shift(self, k):
        return LocalSeries(self.field, {e + k: c for e, c in self.terms.items()}, self.prec + k, self.label)

    def pow(self, e):
        if e < 0:
            return self.inverse().pow(-e)
        result = LocalSeries(self.field, {0: 1}, _PREC_EXACT, self.label)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.square()
        return result

    def inverse(self):
        """Series inverse; the valuation must be visible."""
        F = self.field
        v = self.valuation()
        margin = self.prec - v
        if margin > 10**7:
            raise ConsistencyError("inverse of an effectively exact series; truncate first")
        u = {e - v: c for e, c in self.terms.items()}  # unit part, u[0] != 0
        inv0 = F.inv(u[0])
        out = {0: inv0}
        for k in range(1, margin):
            acc = 0
            for i, ci in u.items():
                if 0 < i <= k:
                    w = out.get(k - i)
                    if w:
                        acc ^= F.mul(ci, w)
            if acc:
                out[k] = F.mul(acc, inv0)
        return LocalSeries(F, {e - v: c for e, c in out.items()}, margin - v, self.label)

    def truncate(self, prec):
        return LocalSeries(self.field, {e: c for e, c in self.terms.items() if e < prec}, min(self.prec, prec), self.label)

    def __repr__(self):
        if not self.terms:
            return "LocalSeries(O(%s^%s))" % (self.label, self.prec)
        bits = []
        for e in sorted(self.terms)[:8]:
            c = self.terms[e]
            cs = "" if c == 1 else "%d*" % c
            bits.append("%s%s^%d" % (cs, self.label, e))
        if len(self.terms) > 8:
            bits.append("...")
        return "LocalSeries(%s + O(%s^%s))" % (" + ".join(bits), self.label, self.prec)


def _hensel_z(params, prec):
    """Power series zh with zh^q + zh = t^(q+q0) + t^(q0+1) + O(t^prec).

    This is the z-coordinate along the fiber over y = 0: the z-derivative
    of the defining equation is 1, so the lift is the linear fixed point
    zh <- rhs + zh^q, which converges t-adically.
    """
    F = params.field
    q, q0 = params.q, params.q0
    rhs = LocalSeries(F, {q + q0: 1, q0 + 1: 1}, prec)
    zh = LocalSeries(F, {}, prec)
    while True:
        nxt = rhs + zh.pow(q).truncate(prec)
        if nxt.terms == zh.terms:
            return nxt
        zh = nxt


def _substitute(f, Y, Z, Yinv=None):
    """Evaluate a RawFunc on a series point (Y(t), Z(t))."""
    F = f.params.field
    prec = min(Y.prec, Z.prec)
    if not f.terms:
        return LocalSeries(F, {}, prec)
    ypows = {0: LocalSeries(F, {0: 1}, _PREC_EXACT)}
    zpows = {0: LocalSeries(F, {0: 1}, _PREC_EXACT)}

    def ypow(i):
        if i not in ypows:
            if i > 0:
                ypows[i] = ypow(i - 1) * Y
            else:
                if Yinv is None:
                    raise ConsistencyError("negative y power without an inverse chart")
                ypows[i] = ypow(i + 1) * Yinv
        return ypows[i]

    def zpow(j):
        if j not in zpows:
            zpows[j] = zpow(j - 1) * Z
        return zpows[j]

    total = None
    for j in sorted({j for (_, j) in f.terms}):
        row = None
        for (i, jj), c in f.terms.items():
            if jj != j:
                continue
            piece = ypow(i).scale(c)
            row = piece if row is None else row + piece
        piece = row * zpow(j)
        total = piece if total is None else total + piece
    return total


def _origin_chart(params, prec):
    key = ("origin", prec)
    if key not in params._charts:
        params._charts[key] = _hensel_z(params, prec)
    return params._charts[key]


def _infinity_chart(params, margin):
    """(Y, Z, Yinv) Laurent series at P_inf with relative precision margin.

    Built by pulling the (0,0)-chart (y = t, z = zh(t)) through the
    involution: Y = h1(t,zh)/h2(t,zh), Z = zh/h2(t,zh).  The chart is
    validated on the curve equation to working precision, which is what
    makes valuations computed from it trustworthy.
    """
    for (kind, mk), chart in params._charts.items():
        if kind == "infinity" and mk >= margin:
            return chart
    q, q0 = params.q, params.q0
    prec = margin + 4 * (q + 2 * q0 + 1)
    zh = _hensel_z(params, prec)
    t = LocalSeries(params.field, {1: 1}, _PREC_EXACT)
    H1 = _substitute(h1(params), t, zh)
    H2 = _substitute(h2(params), t, zh)
    H2inv = H2.inverse()
    Y = H1 * H2inv
    Z = zh * H2inv
    Yinv = H2 * H1.inverse()
    if Y.valuation() != -q or Z.valuation() != -(q + q0):
        raise ConsistencyError("infinity chart has wrong leading exponents")
    resid = Z.pow(q) + Z + Y.pow(q + q0) + Y.pow(q0 + 1)
    if resid.terms:
        raise ConsistencyError("infinity chart violates the curve equation")
    chart = (Y, Z, Yinv)
    params._charts[("infinity", margin)] = chart
    return chart


def expand_at_infinity(f, order):
    """Laurent expansion of f at P_inf; exact terms up to exponent ``order``.

    Raises IncreaseOrderError when f is nonzero but has no visible term
    at or below ``order`` (e.g. cancellation beyond the truncation).
    """
    if f.is_zero():
        return LocalSeries(f.params.field, {}, order + 1)
    margin = 4 * (f.params.q + 2 * f.params.q0 + 1) + 2 * max(0, order)
    for _ in range(12):
        Y, Z, Yinv = _infinity_chart(f.params, margin)
        s = _substitute(f, Y, Z, Yinv)
        if s.prec > order:
            s = s.truncate(order + 1)
            if not s.terms:
                raise IncreaseOrderError(
                    "f has no terms up to t^%d at P_inf; increase order" % order
                )
            return s
        margin *= 2
    raise ConsistencyError("infinity expansion failed to reach the requested order")


def expand_at_origin_fiber(f, z0, order):
    """Power-series expansion of f at the point (0, z0), z0 in GF(q)."""
    params = f.params
    if not 0 <= z0 < params.q:
        raise ValueError("z0 must be a field element bitmask")
    prec = order + 1
    extra = max((-i for (i, _) in f.terms), default=0)
    zh = _origin_chart(params, prec + extra + params.q + 2 * params.q0 + 1)
    F = params.field
    t = LocalSeries(F, {1: 1}, _PREC_EXACT)
    Z = LocalSeries(F, {0: z0}, zh.prec) + zh
    tinv = LocalSeries(F, {-1: 1}, _PREC_EXACT)
    s = _substitute(f, t, Z, tinv)
    s = s.truncate(prec)
    if not s.terms and not f.is_zero():
        raise IncreaseOrderError(
            "f has no terms up to t^%d at (0, %d); increase order" % (order, z0)
        )
    return s


def expand_at_affine_point(f, y0, z0, order):
    """Expansion at an affine GF(q)-point with y0 != 0 (unramified fiber)."""
    params = f.params
    F = params.field
    if y0 == 0:
        return expand_at_origin_fiber(f, z0, order)
    lhs = F.add(F.pow(z0, params.q), z0)
    rhs = F.mul(F.pow(y0, params.q0), F.add(F.pow(y0, params.q), y0))
    if lhs != rhs:
        raise ValueError("(y0, z0) is not on the curve")
    prec = order + 1 + params.q + 2 * params.q0 + 1
    # g(t) = (y0+t)^q0 ((y0+t)^q + y0 + t) - (z0^q + z0), a polynomial with g(0)=0
    t = LocalSeries(F, {1: 1}, _PREC_EXACT)
    ypt = LocalSeries(F, {0: y0, 1: 1}, _PREC_EXACT)
    g = ypt.pow(params.q0) * (ypt.pow(params.q) + ypt)
    g = (g + LocalSeries(F, {0: lhs}, _PREC_EXACT)).truncate(prec)
    w = LocalSeries(F, {}, prec)
    while True:
        nxt = (g + w.pow(params.q)).truncate(prec)
        if nxt.terms == w.terms:
            break
        w = nxt
    Z = LocalSeries(F, {0: z0}, prec) + w
    Yinv = ypt.truncate(prec).inverse()
    s = _substitute(f, ypt.truncate(prec), Z, Yinv)
    s = s.truncate(order + 1)
    if not s.terms and not f.is_zero():
        raise IncreaseOrderError("increase order at (%d, %d)" % (y0, z0))
    return s


def _valuation_with_retry(expand, f, start_order):
    if f.is_zero():
        raise ValueError("the zero function has no valuation")
    order = start_order
    for _ in range(16):
        try:
            return expand(f, order).valuation()
        except IncreaseOrderError:
            order *= 2
    raise ConsistencyError("valuation retry exceeded")


def v_infinity(f, start_order=None):
    """Valuation of f at P_inf (series-based, retrying with doubled order)."""
    if start_order is None:
        naive = max(
            (i * f.params.pole_y + j * f.params.pole_z for (i, j) in f.terms),
            default=0,
        )
        start_order = max(8, 2 * abs(naive))
    return _valuation_with_retry(expand_at_infinity, f, start_order)


def v_origin_fiber(f, z0, start_order=None):
    return _valuation_with_retry(
        lambda g, o: expand_at_origin_fiber(g, z0, o),
        f,
        start_order or 4 * f.params.pole_h2,
    )


def v_affine_point(f, y0, z0, start_order=None):
    return _valuation_with_retry(
        lambda g, o: expand_at_affine_point(g, y0, z0, o),
        f,
        start_order or 4 * f.params.pole_h2,
    )


def leading_coeff_at_infinity(f):
    s = expand_at_infinity(f, v_infinity(f))
    return s.terms[s.valuation()]


def to_cone_by_elimination(f, max_steps=None):
    """Cone conversion by leading-term elimination at P_inf.

    Repeatedly: take v = v_inf(remainder), pick the unique cone monomial
    with pole order -v, match leading coefficients, subtract.  Slower
    than :func:`to_cone` but independent of the rewrite identities; the
    tests cross-check the two.
    """
    params = f.params
    F = params.field
    if max_steps is None:
        max_steps = 16 * (len(f.terms) + 4) * params.q
    out = {}
    r = f
    steps = 0
    while not r.is_zero():
        steps += 1
        if steps > max_steps:
            raise ConsistencyError("cone elimination exceeded its step guard")
        v = v_infinity(r)
        key = monomial_with_pole_order(params, -v)
        mono_raw = to_raw(ConeFunc(params, {key: 1}, normalize=False))
        c = F.div(leading_coeff_at_infinity(r), leading_coeff_at_infinity(mono_raw))
        out[key] = c
        r = r + mono_raw.scale(c)
    return ConeFunc(params, out, normalize=False)


# ---------------------------------------------------------------------------
# point counting
# ---------------------------------------------------------------------------


def count_points(params):
    """Brute-force number of GF(q)-points, affine solutions plus P_inf."""
    if params.m > 3:
        raise ValueError("point counting is desk-scale only (m <= 3)")
    F = params.field
    q, q0 = params.q, params.q0
    count = 0
    for y0 in F.elements():
        rhs = F.mul(F.pow(y0, q0), F.add(F.pow(y0, q), y0))
        for z0 in F.elements():
            if F.add(F.pow(z0, q), z0) == rhs:
                count += 1
    return count + 1
