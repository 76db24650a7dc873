"""Closed-form expected values for the Suzuki-curve invariants.

This module is pure arithmetic and combinatorics (no function-field
computation), so it doubles as a fast oracle for larger m:

* the explicit action model of the trivial torus eigenspace on the
  basis X_1..X_q0, Y_1..Y_q0 (it matches the hyperelliptic-quotient
  module, rank 2*q0),
* its generator/relation bookkeeping: for c = q0 the index window
  I = {ceil((c+1)/2) .. c} carries maps ell, e, s, m, eps, t and a
  unique bijection iota with t(iota(j)) = s(j); the module is generated
  by {X_j : j in I} with relations F^(e(j)+1) X_j = V^(eps(iota(j))+1)
  X_iota(j),
* the occurrence criterion: E/E(F^(e+1)+V^(e+1)) sits inside the
  trivial eigenspace iff 2^m = 2^e mod (2^(e+1)+1), realized on the
  generator j = (2^(e+1) q0 + 2^e)/(2^(e+1)+1),
* genus / a-number / Ekedahl-Oort / point-count formulas.
"""

from __future__ import annotations

import numpy as np

from . import gf2m
from .dieudonne import EModule, canonical_word
from .linalg import SemilinearOp


def d_m0_action(m, field=None):
    """The rank-2q0 model of the trivial torus eigenspace.

    Basis X_1..X_q0, Y_1..Y_q0 (indices 0..q0-1 and q0..2q0-1) with
        F(Y_j) = 0
        V(Y_j) = Y_(2j)        if 2j <= q0, else 0
        F(X_j) = X_(j/2)       if j even, else Y_(q0-(j-1)/2)
        V(X_j) = Y_(2q0-2j+1)  if that index is in 1..q0, else 0.
    Signs in the source are irrelevant in characteristic 2, and the
    V(X_j) index rule is read as "in range or zero" (for even q0 the
    printed threshold (q0-1)/2 would point one index out of range).
    """
    if field is None:
        field = gf2m.field_f2()
    q0 = 1 << m
    dim = 2 * q0
    X = lambda j: j - 1
    Y = lambda j: q0 + j - 1
    Fm = np.zeros((dim, dim), dtype=np.uint16)
    Vm = np.zeros((dim, dim), dtype=np.uint16)
    for j in range(1, q0 + 1):
        if 2 * j <= q0:
            Vm[Y(2 * j), Y(j)] = 1
        if j % 2 == 0:
            Fm[X(j // 2), X(j)] = 1
        else:
            Fm[Y(q0 - (j - 1) // 2), X(j)] = 1
        k = 2 * q0 - 2 * j + 1
        if 1 <= k <= q0:
            Vm[Y(k), X(j)] = 1
    return EModule(field, SemilinearOp(field, Fm, +1), SemilinearOp(field, Vm, -1))


def nbij(m):
    """The index maps on I = {ceil((c+1)/2) .. c}, c = q0 = 2^m."""
    c = 1 << m
    I = list(range((c + 1 + 1) // 2, c + 1))
    ell, e, s, mval, eps, t = {}, {}, {}, {}, {}, {}
    for j in I:
        o, k = j, 0
        while o % 2 == 0:
            o //= 2
            k += 1
        ell[j], e[j] = o, k
        s[j] = c - (o - 1) // 2
        mv = 2 * c - 2 * j + 1
        mval[j] = mv
        k2, tv = 0, mv
        while tv not in I:
            tv *= 2
            k2 += 1
            if tv > 2 * c:
                raise RuntimeError("t(j) failed to land in I")
        eps[j], t[j] = k2, tv
    if sorted(s.values()) != I or sorted(t.values()) != I:
        raise RuntimeError("s or t is not a bijection of I")
    t_inv = {v: k for k, v in t.items()}
    iota = {j: t_inv[s[j]] for j in I}
    return {"c": c, "I": I, "ell": ell, "e": e, "s": s, "m": mval, "eps": eps, "t": t, "iota": iota}


def iota(m):
    """The bijection iota alone (see :func:`nbij` for all the maps)."""
    return nbij(m)["iota"]


def palg_relations(m):
    """Relations F^(e(j)+1) X_j = V^(eps(iota(j))+1) X_iota(j), j in I."""
    data = nbij(m)
    return [
        (j, data["e"][j] + 1, data["iota"][j], data["eps"][data["iota"][j]] + 1)
        for j in data["I"]
    ]


def trivial_eigenspace_words(m):
    """Expected cyclic-word multiset of the trivial eigenspace model.

    Each iota-cycle u -> iota^-1(u) -> ... spells the word
    prod_u v^(eps(u)+1) f^(e(iota^-1(u))+1).
    """
    data = nbij(m)
    iota_inv = {v: k for k, v in data["iota"].items()}
    remaining = set(data["I"])
    words = {}
    while remaining:
        u0 = min(remaining)
        word = ""
        u = u0
        while True:
            remaining.discard(u)
            nxt = iota_inv[u]
            word += "v" * (data["eps"][u] + 1) + "f" * (data["e"][nxt] + 1)
            u = nxt
            if u == u0:
                break
        w = canonical_word(word)
        words[w] = words.get(w, 0) + 1
    return sorted(words.items())


def w0_occurrence(m, e):
    """Generator index j of the relation (F^(e+1)+V^(e+1)) X_j, if any.

    Present iff 2^m = 2^e mod (2^(e+1)+1); e = m always occurs with
    j = 2^m.
    """
    if e < 0:
        raise ValueError("e must be nonnegative")
    mod = (1 << (e + 1)) + 1
    if ((1 << m) - (1 << e)) % mod != 0:
        return None
    num = (1 << (e + 1)) * (1 << m) + (1 << e)
    j, rem = divmod(num, mod)
    if rem:
        raise RuntimeError("congruence held but the index is not integral")
    return j


def w0_occurrence_scan(m, e):
    """Brute-force counterpart: scan the relations for F^(e+1)+V^(e+1)
    on a single generator."""
    for j, fexp, jj, vexp in palg_relations(m):
        if jj == j and fexp == vexp == e + 1:
            return j
    return None


def expected(m):
    """Closed-form record {genus, a_number, eo_trivial, point_count}."""
    q0 = 1 << m
    q = 1 << (2 * m + 1)
    # the pattern 0,1,1,2,2,... of length q0: entry i is floor(i/2)
    eo = [i // 2 for i in range(1, q0 + 1)]
    return {
        "genus": q0 * (q - 1),
        "a_number": q0 * (q0 + 1) * (2 * q0 + 1) // 6,
        "eo_trivial": eo,
        "point_count": q * q + 1,
    }
