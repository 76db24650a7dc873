"""2-modular representation bookkeeping for the Suzuki group torus.

The irreducible 2-modular representations V_I of the q = 2^(2m+1)
Suzuki group are indexed by subsets I of Z/(2m+1); V_I = tensor of
Frobenius twists of the 4-dimensional module V_0, on which the
order-(q-1) torus element acts with eigenvalue exponents
+-(2^(m+1)+1), +-1.  V_I appears in the de Rham cohomology iff I is
"good" (no two elements differ by +-m mod 2m+1 - equivalently I is an
independent set of the long-edge cycle), with multiplicity
2^(m+1-|I|).

Everything here is handled through torus restrictions, i.e. multisets
of eigenvalue exponents mod q-1; that is also how the predicted
decomposition is checked against the computed cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .dieudonne import canonical_word


@dataclass(frozen=True)
class GoodSubset:
    members: tuple
    multiplicity: int
    dimension: int

    def to_json(self):
        return {
            "subset": list(self.members),
            "multiplicity": self.multiplicity,
            "dimension": self.dimension,
        }


def is_good(I, m):
    """No i, j in I with j - i = +-m mod 2m+1."""
    n = 2 * m + 1
    s = set(x % n for x in I)
    return not any((i + m) % n in s or (i - m) % n in s for i in s)


def good_subsets(m):
    """All good subsets with multiplicities 2^(m+1-|I|), by backtracking."""
    if m > 10:
        raise ValueError("good-subset enumeration is desk-scale only (m <= 10)")
    n = 2 * m + 1
    out = []

    def extend(start, chosen):
        out.append(tuple(chosen))
        for nxt in range(start, n):
            if (nxt + m) % n in chosen or (nxt - m) % n in chosen:
                continue
            chosen.append(nxt)
            extend(nxt + 1, chosen)
            chosen.pop()

    extend(0, [])
    return [
        GoodSubset(members, 1 << (m + 1 - len(members)), 4 ** len(members))
        for members in sorted(out, key=lambda s: (len(s), s))
    ]


def vI_exponents(I, m):
    """Torus eigenvalue exponents on V_I, as a sorted list mod q-1.

    Per tensor factor i the choices are +-2^i*(2^(m+1)+1) and +-2^i;
    exponents of a tensor product add.
    """
    qm1 = (1 << (2 * m + 1)) - 1
    I = sorted(set(x % (2 * m + 1) for x in I))
    theta1 = (1 << (m + 1)) + 1
    out = []
    choice_sets = [
        [
            (theta1 << i) % qm1,
            (1 << i) % qm1,
            (-(1 << i)) % qm1,
            (-(theta1 << i)) % qm1,
        ]
        for i in I
    ]
    for combo in product(*choice_sets):
        out.append(sum(combo) % qm1)
    return sorted(out)


def predicted_hdr_exponents(m):
    """Predicted torus eigenvalue multiplicities on H^1_dR.

    Union over good I of vI_exponents(I) with multiplicity
    2^(m+1-|I|); the total count is 2g.
    """
    if m > 4:
        raise ValueError("prediction is desk-scale only (m <= 4)")
    counts = {}
    for gs in good_subsets(m):
        for e in vI_exponents(gs.members, m):
            counts[e] = counts.get(e, 0) + gs.multiplicity
    return dict(sorted(counts.items()))


def brauer_square_check(i, m, shift=None):
    """Check phi_i^2 = 4 + 2 phi_(i+m+1) + phi_(i+1) on torus exponents.

    The check compares multisets of eigenvalue exponents; ``shift``
    overrides the m+1 twist (for negative controls).
    """
    if shift is None:
        shift = m + 1
    qm1 = (1 << (2 * m + 1)) - 1
    base = vI_exponents([i], m)
    lhs = {}
    for x in base:
        for y in base:
            e = (x + y) % qm1
            lhs[e] = lhs.get(e, 0) + 1
    rhs = {0: 4}
    for e in vI_exponents([i + shift], m):
        rhs[e] = rhs.get(e, 0) + 2
    for e in vI_exponents([i + 1], m):
        rhs[e] = rhs.get(e, 0) + 1
    return lhs == rhs


def conjecture_report(m, decomposition):
    """Multiplicity of the word (F^-1)^(2m+1) V^(2m+1) vs the 4^m guess.

    The companion context is the dimension (2m+1)4^m of the smallest
    Frobenius-stable tensor orbit, which appears twice in H^1_dR.
    """
    word = canonical_word("f" * (2 * m + 1) + "v" * (2 * m + 1))
    mult = decomposition.multiplicity_of(word)
    expected = 4**m
    return {
        "m": m,
        "word": word,
        "rank": 2 * (2 * m + 1),
        "multiplicity": mult,
        "expected_multiplicity": expected,
        "matches_paper": mult == expected,
        "orbit_dimension": (2 * m + 1) * 4**m,
    }
