"""Exact arithmetic in the binary fields GF(2^n) for odd n = 2m+1.

Field elements are plain Python ints holding the coefficient bitmask of
the polynomial representative (bit i = coefficient of x^i), so 0 and 1
are the additive and multiplicative identities.  There is no global
field context: every element is interpreted against an explicit
:class:`FieldParams`, which owns the log/exp tables.

The reduction modulus is always the lexicographically smallest primitive
polynomial of degree n (bitmask read as an integer), so serialized
elements are reproducible.  The residue of x is a generator of the
multiplicative group and is exposed as ``field.zeta``.

Fields are tiny here (q <= 512), so discrete logs are a table lookup and
every Frobenius power x -> x^(2^k) is precomputed.
"""

from __future__ import annotations

import numpy as np

#: largest m accepted by make_field; q = 2^(2m+1) stays table-friendly
MAX_M = 4


class FieldParams:
    """Arithmetic context for GF(2^n) with a fixed primitive modulus."""

    def __init__(self, n, modulus):
        if modulus.bit_length() != n + 1:
            raise ValueError("modulus must have degree n")
        self.n = n
        self.modulus = modulus
        self.q = 1 << n
        exp, log = _build_tables(n, modulus)
        if exp is None:
            raise ValueError("modulus 0b%s is not primitive" % bin(modulus)[2:])
        self._exp = exp          # doubled: exp[i] for 0 <= i < 2(q-1)
        self._log = log          # log[0] = -1 sentinel
        self.zeta = 2 if n > 1 else 2 ^ modulus  # residue of x (1 in GF(2))
        # frobenius tables: _frob[k][a] = a^(2^k) for 0 <= k < n
        self._frob = _build_frobenius_tables(self)
        # numpy copies for the vectorized linear algebra kernels
        self.exp_np = np.asarray(exp, dtype=np.int64)
        self.log_np = np.asarray(log, dtype=np.int64)
        self.frob_np = np.asarray(self._frob, dtype=np.uint16)

    # -- ring operations ------------------------------------------------

    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inversion of zero in GF(2^%d)" % self.n)
        return self._exp[self.q - 1 - self._log[a]]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        """a**e for any integer e (negative allowed for nonzero a)."""
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inversion of zero in GF(2^%d)" % self.n)
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def pow2(self, a, k):
        """Frobenius power a^(2^k); k may be negative (inverse Frobenius)."""
        return self._frob[k % self.n][a]

    def sqrt(self, a):
        """The unique square root, sqrt(a) = a^(q/2) = a^(2^(n-1))."""
        return self._frob[self.n - 1][a]

    def dlog(self, a):
        """Discrete log base zeta, in Z/(q-1)."""
        if a == 0:
            raise ZeroDivisionError("dlog(0) is undefined")
        return self._log[a]

    # -- misc -----------------------------------------------------------

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def to_json(self):
        return {"n": self.n, "modulus": self.modulus}

    def __eq__(self, other):
        return (
            isinstance(other, FieldParams)
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.n, self.modulus))

    def __repr__(self):
        return "FieldParams(n=%d, modulus=0b%s)" % (self.n, bin(self.modulus)[2:])


def _build_tables(n, modulus):
    """Exp/log tables for powers of x mod ``modulus``.

    Returns (None, None) unless x has multiplicative order exactly
    2^n - 1, which simultaneously certifies irreducibility and
    primitivity of the modulus.
    """
    q = 1 << n
    exp = [0] * (2 * (q - 1))
    log = [-1] * q
    acc = 1
    for i in range(q - 1):
        if log[acc] != -1:      # returned to a seen power early: order < q-1
            return None, None
        exp[i] = acc
        exp[i + q - 1] = acc
        log[acc] = i
        acc <<= 1
        if acc & q:
            acc ^= modulus
    if acc != 1:                # x^(q-1) != 1: x not a unit of full order
        return None, None
    return exp, log


def _build_frobenius_tables(field):
    q = field.q
    tables = [list(range(q))]
    prev = tables[0]
    for _ in range(1, field.n):
        prev = [field.mul(a, a) for a in prev]
        tables.append(prev)
    return tables


def make_field(m):
    """Parameters for GF(2^(2m+1)) with the smallest primitive modulus."""
    if not 1 <= m <= MAX_M:
        raise ValueError("m must satisfy 1 <= m <= %d, got %r" % (MAX_M, m))
    n = 2 * m + 1
    return field_of_degree(n)


def field_of_degree(n):
    """Smallest-primitive-modulus field of any degree n >= 1."""
    for modulus in range((1 << n) + 1, 1 << (n + 1), 2):
        exp, _ = _build_tables(n, modulus)
        if exp is not None:
            return FieldParams(n, modulus)
    raise RuntimeError("no primitive polynomial of degree %d found" % n)


def field_f2():
    """GF(2) itself (used by closed-form Dieudonne models)."""
    return field_of_degree(1)
