import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from suzukicoh import suzuki_ff as sf
from suzukicoh.suzuki_ff import (
    ConeFunc,
    ConsistencyError,
    IncreaseOrderError,
    RawFunc,
    cone_normalize,
    count_points,
    derivative,
    expand_at_infinity,
    expand_at_origin_fiber,
    h1,
    h2,
    monomial_with_pole_order,
    pole_order,
    tau_on_cone,
    tau_on_raw,
    tau_weight,
    to_cone,
    to_cone_by_elimination,
    to_raw,
    v_infinity,
    v_origin_fiber,
)


@pytest.fixture(scope="module")
def P1():
    return sf.curve_params(1)


@pytest.fixture(scope="module")
def P2():
    return sf.curve_params(2)


# ---------------------------------------------------------------------------
# raw arithmetic
# ---------------------------------------------------------------------------


def _naive_mul(f, g):
    """Unreduced schoolbook product, then one-sided z-reduction."""
    params = f.params
    F = params.field
    q, q0 = params.q, params.q0
    acc = {}
    for (i1, j1), c1 in f.terms.items():
        for (i2, j2), c2 in g.terms.items():
            k = (i1 + i2, j1 + j2)
            acc[k] = acc.get(k, 0) ^ F.mul(c1, c2)
    # reduce z-degrees >= q via z^q = z + y^(q+q0) + y^(q0+1), repeatedly
    changed = True
    while changed:
        changed = False
        for (i, j), c in list(acc.items()):
            if j >= q and c:
                del acc[(i, j)]
                for k in ((i, j - q + 1), (i + q + q0, j - q), (i + q0 + 1, j - q)):
                    acc[k] = acc.get(k, 0) ^ c
                changed = True
    return RawFunc(params, {k: c for k, c in acc.items() if c}, reduce=False)


def _random_raw(params, rng, nterms=4, max_y=6):
    terms = {}
    for _ in range(rng.randrange(1, nterms + 1)):
        terms[(rng.randrange(-max_y, max_y + 1), rng.randrange(params.q))] = rng.randrange(1, params.q)
    return RawFunc(params, terms)


def test_h_functions_m1(P1):
    assert h1(P1).terms == {(0, 4): 1, (5, 0): 1}  # z^4 + y^5
    assert h2(P1).terms == {(1, 4): 1, (0, 2): 1, (6, 0): 1}  # y z^4 + z^2 + y^6
    assert h1(P1).square().terms == {(0, 1): 1, (3, 0): 1}  # h1^2 = z + y^3


def test_h2_against_unreduced_oracle(P1):
    # h2 = z^(2q0) y + h1^(2q0), reduced: recompute with the naive product
    yz4 = RawFunc(P1, {(1, 4): 1})
    h1sq = _naive_mul(h1(P1), h1(P1))
    h1_4 = _naive_mul(h1sq, h1sq)
    assert (yz4 + h1_4) == h2(P1)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_structural_identities(m):
    P = sf.curve_params(m)
    q0 = P.q0
    y, z = P.y(), P.z()
    assert z * z == P.y(1) * h1(P) + h2(P)
    assert h1(P) ** q0 == z + P.y(q0 + 1)
    assert h2(P) ** q0 == h1(P) + P.y(q0) * z


def test_mul_matches_naive_oracle(P1):
    rng = random.Random(42)
    for _ in range(30):
        f = _random_raw(P1, rng)
        g = _random_raw(P1, rng)
        assert f * g == _naive_mul(f, g)


def test_derivative_examples(P1):
    assert derivative(h1(P1)).terms == {(4, 0): 1}  # y^4
    assert derivative(h2(P1)).terms == {(0, 4): 1}  # z^4


def test_derivative_kills_squares(P1, P2):
    rng = random.Random(5)
    for P in (P1, P2):
        for _ in range(20):
            f = _random_raw(P, rng)
            assert derivative(f.square()).is_zero()
            # Leibniz rule
            g = _random_raw(P, rng)
            assert derivative(f * g) == derivative(f) * g + f * derivative(g)


# ---------------------------------------------------------------------------
# valuations and expansions
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("m", [1, 2])
def test_valuations_at_infinity(m):
    P = sf.curve_params(m)
    q, q0 = P.q, P.q0
    assert v_infinity(P.y()) == -q
    assert v_infinity(P.z()) == -(q + q0)
    assert v_infinity(h1(P)) == -(q + 2 * q0)
    assert v_infinity(h2(P)) == -(q + 2 * q0 + 1)


@pytest.mark.parametrize("m", [1, 2])
def test_valuations_at_fiber(m):
    P = sf.curve_params(m)
    q, q0 = P.q, P.q0
    assert v_origin_fiber(P.z(), 0) == q0 + 1
    assert v_origin_fiber(h1(P), 0) == 2 * q0 + 1
    assert v_origin_fiber(h2(P), 0) == q + 2 * q0 + 1
    for z0 in (0, 1, P.field.zeta):
        assert v_origin_fiber(P.y(), z0) == 1
    assert v_origin_fiber(P.z() + P.raw({(0, 0): 1}), 0) == 0


def test_series_satisfy_curve_equation(P1):
    q, q0 = P1.q, P1.q0
    zh = sf._origin_chart(P1, 80)
    lhs = zh.pow(q) + zh
    rhs = sf.LocalSeries(P1.field, {q + q0: 1, q0 + 1: 1}, 80)
    assert (lhs + rhs).is_zero_to_prec()
    # the infinity chart is validated internally on every build
    Y, Z, Yinv = sf._infinity_chart(P1, 60)
    assert Y.valuation() == -q and Z.valuation() == -(q + q0)
    assert (Y * Yinv + sf.LocalSeries(P1.field, {0: 1}, 40)).is_zero_to_prec()


def test_expand_orders_and_errors(P1):
    s = expand_at_infinity(P1.y(), -P1.q)
    assert s.valuation() == -P1.q and s.leading_coeff() == 1
    with pytest.raises(IncreaseOrderError):
        expand_at_infinity(P1.y(), -P1.q - 1)
    with pytest.raises(IncreaseOrderError):
        expand_at_origin_fiber(P1.z(), 0, 2)  # v = q0+1 = 3 > 2
    assert expand_at_origin_fiber(P1.z(), 0, 3).valuation() == 3


def test_valuation_additivity(P1, P2):
    rng = random.Random(99)
    for P in (P1, P2):
        for _ in range(8):
            f = _random_raw(P, rng, nterms=2, max_y=3)
            g = _random_raw(P, rng, nterms=2, max_y=3)
            assert v_infinity(f * g) == v_infinity(f) + v_infinity(g)
            z0 = rng.randrange(P.q)
            assert v_origin_fiber(f * g, z0) == v_origin_fiber(f, z0) + v_origin_fiber(g, z0)


# ---------------------------------------------------------------------------
# cone representation
# ---------------------------------------------------------------------------


def test_cone_examples(P1):
    zz = to_cone(P1.z() * P1.z())
    assert zz.terms == {(1, 0, 1, 0): 1, (0, 0, 0, 1): 1}  # y h1 + h2
    y7 = to_cone(P1.y(7))
    assert y7.terms == {(7, 0, 0, 0): 1}


def test_cone_round_trips(P1, P2):
    rng = random.Random(2)
    for P in (P1, P2):
        for _ in range(150):
            f = _random_raw(P, rng)
            assert to_raw(to_cone(f)) == f
            key = (
                rng.randrange(-8, 9),
                rng.randrange(2),
                rng.randrange(P.q0),
                rng.randrange(P.q0),
            )
            g = ConeFunc(P, {key: rng.randrange(1, P.q)}, normalize=False)
            assert to_cone(to_raw(g)) == g


def test_cone_matches_series_elimination(P1):
    rng = random.Random(3)
    for _ in range(10):
        f = _random_raw(P1, rng, nterms=3, max_y=4)
        assert to_cone(f) == to_cone_by_elimination(f)


def test_cone_monomial_pole_orders_match_series(P1):
    rng = random.Random(4)
    for _ in range(10):
        key = (rng.randrange(-6, 7), rng.randrange(2), rng.randrange(2), rng.randrange(2))
        mono = to_raw(ConeFunc(P1, {key: 1}, normalize=False))
        assert v_infinity(mono) == -pole_order(P1, key)


@settings(max_examples=80, deadline=None)
@given(st.integers(-2000, 2000))
def test_numeration_system(n):
    P = sf.curve_params(2)
    key = monomial_with_pole_order(P, n)
    a, b, c, d = key
    assert pole_order(P, key) == n
    assert 0 <= b <= 1 and 0 <= c < P.q0 and 0 <= d < P.q0


def test_cone_normalize_guard(P1):
    with pytest.raises(ConsistencyError):
        cone_normalize(P1, {(0, 5, 0, 0): 1}, guard=1)


# ---------------------------------------------------------------------------
# torus action
# ---------------------------------------------------------------------------


def test_tau_weights(P1, P2):
    for P in (P1, P2):
        q0, qm1 = P.q0, P.q - 1
        assert tau_weight(P, (1, 0, 0, 0)) == 1
        assert tau_weight(P, (0, 1, 0, 0)) == q0 + 1
        assert tau_weight(P, (0, 0, 0, 1)) == (2 * q0 + 2) % qm1
        assert (P.q + 2 * q0 + 1) % qm1 == (2 * q0 + 2) % qm1


def test_tau_eigenfunctions(P1):
    # both defining pieces of h2 scale the same way, so h2 is an eigenfunction
    F = P1.field
    w = tau_weight(P1, (0, 0, 0, 1))
    assert tau_on_raw(h2(P1)) == h2(P1).scale(F.pow(F.zeta, w))
    w1 = tau_weight(P1, (0, 0, 1, 0))
    assert tau_on_raw(h1(P1)) == h1(P1).scale(F.pow(F.zeta, w1))


def test_tau_equivariance(P1, P2):
    rng = random.Random(6)
    for P in (P1, P2):
        for _ in range(25):
            f = _random_raw(P, rng)
            assert to_cone(tau_on_raw(f)) == tau_on_cone(to_cone(f))


def test_tau_preserves_curve_equation(P1):
    # z^q + z - y^(q+q0) - y^(q0+1) maps to a scalar multiple of itself
    P = P1
    rel = P.raw({(0, P.q): 1}) + P.z() + P.y(P.q + P.q0) + P.y(P.q0 + 1)
    assert rel.is_zero()  # the relation is reduced away entirely


# ---------------------------------------------------------------------------
# points and involution identities
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("m,count", [(1, 65), (2, 1025), (3, 16385)])
def test_point_counts(m, count):
    assert count_points(sf.curve_params(m)) == count


@pytest.mark.parametrize("m", [1, 2])
def test_involution_identities(m):
    # the three identities behind the P_inf chart construction
    P = sf.curve_params(m)
    q, q0 = P.q, P.q0
    y, z, H1, H2 = P.y(), P.z(), h1(P), h2(P)
    assert y * H2 ** (2 * q0) == z ** (2 * q0) * H2 + H1 ** (2 * q0 + 1)
    assert H2 ** (2 * q0) == z ** (2 * q0) * H1 + P.y(2 * q0) * H2
    lhs = (z ** q) * (H2 ** q0) + z * H2 ** (q + q0 - 1)
    rhs = H1 ** (q + q0) + H1 ** (q0 + 1) * H2 ** (q - 1)
    assert lhs == rhs


@pytest.mark.slow
def test_involution_identities_m3():
    P = sf.curve_params(3)
    q, q0 = P.q, P.q0
    z, H1, H2 = P.z(), h1(P), h2(P)
    assert P.y() * H2 ** (2 * q0) == z ** (2 * q0) * H2 + H1 ** (2 * q0 + 1)
    assert (z ** q) * (H2 ** q0) + z * H2 ** (q + q0 - 1) == H1 ** (q + q0) + H1 ** (q0 + 1) * H2 ** (q - 1)


def test_serialization_round_trip(P1):
    rng = random.Random(8)
    f = _random_raw(P1, rng)
    assert sf.raw_from_json(P1, f.to_json()) == f
    g = to_cone(f)
    assert sf.cone_from_json(P1, g.to_json()) == g
