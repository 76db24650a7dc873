"""Verification suites: recompute every published claim at desk scale.

Each suite returns a list of check dicts {name, passed, expected,
computed}; the driver aggregates them and the CLI exits nonzero when
any check fails.  Suites that need the full pipeline share one module
build per (m, cache) via :mod:`suzukicoh.pipeline`.
"""

from __future__ import annotations

import random

import numpy as np

from . import dieudonne as dd
from . import known_results as kr
from . import linalg
from . import rep_theory as rt
from . import suzuki_ff as sf
from .cohomology import (
    cartier_by_derivative,
    cartier_raw,
    verify_cartier_table,
)
from .dieudonne import canonical_word, word_from_runs
from .suzuki_ff import (
    derivative,
    h1,
    h2,
    to_cone,
    to_raw,
    v_affine_point,
    v_infinity,
    v_origin_fiber,
)

SUITES = (
    "dims",
    "table1",
    "table2",
    "props",
    "trivial",
    "maincor",
    "rep",
    "conjecture",
    "properties",
)

# rows of the published Cartier table whose printed general-q0 form is
# wrong away from m = 1 (recomputed value is z^q0 for both)
TABLE1_TYPO_ROWS = {"h2", "y*h1"}
# entries of the published m=1 action table that no chart-split choice
# explains; reported with recomputed images
TABLE2_MISMATCH_ROWS = {(23, "F"), (28, "F")}


def _check(name, expected, computed):
    return {"name": name, "passed": bool(expected == computed), "expected": expected, "computed": computed}


def _ok(name, passed, detail=""):
    return {"name": name, "passed": bool(passed), "expected": "pass", "computed": detail or ("pass" if passed else "fail")}


def expected_decomposition(m):
    """Published indecomposable decompositions, as (word, multiplicity)."""
    if m == 1:
        return sorted(
            [(canonical_word("ffvv"), 1), (canonical_word("fffvvv"), 4)]
        )
    if m == 2:
        ez = word_from_runs([(3, 3), (4, 3), (3, 4)])
        return sorted(
            [
                (canonical_word("fv"), 1),
                (canonical_word("fffvvv"), 1),
                (canonical_word("f" * 5 + "v" * 5), 16),
                (ez, 4),
            ]
        )
    return None


def suite_dims(m, ctx):
    params = ctx["params"]
    space = ctx["space"]
    checks = [
        _check("index-set size = g", params.genus, len(space.tuples)),
        _check("de Rham dimension = 2g", 2 * params.genus, ctx["module"].dim),
    ]
    pole_orders = [sf.pole_order(params, t) for t in space.tuples]
    checks.append(_ok("basis pole orders distinct", len(set(pole_orders)) == len(pole_orders)))
    fpoles = [
        sf.pole_order(params, (-(a + 1), 1 - b, params.q0 - 1 - c, params.q0 - 1 - d))
        for (a, b, c, d) in space.tuples
    ]
    checks.append(_ok("H^1(O) reps have poles at P_inf", all(p >= 1 for p in fpoles)))
    checks.append(_ok("H^1(O) pole orders distinct", len(set(fpoles)) == len(fpoles)))
    return checks


def suite_table1(m, ctx):
    params = ctx["params"]
    report = verify_cartier_table(params)
    checks = []
    mismatched = {row["row"] for row in report if not row["matches_printed"]}
    expected_mismatch = TABLE1_TYPO_ROWS if m >= 2 else set()
    checks.append(
        _check("rows differing from print are exactly the flagged typos", sorted(expected_mismatch), sorted(mismatched))
    )
    for row in report:
        if row["row"] in mismatched:
            checks.append(
                _ok(
                    "row %s flagged; recomputed RHS %s" % (row["row"], row["computed_rhs"]),
                    row["row"] in expected_mismatch,
                )
            )
    checks.append(
        _ok(
            "all other rows match exactly",
            all(row["matches_printed"] for row in report if row["row"] not in expected_mismatch),
        )
    )
    return checks


def suite_table2(m, ctx):
    if m != 1:
        return [_ok("published action table applies to m=1 only; skipped", True)]
    from .tables import verify_action_table

    rep = verify_action_table(ctx["params"], ctx["space"], ctx["ops"]["F"], ctx["ops"]["V"])
    checks = [
        _check(
            "rows beyond any split choice are exactly the flagged ones",
            sorted(TABLE2_MISMATCH_ROWS),
            sorted(rep["mismatch_rows"]),
        ),
        _ok("one global split choice explains all shifted rows", rep["section_shift_consistent"]),
    ]
    lam_exact = all(
        row["V"]["verdict"] == "exact" and row["F"]["verdict"] == "exact"
        for row in rep["rows"][:14]
    )
    checks.append(_ok("all 14 lambda rows exact (split-independent)", lam_exact))
    psi_gamma = all(
        row["F"]["verdict"] in ("exact", "section_shift")
        for row in rep["rows"][14:]
        if (row["row"], "F") not in TABLE2_MISMATCH_ROWS
    )
    checks.append(_ok("psi-row F images match print up to split choice", psi_gamma))
    ctx["table2_report"] = rep
    return checks


def suite_props(m, ctx):
    module = ctx["module"]
    checks = []
    exp = kr.expected(m)
    checks.append(_check("a-number", exp["a_number"], dd.a_number(module)))
    checks.append(_check("2-rank", 0, dd.p_rank(module)))
    dec = ctx["decomposition"]
    want = expected_decomposition(m)
    if want is not None:
        checks.append(_check("indecomposable decomposition", want, dec.as_multiset()))
    else:
        checks.append(_ok("decomposition computed (no published target): %s" % dec, True))
    checks.append(_check("decomposition exhausts 2g", 2 * ctx["params"].genus, dec.total_dim()))
    checks.append(_check("summand a-numbers add up", dd.a_number(module), dec.total_a_number()))
    return checks


def suite_trivial(m, ctx):
    checks = []
    exp = kr.expected(m)
    M0, Mne, mults = ctx["tau_split"]
    checks.append(_check("trivial eigenspace rank = 2q0", 2 * ctx["params"].q0, M0.dim))
    checks.append(_check("trivial eigenspace EO type", exp["eo_trivial"], dd.eo_type(M0)))
    checks.append(_check("trivial eigenspace a-number = 2^(m-1)", 1 << (m - 1), dd.a_number(M0)))
    checks.append(_check("trivial eigenspace 2-rank", 0, dd.p_rank(M0)))
    model = kr.d_m0_action(m)
    checks.append(
        _check(
            "curve trivial part matches the closed-form model",
            dd.decompose(model).as_multiset(),
            dd.decompose(M0).as_multiset(),
        )
    )
    for mm in range(1, 7):
        model = kr.d_m0_action(mm)
        okeo = dd.eo_type(model) == kr.expected(mm)["eo_trivial"]
        oka = dd.a_number(model) == 1 << (mm - 1)
        okw = dd.decompose(model).as_multiset() == kr.trivial_eigenspace_words(mm)
        checks.append(_ok("model m=%d: EO, a-number, words" % mm, okeo and oka and okw))
    return checks


def suite_maincor(m, ctx):
    checks = []
    agree = all(
        kr.w0_occurrence(mm, e) == kr.w0_occurrence_scan(mm, e)
        for mm in range(1, 11)
        for e in range(0, mm + 1)
    )
    checks.append(_ok("occurrence congruence = relation scan for m <= 10", agree))
    dec = ctx["decomposition"]
    word = canonical_word("f" * (m + 1) + "v" * (m + 1))
    checks.append(
        _ok(
            "E/E(F^%d+V^%d) occurs in the computed module" % (m + 1, m + 1),
            dec.multiplicity_of(word) >= 1,
        )
    )
    if m % 2 == 0:
        checks.append(_ok("E/E(F+V) occurs (m even)", dec.multiplicity_of("fv") >= 1))
    if m % 4 == 1:
        checks.append(_ok("E/E(F^2+V^2) occurs (m = 1 mod 4)", dec.multiplicity_of("ffvv") >= 1))
    return checks


def suite_rep(m, ctx):
    checks = []
    gs = rt.good_subsets(m)
    total = sum(g.multiplicity * g.dimension for g in gs)
    checks.append(_check("sum of multiplicities x dimensions = 2g", 2 * ctx["params"].genus, total))
    _, _, mults = ctx["tau_split"]
    predicted = rt.predicted_hdr_exponents(m)
    checks.append(_check("torus eigenvalue multiset matches prediction", predicted, mults))
    n = 2 * m + 1
    checks.append(
        _ok(
            "Brauer square identity on torus exponents (all i)",
            all(rt.brauer_square_check(i, m) for i in range(n)),
        )
    )
    checks.append(
        _ok(
            "negative control fails as it should",
            not rt.brauer_square_check(0, m, shift=m + 2),
        )
    )
    good_family = {g.members for g in gs}
    translated = {tuple(sorted((x + 1) % n for x in g.members)) for g in gs}
    checks.append(_ok("good family is translation stable", translated == good_family))
    return checks


def suite_conjecture(m, ctx):
    rep = rt.conjecture_report(m, ctx["decomposition"])
    name = "multiplicity of (F^-1)^%d V^%d" % (2 * m + 1, 2 * m + 1)
    if m <= 2:
        return [_check(name + " (proved cases)", rep["expected_multiplicity"], rep["multiplicity"])]
    # beyond the proved range this is evidence, not a gate
    return [
        _ok(
            name + ": computed %d, conjectured %d (reported as evidence)" % (rep["multiplicity"], rep["expected_multiplicity"]),
            True,
        )
    ]


def _random_raw(params, rng, nterms=4, max_y=8, squareable=False):
    terms = {}
    for _ in range(rng.randrange(1, nterms + 1)):
        i = rng.randrange(-max_y, max_y + 1)
        j = rng.randrange(0, params.q)
        c = rng.randrange(1, params.q)
        terms[(i, j)] = c
    return sf.RawFunc(params, terms)


def suite_properties(m, ctx, samples=100, roundtrips=1000):
    params = ctx["params"]
    q0, q = params.q0, params.q
    F = params.field
    module = ctx["module"]
    rng = random.Random(20160923 + m)
    checks = []

    # operator identities: blockwise always; dense composition at small dims
    Fop, Vop = ctx["ops"]["F"], ctx["ops"]["V"]
    checks.append(_ok("FV = VF = 0 (blockwise)", dd.check_fv_zero(module)))
    if module.dim <= 600:
        FV = Fop.compose(Vop)
        VF = Vop.compose(Fop)
        checks.append(_ok("FV = VF = 0 (dense product)", not (FV.matrix.any() or VF.matrix.any())))
    kerF = dd.kernel_F(module)
    imV = dd.image_V(module, dd._full_space(module))
    checks.append(_check("dim ker F = g", params.genus, dd.space_dim(kerF)))
    checks.append(_ok("ker F = im V", dd.space_key(kerF) == dd.space_key(imV)))
    dense = dd.space_to_dense(module, kerF)
    lam_ok = bool(np.all(dense[:, : params.genus] == 0)) and dense.shape[0] == params.genus
    checks.append(_ok("ker F is the lambda block", lam_ok))

    # tau has order exactly q-1; F doubles torus weights
    tau = ctx["ops"]["tau"]
    weights = ctx["space"].weights()
    checks.append(_check("tau has multiplicative order q-1", params.q - 1, _tau_order(F, tau)))
    fw_ok = True
    for w, cols in module.block_index.items():
        rows = np.nonzero(Fop.matrix[:, cols].any(axis=1))[0]
        if rows.size and not np.all(weights[rows] == (2 * w) % module.qm1):
            fw_ok = False
    checks.append(_ok("F doubles torus weights", fw_ok))

    # Cartier properties on random samples
    exact_ok = True
    linear_ok = True
    oracle_ok = True
    for _ in range(samples):
        h = _random_raw(params, rng)
        if not cartier_raw(params, derivative(h)).is_zero():
            exact_ok = False
        f_ = _random_raw(params, rng, nterms=2, max_y=3)
        w_ = _random_raw(params, rng, nterms=2, max_y=3)
        lhs = cartier_raw(params, f_.square() * w_)
        rhs = f_ * cartier_raw(params, w_)
        if lhs != rhs:
            linear_ok = False
        if cartier_raw(params, w_) != cartier_by_derivative(params, w_):
            oracle_ok = False
    checks.append(_ok("Cartier annihilates exact differentials (%d samples)" % samples, exact_ok))
    checks.append(_ok("Cartier is 1/p-linear (%d samples)" % samples, linear_ok))
    checks.append(_ok("Cartier = sqrt of derivative (independent oracle)", oracle_ok))

    # cone round trips
    rt_ok = True
    for _ in range(roundtrips):
        f_ = _random_raw(params, rng, nterms=3, max_y=6)
        if to_raw(to_cone(f_)) != f_:
            rt_ok = False
            break
        key = (
            rng.randrange(-8, 9),
            rng.randrange(0, 2),
            rng.randrange(0, q0),
            rng.randrange(0, q0),
        )
        g_ = sf.ConeFunc(params, {key: rng.randrange(1, q)}, normalize=False)
        if to_cone(to_raw(g_)) != g_:
            rt_ok = False
            break
    checks.append(_ok("cone round trips (%d samples)" % roundtrips, rt_ok))

    # point count
    if m <= 3:
        checks.append(_check("point count = q^2+1", q * q + 1, sf.count_points(params)))

    # divisor data
    if m <= 2:
        checks.extend(_divisor_checks(params, ctx.get("order")))
    return checks


def _tau_order(field, tau):
    """Multiplicative order; fast for diagonal tau, dense powers otherwise."""
    mat = tau.matrix
    if np.all(mat == np.diag(np.diagonal(mat))):
        from math import gcd, lcm

        qm1 = field.q - 1
        return lcm(*(qm1 // gcd(qm1, field.dlog(int(d))) for d in np.diagonal(mat)))
    acc = mat.copy()
    order = 1
    eye = np.eye(mat.shape[0], dtype=np.uint16)
    while not np.all(acc == eye):
        acc = linalg.matmul(acc, mat, field)
        order += 1
        if order > field.q:
            raise RuntimeError("tau order exceeds q")
    return order


def _divisor_checks(params, order=None):
    q, q0 = params.q, params.q0
    F = params.field
    checks = []
    y = params.y()
    z = params.z()
    H1 = h1(params)
    H2 = h2(params)
    vinf = lambda f: v_infinity(f, order)
    vorg = lambda f, z0: v_origin_fiber(f, z0, order)
    vpt = lambda f, y0, z0: v_affine_point(f, y0, z0, order)

    def affine_zeros(f):
        # f must be polynomial in y, z (true for y, z, h1, h2)
        out = []
        for y0 in F.elements():
            rhs = F.mul(F.pow(y0, q0), F.add(F.pow(y0, q), y0))
            for z0 in F.elements():
                if F.add(F.pow(z0, q), z0) != rhs:
                    continue
                val = 0
                for (i, j), c in f.terms.items():
                    val ^= F.mul(c, F.mul(F.pow(y0, i), F.pow(z0, j)))
                if val == 0:
                    out.append((y0, z0))
        return out

    # div(y): zeros exactly the fiber, each simple; pole q at infinity
    vals = [vorg(y, z0) for z0 in F.elements()]
    checks.append(_ok("div(y): v = 1 at every fiber point", all(v == 1 for v in vals)))
    checks.append(_check("div(y): pole order at P_inf", -q, vinf(y)))
    checks.append(_check("div(y): degree", 0, sum(vals) + vinf(y)))

    # div(z): simple zeros at (y0, 0), y0 != 0; order q0+1 at origin
    zz = [(y0, 0) for y0 in F.units()]
    vz = [vpt(z, y0, 0) for y0 in F.units()]
    checks.append(_ok("div(z): v = 1 at (y0, 0), y0 != 0", all(v == 1 for v in vz)))
    checks.append(_check("div(z): v at origin = q0+1", q0 + 1, vorg(z, 0)))
    checks.append(
        _ok("div(z): no other zeros", sorted(affine_zeros(z)) == sorted(zz + [(0, 0)]))
    )
    checks.append(_check("div(z): degree", 0, sum(vz) + (q0 + 1) + vinf(z)))

    # div(h1): simple zeros on S, order 2q0+1 at origin
    s_points = [
        (y0, z0)
        for (y0, z0) in affine_zeros(H1)
        if (y0, z0) != (0, 0)
    ]
    checks.append(_check("div(h1): |S| = q-1", q - 1, len(s_points)))
    vh1 = [vpt(H1, y0, z0) for (y0, z0) in s_points]
    checks.append(_ok("div(h1): v = 1 on S", all(v == 1 for v in vh1)))
    checks.append(_check("div(h1): v at origin = 2q0+1", 2 * q0 + 1, vorg(H1, 0)))
    checks.append(_check("div(h1): degree", 0, sum(vh1) + (2 * q0 + 1) + vinf(H1)))

    # div(h2): a single zero at the origin of order q+2q0+1
    checks.append(_ok("div(h2): origin is the only affine zero", affine_zeros(H2) == [(0, 0)]))
    checks.append(_check("div(h2): v at origin", q + 2 * q0 + 1, vorg(H2, 0)))
    checks.append(_check("div(h2): degree", 0, vorg(H2, 0) + vinf(H2)))
    return checks


def build_context(m, cache_dir=None, order=None):
    from .pipeline import build_operators
    from .suzuki_ff import CurveParams

    params = CurveParams(m)
    space, ops = build_operators(params, cache_dir)
    module = dd.EModule(params.field, ops["F"], ops["V"], tau=ops["tau"], weights=space.weights())
    ctx = {
        "params": params,
        "space": space,
        "ops": ops,
        "module": module,
        "order": order,
    }
    ctx["decomposition"] = dd.decompose(module)
    ctx["tau_split"] = dd.tau_split(module)
    return ctx


def run_suites(m, suites, cache_dir=None, ctx=None, order=None):
    """Run the named suites; returns (all_passed, report dict)."""
    if ctx is None:
        ctx = build_context(m, cache_dir, order=order)
    wanted = list(SUITES) if "all" in suites else list(suites)
    unknown = [s for s in wanted if s not in SUITES]
    if unknown:
        raise ValueError("unknown suite(s): %s" % ", ".join(unknown))
    fns = {
        "dims": suite_dims,
        "table1": suite_table1,
        "table2": suite_table2,
        "props": suite_props,
        "trivial": suite_trivial,
        "maincor": suite_maincor,
        "rep": suite_rep,
        "conjecture": suite_conjecture,
        "properties": suite_properties,
    }
    report = {"m": m, "suites": {}}
    ok = True
    for s in wanted:
        checks = fns[s](m, ctx)
        report["suites"][s] = checks
        ok = ok and all(c["passed"] for c in checks)
    report["passed"] = ok
    return ok, report
