import math

import numpy as np
import pytest

import multinorm as mn
from multinorm import INF, OptimConfig, SpaceSpec, VectorTuple

CFG = OptimConfig(seed=42)


def test_mu_weak_examples():
    s = SpaceSpec(2, 2)
    t = VectorTuple.of(s, [1, 0], [0, 1])
    res = mn.mu_weak(1, t, CFG)
    assert res.kind == "exact" and res.lower == pytest.approx(math.sqrt(2))

    si = SpaceSpec(INF, 2)
    res = mn.mu_weak(1, VectorTuple.of(si, [1, 0], [0, 1]), CFG)
    assert res.kind == "exact" and res.lower == pytest.approx(1.0)

    res = mn.mu_weak(2, VectorTuple.of(s, [1, 0], [1, 0]), CFG)
    # spectral norm of [[1,1],[0,0]]
    assert res.kind == "exact" and res.lower == pytest.approx(math.sqrt(2))


def test_mu_weak_sup_space_closed_form():
    rng = np.random.default_rng(8)
    si = SpaceSpec(INF, 4)
    for p in (1, 2):
        for _ in range(50):
            X = rng.standard_normal((4, 3))
            res = mn.mu_weak(p, VectorTuple(X, si), CFG)
            closed = float(((np.abs(X) ** p).sum(axis=1) ** (1 / p)).max())
            assert res.kind == "exact"
            assert res.lower == pytest.approx(closed, abs=1e-9)


def test_mu_weak_dual_examples():
    # primal l1_2, functionals live in linf
    s1 = SpaceSpec(1, 2)
    td = VectorTuple.of(s1.dual(), [1, 0], [0, 1])
    res = mn.mu_weak_dual(1, td, CFG)
    assert res.lower == pytest.approx(1.0, abs=1e-9)

    sinf = SpaceSpec(INF, 2)
    td = VectorTuple.of(sinf.dual(), [1, 0], [0, 1])
    res = mn.mu_weak_dual(1, td, CFG)
    assert res.lower == pytest.approx(2.0, abs=1e-9)

    s2 = SpaceSpec(2, 2)
    td = VectorTuple.of(s2.dual(), [1, 0], [1, 0])
    res = mn.mu_weak_dual(2, td, CFG)
    assert res.lower == pytest.approx(math.sqrt(2), abs=1e-9)


def test_mu_weak_dual_agrees_with_primal_computation():
    rng = np.random.default_rng(19)
    for p_space in (1, 2, INF):
        space = SpaceSpec(p_space, 3, (1.0, 2.0, 0.5))
        dual = space.dual()
        for p in (1, 2):
            for _ in range(20):
                L = rng.standard_normal((3, 2))
                t = VectorTuple(L, dual)
                a = mn.mu_weak_dual(p, t, CFG)
                b = mn.mu_weak(p, t, CFG)
                if a.kind == "exact" and b.kind == "exact":
                    assert a.lower == pytest.approx(b.lower, abs=1e-9)
                else:
                    assert a.lower <= b.upper + 1e-9
                    assert b.lower <= a.upper + 1e-9


def test_monotone_in_p():
    rng = np.random.default_rng(29)
    si = SpaceSpec(INF, 4)
    s2 = SpaceSpec(2, 3)
    count = 0
    for _ in range(200):
        X = rng.standard_normal((4, 3))
        v1 = mn.mu_weak(1, VectorTuple(X, si), CFG).lower
        v2 = mn.mu_weak(2, VectorTuple(X, si), CFG).lower
        v3 = mn.mu_weak(3, VectorTuple(X, si), CFG).lower
        assert v1 >= v2 - 1e-8 and v2 >= v3 - 1e-8
        count += 1
        Y = rng.standard_normal((3, 3))
        a = mn.mu_weak(1, VectorTuple(Y, s2), CFG)
        b = mn.mu_weak(2, VectorTuple(Y, s2), CFG)
        assert a.lower >= b.lower - 1e-8  # both exact on these paths
    assert count == 200


def test_monotone_bracket_ordering_on_inexact_roles():
    # on spaces without closed-form roles the ordering holds between the
    # certified sides: lower(mu_q) <= upper(mu_p) for p <= q
    rng = np.random.default_rng(30)
    s = SpaceSpec(3, 3)
    for _ in range(50):
        X = rng.standard_normal((3, 3))
        t = VectorTuple(X, s)
        vals = [mn.mu_weak(p, t, CFG) for p in (1, 2, 3)]
        for a, b in zip(vals, vals[1:]):
            assert b.lower <= a.upper + 1e-8


def test_sandwich():
    rng = np.random.default_rng(31)
    for p_space in (1, 2, INF):
        space = SpaceSpec(p_space, 3)
        for p in (1, 2, 3):
            for _ in range(30):
                X = rng.standard_normal((3, 3))
                t = VectorTuple(X, space)
                res = mn.mu_weak(p, t, CFG)
                norms = space.norm_cols(X)
                lo = float(norms.max())
                hi = float((norms**p).sum() ** (1 / p))
                assert res.lower >= lo - 1e-9
                assert res.upper <= hi + 1e-9 or res.lower <= hi + 1e-9


def test_contraction_under_operator():
    rng = np.random.default_rng(37)
    si = SpaceSpec(INF, 4)
    for _ in range(100):
        X = rng.standard_normal((4, 3))
        T = rng.standard_normal((4, 4))
        tn = mn.op_norm_pq(mn.MatrixOp(T, INF, INF), CFG).lower
        before = mn.mu_weak(1, VectorTuple(X, si), CFG).lower
        after = mn.mu_weak(1, VectorTuple(T @ X, si), CFG).lower
        assert after <= tn * before + 1e-8 * max(1.0, tn * before)


def test_pi_summing_examples():
    res = mn.pi_summing(1, 1, SpaceSpec(INF, 3), 3, CFG)
    assert res.kind == "exact" and res.lower == pytest.approx(3.0, abs=1e-12)

    res = mn.pi_summing(1, 1, SpaceSpec(2, 3), 1, CFG)
    assert res.lower == pytest.approx(1.0, abs=1e-9)

    res = mn.pi_summing(2, 2, SpaceSpec(2, 2), 2, CFG)
    assert res.lower == pytest.approx(math.sqrt(2), abs=1e-9)
    assert res.upper == pytest.approx(math.sqrt(2), abs=1e-9)


def test_pi_summing_with_operator():
    T = np.diag([2.0, 1.0])
    s = SpaceSpec(INF, 2)
    res = mn.pi_summing(1, 1, s, 2, CFG, operator=T)
    assert res.lower <= 2 * 2.0 + 1e-9
    assert res.lower >= 2.0 - 1e-9


def test_c_n_values():
    res = mn.c_n(SpaceSpec(2, 2), 1, CFG)
    assert res.kind == "exact" and res.lower == pytest.approx(1.0)

    res = mn.c_n(SpaceSpec(2, 2), 2, CFG)
    assert res.upper == pytest.approx(math.sqrt(2), abs=1e-9)
    assert res.lower == 1.0

    res = mn.c_n(SpaceSpec(1, 2, field="complex"), 2, CFG)
    assert res.upper <= math.sqrt(2) + 0.05


def test_pi_bar_times_c_identity():
    # the witness of c_n yields a lower bound n / c_n for the equal-norm constant
    s = SpaceSpec(2, 3)
    n = 3
    res = mn.c_n(s, n, CFG)
    cols = np.asarray(res.witness["tuple"])
    mu = mn.mu_weak(1, VectorTuple(cols, s), CFG)
    assert mu.kind == "exact"
    norms = s.norm_cols(cols)
    assert np.allclose(norms, 1.0, atol=1e-9)
    pi_bar_lower = norms.sum() / mu.lower
    assert pi_bar_lower == pytest.approx(n / res.upper, rel=1e-6)


def test_roots_of_unity_square_sums():
    for k in (2, 3, 5, 8):
        zeta = np.exp(2j * np.pi / k)
        rng = np.random.default_rng(k)
        coeff = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        coeff /= np.linalg.norm(coeff)
        z = np.array([sum(coeff[j] * zeta ** ((i + 1) * (j + 1)) for j in range(k)) for i in range(k)])
        assert (np.abs(z) ** 2).sum() == pytest.approx(k, abs=1e-9)
        unimodular = np.exp(2j * np.pi * rng.random(k))
        z = np.array([sum(unimodular[j] * zeta ** ((i + 1) * (j + 1)) for j in range(k)) for i in range(k)])
        assert (np.abs(z) ** 2).sum() == pytest.approx(k**2, abs=1e-9 * k**2)
