"""Independent brute-force oracles for the derived evaluators.

These re-derive small-instance values with direct enumeration or fine
grids, never through the code paths they check.
"""

import itertools
import math

import numpy as np
import pytest

import multinorm as mn
from multinorm import INF, MultiNormSpec as Spec, OptimConfig, SpaceSpec, VectorTuple

CFG = OptimConfig(seed=8)


def test_mu1_matches_direct_sign_enumeration():
    rng = np.random.default_rng(70)
    for p_space in (1, 1.7, 2, 3, INF):
        space = SpaceSpec(p_space, 3, (1.0, 0.4, 2.5))
        for _ in range(20):
            X = rng.standard_normal((3, 3))
            brute = max(
                space.norm(X @ np.array(signs))
                for signs in itertools.product((1.0, -1.0), repeat=3)
            )
            res = mn.mu_weak(1, VectorTuple(X, space), CFG)
            assert res.kind == "exact"
            assert res.lower == pytest.approx(brute, abs=1e-10)


def test_mu2_matches_direct_sphere_grid_on_l2():
    rng = np.random.default_rng(71)
    space = SpaceSpec(2, 2)
    thetas = np.linspace(0, 2 * np.pi, 720, endpoint=False)
    for _ in range(10):
        X = rng.standard_normal((2, 2))
        # sup over unit lambda of l2 norm of pairings, by fine grid
        brute = 0.0
        for th in thetas:
            lam = np.array([math.cos(th), math.sin(th)])
            brute = max(brute, float(np.hypot(X[:, 0] @ lam, X[:, 1] @ lam)))
        res = mn.mu_weak(2, VectorTuple(X, space), CFG)
        assert res.kind == "exact"
        assert res.lower == pytest.approx(brute, abs=1e-4)
        assert res.lower >= brute - 1e-12


def test_hilbert_matches_orthonormal_grid_in_the_plane():
    rng = np.random.default_rng(72)
    space = SpaceSpec(2, 2)
    thetas = np.linspace(0, 2 * np.pi, 1440, endpoint=False)
    for _ in range(10):
        X = rng.standard_normal((2, 2))
        # orthonormal pairs in the plane: e1 = (c, s), e2 = +-(-s, c);
        # the optimal coefficient vector gives the l2 norm of the pairings
        brute = 0.0
        for th in thetas:
            e1 = np.array([math.cos(th), math.sin(th)])
            e2 = np.array([-e1[1], e1[0]])
            brute = max(brute, float(np.hypot(e1 @ X[:, 0], e2 @ X[:, 1])))
        res = mn.evaluate(Spec.hilbert(), VectorTuple(X, space), CFG)
        assert res.lower == pytest.approx(brute, abs=1e-5)
        assert res.lower >= brute - 1e-10


def test_generated_value_matches_explicit_closure():
    # oracle route: close the family explicitly (permutations + merges +
    # trivials), then pad members with zero summands by placing their
    # projections injectively into the tuple slots
    space = SpaceSpec(2, 3)
    seed_blocks = [[0], [1, 2]]
    seed = mn.FamilyOfDecompositions((mn.coordinate_decomposition(space, seed_blocks),))
    closed = mn.close_family(seed, max_len=3)
    gen = Spec.generated(seed)
    rng = np.random.default_rng(73)
    for _ in range(20):
        n = int(rng.integers(1, 4))
        X = rng.standard_normal((3, n))
        implicit = mn.evaluate(gen, VectorTuple(X, space), CFG).lower
        explicit = float(space.norm_cols(X).max())
        for d in closed.members:
            k = d.length
            if k > n:
                continue
            for slots in itertools.permutations(range(n), k):
                y = sum(d.projections[i] @ X[:, s] for i, s in enumerate(slots))
                explicit = max(explicit, space.norm(y))
        assert implicit == pytest.approx(explicit, abs=1e-12)


def test_standard_q_matches_direct_partition_enumeration():
    rng = np.random.default_rng(74)
    space = SpaceSpec(2, 4, (1.0, 2.0, 0.5, 1.5))
    q = 3
    for _ in range(10):
        X = rng.standard_normal((4, 2))
        brute = 0.0
        for assign in itertools.product(range(2), repeat=4):
            parts = []
            for j in range(2):
                mask = np.array([a == j for a in assign])
                parts.append(float((space.w[mask] * np.abs(X[mask, j]) ** 2).sum() ** 0.5))
            brute = max(brute, float(np.linalg.norm(parts, ord=q)))
        res = mn.evaluate(Spec.standard_q(q), VectorTuple(X, space), CFG)
        assert res.kind == "exact"
        assert res.lower == pytest.approx(brute, abs=1e-12)


def test_max_multinorm_vs_definition_on_l1():
    # dualize by brute force: functionals with entries in {-1, 0, 1} cover
    # the masked sign patterns that attain the supremum on an L1-type space
    rng = np.random.default_rng(75)
    space = SpaceSpec(1, 3)
    for _ in range(10):
        X = rng.standard_normal((3, 2))
        brute = 0.0
        for s1 in itertools.product((-1.0, 0.0, 1.0), repeat=3):
            for s2 in itertools.product((-1.0, 0.0, 1.0), repeat=3):
                lam = np.stack([s1, s2], axis=1)
                # mu_1 of the functional tuple, exact over real scalars
                mu = max(
                    float(np.abs(lam @ np.array(z)).max())
                    for z in itertools.product((1.0, -1.0), repeat=2)
                )
                if mu == 0:
                    continue
                val = abs(sum(space.pairing(X[:, j], lam[:, j]) for j in range(2))) / mu
                brute = max(brute, val)
        res = mn.evaluate(Spec.max_spec(), VectorTuple(X, space), CFG)
        assert res.kind == "exact"
        assert res.lower == pytest.approx(brute, abs=1e-10)
