"""Acceptance battery: closed-form values the build must reproduce.

Each criterion returns a CriterionResult with per-check detail lines; the
CLI `verify` command and the pytest suite both run these functions, so the
command line and the tests cannot drift apart.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import summing
from .decompositions import (
    Decomposition,
    FamilyOfDecompositions,
    band_family,
    coordinate_decomposition,
    generated_multinorm,
    is_hermitian,
    multi_dual,
    orthogonal_set,
)
from .matrixlaws import is_row_special, row_special_decompose
from .multinorms import MultiNormSpec as Spec, check_axioms, evaluate, rate_of_growth
from .operators import mb_norm
from .optim import INF, OptimConfig
from .spaces import SpaceSpec, VectorTuple


@dataclass
class CriterionResult:
    cid: str
    title: str
    passed: bool
    details: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {
            "id": self.cid,
            "title": self.title,
            "passed": self.passed,
            "details": self.details,
            "elapsed_s": self.elapsed,
        }


def _delta_tuple(space: SpaceSpec, n: int) -> VectorTuple:
    X = np.zeros((space.dim, n))
    for j in range(n):
        X[j, j] = 1.0
    return VectorTuple(X, space)


class _Checker:
    def __init__(self):
        self.details: list[str] = []
        self.passed = True

    def check(self, ok: bool, line: str):
        self.passed = self.passed and bool(ok)
        self.details.append(("ok  " if ok else "FAIL") + " " + line)


def crit_1_max_on_delta_tuples(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    for r in (1.0, 1.5, 2.0):
        for n in (2, 3):
            space = SpaceSpec(r, 3)
            res = evaluate(Spec.max_spec(), _delta_tuple(space, n), cfg)
            target = n ** (1.0 / r)
            if r == 1.0:
                ok = res.kind == "exact" and abs(res.lower - target) <= 1e-10
                c.check(ok, f"r=1 n={n}: exact max = {res.lower:.12f}, target {target:.12f}")
            else:
                contains = res.lower - 1e-9 <= target <= res.upper + 1e-9
                width = res.upper - res.lower
                c.check(contains and width <= 5e-2, f"r={r} n={n}: bracket [{res.lower:.9f}, {res.upper:.9f}] width {width:.2e} contains {target:.9f}")
    return CriterionResult("1", "maximum multi-norm of standard basis tuples equals n^(1/r)", c.passed, c.details)


def crit_2_standard_q_growth(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    for p in (1, 2):
        for q in (p, p + 1):
            for n in (1, 2, 3, 4):
                res = rate_of_growth(Spec.standard_q(q), SpaceSpec(p, 4), n, cfg)
                target = n ** (1.0 / q)
                ok = res.kind == "exact" and abs(res.lower - target) <= 1e-9
                c.check(ok, f"p={p} q={q} n={n}: growth {res.lower:.12f}, target {target:.12f}")
    return CriterionResult("2", "standard q-multi-norm growth on l^p_4 equals n^(1/q)", c.passed, c.details)


def crit_3_pq_on_delta_tuples(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    for r, p, q in ((1.0, 1, 2), (1.0, 2, 2), (1.5, 2, 2), (2.0, 2, 3), (1.5, 1.5, 3)):
        for n in (2, 3):
            space = SpaceSpec(r, 3)
            res = evaluate(Spec.pq_spec(p, q), _delta_tuple(space, n), cfg)
            target = n ** (1.0 / q)
            ok_low = abs(res.lower - target) <= 1e-6
            ok_up = abs(res.upper - target) <= 1e-12
            c.check(ok_low, f"r={r} (p,q)=({p},{q}) n={n}: witness value {res.lower:.9f} vs {target:.9f}")
            c.check(ok_up, f"r={r} (p,q)=({p},{q}) n={n}: q-sum upper bound {res.upper:.12f} == {target:.12f}")
    return CriterionResult("3", "(p,q)-multi-norm of basis tuples equals n^(1/q) for p >= r", c.passed, c.details)


def crit_4_summing_constants(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    for n in (1, 2, 3, 4):
        res = summing.pi_summing(1, 1, SpaceSpec(INF, n), n, cfg)
        ok = res.kind == "exact" and abs(res.lower - n) <= 1e-12
        c.check(ok, f"n={n}: pi_1 on sup-norm space = {res.lower:.14f}, target {n}")
    return CriterionResult("4", "(1,1)-summing constant of the n-dim sup-norm space equals n", c.passed, c.details)


def crit_5_mu_on_sup_norm_spaces(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    rng = np.random.default_rng(cfg.seed)
    space = SpaceSpec(INF, 4)
    worst = 0.0
    for p in (1, 2):
        for _ in range(100):
            X = rng.standard_normal((4, 3))
            res = summing.mu_weak(p, VectorTuple(X, space), cfg)
            closed = float(((np.abs(X) ** p).sum(axis=1) ** (1.0 / p)).max())
            worst = max(worst, abs(res.lower - closed))
            if res.kind != "exact" or abs(res.lower - closed) > 1e-9:
                c.check(False, f"p={p}: op-norm path {res.lower} != closed form {closed}")
    c.check(worst <= 1e-9, f"100 random tuples per p in {{1,2}}: max |op-norm path - closed form| = {worst:.2e}")
    return CriterionResult("5", "weak p-summing norm on sup-norm spaces matches the coordinate formula", c.passed, c.details)


def crit_6_hilbert_values(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    rng = np.random.default_rng(cfg.seed + 1)
    space = SpaceSpec(2, 3)
    worst = 0.0
    for _ in range(10):
        beta = rng.standard_normal(3)
        res = evaluate(Spec.hilbert(), VectorTuple(np.diag(beta), space), cfg)
        target = float(np.linalg.norm(beta))
        worst = max(worst, abs(res.lower - target))
    c.check(worst <= 1e-4, f"diagonal tuples: max |hilbert - l2(beta)| = {worst:.2e}")
    worst = 0.0
    for _ in range(50):
        X = rng.standard_normal((3, 3))
        t = VectorTuple(X, space)
        h = evaluate(Spec.hilbert(), t, cfg).lower
        p22 = evaluate(Spec.pq_spec(2, 2), t, cfg).lower
        worst = max(worst, abs(h - p22) / max(1.0, h))
    c.check(worst <= 2e-2, f"50 random tuples: max relative |hilbert - (2,2)| = {worst:.2e}")
    return CriterionResult("6", "hilbert multi-norm: diagonal values and agreement with the (2,2)-multi-norm", c.passed, c.details)


def crit_7_row_special(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    dec = row_special_decompose(np.array([[2.0, 1.0], [0.0, 3.0]]))
    golden = (
        len(dec.parts) == 2
        and np.allclose(dec.parts[0], [[0, 1], [0, 1]])
        and np.allclose(dec.parts[1], [[2, 0], [0, 2]])
        and dec.norms == (1.0, 2.0)
    )
    c.check(golden, "golden trace [[2,1],[0,3]] -> parts [[0,1],[0,1]] + [[2,0],[0,2]], norms 1 + 2")
    rng = np.random.default_rng(cfg.seed + 2)
    worst_sum, worst_norm, all_special, count_ok = 0.0, 0.0, True, True
    for trial in range(1000):
        m = int(rng.integers(1, 7))
        n = int(rng.integers(1, 7))
        A = rng.uniform(-1, 1, size=(m, n))
        if trial % 2:
            A = A + 1j * rng.uniform(-1, 1, size=(m, n))
        dec = row_special_decompose(A)
        resid = np.abs(sum(dec.parts) - A).max() if dec.parts else np.abs(A).max()
        worst_sum = max(worst_sum, float(resid))
        row_norm = float(np.abs(A).sum(axis=1).max())
        worst_norm = max(worst_norm, abs(dec.total - row_norm))
        all_special = all_special and all(is_row_special(B) for B in dec.parts)
        count_ok = count_ok and len(dec.parts) <= m * n
    c.check(worst_sum <= 1e-12, f"1000 matrices: max |sum(parts) - a| = {worst_sum:.2e}")
    c.check(worst_norm <= 1e-9, f"1000 matrices: max |sum(norms) - row-sum norm| = {worst_norm:.2e}")
    c.check(all_special, "every part row-special")
    c.check(count_ok, "part count <= m*n")
    return CriterionResult("7", "row-special decomposition: golden trace and 1000-matrix battery", c.passed, c.details)


def crit_8_axiom_suites(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    trials = 10_000
    space = SpaceSpec(2, 3)
    suites = [
        ("min", Spec.min_spec(), space),
        ("lattice", Spec.lattice(), space),
        ("dual_lattice (B4)", Spec.dual_lattice(), space),
        ("standard_q (q=p)", Spec.standard_q(2), space),
        ("partition", Spec.partition([[0, 1], [2]]), space),
        ("weak_summing(1) (B4)", Spec.weak_summing(1), space),
    ]
    for name, spec, sp in suites:
        rep = check_axioms(spec, sp, n_max=4, trials=trials, cfg=cfg, tol=1e-8)
        c.check(rep.ok and rep.mode == "exact", f"{name}: {len(rep.violations)} violations in {trials} trials")
    rep = check_axioms(Spec.lp_sum(2), space, n_max=4, trials=200, cfg=cfg)
    found_a4 = any(v.axiom == "A4" for v in rep.violations)
    c.check(found_a4, f"l2-sum fixture: repeated-entry axiom violated ({len(rep.violations)} witnesses)")
    return CriterionResult("8", "axiom audits: exact multi-norms clean, l2-sum fixture fails (A4)", c.passed, c.details)


def crit_9_duality_round_trips(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    rng = np.random.default_rng(cfg.seed + 3)
    for p in (1, 2, 3):
        space = SpaceSpec(p, 4)
        dual = space.dual()
        worst_lat, worst_min = 0.0, 0.0
        for n in (2, 3):
            for _ in range(3):
                L = rng.standard_normal((4, n))
                t = VectorTuple(L, dual)
                nd = evaluate(Spec.numerical_dual(Spec.lattice()), t, cfg).lower
                dl = evaluate(Spec.dual_lattice(), t, cfg).lower
                worst_lat = max(worst_lat, abs(nd - dl) / max(1.0, dl))
                ndm = evaluate(Spec.numerical_dual(Spec.min_spec()), t, cfg).lower
                md = evaluate(Spec.lp_sum(1), t, cfg).lower
                worst_min = max(worst_min, abs(ndm - md) / max(1.0, md))
        c.check(worst_lat <= 2e-2, f"p={p}: numerical dual of lattice vs sum-of-moduli closed form, gap {worst_lat:.2e}")
        c.check(worst_min <= 2e-2, f"p={p}: numerical dual of min vs maximum dual multi-norm (sum of norms), gap {worst_min:.2e}")
    return CriterionResult("9", "numerical dualization reproduces both closed-form duals", c.passed, c.details)


def crit_10_standard_vs_pq_on_l1(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    rng = np.random.default_rng(cfg.seed + 4)
    space = SpaceSpec(1, 3)
    for q in (1, 2):
        worst_below, worst_above = 0.0, 0.0
        for _ in range(5):
            X = rng.standard_normal((3, 2))
            t = VectorTuple(X, space)
            exact = evaluate(Spec.standard_q(q), t, cfg).lower
            search = evaluate(Spec.pq_spec(1, q), t, cfg).lower
            worst_below = max(worst_below, exact - search)
            worst_above = max(worst_above, search - exact)
        c.check(worst_below <= 2e-2, f"q={q}: (1,q) search below standard-q by at most {worst_below:.2e}")
        c.check(worst_above <= 1e-8, f"q={q}: (1,q) search above standard-q by at most {worst_above:.2e}")
    return CriterionResult("10", "standard q-multi-norm equals the (1,q)-multi-norm on l^1_3", c.passed, c.details)


def crit_11_multibounded_asymmetry(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    space = SpaceSpec(1, 4)
    I = np.eye(4)
    res = mb_norm(I, space, Spec.lattice(), space, Spec.min_spec(), 4, cfg)
    ok = all(abs(v - 1.0) <= 1e-10 for v in res.p_seq)
    c.check(ok, f"identity (lattice -> min): p_n = {['%.12f' % v for v in res.p_seq]}")
    res = mb_norm(I, space, Spec.min_spec(), space, Spec.lattice(), 4, cfg)
    ok = all(abs(res.p_seq[n - 1] - n) <= 1e-9 for n in range(1, 5))
    c.check(ok, f"identity (min -> lattice): p_n = {['%.12f' % v for v in res.p_seq]}")
    c.check(res.monotone, "p_n nondecreasing")
    return CriterionResult("11", "multi-bounded asymmetry of the identity on l^1_4", c.passed, c.details)


def crit_12_decomposition_detectors(cfg: OptimConfig) -> CriterionResult:
    c = _Checker()
    for p in (1, 2, 3, INF):
        sp = SpaceSpec(p, 2, field="complex")
        rep = is_hermitian(coordinate_decomposition(sp, [[0], [1]]), sp, trials=16, cfg=cfg)
        c.check(rep.verdict, f"coordinate split of p={p} plane is hermitian")

    sp = SpaceSpec(1, 2, field="complex")
    P1 = 0.5 * np.array([[1.0, 1.0], [1.0, 1.0]])
    P2 = 0.5 * np.array([[1.0, -1.0], [-1.0, 1.0]])
    rep = is_hermitian(Decomposition((P1, P2)), sp, trials=16, cfg=cfg)
    c.check(not rep.verdict and rep.witness is not None, f"diagonal/antidiagonal split of the l1 plane falsified, gap {rep.gap:.3f}")

    si = SpaceSpec(INF, 4)
    t = VectorTuple.of(si, [1, 0, 0, 0.5], [0, 1, 0, 0.5], [0, 0, 1, 0.5])
    rep = orthogonal_set(Spec.min_spec(), t, trials=10, cfg=cfg)
    gap_ok = (
        not rep.verdict
        and abs(rep.witness["lhs"] - 1.5) <= 1e-12
        and abs(rep.witness["rhs"] - 1.0) <= 1e-12
    )
    c.check(gap_ok, f"sup-norm triple: merged value {rep.witness['lhs']} vs tuple value {rep.witness['rhs']}")

    rng = np.random.default_rng(cfg.seed + 5)
    for p in (1, 2, 3):
        space = SpaceSpec(p, 4)
        gen = generated_multinorm(band_family(space), space, cfg, verify_hermitian=False)
        worst = 0.0
        for _ in range(5):
            X = rng.standard_normal((4, 3))
            t = VectorTuple(X, space)
            gv = evaluate(gen, t, cfg).lower
            sv = evaluate(Spec.standard_q(p), t, cfg).lower
            worst = max(worst, abs(gv - sv))
        c.check(worst <= 1e-9, f"p={p}: band family generates the standard-{p} values, gap {worst:.2e}")

    for p in (2, 3):
        space = SpaceSpec(p, 3)
        dspec, dspace = multi_dual(band_family(space), space, cfg, verify_hermitian=False)
        worst = 0.0
        for _ in range(5):
            L = rng.standard_normal((3, 2))
            t = VectorTuple(L, dspace)
            dv = evaluate(dspec, t, cfg).lower
            sv = evaluate(Spec.standard_q(dspace.p), t, cfg).lower
            worst = max(worst, abs(dv - sv) / max(1.0, sv))
        c.check(worst <= 2e-2, f"p={p}: multi-dual of the coordinate family gives standard-{dspace.p:g} values, gap {worst:.2e}")
    return CriterionResult("12", "decomposition detectors and generated/dual families", c.passed, c.details)


CRITERIA = {
    "1": crit_1_max_on_delta_tuples,
    "2": crit_2_standard_q_growth,
    "3": crit_3_pq_on_delta_tuples,
    "4": crit_4_summing_constants,
    "5": crit_5_mu_on_sup_norm_spaces,
    "6": crit_6_hilbert_values,
    "7": crit_7_row_special,
    "8": crit_8_axiom_suites,
    "9": crit_9_duality_round_trips,
    "10": crit_10_standard_vs_pq_on_l1,
    "11": crit_11_multibounded_asymmetry,
    "12": crit_12_decomposition_detectors,
}


def run_criterion(cid: str, cfg: OptimConfig | None = None) -> CriterionResult:
    cfg = cfg or OptimConfig()
    fn = CRITERIA[str(cid)]
    start = time.perf_counter()
    result = fn(cfg)
    result.elapsed = time.perf_counter() - start
    return result


def run_all(cfg: OptimConfig | None = None, only: list | None = None) -> list:
    cfg = cfg or OptimConfig()
    ids = [str(i) for i in only] if only else list(CRITERIA)
    return [run_criterion(cid, cfg) for cid in ids]
