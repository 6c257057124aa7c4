"""Weak p-summing norms and summing constants on finite-dimensional spaces.

mu_weak computes the weak p-summing norm of an n-tuple through its operator
reformulation: the tuple (x_1..x_n) is the matrix with columns x_j acting
l^{p'}_n -> E, so the norm reduces to a (p' -> r) matrix norm after the
weights of E are absorbed into a diagonal rescaling.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import SpecError
from .optim import (
    NormValue,
    OptimConfig,
    lp_norm,
    op_norm_pq,
    seeded_ascent,
    sign_supremum,
    torus_certified_upper,
    torus_supremum,
)
from .spaces import INF, REAL, MatrixOp, SpaceSpec, VectorTuple, conjugate_index, delta


def _weight_root(space: SpaceSpec) -> np.ndarray:
    """Diagonal D with ||x||_E = ||D x||_{l^r unweighted}; identity for r=inf."""
    if space.p == INF:
        return np.ones(space.dim)
    return space.w ** (1.0 / space.p)


def tuple_sandwich(t: VectorTuple, p: float) -> tuple[float, float]:
    """max_j ||x_j||  <=  mu_{p,n}  <=  (sum_j ||x_j||^p)^(1/p)."""
    norms = t.space.norm_cols(t.columns)
    return float(norms.max()), lp_norm(norms, p)


@lru_cache(maxsize=64)
def _phase_grid(n: int, complex_field: bool) -> np.ndarray:
    """Small grid of unimodular coefficient columns, first entry pinned to 1."""
    if not complex_field:
        count = 2 ** (n - 1)
        Z = np.ones((n, count))
        for c in range(count):
            for j in range(n - 1):
                if (c >> j) & 1:
                    Z[j + 1, c] = -1.0
        return Z
    grid = 16 if n <= 3 else 8
    count = grid ** (n - 1)
    Z = np.ones((n, count), dtype=complex)
    phases = np.exp(2j * np.pi * np.arange(grid) / grid)
    for c in range(count):
        code = c
        for j in range(n - 1):
            Z[j + 1, c] = phases[code % grid]
            code //= grid
    return Z


def mu1_phase_guidance(space: SpaceSpec, X: np.ndarray) -> float:
    """Vectorized grid estimate of mu_{1,n}; exact over real scalars."""
    Z = _phase_grid(X.shape[1], space.is_complex)
    return float(space.norm_cols(X @ Z).max())


def mu_weak(p: float, t: VectorTuple, cfg: OptimConfig | None = None, certify_upper: bool = True) -> NormValue:
    """Weak p-summing norm mu_{p,n}(x_1,...,x_n) on the tuple's space.

    Exact whenever the reduced (p' -> r) matrix role has a closed form
    (r = inf, p = inf, p' = r = 2, disjoint supports) or, for p = 1 over
    real scalars, by sign enumeration of || sum_j eps_j x_j ||.
    certify_upper=False skips the phase-grid upper bound for complex p=1
    (hot search loops); the cheaper Holder/sum upper bounds remain.
    """
    cfg = cfg or OptimConfig()
    if p < 1:
        raise SpecError("summing index p must be >= 1")
    space = t.space
    lo_sand, up_sand = tuple_sandwich(t, p)
    if p == INF:
        j = int(np.argmax(space.norm_cols(t.columns)))
        return NormValue.exact(lo_sand, {"column": j}, "max_column")

    pprime = conjugate_index(p)
    A = _weight_root(space)[:, None] * t.columns
    res = op_norm_pq(MatrixOp(A, pprime, space.p), cfg, field=space.field, ascent=certify_upper)
    if res.kind == "exact":
        return NormValue.exact(res.lower, {"coefficients": res.witness}, "op_norm_" + res.method)

    if p == 1:
        norm_of_combo = lambda z: space.norm(t.columns @ z)
        if space.field == REAL and 2 ** (t.n - 1) <= cfg.max_enum:
            se = sign_supremum(norm_of_combo, t.n, cfg, symmetric=True)
            return NormValue.exact(se.lower, {"signs": se.witness}, "sign_enum")
        if not certify_upper:
            # hot-loop mode: cheap bracket only, no torus work
            lower = max(res.lower, lo_sand, mu1_phase_guidance(space, t.columns))
            upper = min(up_sand, res.upper)
            return NormValue.bracket(min(lower, upper), upper, None, "torus_skipped")
        ts = torus_supremum(norm_of_combo, t.n, cfg, field=space.field)
        lower = max(ts.lower, res.lower, lo_sand)
        col_norms = space.norm_cols(t.columns)
        upper = min(up_sand, res.upper, torus_certified_upper(norm_of_combo, col_norms[1:], t.n, cfg))
        return NormValue.bracket(min(lower, upper), upper, {"phases": ts.witness}, "torus_ascent")

    lower = max(res.lower, lo_sand)
    return NormValue.bracket(lower, min(up_sand, res.upper), {"coefficients": res.witness}, res.method)


def mu_weak_dual(p: float, t: VectorTuple, cfg: OptimConfig | None = None) -> NormValue:
    """The same weak p-summing functional for a tuple living in a dual space.

    Computed from the primal side: sup over the primal unit ball of the
    l^p norm of the pairing sequence, i.e. an (r -> p) matrix norm for the
    transposed, weight-absorbed matrix.  Agrees with mu_weak evaluated on
    the dual space within tolerance.
    """
    cfg = cfg or OptimConfig()
    if p < 1:
        raise SpecError("summing index p must be >= 1")
    dual_space = t.space
    primal = dual_space.dual()
    # <x, lam_j> = sum_k w_k x_k lam_j(k): rows indexed by j, columns by k.
    B = (primal.w[None, :] * t.columns.T).astype(t.columns.dtype)
    if primal.p != INF:
        B = B / _weight_root(primal)[None, :]
    res = op_norm_pq(MatrixOp(B, primal.p, p), cfg, field=primal.field)
    lo_sand, up_sand = tuple_sandwich(t, p)
    if res.kind == "exact":
        return NormValue.exact(res.lower, {"primal_point": res.witness}, "op_norm_" + res.method)
    lower = max(res.lower, lo_sand)
    return NormValue.bracket(lower, min(res.upper, up_sand), {"primal_point": res.witness}, res.method)


def _mu_for_normalization(p: float, t: VectorTuple, cfg: OptimConfig, certify_upper: bool = True) -> tuple[float, bool]:
    """A safe scale: mu itself when exact, else a certified upper bound."""
    res = mu_weak(p, t, cfg, certify_upper=certify_upper)
    if res.kind == "exact":
        return res.lower, True
    return min(res.upper, tuple_sandwich(t, p)[1]), False


def pi_summing(
    q: float,
    p: float,
    space: SpaceSpec,
    n: int,
    cfg: OptimConfig | None = None,
    operator: np.ndarray | None = None,
    target: SpaceSpec | None = None,
) -> NormValue:
    """Lower bound for the (q,p)-summing constant at tuple length n.

    pi_{q,p}^(n)(T) = sup { (sum_j ||T x_j||^q)^(1/q) : mu_{p,n}(x) <= 1 }.
    operator=None means the identity (the summing constant of the space).
    The search normalizes sampled tuples by mu's exact value when the mu
    path is exact, else by a certified upper bound, so the reported lower
    bound is always sound.  Upper bound attached: n^(1/q) * ||T||.
    """
    cfg = cfg or OptimConfig()
    if not (1 <= p <= q):
        raise SpecError("need q >= p >= 1")
    T = np.eye(space.dim) if operator is None else np.asarray(operator)
    tgt = target or space
    if T.shape != (tgt.dim, space.dim):
        raise SpecError("operator shape incompatible with spaces")

    if operator is None:
        op_norm_upper = 1.0
    else:
        DE, DF = _weight_root(space), _weight_root(tgt)
        res = op_norm_pq(MatrixOp(DF[:, None] * T / DE[None, :], space.p, tgt.p), cfg, field=space.field)
        op_norm_upper = res.upper if res.upper != INF else res.lower
    upper = n ** (1.0 / q) * op_norm_upper

    inner = OptimConfig(cfg.seed, 2, cfg.grid_points, 1, cfg.max_enum, cfg.tol)

    def score(cols: np.ndarray) -> float:
        scale, _ = _mu_for_normalization(p, VectorTuple(cols, space), inner, certify_upper=False)
        if scale <= 0:
            return 0.0
        img = T @ cols / scale
        return lp_norm(tgt.norm_cols(img), q)

    seeds = []
    deltas = np.zeros((space.dim, n), dtype=complex if space.is_complex else float)
    for j in range(n):
        deltas[j % space.dim, j] = 1.0
    seeds.append(deltas)

    _, cols = seeded_ascent(
        project=lambda c: c,
        value=score,
        seeds=seeds,
        shape=(space.dim, n),
        cfg=cfg,
        complex_field=space.is_complex,
    )
    lower, witness, scale_exact = 0.0, None, False
    if cols is not None:
        scale, scale_exact = _mu_for_normalization(p, VectorTuple(cols, space), cfg)
        if scale > 0:
            img = T @ cols / scale
            lower = min(lp_norm(tgt.norm_cols(img), q), upper)
            witness = {"tuple": cols / scale}
    if abs(upper - lower) <= 1e-12 * max(1.0, upper) and scale_exact:
        return NormValue.exact(upper, witness, "delta_witness_meets_definitional_upper")
    return NormValue.bracket(lower, upper, witness, "tuple_ascent")


def c_n(space: SpaceSpec, n: int, cfg: OptimConfig | None = None) -> NormValue:
    """Upper estimate of c_n(E) = inf { mu_{1,n}(x) : x_j unit vectors }.

    Returns a bracket [1, found], the 1 coming from max_j ||x_j|| <= mu.
    The witness tuple attains the reported upper value.  Search restarts
    default to 64 (minimization landscape is harder than the maxima).
    """
    cfg = cfg or OptimConfig()
    if cfg.restarts < 64:
        cfg = OptimConfig(cfg.seed, 64, cfg.grid_points, cfg.refine_passes, cfg.max_enum, cfg.tol)
    if n < 1:
        raise SpecError("n must be >= 1")
    if n == 1:
        x = delta(space, 0) / space.norm(delta(space, 0))
        return NormValue.exact(1.0, {"tuple": x[:, None]}, "single_vector")

    def mu_value(cols: np.ndarray) -> float:
        # descent guidance: exact over real scalars, grid estimate over complex
        return mu1_phase_guidance(space, cols)

    def project(cols):
        norms = space.norm_cols(cols)
        if np.any(norms <= 0):
            return None
        return cols / norms[None, :]

    seeds = []
    m = space.dim
    dt = complex if space.is_complex else float
    deltas = np.zeros((m, n), dtype=dt)
    for j in range(n):
        deltas[j % m, j] = 1.0
    seeds.append(deltas)
    if space.is_complex or space.field == REAL:
        zeta = np.exp(2j * np.pi / n)
        roots = np.array([[zeta ** ((j + 1) * (k + 1)) for j in range(n)] for k in range(m)])
        if not space.is_complex:
            roots = np.real(roots) + 0.0
        norms = space.norm_cols(roots)
        if np.all(norms > 0):
            seeds.append(roots / norms[None, :])

    _, cols = seeded_ascent(
        project=project,
        value=lambda c: -mu_value(c),
        seeds=seeds,
        shape=(m, n),
        cfg=cfg,
        complex_field=space.is_complex,
    )
    res = mu_weak(1.0, VectorTuple(cols, space), cfg)
    found = res.lower if res.kind == "exact" else res.upper
    return NormValue.bracket(1.0, max(found, 1.0), {"tuple": cols}, "unit_tuple_descent")
