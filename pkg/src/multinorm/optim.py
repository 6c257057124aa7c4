"""Search kernels: sign/torus enumeration, ball ascent, p->q operator norms.

Every result is a NormValue carrying a certificate: an exact value, a
bracket [lower, upper], or a certified lower bound with the witness that
attains it.  All randomness flows through one seeded generator; restart i
uses substream seed^i, so results are bit-identical across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any, Callable, Sequence

import numpy as np

from .errors import BudgetError, DegenerateNormError
from .spaces import COMPLEX, INF, REAL, MatrixOp, conjugate_index, vector_to_json

_ASCENT_ITERS = 200


@dataclass(frozen=True)
class OptimConfig:
    seed: int = 2024
    restarts: int = 32
    grid_points: int = 64
    refine_passes: int = 3
    max_enum: int = 2**20
    tol: float = 1e-9

    def __post_init__(self):
        if self.restarts < 1 or self.grid_points < 8 or self.refine_passes < 0:
            raise ValueError("invalid OptimConfig")
        if self.tol <= 0:
            raise ValueError("tol must be positive")

    def rng(self, stream: int = 0) -> np.random.Generator:
        return np.random.default_rng((self.seed ^ stream) & 0xFFFFFFFFFFFFFFFF)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "restarts": self.restarts,
            "grid_points": self.grid_points,
            "refine_passes": self.refine_passes,
            "max_enum": self.max_enum,
            "tol": self.tol,
        }

    @staticmethod
    def from_json(doc: dict) -> "OptimConfig":
        base = OptimConfig()
        kwargs = {k: doc[k] for k in ("seed", "restarts", "grid_points", "refine_passes", "max_enum", "tol") if k in doc}
        return replace(base, **kwargs)


@dataclass(frozen=True)
class NormValue:
    """A certified numeric result: lower <= true value <= upper."""

    kind: str  # "exact" | "bracket" | "lower"
    lower: float
    upper: float
    witness: Any
    method: str

    def __post_init__(self):
        if self.kind not in ("exact", "bracket", "lower"):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.lower > self.upper + 1e-12 * max(1.0, abs(self.upper)):
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")

    @property
    def value(self) -> float:
        """Best point estimate: the certified lower bound (= value when exact)."""
        return self.lower

    @staticmethod
    def exact(value: float, witness=None, method: str = "") -> "NormValue":
        return NormValue("exact", float(value), float(value), witness, method)

    @staticmethod
    def bracket(lower: float, upper: float, witness=None, method: str = "") -> "NormValue":
        return NormValue("bracket", float(lower), float(upper), witness, method)

    @staticmethod
    def lower_bound(lower: float, witness=None, method: str = "") -> "NormValue":
        return NormValue("lower", float(lower), INF, witness, method)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "lower": self.lower,
            "upper": None if self.upper == INF else self.upper,
            "witness": _witness_json(self.witness),
            "method": self.method,
        }


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, np.ndarray):
        if w.ndim == 1:
            return vector_to_json(w)
        return [_witness_json(row) for row in w]
    if isinstance(w, dict):
        return {k: _witness_json(v) for k, v in w.items()}
    if isinstance(w, (list, tuple)):
        return [_witness_json(v) for v in w]
    if isinstance(w, (np.floating, float)):
        return float(w)
    if isinstance(w, (np.integer, int)):
        return int(w)
    if isinstance(w, (np.complexfloating, complex)):
        return [float(np.real(w)), float(np.imag(w))]
    return w


def lp_norm(v: np.ndarray, r: float) -> float:
    """Unweighted l^r norm of a vector, r in [1, inf]."""
    a = np.abs(np.asarray(v))
    if a.size == 0:
        return 0.0
    if r == INF:
        return float(a.max())
    return float((a**r).sum() ** (1.0 / r))


def _phase(v: np.ndarray) -> np.ndarray:
    a = np.abs(v)
    return np.where(a > 0, v / np.where(a > 0, a, 1.0), 1.0)


# ---------------------------------------------------------------------------
# exhaustive enumerations


def sign_supremum(f: Callable[[np.ndarray], float], n: int, cfg: OptimConfig, symmetric: bool = False) -> NormValue:
    """Exact maximum of f over {+-1}^n by enumeration.

    symmetric=True asserts f(-e) = f(e) and pins the first sign to +1,
    halving the work.
    """
    count = 2 ** (n - 1) if symmetric else 2**n
    if count > cfg.max_enum:
        raise BudgetError(f"sign enumeration needs {count} > max_enum={cfg.max_enum}")
    best, best_eps = -INF, None
    eps = np.ones(n)
    for code in range(count):
        bits = code
        for j in range(n - 1 if symmetric else n):
            idx = j + 1 if symmetric else j
            eps[idx] = 1.0 if (bits >> j) & 1 == 0 else -1.0
        val = float(f(eps))
        if val > best:
            best, best_eps = val, eps.copy()
    return NormValue.exact(best, best_eps, "sign_enum")


def torus_supremum(
    f: Callable[[np.ndarray], float],
    n: int,
    cfg: OptimConfig,
    field: str = COMPLEX,
) -> NormValue:
    """Lower bound for sup f over the n-torus (first phase pinned to 1).

    Callers must pass f invariant under a common phase rotation, which is
    what pins the first coordinate.  For real scalars the torus collapses
    to {+-1} and the search enumerates signs when the budget allows.
    Exact for n <= 1.
    """
    if field == REAL:
        try:
            res = sign_supremum(f, n, cfg, symmetric=True)
        except BudgetError:
            return _torus_sweep(f, n, cfg, real=True)
        kind = "exact" if n <= 1 else "lower"
        return NormValue(kind, res.lower, res.lower if n <= 1 else INF, res.witness, "sign_enum")
    res = _torus_sweep(f, n, cfg, real=False)
    if 2 ** (n - 1) <= min(cfg.max_enum, 4096):
        se = sign_supremum(lambda e: f(e.astype(complex)), n, cfg, symmetric=True)
        if se.lower > res.lower:
            res = NormValue("lower", se.lower, INF, se.witness.astype(complex), "torus_sign_grid")
    if n <= 1:
        return NormValue.exact(res.lower, res.witness, res.method)
    return res


def _torus_sweep(f, n, cfg, real: bool) -> NormValue:
    if real:
        candidates0 = np.array([1.0, -1.0])
    else:
        candidates0 = np.exp(2j * np.pi * np.arange(cfg.grid_points) / cfg.grid_points)

    def sweep(zeta, cands_for):
        improved = True
        val = float(f(zeta))
        guard = 0
        while improved and guard < 12:
            improved = False
            guard += 1
            for j in range(1, n):
                old = zeta[j]
                best_c, best_v = old, val
                for c in cands_for(j, zeta):
                    zeta[j] = c
                    v = float(f(zeta))
                    if v > best_v + 1e-15:
                        best_c, best_v = c, v
                zeta[j] = best_c
                if best_v > val + 1e-15:
                    val = best_v
                    improved = True
        return val, zeta

    starts = [np.ones(n, dtype=float if real else complex)]
    rng = cfg.rng(101)
    for _ in range(min(cfg.restarts, 8) - 1):
        if real:
            starts.append(np.where(rng.random(n) < 0.5, 1.0, -1.0))
        else:
            starts.append(np.exp(2j * np.pi * rng.random(n)))
    for s in starts:
        s[0] = 1.0

    best, best_z = -INF, None
    for z0 in starts:
        val, z = sweep(z0.copy(), lambda j, zeta: candidates0)
        if not real:
            width = 2 * 2 * np.pi / cfg.grid_points
            for _ in range(cfg.refine_passes):
                base = np.angle(z)

                def local(j, zeta, b=base, w=width):
                    offs = np.linspace(-w / 2, w / 2, 9)
                    return np.exp(1j * (b[j] + offs))

                val, z = sweep(z, local)
                width /= 2.0
        if val > best:
            best, best_z = val, z.copy()
    return NormValue.lower_bound(best, best_z, "sign_enum" if real else "torus_ascent")


def torus_certified_upper(
    g: Callable[[np.ndarray], float],
    lipschitz: Sequence[float],
    n: int,
    cfg: OptimConfig,
    budget: int = 2**18,
) -> float:
    """Certified upper bound for sup of g over the pinned n-torus.

    g takes a full phase vector (first entry 1).  lipschitz[j] bounds the
    derivative of g in the phase angle of coordinate j+1.  Uses a uniform
    grid plus the Lipschitz slack; returns inf when the grid would blow
    the budget.
    """
    free = n - 1
    if free == 0:
        return float(g(np.ones(1, dtype=complex)))
    budget = min(budget, cfg.max_enum)
    pts = int(budget ** (1.0 / free))
    pts = min(pts, 4 * cfg.grid_points)
    if pts < 8:
        return INF
    angles = 2 * np.pi * np.arange(pts) / pts
    h = 2 * np.pi / pts
    slack = 0.5 * h * float(np.sum(np.asarray(lipschitz)))
    zeta = np.ones(n, dtype=complex)
    best = -INF
    idx = [0] * free
    while True:
        for j in range(free):
            zeta[j + 1] = np.exp(1j * angles[idx[j]])
        v = float(g(zeta))
        if v > best:
            best = v
        j = free - 1
        while j >= 0 and idx[j] == pts - 1:
            idx[j] = 0
            j -= 1
        if j < 0:
            break
        idx[j] += 1
    return best + slack


# ---------------------------------------------------------------------------
# generic projected ascent


def seeded_ascent(
    project: Callable[[np.ndarray], np.ndarray | None],
    value: Callable[[np.ndarray], float],
    seeds: Sequence[np.ndarray],
    shape: tuple,
    cfg: OptimConfig,
    complex_field: bool = False,
    iters: int = _ASCENT_ITERS,
) -> tuple[float, np.ndarray | None]:
    """Maximize value over the feasible set reached by project.

    project maps an arbitrary point onto the feasible set (or returns None
    for degenerate points).  Deterministic in cfg.seed; ties resolved by
    first find.
    """

    def draw(rng):
        z = rng.standard_normal(shape)
        if complex_field:
            z = z + 1j * rng.standard_normal(shape)
        return z

    starts: list[np.ndarray] = [np.asarray(s) for s in seeds]
    for i in range(cfg.restarts):
        starts.append(draw(cfg.rng(1000 + i)))

    best_val, best_pt = -INF, None
    for si, s0 in enumerate(starts):
        pt = project(np.array(s0, dtype=complex if complex_field else float))
        if pt is None:
            continue
        val = value(pt)
        rng = cfg.rng(5000 + si)
        step = 0.5
        misses = 0
        budget = iters
        while budget > 0:
            budget -= 1
            direction = draw(rng)
            cand = project(pt + step * direction)
            v = value(cand) if cand is not None else -INF
            if v > val * (1 + cfg.tol) + 1e-15:
                val, pt = v, cand
                misses = 0
                # ride the improving direction while it keeps paying
                boost = 2.0 * step
                while budget > 0:
                    budget -= 1
                    cand = project(pt + boost * direction)
                    v = value(cand) if cand is not None else -INF
                    if v > val * (1 + cfg.tol) + 1e-15:
                        val, pt = v, cand
                        boost *= 2.0
                    else:
                        break
            else:
                misses += 1
            if misses >= 8:
                step *= 0.6
                misses = 0
                if step < 1e-7:
                    break
        if val > best_val:
            best_val, best_pt = val, pt
    return best_val, best_pt


def ball_linear_max(
    membership: Callable[[np.ndarray], float],
    objective: Callable[[np.ndarray], complex],
    shape: tuple,
    cfg: OptimConfig,
    seeds: Sequence[np.ndarray] = (),
    complex_field: bool = False,
    upper: float | None = None,
) -> NormValue:
    """Approximate sup{ |objective(x)| : membership(x) <= 1 }.

    membership must be a norm (positively homogeneous, zero only at zero on
    the directions explored); points are radially projected onto its unit
    sphere before climbing.
    """

    def project(pt):
        nu = membership(pt)
        if nu <= 0.0 or not math.isfinite(nu):
            if abs(objective(pt)) > cfg.tol:
                raise DegenerateNormError("membership vanished on a direction with nonzero objective")
            return None
        return pt / nu

    val, pt = seeded_ascent(project, lambda x: abs(objective(x)), seeds, shape, cfg, complex_field)
    if val == -INF:
        val, pt = 0.0, None
    if upper is not None:
        return NormValue.bracket(min(val, upper), upper, pt, "ball_ascent")
    return NormValue.lower_bound(val, pt, "ball_ascent")


# ---------------------------------------------------------------------------
# p -> q operator norms


def _holder_upper(A: np.ndarray, p: float, q: float) -> float:
    col = np.array([lp_norm(A[:, j], q) for j in range(A.shape[1])])
    row = np.array([lp_norm(A[i, :], conjugate_index(p)) for i in range(A.shape[0])])
    return min(lp_norm(col, conjugate_index(p)), lp_norm(row, q))


def _power_ascent(A: np.ndarray, p: float, q: float, cfg: OptimConfig, complex_field: bool) -> tuple[float, np.ndarray]:
    """Nonlinear power iteration for sup ||Ax||_q / ||x||_p, with restarts."""
    m, n = A.shape
    pp = conjugate_index(p)

    def normalize(x):
        nx = lp_norm(x, p)
        return None if nx == 0 else x / nx

    def iterate(x):
        x = normalize(x)
        if x is None:
            return 0.0, None
        val = lp_norm(A @ x, q)
        for _ in range(60):
            y = A @ x
            ny = lp_norm(y, q)
            if ny == 0:
                break
            ay = np.abs(y)
            z = _phase(y) * ay ** (q - 1.0) if q > 1 else _phase(y) * (ay > 0)
            g = A.conj().T @ z
            if p == INF:
                xn = _phase(g)
                if not complex_field:
                    xn = np.sign(g) + (g == 0)
            else:
                ag = np.abs(g)
                xn = _phase(g) * ag ** (pp - 1.0) if pp != INF else _phase(g) * (ag >= ag.max())
            xn = normalize(xn)
            if xn is None:
                break
            v = lp_norm(A @ xn, q)
            if v <= val + 1e-15:
                break
            x, val = xn, v
        return val, x

    seeds = []
    for j in range(min(n, 8)):
        e = np.zeros(n, dtype=complex if complex_field else float)
        e[j] = 1.0
        seeds.append(e)
    seeds.append(np.ones(n, dtype=complex if complex_field else float))
    for i in range(cfg.restarts):
        rng = cfg.rng(7000 + i)
        s = rng.standard_normal(n)
        if complex_field:
            s = s + 1j * rng.standard_normal(n)
        seeds.append(s)

    best, best_x = 0.0, None
    for s in seeds:
        val, x = iterate(s)
        if val > best:
            best, best_x = val, x
    return best, best_x


def op_norm_pq(a: MatrixOp, cfg: OptimConfig, field: str | None = None, ascent: bool = True) -> NormValue:
    """Operator norm of a : l^p_n -> l^q_m with a certificate.

    Exact closed forms: p=1 (max column q-norm), q=inf (max row p'-norm),
    p=q=2 (top singular value), generalized permutation matrices, and sign
    enumerations for small real instances with p=inf or q=1.  Other roles
    return a bracket: power-iteration lower bound plus Holder upper bounds.
    ascent=False skips the iteration in the fallback (cheap bracket for
    hot loops that only consume the upper bound).
    """
    A = np.asarray(a.entries)
    p, q = a.in_index, a.out_index
    if field is None:
        field = COMPLEX if np.iscomplexobj(A) else REAL
    complex_field = field == COMPLEX
    m, n = A.shape

    if p == 1:
        cols = np.array([lp_norm(A[:, j], q) for j in range(n)])
        j = int(np.argmax(cols))
        e = np.zeros(n, dtype=complex if complex_field else float)
        e[j] = 1.0
        return NormValue.exact(float(cols[j]), e, "max_column_norm")

    if q == INF:
        pp = conjugate_index(p)
        rows = np.array([lp_norm(A[i, :], pp) for i in range(m)])
        i = int(np.argmax(rows))
        r = A[i, :]
        ar = np.abs(r)
        if rows[i] == 0:
            x = np.zeros(n)
        elif p == INF:
            x = _phase(np.conj(r))
        else:
            x = _phase(np.conj(r)) * (ar / rows[i]) ** (pp - 1.0)
            x = x / max(lp_norm(x, p), 1e-300)
        if not complex_field:
            x = np.real(x)
        return NormValue.exact(float(rows[i]), x, "max_row_dual_norm")

    if p == 2 and q == 2:
        U, s, Vh = np.linalg.svd(A)
        x = np.conj(Vh[0, :])
        if not complex_field:
            x = np.real(x)
        return NormValue.exact(float(s[0]), x, "svd")

    nz_per_row = (np.abs(A) > 0).sum(axis=1)
    nz_per_col = (np.abs(A) > 0).sum(axis=0)
    if nz_per_row.max(initial=0) <= 1 and nz_per_col.max(initial=0) <= 1:
        # generalized permutation matrix: acts diagonally on disjoint coordinates
        cols_nz = np.where(nz_per_col > 0)[0]
        dvals = np.array([A[np.argmax(np.abs(A[:, j])), j] for j in cols_nz])
        x = np.zeros(n, dtype=complex if complex_field else float)
        if dvals.size == 0:
            return NormValue.exact(0.0, x, "diagonal_like")
        ad = np.abs(dvals)
        if p <= q:
            jbest = int(np.argmax(ad))
            x[cols_nz[jbest]] = 1.0
            return NormValue.exact(float(ad.max()), x, "diagonal_like")
        t = q if p == INF else p * q / (p - q)
        if p == INF:
            x[cols_nz] = np.conj(_phase(dvals))
        else:
            mags = ad ** (t / p)
            mags = mags / lp_norm(mags, p)
            x[cols_nz] = mags * np.conj(_phase(dvals))
        if not complex_field:
            x = np.real(x)
        return NormValue.exact(lp_norm(ad, t), x, "diagonal_like")

    if not complex_field and p == INF and 2**n <= cfg.max_enum:
        res = sign_supremum(lambda e: lp_norm(A @ e, q), n, cfg, symmetric=True)
        return NormValue.exact(res.lower, res.witness, "sign_enum_inputs")

    if not complex_field and q == 1 and 2**m <= cfg.max_enum:
        pp = conjugate_index(p)

        def dual_val(s):
            return lp_norm(A.T @ s, pp)

        res = sign_supremum(dual_val, m, cfg, symmetric=True)
        g = A.T @ res.witness
        ag = np.abs(g)
        nx = lp_norm(g, pp)
        if nx == 0:
            x = np.zeros(n)
        elif p == INF:
            x = np.sign(g) + (g == 0)
        else:
            x = np.sign(g) * (ag / nx) ** (pp - 1.0)
            x = x / max(lp_norm(x, p), 1e-300)
        return NormValue.exact(res.lower, x, "sign_enum_outputs")

    upper = _holder_upper(A, p, q)
    if not ascent:
        ncols = lp_norm(np.ones(n), p)
        lower = max(lp_norm(A @ np.ones(n), q) / ncols if ncols > 0 else 0.0,
                    max(lp_norm(A[:, j], q) for j in range(n)))
        return NormValue.bracket(min(lower, upper), upper, None, "holder_bracket")
    lower, x = _power_ascent(A, p, q, cfg, complex_field)
    return NormValue.bracket(min(lower, upper), upper, x, "power_ascent")


def matrix_op_norm(a: MatrixOp, cfg: OptimConfig | None = None, field: str | None = None) -> NormValue:
    """Norm of a matrix in its declared (p -> q) role; exact where closed forms exist."""
    return op_norm_pq(a, cfg or OptimConfig(), field)
