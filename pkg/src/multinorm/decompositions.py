"""Direct-sum decompositions by projection families and their detectors.

A decomposition is a finite family of idempotent, mutually annihilating
projection matrices summing to the identity.  Detectors classify it as
hermitian / small / orthogonal with respect to a multi-norm: a False
verdict is certified by a witness, a True verdict means "no counterexample
within the sampling budget".  Small implies orthogonal implies hermitian;
whether orthogonal implies small in general is unresolved, so the
detectors never assume it.

On these finite-dimensional spaces the multi-dual construction embeds the
primal isometrically whenever the multi-norm is orthogonal with respect to
the family, which is what is_orthogonal_multinorm estimates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BudgetError, HermitianError, SpecError
from .multinorms import MultiNormSpec, point_value
from .optim import OptimConfig
from .partitions import set_partitions, slot_assignments
from .spaces import SpaceSpec, VectorTuple, matrix_from_json, matrix_to_json

_PROJ_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Projections P_1..P_k with sum I, P_i^2 = P_i, P_i P_j = 0 (i != j)."""

    projections: tuple

    def __post_init__(self):
        Ps = tuple(np.asarray(P) for P in self.projections)
        if not Ps:
            raise SpecError("decomposition needs at least one projection")
        m = Ps[0].shape[0]
        for P in Ps:
            if P.shape != (m, m):
                raise SpecError("projections must be square and same-sized")
        total = sum(Ps)
        if np.abs(total - np.eye(m)).max() > _PROJ_TOL:
            raise SpecError("projections must sum to the identity")
        for i, P in enumerate(Ps):
            if np.abs(P @ P - P).max() > _PROJ_TOL:
                raise SpecError(f"projection {i} is not idempotent")
            for j in range(i + 1, len(Ps)):
                if np.abs(P @ Ps[j]).max() > _PROJ_TOL:
                    raise SpecError(f"projections {i},{j} do not annihilate")
        object.__setattr__(self, "projections", Ps)

    @property
    def length(self) -> int:
        return len(self.projections)

    @property
    def dim(self) -> int:
        return self.projections[0].shape[0]

    def key(self) -> bytes:
        stacked = np.concatenate([np.asarray(P, dtype=complex) for P in self.projections])
        return np.round(stacked, 10).tobytes()

    def to_json(self) -> dict:
        return {"projections": [matrix_to_json(P) for P in self.projections]}

    @staticmethod
    def from_json(doc: dict) -> "Decomposition":
        return Decomposition(tuple(matrix_from_json(P) for P in doc["projections"]))


def coordinate_decomposition(space: SpaceSpec, blocks) -> Decomposition:
    """Band decomposition of a coordinate lattice from a coordinate partition."""
    Ps = []
    for b in blocks:
        P = np.zeros((space.dim, space.dim))
        for k in b:
            P[k, k] = 1.0
        Ps.append(P)
    return Decomposition(tuple(Ps))


@dataclass(frozen=True, eq=False)
class FamilyOfDecompositions:
    members: tuple
    closure_flags: tuple = ()

    def to_json(self) -> dict:
        return {"members": [d.to_json() for d in self.members], "close": bool(self.closure_flags)}

    @staticmethod
    def from_json(doc: dict) -> "FamilyOfDecompositions":
        fam = FamilyOfDecompositions(tuple(Decomposition.from_json(d) for d in doc.get("members", [])))
        if doc.get("close"):
            fam = close_family(fam)
        return fam


def band_family(space: SpaceSpec, max_blocks: int | None = None) -> FamilyOfDecompositions:
    """All coordinate-partition (band) decompositions of the space."""
    members = []
    for blocks in set_partitions(space.dim, max_blocks):
        members.append(coordinate_decomposition(space, blocks))
    return FamilyOfDecompositions(tuple(members))


def trivial_family(space: SpaceSpec) -> FamilyOfDecompositions:
    return FamilyOfDecompositions((Decomposition((np.eye(space.dim),)),), ("C3",))


@dataclass
class DetectorReport:
    verdict: bool
    gap: float
    witness: Optional[dict]
    trials: int
    note: str

    def to_json(self) -> dict:
        from .optim import _witness_json

        return {
            "verdict": self.verdict,
            "gap": self.gap,
            "witness": _witness_json(self.witness),
            "trials": self.trials,
            "note": self.note,
        }


def _sample_vectors(space: SpaceSpec, trials: int, cfg: OptimConfig, stream: int):
    for t in range(trials):
        rng = cfg.rng(stream + t)
        x = rng.standard_normal(space.dim)
        if space.is_complex:
            x = x + 1j * rng.standard_normal(space.dim)
        yield x


def is_hermitian(
    d: Decomposition,
    space: SpaceSpec,
    trials: int = 64,
    cfg: OptimConfig | None = None,
    tol: float = 1e-9,
) -> DetectorReport:
    """Test ||zeta_1 P_1 x + ... + zeta_k P_k x|| <= ||x|| over |zeta_i| <= 1.

    Real scalars: exact over the sign choices, plus sampled interior
    moduli.  Complex scalars: phase grid (exhaustive over the free phases
    when the grid fits the budget) plus sampled interior points.
    """
    cfg = cfg or OptimConfig()
    k = d.length
    Ps = d.projections
    worst_gap, witness = 0.0, None

    def try_zeta(x, nx, zeta):
        nonlocal worst_gap, witness
        y = sum(z * (P @ x) for z, P in zip(zeta, Ps))
        val = space.norm(y)
        gap = val - nx
        if gap > worst_gap:
            worst_gap = gap
            witness = {"x": x, "zeta": np.asarray(zeta), "lhs": val, "rhs": nx}

    grid = max(8, cfg.grid_points // 4)
    phase_combos: list[tuple] = []
    if space.is_complex:
        if grid ** (k - 1) <= 4096:
            phases = np.exp(2j * np.pi * np.arange(grid) / grid)
            for assign in slot_assignments(k - 1, grid, 4097):
                phase_combos.append((1.0,) + tuple(phases[a] for a in assign))
        else:
            phase_combos = []
    else:
        if 2 ** (k - 1) <= 4096:
            for assign in slot_assignments(k - 1, 2, 4097):
                phase_combos.append((1.0,) + tuple(1.0 if a == 0 else -1.0 for a in assign))

    for ti, x in enumerate(_sample_vectors(space, trials, cfg, 130000)):
        nx = space.norm(x)
        if nx <= 0:
            continue
        for zeta in phase_combos:
            try_zeta(x, nx, zeta)
        rng = cfg.rng(131000 + ti)
        for _ in range(8):
            mags = rng.random(k)
            if space.is_complex:
                zeta = mags * np.exp(2j * np.pi * rng.random(k))
            else:
                zeta = mags * np.where(rng.random(k) < 0.5, 1.0, -1.0)
            try_zeta(x, nx, zeta)

    scaled_tol = tol
    verdict = worst_gap <= scaled_tol
    note = "no counterexample within budget" if verdict else "witness violates the contraction"
    return DetectorReport(verdict, worst_gap, witness, trials, note)


def is_small(
    d: Decomposition,
    spec: MultiNormSpec,
    space: SpaceSpec,
    trials: int = 200,
    cfg: OptimConfig | None = None,
    tol: float = 1e-8,
) -> DetectorReport:
    """Test ||P_1 x_1 + ... + P_k x_k|| <= ||(x_1,...,x_k)||_k on samples."""
    cfg = cfg or OptimConfig()
    k = d.length
    Ps = d.projections
    worst_gap, witness = 0.0, None
    for ti in range(trials):
        rng = cfg.rng(140000 + ti)
        X = rng.standard_normal((space.dim, k))
        if space.is_complex:
            X = X + 1j * rng.standard_normal((space.dim, k))
        if ti == 0:
            X = np.zeros_like(X)
            for j in range(k):
                X[j % space.dim, j] = 1.0
        elif ti == 1:
            X = np.ones_like(X)
        elif ti % 3 == 1:
            X = np.stack([P @ X[:, i] for i, P in enumerate(Ps)], axis=1)
        y = sum(Ps[i] @ X[:, i] for i in range(k))
        lhs = space.norm(y)
        rhs = point_value(spec, space, X, cfg)
        gap = lhs - rhs
        if gap > worst_gap:
            worst_gap = gap
            witness = {"tuple": X, "lhs": lhs, "rhs": rhs}
    verdict = worst_gap <= tol
    return DetectorReport(verdict, worst_gap, witness, trials, "small-decomposition test")


def coagulations_equal(
    spec: MultiNormSpec,
    space: SpaceSpec,
    X: np.ndarray,
    cfg: OptimConfig,
    tol: float,
):
    """Worst |coagulated - original| over all set partitions of the slots."""
    k = X.shape[1]
    base = point_value(spec, space, X, cfg)
    worst = (0.0, None, base, base)
    for blocks in set_partitions(k):
        Y = np.stack([X[:, b].sum(axis=1) for b in blocks], axis=1)
        val = point_value(spec, space, Y, cfg)
        gap = abs(val - base)
        if gap > worst[0]:
            worst = (gap, blocks, val, base)
    return worst


def is_orthogonal(
    d: Decomposition,
    spec: MultiNormSpec,
    space: SpaceSpec,
    trials: int = 60,
    cfg: OptimConfig | None = None,
    tol: float = 1e-8,
) -> DetectorReport:
    """Test that every coagulation of block-supported tuples keeps the norm."""
    cfg = cfg or OptimConfig()
    k = d.length
    if k > 8:
        raise BudgetError("coagulation enumeration capped at 8 blocks")
    Ps = d.projections
    worst_gap, witness = 0.0, None
    for ti in range(trials):
        rng = cfg.rng(150000 + ti)
        Z = rng.standard_normal((space.dim, k))
        if space.is_complex:
            Z = Z + 1j * rng.standard_normal((space.dim, k))
        X = np.stack([Ps[i] @ Z[:, i] for i in range(k)], axis=1)
        gap, blocks, lhs, rhs = coagulations_equal(spec, space, X, cfg, tol)
        if gap > worst_gap:
            worst_gap = gap
            witness = {"tuple": X, "partition": blocks, "lhs": lhs, "rhs": rhs}
    verdict = worst_gap <= tol
    return DetectorReport(verdict, worst_gap, witness, trials, "orthogonal-decomposition test")


def orthogonal_set(
    spec: MultiNormSpec,
    t: VectorTuple,
    trials: int = 40,
    cfg: OptimConfig | None = None,
    tol: float = 1e-8,
) -> DetectorReport:
    """Orthogonality of a vector set: coagulation-invariance of scalar multiples."""
    cfg = cfg or OptimConfig()
    space = t.space
    k = t.n
    if k > 8:
        raise BudgetError("coagulation enumeration capped at 8 vectors")
    worst_gap, witness = 0.0, None
    scalings = [np.ones(k)]
    for ti in range(trials):
        rng = cfg.rng(160000 + ti)
        c = rng.standard_normal(k)
        if space.is_complex:
            c = c + 1j * rng.standard_normal(k)
        scalings.append(c)
    for c in scalings:
        X = t.columns * np.asarray(c)[None, :]
        gap, blocks, lhs, rhs = coagulations_equal(spec, space, X, cfg, tol)
        if gap > worst_gap:
            worst_gap = gap
            witness = {"scalars": c, "partition": blocks, "lhs": lhs, "rhs": rhs}
    verdict = worst_gap <= tol
    return DetectorReport(verdict, worst_gap, witness, len(scalings), "orthogonal-set test")


# ---------------------------------------------------------------------------
# families, closure, generated multi-norms


def close_family(
    f: FamilyOfDecompositions, max_len: int | None = None, dim: int | None = None
) -> FamilyOfDecompositions:
    """Close under permutations (C1), pairwise merges (C2), trivials (C3)."""
    from itertools import permutations as iperms

    members = {d.key(): d for d in f.members}
    if not f.members and (max_len is None or dim is None):
        raise SpecError("empty family needs explicit max_len and dim for the trivial members")
    dim = f.members[0].dim if f.members else dim
    if max_len is None:
        max_len = max(d.length for d in f.members)

    changed = True
    while changed:
        changed = False
        for d in list(members.values()):
            k = d.length
            if k <= 6:
                for perm in iperms(range(k)):
                    nd = Decomposition(tuple(d.projections[i] for i in perm))
                    if nd.key() not in members:
                        members[nd.key()] = nd
                        changed = True
            if k >= 2:
                for i in range(k):
                    for j in range(i + 1, k):
                        merged = d.projections[i] + d.projections[j]
                        rest = [P for t, P in enumerate(d.projections) if t not in (i, j)]
                        nd = Decomposition((merged, *rest))
                        if nd.key() not in members:
                            members[nd.key()] = nd
                            changed = True
    if dim:
        eye = np.eye(dim)
        for k in range(1, max_len + 1):
            for pos in range(k):
                Ps = [np.zeros((dim, dim)) for _ in range(k)]
                Ps[pos] = eye
                nd = Decomposition(tuple(Ps))
                if nd.key() not in members:
                    members[nd.key()] = nd
    ordered = tuple(sorted(members.values(), key=lambda d: (d.length, d.key())))
    return FamilyOfDecompositions(ordered, ("C1", "C2", "C3"))


def generated_value(family: FamilyOfDecompositions, space: SpaceSpec, X: np.ndarray, cfg: OptimConfig) -> float:
    """max over family members and slot assignments of ||sum_i P_i x_{a(i)}||.

    Assigning the k projections of a member to the n tuple slots (n^k maps)
    realizes the permutation/merge/trivial closure on the fly, so the value
    matches the closed family's supremum over length-n members.
    """
    n = X.shape[1]
    best = float(space.norm_cols(X).max())  # trivial decompositions
    for d in family.members:
        k = d.length
        PX = [P @ X for P in d.projections]
        for assign in slot_assignments(k, n, cfg.max_enum):
            y = PX[0][:, assign[0]].copy()
            for i in range(1, k):
                y += PX[i][:, assign[i]]
            val = space.norm(y)
            if val > best:
                best = val
    return best


def generated_multinorm(
    family: FamilyOfDecompositions,
    space: SpaceSpec,
    cfg: OptimConfig | None = None,
    verify_hermitian: bool = True,
    trials: int = 16,
) -> MultiNormSpec:
    """Spec for the multi-norm generated by a family of hermitian decompositions."""
    cfg = cfg or OptimConfig()
    if verify_hermitian:
        for i, d in enumerate(family.members):
            rep = is_hermitian(d, space, trials=trials, cfg=cfg)
            if not rep.verdict:
                raise HermitianError(f"family member {i} is not hermitian (gap {rep.gap:.3g})")
    return MultiNormSpec.generated(family)


def dual_family(f: FamilyOfDecompositions, space: SpaceSpec) -> FamilyOfDecompositions:
    """Transpose each projection through the weighted bilinear pairing."""
    w = space.w
    members = []
    for d in f.members:
        Ps = tuple((P.T * w[None, :]) / w[:, None] for P in d.projections)
        members.append(Decomposition(Ps))
    return FamilyOfDecompositions(tuple(members), f.closure_flags)


def multi_dual(
    f: FamilyOfDecompositions,
    space: SpaceSpec,
    cfg: OptimConfig | None = None,
    verify_hermitian: bool = True,
) -> tuple[MultiNormSpec, SpaceSpec]:
    """Generated multi-norm of the transposed family on the dual space."""
    cfg = cfg or OptimConfig()
    dual = space.dual()
    df = dual_family(f, space)
    spec = generated_multinorm(df, dual, cfg, verify_hermitian=verify_hermitian)
    return spec, dual


def is_orthogonal_multinorm(
    spec: MultiNormSpec,
    f: FamilyOfDecompositions,
    space: SpaceSpec,
    trials: int = 100,
    cfg: OptimConfig | None = None,
    tol: float = 1e-8,
) -> DetectorReport:
    """Estimate sup (spec value - generated value); heuristic verdict gap < tol."""
    cfg = cfg or OptimConfig()
    worst_gap, witness = 0.0, None
    for ti in range(trials):
        rng = cfg.rng(170000 + ti)
        n = int(rng.integers(1, 4))
        X = rng.standard_normal((space.dim, n))
        if space.is_complex:
            X = X + 1j * rng.standard_normal((space.dim, n))
        lhs = point_value(spec, space, X, cfg)
        rhs = generated_value(f, space, X, cfg)
        gap = lhs - rhs
        if gap > worst_gap:
            worst_gap = gap
            witness = {"tuple": X, "spec_value": lhs, "generated_value": rhs}
    # canonical delta tuples catch coordinate effects that random draws smear
    for n in range(1, min(space.dim, 3) + 1):
        X = np.zeros((space.dim, n), dtype=complex if space.is_complex else float)
        for j in range(n):
            X[j % space.dim, j] = 1.0
        lhs = point_value(spec, space, X, cfg)
        rhs = generated_value(f, space, X, cfg)
        gap = lhs - rhs
        if gap > worst_gap:
            worst_gap = gap
            witness = {"tuple": X, "spec_value": lhs, "generated_value": rhs}
    verdict = worst_gap <= tol
    return DetectorReport(verdict, worst_gap, witness, trials, "orthogonality of the multi-norm w.r.t. the family")
