"""Convex minimization of relative-entropy objectives over joint simplices.

Two-stage solver: a coarse barycentric grid over the (support-restricted)
simplex seeds an entropic mirror-descent refinement (multiplicative
updates). The objectives arising here are convex but boundary singular;
the entropic geometry keeps iterates strictly inside the support.

The step schedule is the fixed 0.1 / (1 + t/100) sequence with no line
search: objectives are cheap and the dimension tiny. Refinement stops when
the L1 step norm drops below 1e-10 or after 1e4 iterations. The reported
"certified" gap is the crude surrogate L * delta, with delta the final
grid/step resolution and L a Lipschitz surrogate estimated over the
interior shrunk by a small margin; it is reported, never hidden.

Used as the independent oracle for the variational characterizations of
the two-parameter measures and for the dual exponent forms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .dist import JointPmf
from .errors import DimensionCap, NonFiniteObjectiveEverywhere
from .two_param import h_tilde, i_tilde

INF = math.inf


@dataclass(frozen=True)
class SimplexObjective:
    """A convex objective over joints of shape ``dims``.

    ``fn`` maps one (nx, ny) matrix to a float (may be +inf at the
    boundary; must be finite somewhere on the relative interior).
    ``batch`` (optional) evaluates an (..., nx, ny) stack at once; ``grad``
    (optional) returns the Euclidean gradient in bits at strictly positive
    points. Cells outside ``support`` are pinned to zero mass; the
    objective is treated as +inf off that face.
    """

    fn: Callable[[np.ndarray], float]
    dims: tuple[int, int]
    grad: Optional[Callable[[np.ndarray], np.ndarray]] = None
    batch: Optional[Callable[[np.ndarray], np.ndarray]] = None
    support: Optional[np.ndarray] = None
    convex: bool = True


@dataclass(frozen=True)
class SolverConfig:
    dim_cap: int = 36
    grid_subdivisions: int = 8
    grid_budget: int = 200_000
    refine_starts: int = 5
    max_iters: int = 10_000
    step0: float = 0.1
    step_decay: float = 100.0
    stop_step: float = 1e-10
    interior_mix: float = 1e-4
    interior_margin: float = 1e-6
    lipschitz: Optional[float] = None
    chunk: int = 8192


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class OptReport:
    """Best value found, where, how, and a crude certified gap bound."""

    minimum: float
    argmin: Optional[JointPmf]
    method: str
    gap: float
    iterations: int = 0
    final_step: float = 0.0


@lru_cache(maxsize=64)
def _grid_coords(d: int, n: int) -> np.ndarray:
    """All barycentric grid points with n subdivisions on the (d-1)-simplex."""
    bars = itertools.combinations(range(n + d - 1), d - 1)
    arr = np.fromiter(
        itertools.chain.from_iterable(bars), dtype=np.int64, count=-1
    ).reshape(-1, d - 1) if d > 1 else np.zeros((1, 0), dtype=np.int64)
    padded = np.concatenate(
        [
            np.full((arr.shape[0], 1), -1, dtype=np.int64),
            arr,
            np.full((arr.shape[0], 1), n + d - 1, dtype=np.int64),
        ],
        axis=1,
    )
    counts = np.diff(padded, axis=1) - 1
    pts = counts.astype(np.float64) / n
    pts.setflags(write=False)
    return pts


def _pick_subdivisions(d: int, cfg: SolverConfig) -> int:
    n = max(1, cfg.grid_subdivisions)
    while n > 1 and math.comb(n + d - 1, d - 1) > cfg.grid_budget:
        n -= 1
    return n


def _scatter(coords: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Masked coordinates (..., d) -> full matrices (..., nx, ny)."""
    out = np.zeros(coords.shape[:-1] + mask.shape)
    out[..., mask] = coords
    return out


def _batch_eval(obj: SimplexObjective, qs: np.ndarray) -> np.ndarray:
    if obj.batch is not None:
        return np.asarray(obj.batch(qs), dtype=np.float64)
    flat = qs.reshape(-1, *qs.shape[-2:])
    vals = np.array([obj.fn(q) for q in flat])
    return vals.reshape(qs.shape[:-2])


def _numeric_grad(obj: SimplexObjective, q: np.ndarray, mask: np.ndarray) -> np.ndarray:
    eps = 1e-7
    g = np.zeros_like(q)
    base = obj.fn(q)
    it = np.argwhere(mask)
    for (i, j) in it:
        qp = q.copy()
        qp[i, j] += eps
        g[i, j] = (obj.fn(qp / qp.sum()) - base) / eps
    return g


def _grad(obj: SimplexObjective, qs: np.ndarray, mask: np.ndarray) -> np.ndarray:
    if obj.grad is not None:
        return np.asarray(obj.grad(qs))
    flat = qs.reshape(-1, *qs.shape[-2:])
    gs = np.stack([_numeric_grad(obj, q, mask) for q in flat])
    return gs.reshape(qs.shape)


def evaluate_grid(
    obj: SimplexObjective, mask: np.ndarray, cfg: SolverConfig
) -> tuple[np.ndarray, np.ndarray, float]:
    """Objective values on the coarse grid over the masked face.

    Returns (coords (G, d), values (G,), resolution 1/n).
    """
    d = int(mask.sum())
    n = _pick_subdivisions(d, cfg)
    coords = _grid_coords(d, n)
    vals = np.empty(len(coords))
    for lo in range(0, len(coords), cfg.chunk):
        sl = slice(lo, lo + cfg.chunk)
        vals[sl] = _batch_eval(obj, _scatter(coords[sl], mask))
    return coords, vals, 1.0 / n


def mirror_descent(
    obj: SimplexObjective,
    starts: np.ndarray,
    mask: np.ndarray,
    cfg: SolverConfig,
) -> tuple[float, np.ndarray, np.ndarray, np.ndarray, int, float]:
    """Batched multiplicative-update descent from ``starts`` (k, d).

    Returns (best value, best coords (d,), end coords (k, d),
    end values (k,), iterations, final step norm). The running incumbent
    (best value seen) is asserted non-increasing at every iteration.
    """
    k, d = starts.shape
    logq = np.log2(np.maximum(starts, 1e-300))
    logq -= _lse2(logq)
    q = np.exp2(logq)
    vals = _batch_eval(obj, _scatter(q, mask))
    best_per = vals.copy()
    best_pts = q.copy()
    incumbent = float(np.min(vals))
    it = 0
    step = INF
    for it in range(1, cfg.max_iters + 1):
        g = _grad(obj, _scatter(q, mask), mask)[..., mask]
        g = g - g.mean(axis=-1, keepdims=True)
        eta = cfg.step0 / (1.0 + (it - 1) / cfg.step_decay)
        logq = logq - eta * g
        logq -= _lse2(logq)
        q_new = np.exp2(logq)
        step = float(np.abs(q_new - q).sum(axis=-1).max())
        q = q_new
        vals = _batch_eval(obj, _scatter(q, mask))
        better = vals < best_per
        best_per[better] = vals[better]
        best_pts[better] = q[better]
        new_incumbent = min(incumbent, float(np.min(best_per)))
        assert new_incumbent <= incumbent + 1e-12, "incumbent increased"
        incumbent = new_incumbent
        if step < cfg.stop_step:
            break
    j = int(np.argmin(best_per))
    return float(best_per[j]), best_pts[j], q, vals, it, step


def _lse2(logq: np.ndarray) -> np.ndarray:
    m = logq.max(axis=-1, keepdims=True)
    return m + np.log2(np.exp2(logq - m).sum(axis=-1, keepdims=True))


def _lipschitz_surrogate(
    obj: SimplexObjective, probes: np.ndarray, mask: np.ndarray, cfg: SolverConfig
) -> float:
    """Crude sup-gradient bound over the interior-shrunk probe set."""
    d = int(mask.sum())
    uniform = np.full(d, 1.0 / d)
    shrunk = (1.0 - cfg.interior_margin) * probes + cfg.interior_margin * uniform
    g = _grad(obj, _scatter(shrunk, mask), mask)[..., mask]
    g = g - g.mean(axis=-1, keepdims=True)
    val = float(np.abs(g).max())
    return 2.0 * val if math.isfinite(val) else INF


def minimize_over_joint(
    obj: SimplexObjective,
    dims: Optional[tuple[int, int]] = None,
    cfg: Optional[SolverConfig] = None,
    labels: Optional[tuple[Sequence[str], Sequence[str]]] = None,
    extra_starts: Optional[list[np.ndarray]] = None,
) -> OptReport:
    """Grid + mirror-descent minimization of ``obj`` over the joint simplex.

    ``extra_starts`` are full (nx, ny) matrices added to the refinement
    seeds (e.g. a known feasible point). Raises DimensionCap when the
    simplex is larger than the configured cap and
    NonFiniteObjectiveEverywhere when no grid point evaluates finite.
    """
    cfg = cfg or DEFAULT_CONFIG
    dims = dims or obj.dims
    nx, ny = dims
    if nx * ny > cfg.dim_cap:
        raise DimensionCap(f"{nx}x{ny} = {nx * ny} cells > cap {cfg.dim_cap}")
    mask = obj.support if obj.support is not None else np.ones(dims, dtype=bool)
    d = int(mask.sum())

    coords, vals, resolution = evaluate_grid(obj, mask, cfg)
    finite = np.isfinite(vals)
    if not finite.any():
        raise NonFiniteObjectiveEverywhere("objective is +inf on every grid point")
    order = np.argsort(np.where(finite, vals, INF))
    k = min(cfg.refine_starts, int(finite.sum()))
    seeds = coords[order[:k]]
    if extra_starts:
        extra = np.stack([np.asarray(s, dtype=np.float64)[mask] for s in extra_starts])
        extra = extra / extra.sum(axis=-1, keepdims=True)
        seeds = np.concatenate([seeds, extra], axis=0)

    uniform = np.full(d, 1.0 / d)
    seeds = (1.0 - cfg.interior_mix) * seeds + cfg.interior_mix * uniform

    best_val, best_pt, _, _, iters, final_step = mirror_descent(obj, seeds, mask, cfg)
    grid_best = float(vals[order[0]])
    method = "grid+refine"
    if grid_best < best_val:
        best_val, best_pt = grid_best, coords[order[0]]
        method = "grid"

    lip = cfg.lipschitz
    if lip is None:
        lip = _lipschitz_surrogate(obj, np.stack([best_pt, uniform]), mask, cfg)
    delta = final_step if final_step < resolution else resolution
    gap = lip * delta

    full = _scatter(best_pt, mask)
    argmin = None
    if labels is not None:
        argmin = JointPmf(tuple(labels[0]), tuple(labels[1]), full / full.sum())
    else:
        ax = tuple(f"x{i}" for i in range(nx))
        ay = tuple(f"y{j}" for j in range(ny))
        argmin = JointPmf(ax, ay, full / full.sum())
    return OptReport(best_val, argmin, method, float(gap), iters, final_step)


# ---------------------------------------------------------------------------
# the two variational objectives


def _safe_log2(a: np.ndarray) -> np.ndarray:
    return np.log2(np.where(a > 0.0, a, 1.0))


def _entropy_terms(q: np.ndarray):
    """(log2 Q, Q_Y, log2 Q_Y) with zeros treated as exact."""
    lq = np.where(q > 0.0, _safe_log2(q), 0.0)
    qy = q.sum(axis=-2)
    lqy = np.where(qy > 0.0, _safe_log2(qy), 0.0)
    return lq, qy, lqy


def _rel_entropy_bits(q: np.ndarray, lq: np.ndarray, logref: np.ndarray) -> np.ndarray:
    return np.where(q > 0.0, q * (lq - logref), 0.0).sum(axis=(-2, -1))


def variational_h_objective(
    joint: JointPmf, alpha: float, beta: float
) -> SimplexObjective:
    """Objective whose simplex minimum equals (alpha - 1) * H~_{alpha,beta}(X|Y).

    F(Q) = (alpha (1-beta)/beta) D(Q_Y || P_Y) + alpha D(Q_XY || P_XY)
           + (alpha - 1) H(X|Y)_Q, in bits.
    """
    if not (0.0 < alpha < INF and 0.0 < beta < INF):
        raise ValueError("finite positive (alpha, beta) required")
    p = joint.probs
    mask = p > 0.0
    logp = np.where(mask, _safe_log2(p), 0.0)
    py = p.sum(axis=0)
    logpy = np.where(py > 0.0, _safe_log2(py), 0.0)
    c1 = alpha * (1.0 - beta) / beta

    def batch(q: np.ndarray) -> np.ndarray:
        lq, qy, lqy = _entropy_terms(q)
        dqp = _rel_entropy_bits(q, lq, logp)
        dy = np.where(qy > 0.0, qy * (lqy - logpy), 0.0).sum(axis=-1)
        h_joint = -np.where(q > 0.0, q * lq, 0.0).sum(axis=(-2, -1))
        h_y = -np.where(qy > 0.0, qy * lqy, 0.0).sum(axis=-1)
        return c1 * dy + alpha * dqp + (alpha - 1.0) * (h_joint - h_y)

    def grad(q: np.ndarray) -> np.ndarray:
        lq, qy, lqy = _entropy_terms(q)
        ly = lqy[..., None, :]
        return (
            c1 * (ly - logpy[..., None, :])
            + alpha * (lq - logp)
            + (1.0 - alpha) * (lq - ly)
        )

    return SimplexObjective(
        fn=lambda q: float(batch(q[None])[0]),
        dims=joint.shape,
        grad=grad,
        batch=batch,
        support=mask,
    )


def variational_i_objective(
    joint: JointPmf, alpha: float, beta: float
) -> SimplexObjective:
    """Objective whose simplex minimum equals (1 - alpha) * I~_{alpha,beta}(X:Y).

    F(Q) = (alpha (1-beta)/beta) D(Q_Y || P_Y) + alpha D(Q_XY || P_XY)
           + (1 - alpha) D(Q_{X|Y} || P_X | Q_Y), in bits.
    """
    if not (0.0 < alpha < INF and 0.0 < beta < INF):
        raise ValueError("finite positive (alpha, beta) required")
    p = joint.probs
    mask = p > 0.0
    logp = np.where(mask, _safe_log2(p), 0.0)
    py = p.sum(axis=0)
    logpy = np.where(py > 0.0, _safe_log2(py), 0.0)
    px = p.sum(axis=1)
    logpx = np.where(px > 0.0, _safe_log2(px), 0.0)
    c1 = alpha * (1.0 - beta) / beta

    def batch(q: np.ndarray) -> np.ndarray:
        lq, qy, lqy = _entropy_terms(q)
        dqp = _rel_entropy_bits(q, lq, logp)
        dy = np.where(qy > 0.0, qy * (lqy - logpy), 0.0).sum(axis=-1)
        cond_ref = lqy[..., None, :] + logpx[..., :, None]
        dxc = np.where(q > 0.0, q * (lq - cond_ref), 0.0).sum(axis=(-2, -1))
        return c1 * dy + alpha * dqp + (1.0 - alpha) * dxc

    def grad(q: np.ndarray) -> np.ndarray:
        lq, qy, lqy = _entropy_terms(q)
        ly = lqy[..., None, :]
        return (
            c1 * (ly - logpy[..., None, :])
            + alpha * (lq - logp)
            + (1.0 - alpha) * (lq - ly - logpx[..., :, None])
        )

    return SimplexObjective(
        fn=lambda q: float(batch(q[None])[0]),
        dims=joint.shape,
        grad=grad,
        batch=batch,
        support=mask,
    )


def variational_h(
    joint: JointPmf, alpha: float, beta: float, cfg: Optional[SolverConfig] = None
) -> OptReport:
    """Solve the conditional-entropy variational problem; the report's
    minimum approximates (alpha - 1) * H~_{alpha,beta}(X|Y)."""
    obj = variational_h_objective(joint, alpha, beta)
    return minimize_over_joint(
        obj,
        cfg=cfg,
        labels=(joint.alphabet_x, joint.alphabet_y),
        extra_starts=[joint.probs],
    )


def variational_i(
    joint: JointPmf, alpha: float, beta: float, cfg: Optional[SolverConfig] = None
) -> OptReport:
    """Solve the mutual-information variational problem; the report's
    minimum approximates (1 - alpha) * I~_{alpha,beta}(X:Y)."""
    obj = variational_i_objective(joint, alpha, beta)
    return minimize_over_joint(
        obj,
        cfg=cfg,
        labels=(joint.alphabet_x, joint.alphabet_y),
        extra_starts=[joint.probs],
    )


def variational_h_target(joint: JointPmf, alpha: float, beta: float) -> float:
    """Closed-form (alpha - 1) * H~_{alpha,beta}(X|Y) for certification."""
    if alpha == 1.0:
        return 0.0
    return (alpha - 1.0) * h_tilde(joint, (alpha, beta)).value


def variational_i_target(joint: JointPmf, alpha: float, beta: float) -> float:
    """Closed-form (1 - alpha) * I~_{alpha,beta}(X:Y) for certification."""
    if alpha == 1.0:
        return 0.0
    return (1.0 - alpha) * i_tilde(joint, (alpha, beta)).value
