"""Classical order-alpha information measures on finite alphabets.

Renyi divergence and entropy, the conditional Renyi divergence, four
conditional-entropy variants and four mutual-information variants, each
defined on the full extended order range [0, inf].

Conventions (all logs base 2, values in bits):

* power sums are evaluated in the log domain through a max-shifted
  exponent sum, so orders up to ~1e3 neither under- nor overflow;
* 0/0 terms are dropped and a/0 = +inf for a > 0: +inf is a first-class
  result value (support mismatches are legitimate outputs, never raised);
* order 1 is an exact tag evaluated by the Shannon forms, never by a
  numeric limit.

All functions are pure functions of immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dist import CondPmf, JointPmf, Pmf, condition_on_y, joint_from_channel, marginal_x
from .errors import AlphabetMismatch
from .orders import ExtOrder

INF = math.inf

BRANCH_GENERIC = "generic"
BRANCH_ALPHA_ONE = "alpha_one"
BRANCH_ALPHA_ZERO = "alpha_zero"
BRANCH_ALPHA_INF = "alpha_inf"

H_VARIANTS = ("h", "hstar", "hbar", "hbarstar")
I_VARIANTS = ("i", "istar", "ibar", "ibarstar")


def _tag_branch(a: ExtOrder) -> str:
    if a.is_zero:
        return BRANCH_ALPHA_ZERO
    if a.is_inf:
        return BRANCH_ALPHA_INF
    if a.is_one:
        return BRANCH_ALPHA_ONE
    return BRANCH_GENERIC


@dataclass(frozen=True)
class MeasureResult:
    """A computed information quantity in bits plus the formula branch used."""

    value: float
    branch: str


def log2_strict(p: np.ndarray) -> np.ndarray:
    """log2 with -inf at exact zeros and no warnings."""
    p = np.asarray(p, dtype=np.float64)
    out = np.full(p.shape, -INF)
    pos = p > 0.0
    out[pos] = np.log2(p[pos])
    return out


def logsumexp2(t: np.ndarray, axis=None) -> np.ndarray | float:
    """log2(sum(2**t)) with max shifting; empty or all -inf input gives -inf."""
    t = np.asarray(t, dtype=np.float64)
    if t.size == 0:
        return -INF if axis is None else np.full(np.delete(t.shape, axis), -INF)
    m = np.max(t, axis=axis, keepdims=True)
    safe_m = np.where(np.isfinite(m), m, 0.0)
    s = np.sum(np.exp2(t - safe_m), axis=axis, keepdims=True)
    out = np.where(np.isfinite(m), safe_m + np.log2(np.maximum(s, 1e-300)), m)
    if axis is None:
        return float(out.reshape(()))
    return np.squeeze(out, axis=axis)


def _power_sum_log(logp: np.ndarray, a: float) -> float:
    """log2 of sum p_i^a over the support encoded as finite logp entries."""
    finite = logp[np.isfinite(logp)]
    return logsumexp2(a * finite)


# ---------------------------------------------------------------------------
# divergence and entropy


def renyi_divergence(p: Pmf, q: Pmf, order) -> MeasureResult:
    """Order-alpha Renyi divergence D_alpha(p || q) in bits.

    Generic orders use -log of the order-alpha fidelity, i.e.
    (1/(alpha-1)) * log2 sum_x p^alpha q^(1-alpha); order 1 is the relative
    entropy; order 0 is -log2 q(supp p); order inf is the sup log ratio.
    Support violations (alpha > 1 or the tags) yield +inf, not an error.
    """
    if p.alphabet != q.alphabet:
        raise AlphabetMismatch(f"{p.alphabet} vs {q.alphabet}")
    a = ExtOrder.of(order)
    pv, qv = p.probs, q.probs
    pos_p = pv > 0.0
    if a.is_one:
        if np.any(pos_p & (qv == 0.0)):
            return MeasureResult(INF, BRANCH_ALPHA_ONE)
        val = float(np.sum(pv[pos_p] * (np.log2(pv[pos_p]) - np.log2(qv[pos_p]))))
        return MeasureResult(val, BRANCH_ALPHA_ONE)
    if a.is_zero:
        qm = float(qv[pos_p].sum())
        val = INF if qm == 0.0 else -math.log2(qm)
        return MeasureResult(val, BRANCH_ALPHA_ZERO)
    if a.is_inf:
        if np.any(pos_p & (qv == 0.0)):
            return MeasureResult(INF, BRANCH_ALPHA_INF)
        ratio = np.log2(pv[pos_p]) - np.log2(qv[pos_p])
        return MeasureResult(float(ratio.max()), BRANCH_ALPHA_INF)
    alpha = a.as_float()
    if alpha > 1.0 and np.any(pos_p & (qv == 0.0)):
        return MeasureResult(INF, BRANCH_GENERIC)
    both = pos_p & (qv > 0.0)
    if not both.any():
        return MeasureResult(INF, BRANCH_GENERIC)
    t = alpha * np.log2(pv[both]) + (1.0 - alpha) * np.log2(qv[both])
    return MeasureResult(logsumexp2(t) / (alpha - 1.0), BRANCH_GENERIC)


def relative_entropy(p: Pmf, q: Pmf) -> float:
    """D(p || q) in bits (order-1 divergence)."""
    return renyi_divergence(p, q, 1).value


def cond_renyi_divergence(pyx: CondPmf, qyx: CondPmf, px: Pmf, order) -> MeasureResult:
    """Conditional divergence D_alpha(P_{Y|X} || Q_{Y|X} | P_X).

    Defined through the joints: D_alpha(P_X * P_{Y|X} || P_X * Q_{Y|X}),
    both built with the dist layer and flattened.
    """
    if pyx.target_alphabet != qyx.target_alphabet or pyx.given_alphabet != qyx.given_alphabet:
        raise AlphabetMismatch("channel alphabets differ")
    jp = joint_from_channel(px, pyx)
    jq = joint_from_channel(px, qyx)
    labels = tuple(f"{x}/{y}" for x in jp.alphabet_x for y in jp.alphabet_y)
    fp = Pmf(labels, jp.probs.reshape(-1))
    fq = Pmf(labels, jq.probs.reshape(-1))
    return renyi_divergence(fp, fq, order)


def shannon_entropy(p: Pmf | np.ndarray) -> float:
    pv = p.probs if isinstance(p, Pmf) else np.asarray(p, dtype=np.float64)
    pos = pv > 0.0
    return float(-np.sum(pv[pos] * np.log2(pv[pos])))


def renyi_entropy(p: Pmf, order) -> MeasureResult:
    """Order-alpha Renyi entropy of a marginal, in bits.

    (1/(1-alpha)) * log2 sum_x p^alpha for generic orders; Shannon entropy
    at 1; log2 |supp p| at 0; -log2 max p at inf.
    """
    a = ExtOrder.of(order)
    logp = log2_strict(p.probs)
    if a.is_one:
        return MeasureResult(shannon_entropy(p), BRANCH_ALPHA_ONE)
    if a.is_zero:
        return MeasureResult(math.log2(len(p.support)), BRANCH_ALPHA_ZERO)
    if a.is_inf:
        return MeasureResult(float(-logp.max()), BRANCH_ALPHA_INF)
    alpha = a.as_float()
    return MeasureResult(_power_sum_log(logp, alpha) / (1.0 - alpha), BRANCH_GENERIC)


# ---------------------------------------------------------------------------
# conditional-entropy variants


def _rows_and_weights(joint: JointPmf):
    """Positive-probability conditional rows of X given Y and their weights."""
    py, pxy_rows = condition_on_y(joint)
    idx = py.support
    weights = py.probs[idx]
    rows = [pxy_rows.row(int(j)) for j in idx]
    return weights, rows


def _entropy_rows(rows, order) -> np.ndarray:
    return np.array([renyi_entropy(r, order).value for r in rows])


def shannon_cond_entropy(joint: JointPmf) -> float:
    """H(X|Y) in bits."""
    weights, rows = _rows_and_weights(joint)
    return float(np.sum(weights * np.array([shannon_entropy(r) for r in rows])))


def cond_entropy_variant(variant: str, joint: JointPmf, order) -> MeasureResult:
    """One of the four conditional Renyi entropy variants, in bits.

    variant "h":        -D_alpha(P_XY || 1_X x P_Y), the row-power-sum average.
    variant "hstar":    the minimum over reference Q_Y, evaluated by its
                        alpha-norm closed form.
    variant "hbar":     P_Y-average of the row entropies.
    variant "hbarstar": worst-case row entropy (max for alpha < 1, min for
                        alpha > 1, the Shannon average at alpha = 1), over
                        rows with P_Y(y) > 0.

    All variants agree with Shannon H(X|Y) at order 1 (hbarstar by its own
    order-1 branch).
    """
    if variant not in H_VARIANTS:
        raise ValueError(f"variant must be one of {H_VARIANTS}, got {variant!r}")
    a = ExtOrder.of(order)
    weights, rows = _rows_and_weights(joint)
    logw = np.log2(weights)

    if a.is_one:
        val = float(np.sum(weights * np.array([shannon_entropy(r) for r in rows])))
        return MeasureResult(val, BRANCH_ALPHA_ONE)

    if variant == "hbar":
        hs = _entropy_rows(rows, a)
        return MeasureResult(float(np.sum(weights * hs)), _tag_branch(a))

    if variant == "hbarstar":
        hs = _entropy_rows(rows, a)
        if a.is_zero or (a.is_finite and a.as_float() < 1.0):
            val = float(hs.max())
        else:
            val = float(hs.min())
        return MeasureResult(val, _tag_branch(a))

    if variant == "h":
        if a.is_zero:
            supc = np.array([len(r.support) for r in rows], dtype=float)
            return MeasureResult(float(np.log2(np.sum(weights * supc))), BRANCH_ALPHA_ZERO)
        if a.is_inf:
            best = max(float(r.probs.max()) for r in rows)
            return MeasureResult(-math.log2(best), BRANCH_ALPHA_INF)
        alpha = a.as_float()
        inner = np.array([_power_sum_log(log2_strict(r.probs), alpha) for r in rows])
        return MeasureResult(logsumexp2(logw + inner) / (1.0 - alpha), BRANCH_GENERIC)

    # hstar
    if a.is_zero:
        return MeasureResult(max(math.log2(len(r.support)) for r in rows), BRANCH_ALPHA_ZERO)
    if a.is_inf:
        val = -math.log2(float(np.sum(weights * np.array([r.probs.max() for r in rows]))))
        return MeasureResult(val, BRANCH_ALPHA_INF)
    alpha = a.as_float()
    inner = np.array([_power_sum_log(log2_strict(r.probs), alpha) for r in rows])
    val = alpha / (1.0 - alpha) * logsumexp2(logw + inner / alpha)
    return MeasureResult(val, BRANCH_GENERIC)


# ---------------------------------------------------------------------------
# mutual-information variants


def shannon_mi(joint: JointPmf) -> float:
    """I(X:Y) in bits."""
    px = marginal_x(joint).probs
    pyv = joint.probs.sum(axis=0)
    pos = joint.probs > 0.0
    ref = np.outer(px, pyv)
    j = joint.probs[pos]
    return float(np.sum(j * (np.log2(j) - np.log2(ref[pos]))))


def _row_divergences(joint: JointPmf, order) -> tuple[np.ndarray, np.ndarray]:
    px = marginal_x(joint)
    weights, rows = _rows_and_weights(joint)
    divs = np.array([renyi_divergence(r, px, order).value for r in rows])
    return weights, divs


def mutual_info_variant(variant: str, joint: JointPmf, order) -> MeasureResult:
    """One of the four order-alpha mutual-information variants, in bits.

    variant "i":        D_alpha(P_XY || P_X x P_Y).
    variant "istar":    minimum over reference Q_Y, by its closed form
                        (alpha/(alpha-1)) log2 sum_y (sum_x P_X P_{Y|X}^alpha)^(1/alpha).
    variant "ibar":     P_Y-average of D_alpha(P_{X|y} || P_X).
    variant "ibarstar": extreme row divergence (min for alpha < 1, max for
                        alpha > 1, Shannon I at alpha = 1), over P_Y(y) > 0.
    """
    if variant not in I_VARIANTS:
        raise ValueError(f"variant must be one of {I_VARIANTS}, got {variant!r}")
    a = ExtOrder.of(order)

    if a.is_one:
        return MeasureResult(shannon_mi(joint), BRANCH_ALPHA_ONE)

    if variant == "i":
        px = marginal_x(joint).probs
        pyv = joint.probs.sum(axis=0)
        labels = tuple(f"{x}/{y}" for x in joint.alphabet_x for y in joint.alphabet_y)
        p = Pmf(labels, joint.probs.reshape(-1))
        q = Pmf(labels, np.outer(px, pyv).reshape(-1))
        return renyi_divergence(p, q, a)

    if variant == "ibar":
        weights, divs = _row_divergences(joint, a)
        return MeasureResult(float(np.sum(weights * divs)), _tag_branch(a))

    if variant == "ibarstar":
        weights, divs = _row_divergences(joint, a)
        if a.is_zero or (a.is_finite and a.as_float() < 1.0):
            val = float(divs.min())
        else:
            val = float(divs.max())
        return MeasureResult(val, _tag_branch(a))

    # istar
    px = marginal_x(joint)
    weights, rows = _rows_and_weights(joint)
    logw = np.log2(weights)
    logpx = log2_strict(px.probs)
    if a.is_zero:
        masses = np.array([float(px.probs[r.probs > 0.0].sum()) for r in rows])
        top = float(masses.max())
        val = INF if top == 0.0 else -math.log2(top)
        return MeasureResult(val, BRANCH_ALPHA_ZERO)
    if a.is_inf:
        best = np.empty(len(rows))
        for k, r in enumerate(rows):
            m = px.probs > 0.0
            best[k] = np.max(np.exp2(log2_strict(r.probs)[m] - logpx[m]))
        return MeasureResult(float(np.log2(np.sum(weights * best))), BRANCH_ALPHA_INF)
    alpha = a.as_float()
    inner = np.empty(len(rows))
    for k, r in enumerate(rows):
        logr = log2_strict(r.probs)
        sup_r = np.isfinite(logr)
        if alpha > 1.0 and np.any(sup_r & ~np.isfinite(logpx)):
            return MeasureResult(INF, BRANCH_GENERIC)
        both = sup_r & np.isfinite(logpx)
        inner[k] = logsumexp2((1.0 - alpha) * logpx[both] + alpha * logr[both])
    val = alpha / (alpha - 1.0) * logsumexp2(logw + inner / alpha)
    return MeasureResult(val, BRANCH_GENERIC)
