"""Named structural property checks for the information measures.

Each check samples random instances (seeded), evaluates one inequality or
identity family, and reports the worst violation with a counterexample
payload. The registry keys are behavior-named so they can be selected from
the command line (e.g. ``--props mono-alpha,additivity``); the same checks
back the acceptance suite.

Slack is 1e-9 unless a check states otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dist import JointPmf, Pmf, joint_from_channel, marginal_x, marginal_y, product
from .measures import (
    cond_entropy_variant,
    mutual_info_variant,
    relative_entropy,
    renyi_divergence,
    shannon_cond_entropy,
    shannon_mi,
)
from .orders import OrderPair
from .sampling import (
    markov_chain_pair,
    random_channel,
    random_joint,
    random_joint_with_zeros,
    random_pmf,
    random_triple,
    triple_as_joint_x_yz,
    triple_as_joint_xy_z,
)
from .two_param import h_tilde, i_tilde

ALPHA_GRID = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0)
BETA_GRID = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0)
EXT_GRID = (0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0, math.inf)
SLACK = 1e-9


@dataclass
class PropertyResult:
    name: str
    passed: bool
    checked: int
    worst: float
    counterexample: Optional[dict] = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "worst_violation": self.worst,
            "counterexample": self.counterexample,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Property:
    name: str
    description: str
    fn: Callable[[np.random.Generator, int], PropertyResult]
    default_samples: int = 60


class _Tracker:
    """Accumulates the worst violation and its witness."""

    def __init__(self, name: str, slack: float = SLACK):
        self.name = name
        self.slack = slack
        self.worst = 0.0
        self.witness: Optional[dict] = None
        self.checked = 0

    def see(self, violation: float, witness: dict):
        self.checked += 1
        if violation > self.worst:
            self.worst = violation
            self.witness = witness

    def result(self, detail: str = "") -> PropertyResult:
        passed = self.worst <= self.slack
        return PropertyResult(
            self.name,
            passed,
            self.checked,
            self.worst,
            None if passed else self.witness,
            detail,
        )


def _joint_payload(j: JointPmf) -> dict:
    return {"alphabet_x": list(j.alphabet_x), "alphabet_y": list(j.alphabet_y),
            "pmf": [list(map(float, r)) for r in j.probs]}


def _sizes(rng, hi=5):
    return int(rng.integers(2, hi + 1)), int(rng.integers(2, hi + 1))


# ---------------------------------------------------------------------------
# classical divergence properties


def check_div_order_mono(rng: np.random.Generator, samples: int) -> PropertyResult:
    """Divergence is non-decreasing in the order (slack 1e-10)."""
    t = _Tracker("div-order-mono", slack=1e-10)
    for _ in range(samples):
        k = int(rng.integers(2, 6))
        p, q = random_pmf(rng, k), random_pmf(rng, k)
        vals = [renyi_divergence(p, q, a).value for a in EXT_GRID]
        for lo, hi in zip(vals, vals[1:]):
            t.see(lo - hi, {"p": list(map(float, p.probs)), "q": list(map(float, q.probs))})
    return t.result()


def check_div_dpi(rng: np.random.Generator, samples: int) -> PropertyResult:
    """Channels cannot increase the divergence (slack 1e-10)."""
    t = _Tracker("div-dpi", slack=1e-10)
    for _ in range(samples):
        k = int(rng.integers(2, 5))
        ko = int(rng.integers(2, 5))
        p, q = random_pmf(rng, k), random_pmf(rng, k)
        w = random_channel(rng, k, ko).matrix()
        wp = Pmf(tuple(f"o{i}" for i in range(ko)), p.probs @ w)
        wq = Pmf(tuple(f"o{i}" for i in range(ko)), q.probs @ w)
        for a in EXT_GRID:
            before = renyi_divergence(p, q, a).value
            after = renyi_divergence(wp, wq, a).value
            if math.isinf(before):
                continue
            t.see(after - before, {"alpha": a, "p": list(map(float, p.probs)),
                                   "q": list(map(float, q.probs))})
    return t.result()


def _simplex_grid_3(n: int) -> np.ndarray:
    pts = []
    for i in range(n + 1):
        for j in range(n + 1 - i):
            pts.append((i, j, n - i - j))
    return np.asarray(pts, dtype=np.float64) / n


def check_div_variational(rng: np.random.Generator, samples: int) -> PropertyResult:
    """Grid optimum of (a/(1-a)) D(S||P) + D(S||Q) matches D_a within twice
    the grid-resolution error bound (min for a < 1, max for a > 1)."""
    t = _Tracker("div-variational", slack=0.0)
    n = 60
    grid = _simplex_grid_3(n)
    interior = grid[(grid > 0).all(axis=1)]
    lg = np.log2(interior)
    for _ in range(max(samples // 4, 3)):
        p = random_pmf(rng, 3, concentration=3.0)
        q = random_pmf(rng, 3, concentration=3.0)
        lp, lq = np.log2(p.probs), np.log2(q.probs)
        for a in (0.3, 0.7, 1.5, 3.0):
            c = a / (1.0 - a)
            obj = c * np.sum(interior * (lg - lp), axis=1) + np.sum(
                interior * (lg - lq), axis=1
            )
            d = renyi_divergence(p, q, a).value
            if a < 1.0:
                j = int(np.argmin(obj))
                one_sided = d - obj[j]  # grid value can only overshoot the min
                gap = obj[j] - d
            else:
                j = int(np.argmax(obj))
                one_sided = obj[j] - d
                gap = d - obj[j]
            s = interior[j]
            g = c * (np.log2(s) - lp) + (np.log2(s) - lq)
            lip = float(np.abs(g - g.mean()).max()) + 1.0
            bound = 2.0 * lip / n
            witness = {"alpha": a, "p": list(map(float, p.probs)),
                       "q": list(map(float, q.probs)), "gap": float(gap)}
            t.see(one_sided - 1e-12, witness)
            t.see(gap - bound, witness)
    return t.result()


def check_div_continuity(rng: np.random.Generator, samples: int) -> PropertyResult:
    """|D_{1 +/- 1e-3} - D| <= 1e-4 on interior-support inputs.

    Inputs are concentrated (Dirichlet 25) so the pinned offset keeps the
    Taylor remainder below the pinned tolerance; branch bugs still show up
    at O(0.1) on these inputs.
    """
    t = _Tracker("div-continuity", slack=0.0)
    for _ in range(samples):
        k = int(rng.integers(2, 6))
        p = random_pmf(rng, k, concentration=80.0)
        q = random_pmf(rng, k, concentration=80.0)
        d1 = relative_entropy(p, q)
        for a in (1.0 - 1e-3, 1.0 + 1e-3):
            da = renyi_divergence(p, q, a).value
            t.see(abs(da - d1) - 1e-4, {"alpha": a, "p": list(map(float, p.probs)),
                                        "q": list(map(float, q.probs))})
    return t.result()


def check_nonneg(rng: np.random.Generator, samples: int) -> PropertyResult:
    """Entropies, divergences, and both two-parameter measures are >= 0;
    the mutual information vanishes exactly on independent joints."""
    t = _Tracker("nonneg")
    pairs = [OrderPair.of(a, b) for a in EXT_GRID for b in EXT_GRID
             if not (a == 1.0 and math.isinf(b))]
    for i in range(samples):
        nx, ny = _sizes(rng, 4)
        j = random_joint(rng, nx, ny) if i % 2 == 0 else random_joint_with_zeros(rng, nx, ny)
        payload = _joint_payload(j)
        for pair in pairs:
            t.see(-h_tilde(j, pair).value, {"order": str(pair), **payload})
            t.see(-i_tilde(j, pair).value, {"order": str(pair), **payload})
        px, py = marginal_x(j), marginal_y(j)
        indep = JointPmf(j.alphabet_x, j.alphabet_y, np.outer(px.probs, py.probs))
        for pair in pairs[:: max(1, len(pairs) // 12)]:
            t.see(abs(i_tilde(indep, pair).value), {"order": str(pair), "case": "independence"})
    return t.result()


# ---------------------------------------------------------------------------
# two-parameter structure


def check_collapse(rng: np.random.Generator, samples: int) -> PropertyResult:
    """The two-parameter measures reduce to the four classical variants at
    beta in {alpha, 0, 1, inf}.

    The diagonal identity is checked for alpha in the grid plus {1, inf}
    but not at alpha = 0, where the (0,0) corner convention (beta-then-
    alpha limit) differs from the diagonal limit by design.
    """
    t = _Tracker("collapse")
    diag_alphas = [a for a in EXT_GRID if a != 0.0]
    off_alphas = list(EXT_GRID)
    for _ in range(samples):
        nx, ny = _sizes(rng, 5)
        j = random_joint(rng, nx, ny)
        payload = _joint_payload(j)
        for a in diag_alphas:
            t.see(abs(h_tilde(j, (a, a)).value - cond_entropy_variant("h", j, a).value),
                  {"identity": "h~(a,a)=h", "alpha": a, **payload})
            t.see(abs(i_tilde(j, (a, a)).value - mutual_info_variant("i", j, a).value),
                  {"identity": "i~(a,a)=i", "alpha": a, **payload})
        for a in off_alphas:
            for b, variant_h, variant_i in (
                (0.0, "hbar", "ibar"),
                (1.0, "hstar", "istar"),
                (math.inf, "hbarstar", "ibarstar"),
            ):
                if a == 1.0 and math.isinf(b):
                    continue
                t.see(abs(h_tilde(j, (a, b)).value - cond_entropy_variant(variant_h, j, a).value),
                      {"identity": f"h~(a,{b})={variant_h}", "alpha": a, **payload})
                t.see(abs(i_tilde(j, (a, b)).value - mutual_info_variant(variant_i, j, a).value),
                      {"identity": f"i~(a,{b})={variant_i}", "alpha": a, **payload})
    return t.result()


def check_mono_alpha(rng: np.random.Generator, samples: int) -> PropertyResult:
    """The conditional entropy is non-increasing and the mutual information
    non-decreasing in alpha, for every fixed beta (extended grid)."""
    t = _Tracker("mono-alpha")
    for _ in range(samples):
        nx, ny = _sizes(rng, 5)
        j = random_joint(rng, nx, ny)
        payload = _joint_payload(j)
        for b in EXT_GRID:
            alphas = [a for a in EXT_GRID if not (a == 1.0 and math.isinf(b))]
            hv = [h_tilde(j, (a, b)).value for a in alphas]
            iv = [i_tilde(j, (a, b)).value for a in alphas]
            for (a1, v1), (a2, v2) in zip(zip(alphas, hv), zip(alphas[1:], hv[1:])):
                t.see(v2 - v1, {"measure": "h", "beta": b, "alphas": (a1, a2), **payload})
            for (a1, v1), (a2, v2) in zip(zip(alphas, iv), zip(alphas[1:], iv[1:])):
                t.see(v1 - v2, {"measure": "i", "beta": b, "alphas": (a1, a2), **payload})
    return t.result()


def check_mono_beta(rng: np.random.Generator, samples: int) -> PropertyResult:
    """For alpha > 1 the conditional entropy is non-increasing and the
    mutual information non-decreasing in beta; reversed for alpha < 1."""
    t = _Tracker("mono-beta")
    betas = list(EXT_GRID)
    for _ in range(samples):
        nx, ny = _sizes(rng, 5)
        j = random_joint(rng, nx, ny)
        payload = _joint_payload(j)
        for a in (0.0, 0.25, 0.5, 0.75, 1.5, 2.0, 4.0, math.inf):
            bs = [b for b in betas if not (a == 1.0 and math.isinf(b))]
            hv = [h_tilde(j, (a, b)).value for b in bs]
            iv = [i_tilde(j, (a, b)).value for b in bs]
            sign = 1.0 if a > 1.0 else -1.0
            for (b1, v1), (b2, v2) in zip(zip(bs, hv), zip(bs[1:], hv[1:])):
                t.see(sign * (v2 - v1), {"measure": "h", "alpha": a, "betas": (b1, b2), **payload})
            for (b1, v1), (b2, v2) in zip(zip(bs, iv), zip(bs[1:], iv[1:])):
                t.see(sign * (v1 - v2), {"measure": "i", "alpha": a, "betas": (b1, b2), **payload})
    return t.result()


def check_additivity(rng: np.random.Generator, samples: int) -> PropertyResult:
    """Both measures add over independent products, for finite positive orders."""
    t = _Tracker("additivity")
    for _ in range(samples):
        p = random_joint(rng, int(rng.integers(2, 4)), int(rng.integers(2, 4)))
        q = random_joint(rng, int(rng.integers(2, 4)), int(rng.integers(2, 4)))
        pq = product(p, q)
        for a in ALPHA_GRID:
            for b in BETA_GRID:
                hs = h_tilde(p, (a, b)).value + h_tilde(q, (a, b)).value
                t.see(abs(h_tilde(pq, (a, b)).value - hs),
                      {"measure": "h", "order": (a, b)})
                si = i_tilde(p, (a, b)).value + i_tilde(q, (a, b)).value
                t.see(abs(i_tilde(pq, (a, b)).value - si),
                      {"measure": "i", "order": (a, b)})
    return t.result()


_SAME_SIDE = [(a, b) for a in ALPHA_GRID for b in BETA_GRID
              if (a <= 1.0 and b <= 1.0) or (a >= 1.0 and b >= 1.0)]


def check_dpi_h(rng: np.random.Generator, samples: int) -> PropertyResult:
    """Conditioning on more never raises the conditional entropy:
    H(X|YZ) <= H(X|Y) for orders on the same side of 1."""
    t = _Tracker("dpi-h")
    for _ in range(samples):
        tr = random_triple(rng, int(rng.integers(2, 4)), int(rng.integers(2, 4)),
                           int(rng.integers(2, 4)))
        j_xyz = triple_as_joint_x_yz(tr)
        j_xy = JointPmf(j_xyz.alphabet_x, tuple(f"y{k}" for k in range(tr.shape[1])),
                        tr.sum(axis=2))
        for a, b in _SAME_SIDE:
            t.see(h_tilde(j_xyz, (a, b)).value - h_tilde(j_xy, (a, b)).value,
                  {"order": (a, b)})
    return t.result()


def check_dpi_i(rng: np.random.Generator, samples: int) -> PropertyResult:
    """Processing the second argument of a Markov chain never raises the
    mutual information, for orders on the same side of 1."""
    t = _Tracker("dpi-i")
    for _ in range(samples):
        pxy, pxz = markov_chain_pair(rng, int(rng.integers(2, 4)),
                                     int(rng.integers(2, 4)), int(rng.integers(2, 4)))
        for a, b in _SAME_SIDE:
            t.see(i_tilde(pxz, (a, b)).value - i_tilde(pxy, (a, b)).value,
                  {"order": (a, b)})
    return t.result()


def check_discard_mono(rng: np.random.Generator, samples: int) -> PropertyResult:
    """Dropping a coordinate never raises the conditional entropy:
    H(XY|Z) >= H(Y|Z) for finite positive orders."""
    t = _Tracker("discard-mono")
    for _ in range(samples):
        tr = random_triple(rng, int(rng.integers(2, 4)), int(rng.integers(2, 4)),
                           int(rng.integers(2, 4)))
        j_xy_z = triple_as_joint_xy_z(tr)
        j_y_z = JointPmf(tuple(f"y{k}" for k in range(tr.shape[1])),
                         j_xy_z.alphabet_y, tr.sum(axis=0))
        for a in ALPHA_GRID:
            for b in BETA_GRID:
                t.see(h_tilde(j_y_z, (a, b)).value - h_tilde(j_xy_z, (a, b)).value,
                      {"order": (a, b)})
    return t.result()


def check_concavity_alpha(rng: np.random.Generator, samples: int) -> PropertyResult:
    """(alpha-1) H and (1-alpha) I are midpoint concave in alpha at fixed beta."""
    t = _Tracker("concavity-alpha")

    def fh(j, a, b):
        return 0.0 if a == 1.0 else (a - 1.0) * h_tilde(j, (a, b)).value

    def fi(j, a, b):
        return 0.0 if a == 1.0 else (1.0 - a) * i_tilde(j, (a, b)).value

    for _ in range(samples):
        nx, ny = _sizes(rng, 4)
        j = random_joint(rng, nx, ny)
        for b in BETA_GRID:
            for a1 in ALPHA_GRID:
                for a2 in ALPHA_GRID:
                    if a2 <= a1:
                        continue
                    mid = (a1 + a2) / 2.0
                    t.see((fh(j, a1, b) + fh(j, a2, b)) / 2.0 - fh(j, mid, b),
                          {"measure": "h", "beta": b, "alphas": (a1, a2)})
                    t.see((fi(j, a1, b) + fi(j, a2, b)) / 2.0 - fi(j, mid, b),
                          {"measure": "i", "beta": b, "alphas": (a1, a2)})
    return t.result()


def check_concavity_input(rng: np.random.Generator, samples: int) -> PropertyResult:
    """The mutual information is concave in the input distribution for
    alpha >= 1 and beta <= 1 (fixed channel)."""
    t = _Tracker("concavity-input")
    for _ in range(samples):
        nx, ny = _sizes(rng, 4)
        w = random_channel(rng, nx, ny)
        p1, p2 = random_pmf(rng, nx), random_pmf(rng, nx)
        mid = Pmf(p1.alphabet, (p1.probs + p2.probs) / 2.0)
        for a in (1.0, 1.5, 2.0, 4.0):
            for b in (0.25, 0.5, 1.0):
                v1 = i_tilde(joint_from_channel(p1, w), (a, b)).value
                v2 = i_tilde(joint_from_channel(p2, w), (a, b)).value
                vm = i_tilde(joint_from_channel(mid, w), (a, b)).value
                t.see((v1 + v2) / 2.0 - vm, {"order": (a, b)})
    return t.result()


def check_convexity_channel(rng: np.random.Generator, samples: int) -> PropertyResult:
    """The mutual information is convex in the channel for alpha, beta <= 1
    (fixed input)."""
    t = _Tracker("convexity-channel")
    for _ in range(samples):
        nx, ny = _sizes(rng, 4)
        px = random_pmf(rng, nx)
        w1, w2 = random_channel(rng, nx, ny), random_channel(rng, nx, ny)
        mid_m = (w1.matrix() + w2.matrix()) / 2.0
        from .dist import CondPmf

        wm = CondPmf.from_matrix(w1.given_alphabet, w1.target_alphabet, mid_m)
        for a in (0.25, 0.5, 1.0):
            for b in (0.25, 0.5, 1.0):
                v1 = i_tilde(joint_from_channel(px, w1), (a, b)).value
                v2 = i_tilde(joint_from_channel(px, w2), (a, b)).value
                vm = i_tilde(joint_from_channel(px, wm), (a, b)).value
                t.see(vm - (v1 + v2) / 2.0, {"order": (a, b)})
    return t.result()


def check_continuity_one(rng: np.random.Generator, samples: int) -> PropertyResult:
    """Both generic branches at alpha = 1 +/- 1e-3 sit within 1e-4 of the
    Shannon forms on full-support joints (concentrated family; see
    div-continuity for the rationale)."""
    t = _Tracker("continuity-one", slack=0.0)
    for _ in range(samples):
        j = random_joint(rng, 3, 3, concentration=80.0)
        h1 = shannon_cond_entropy(j)
        i1 = shannon_mi(j)
        for b in (0.5, 1.0, 2.0):
            for a in (1.0 - 1e-3, 1.0 + 1e-3):
                t.see(abs(h_tilde(j, (a, b)).value - h1) - 1e-4, {"order": (a, b)})
                t.see(abs(i_tilde(j, (a, b)).value - i1) - 1e-4, {"order": (a, b)})
    return t.result()


def check_power_concavity(rng: np.random.Generator, samples: int) -> PropertyResult:
    """(a, b) -> a^x b^y with x, y >= 0, x + y <= 1 is midpoint concave;
    a self-check of the concavity harness."""
    t = _Tracker("power-concavity", slack=1e-12)
    for _ in range(samples):
        x = rng.uniform(0.0, 1.0)
        y = rng.uniform(0.0, 1.0 - x)
        a1, a2 = rng.uniform(0.01, 5.0, size=2)
        b1, b2 = rng.uniform(0.01, 5.0, size=2)

        def f(a, b):
            return a**x * b**y

        mid = f((a1 + a2) / 2.0, (b1 + b2) / 2.0)
        t.see((f(a1, b1) + f(a2, b2)) / 2.0 - mid,
              {"x": x, "y": y, "points": [(a1, b1), (a2, b2)]})
    return t.result()


REGISTRY: dict[str, Property] = {
    p.name: p
    for p in [
        Property("div-order-mono", "divergence monotone in the order", check_div_order_mono, 120),
        Property("div-dpi", "data processing cannot increase divergence", check_div_dpi, 120),
        Property("div-variational", "divergence variational grid check", check_div_variational, 24),
        Property("div-continuity", "divergence continuous at order 1", check_div_continuity, 60),
        Property("nonneg", "non-negativity and independence equality", check_nonneg, 40),
        Property("collapse", "two-parameter measures hit the classical variants", check_collapse, 60),
        Property("mono-alpha", "monotone in alpha at fixed beta", check_mono_alpha, 60),
        Property("mono-beta", "monotone in beta at fixed alpha", check_mono_beta, 60),
        Property("additivity", "additive over independent products", check_additivity, 40),
        Property("dpi-h", "conditioning on more cannot raise H", check_dpi_h, 60),
        Property("dpi-i", "Markov processing cannot raise I", check_dpi_i, 60),
        Property("discard-mono", "discarding a coordinate cannot raise H", check_discard_mono, 60),
        Property("concavity-alpha", "signed measures concave in alpha", check_concavity_alpha, 30),
        Property("concavity-input", "I concave in the input distribution", check_concavity_input, 40),
        Property("convexity-channel", "I convex in the channel", check_convexity_channel, 40),
        Property("continuity-one", "generic branch continuous at alpha 1", check_continuity_one, 40),
        Property("power-concavity", "harness self-check on a^x b^y", check_power_concavity, 200),
    ]
}


def run_properties(
    names: Optional[list[str]] = None,
    seed: int = 0,
    samples: Optional[int] = None,
    registry: Optional[dict[str, Property]] = None,
) -> list[PropertyResult]:
    """Run the named checks (all by default) with per-check RNG streams
    split off the master seed."""
    registry = registry if registry is not None else REGISTRY
    if names is None:
        names = list(registry)
    unknown = [n for n in names if n not in registry]
    if unknown:
        raise KeyError(f"unknown properties: {unknown}; known: {sorted(registry)}")
    root = np.random.SeedSequence(seed)
    streams = root.spawn(len(names))
    out = []
    for name, stream in zip(names, streams):
        prop = registry[name]
        rng = np.random.default_rng(stream)
        out.append(prop.fn(rng, samples or prop.default_samples))
    return out
