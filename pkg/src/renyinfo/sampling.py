"""Seeded random distributions for tests, property suites, and demos."""

from __future__ import annotations

import numpy as np

from .dist import CondPmf, JointPmf, Pmf


def _labels(prefix: str, k: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(k))


def random_pmf(rng: np.random.Generator, k: int, concentration: float = 1.0) -> Pmf:
    """Dirichlet(concentration) marginal over k symbols."""
    v = rng.dirichlet(np.full(k, concentration))
    v = v / v.sum()
    return Pmf(_labels("x", k), v)


def random_joint(
    rng: np.random.Generator, nx: int, ny: int, concentration: float = 1.0
) -> JointPmf:
    """Dirichlet(concentration) joint over nx * ny cells (full support a.s.)."""
    v = rng.dirichlet(np.full(nx * ny, concentration)).reshape(nx, ny)
    v = v / v.sum()
    return JointPmf(_labels("x", nx), _labels("y", ny), v)


def random_joint_with_zeros(
    rng: np.random.Generator, nx: int, ny: int, zero_fraction: float = 0.3
) -> JointPmf:
    """A joint with an exact-zero pattern, keeping every row and column alive."""
    while True:
        v = rng.dirichlet(np.ones(nx * ny)).reshape(nx, ny)
        mask = rng.random((nx, ny)) < zero_fraction
        v = np.where(mask, 0.0, v)
        if v.sum() <= 0 or np.any(v.sum(axis=0) == 0) or np.any(v.sum(axis=1) == 0):
            continue
        v = v / v.sum()
        return JointPmf(_labels("x", nx), _labels("y", ny), v)


def random_channel(
    rng: np.random.Generator, nx: int, ny: int, concentration: float = 1.0
) -> CondPmf:
    """A total channel X -> Y with Dirichlet rows."""
    rows = [rng.dirichlet(np.full(ny, concentration)) for _ in range(nx)]
    rows = [r / r.sum() for r in rows]
    return CondPmf.from_matrix(_labels("x", nx), _labels("y", ny), rows)


def random_triple(
    rng: np.random.Generator, nx: int, ny: int, nz: int, concentration: float = 1.0
) -> np.ndarray:
    """A dense joint pmf over X x Y x Z as a plain array."""
    v = rng.dirichlet(np.full(nx * ny * nz, concentration)).reshape(nx, ny, nz)
    return v / v.sum()


def triple_as_joint_x_yz(t: np.ndarray) -> JointPmf:
    """View a triple P_XYZ as the pair joint (X, (Y,Z))."""
    nx, ny, nz = t.shape
    labels_yz = tuple(f"(y{j},z{k})" for j in range(ny) for k in range(nz))
    return JointPmf(_labels("x", nx), labels_yz, t.reshape(nx, ny * nz))


def triple_as_joint_xy_z(t: np.ndarray) -> JointPmf:
    """View a triple P_XYZ as the pair joint ((X,Y), Z)."""
    nx, ny, nz = t.shape
    labels_xy = tuple(f"(x{i},y{j})" for i in range(nx) for j in range(ny))
    return JointPmf(labels_xy, _labels("z", nz), t.reshape(nx * ny, nz))


def markov_chain_pair(
    rng: np.random.Generator, nx: int, ny: int, nz: int, concentration: float = 1.0
) -> tuple[JointPmf, JointPmf]:
    """Joints (P_XY, P_XZ) of a Markov chain X - Y - Z built from random pieces."""
    pxy = random_joint(rng, nx, ny, concentration)
    w = random_channel(rng, ny, nz, concentration)
    pxz = pxy.probs @ w.matrix()
    return pxy, JointPmf(pxy.alphabet_x, _labels("z", nz), pxz / pxz.sum())
