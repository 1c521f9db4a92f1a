"""
Rescaled Fubini-Study geometry on the manifold of pure qutrit states.

Lengths are scaled by sqrt(3) so that ``ds^2 = dn . dn``. The invariant
volume element in the coordinates ``(theta, phi, chi1, chi2)`` is
``9 sin^3(theta) cos(theta) sin(phi) cos(phi)``, with total volume 9 pi^2 / 2.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import pi
from typing import Callable, Iterator, Sequence

import numpy as np

from .qutrit_state import PureStateParams, overlap

TOTAL_VOLUME = 9 * pi**2 / 2
FS_VOLUME = pi**2 / 2


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    chunk_size: int = 100_000

    def __post_init__(self):
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")

    def rng(self, chunk: int) -> np.random.Generator:
        """Independent generator for one chunk; depends only on (seed, chunk)."""
        ss = np.random.SeedSequence([self.seed & 0xFFFF_FFFF_FFFF_FFFF, chunk])
        return np.random.default_rng(ss)

    def chunk_counts(self, count: int) -> list[int]:
        full, rest = divmod(count, self.chunk_size)
        return [self.chunk_size] * full + ([rest] if rest else [])


def fs_angle(n, m) -> float:
    """Hilbert-space angle ``arccos |<psi|psi'>|`` between two pure states."""
    return float(np.arccos(np.sqrt(np.clip(overlap(n, m), 0.0, 1.0))))


def bloch_vectors(theta, phi, chi1, chi2) -> np.ndarray:
    """Closed-form unit Bloch vectors for coordinate arrays; shape ``(..., 8)``."""
    theta, phi, chi1, chi2 = np.broadcast_arrays(
        *(np.asarray(x, dtype=float) for x in (theta, phi, chi1, chi2))
    )
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    s2 = st * st
    dchi = chi2 - chi1
    n = np.empty(theta.shape + (8,))
    n[..., 0] = s2 * sp * cp * np.cos(dchi)
    n[..., 1] = s2 * sp * cp * np.sin(dchi)
    n[..., 2] = 0.5 * s2 * (cp * cp - sp * sp)
    n[..., 3] = st * ct * cp * np.cos(chi1)
    n[..., 4] = -st * ct * cp * np.sin(chi1)
    n[..., 5] = st * ct * sp * np.cos(chi2)
    n[..., 6] = -st * ct * sp * np.sin(chi2)
    n[..., 7] = (1.0 - 3.0 * ct * ct) / (2.0 * np.sqrt(3.0))
    return np.sqrt(3.0) * n


def sample_coordinates(rng: np.random.Generator, count: int) -> np.ndarray:
    """
    ``(count, 4)`` coordinates drawn from the invariant measure by inverse CDF.

    ``sin^4(theta)`` and ``sin^2(phi)`` are uniform under the measure, and the
    phases are uniform on ``[0, 2 pi)``.
    """
    u = rng.random((count, 4))
    out = np.empty_like(u)
    out[:, 0] = np.arcsin(u[:, 0] ** 0.25)
    out[:, 1] = np.arcsin(np.sqrt(u[:, 1]))
    out[:, 2:] = 2 * pi * u[:, 2:]
    return out


def iter_coordinate_chunks(cfg: SamplerConfig, count: int) -> Iterator[np.ndarray]:
    for i, k in enumerate(cfg.chunk_counts(count)):
        yield sample_coordinates(cfg.rng(i), k)


def sample_pure(cfg: SamplerConfig, count: int) -> list[PureStateParams]:
    out = []
    for chunk in iter_coordinate_chunks(cfg, count):
        out.extend(PureStateParams(*map(float, row)) for row in chunk)
    return out


def sample_bloch(cfg: SamplerConfig, count: int) -> np.ndarray:
    """``(count, 8)`` Bloch vectors of invariant random pure states."""
    if count == 0:
        return np.empty((0, 8))
    return np.concatenate([bloch_vectors(*c.T) for c in iter_coordinate_chunks(cfg, count)])


@dataclass(frozen=True)
class MeanEstimate:
    """Sample mean and its standard error, elementwise."""

    mean: np.ndarray
    stderr: np.ndarray
    count: int


def chunked_mean(
    cfg: SamplerConfig,
    count: int,
    statistic: Callable[[np.ndarray], np.ndarray],
    workers: int = 1,
) -> MeanEstimate:
    """
    Monte-Carlo mean of ``statistic(n)`` over invariant pure states.

    ``statistic`` maps a ``(k, 8)`` batch of Bloch vectors to a ``(k, ...)``
    real array. Chunks are seeded by index and their sums are combined in
    chunk order, so the result does not depend on ``workers``.
    """
    counts = cfg.chunk_counts(count)
    if not counts:
        raise ValueError("count must be positive")

    def run(i: int) -> tuple[np.ndarray, np.ndarray]:
        coords = sample_coordinates(cfg.rng(i), counts[i])
        x = np.asarray(statistic(bloch_vectors(*coords.T)), dtype=float)
        return x.sum(axis=0), (x * x).sum(axis=0)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, range(len(counts))))
    else:
        parts = [run(i) for i in range(len(counts))]
    s1 = np.sum(np.stack([p[0] for p in parts]), axis=0)
    s2 = np.sum(np.stack([p[1] for p in parts]), axis=0)
    mean = s1 / count
    var = np.maximum(s2 / count - mean * mean, 0.0) * count / max(count - 1, 1)
    return MeanEstimate(mean=mean, stderr=np.sqrt(var / count), count=count)


def first_moments(cfg: SamplerConfig, count: int, workers: int = 1) -> MeanEstimate:
    return chunked_mean(cfg, count, lambda n: n, workers)


def second_moments(cfg: SamplerConfig, count: int, workers: int = 1) -> MeanEstimate:
    return chunked_mean(cfg, count, lambda n: n[:, :, None] * n[:, None, :], workers)


def volume_density(theta, phi, chi1=None, chi2=None):
    return 9.0 * np.sin(theta) ** 3 * np.cos(theta) * np.sin(phi) * np.cos(phi)


def _trapezoid(lo: float, hi: float, size: int) -> tuple[np.ndarray, np.ndarray]:
    if size < 2:
        raise ValueError("grid sizes must be >= 2")
    x = np.linspace(lo, hi, size)
    w = np.full(size, (hi - lo) / (size - 1))
    w[[0, -1]] *= 0.5
    return x, w


def quadrature(
    integrand: Callable[..., np.ndarray],
    sizes: Sequence[int] = (64, 64, 64, 64),
) -> np.ndarray:
    """
    Product-rule composite trapezoid over the coordinate box.

    ``integrand(theta, phi, chi1, chi2)`` receives broadcastable grids and
    must include the volume density itself. One theta slice is evaluated at
    a time; the per-slice results may be arrays.
    """
    (t, wt), (p, wp), (c1, w1), (c2, w2) = (
        _trapezoid(0.0, hi, s) for hi, s in zip((pi / 2, pi / 2, 2 * pi, 2 * pi), sizes)
    )
    P, C1, C2 = np.meshgrid(p, c1, c2, indexing="ij")
    W = wp[:, None, None] * w1[None, :, None] * w2[None, None, :]
    total = 0.0
    for ti, wi in zip(t, wt):
        vals = np.asarray(integrand(ti, P, C1, C2))
        total = total + wi * np.tensordot(W, vals, axes=([0, 1, 2], [0, 1, 2]))
    return total


def total_volume_quadrature(sizes: Sequence[int] = (64, 64, 64, 64)) -> float:
    def f(theta, phi, chi1, chi2):
        return np.broadcast_to(volume_density(theta, phi), np.broadcast(phi, chi1, chi2).shape)

    return float(quadrature(f, sizes))


def metric_tensor(p: PureStateParams) -> np.ndarray:
    """4x4 metric ``g`` with ``ds^2 = dp . g . dp`` in the rescaled metric."""
    s2 = np.sin(p.theta) ** 2
    c2p, s2p = np.cos(p.phi) ** 2, np.sin(p.phi) ** 2
    g = np.zeros((4, 4))
    g[0, 0] = 1.0
    g[1, 1] = s2
    g[2, 2] = s2 * c2p * (1.0 - s2 * c2p)
    g[3, 3] = s2 * s2p * (1.0 - s2 * s2p)
    g[2, 3] = g[3, 2] = -s2 * s2 * s2p * c2p
    return 3.0 * g


def line_element(p: PureStateParams, dp: Sequence[float]) -> float:
    dp = np.asarray(dp, dtype=float)
    return float(dp @ metric_tensor(p) @ dp)
