"""
Separable neighbourhood of the N-qutrit maximally mixed state.

Lower threshold: the expansion function ``w`` over product pure states is
bounded below by the smallest eigenvalue of ``(x)_i (1 + 4 sqrt(3) n_i . lambda)``,
so ``(1 - eps) M + eps rho_1`` is separable for ``eps <= 1/(1 + 3^(2N-1))``.

Upper threshold: projecting both halves of a d x d isotropic state onto a
qutrit subspace yields a two-qutrit isotropic state with a larger mixing
weight, which is entangled once ``eps > 1/(1 + d)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import pi

import numpy as np

from . import linalg, su3
from .errors import NotPureError, ParityError, ShapeError, SizeError
from .geometry import TOTAL_VOLUME, SamplerConfig, chunked_mean
from .qutrit_state import PURITY_TOL, is_pure
from .two_qutrit import max_entangled_ket

SQRT3 = su3.SQRT3
N_MAX = 5
W_UNIFORM_1 = 2.0 / (9.0 * pi**2)
LOCAL_SPECTRUM = (-3.0, -3.0, 9.0)


def check_n(n_qutrits: int, lo: int = 1, hi: int | None = N_MAX) -> int:
    if not isinstance(n_qutrits, (int, np.integer)) or n_qutrits < lo or (hi and n_qutrits > hi):
        raise SizeError(f"number of qutrits {n_qutrits!r} outside [{lo}, {hi}]")
    return int(n_qutrits)


def n_qutrits_of(rho) -> int:
    dim = linalg.as_matrix(rho).shape[0]
    n = round(np.log(dim) / np.log(3))
    if 3**n != dim:
        raise ShapeError(f"dimension {dim} is not a power of 3")
    return check_n(n)


def maximally_mixed(n_qutrits: int) -> np.ndarray:
    dim = 3 ** check_n(n_qutrits)
    return np.eye(dim, dtype=np.complex128) / dim


def random_density(rng: np.random.Generator, dim: int, rank: int | None = None) -> np.ndarray:
    """Random density matrix ``G G^dagger / tr`` from a complex Ginibre ``G``."""
    k = dim if rank is None else rank
    g = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def local_operator(n) -> np.ndarray:
    """``1 + 4 sqrt(3) n . lambda``; spectrum ``{9, -3, -3}`` for pure ``n``."""
    return np.eye(3) + 4.0 * SQRT3 * su3.lambda_dot(n)


def product_operator(points) -> np.ndarray:
    return linalg.tensor(*(local_operator(n) for n in points))


def w_prefactor(n_qutrits: int) -> float:
    return W_UNIFORM_1**n_qutrits


def expansion_function_w(rho, points, tol: float = PURITY_TOL) -> float:
    """
    ``w_rho(n_1..n_N) = (2/9pi^2)^N tr(rho (x)_i (1 + 4 sqrt(3) n_i . lambda))``.

    Raises ``NotPureError`` if any point is not a pure-state Bloch vector.
    """
    rho = linalg.as_matrix(rho)
    n = n_qutrits_of(rho)
    points = np.asarray(points, dtype=float).reshape(-1, 8)
    if points.shape[0] != n:
        raise ShapeError(f"need {n} points for a {n}-qutrit state, got {points.shape[0]}")
    for k, p in enumerate(points):
        if not is_pure(p, tol):
            raise NotPureError(f"point {k} is not a pure-state Bloch vector")
    value = np.einsum("ij,ji->", rho, product_operator(points))
    return float(w_prefactor(n) * value.real)


def bar_vector(n) -> np.ndarray:
    """``(1/(4 sqrt 2), n_1, ..., n_8)``."""
    return np.concatenate([[1.0 / (4.0 * np.sqrt(2.0))], np.asarray(n, float)])


def _subscripts(n: int) -> tuple[str, list[str], str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows, cols, alphas = letters[:n], letters[n:2 * n], letters[2 * n:3 * n]
    factors = [f"{alphas[k]}{cols[k]}{rows[k]}" for k in range(n)]
    return rows + cols, factors, alphas


def expansion_coeffs_n(rho) -> np.ndarray:
    """``c_{a1..aN} = (3/2)^N tr(rho lambda_a1 (x) ... (x) lambda_aN)``; N <= 3 only."""
    rho = linalg.as_matrix(rho)
    n = n_qutrits_of(rho)
    if n > 3:
        raise SizeError("coefficient tensor is only materialized for N <= 3")
    t = rho.reshape((3,) * (2 * n))
    tsub, fsubs, alphas = _subscripts(n)
    c = np.einsum(f"{tsub},{','.join(fsubs)}->{alphas}", t, *([su3.basis()] * n))
    return 1.5**n * c.real


def reconstruct_n(c) -> np.ndarray:
    """``(1/3^N) c_{a1..aN} lambda_a1 (x) ... (x) lambda_aN``."""
    c = np.asarray(c, float)
    n = c.ndim
    rows, cols = "abcdefgh"[:n], "ijklmnop"[:n]
    alphas = "qrstuvwx"[:n]
    fsubs = [f"{alphas[k]}{rows[k]}{cols[k]}" for k in range(n)]
    out = np.einsum(f"{alphas},{','.join(fsubs)}->{rows}{cols}", c, *([su3.basis()] * n))
    dim = 3**n
    return out.reshape(dim, dim) / 3**n


def w_from_coeffs(c, points) -> float:
    """The same expansion function evaluated from the coefficient tensor and barred vectors."""
    c = np.asarray(c, float)
    out = c
    for p in points:
        out = np.tensordot(bar_vector(p), out, axes=([0], [0]))
    return float((16.0 / (9.0 * SQRT3 * pi**2)) ** c.ndim * out)


def w_lower_bound(n_qutrits: int) -> float:
    n = check_n(n_qutrits, hi=None)
    return -w_prefactor(n) * 3.0 ** (2 * n - 1)


def product_operator_spectrum(n_qutrits: int) -> np.ndarray:
    """Ascending spectrum of the N-fold product operator, from the local ``{9, -3, -3}``."""
    n = check_n(n_qutrits)
    spec = np.array([1.0])
    for _ in range(n):
        spec = np.kron(spec, LOCAL_SPECTRUM)
    return np.sort(spec)


def lower_threshold_exact(n_qutrits: int) -> Fraction:
    n = check_n(n_qutrits, hi=None)
    return Fraction(1, 1 + 3 ** (2 * n - 1))


def separable_lower_threshold(n_qutrits: int) -> float:
    return float(lower_threshold_exact(n_qutrits))


def upper_threshold_exact(n_qutrits: int) -> Fraction:
    n = check_n(n_qutrits, lo=2, hi=None)
    if n % 2:
        raise ParityError(f"upper threshold needs an even number of qutrits, got {n}")
    return Fraction(1, 1 + 3 ** (n // 2))


def nonseparable_upper_threshold(n_qutrits: int) -> float:
    return float(upper_threshold_exact(n_qutrits))


def _check_d(d: int) -> int:
    if d not in (3, 9):
        raise SizeError(f"bipartite dimension must be 3 or 9, got {d!r}")
    return d


def bipartite_maxent(d: int) -> np.ndarray:
    """``(|11> + ... + |dd>) / sqrt(d)`` for two d-level particles (d = 3 or 9)."""
    return max_entangled_ket(_check_d(d))


def bipartite_isotropic(eps: float, d: int) -> np.ndarray:
    """``(1 - eps) M_{d^2} + eps |phi><phi|`` on ``d^2`` dimensions."""
    phi = bipartite_maxent(d)
    return (1.0 - eps) * np.eye(d * d) / (d * d) + eps * np.outer(phi, phi.conj())


def qutrit_subspace_projector(d: int) -> np.ndarray:
    """Projector of both particles onto the span of their first three levels."""
    local = np.diag([1.0] * 3 + [0.0] * (_check_d(d) - 3))
    return np.kron(local, local).astype(np.complex128)


def normalization(eps: float, d: int) -> float:
    """``tr(rho_eps Pi) = (9/d^2)(1 + eps (d/3 - 1))``."""
    return 9.0 / d**2 * (1.0 + eps * (d / 3.0 - 1.0))


def epsilon_prime(eps: float, d: float) -> float:
    """Mixing weight of the projected state, ``(eps d/3) / (1 + eps (d/3 - 1))``."""
    return (eps * d / 3.0) / (1.0 + eps * (d / 3.0 - 1.0))


def project_two_particles(rho, d: int) -> tuple[np.ndarray, float]:
    """
    Project each particle onto its qutrit subspace and renormalize.

    Returns the 9x9 two-qutrit state ``Pi rho Pi / tr(rho Pi)`` and the
    normalization ``A = tr(rho Pi)``.
    """
    d = _check_d(d)
    rho = linalg.as_matrix(rho)
    if rho.shape != (d * d, d * d):
        raise ShapeError(f"expected a {d * d}x{d * d} state, got {rho.shape}")
    proj = qutrit_subspace_projector(d)
    projected = proj @ rho @ proj
    a = float(np.trace(rho @ proj).real)
    keep = (np.arange(3)[:, None] * d + np.arange(3)[None, :]).ravel()
    return projected[np.ix_(keep, keep)] / a, a


@dataclass(frozen=True)
class ReconstructionEstimate:
    mean: np.ndarray
    stderr_real: np.ndarray
    stderr_imag: np.ndarray
    count: int


def reconstruct_single_qutrit(
    rho, cfg: SamplerConfig, samples: int, workers: int = 1
) -> ReconstructionEstimate:
    """
    Monte-Carlo estimate of ``int dOmega w_rho(n) P_n`` for one qutrit.

    Samples are invariant pure states, so the integral is ``V`` times the
    sample mean of ``w_rho(n) P_n``.
    """
    rho = linalg.as_matrix(rho)
    if rho.shape != (3, 3):
        raise ShapeError("single-qutrit reconstruction needs a 3x3 state")
    t = np.einsum("ab,jba->j", rho, su3.generators()).real
    tr_rho = np.trace(rho).real

    def statistic(n: np.ndarray) -> np.ndarray:
        w = W_UNIFORM_1 * (tr_rho + 4.0 * SQRT3 * (n @ t))
        p = (np.eye(3) + SQRT3 * su3.lambda_dot(n)) / 3.0
        x = TOTAL_VOLUME * w[:, None, None] * p
        return np.stack([x.real, x.imag], axis=1)

    est = chunked_mean(cfg, samples, statistic, workers)
    return ReconstructionEstimate(
        mean=est.mean[0] + 1j * est.mean[1],
        stderr_real=est.stderr[0],
        stderr_imag=est.stderr[1],
        count=samples,
    )
