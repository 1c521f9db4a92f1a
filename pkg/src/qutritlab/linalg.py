"""
Dense complex matrix kernel.

Matrices are plain ``numpy`` complex arrays. Multi-party operators use a
row-major subsystem ordering: the leftmost factor is the most significant
index, which is what ``numpy.kron`` produces.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, NotHermitianError, ShapeError

HERMITIAN_RTOL = 1e-12
JACOBI_RTOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a square complex128 array, or raise ``ShapeError``."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ShapeError(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


def check_shape(dims: Sequence[int], dim: int) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ShapeError(f"invalid subsystem dimensions {dims}")
    if prod(dims) != dim:
        raise ShapeError(f"subsystem dimensions {dims} do not multiply to {dim}")
    return dims


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch {a.shape} vs {b.shape}")
    return a @ b


def tensor(*factors) -> np.ndarray:
    """Kronecker product of one or more square matrices, leftmost factor most significant."""
    if not factors:
        raise ShapeError("tensor needs at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = np.kron(out, as_matrix(f))
    return out


def dagger(a) -> np.ndarray:
    return np.conjugate(np.asarray(a)).T


def is_hermitian(a, rtol: float = HERMITIAN_RTOL) -> bool:
    a = as_matrix(a)
    scale = np.max(np.abs(a))
    return bool(np.max(np.abs(a - dagger(a))) <= rtol * scale)


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    # Circle-method tournament: n-1 rounds (n even), each a set of disjoint
    # index pairs, together covering every pair exactly once.
    m = n + (n % 2)
    idx = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(idx[i], idx[m - 1 - i]) for i in range(m // 2)]
        pairs = [(p, q) for p, q in pairs if p < n and q < n]
        p = np.array([min(pq) for pq in pairs], dtype=np.intp)
        q = np.array([max(pq) for pq in pairs], dtype=np.intp)
        rounds.append((p, q))
        idx = [idx[0], idx[-1], *idx[1:-1]]
    return tuple(rounds)


def _off_norms(a: np.ndarray) -> np.ndarray:
    off = a.copy()
    idx = np.arange(a.shape[-1])
    off[:, idx, idx] = 0.0
    return np.linalg.norm(off, axis=(1, 2))


def _jacobi_round(a: np.ndarray, p: np.ndarray, q: np.ndarray, floor: np.ndarray) -> None:
    # a has shape (batch, n, n); p, q index disjoint pairs.
    apq = a[:, p, q]
    mag = np.abs(apq)
    # Entries below the floor are negligible and would overflow theta.
    active = mag > floor[:, None]
    if not np.any(active):
        return
    safe = np.where(active, mag, 1.0)
    # Strip the phase of a_pq, then apply the real symmetric rotation.
    phase = np.where(active, np.conjugate(apq) / safe, 1.0)
    app = a[:, p, p].real
    aqq = a[:, q, q].real
    theta = (aqq - app) / (2.0 * safe)
    t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(active, t, 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # U restricted to (p, q): [[c, s], [-s*phase, c*phase]]
    upp, upq = c[..., None], s[..., None]
    uqp, uqq = (-s * phase)[..., None], (c * phase)[..., None]

    # Both half-updates act on rows: A -> U^H A, then (U^H (U^H A)^H)^H.
    for _ in range(2):
        rp, rq = a[:, p, :], a[:, q, :]
        a[:, p, :] = upp * rp + np.conjugate(uqp) * rq
        a[:, q, :] = upq * rp + np.conjugate(uqq) * rq
        a[...] = np.conjugate(a.transpose(0, 2, 1))
    a[:, p, q] = np.where(active, 0.0, a[:, p, q])
    a[:, q, p] = np.where(active, 0.0, a[:, q, p])


def _jacobi(work: np.ndarray, rtol: float, max_sweeps: int) -> np.ndarray:
    n = work.shape[-1]
    norms = np.linalg.norm(work, axis=(1, 2))
    target = rtol * norms
    if n > 1:
        rounds = _round_robin(n)
        floor = np.maximum(1e-30 * norms, np.finfo(float).tiny)
        for _ in range(max_sweeps):
            if np.all(_off_norms(work) <= target):
                break
            for p, q in rounds:
                _jacobi_round(work, p, q, floor)
        else:
            off = _off_norms(work)
            if np.any(off > target):
                raise ConvergenceError(
                    f"Jacobi did not converge in {max_sweeps} sweeps", off_norm=float(np.max(off))
                )
    return np.sort(np.diagonal(work, axis1=1, axis2=2).real, axis=1)


def hermitian_eigenvalues(
    a, rtol: float = JACOBI_RTOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> np.ndarray:
    """
    All eigenvalues of a Hermitian matrix, ascending.

    Cyclic complex Jacobi: each sweep visits every off-diagonal pair once,
    grouped into rounds of disjoint pairs so a round is applied as one
    vectorized similarity transform. Iteration stops once the off-diagonal
    Frobenius norm drops below ``rtol * ||a||_F``.

    Raises
    ------
    NotHermitianError
        If ``a`` is not Hermitian to ``HERMITIAN_RTOL``.
    ConvergenceError
        If ``max_sweeps`` sweeps do not reach the tolerance.
    """
    a = as_matrix(a)
    if not is_hermitian(a):
        raise NotHermitianError("matrix is not Hermitian")
    work = 0.5 * (a + dagger(a))
    return _jacobi(work[None], rtol, max_sweeps)[0]


def hermitian_eigenvalues_batch(
    stack, rtol: float = JACOBI_RTOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> np.ndarray:
    """Eigenvalues of each matrix in a ``(batch, n, n)`` stack; one row per matrix, ascending."""
    stack = np.asarray(stack, dtype=np.complex128)
    if stack.ndim != 3 or stack.shape[1] != stack.shape[2] or stack.shape[1] == 0:
        raise ShapeError(f"expected a (batch, n, n) stack, got shape {stack.shape}")
    if stack.shape[0] == 0:
        return np.empty((0, stack.shape[1]))
    adj = np.conjugate(stack.transpose(0, 2, 1))
    scale = np.max(np.abs(stack), axis=(1, 2))
    if np.any(np.max(np.abs(stack - adj), axis=(1, 2)) > HERMITIAN_RTOL * scale):
        raise NotHermitianError("stack contains a non-Hermitian matrix")
    return _jacobi(0.5 * (stack + adj), rtol, max_sweeps)


def min_eigenvalue(a) -> float:
    return float(hermitian_eigenvalues(a)[0])


def min_eigenvalues(stack) -> np.ndarray:
    return hermitian_eigenvalues_batch(stack)[:, 0]


def psd_tolerance(a) -> float:
    return 1e-10 * max(1.0, float(np.linalg.norm(a)))


def is_psd(a, tol: float | None = None) -> bool:
    if tol is None:
        tol = psd_tolerance(a)
    return min_eigenvalue(a) >= -tol


def _check_index(which: int, dims: tuple[int, ...]) -> int:
    if not isinstance(which, (int, np.integer)) or not 0 <= which < len(dims):
        raise ShapeError(f"subsystem index {which!r} out of range for {len(dims)} subsystems")
    return int(which)


def partial_transpose(rho, dims: Sequence[int], which: int) -> np.ndarray:
    """Transpose the indices of subsystem ``which`` only."""
    rho = as_matrix(rho)
    dims = check_shape(dims, rho.shape[0])
    which = _check_index(which, dims)
    k = len(dims)
    t = rho.reshape(dims + dims)
    axes = list(range(2 * k))
    axes[which], axes[k + which] = axes[k + which], axes[which]
    return t.transpose(axes).reshape(rho.shape)


def partial_trace(rho, dims: Sequence[int], keep: int) -> np.ndarray:
    """Trace out every subsystem except ``keep``."""
    rho = as_matrix(rho)
    dims = check_shape(dims, rho.shape[0])
    keep = _check_index(keep, dims)
    left = prod(dims[:keep])
    right = prod(dims[keep + 1:])
    d = dims[keep]
    t = rho.reshape(left, d, right, left, d, right)
    return np.einsum("aibajb->ij", t)
