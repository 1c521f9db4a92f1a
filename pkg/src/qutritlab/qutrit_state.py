"""
Single-qutrit states: parametrized kets, Bloch 8-vectors and density matrices.

A density operator is ``rho = (1/3)(1 + c . lambda)``; a pure state has
``c = sqrt(3) n`` with ``n`` a unit vector satisfying ``star(n, n) = n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from . import linalg, su3
from .errors import NormError, NotAStateError, RangeError

SQRT3 = su3.SQRT3
PURITY_TOL = 1e-10
NORM_TOL = 1e-12


@dataclass(frozen=True)
class PureStateParams:
    """Coordinates ``(theta, phi, chi1, chi2)`` of a pure qutrit state, in radians."""

    theta: float
    phi: float
    chi1: float = 0.0
    chi2: float = 0.0

    def __post_init__(self):
        for name, hi in (("theta", pi / 2), ("phi", pi / 2), ("chi1", 2 * pi), ("chi2", 2 * pi)):
            v = getattr(self, name)
            if not (0.0 <= v <= hi):
                raise RangeError(f"{name}={v!r} outside [0, {hi}]")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.theta, self.phi, self.chi1, self.chi2)


def canonicalize(p: PureStateParams) -> PureStateParams:
    """Fix the coordinates left arbitrary at degenerate points (for test determinism)."""
    theta, phi, chi1, chi2 = p.as_tuple()
    if theta == 0.0:
        return PureStateParams(0.0, 0.0, 0.0, 0.0)
    if phi == 0.0:
        chi2 = 0.0
    elif phi == pi / 2:
        chi1 = 0.0
    return PureStateParams(theta, phi, chi1, chi2)


def params_to_ket(p: PureStateParams) -> np.ndarray:
    st = np.sin(p.theta)
    return np.array(
        [
            np.exp(1j * p.chi1) * st * np.cos(p.phi),
            np.exp(1j * p.chi2) * st * np.sin(p.phi),
            np.cos(p.theta),
        ],
        dtype=np.complex128,
    )


def ket_to_bloch(ket) -> np.ndarray:
    """Unit Bloch vector ``n_j = (sqrt(3)/2) <psi|lambda_j|psi>`` of a normalized ket."""
    ket = np.asarray(ket, dtype=np.complex128)
    if ket.shape != (3,):
        raise NormError(f"expected a 3-component ket, got shape {ket.shape}")
    if abs(np.vdot(ket, ket).real - 1.0) > NORM_TOL:
        raise NormError("ket is not normalized", norm=float(np.linalg.norm(ket)))
    expect = np.einsum("a,jab,b->j", ket.conj(), su3.generators(), ket)
    return SQRT3 / 2.0 * expect.real


def bloch_operator(c) -> np.ndarray:
    """``(1/3)(1 + c . lambda)`` with no positivity check."""
    c = np.asarray(c, dtype=float)
    if c.shape != (8,):
        raise RangeError(f"expected an 8-vector, got shape {c.shape}")
    return (np.eye(3) + su3.lambda_dot(c)) / 3.0


def bloch_to_density(c, tol: float | None = None) -> np.ndarray:
    """
    Density matrix for Bloch vector ``c``.

    Raises ``NotAStateError`` (carrying the minimum eigenvalue) if the
    operator is not positive semidefinite within ``tol``.
    """
    rho = bloch_operator(c)
    if tol is None:
        tol = linalg.psd_tolerance(rho)
    lo = linalg.min_eigenvalue(rho)
    if lo < -tol:
        raise NotAStateError(f"operator has negative eigenvalue {lo:.3g}", min_eigenvalue=lo)
    return rho


def density_to_bloch(rho) -> np.ndarray:
    """Coefficients ``c_alpha = (3/2) tr(rho lambda_alpha)`` for alpha = 0..8."""
    rho = linalg.as_matrix(rho)
    return 1.5 * np.einsum("ab,kba->k", rho, su3.basis()).real


def pure_density(n) -> np.ndarray:
    """The projector ``P_n = (1/3)(1 + sqrt(3) n . lambda)``."""
    return bloch_operator(SQRT3 * np.asarray(n, float))


def is_pure(n, tol: float = PURITY_TOL) -> bool:
    n = np.asarray(n, dtype=float)
    return bool(abs(n @ n - 1.0) <= tol and np.linalg.norm(su3.star(n, n) - n) <= tol)


def overlap(n, m) -> float:
    """``|<psi|psi'>|^2 = (1 + 2 n.m) / 3`` for pure-state Bloch vectors."""
    return (1.0 + 2.0 * su3.dot(n, m)) / 3.0


def basis_bloch_vectors() -> np.ndarray:
    """Rows are the Bloch vectors of ``|1>, |2>, |3>``."""
    n = np.zeros((3, 8))
    n[0, 2], n[0, 7] = SQRT3 / 2, 0.5
    n[1, 2], n[1, 7] = -SQRT3 / 2, 0.5
    n[2, 7] = -1.0
    return n
