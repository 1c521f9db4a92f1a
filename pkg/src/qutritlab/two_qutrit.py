"""
Isotropic two-qutrit states ``(1 - eps) M_9 + eps |Psi><Psi|``.

The family is separable exactly for ``eps <= 1/4``. Necessity is witnessed
by the correlation sum of the diagonal expansion coefficients, sufficiency
by an explicit 12-member product ensemble.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg, su3
from .errors import MemberError, NormError, RangeError
from .geometry import SamplerConfig, sample_bloch
from .report import SeparabilityReport, Verdict, complex_pair

DIMS = (3, 3)
THRESHOLD = 0.25
BOUNDARY_TOL = 1e-12
Z_VALUES = (1, -1, 1j, -1j)
M9 = np.eye(9, dtype=np.complex128) / 9.0


def basis_ket(*labels: int, d: int = 3) -> np.ndarray:
    """Product basis ket ``|a b ...>`` with labels 1..d."""
    index = 0
    for a in labels:
        index = index * d + (a - 1)
    ket = np.zeros(d ** len(labels), dtype=np.complex128)
    ket[index] = 1.0
    return ket


def max_entangled_ket(d: int = 3) -> np.ndarray:
    """``(|11> + |22> + ... + |dd>) / sqrt(d)``."""
    return np.eye(d, dtype=np.complex128).reshape(d * d) / np.sqrt(d)


def max_entangled() -> np.ndarray:
    psi = max_entangled_ket(3)
    return np.outer(psi, psi.conj())


def check_epsilon(eps: float) -> float:
    eps = float(eps)
    if not 0.0 <= eps <= 1.0:
        raise RangeError(f"epsilon={eps!r} outside [0, 1]")
    return eps


def isotropic_density(eps: float) -> np.ndarray:
    eps = check_epsilon(eps)
    return (1.0 - eps) * M9 + eps * max_entangled()


def product_basis() -> np.ndarray:
    """``(9, 9, 9, 9)`` stack of ``lambda_a (x) lambda_b``."""
    lam = su3.basis()
    return np.einsum("aij,bkl->abikjl", lam, lam).reshape(9, 9, 9, 9)


def expansion_coeffs(rho) -> np.ndarray:
    """``c_ab = (9/4) tr(rho lambda_a (x) lambda_b)`` as a real 9x9 array."""
    rho = linalg.as_matrix(rho)
    if rho.shape != (9, 9):
        raise RangeError(f"expected a 9x9 matrix, got {rho.shape}")
    t = rho.reshape(3, 3, 3, 3)
    lam = su3.basis()
    c = np.einsum("ikjl,aji,blk->ab", t, lam, lam)
    return 2.25 * c.real


def reconstruct(c) -> np.ndarray:
    """``(1/9) sum c_ab lambda_a (x) lambda_b``."""
    return np.einsum("ab,abij->ij", np.asarray(c, float), product_basis()) / 9.0


def isotropic_coeffs(eps: float) -> np.ndarray:
    """Closed-form coefficients of the isotropic state."""
    c = np.zeros((9, 9))
    c[0, 0] = 1.5
    signs = np.array([1, -1, 1, 1, -1, 1, -1, 1])
    c[np.arange(1, 9), np.arange(1, 9)] = 1.5 * eps * signs
    return c


def necessity_bound(c) -> float:
    """
    ``sum_j |c_jj| / 3``.

    For a separable state each ``|c_jj| / 3`` is a correlation
    ``|E[(n_A)_j (n_B)_j]|``, so the sum is at most 1. On the isotropic
    family it equals ``4 eps``.
    """
    c = np.asarray(c, float)
    return float(np.sum(np.abs(np.diag(c)[1:])) / 3.0)


@dataclass(frozen=True)
class EnsembleMember:
    a: int
    b: int
    z: complex
    weight: float = 1.0 / 12.0

    def ket(self) -> np.ndarray:
        return ensemble_member_ket(self.a, self.b, self.z)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "z": complex_pair(self.z), "weight": self.weight}


def ensemble_member_ket(a: int, b: int, z: complex) -> np.ndarray:
    """``(|a> + z|b>)/sqrt(2) (x) (|a> + z*|b>)/sqrt(2)``."""
    if a not in (1, 2, 3) or b not in (1, 2, 3) or b <= a:
        raise MemberError(f"need 1 <= a < b <= 3, got a={a!r}, b={b!r}")
    if not any(z == v for v in Z_VALUES):
        raise MemberError(f"z must be one of +1, -1, +i, -i, got {z!r}")
    left = (basis_ket(a) + z * basis_ket(b)) / np.sqrt(2)
    right = (basis_ket(a) + np.conjugate(z) * basis_ket(b)) / np.sqrt(2)
    return np.kron(left, right)


def ensemble_members(weight: float = 1.0 / 12.0) -> list[EnsembleMember]:
    return [
        EnsembleMember(a, b, complex(z), weight)
        for a, b in combinations((1, 2, 3), 2)
        for z in Z_VALUES
    ]


def ensemble_mixture() -> np.ndarray:
    rho = np.zeros((9, 9), dtype=np.complex128)
    for m in ensemble_members():
        k = m.ket()
        rho += m.weight * np.outer(k, k.conj())
    return rho


def ppt_min_eig(rho) -> float:
    """Minimum eigenvalue of the partial transpose on the second qutrit."""
    return linalg.min_eigenvalue(linalg.partial_transpose(rho, DIMS, 1))


def ppt_min_eig_analytic(eps: float) -> float:
    return (1.0 - eps) / 9.0 - eps / 3.0


def vidal_tarrach_threshold(psi, d1: int, d2: int) -> float:
    """
    ``1 / (1 + d1 d2 a1 a2)`` for a pure bipartite ket.

    ``a1^2 >= a2^2`` are the two largest eigenvalues of the reduced state
    (the squared Schmidt coefficients); ``a2 = 0`` for a product ket.
    """
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    if psi.size != d1 * d2:
        raise RangeError(f"ket has {psi.size} components, expected {d1 * d2}")
    if abs(np.vdot(psi, psi).real - 1.0) > 1e-12:
        raise NormError("ket is not normalized")
    rho = np.outer(psi, psi.conj())
    spec = np.clip(linalg.hermitian_eigenvalues(linalg.partial_trace(rho, (d1, d2), 0)), 0.0, None)
    top = np.sort(spec)[::-1]
    a1 = np.sqrt(top[0])
    a2 = np.sqrt(top[1]) if top.size > 1 else 0.0
    return float(1.0 / (1.0 + d1 * d2 * a1 * a2))


def w_values(rho, n_a, n_b) -> np.ndarray:
    """
    Expansion function ``(2/9pi^2)^2 tr(rho (1 + 4 sqrt(3) n_a . lambda) (x) (1 + 4 sqrt(3) n_b . lambda))``
    for batches of point pairs.
    """
    t = linalg.as_matrix(rho).reshape(3, 3, 3, 3)
    a = np.eye(3) + 4.0 * su3.SQRT3 * su3.lambda_dot(n_a)
    b = np.eye(3) + 4.0 * su3.SQRT3 * su3.lambda_dot(n_b)
    return (2.0 / (9.0 * np.pi**2)) ** 2 * np.einsum("ikjl,sji,slk->s", t, a, b).real


def w_min_sampled(rho, cfg: SamplerConfig, samples: int) -> float:
    """Smallest expansion-function value over ``samples`` invariant random point pairs."""
    n = sample_bloch(cfg, 2 * samples)
    return float(np.min(w_values(rho, n[0::2], n[1::2])))


def decomposition(eps: float) -> list[dict]:
    """
    Product-state decomposition of a separable isotropic state.

    ``rho_eps = (1 - 4 eps) M_9 + 4 eps rho_{1/4}``; the ensemble members
    carry weight ``4 eps / 12`` each and ``M_9`` is listed as the product
    of maximally mixed marginals.
    """
    scale = min(4.0 * check_epsilon(eps), 1.0)
    out = [dict(kind="product_pure", **m.to_dict()) for m in ensemble_members(scale / 12.0)]
    out.append({"kind": "maximally_mixed", "weight": 1.0 - scale})
    return out


def mix_decomposition(parts: list[dict]) -> np.ndarray:
    rho = np.zeros((9, 9), dtype=np.complex128)
    for part in parts:
        if part["kind"] == "maximally_mixed":
            rho += part["weight"] * M9
        else:
            k = ensemble_member_ket(part["a"], part["b"], complex(*part["z"]))
            rho += part["weight"] * np.outer(k, k.conj())
    return rho


def separability_verdict(
    eps: float,
    tol: float = BOUNDARY_TOL,
    samples: int = 0,
    cfg: SamplerConfig | None = None,
) -> SeparabilityReport:
    """
    Verdict for the isotropic state at ``eps``.

    With ``samples > 0`` the witnesses also include ``w_min_sampled``, the
    smallest expansion-function value over that many random point pairs.
    """
    eps = check_epsilon(eps)
    rho = isotropic_density(eps)
    witnesses = {
        "ppt_min_eig": ppt_min_eig(rho),
        "necessity_bound": necessity_bound(expansion_coeffs(rho)),
    }
    if samples > 0:
        witnesses["w_min_sampled"] = w_min_sampled(rho, cfg or SamplerConfig(), samples)
    if abs(eps - THRESHOLD) <= tol:
        verdict = Verdict.BOUNDARY
    elif eps < THRESHOLD:
        verdict = Verdict.SEPARABLE
    else:
        verdict = Verdict.NONSEPARABLE
    return SeparabilityReport(
        family="isotropic_two_qutrit",
        epsilon=eps,
        threshold=THRESHOLD,
        verdict=verdict,
        witnesses=witnesses,
        decomposition=None if verdict is Verdict.NONSEPARABLE else decomposition(eps),
    )
