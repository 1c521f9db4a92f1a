"""
Gell-Mann operator basis for a qutrit and the SU(3) structure constants.

Index convention: ``basis()[0]`` is the completion ``sqrt(2/3) * I`` and
``basis()[1:]`` are the eight generators, so ``tr(l_a l_b) = 2 delta_ab``
over all nine. Vectors on the 8-dimensional Bloch space are indexed 0..7
for generators 1..8.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SQRT3 = np.sqrt(3.0)


def build_basis() -> np.ndarray:
    """Return the ``(9, 3, 3)`` stack ``lambda_0 .. lambda_8``."""
    lam = np.zeros((9, 3, 3), dtype=np.complex128)
    lam[0] = np.sqrt(2.0 / 3.0) * np.eye(3)
    lam[1][0, 1] = lam[1][1, 0] = 1.0
    lam[2][0, 1], lam[2][1, 0] = -1j, 1j
    lam[3] = np.diag([1.0, -1.0, 0.0])
    lam[4][0, 2] = lam[4][2, 0] = 1.0
    lam[5][0, 2], lam[5][2, 0] = -1j, 1j
    lam[6][1, 2] = lam[6][2, 1] = 1.0
    lam[7][1, 2], lam[7][2, 1] = -1j, 1j
    lam[8] = np.diag([1.0, 1.0, -2.0]) / SQRT3
    return lam


@lru_cache(maxsize=1)
def basis() -> np.ndarray:
    lam = build_basis()
    lam.setflags(write=False)
    return lam


def generators() -> np.ndarray:
    """The eight traceless generators as a ``(8, 3, 3)`` array."""
    return basis()[1:]


@dataclass(frozen=True)
class StructureConstants:
    """``f`` (totally antisymmetric) and ``d`` (totally symmetric), each ``(8, 8, 8)``."""

    f: np.ndarray
    d: np.ndarray


def compute_structure_constants(lam: np.ndarray | None = None) -> StructureConstants:
    """
    Compute ``f_jkl`` and ``d_jkl`` from generator matrices.

    ``f_jkl = tr([l_j, l_k] l_l) / 4i`` and ``d_jkl = tr({l_j, l_k} l_l) / 4``.
    ``lam`` may be the 9-element basis or the 8 generators; defaults to the
    standard basis.
    """
    if lam is None:
        lam = basis()
    lam = np.asarray(lam)
    gen = lam[1:] if lam.shape[0] == 9 else lam
    prod = np.einsum("jab,kbc->jkac", gen, gen)
    comm = prod - prod.transpose(1, 0, 2, 3)
    anti = prod + prod.transpose(1, 0, 2, 3)
    f = np.einsum("jkab,lba->jkl", comm, gen) / 4j
    d = np.einsum("jkab,lba->jkl", anti, gen) / 4.0
    return StructureConstants(f=np.ascontiguousarray(f.real), d=np.ascontiguousarray(d.real))


@lru_cache(maxsize=1)
def structure_constants() -> StructureConstants:
    sc = compute_structure_constants()
    sc.f.setflags(write=False)
    sc.d.setflags(write=False)
    return sc


def star(a, b) -> np.ndarray:
    """
    Star product on Bloch space, ``(a * b)_j = sqrt(3) d_jkl a_k b_l``.

    With this normalization a unit vector ``n`` is a pure state exactly when
    ``star(n, n) == n``. Accepts leading batch dimensions.
    """
    d = structure_constants().d
    return SQRT3 * np.einsum("jkl,...k,...l->...j", d, np.asarray(a, float), np.asarray(b, float))


def dot(a, b) -> float:
    return float(np.dot(np.asarray(a, float), np.asarray(b, float)))


def lambda_dot(c) -> np.ndarray:
    """The operator ``c . lambda`` for an 8-vector (or a batch of them)."""
    return np.einsum("...j,jab->...ab", np.asarray(c, float), generators())


def transition_operator(a: int, b: int) -> np.ndarray:
    """``|a><b|`` for basis labels 1..3."""
    op = np.zeros((3, 3), dtype=np.complex128)
    op[a - 1, b - 1] = 1.0
    return op
