"""so(3), bivector brackets, rotors and the quaternion matrices.

Sign convention: ``sandwich(rotor(i, j, t), v)`` rotates ``v`` by ``-t`` in the
oriented ``(e_i, e_j)`` plane, so ``e_i -> cos t e_i - sin t e_j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from gk.clifford import CliffordElement, Signature, commutator
from gk.errors import DomainError, UnsupportedError
from gk.projectors import two_generator_construction

ROTOR_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class So3Basis:
    L_X: np.ndarray
    L_Y: np.ndarray
    L_Z: np.ndarray

    def __iter__(self):
        return iter((self.L_X, self.L_Y, self.L_Z))


def so3_basis() -> So3Basis:
    lx = np.array([[0, 0, 0], [0, 0, -1], [0, 1, 0]], dtype=float)
    ly = np.array([[0, 0, 1], [0, 0, 0], [-1, 0, 0]], dtype=float)
    lz = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]], dtype=float)
    return So3Basis(lx, ly, lz)


def bivector(i: int, j: int, sig: Signature) -> CliffordElement:
    """``(1/2) e_i e_j``."""
    if i == j:
        raise DomainError(f"bivector needs distinct indices, got ({i}, {j})")
    return CliffordElement.blade(sig, (i, j), 0.5)


def bivector_bracket_rhs(i: int, j: int, k: int, l: int, sig: Signature) -> CliffordElement:
    """Closed form of ``[B_ij, B_kl]`` with ``B_ab = (1/2) e_a e_b``.

    ``eta_jk B_il - eta_ik B_jl - eta_jl B_ik + eta_il B_jk``; the signs were
    fixed against the geometric product (terms with a repeated index vanish).
    """
    out = CliffordElement.zero(sig)
    for coeff, (a, b) in (
        (sig.metric(j, k), (i, l)),
        (-sig.metric(i, k), (j, l)),
        (-sig.metric(j, l), (i, k)),
        (sig.metric(i, l), (j, k)),
    ):
        if coeff and a != b:
            out = out + coeff * bivector(a, b, sig)
    return out


def bivector_bracket_table(sig: Signature) -> dict[tuple[int, int, int, int], CliffordElement]:
    """``[B_ij, B_kl]`` by direct multiplication for all ``i != j``, ``k != l``."""
    idx = range(1, sig.n + 1)
    table = {}
    for i, j, k, l in product(idx, repeat=4):
        if i != j and k != l:
            table[i, j, k, l] = commutator(bivector(i, j, sig), bivector(k, l, sig))
    return table


def so3_bivector_images(sig: Signature | None = None) -> tuple[CliffordElement, ...]:
    """Images of ``L_X, L_Y, L_Z`` in Cl(3,0) preserving the bracket: ``-B_23, -B_31, -B_12``."""
    sig = sig or Signature(3, 0)
    return (-bivector(2, 3, sig), -bivector(3, 1, sig), -bivector(1, 2, sig))


@dataclass(frozen=True)
class Rotor:
    """Even element with ``R ~R = 1``."""

    elem: CliffordElement

    def __post_init__(self) -> None:
        if any(k % 2 for k in self.elem.mv.grades()):
            raise DomainError("a rotor has only even-grade terms")
        unit = self.elem * self.elem.reverse() - 1
        if unit.max_abs() > ROTOR_TOL:
            raise DomainError(f"R ~R deviates from 1 by {unit.max_abs():.3g}")

    @property
    def sig(self) -> Signature:
        return self.elem.sig

    def inverse(self) -> CliffordElement:
        return self.elem.reverse()

    def __neg__(self) -> Rotor:
        return Rotor(-self.elem)


def rotor(i: int, j: int, angle: float, sig: Signature) -> Rotor:
    """``cos(angle/2) + sin(angle/2) e_i e_j`` for a Euclidean plane."""
    if i == j:
        raise DomainError(f"rotation plane needs distinct indices, got ({i}, {j})")
    if sig.square(i) != 1 or sig.square(j) != 1:
        raise UnsupportedError(f"plane (e{i}, e{j}) is not Euclidean in {sig}; hyperbolic rotors are not supported")
    half = angle / 2
    return Rotor(math.cos(half) + CliffordElement.blade(sig, (i, j), math.sin(half)))


def sandwich(r: Rotor, v: CliffordElement) -> CliffordElement:
    """``R v R^-1``."""
    if v.sig != r.sig:
        raise DomainError(f"signatures differ: {r.sig} vs {v.sig}")
    if not v.is_homogeneous(1):
        raise DomainError("sandwich acts on grade-1 elements")
    return r.elem * v * r.inverse()


def rotor_to_rotation(r: Rotor, n: int | None = None) -> np.ndarray:
    """Matrix whose column ``a`` holds the coordinates of ``R e_a R^-1``."""
    sig = r.sig
    if not sig.is_euclidean():
        raise UnsupportedError("rotation extraction needs a Euclidean signature")
    n = sig.n if n is None else n
    if n != sig.n:
        raise DomainError(f"dimension {n} does not match {sig}")
    m = np.zeros((n, n))
    for a in range(1, n + 1):
        image = sandwich(r, CliffordElement.generator(sig, a))
        stray = image.mv.prune(ROTOR_TOL)
        if not stray.is_homogeneous(1):
            raise RuntimeError(f"rotor image of e{a} is not a vector: {image}")
        coords = image.vector_coords()
        if np.max(np.abs(coords.imag), initial=0) > ROTOR_TOL:
            raise RuntimeError(f"rotor image of e{a} is not real: {image}")
        m[:, a - 1] = coords.real
    return m


def quaternion_basis() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """``(I, i, j, k)`` built from the 4x4 Grassmann pair; the hat is read as transpose."""
    theta, d = two_generator_construction()
    eye = theta.T @ theta + theta @ theta.T
    qi = theta - theta.T
    qj = d - d.T
    qk = qi @ qj
    return eye, qi, qj, qk
