"""Kets, outer products, idempotents and the two-generator 4x4 Grassmann matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gk.errors import DomainError
from gk.matrices import identity, max_abs

IDEMPOTENCE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Ket:
    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amps, dtype=complex).ravel()
        if amps.size < 1:
            raise DomainError("a ket needs at least one amplitude")
        if not np.all(np.isfinite(amps)):
            raise DomainError("non-finite amplitude")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, dim: int, index: int) -> Ket:
        if not 0 <= index < dim:
            raise DomainError(f"basis index {index} out of range for dimension {dim}")
        amps = np.zeros(dim, dtype=complex)
        amps[index] = 1
        return cls(amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def __add__(self, other: Ket) -> Ket:
        return Ket(self.amps + other.amps)

    def __mul__(self, s) -> Ket:
        return Ket(s * self.amps)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Ket) and np.array_equal(self.amps, other.amps)


def outer(u: Ket, v: Ket) -> np.ndarray:
    """``|u><v|``, i.e. ``M[r, c] = u[r] * conj(v[c])``."""
    return np.outer(u.amps, np.conj(v.amps))


def state_tensor(u: Ket, v: Ket) -> Ket:
    """``|u> (x) |v>``; index ``i * v.dim + j`` carries ``u[i] * v[j]``."""
    return Ket(np.kron(u.amps, v.amps))


@dataclass(frozen=True, eq=False)
class Projector:
    """A square matrix with ``P @ P == P`` (checked to 1e-12 on construction)."""

    mat: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.mat, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError(f"projector must be square, got shape {m.shape}")
        residual = max_abs(m @ m - m)
        if residual > IDEMPOTENCE_TOL:
            raise DomainError(f"matrix is not idempotent (residual {residual:.3g})")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @classmethod
    def onto(cls, u: Ket) -> Projector:
        """Rank-one projector ``|u><u| / <u|u>``."""
        n2 = u.norm() ** 2
        if n2 == 0:
            raise DomainError("cannot project onto the zero vector")
        return cls(outer(u, u) / n2)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def orthogonal_complement(p: Projector) -> Projector:
    if not isinstance(p, Projector):
        p = Projector(p)
    return Projector(identity(p.dim) - p.mat)


def two_generator_construction() -> tuple[np.ndarray, np.ndarray]:
    """The 4x4 pair ``(theta, del)`` generating a Grassmann algebra on two generators.

    ``theta`` has ones at (2,1) and (4,3); ``del`` has 1 at (3,1) and -1 at (4,2)
    (1-based). As operators these read ``theta = I (x) theta_hat`` and
    ``del = theta_hat (x) omega_hat``, equivalent to the charitable reading of
    ``theta_1`` as the operator ``|1><0|`` between the projector slots.
    """
    theta = np.zeros((4, 4), dtype=complex)
    theta[1, 0] = 1
    theta[3, 2] = 1
    d = np.zeros((4, 4), dtype=complex)
    d[2, 0] = 1
    d[3, 1] = -1
    return theta, d


def basis_projectors() -> tuple[Projector, Projector]:
    """``P+ = |0><0|`` and ``P- = |1><1|`` on a two-level system."""
    return Projector(outer(Ket.basis(2, 0), Ket.basis(2, 0))), Projector(
        outer(Ket.basis(2, 1), Ket.basis(2, 1))
    )

