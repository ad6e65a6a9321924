"""Dense complex matrices and the tensor-product construction of fermionic generators.

Matrices are plain ``numpy`` complex arrays. Mode ``i`` of an ``N``-mode
representation occupies tensor slot ``i`` counted from the left, so basis index
``b`` is the occupation bitstring of modes ``1..N`` with mode 1 most significant.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from gk.blades import Multivector, mask_indices
from gk.clifford import CliffordElement, Signature, anticommutator, blade_product
from gk.errors import DomainError

MAX_MODES = 12
EXP_TOL = 1e-13
EXP_MAX_TERMS = 200

THETA_HAT = np.array([[0, 0], [1, 0]], dtype=complex)
DEL_HAT = np.array([[0, 1], [0, 0]], dtype=complex)
OMEGA_HAT = np.array([[1, 0], [0, -1]], dtype=complex)
for _m in (THETA_HAT, DEL_HAT, OMEGA_HAT):
    _m.setflags(write=False)


def base_generators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The one-mode matrices ``(theta_hat, del_hat, omega_hat)``."""
    return THETA_HAT.copy(), DEL_HAT.copy(), OMEGA_HAT.copy()


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(kron, factors, np.ones((1, 1), dtype=complex))


def max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


@dataclass(frozen=True)
class FermionRep:
    N: int
    theta: tuple[np.ndarray, ...]
    dels: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return 1 << self.N


def _mode_operator(slot: np.ndarray, i: int, N: int) -> np.ndarray:
    m = kron_all([OMEGA_HAT] * (i - 1) + [slot] + [identity(2)] * (N - i))
    m.setflags(write=False)
    return m


def build_fermion_rep(N: int) -> FermionRep:
    """``theta_i = omega^(i-1) (x) theta_hat (x) I^(N-i)`` and likewise for ``del_i``."""
    if not 1 <= N <= MAX_MODES:
        raise DomainError(f"mode count {N} out of range 1..{MAX_MODES}")
    theta = tuple(_mode_operator(THETA_HAT, i, N) for i in range(1, N + 1))
    dels = tuple(_mode_operator(DEL_HAT, i, N) for i in range(1, N + 1))
    return FermionRep(N, theta, dels)


@dataclass(frozen=True)
class CarReport:
    """Largest residual of each family of anticommutation relations."""

    theta_theta: float
    del_del: float
    del_theta: float

    @property
    def worst(self) -> float:
        return max(self.theta_theta, self.del_del, self.del_theta)

    @property
    def ok(self) -> bool:
        return self.worst == 0.0


def car_check(rep: FermionRep) -> CarReport:
    eye = identity(rep.dim)
    tt = dd = dt = 0.0
    for i in range(rep.N):
        for j in range(rep.N):
            tt = max(tt, max_abs(anticommutator(rep.theta[i], rep.theta[j])))
            dd = max(dd, max_abs(anticommutator(rep.dels[i], rep.dels[j])))
            target = eye if i == j else 0
            dt = max(dt, max_abs(anticommutator(rep.dels[i], rep.theta[j]) - target))
    return CarReport(tt, dd, dt)


def build_clifford_generators(rep: FermionRep, sig: Signature | None = None) -> list[np.ndarray]:
    """Matrix images of ``e_1 .. e_2N``.

    The Euclidean realization is ``e_i = del_i + theta_i`` and
    ``e_{N+i} = i (del_i - theta_i)``. Generators that must square to -1 are
    multiplied by ``i``.
    """
    if sig is None:
        sig = Signature(2 * rep.N, 0)
    if sig.n != 2 * rep.N:
        raise DomainError(f"{sig} needs {sig.n} generators but {rep.N} modes give {2 * rep.N}")
    gens = [rep.dels[i] + rep.theta[i] for i in range(rep.N)]
    gens += [1j * (rep.dels[i] - rep.theta[i]) for i in range(rep.N)]
    out = []
    for a, g in enumerate(gens, start=1):
        g = g if sig.square(a) == 1 else 1j * g
        g.setflags(write=False)
        out.append(g)
    return out


def rep_map(a: CliffordElement, gens: Sequence[np.ndarray]) -> np.ndarray:
    """Extend generator images to the whole algebra.

    Each blade maps to the ordered product of its generators' images.
    """
    if len(gens) != a.sig.n:
        raise DomainError(f"{len(gens)} generator images for {a.sig.n} generators")
    dim = gens[0].shape[0] if gens else 1
    out = np.zeros((dim, dim), dtype=complex)
    for mask, c in a.terms.items():
        m = identity(dim)
        for i in mask_indices(mask):
            m = m @ gens[i - 1]
        out += c * m
    return out


def rep_unmap(m: np.ndarray, gens: Sequence[np.ndarray], sig: Signature) -> CliffordElement:
    """Inverse of :func:`rep_map` for a faithful full-matrix representation.

    Blade images are trace-orthogonal, so the coefficient of blade ``A`` is
    ``tr(A^-1 M) / dim`` with ``A^-1 = (A A) A`` for a unit blade.
    """
    if len(gens) != sig.n:
        raise DomainError(f"{len(gens)} generator images for {sig.n} generators")
    dim = m.shape[0]
    if m.shape != (dim, dim) or dim * dim != 1 << sig.n:
        raise DomainError(f"a {m.shape} matrix is not a full image of {sig}")
    images = {0: identity(dim)}
    terms = {}
    for mask in range(1 << sig.n):
        if mask:
            top = 1 << (mask.bit_length() - 1)
            images[mask] = images[mask ^ top] @ gens[mask.bit_length() - 1]
        sq = blade_product(mask, mask, sig)[1]
        c = complex(np.sum(images[mask].T * m)) * sq / dim
        if c != 0:
            terms[mask] = c
    return CliffordElement(sig, Multivector(sig.n, terms))


def exp_series(m: np.ndarray, tol: float = EXP_TOL, max_terms: int = EXP_MAX_TERMS) -> np.ndarray:
    """Taylor sum of ``exp(M)``, stopping once the added term is below ``tol``."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"exp needs a square matrix, got shape {m.shape}")
    total = identity(m.shape[0])
    term = identity(m.shape[0])
    for k in range(1, max_terms):
        term = term @ m / k
        total = total + term
        if max_abs(term) < tol:
            break
    return total


# -- JSON export ---------------------------------------------------------


def _num(x: float) -> str:
    if not math.isfinite(x):
        raise DomainError(f"non-finite matrix entry {x!r}")
    return format(float(x), ".16e")


def matrix_to_json(m: np.ndarray) -> str:
    """``{"rows": R, "cols": C, "entries": [[re, im], ...]}`` with 17 significant digits."""
    m = np.asarray(m, dtype=complex)
    rows, cols = m.shape
    entries = ", ".join(f"[{_num(z.real)}, {_num(z.imag)}]" for z in m.ravel())
    return f'{{"rows": {rows}, "cols": {cols}, "entries": [{entries}]}}'


def matrices_to_json(named: dict[str, np.ndarray]) -> str:
    body = ",\n".join(f"  {json.dumps(k)}: {matrix_to_json(v)}" for k, v in named.items())
    return "{\n" + body + "\n}\n"


def matrix_from_obj(obj: dict) -> np.ndarray:
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if len(entries) != rows * cols:
        raise DomainError(f"{len(entries)} entries for a {rows}x{cols} matrix")
    m = np.array([complex(re, im) for re, im in entries], dtype=complex).reshape(rows, cols)
    if not np.all(np.isfinite(m)):
        raise DomainError("non-finite matrix entry")
    return m


def matrix_from_json(text: str) -> np.ndarray:
    return matrix_from_obj(json.loads(text))
