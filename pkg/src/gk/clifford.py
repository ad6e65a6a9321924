"""Geometric product, contractions and brackets over Cl(p, q).

Generators ``e_1 .. e_p`` square to +1 and ``e_{p+1} .. e_{p+q}`` square to -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from gk.blades import (
    MAX_GENERATORS,
    Multivector,
    grade_project,
    popcount,
    reorder_sign,
    wedge,
)
from gk.errors import DomainError


@dataclass(frozen=True)
class Signature:
    p: int
    q: int = 0

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0 or self.p + self.q > MAX_GENERATORS:
            raise DomainError(f"invalid signature ({self.p},{self.q})")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def negative_mask(self) -> int:
        return ((1 << self.q) - 1) << self.p

    def square(self, i: int) -> int:
        """``e_i * e_i`` for 1-based ``i``."""
        if not 1 <= i <= self.n:
            raise DomainError(f"generator index {i} out of range 1..{self.n}")
        return 1 if i <= self.p else -1

    def metric(self, i: int, j: int) -> int:
        return self.square(i) if i == j else 0

    def is_euclidean(self) -> bool:
        return self.q == 0

    @classmethod
    def parse(cls, text: str) -> Signature:
        """Read ``"p,q"``."""
        try:
            p, q = (int(x) for x in text.split(","))
        except ValueError:
            raise DomainError(f"signature must look like 'p,q', got {text!r}") from None
        return cls(p, q)

    def __str__(self) -> str:
        return f"Cl({self.p},{self.q})"


def blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Geometric product of two unit basis blades: ``(mask, sign)``."""
    sign = reorder_sign(a, b)
    if popcount(a & b & sig.negative_mask) & 1:
        sign = -sign
    return a ^ b, sign


@dataclass(frozen=True)
class CliffordElement:
    sig: Signature
    mv: Multivector

    def __post_init__(self) -> None:
        if self.mv.n != self.sig.n:
            raise DomainError(
                f"multivector on {self.mv.n} generators does not fit {self.sig}"
            )

    @classmethod
    def scalar(cls, sig: Signature, value: complex = 1) -> CliffordElement:
        return cls(sig, Multivector.scalar(sig.n, value))

    @classmethod
    def zero(cls, sig: Signature) -> CliffordElement:
        return cls(sig, Multivector.zero(sig.n))

    @classmethod
    def generator(cls, sig: Signature, i: int, coeff: complex = 1) -> CliffordElement:
        sig.square(i)
        return cls(sig, Multivector(sig.n, {1 << (i - 1): coeff}))

    @classmethod
    def blade(
        cls, sig: Signature, indices: Iterable[int], coeff: complex = 1
    ) -> CliffordElement:
        """``coeff * e_{i1} e_{i2} ...`` as a geometric product (indices may repeat)."""
        out = cls.scalar(sig, coeff)
        for i in indices:
            out = out * cls.generator(sig, i)
        return out

    @classmethod
    def vector(cls, sig: Signature, coords: Iterable[complex]) -> CliffordElement:
        return cls(sig, Multivector.vector(sig.n, coords))

    @property
    def terms(self):
        return self.mv.terms

    def _lift(self, other) -> CliffordElement:
        if isinstance(other, (int, float, complex)):
            return CliffordElement.scalar(self.sig, other)
        if isinstance(other, CliffordElement):
            if other.sig != self.sig:
                raise DomainError(f"signatures differ: {self.sig} vs {other.sig}")
            return other
        raise TypeError(f"cannot combine CliffordElement with {type(other).__name__}")

    def __add__(self, other) -> CliffordElement:
        return CliffordElement(self.sig, self.mv + self._lift(other).mv)

    __radd__ = __add__

    def __sub__(self, other) -> CliffordElement:
        return CliffordElement(self.sig, self.mv - self._lift(other).mv)

    def __rsub__(self, other) -> CliffordElement:
        return self._lift(other) - self

    def __neg__(self) -> CliffordElement:
        return CliffordElement(self.sig, -self.mv)

    def __mul__(self, other) -> CliffordElement:
        if isinstance(other, (int, float, complex)):
            return CliffordElement(self.sig, self.mv.scale(other))
        return geometric_product(self, self._lift(other))

    def __rmul__(self, other) -> CliffordElement:
        if isinstance(other, (int, float, complex)):
            return CliffordElement(self.sig, self.mv.scale(other))
        return NotImplemented

    def __truediv__(self, s) -> CliffordElement:
        return CliffordElement(self.sig, self.mv / s)

    def __xor__(self, other) -> CliffordElement:
        return CliffordElement(self.sig, wedge(self.mv, self._lift(other).mv))

    def __or__(self, other) -> CliffordElement:
        return left_contraction(self, self._lift(other))

    def grade(self, k: int) -> CliffordElement:
        return CliffordElement(self.sig, grade_project(self.mv, k))

    def reverse(self) -> CliffordElement:
        return CliffordElement(self.sig, self.mv.reverse())

    def is_homogeneous(self, k: int) -> bool:
        return self.mv.is_homogeneous(k)

    def is_zero(self) -> bool:
        return self.mv.is_zero()

    def scalar_part(self) -> complex:
        return self.mv.scalar_part()

    def max_abs(self) -> float:
        return self.mv.max_abs()

    def prune(self, threshold: float) -> CliffordElement:
        return CliffordElement(self.sig, self.mv.prune(threshold))

    def vector_coords(self) -> np.ndarray:
        """Grade-1 coefficients as a length-n complex array."""
        return np.array([self.mv.coeff(1 << i) for i in range(self.sig.n)], dtype=complex)

    def __str__(self) -> str:
        return str(self.mv)


def geometric_product(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    if a.sig != b.sig:
        raise DomainError(f"signatures differ: {a.sig} vs {b.sig}")
    out: dict[int, complex] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m, s = blade_product(ma, mb, a.sig)
            out[m] = out.get(m, 0) + s * ca * cb
    return CliffordElement(a.sig, Multivector(a.sig.n, out))


def _require_vector(v: CliffordElement) -> None:
    if not v.is_homogeneous(1):
        raise DomainError(f"contraction needs a grade-1 element, got grades {sorted(v.mv.grades())}")


def contract_left(v: CliffordElement, w: CliffordElement) -> CliffordElement:
    """Left contraction ``v ⌋ W`` of a vector onto a multivector.

    On a blade ``w_1 ^ ... ^ w_k`` this is ``sum_i (-1)^(i-1) (v.w_i)`` times the
    blade with ``w_i`` removed.
    """
    _require_vector(v)
    if v.sig != w.sig:
        raise DomainError(f"signatures differ: {v.sig} vs {w.sig}")
    out: dict[int, complex] = {}
    for mv_, cv in v.terms.items():
        eta = v.sig.square(mv_.bit_length())
        for mw, cw in w.terms.items():
            if not mw & mv_:
                continue
            below = popcount(mw & (mv_ - 1))
            s = -eta if below & 1 else eta
            m = mw ^ mv_
            out[m] = out.get(m, 0) + s * cv * cw
    return CliffordElement(v.sig, Multivector(v.sig.n, out))


def contract_right(w: CliffordElement, v: CliffordElement) -> CliffordElement:
    """Right contraction ``W ⌊ v``; equals ``(-1)^(k-1) v ⌋ W`` on grade k."""
    _require_vector(v)
    if v.sig != w.sig:
        raise DomainError(f"signatures differ: {v.sig} vs {w.sig}")
    out: dict[int, complex] = {}
    for mv_, cv in v.terms.items():
        eta = v.sig.square(mv_.bit_length())
        for mw, cw in w.terms.items():
            if not mw & mv_:
                continue
            above = popcount(mw >> mv_.bit_length())
            s = -eta if above & 1 else eta
            m = mw ^ mv_
            out[m] = out.get(m, 0) + s * cv * cw
    return CliffordElement(v.sig, Multivector(v.sig.n, out))


def left_contraction(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    """General left contraction: the grade ``s - r`` part of each blade product.

    For orthogonal basis blades this is nonzero only when ``a`` is contained in
    ``b``. Agrees with :func:`contract_left` when ``a`` is a vector.
    """
    if a.sig != b.sig:
        raise DomainError(f"signatures differ: {a.sig} vs {b.sig}")
    out: dict[int, complex] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            if ma & mb != ma:
                continue
            m, s = blade_product(ma, mb, a.sig)
            out[m] = out.get(m, 0) + s * ca * cb
    return CliffordElement(a.sig, Multivector(a.sig.n, out))


def _product(a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        if not (isinstance(a, np.ndarray) and isinstance(b, np.ndarray)):
            raise DomainError("cannot bracket a matrix with an algebra element")
        if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError(f"bracket needs equal square shapes, got {a.shape} and {b.shape}")
        return a @ b
    return a * b


def commutator(a, b):
    """``ab - ba`` for CliffordElements or square matrices."""
    return _product(a, b) - _product(b, a)


def anticommutator(a, b):
    """``ab + ba`` for CliffordElements or square matrices."""
    return _product(a, b) + _product(b, a)


def bracket(a, b, kind: str = "commutator"):
    if kind == "commutator":
        return commutator(a, b)
    if kind == "anticommutator":
        return anticommutator(a, b)
    raise DomainError(f"unknown bracket kind {kind!r}")
