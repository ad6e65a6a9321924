"""Basis blades as bitmasks and the graded exterior algebra on n generators.

A blade ``e_{i1} ^ e_{i2} ^ ... ^ e_{ik}`` with ascending indices is stored as
the integer whose bit ``i - 1`` is set for each generator present. A
:class:`Multivector` is a sparse map from such masks to complex coefficients.
"""

from __future__ import annotations

import math
from decimal import Decimal
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from gk.errors import DomainError

MAX_GENERATORS = 30


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_indices(mask: int) -> list[int]:
    """1-based generator indices present in ``mask``, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def indices_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def reorder_sign(a: int, b: int) -> int:
    """Sign from moving the generators of ``b`` left past those of ``a``.

    For every generator in ``b`` count the generators of ``a`` with a higher
    index; each such pair is one transposition.
    """
    swaps = 0
    a >>= 1
    while a:
        swaps += popcount(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_canonicalize(indices: Iterable[int], n: int) -> tuple[int, int]:
    """Sort a product of generators into a canonical blade.

    Returns ``(mask, sign)`` where ``sign`` is the parity of the sorting
    permutation, or ``(0, 0)`` when an index repeats (the product vanishes).
    """
    indices = list(indices)
    for i in indices:
        if not 1 <= i <= n:
            raise DomainError(f"generator index {i} out of range 1..{n}")
    if len(set(indices)) != len(indices):
        return 0, 0
    inversions = sum(
        1
        for a in range(len(indices))
        for b in range(a + 1, len(indices))
        if indices[a] > indices[b]
    )
    return indices_mask(indices), -1 if inversions & 1 else 1


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_GENERATORS:
        raise DomainError(f"generator count {n} out of range 0..{MAX_GENERATORS}")


def _check_coeff(c: complex) -> complex:
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise DomainError(f"non-finite coefficient {c!r}")
    return c


@dataclass(frozen=True, eq=False)
class Multivector:
    """Element of the exterior algebra on ``n`` generators.

    Coefficients equal to exactly zero are dropped; nothing else is pruned
    implicitly (see :meth:`prune`).
    """

    n: int
    terms: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _check_n(self.n)
        limit = 1 << self.n
        clean = {}
        for mask, c in self.terms.items():
            if not 0 <= mask < limit:
                raise DomainError(f"blade mask {mask:#b} exceeds {self.n} generators")
            c = _check_coeff(c)
            if c != 0:
                clean[mask] = c
        object.__setattr__(self, "terms", MappingProxyType(clean))

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> Multivector:
        return cls(n, {})

    @classmethod
    def scalar(cls, n: int, value: complex = 1) -> Multivector:
        return cls(n, {0: value})

    @classmethod
    def blade(cls, n: int, indices: Iterable[int], coeff: complex = 1) -> Multivector:
        """``coeff * e_{i1} ^ e_{i2} ^ ...`` for indices in any order."""
        mask, sign = blade_canonicalize(indices, n)
        return cls(n, {mask: sign * coeff} if sign else {})

    @classmethod
    def vector(cls, n: int, coords: Iterable[complex]) -> Multivector:
        return cls(n, {1 << i: c for i, c in enumerate(coords)})

    # -- queries ----------------------------------------------------------

    def coeff(self, mask: int) -> complex:
        return self.terms.get(mask, 0j)

    def grades(self) -> set[int]:
        return {popcount(m) for m in self.terms}

    def is_homogeneous(self, k: int) -> bool:
        return all(popcount(m) == k for m in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def scalar_part(self) -> complex:
        return self.coeff(0)

    def max_abs(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    # -- linear structure -------------------------------------------------

    def _same_n(self, other: Multivector) -> None:
        if self.n != other.n:
            raise DomainError(f"generator counts differ: {self.n} vs {other.n}")

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = Multivector.scalar(self.n, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        self._same_n(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Multivector(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> Multivector:
        return Multivector(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, float, complex)):
            other = Multivector.scalar(self.n, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: complex) -> Multivector:
        return Multivector(self.n, {m: s * c for m, c in self.terms.items()})

    def __mul__(self, s):
        if isinstance(s, (int, float, complex)):
            return self.scale(s)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, s):
        if isinstance(s, (int, float, complex)):
            return self.scale(1 / s)
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, Multivector):
            return wedge(self, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.n == other.n and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def prune(self, threshold: float) -> Multivector:
        """Drop coefficients with absolute value at most ``threshold``."""
        return Multivector(
            self.n, {m: c for m, c in self.terms.items() if abs(c) > threshold}
        )

    def reverse(self) -> Multivector:
        """Reverse the order of generators in every blade."""
        out = {}
        for m, c in self.terms.items():
            k = popcount(m)
            out[m] = -c if (k * (k - 1) // 2) & 1 else c
        return Multivector(self.n, out)

    def __str__(self) -> str:
        return format_multivector(self)

    def __repr__(self) -> str:
        return f"Multivector(n={self.n}, {format_multivector(self)!r})"


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Exterior product; blades sharing a generator vanish."""
    a._same_n(b)
    out: dict[int, complex] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            if ma & mb:
                continue
            m = ma | mb
            out[m] = out.get(m, 0) + reorder_sign(ma, mb) * ca * cb
    return Multivector(a.n, out)


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.n:
        raise DomainError(f"grade {k} out of range 0..{a.n}")
    return Multivector(a.n, {m: c for m, c in a.terms.items() if popcount(m) == k})


def basis_blades(n: int, k: int) -> list[int]:
    """All masks of grade ``k`` on ``n`` generators, ascending."""
    _check_n(n)
    return [m for m in range(1 << n) if popcount(m) == k]


def format_real(x: float) -> str:
    """Shortest round-tripping positional decimal (no exponent notation)."""
    if x == int(x):
        return str(int(x))
    return format(Decimal(repr(x)), "f")


def format_coeff(c: complex) -> str:
    """Coefficient text: bare real, or ``(a+bi)`` when the imaginary part is nonzero."""
    if c.imag == 0:
        return format_real(c.real)
    sign = "-" if c.imag < 0 else "+"
    return f"({format_real(c.real)}{sign}{format_real(abs(c.imag))}i)"


def format_blade(mask: int) -> str:
    return "^".join(f"e{i}" for i in mask_indices(mask))


def format_multivector(a: Multivector) -> str:
    """Text form, e.g. ``1 + 2*e1 - e1^e2 + (0+1i)*e3``."""
    if not a.terms:
        return "0"
    parts = []
    for mask in sorted(a.terms, key=lambda m: (popcount(m), m)):
        c = a.terms[mask]
        neg = c.imag == 0 and c.real < 0
        mag = -c if neg else c
        if mask == 0:
            body = format_coeff(mag)
        elif mag == 1:
            body = format_blade(mask)
        else:
            body = f"{format_coeff(mag)}*{format_blade(mask)}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
