"""Generalized Grassmann variables with ``theta^k = 0`` and their q-derivatives.

``q = exp(2 pi i / k)``. Every function that depends on ``q`` takes a ``hat``
flag; with ``hat=True`` the conjugate parameter ``qbar`` is used instead, which
gives the calculus of the conjugate variable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from gk.errors import DomainError

MAX_K = 64

_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


def root_of_unity(m: int, k: int) -> complex:
    """``exp(2 pi i m / k)``, exact at multiples of a quarter turn."""
    r = m % k
    if (4 * r) % k == 0:
        return _QUARTER_TURNS[4 * r // k]
    if 2 * r > k:
        return root_of_unity(k - r, k).conjugate()
    return cmath.exp(2j * math.pi * r / k)


@dataclass(frozen=True)
class QContext:
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or not 2 <= self.k <= MAX_K:
            raise DomainError(f"nilpotency order k={self.k!r} must be an integer in 2..{MAX_K}")

    @property
    def q(self) -> complex:
        return root_of_unity(1, self.k)

    @property
    def qbar(self) -> complex:
        return root_of_unity(-1, self.k)

    def param(self, hat: bool = False) -> complex:
        return self.qbar if hat else self.q

    def power(self, x: float, hat: bool = False) -> complex:
        """``q**x`` on the principal branch, ``log q = 2 pi i / k``."""
        sign = -1 if hat else 1
        if float(x).is_integer():
            return root_of_unity(sign * int(x), self.k)
        return cmath.exp(sign * 2j * math.pi * x / self.k)


def q_number(x: float, ctx: QContext, hat: bool = False) -> complex:
    """``[x]_q = (1 - q^x) / (1 - q)``."""
    q = ctx.param(hat)
    if float(x).is_integer() and int(x) % ctx.k in (0, 1):
        return complex(int(x) % ctx.k)
    return (1 - ctx.power(x, hat)) / (1 - q)


@dataclass(frozen=True)
class QPolynomial:
    """``f(theta) = sum_n coeffs[n] theta^n`` truncated at ``theta^k = 0``."""

    ctx: QContext
    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.ctx.k:
            raise DomainError(f"expected {self.ctx.k} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, ctx: QContext, coeffs: Sequence[complex]) -> QPolynomial:
        coeffs = list(coeffs)
        if len(coeffs) > ctx.k:
            raise DomainError(f"degree {len(coeffs) - 1} exceeds k-1 = {ctx.k - 1}")
        return cls(ctx, tuple(coeffs + [0] * (ctx.k - len(coeffs))))

    @classmethod
    def monomial(cls, ctx: QContext, n: int, coeff: complex = 1) -> QPolynomial:
        if not 0 <= n < ctx.k:
            raise DomainError(f"theta^{n} vanishes for k={ctx.k}")
        c = [0j] * ctx.k
        c[n] = coeff
        return cls(ctx, tuple(c))

    def __call__(self, theta: complex) -> complex:
        """Evaluate as an ordinary complex polynomial."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * theta + c
        return acc

    def _check(self, other: QPolynomial) -> None:
        if other.ctx != self.ctx:
            raise DomainError("polynomials over different k")

    def __add__(self, other: QPolynomial) -> QPolynomial:
        self._check(other)
        return QPolynomial(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: QPolynomial) -> QPolynomial:
        self._check(other)
        return QPolynomial(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, s: complex) -> QPolynomial:
        return QPolynomial(self.ctx, tuple(s * c for c in self.coeffs))

    def __mul__(self, s):
        if isinstance(s, (int, float, complex)):
            return self.scale(s)
        return NotImplemented

    __rmul__ = __mul__


def q_derivative(f: QPolynomial, hat: bool = False) -> QPolynomial:
    """Apply ``d theta^n = [n]_q theta^(n-1)`` coefficientwise."""
    k = f.ctx.k
    out = [q_number(n, f.ctx, hat) * f.coeffs[n] for n in range(1, k)]
    return QPolynomial(f.ctx, tuple(out) + (0j,))


def q_difference_quotient(f: QPolynomial, theta0: complex, hat: bool = False) -> complex:
    """Evaluate ``(f(q theta) - f(theta)) / ((q - 1) theta)`` at ``theta0``."""
    if theta0 == 0:
        raise DomainError("difference quotient is undefined at theta = 0")
    q = f.ctx.param(hat)
    return (f(q * theta0) - f(theta0)) / ((q - 1) * theta0)


def qvar_matrices(ctx: QContext, hat: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Shift-matrix model ``(Theta, D)`` on the basis ``|0> .. |k-1>``.

    ``Theta |n> = |n+1>`` and ``D |n> = [n]_q |n-1>``.
    """
    k = ctx.k
    theta = np.zeros((k, k), dtype=complex)
    d = np.zeros((k, k), dtype=complex)
    for n in range(k - 1):
        theta[n + 1, n] = 1
    for n in range(1, k):
        d[n - 1, n] = q_number(n, ctx, hat)
    return theta, d


def q_table(k: int) -> list[tuple[int, complex]]:
    ctx = QContext(k)
    return [(n, q_number(n, ctx)) for n in range(k)]
