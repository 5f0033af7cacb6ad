"""Truncated complex power series at the origin.

A :class:`ComplexSeries` holds the coefficients ``c_0 .. c_N`` of a polynomial
truncation. Binary operations truncate to the smaller order and never pad with
zeros, so no coefficient is ever fabricated.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import NearZeroConstantTerm

DEFAULT_ORDER = 32
RECIPROCAL_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class ComplexSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a series needs at least the constant coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"ComplexSeries(order={self.order}, coeffs={self.coeffs.tolist()!r})"

    def __add__(self, other):
        if not isinstance(other, ComplexSeries):
            other = constant(other, self.order)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return ComplexSeries(-self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, ComplexSeries):
            other = constant(other, self.order)
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ComplexSeries):
            return mul(self, other)
        return ComplexSeries(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __call__(self, z):
        return eval_series(self, z)

    def truncate(self, order: int) -> ComplexSeries:
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order}")
        return ComplexSeries(self.coeffs[: order + 1])

    def shift(self) -> ComplexSeries:
        """Multiply by z; the order grows by one."""
        return ComplexSeries(np.concatenate(([0j], self.coeffs)))


def from_coeffs(coeffs: Iterable[complex]) -> ComplexSeries:
    return ComplexSeries(np.asarray(list(coeffs), dtype=complex))


def constant(c: complex, order: int = DEFAULT_ORDER) -> ComplexSeries:
    out = np.zeros(order + 1, dtype=complex)
    out[0] = c
    return ComplexSeries(out)


def zero(order: int = DEFAULT_ORDER) -> ComplexSeries:
    return constant(0.0, order)


def identity(order: int = DEFAULT_ORDER) -> ComplexSeries:
    """The series ``z``."""
    out = np.zeros(order + 1, dtype=complex)
    if order >= 1:
        out[1] = 1.0
    return ComplexSeries(out)


def add(s: ComplexSeries, t: ComplexSeries) -> ComplexSeries:
    n = min(s.order, t.order) + 1
    return ComplexSeries(s.coeffs[:n] + t.coeffs[:n])


def mul(s: ComplexSeries, t: ComplexSeries) -> ComplexSeries:
    n = min(s.order, t.order) + 1
    return ComplexSeries(np.convolve(s.coeffs[:n], t.coeffs[:n])[:n])


def reciprocal(s: ComplexSeries) -> ComplexSeries:
    c = s.coeffs
    if abs(c[0]) <= RECIPROCAL_FLOOR:
        raise NearZeroConstantTerm(f"|c0| = {abs(c[0]):.3g} is below {RECIPROCAL_FLOOR}")
    inv0 = 1.0 / c[0]
    r = np.zeros_like(c)
    r[0] = inv0
    for n in range(1, c.size):
        # sum_{k=1..n} c_k r_{n-k}
        r[n] = -inv0 * np.dot(c[1 : n + 1], r[n - 1 :: -1][:n])
    return ComplexSeries(r)


def differentiate(s: ComplexSeries) -> ComplexSeries:
    if s.order == 0:
        return zero(0)
    k = np.arange(1, s.order + 1)
    return ComplexSeries(s.coeffs[1:] * k)


def antidifferentiate(s: ComplexSeries) -> ComplexSeries:
    k = np.arange(1, s.order + 2)
    return ComplexSeries(np.concatenate(([0j], s.coeffs / k)))


def eval_series(s: ComplexSeries, z):
    """Horner evaluation of the truncated polynomial; ``z`` may be an array."""
    acc = np.zeros_like(np.asarray(z, dtype=complex))
    for c in s.coeffs[::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc
