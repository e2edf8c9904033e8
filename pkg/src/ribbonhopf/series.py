"""Truncated formal power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = ["PowerSeries"]


class PowerSeries:
    """``sum_k coeffs[k] x^k`` known up to (and including) ``x^order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [Fraction(x) for x in coeffs]
        if order is not None:
            c = (c + [Fraction(0)] * (order + 1))[: order + 1]
        self.coeffs = c

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, a, order: int) -> "PowerSeries":
        return cls([a], order)

    @classmethod
    def x(cls, order: int) -> "PowerSeries":
        return cls([0, 1], order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _lift(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.constant(other, self.order)

    def __add__(self, other) -> "PowerSeries":
        other = self._lift(other)
        n = min(self.order, other.order)
        return PowerSeries([self[k] + other[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-a for a in self.coeffs])

    def __sub__(self, other) -> "PowerSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "PowerSeries":
        return self._lift(other) - self

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return PowerSeries([a * other for a in self.coeffs])
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other[j]
        return PowerSeries(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PowerSeries":
        if e < 0:
            return self.inverse() ** (-e)
        out = PowerSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "PowerSeries":
        if self[0] == 0:
            raise ZeroDivisionError("series with zero constant term")
        n = self.order
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / self[0]
        for k in range(1, n + 1):
            s = sum(self[j] * inv[k - j] for j in range(1, k + 1))
            inv[k] = -s * inv[0]
        return PowerSeries(inv)

    def __truediv__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return self * other.inverse()
        return PowerSeries([a / Fraction(other) for a in self.coeffs])

    def shift_down(self) -> "PowerSeries":
        """Divide by ``x``; the constant term must vanish.  Loses one order."""
        if self[0] != 0:
            raise ValueError("constant term must vanish")
        return PowerSeries(self.coeffs[1:])

    def sqrt(self) -> "PowerSeries":
        """Square root with constant term 1, by Newton iteration."""
        if self[0] != 1:
            raise ValueError("sqrt needs constant term 1")
        n = self.order
        y = PowerSeries.constant(1, n)
        prec = 1
        while prec <= n:
            prec *= 2
            y = (y + self / y) * Fraction(1, 2)
        return y

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self[k] == other[k] for k in range(n + 1))

    def __repr__(self) -> str:
        return f"PowerSeries({[str(c) for c in self.coeffs]})"
