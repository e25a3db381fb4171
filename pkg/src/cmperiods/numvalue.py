"""Numeric values carrying a propagated absolute-error estimate.

Every analytic evaluation in this package (gamma quotients, hypergeometric
sums, quadratures, period integrals) returns a ``NumValue``: a complex value
together with a first-order upper bound on its absolute error.  Arithmetic
combinators propagate the bound; they never tighten it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

EPS = 2.0 ** -52


def ulp(x: float) -> float:
    """Unit in the last place of |x| (1 ulp near zero is the smallest normal)."""
    ax = abs(x)
    if ax == 0.0 or not math.isfinite(ax):
        return 2.0 ** -1074
    return ax * EPS


@dataclass(frozen=True)
class NumValue:
    """A complex number with an estimated absolute error bound."""

    value: complex
    err: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.err) and self.err >= 0.0):
            raise ValueError(f"error bound must be finite and >= 0, got {self.err}")

    # -- basic accessors -------------------------------------------------

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag

    def abs(self) -> "NumValue":
        return NumValue(abs(self.value), self.err)

    def conj(self) -> "NumValue":
        return NumValue(self.value.conjugate(), self.err)

    # -- arithmetic (first order error propagation) ----------------------

    @staticmethod
    def _coerce(other) -> "NumValue":
        if isinstance(other, NumValue):
            return other
        return NumValue(complex(other), 0.0)

    def __add__(self, other):
        o = self._coerce(other)
        v = self.value + o.value
        return NumValue(v, self.err + o.err + ulp(abs(v)))

    __radd__ = __add__

    def __neg__(self):
        return NumValue(-self.value, self.err)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        v = self.value * o.value
        err = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return NumValue(v, err + ulp(abs(v)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.value == 0:
            raise ZeroDivisionError("NumValue division by zero")
        v = self.value / o.value
        err = (self.err + abs(v) * o.err) / abs(o.value)
        return NumValue(v, err + ulp(abs(v)))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def powr(self, e: float) -> "NumValue":
        """self**e for a real exponent; self must be bounded away from 0."""
        v = self.value ** e
        av = abs(self.value)
        err = abs(e) * abs(v) / av * self.err if av > 0 else math.inf
        return NumValue(v, err + ulp(abs(v)))

    def exp(self) -> "NumValue":
        v = cmath.exp(self.value)
        return NumValue(v, abs(v) * self.err + ulp(abs(v)))

    # -- comparisons against references ----------------------------------

    def agrees_with(self, ref, tol: float = 0.0) -> bool:
        """|self - ref| <= tol + combined error bounds."""
        o = self._coerce(ref)
        return abs(self.value - o.value) <= tol + self.err + o.err

    def __repr__(self):
        if self.value.imag == 0:
            return f"NumValue({self.value.real!r}, err={self.err:.2e})"
        return f"NumValue({self.value!r}, err={self.err:.2e})"
