"""Dense univariate polynomials and rational functions over exact rationals.

Small and purpose-built: degrees stay below ~2l+2, so dense Fraction
arithmetic is plenty.  Rational functions are kept reduced with a monic
denominator, which makes equality and residue extraction exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


class Poly:
    """Polynomial with Fraction coefficients; index = degree."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[Fraction | int]):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def const(x) -> "Poly":
        return Poly([Fraction(x)])

    @staticmethod
    def monomial(k: int, coeff=1) -> "Poly":
        return Poly([0] * k + [coeff])

    # -- structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __getitem__(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        n = max(len(self.c), len(other.c))
        return Poly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([x * other for x in self.c])
        if self.is_zero() or other.is_zero():
            return Poly([])
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, len(self.c) - len(other.c) + 1)
        r = list(self.c)
        dlead = other.c[-1]
        dd = other.degree
        while len(r) - 1 >= dd and any(x != 0 for x in r):
            k = len(r) - 1 - dd
            f = r[-1] / dlead
            q[k] = f
            for j in range(len(other.c)):
                r[k + j] -= f * other.c[j]
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a * (1 / a.c[-1])  # monic

    def deriv(self) -> "Poly":
        return Poly([k * self.c[k] for k in range(1, len(self.c))])

    def reversed(self, degree: int | None = None) -> "Poly":
        """Coefficient reversal: t^deg * p(1/t)."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below actual degree")
        out = [Fraction(0)] * (d + 1)
        for k, a in enumerate(self.c):
            out[d - k] = a
        return Poly(out)

    # -- evaluation -------------------------------------------------------

    def __call__(self, x):
        acc = 0 if not isinstance(x, complex) else 0j
        for a in reversed(self.c):
            if isinstance(x, Fraction) or isinstance(x, int):
                acc = acc * x + a
            else:
                acc = acc * x + complex(a)
        return acc

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            a = self[k]
            if a == 0:
                continue
            if k == 0:
                parts.append(f"{a}")
            elif k == 1:
                parts.append("t" if a == 1 else ("-t" if a == -1 else f"{a}*t"))
            else:
                parts.append(f"t^{k}" if a == 1 else
                             (f"-t^{k}" if a == -1 else f"{a}*t^{k}"))
        return " + ".join(parts).replace("+ -", "- ")


def _ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, x, y) with x*a + y*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Poly.const(1), Poly([])
    t0, t1 = Poly([]), Poly.const(1)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead = r0.c[-1]
    inv = 1 / lead
    return r0 * inv, s0 * inv, t0 * inv


class RatFunc:
    """Reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=Poly.const(1)):
        if isinstance(num, (int, Fraction)):
            num = Poly.const(num)
        if isinstance(den, (int, Fraction)):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if not g.is_zero() and g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.c[-1]
        if lead != 1:
            inv = 1 / lead
            num, den = num * inv, den * inv
        self.num, self.den = num, den

    @staticmethod
    def t(k: int = 1) -> "RatFunc":
        """The monomial t^k (k may be negative)."""
        if k >= 0:
            return RatFunc(Poly.monomial(k))
        return RatFunc(Poly.const(1), Poly.monomial(-k))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        return (isinstance(other, RatFunc)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num * other, self.den)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num, self.den * other)
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc(other) / self

    def deriv(self) -> "RatFunc":
        return RatFunc(self.num.deriv() * self.den - self.num * self.den.deriv(),
                       self.den * self.den)

    def subs_inv(self) -> "RatFunc":
        """f(1/t), as a rational function of the new variable."""
        d = max(self.num.degree, self.den.degree, 0)
        return RatFunc(self.num.reversed(d), self.den.reversed(d))

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def eval_fraction(self, x: Fraction) -> Fraction:
        den = self.den(x)
        if den == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / den

    # -- residues ----------------------------------------------------------

    def residue_at_zero(self) -> Fraction:
        """Residue at t=0; requires at worst a simple pole there."""
        f = self * RatFunc.t(1)
        if f.den(Fraction(0)) == 0:
            raise ValueError("pole of order > 1 at t=0")
        return f.eval_fraction(Fraction(0))

    def residue_at_infinity(self) -> Fraction:
        """Residue at infinity of f(t) dt, computed in the chart s = 1/t."""
        g = -self.subs_inv() / RatFunc(Poly.monomial(2))
        return g.residue_at_zero()

    def residue_at_mu(self, l: int) -> Fraction:
        """The common residue at every l-th root of unity.

        Requires at worst simple poles along t^l = 1 and a residue independent
        of the chosen root; raises otherwise.
        """
        cyc = Poly.monomial(l) - Poly.const(1)  # t^l - 1
        g = self.den.gcd(cyc)
        if g.degree == 0:
            return Fraction(0)
        cof = self.den.divmod(g)[0]
        if cof.gcd(cyc).degree > 0:
            raise ValueError("pole of order > 1 on the unit-root divisor")
        if g.degree == l:
            # simple pole at every root: Res_z = num(z) * z / (l * cof(z)),
            # computed uniformly modulo t^l - 1
            gg, inv, _ = _ext_gcd(cof, cyc)
            if gg.degree != 0:
                raise ValueError("cofactor not invertible modulo t^l - 1")
            r = (self.num * inv * Poly.monomial(1)).divmod(cyc)[1]
            r = r * Fraction(1, l)
            if r.degree > 0:
                raise ValueError("residue varies over the unit roots")
            return r[0]
        # poles at a proper subset of the roots: uniformity forces residue 0
        gg, inv, _ = _ext_gcd(cof * g.deriv(), g)
        if gg.degree != 0:
            raise ValueError("repeated factor in the unit-root divisor")
        r = (self.num * inv).divmod(g)[1]
        if not r.is_zero():
            raise ValueError("residue varies over the unit roots")
        return Fraction(0)

    def has_pole_only_in(self, allowed: Poly) -> bool:
        """True if every denominator factor divides a power of `allowed`."""
        d = self.den
        while d.degree > 0:
            g = d.gcd(allowed)
            if g.degree == 0:
                return False
            d = d.divmod(g)[0]
        return True

    def __str__(self):
        if self.den == Poly.const(1):
            return str(self.num)
        return f"({self.num})/({self.den})"


class Mat2:
    """2x2 matrix of rational functions."""

    __slots__ = ("a",)

    def __init__(self, rows):
        self.a = tuple(tuple(x if isinstance(x, RatFunc) else RatFunc(x)
                             for x in r) for r in rows)
        if len(self.a) != 2 or any(len(r) != 2 for r in self.a):
            raise ValueError("Mat2 needs a 2x2 array")

    @staticmethod
    def identity() -> "Mat2":
        return Mat2([[1, 0], [0, 1]])

    @staticmethod
    def diag(x, y) -> "Mat2":
        return Mat2([[x, 0], [0, y]])

    def __getitem__(self, ij):
        return self.a[ij[0]][ij[1]]

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.a == other.a

    def __add__(self, other):
        return Mat2([[self.a[i][j] + other.a[i][j] for j in range(2)]
                     for i in range(2)])

    def __sub__(self, other):
        return Mat2([[self.a[i][j] - other.a[i][j] for j in range(2)]
                     for i in range(2)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return Mat2([[self.a[i][j] * other for j in range(2)]
                         for i in range(2)])
        return Mat2([[sum((self.a[i][k] * other.a[k][j] for k in range(2)),
                          RatFunc(0)) for j in range(2)] for i in range(2)])

    __rmul__ = __mul__

    def det(self) -> RatFunc:
        return self.a[0][0] * self.a[1][1] - self.a[0][1] * self.a[1][0]

    def trace(self) -> RatFunc:
        return self.a[0][0] + self.a[1][1]

    def inverse(self) -> "Mat2":
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular matrix")
        return Mat2([[self.a[1][1] / d, -self.a[0][1] / d],
                     [-self.a[1][0] / d, self.a[0][0] / d]])

    def deriv(self) -> "Mat2":
        return Mat2([[self.a[i][j].deriv() for j in range(2)] for i in range(2)])

    def map(self, f) -> list[list]:
        return [[f(self.a[i][j]) for j in range(2)] for i in range(2)]

    def eval_complex(self, z: complex):
        return np.array([[complex(self.a[i][j](complex(z))) for j in range(2)]
                         for i in range(2)])

    def __str__(self):
        return "[[%s, %s], [%s, %s]]" % (self.a[0][0], self.a[0][1],
                                         self.a[1][0], self.a[1][1])
