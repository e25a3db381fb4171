"""Gamma, beta, digamma, Pochhammer and generalized hypergeometric evaluation.

Everything here is a pure function of its arguments.  Values with limited
accuracy come back as :class:`~cmperiods.numvalue.NumValue`; exact quantities
(Pochhammer symbols, shift factors) come back as :class:`fractions.Fraction`.

The default arithmetic is binary64 with compensated summation for series.
Passing ``extended=True`` reruns the same algorithms in ~34-digit arithmetic
(mpmath), which the acceptance checks use near the unit argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .errors import (
    DivergenceError,
    NonconvergenceError,
    PoleError,
    PreconditionError,
)
from .numvalue import EPS, NumValue, ulp

Rational = Fraction | int

ITERATION_CAP = 10 ** 6
LEVIN_ORDER_CAP = 20
EXTENDED_DPS = 34

EULER_GAMMA = 0.5772156649015328606065120900824024

# Lanczos approximation, g = 607/128 with 15 coefficients (Godfrey's table).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517, -59.597960355475491248, 14.136097974741747174,
    -0.49191381609762019978, 0.33994649984811888699e-4,
    0.46523628927048575665e-4, -0.98374475304879564677e-4,
    0.15808870322491248884e-3, -0.21026444172410488319e-3,
    0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4, -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)


def _as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _is_nonpos_int(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


# ---------------------------------------------------------------------------
# exact helpers


def pochhammer(x: Rational, n: int) -> Fraction:
    """Rising factorial x(x+1)...(x+n-1), exactly."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    x = _as_fraction(x)
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


def gamma_shift_factor(x: Rational) -> Fraction:
    """Exact rational f with Gamma(x) = f * Gamma({x}).

    Repeated application of Gamma(x+1) = x Gamma(x); errors out on integers,
    where {x} = 0 would hit the pole.
    """
    x = _as_fraction(x)
    if x.denominator == 1:
        raise PoleError(f"gamma_shift_factor undefined for integer x={x}")
    f = Fraction(1)
    while x >= 1:
        x -= 1
        f *= x
    while x < 0:
        f /= x
        x += 1
    return f


# ---------------------------------------------------------------------------
# gamma / digamma in binary64 (Lanczos + reflection)


def _lanczos_lgamma(x: float) -> float:
    # requires x >= 0.5
    s = math.fsum(
        _LANCZOS_C[k] / (x - 1.0 + k) for k in range(1, 15)
    ) + _LANCZOS_C[0]
    t = x + _LANCZOS_G - 0.5
    return 0.5 * math.log(2.0 * math.pi) + (x - 0.5) * math.log(t) - t + math.log(s)


def _gamma_float(x: float) -> float:
    if x >= 0.5:
        return math.exp(_lanczos_lgamma(x))
    # reflection; sin(pi x) handled through the fractional part for accuracy
    s = math.sin(math.pi * (x - math.floor(x)))
    if math.floor(x) % 2 != 0:
        s = -s
    return math.pi / (s * math.exp(_lanczos_lgamma(1.0 - x)))


def _lgamma_signed(x: float) -> tuple[float, int]:
    """(log|Gamma(x)|, sign) for non-pole real x."""
    if x >= 0.5:
        return _lanczos_lgamma(x), 1
    s = math.sin(math.pi * (x - math.floor(x)))
    sign = 1 if math.floor(x) % 2 == 0 else -1
    return math.log(math.pi / s) - _lanczos_lgamma(1.0 - x), sign


def gamma(x: Rational | float, extended: bool = False) -> NumValue:
    """Gamma(x) for real x away from nonpositive integers."""
    if isinstance(x, (int, Fraction)):
        xf = _as_fraction(x)
        if _is_nonpos_int(xf):
            raise PoleError(f"gamma pole at {xf}")
        xv = float(xf)
    else:
        xv = float(x)
        if xv <= 0 and xv == math.floor(xv):
            raise PoleError(f"gamma pole at {xv}")
    if extended:
        with mpmath.workdps(EXTENDED_DPS):
            v = float(mpmath.gamma(_to_mpf(x)))
        return NumValue(v, 2 * ulp(v))
    v = _gamma_float(xv)
    return NumValue(v, 10 * ulp(v))


def digamma(x: Rational | float, extended: bool = False) -> NumValue:
    """psi(x) = Gamma'(x)/Gamma(x), err within 100 ulp on the working range."""
    xv = float(x) if not isinstance(x, Fraction) else float(x)
    if xv <= 0 and xv == math.floor(xv):
        raise PoleError(f"digamma pole at {x}")
    if extended:
        with mpmath.workdps(EXTENDED_DPS):
            v = float(mpmath.digamma(_to_mpf(x)))
        return NumValue(v, 2 * ulp(v))
    v = _digamma_float(xv)
    return NumValue(v, 100 * ulp(max(abs(v), 1.0)))


_BERNOULLI_TERMS = (
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6,
)


def _digamma_float(x: float) -> float:
    if x < 0.5:
        # reflection: psi(1-x) - psi(x) = pi cot(pi x)
        return _digamma_float(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    s = 0.0
    p = inv2
    for k, b2k in enumerate(_BERNOULLI_TERMS, start=1):
        s += b2k / (2 * k) * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - s


def gamma_ratio(upper: Sequence[Rational], lower: Sequence[Rational],
                extended: bool = False) -> NumValue:
    """prod Gamma(upper) / prod Gamma(lower), accumulated in log space."""
    ups = [_as_fraction(u) for u in upper]
    los = [_as_fraction(v) for v in lower]
    for z in ups + los:
        if _is_nonpos_int(z):
            raise PoleError(f"gamma pole at {z}")
    if extended:
        with mpmath.workdps(EXTENDED_DPS):
            acc = mpmath.mpf(0)
            sign = 1
            for z, direction in [(u, 1) for u in ups] + [(v, -1) for v in los]:
                g = mpmath.gamma(_to_mpf(z))
                acc += direction * mpmath.log(abs(g))
                if g < 0:
                    sign = -sign
            val = sign * float(mpmath.exp(acc))
        return NumValue(val, 4 * ulp(val))
    logs = []
    sign = 1
    for u in ups:
        lg, sg = _lgamma_signed(float(u))
        logs.append(lg)
        sign *= sg
    for v in los:
        lg, sg = _lgamma_signed(float(v))
        logs.append(-lg)
        sign *= sg
    lo = math.fsum(logs)
    val = sign * math.exp(lo)
    # ~10 ulp per gamma plus the exp of the summed log error
    rel = (10 * len(logs) + 2) * EPS * max(1.0, abs(lo))
    return NumValue(val, abs(val) * rel + ulp(val))


def beta(x: Rational, y: Rational, extended: bool = False) -> NumValue:
    """B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y)."""
    x, y = _as_fraction(x), _as_fraction(y)
    if _is_nonpos_int(x) or _is_nonpos_int(y):
        raise PoleError("beta pole")
    return gamma_ratio([x, y], [x + y], extended=extended)


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


# ---------------------------------------------------------------------------
# generalized hypergeometric series


@dataclass(frozen=True)
class PFQParams:
    """Exact parameters of a pFq series."""

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]

    def __init__(self, upper: Sequence[Rational], lower: Sequence[Rational]):
        object.__setattr__(self, "upper", tuple(_as_fraction(u) for u in upper))
        object.__setattr__(self, "lower", tuple(_as_fraction(v) for v in lower))
        for v in self.lower:
            if _is_nonpos_int(v):
                raise PoleError(f"lower parameter {v} is a nonpositive integer")

    @property
    def margin(self) -> Fraction:
        """Convergence margin at unit argument: sum(lower) - sum(upper)."""
        return sum(self.lower, Fraction(0)) - sum(self.upper, Fraction(0))

    def terminates(self) -> bool:
        return any(u.denominator == 1 and u <= 0 for u in self.upper)


def _series_terms(params: PFQParams, z, count: int, one):
    """First `count` terms of the pFq series at argument z, in the arithmetic
    of `one` (1.0 or mpf(1))."""
    terms = [one]
    t = one
    ups = [one * u.numerator / u.denominator for u in params.upper]
    los = [one * v.numerator / v.denominator for v in params.lower]
    for k in range(count - 1):
        num = one
        for a in ups:
            num = num * (a + k)
        den = one
        for b in los:
            den = den * (b + k)
        t = t * num / den / (k + 1) * z
        terms.append(t)
        if t == 0:
            break
    return terms


def _levin_u(terms, tol, one):
    """Levin u-transform of the partial sums of `terms`.

    Returns (value, err) with err = 4x the best successive-transform
    difference; raises NonconvergenceError if that never reaches tol.
    """
    sums = []
    acc = one * 0
    for t in terms:
        acc = acc + t
        sums.append(acc)
    if len(terms) < 4 or terms[min(len(terms) - 1, LEVIN_ORDER_CAP)] == 0:
        # terminated series: the partial sum is exact
        return sums[-1], float(abs(terms[-1]))
    best = None
    prev = None
    top = min(LEVIN_ORDER_CAP, len(terms) - 1)
    for n in range(2, top + 1):
        num = one * 0
        den = one * 0
        for j in range(n + 1):
            if terms[j] == 0:
                return sums[-1], float(abs(terms[-1]))
            w = (-1) ** j * math.comb(n, j) * ((one + j) / (one + n)) ** (n - 1)
            om = (one + j) * terms[j]
            num = num + w * sums[j] / om
            den = den + w / om
        if den == 0:
            continue
        est = num / den
        if prev is not None:
            diff = float(abs(est - prev))
            if best is None or diff < best[1]:
                best = (est, diff)
            if 4 * diff <= tol:
                return est, 4 * diff
        prev = est
    if best is not None and 4 * best[1] <= tol:
        return best[0], 4 * best[1]
    raise NonconvergenceError(
        f"Levin u-transform stalled at err~{4 * best[1] if best else math.inf:.2e} "
        f"(tol {tol:.2e})"
    )


def pfq(params: PFQParams, z: float, tol: float = 1e-12,
        extended: bool = False) -> NumValue:
    """pFq(params; z) for z in [0, 1], with sequence acceleration at z = 1."""
    if z < 0 or z > 1:
        raise DivergenceError("pfq implemented for z in [0, 1] only")
    one = mpmath.mpf(1) if extended else 1.0
    if extended:
        ctx = mpmath.workdps(EXTENDED_DPS)
        ctx.__enter__()
    try:
        if z == 0:
            return NumValue(1.0, 0.0)
        if z == 1 and not params.terminates():
            s = params.margin
            if s <= 0:
                raise DivergenceError(
                    f"pFq at 1 diverges: margin {s} <= 0")
            # accelerate: Levin-u on the tail after a direct head sum
            for head in (0, 12, 40, 120, 400):
                nterms = head + LEVIN_ORDER_CAP + 2
                terms = _series_terms(params, one, nterms, one)
                if len(terms) < nterms:  # terminated
                    val = sum(terms, one * 0)
                    return NumValue(float(val), ulp(float(abs(val))) * len(terms))
                head_sum = sum(terms[:head], one * 0)
                try:
                    tail_val, err = _levin_u(terms[head:], tol, one)
                except NonconvergenceError:
                    continue
                val = head_sum + tail_val
                return NumValue(float(val), err + len(terms) * float(EPS * abs(val)))
            raise NonconvergenceError(
                f"pfq at z=1 did not reach tol={tol:.2e} under the order cap")
        # direct series, |z| < 1 (or terminating at z = 1)
        acc = one * 0
        absacc = one * 0
        t = one
        ups = [one * u.numerator / u.denominator for u in params.upper]
        los = [one * v.numerator / v.denominator for v in params.lower]
        for k in range(ITERATION_CAP):
            acc = acc + t
            absacc = absacc + abs(t)
            num = one
            for a in ups:
                num = num * (a + k)
            den = one
            for b in los:
                den = den * (b + k)
            t = t * num / den / (k + 1) * z
            if t == 0:
                return NumValue(float(acc), float(EPS * absacc) * (k + 2))
            if k > 4 and float(abs(t)) / max(1e-300, 1.0 - z) <= 0.25 * tol:
                tail = float(abs(t)) / (1.0 - z)
                return NumValue(float(acc),
                                2 * tail + float(EPS * absacc) * (k + 2))
        raise NonconvergenceError(
            f"pfq series did not converge in {ITERATION_CAP} terms")
    finally:
        if extended:
            ctx.__exit__(None, None, None)


# ---------------------------------------------------------------------------
# Gauss 2F1 on [0, 1): direct series / connection to 1-t / logarithmic case


def hyp2f1(a: Rational, b: Rational, c: Rational, t: float,
           tol: float = 1e-12, extended: bool = False) -> NumValue:
    """2F1(a, b; c; t) for real t in [0, 1)."""
    if not (0.0 <= t < 1.0):
        raise DivergenceError("hyp2f1 implemented on [0, 1)")
    return _hyp2f1_from_u(a, b, c, 1.0 - t, tol, extended=extended, t=t)


def hyp2f1_from_1mt(a: Rational, b: Rational, c: Rational, u: float,
                    tol: float = 1e-12, extended: bool = False) -> NumValue:
    """2F1(a, b; c; 1-u) taking u = 1-t exactly (no cancellation near t=1)."""
    if not (0.0 < u <= 1.0):
        raise DivergenceError("hyp2f1 implemented on [0, 1)")
    return _hyp2f1_from_u(a, b, c, u, tol, extended=extended)


def _hyp2f1_from_u(a, b, c, u, tol, extended=False, t=None):
    a, b, c = _as_fraction(a), _as_fraction(b), _as_fraction(c)
    if _is_nonpos_int(c):
        raise PoleError(f"hyp2f1 lower parameter {c} is a nonpositive integer")
    if t is None:
        t = 1.0 - u
    params = PFQParams([a, b], [c])
    if t == 0.0:
        return NumValue(1.0, 0.0)
    if params.terminates() or t <= 0.75:
        return pfq(params, t, tol, extended=extended)
    d = c - a - b
    if d.denominator == 1:
        if d == 0:
            return _hyp2f1_log_case(a, b, u, tol, extended=extended)
        # integer d != 0: direct series still converges geometrically (ratio t);
        # the cap bounds how close to 1 this reaches.
        return pfq(params, t, tol, extended=extended)
    # generic connection to the 1-t variable
    f1 = pfq(PFQParams([a, b], [a + b - c + 1]), u, tol, extended=extended)
    f2 = pfq(PFQParams([c - a, c - b], [d + 1]), u, tol, extended=extended)
    g1 = gamma_ratio([c, d], [c - a, c - b], extended=extended)
    g2 = gamma_ratio([c, -d], [a, b], extended=extended)
    ud = NumValue(u ** float(d), abs(u ** float(d)) * 4 * EPS)
    return g1 * f1 + g2 * ud * f2


def _hyp2f1_log_case(a, b, u, tol, extended=False):
    """2F1(a, b; a+b; 1-u): Bateman-type expansion with the log(u) branch.

    Only the c = a+b specialization is implemented; other integer offsets of
    c-a-b raise UnsupportedCaseError where the direct series cannot be used.
    """
    if u <= 0:
        raise DivergenceError("log-case 2F1 needs u = 1-t > 0")
    one = mpmath.mpf(1) if extended else 1.0
    if extended:
        ctx = mpmath.workdps(EXTENDED_DPS)
        ctx.__enter__()
    try:
        lg = mpmath.log(one * u) if extended else math.log(u)
        af, bf = one * a.numerator / a.denominator, one * b.numerator / b.denominator
        if extended:
            psi_a, psi_b = mpmath.digamma(af), mpmath.digamma(bf)
            psi_n1 = -mpmath.euler
        else:
            psi_a, psi_b = _digamma_float(af), _digamma_float(bf)
            psi_n1 = -EULER_GAMMA
        coef = one  # (a)_n (b)_n / (n!)^2
        acc = one * 0
        absacc = one * 0
        n = 0
        while n < ITERATION_CAP:
            kn = 2 * psi_n1 - psi_a - psi_b
            term = coef * (kn - lg)
            acc = acc + term
            absacc = absacc + abs(term)
            if n > 2 and float(abs(term)) / (1.0 - float(u)) < 0.25 * tol * max(
                    1.0, float(abs(acc))):
                break
            coef = coef * (af + n) * (bf + n) / (n + 1) / (n + 1) * u
            psi_n1 = psi_n1 + one / (n + 1)
            psi_a = psi_a + one / (af + n)
            psi_b = psi_b + one / (bf + n)
            n += 1
        else:
            raise NonconvergenceError("log-case 2F1 series hit the cap")
        pre = gamma_ratio([a + b], [a, b], extended=extended)
        tail = 2 * float(abs(term)) / (1.0 - float(u))
        series = NumValue(float(acc),
                          tail + float(absacc) * EPS * (n + 4))
        return pre * series
    finally:
        if extended:
            ctx.__exit__(None, None, None)


def hyp2f1_at1(a: Rational, b: Rational, c: Rational,
               extended: bool = False) -> NumValue:
    """Gauss' evaluation: 2F1(a,b;c;1) = G(c)G(c-a-b)/(G(c-a)G(c-b))."""
    a, b, c = _as_fraction(a), _as_fraction(b), _as_fraction(c)
    if c - a - b <= 0:
        raise DivergenceError(f"2F1 at 1 diverges: c-a-b = {c - a - b} <= 0")
    return gamma_ratio([c, c - a - b], [c - a, c - b], extended=extended)


# ---------------------------------------------------------------------------
# contiguous relations used to derive the flat-connection matrices

CONTIGUOUS_RELATIONS = ("R1", "R3", "R5", "R9", "R13")


def contiguous_residual(relation_id: str, a: Rational, b: Rational,
                        c: Rational, t: float, tol: float = 1e-13) -> NumValue:
    """LHS - RHS of one of the five shift identities among 2F1 values.

    The residual of an exact identity; |value| should be below the combined
    error bounds of the evaluations.
    """
    a, b, c = _as_fraction(a), _as_fraction(b), _as_fraction(c)
    F = lambda aa, bb, cc: hyp2f1(aa, bb, cc, t, tol)

    f = F(a, b, c)
    if relation_id == "R1":
        lhs = (float(c - 2 * a) + float(a - b) * t) * f \
            + float(a) * (1.0 - t) * F(a + 1, b, c)
        rhs = float(c - a) * F(a - 1, b, c)
    elif relation_id == "R3":
        lhs = float(c - a - b) * f + float(a) * (1.0 - t) * F(a + 1, b, c)
        rhs = float(c - b) * F(a, b - 1, c)
    elif relation_id == "R5":
        lhs = float(c - a - 1) * f + float(a) * F(a + 1, b, c)
        rhs = float(c - 1) * F(a, b, c - 1)
    elif relation_id == "R9":
        lhs = (float(a - 1) + float(1 + b - c) * t) * f \
            + float(c - a) * F(a - 1, b, c)
        rhs = float(c - 1) * (1.0 - t) * F(a, b, c - 1)
    elif relation_id == "R13":
        lhs = float(c) * (1.0 - t) * f + float(c - a) * t * F(a, b, c + 1)
        rhs = float(c) * F(a, b - 1, c)
    else:
        raise ValueError(f"unknown relation {relation_id!r}; "
                         f"use one of {CONTIGUOUS_RELATIONS}")
    return lhs - rhs


# ---------------------------------------------------------------------------
# integral representation of 3F2 (independent cross-check of pfq)


def pfq_integral_3f2(a: Rational, b: Rational, c: Rational, d: Rational,
                     e: Rational, t: float, tol: float = 1e-10) -> NumValue:
    """3F2(a,b,c; d,e; t) by quadrature of the Euler-type kernel.

    Independent of the series path: the inner 2F1 runs through hyp2f1 and the
    outer integral through the quadrature module.
    """
    from .quad import jacobi_quad  # deferred: quad imports this module

    a, b, c, d, e = (_as_fraction(z) for z in (a, b, c, d, e))
    if not (0 < c < e):
        raise PreconditionError(f"need 0 < c < e, got c={c}, e={e}")
    if t == 0:
        return NumValue(1.0, 0.0)
    if not (0 < t <= 1):
        raise DivergenceError("integral representation used on (0, 1]")
    tf = Fraction(t) if t == 1 else t

    def f(x, one_minus_x):
        out = []
        for xi, mi in zip(x, one_minus_x):
            # u = 1 - t*x without cancellation: u = t*(1-x) + (1-t)
            u = float(tf * mi + (1 - tf)) if t == 1 else t * mi + (1.0 - t)
            out.append(_hyp2f1_from_u(a, b, d, u, tol * 1e-2).value.real)
        return np.asarray(out)

    w0 = float(c - 1)
    w1 = float(e - c - 1)
    integral = jacobi_quad(f, w0, w1, tol=tol * 0.5)
    pre = gamma_ratio([e], [c, e - c])
    return pre * integral
