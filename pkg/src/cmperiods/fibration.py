"""Exact combinatorics of the surface family y^p = x^a (1-x)^b (t^l - x)^(p-b).

Parameters, fractional-part data per eigencomponent, the multiplicity-counted
indicator on Z/lpZ, Hodge positions and dimensions, and the basis index sets.
Everything here is exact integer/rational arithmetic; no floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError

PRIMALITY_CAP = 10 ** 6


def is_prime(n: int) -> bool:
    """Trial division, adequate for desk-scale parameters."""
    if n < 2 or n > PRIMALITY_CAP:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def frac(x: Fraction) -> Fraction:
    """Fractional part in [0, 1)."""
    return x - math.floor(x)


@dataclass(frozen=True)
class FibrationParams:
    """The integers (p, l, a, b) defining the family; c = p - b throughout."""

    p: int
    l: int
    a: int
    b: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionError(f"p must be prime, got {self.p}")
        if not is_prime(self.l):
            raise PreconditionError(f"l must be prime, got {self.l}")
        if self.p == self.l:
            raise PreconditionError("p and l must be distinct primes")
        if not (0 < self.a < self.p):
            raise PreconditionError(f"need 0 < a < p, got a={self.a}")
        if not (0 < self.b < self.p):
            raise PreconditionError(f"need 0 < b < p, got b={self.b}")

    @property
    def c(self) -> int:
        return self.p - self.b

    @property
    def lp(self) -> int:
        return self.l * self.p

    def units(self) -> list[int]:
        """(Z/lpZ)^x as the sorted set of representatives in 1..lp-1."""
        return [h for h in range(1, self.lp) if math.gcd(h, self.lp) == 1]

    def check_n(self, n: int):
        if not (1 <= n <= self.p - 1):
            raise PreconditionError(f"n must be in 1..{self.p - 1}, got {n}")

    def __str__(self):
        return f"(p={self.p}, l={self.l}, a={self.a}, b={self.b})"


@dataclass(frozen=True)
class FracParams:
    """Fractional-part data of one eigencomponent (exact)."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    mu: Fraction


@dataclass(frozen=True)
class HodgeDims:
    f2: int    # h^{2,0}
    gr1: int   # h^{1,1}
    gr0: int   # h^{0,2}

    @property
    def total(self) -> int:
        return self.f2 + self.gr1 + self.gr0


@dataclass(frozen=True)
class IndexSets:
    i1: tuple[int, ...]
    i2: tuple[int, ...]


def alpha_beta(fp: FibrationParams, n: int) -> tuple[Fraction, Fraction]:
    fp.check_n(n)
    return frac(Fraction(n * fp.a, fp.p)), frac(Fraction(n * fp.b, fp.p))


def frac_params(fp: FibrationParams, n: int, m: int) -> FracParams:
    """alpha = {na/p}, beta = {nb/p}, gamma = 1 - beta, mu = {m/l}."""
    al, be = alpha_beta(fp, n)
    return FracParams(al, be, 1 - be, frac(Fraction(m, fp.l)))


def eps(fp: FibrationParams, i: int) -> int:
    """Multiplicity-counted indicator on Z/lpZ.

    Counts how often i falls in the positive congruence list minus the
    negative one.  When the six classes are distinct this is the usual
    {1, -1, 0}-valued table; coincidences (e.g. p=2, l=3) are summed.
    """
    lp = fp.lp
    i = i % lp
    pos = [(fp.l * fp.b) % lp, fp.p % lp, (fp.l * (fp.p - fp.b)) % lp,
           (fp.l * (fp.b - fp.a) + fp.p) % lp]
    neg = [(fp.l * fp.b + fp.p) % lp, (fp.l * (fp.p - fp.a) + fp.p) % lp]
    return pos.count(i) - neg.count(i)


def eps_support(fp: FibrationParams) -> dict[int, int]:
    """The nonzero values of eps, keyed by residue."""
    out = {}
    for i in range(fp.lp):
        e = eps(fp, i)
        if e:
            out[i] = e
    return out


def hodge_position(fp: FibrationParams, h: int) -> int:
    """p(h) = sum_i eps(i) {-hi/lp}, asserted to land in {0, 1, 2}."""
    lp = fp.lp
    if math.gcd(h, lp) != 1:
        raise PreconditionError(f"h={h} is not a unit mod {lp}")
    s = Fraction(0)
    for i, e in eps_support(fp).items():
        s += e * frac(Fraction(-h * i, lp))
    if s.denominator != 1 or s < 0 or s > 2:
        raise AssertionError(
            f"eps-sum {s} for h={h} is not an integer in [0,2]: eps is broken")
    return int(s)


def hodge_dims(fp: FibrationParams, n: int) -> HodgeDims:
    """Hodge numbers (h^{2,0}, h^{1,1}, h^{0,2}) of the n-th eigencomponent."""
    al, be = alpha_beta(fp, n)
    l = fp.l
    f2 = min(math.floor(al * l), math.floor((1 - be) * l)) \
        - max(0, math.floor((al - be) * l))
    gr1 = abs(math.floor(al * l) - math.floor((1 - be) * l)) \
        + math.floor(abs(al - be) * l)
    gr0 = min(math.floor((1 - al) * l), math.floor(be * l)) \
        - max(0, math.floor((be - al) * l))
    return HodgeDims(f2, gr1, gr0)


def index_sets(fp: FibrationParams, n: int) -> IndexSets:
    """Index sets I^1_n (F^1 basis) and I^2_n (F^2 basis) of twists m."""
    al, be = alpha_beta(fp, n)
    l = fp.l
    lo2 = max(1, math.ceil((al - be) * l))
    hi2 = min(math.floor(al * l), math.floor((1 - be) * l))
    i2 = tuple(range(lo2, hi2 + 1))
    top = max(math.floor(al * l), math.floor((1 - be) * l))
    if al < be:
        i1 = tuple(range(-math.floor((be - al) * l), 0)) + tuple(range(1, top + 1))
    else:
        i1 = tuple(range(1, top + 1))
    return IndexSets(i1, i2)


def char_to_mn(fp: FibrationParams, h: int) -> tuple[int, int]:
    """Split a character index h in (Z/lp)^x into (m, n) = (h mod l, h mod p)."""
    if math.gcd(h, fp.lp) != 1:
        raise PreconditionError(f"h={h} is not a unit mod {fp.lp}")
    return h % fp.l, h % fp.p


def mn_to_char(fp: FibrationParams, m: int, n: int) -> int:
    """CRT inverse of char_to_mn."""
    for h in range(1, fp.lp):
        if h % fp.l == m % fp.l and h % fp.p == n % fp.p:
            return h
    raise PreconditionError(f"no unit h with h=({m} mod l, {n} mod p)")


def hodge_side(fp: FibrationParams, h: int) -> int:
    """Hodge position of h read off the index sets (not the eps-sum)."""
    m, n = char_to_mn(fp, h)
    sets = index_sets(fp, n)
    if any(m % fp.l == x % fp.l for x in sets.i2):
        return 2
    if any(m % fp.l == x % fp.l for x in sets.i1):
        return 1
    return 0


def good_m_window(fp: FibrationParams, n: int) -> list[int]:
    """Twists m with min{[al l],[(1-be)l]} < m <= max{...} (both floors)."""
    al, be = alpha_beta(fp, n)
    lo = min(math.floor(al * fp.l), math.floor((1 - be) * fp.l))
    hi = max(math.floor(al * fp.l), math.floor((1 - be) * fp.l))
    return list(range(lo + 1, hi + 1))


def cm_rank_check(fp: FibrationParams) -> dict:
    """Per-n Hodge sums must be l-1 and the total (l-1)(p-1)."""
    rows = []
    ok = True
    total = 0
    for n in range(1, fp.p):
        d = hodge_dims(fp, n)
        good = d.total == fp.l - 1
        ok = ok and good
        total += d.total
        rows.append({"n": n, "f2": d.f2, "gr1": d.gr1, "gr0": d.gr0,
                     "sum": d.total, "ok": good})
    expected = (fp.l - 1) * (fp.p - 1)
    return {"pass": ok and total == expected, "total": total,
            "expected_total": expected, "rows": rows}
