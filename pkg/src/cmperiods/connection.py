"""The rank-2 flat connection of the family, exactly.

The connection matrix on each eigencomponent, its pullback along t -> t^l,
gauge transformations, the local bases extending the bundle across the
singular divisor {0, infinity} union mu_l with residue eigenvalues in [0,1),
and the induced residue/subspace data.

Conventions: a ``ConnMat`` holds the matrix w(t) of the connection 1-form in
the basis (omega_n, eta_n), acting on row vectors:  d(row) = row . w(t) dt.
Residues are taken of w(t) dt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .fibration import FibrationParams, alpha_beta, frac
from .ratfunc import Mat2, Poly, RatFunc


@dataclass(frozen=True)
class ConnMat:
    """Connection-form coefficient matrix in a chart ('t' or 's'=1/t)."""

    mat: Mat2
    chart: str = "t"

    def log_matrix(self) -> Mat2:
        """Coefficient of d(chart)/(chart)."""
        return self.mat * RatFunc.t(1)

    def residue_zero(self):
        return self.mat.map(lambda e: e.residue_at_zero())

    def residue_infinity(self):
        if self.chart != "t":
            raise PreconditionError("residue at infinity expects the t-chart")
        return self.mat.map(lambda e: e.residue_at_infinity())

    def residue_mu(self, l: int):
        return self.mat.map(lambda e: e.residue_at_mu(l))

    def to_chart_s(self) -> "ConnMat":
        """Transport the t-chart 1-form to s = 1/t (and vice versa)."""
        # w(t) dt = w(1/s) * (-1/s^2) ds
        m = Mat2([[-(self.mat[i, j].subs_inv()) / RatFunc(Poly.monomial(2))
                   for j in range(2)] for i in range(2)])
        return ConnMat(m, "s" if self.chart == "t" else "t")


POINTS = ("zero", "infinity", "zeta")


def gm_matrix_base(alpha: Fraction, beta: Fraction) -> ConnMat:
    """Connection on (omega_n, eta_n) for the base family (fiber over t).

    dt/t-coefficient: diag(1-beta, 1-alpha) . [[-1, -1], [1/(1-t), 1]].
    """
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise PreconditionError("need alpha, beta in (0,1)")
    one_m_t = RatFunc(Poly([1, -1]))  # 1 - t
    log_coeff = Mat2.diag(1 - beta, 1 - alpha) * Mat2([[-1, -1],
                                                       [1 / one_m_t, 1]])
    return ConnMat(log_coeff * RatFunc(1, Poly.monomial(1)), "t")


def gm_matrix(fp: FibrationParams, n: int, chart: str = "t") -> ConnMat:
    """Connection of the l-pulled-back family, in the chart t or s = 1/t."""
    al, be = alpha_beta(fp, n)
    l = fp.l
    if chart == "t":
        one_m_tl = RatFunc(Poly([1] + [0] * (l - 1) + [-1]))  # 1 - t^l
        log_coeff = Mat2.diag(l * (1 - be), l * (1 - al)) * Mat2(
            [[-1, -1], [1 / one_m_tl, 1]])
        return ConnMat(log_coeff * RatFunc(1, Poly.monomial(1)), "t")
    if chart == "s":
        one_m_sl = RatFunc(Poly([1] + [0] * (l - 1) + [-1]))
        sl = RatFunc(Poly.monomial(l))
        log_coeff = Mat2.diag(l * (1 - be), l * (1 - al)) * Mat2(
            [[1, 1], [sl / one_m_sl, -1]])
        return ConnMat(log_coeff * RatFunc(1, Poly.monomial(1)), "s")
    raise PreconditionError(f"chart must be 't' or 's', got {chart!r}")


def gauge_transform(conn: ConnMat, gauge: Mat2) -> ConnMat:
    """New connection matrix after the frame change (frame) . P."""
    if gauge.det().is_zero():
        raise PreconditionError("singular gauge matrix")
    pinv = gauge.inverse()
    return ConnMat(pinv * conn.mat * gauge + pinv * gauge.deriv(), conn.chart)


def _check_gauge(p: Mat2) -> Mat2:
    d = p.det()
    # determinant must be a nonzero monomial in t
    mono = d.num.degree >= 0 and sum(1 for a in d.num.c if a != 0) == 1 \
        and sum(1 for a in d.den.c if a != 0) == 1
    if d.is_zero() or not mono:
        raise AssertionError(f"gauge determinant {d} is not a monomial")
    return p


def canonical_basis_matrix(fp: FibrationParams, n: int, point: str) -> Mat2:
    """The frame matrix P putting the connection in canonical-extension form.

    Entries are rationals times integer powers of t (t-chart coordinates).
    """
    al, be = alpha_beta(fp, n)
    l = fp.l
    if point == "zeta":
        return Mat2.identity()
    if point == "zero":
        if al == be:
            return Mat2.identity()
        k = math.ceil((al - be) * l)
        return _check_gauge(Mat2([[1, 1 - be], [-1, -(1 - al)]])
                            * Mat2.diag(1, RatFunc.t(k)))
    if point == "infinity":
        if al + be != 1:
            return _check_gauge(
                Mat2.diag(1, RatFunc.t(-l))
                * Mat2([[1 - al - be, 0], [1 - al, 1]])
                * Mat2.diag(RatFunc.t(math.floor((1 - be) * l)),
                            RatFunc.t(math.floor(al * l))))
        return _check_gauge(Mat2.diag(RatFunc.t(math.floor(al * l)),
                                      RatFunc.t(math.floor(al * l) - l)))
    raise PreconditionError(f"point must be one of {POINTS}, got {point!r}")


def residue_matrix(fp: FibrationParams, n: int, point: str,
                   _perturb: bool = False):
    """Residue of the gauged connection at the point, as exact rationals.

    Computed symbolically from scratch (gauge transformation and residue
    extraction); equality with the closed-form table is a test, not an input.
    The ``_perturb`` hook deliberately corrupts one entry (negative testing).
    """
    conn = gauge_transform(gm_matrix(fp, n, "t"), canonical_basis_matrix(fp, n, point))
    if point == "zero":
        out = conn.residue_zero()
    elif point == "infinity":
        out = conn.residue_infinity()
    elif point == "zeta":
        out = conn.residue_mu(fp.l)
    else:
        raise PreconditionError(f"point must be one of {POINTS}, got {point!r}")
    if _perturb:
        out[0][0] += Fraction(1, 1000)
    return out


def residue_table(fp: FibrationParams, n: int, point: str):
    """The closed-form residue matrices at the canonical local bases."""
    al, be = alpha_beta(fp, n)
    l = fp.l
    if point == "zero":
        if al == be:
            c = l * (1 - al)
            return [[-c, -c], [c, c]]
        return [[Fraction(0), Fraction(0)], [Fraction(0), frac((be - al) * l)]]
    if point == "infinity":
        if al + be != 1:
            return [[frac((1 - be) * l), Fraction(0)],
                    [Fraction(0), frac(al * l)]]
        return [[frac(al * l), Fraction(0)], [(al - 1) * l, frac(al * l)]]
    if point == "zeta":
        return [[Fraction(0), Fraction(0)], [-(1 - al), Fraction(0)]]
    raise PreconditionError(f"point must be one of {POINTS}, got {point!r}")


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    pn = math.isqrt(x.numerator)
    pd = math.isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


def residue_spectrum(mat) -> tuple[Fraction, Fraction] | None:
    """Exact eigenvalues of a 2x2 rational matrix, or None if irrational."""
    tr = mat[0][0] + mat[1][1]
    det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    disc = tr * tr - 4 * det
    root = _rational_sqrt(disc)
    if root is None:
        return None
    lam1 = (tr - root) / 2
    lam2 = (tr + root) / 2
    return (lam1, lam2) if lam1 <= lam2 else (lam2, lam1)


def residue_spectrum_check(fp: FibrationParams, n: int) -> dict:
    """Assert every residue spectrum is rational and lies in [0, 1)."""
    rows = []
    ok = True
    for point in POINTS:
        spec = residue_spectrum(residue_matrix(fp, n, point))
        good = spec is not None and all(0 <= x < 1 for x in spec)
        ok = ok and good
        rows.append({"point": point,
                     "spectrum": [str(x) for x in spec] if spec else None,
                     "ok": good})
    return {"pass": ok, "n": n, "rows": rows}


@dataclass(frozen=True)
class Subspace:
    """The residue image N_t inside the canonical fiber, over one point."""

    point: str
    quotient_dim: int            # dim of fiber / N_t
    twist: int                   # power of t on the spanning vector
    span: tuple[Fraction, Fraction] | None  # coefficients on (omega_n, eta_n)


def n_subspace(fp: FibrationParams, n: int, point: str) -> Subspace:
    al, be = alpha_beta(fp, n)
    if point == "zero":
        k = math.ceil((al - be) * fp.l)
        return Subspace("zero", 1, k, (1 - be, -(1 - al)))
    if point == "infinity":
        return Subspace("infinity", 0, 0, None)
    if point == "zeta":
        return Subspace("zeta", 1, 0, (Fraction(0), Fraction(1)))
    raise PreconditionError(f"point must be one of {POINTS}, got {point!r}")


def f1_hodge_line(fp: FibrationParams, n: int) -> tuple[int, int]:
    """(i, j) with F^1 of the extended bundle = O(i) t^j omega_n."""
    al, be = alpha_beta(fp, n)
    l = fp.l
    fa, fb = math.floor(al * l), math.floor((1 - be) * l)
    ce = math.ceil((al - be) * l)
    if fa >= fb:
        i, j = (fb, 0) if al <= be else (fb - ce, ce)
    else:
        i, j = (fa, 0) if al <= be else (fa - ce, ce)
    if not 0 <= i < l:
        raise AssertionError(f"twist i={i} escaped [0, l); table logic broken")
    return i, j


def gr0_twist(fp: FibrationParams, n: int) -> int:
    """Degree k with Gr^0_F of the extended bundle isomorphic to O(k)."""
    al, be = alpha_beta(fp, n)
    l = fp.l
    fa, fb = math.floor(al * l), math.floor((1 - be) * l)
    if fa >= fb:
        k = -math.ceil((1 - al) * l) + (math.floor((be - al) * l) if al <= be else 0)
    else:
        k = (math.floor((be - al) * l) if al <= be else 0) - math.ceil(be * l)
    if k >= 0:
        raise AssertionError(f"Gr^0 twist k={k} should be negative")
    return k
