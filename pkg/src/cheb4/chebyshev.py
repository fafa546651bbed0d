"""Chebyshev's root-finding iteration as a rational map.

For a polynomial p the iteration is

    C_p(z) = z - [1 + L_p(z)/2] * p(z)/p'(z),    L_p = p p'' / (p')^2,

a degree-(3d-2) rational map for deg p = d.  For the quartic family
p_a(z) = (z^2-1)(z^2-a) the map has the closed form

          42 z^10 + A z^8 + B z^6 + C z^4 + D z^2 + a^2(a+1)
    C_a = --------------------------------------------------,
                     8 z^3 (2 z^2 - (a+1))^3

with A = -51(a+1), B = 4(5a^2+3a+5), C = -3(a^3-7a^2-7a+1) and
D = -6a(a^2+3a+1).  This module builds both forms and enumerates the
critical points and fixed points of C_a together with their multipliers.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .numerics import DegenerateDegreeError, Poly, solve_cubic

# |z| beyond this is evaluated through the conjugated chart w = 1/z so the
# degree-10 numerator never overflows double range.
CHART_RADIUS = 1e8
# |den| below this times |num| counts as the point at infinity.
INF_RATIO = 1e-14

EXCLUDED_PARAMETERS = (-1.0, 0.0, 1.0)


class DegenerateParameterWarning(UserWarning):
    """a in {-1, 0, 1}: the family map degenerates (common num/den roots)."""


class PoleError(ValueError):
    """Evaluation requested at (or numerically on top of) a pole."""


class IndeterminateValueError(ArithmeticError):
    """num and den both vanish: 0/0 at a common root of a degenerate map."""


class _Infinity:
    """Singleton marker for the point at infinity on the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


def is_infinity(x) -> bool:
    return x is INFINITY


@dataclass(frozen=True)
class RationalMap:
    """num/den with projective (overflow-safe) evaluation.

    Evaluation returns a finite complex number, or INFINITY when the
    denominator underflows relative to the numerator by the INF_RATIO factor.
    """

    num: Poly
    den: Poly

    def __call__(self, z: complex):
        return eval_map(self, z)

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def multiplier_at_infinity(self) -> complex:
        """Derivative at w = 0 of the conjugated map w -> 1/self(1/w).

        Valid for deg num = deg den + 1 (infinity then is a fixed point); the
        value is den.leading / num.leading.
        """
        if self.num.degree != self.den.degree + 1:
            raise ValueError("infinity is not a simple fixed point of this map")
        return self.den.leading / self.num.leading


def eval_map(m: RationalMap, z: complex):
    """Evaluate m at z; INFINITY marks values beyond the INF_RATIO horizon.

    Inputs with |z| > CHART_RADIUS go through the w = 1/z chart so no
    intermediate quantity overflows.  An exact 0/0 raises
    IndeterminateValueError (only possible when num and den share a root).
    """
    z = complex(z)
    if abs(z) > CHART_RADIUS:
        w = 1.0 / z
        k = m.num.degree - m.den.degree
        nrev = m.num.reversed()(w)
        drev = m.den.reversed()(w)
        if k >= 0:
            dval = w**k * drev
            nval = nrev
        else:
            nval = w ** (-k) * nrev
            dval = drev
    else:
        nval = m.num(z)
        dval = m.den(z)
    if nval == 0 and dval == 0:
        raise IndeterminateValueError(f"0/0 at z = {z}")
    if abs(dval) < INF_RATIO * abs(nval):
        return INFINITY
    return nval / dval


def chebyshev_of(p: Poly) -> RationalMap:
    """Assemble C_p = z - (1 + L_p/2) p/p' by polynomial algebra.

    num = 2 z p'^3 - 2 p p'^2 - p^2 p'' and den = 2 p'^3; a common monomial
    factor z^k (and only that) is cancelled, so monomial-like inputs reduce to
    the linear map they define.
    """
    if p.degree < 2:
        raise DegenerateDegreeError("Chebyshev's method needs deg p >= 2")
    p1 = p.derivative()
    p2 = p1.derivative()
    zp = Poly.monomial(1)
    num = 2.0 * (zp * p1 * p1 * p1) - 2.0 * (p * p1 * p1) - p * p * p2
    den = 2.0 * (p1 * p1 * p1)
    k = min(num.valuation, den.valuation)
    return RationalMap(num=num.shifted_down(k), den=den.shifted_down(k))


def family_coefficients(a: complex):
    """The numerator coefficients (A, B, C, D) of the closed-form C_a."""
    a = complex(a)
    A = -51.0 * (a + 1.0)
    B = 4.0 * (5.0 * a * a + 3.0 * a + 5.0)
    C = -3.0 * (a**3 - 7.0 * a * a - 7.0 * a + 1.0)
    D = -6.0 * a * (a * a + 3.0 * a + 1.0)
    return A, B, C, D


def is_excluded_parameter(a: complex, tol: float = 1e-12) -> bool:
    return any(abs(complex(a) - x) <= tol for x in EXCLUDED_PARAMETERS)


def build_family_map(a: complex) -> RationalMap:
    """Closed-form C_a for p_a(z) = (z^2-1)(z^2-a).

    Numerator 42 z^10 + A z^8 + B z^6 + C z^4 + D z^2 + a^2(a+1); denominator
    8 z^3 (2z^2 - (a+1))^3, expanded once so evaluation is dense Horner.
    a in {-1, 0, 1} still builds but carries a DegenerateParameterWarning.
    """
    a = complex(a)
    if is_excluded_parameter(a):
        warnings.warn(f"degenerate family parameter a = {a}", DegenerateParameterWarning, stacklevel=2)
    A, B, C, D = family_coefficients(a)
    s = a + 1.0
    num = Poly([a * a * s, 0, D, 0, C, 0, B, 0, A, 0, 42.0])
    den = Poly([0, 0, 0, -8.0 * s**3, 0, 48.0 * s * s, 0, -96.0 * s, 0, 64.0])
    return RationalMap(num=num, den=den)


def family_roots(a: complex):
    """The four superattracting fixed points +-1, +-sqrt(a), sorted by (re, im)."""
    r = cmath.sqrt(a)
    roots = [1.0 + 0j, -1.0 + 0j, r, -r]
    roots.sort(key=lambda w: (w.real, w.imag))
    return roots


def family_poles(a: complex):
    """The three poles 0, +-sqrt((a+1)/2), sorted by (re, im)."""
    q = cmath.sqrt((a + 1.0) / 2.0)
    poles = [0j, q, -q]
    poles.sort(key=lambda w: (w.real, w.imag))
    return poles


def eval_derivative(a: complex, z: complex) -> complex:
    """Closed-form derivative

        C_a'(z) = 3 (z^2-1)^2 (z^2-a)^2 [28 z^4 - 8(a+1) z^2 + (a+1)^2]
                  -----------------------------------------------------
                             8 z^4 (2 z^2 - (a+1))^4

    Raises PoleError when z sits on a pole of C_a.
    """
    a, z = complex(a), complex(z)
    if any(abs(z - p) < 1e-9 for p in family_poles(a)):
        raise PoleError(f"z = {z} is a pole of the iteration map")
    z2 = z * z
    s = a + 1.0
    num = 3.0 * (z2 - 1.0) ** 2 * (z2 - a) ** 2 * (28.0 * z2 * z2 - 8.0 * s * z2 + s * s)
    den = 8.0 * z2 * z2 * (2.0 * z2 - s) ** 4
    return num / den


class CriticalKind(Enum):
    ROOT_OF_P = "root_of_p"
    POLE = "pole"
    FREE = "free"


_CRITICAL_KIND_ORDER = {CriticalKind.ROOT_OF_P: 0, CriticalKind.POLE: 1, CriticalKind.FREE: 2}


@dataclass(frozen=True)
class CriticalPoint:
    location: complex
    multiplicity: int
    kind: CriticalKind


def critical_points(a: complex):
    """All 18 critical points of C_a (with multiplicity).

    Roots of p_a and poles of C_a each count twice; the remaining four are the
    simple (free) critical points solving 28 z^4 - 8(a+1) z^2 + (a+1)^2 = 0,
    i.e. z^2 = (2 +- i sqrt(3))(a+1)/14.
    """
    a = complex(a)
    pts = [CriticalPoint(r, 2, CriticalKind.ROOT_OF_P) for r in family_roots(a)]
    pts += [CriticalPoint(p, 2, CriticalKind.POLE) for p in family_poles(a)]
    for sign in (1.0, -1.0):
        c = cmath.sqrt((2.0 + sign * 1j * math.sqrt(3.0)) * (a + 1.0) / 14.0)
        pts.append(CriticalPoint(c, 1, CriticalKind.FREE))
        pts.append(CriticalPoint(-c, 1, CriticalKind.FREE))
    pts.sort(key=lambda q: (_CRITICAL_KIND_ORDER[q.kind], q.location.real, q.location.imag))
    return pts


class FixedPointKind(Enum):
    ROOT = "root"
    EXTRANEOUS = "extraneous"
    INFINITY = "infinity"


class Classification(Enum):
    SUPERATTRACTING = "superattracting"
    ATTRACTING = "attracting"
    RATIONALLY_INDIFFERENT = "rationally_indifferent"
    IRRATIONALLY_INDIFFERENT = "irrationally_indifferent"
    REPELLING = "repelling"


_FIXED_KIND_ORDER = {
    FixedPointKind.ROOT: 0,
    FixedPointKind.EXTRANEOUS: 1,
    FixedPointKind.INFINITY: 2,
}


@dataclass(frozen=True)
class FixedPointRecord:
    location: object  # complex, or INFINITY
    kind: FixedPointKind
    multiplier: complex
    classification: Classification


def classify_multiplier(lam: complex) -> Classification:
    """Attracting/indifferent/repelling bucket for a multiplier.

    Indifference is decided within 1e-9 of the unit circle; the
    rational/irrational split checks whether lam is a root of unity of order
    <= 64 within the same tolerance.
    """
    m = abs(lam)
    if m < 1e-9:
        return Classification.SUPERATTRACTING
    if m < 1.0 - 1e-9:
        return Classification.ATTRACTING
    if abs(m - 1.0) <= 1e-9:
        if any(abs(lam**q - 1.0) <= 1e-9 for q in range(1, 65)):
            return Classification.RATIONALLY_INDIFFERENT
        return Classification.IRRATIONALLY_INDIFFERENT
    return Classification.REPELLING


def extraneous_multiplier(a: complex, z: complex) -> complex:
    """Multiplier formula at an extraneous fixed point:

        lambda(z) = 2 [3 - 12 z^2 (2z^2 - (a+1)) / (6z^2 - (a+1))^2].
    """
    a, z = complex(a), complex(z)
    z2 = z * z
    s = a + 1.0
    return 2.0 * (3.0 - 12.0 * z2 * (2.0 * z2 - s) / (6.0 * z2 - s) ** 2)


def extraneous_squares(a: complex):
    """The three values w = z^2 at extraneous fixed points: roots of

        f(w) = 22 w^3 - 23(a+1) w^2 + (5a^2+16a+5) w - a(a+1).
    """
    a = complex(a)
    return solve_cubic(22.0, -23.0 * (a + 1.0), 5.0 * a * a + 16.0 * a + 5.0, -a * (a + 1.0))


def _polish_on_q(a: complex, z: complex, steps: int = 2) -> complex:
    # Newton on Q(z) = 22 z^6 - 23(a+1) z^4 + (5a^2+16a+5) z^2 - a(a+1)
    s = a + 1.0
    c4, c2, c0 = -23.0 * s, 5.0 * a * a + 16.0 * a + 5.0, -a * s
    for _ in range(steps):
        z2 = z * z
        q = ((22.0 * z2 + c4) * z2 + c2) * z2 + c0
        dq = (6.0 * 22.0 * z2 * z2 + 4.0 * c4 * z2 + 2.0 * c2) * z
        if abs(dq) == 0.0:
            break
        z = z - q / dq
    return z


def fixed_points(a: complex):
    """The 11 fixed points of C_a (degree + 1, with multiplicity).

    Four superattracting roots of p_a, six extraneous points (+-sqrt(w) over
    the cubic roots w), and the repelling fixed point at infinity with
    multiplier 32/21.  Records are sorted by (kind, re, im).
    """
    a = complex(a)
    fam = build_family_map(a)
    records = []
    for r in family_roots(a):
        lam = eval_derivative(a, r)
        records.append(FixedPointRecord(r, FixedPointKind.ROOT, lam, classify_multiplier(lam)))
    for w in extraneous_squares(a):
        root = _polish_on_q(a, cmath.sqrt(w))
        for z in (root, -root):
            lam = extraneous_multiplier(a, z)
            records.append(
                FixedPointRecord(z, FixedPointKind.EXTRANEOUS, lam, classify_multiplier(lam))
            )
    lam_inf = fam.multiplier_at_infinity()
    records.append(
        FixedPointRecord(INFINITY, FixedPointKind.INFINITY, lam_inf, classify_multiplier(lam_inf))
    )
    records.sort(
        key=lambda rec: (
            _FIXED_KIND_ORDER[rec.kind],
            (0.0, 0.0) if is_infinity(rec.location) else (rec.location.real, rec.location.imag),
        )
    )
    return records


def multiplier_at(a: complex, fp: FixedPointRecord) -> complex:
    """Multiplier of a fixed point, by the route appropriate to its kind.

    Roots use the closed-form derivative, extraneous points the lambda
    formula, and infinity the derivative at 0 of w -> 1/C_a(1/w).
    """
    if fp.kind is FixedPointKind.INFINITY:
        return build_family_map(a).multiplier_at_infinity()
    if fp.kind is FixedPointKind.EXTRANEOUS:
        return extraneous_multiplier(a, fp.location)
    return eval_derivative(a, fp.location)


@dataclass(frozen=True)
class FreeCriticalValue:
    """A free critical point c, its critical value C_a(c), and (for real a)
    the rational certificate values R(a), S(a) with

        C_a(c1) = [R(a) + i sqrt(3) S(a)] / [8^3 c1 (a+1)^3 (-47 + 8 i sqrt(3))].
    """

    point: complex
    value: complex
    r_value: float | None = None
    s_value: float | None = None
    reconstructed: complex | None = None


def _rs_values(a: float):
    R = -(1345.0 * a**4 + 28508.0 * a**3 + 48838.0 * a**2 + 28508.0 * a + 1345.0)
    S = -3.0 * (111.0 * a**4 - 732.0 * a**3 + 3802.0 * a**2 - 732.0 * a + 111.0)
    return R, S


def free_critical_values(a: complex):
    """Critical values at the four free critical points.

    For real a in (-1,1)\\{0} the record for the principal point c1 (and its
    companions) also carries R(a), S(a) and the value reconstructed from them,
    which matches the direct evaluation to ~1e-15 relative.
    """
    a = complex(a)
    fam = build_family_map(a)
    real_param = abs(a.imag) == 0.0 and not is_excluded_parameter(a) and abs(a) < 1.0
    c1 = cmath.sqrt((2.0 + 1j * math.sqrt(3.0)) * (a + 1.0) / 14.0)
    c2 = cmath.sqrt((2.0 - 1j * math.sqrt(3.0)) * (a + 1.0) / 14.0)
    out = []
    for c in (c1, -c1, c2, -c2):
        value = eval_map(fam, c)
        rec = FreeCriticalValue(point=c, value=value)
        if real_param:
            R, S = _rs_values(a.real)
            denom = 512.0 * c * (a + 1.0) ** 3 * complex(-47.0, 8.0 * math.sqrt(3.0))
            if c in (c1, -c1):
                rec = replace(rec, r_value=R, s_value=S,
                              reconstructed=(R + 1j * math.sqrt(3.0) * S) / denom)
            else:
                # c2 = conj(c1); the certificate conjugates and flips sign
                denom = 512.0 * c * (a + 1.0) ** 3 * complex(47.0, 8.0 * math.sqrt(3.0))
                rec = replace(rec, r_value=R, s_value=S,
                              reconstructed=-(R - 1j * math.sqrt(3.0) * S) / denom)
        out.append(rec)
    return out
