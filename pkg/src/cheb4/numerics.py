"""Complex polynomials and the reduction of quartics to the family (z^2-1)(z^2-a).

Everything downstream is built from three ingredients that live here: a dense
complex polynomial type with Horner evaluation, a deterministic closed-form
cubic solver, and the normalization/reduction pipeline that maps an arbitrary
quartic onto the one-parameter family p_a(z) = (z^2 - 1)(z^2 - a) with |a| <= 1
whenever its shape permits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Coefficients with magnitude below this times the largest coefficient are
# treated as zero during case classification (robustness to centering round-off).
ZERO_THRESHOLD = 1e-12


class DegenerateDegreeError(ValueError):
    """Leading coefficient vanished where a fixed degree was required."""


class NotAQuarticError(ValueError):
    """Input is not a degree-4 polynomial."""


class Poly:
    """Dense polynomial with complex coefficients, ascending in degree.

    Trailing (exactly) zero coefficients are trimmed on construction; the zero
    polynomial has an empty coefficient array and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
        nz = np.flatnonzero(arr)
        self.coeffs = arr[: nz[-1] + 1].copy() if nz.size else np.zeros(0, dtype=complex)

    @classmethod
    def monomial(cls, power: int, coefficient: complex = 1.0) -> "Poly":
        c = np.zeros(power + 1, dtype=complex)
        c[power] = coefficient
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def leading(self) -> complex:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return complex(self.coeffs[-1])

    @property
    def valuation(self) -> int:
        """Index of the first nonzero coefficient (order of the root at 0)."""
        if self.is_zero:
            raise ValueError("zero polynomial has no valuation")
        return int(np.flatnonzero(self.coeffs)[0])

    def __call__(self, z):
        """Horner evaluation; works on scalars and numpy arrays alike."""
        if self.is_zero:
            return 0j if np.isscalar(z) else np.zeros(np.shape(z), dtype=complex)
        if np.isscalar(z):
            val = 0j
            for c in self.coeffs[::-1]:
                val = val * z + c
            return complex(val)
        z = np.asarray(z, dtype=complex)
        val = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            val = val * z + c
        return val

    def derivative(self) -> "Poly":
        if self.degree < 1:
            return Poly([0])
        k = np.arange(1, self.degree + 1)
        return Poly(self.coeffs[1:] * k)

    def reversed(self, length: int | None = None) -> "Poly":
        """Return z^n * p(1/z) where n = max(degree, length-1)."""
        n = self.degree if length is None else max(self.degree, length - 1)
        c = np.zeros(n + 1, dtype=complex)
        c[n - self.degree :] = self.coeffs[::-1]
        return Poly(c)

    def compose_affine(self, alpha: complex, beta: complex) -> "Poly":
        """Return p(alpha*z + beta) by Horner composition."""
        inner = Poly([beta, alpha])
        out = Poly([0])
        for c in self.coeffs[::-1]:
            out = out * inner + Poly([c])
        return out

    def shifted_down(self, k: int) -> "Poly":
        """Divide by z^k; requires valuation >= k."""
        if k == 0:
            return Poly(self.coeffs)
        if self.is_zero or self.valuation < k:
            raise ValueError(f"polynomial is not divisible by z^{k}")
        return Poly(self.coeffs[k:])

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs), 1)
        c = np.zeros(n, dtype=complex)
        c[: len(self.coeffs)] += self.coeffs
        c[: len(other.coeffs)] += other.coeffs
        return Poly(c)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly([0])
            return Poly(np.convolve(self.coeffs, other.coeffs))
        return Poly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly([1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs.shape == other.coeffs.shape and bool(
            np.all(self.coeffs == other.coeffs)
        )

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self) -> str:
        return f"Poly({self.coeffs.tolist()!r})"


def poly_eval(p: Poly, z):
    """Evaluate p at z (Horner)."""
    return p(z)


def poly_derivative(p: Poly) -> Poly:
    """Formal derivative of p."""
    return p.derivative()


def _newton_polish_poly(coeffs_desc, root: complex, steps: int = 3) -> complex:
    """A few Newton steps on the polynomial given by descending coefficients."""
    deriv = [c * (len(coeffs_desc) - 1 - i) for i, c in enumerate(coeffs_desc[:-1])]
    for _ in range(steps):
        f = 0j
        for c in coeffs_desc:
            f = f * root + c
        fp = 0j
        for c in deriv:
            fp = fp * root + c
        if abs(fp) == 0.0:
            break
        step = f / fp
        if not (math.isfinite(step.real) and math.isfinite(step.imag)):
            break
        root = root - step
    return root


def solve_cubic(c3: complex, c2: complex, c1: complex, c0: complex):
    """Roots of c3*w^3 + c2*w^2 + c1*w + c0 (with multiplicity).

    Cardano's closed form; the (+/-) branch inside the radical is chosen by
    minimal total residual, and each root gets a few Newton polish steps.
    Raises DegenerateDegreeError when c3 = 0.
    """
    if abs(c3) == 0.0:
        raise DegenerateDegreeError("leading coefficient of the cubic is zero")
    b, c, d = c2 / c3, c1 / c3, c0 / c3
    shift = b / 3.0
    # depressed form t^3 + p t + q, w = t - shift
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d

    coeffs_desc = [c3, c2, c1, c0]

    def residual(roots):
        tot = 0.0
        for r in roots:
            f = 0j
            for cc in coeffs_desc:
                f = f * r + cc
            tot += abs(f)
        return tot

    if abs(p) == 0.0 and abs(q) == 0.0:
        roots = [-shift, -shift, -shift]
    else:
        disc = cmath.sqrt((q / 2.0) ** 2 + (p / 3.0) ** 3)
        omega = complex(-0.5, math.sqrt(3.0) / 2.0)
        candidates = []
        for sign in (1.0, -1.0):
            u3 = -q / 2.0 + sign * disc
            if abs(u3) == 0.0:
                # p must vanish too; fall back to plain cube roots of -q
                u = (-q) ** (1.0 / 3.0) if q != 0 else 0j
                cand = [u * omega**k - shift for k in range(3)]
                candidates.append(cand)
                continue
            u = u3 ** (1.0 / 3.0)
            cand = []
            for k in range(3):
                uk = u * omega**k
                tk = uk - p / (3.0 * uk)
                cand.append(tk - shift)
            candidates.append(cand)
        roots = min(candidates, key=residual)

    polished = [_newton_polish_poly(coeffs_desc, r) for r in roots]
    # keep the polish only where it actually helped (multiple roots can stall)
    out = []
    for raw, pol in zip(roots, polished):
        f_raw = abs(((c3 * raw + c2) * raw + c1) * raw + c0)
        f_pol = abs(((c3 * pol + c2) * pol + c1) * pol + c0)
        out.append(pol if f_pol <= f_raw else raw)
    out.sort(key=lambda r: (r.real, r.imag))
    return out


def normalize_quartic(a4: complex, a3: complex, a2: complex, a1: complex, a0: complex):
    """Normalize a quartic to monic-and-centered form.

    Returns (q, shift, lam) with q(z) = lam * p(z + shift), lam = 1/a4 and
    shift the centroid -a3/(4 a4); q is monic with vanishing cubic term.
    Replay: p(z) = (1/lam) * q(z - shift).
    """
    a4 = complex(a4)
    if abs(a4) == 0.0:
        raise NotAQuarticError("leading coefficient is zero")
    p = Poly([a0, a1, a2, a3, a4])
    shift = -complex(a3) / (4.0 * a4)
    lam = 1.0 / a4
    q = lam * p.compose_affine(1.0, shift)
    c = q.coeffs.copy()
    c = np.resize(c, 5)
    # monicity and the vanishing cubic term are exact identities; kill round-off
    c[4] = 1.0
    c[3] = 0.0
    return Poly(c), shift, lam


@dataclass(frozen=True)
class NormalForm:
    """Maximal decomposition p(z) = z^alpha * p0(z^beta) with p0 monic.

    beta is the order of the rotation symmetry group of p; beta = 1 means the
    group is trivial.  For a pure monomial beta is unconstrained and is set to
    1 by convention.
    """

    alpha: int
    beta: int
    p0: Poly

    def reconstruct(self) -> Poly:
        n = self.alpha + self.beta * max(self.p0.degree, 0)
        c = np.zeros(n + 1, dtype=complex)
        for k, ck in enumerate(self.p0.coeffs):
            c[self.alpha + self.beta * k] = ck
        return Poly(c)


def _nonzero_indices(coeffs: np.ndarray) -> np.ndarray:
    mags = np.abs(coeffs)
    tol = ZERO_THRESHOLD * mags.max() if mags.size else 0.0
    return np.flatnonzero(mags > tol)


def normal_form(p: Poly) -> NormalForm:
    """Maximal (alpha, beta) split of a monic centered polynomial."""
    if p.is_zero:
        raise ValueError("zero polynomial has no normal form")
    idx = _nonzero_indices(p.coeffs)
    alpha = int(idx[0])
    rel = idx - alpha
    nonconst = rel[rel > 0]
    beta = int(np.gcd.reduce(nonconst)) if nonconst.size else 1
    p0 = Poly(p.coeffs[alpha::beta])
    return NormalForm(alpha=alpha, beta=beta, p0=p0)


class CaseTag(Enum):
    """Shape classification of a monic centered quartic z^4 + c z^2 + d z + e."""

    CASE1 = "Case1"                      # c = 0, e != 0: z^4 + e, beta = 4
    CASE2 = "Case2"                      # e = 0, c != 0: z^2(z^2 + c), beta = 2
    CASE3_TWO_ROOTS = "Case3TwoRoots"    # (z^2 - g)^2: two double roots
    CASE3_GENERIC = "Case3Generic"       # (z^2-1)(z^2-a), a not in {-1, 0, 1}
    CASE4 = "Case4"                      # z(z^3 + d), beta = 3
    TRIVIAL_SYMMETRY = "TrivialSymmetry"  # d != 0 and not Case4: beta = 1
    MONOMIAL = "Monomial"                # z^4


@dataclass(frozen=True)
class QuarticReduction:
    """Record of the transforms taking a quartic to its reduced representative.

    The reduced polynomial r relates to the input by
        input(z) = (1/scale_lambda) * r((z - affine_shift) / pre_scale),
    so replaying the recorded transforms reconstructs the input coefficients.
    For CASE3_GENERIC the reduced polynomial is (z^2-1)(z^2-a) with |a| <= 1.
    """

    case_tag: CaseTag
    a: complex | None
    affine_shift: complex
    scale_lambda: complex
    pre_scale: complex
    reduced: Poly

    def replay(self) -> Poly:
        inv = self.reduced.compose_affine(1.0 / self.pre_scale, -self.affine_shift / self.pre_scale)
        return (1.0 / self.scale_lambda) * inv


def _family_poly(a: complex) -> Poly:
    return Poly([a, 0, -(a + 1.0), 0, 1.0])  # (z^2 - 1)(z^2 - a)


def reduce_to_family(p: Poly) -> QuarticReduction:
    """Classify a monic centered quartic and, in the generic biquadratic case,
    rescale it onto (z^2 - 1)(z^2 - a) with |a| <= 1.

    Results with case_tag CASE3_GENERIC satisfy a not in {-1, 0, 1}; inputs
    that land on a = 1 (two double roots) or a = -1 (which forces c = 0, the
    unicritical shape) are re-tagged instead.
    """
    if p.degree != 4:
        raise NotAQuarticError(f"degree {p.degree} input; expected 4")
    scale = float(np.abs(p.coeffs).max())
    if abs(p.leading - 1.0) > ZERO_THRESHOLD * scale or abs(p.coeffs[3]) > ZERO_THRESHOLD * scale:
        raise ValueError("input must be monic and centered (use normalize_quartic first)")

    def z(x) -> bool:
        return abs(x) <= ZERO_THRESHOLD * scale

    c, d, e = complex(p.coeffs[2]), complex(p.coeffs[1]), complex(p.coeffs[0])
    identity = dict(affine_shift=0j, scale_lambda=1.0 + 0j, pre_scale=1.0 + 0j)

    if not z(d):
        tag = CaseTag.CASE4 if (z(c) and z(e)) else CaseTag.TRIVIAL_SYMMETRY
        return QuarticReduction(case_tag=tag, a=None, reduced=p, **identity)
    if z(c) and z(e):
        return QuarticReduction(case_tag=CaseTag.MONOMIAL, a=None, reduced=p, **identity)
    if z(c):
        return QuarticReduction(case_tag=CaseTag.CASE1, a=None, reduced=p, **identity)
    if z(e):
        return QuarticReduction(case_tag=CaseTag.CASE2, a=None, reduced=p, **identity)

    # Case 3: p = (z^2 - g1)(z^2 - g2) with g1 g2 = e != 0, g1 + g2 = -c.
    disc = cmath.sqrt(c * c - 4.0 * e)
    g1 = (-c - disc) / 2.0 if abs(-c - disc) >= abs(-c + disc) else (-c + disc) / 2.0
    g2 = e / g1
    if abs(g2) > abs(g1):
        g1, g2 = g2, g1
    a = g2 / g1
    pre_scale = cmath.sqrt(g1)
    lam = 1.0 / (g1 * g1)
    if abs(a - 1.0) <= 1e-12:
        tag, a = CaseTag.CASE3_TWO_ROOTS, 1.0 + 0j
    elif abs(a + 1.0) <= 1e-12:
        tag, a = CaseTag.CASE1, -1.0 + 0j
    else:
        tag = CaseTag.CASE3_GENERIC
    return QuarticReduction(
        case_tag=tag,
        a=a,
        affine_shift=0j,
        scale_lambda=lam,
        pre_scale=pre_scale,
        reduced=_family_poly(a),
    )


def reduce_quartic(a4: complex, a3: complex, a2: complex, a1: complex, a0: complex) -> QuarticReduction:
    """Full pipeline: normalize a raw quartic, then reduce to the family.

    The returned record composes both stages, so replay() reconstructs the raw
    input coefficients.
    """
    q, shift, lam0 = normalize_quartic(a4, a3, a2, a1, a0)
    red = reduce_to_family(q)
    return QuarticReduction(
        case_tag=red.case_tag,
        a=red.a,
        affine_shift=shift,
        scale_lambda=lam0 * red.scale_lambda,
        pre_scale=red.pre_scale,
        reduced=red.reduced,
    )
