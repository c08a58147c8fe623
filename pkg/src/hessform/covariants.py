"""Classical covariants of forms.

The Aronhold invariant of a ternary cubic is written once, in
:func:`aronhold_formula`, as a polynomial in ten abstract coefficients. The
cubic reading feeds it the normalized coefficients of a cubic; the Clebsch
reading feeds it third partial derivatives of a form of any degree. The
formula only uses ``+``, ``-`` and ``*``, so the same code also runs on
:class:`~hessform.poly.EpsForm` arguments for first-order variations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import NamedTuple, Sequence

from .poly import Form, derivative, linear_substitute
from .xlinalg import RationalMatrix, SingularMatrixError, determinant


class AronholdCoefficients(NamedTuple):
    a3: object
    a2: object
    b2: object
    a1: object
    b1: object
    c1: object
    a0: object
    b0: object
    c0: object
    d0: object


# Third-derivative index for each coefficient in the Clebsch reading
# (x, y, z are variables 0, 1, 2).
CLEBSCH_INDICES = AronholdCoefficients(
    a3=(2, 2, 2),
    a2=(0, 2, 2),
    b2=(1, 2, 2),
    a1=(0, 0, 2),
    b1=(0, 1, 2),
    c1=(1, 1, 2),
    a0=(0, 0, 0),
    b0=(0, 0, 1),
    c0=(0, 1, 1),
    d0=(1, 1, 1),
)

# Binomial multiplier of each coefficient in the cubic normal form.
_CUBIC_MULTIPLIERS = AronholdCoefficients(1, 3, 3, 3, 6, 3, 1, 3, 3, 1)


def _exponents(index: tuple[int, int, int]) -> tuple[int, int, int]:
    e = [0, 0, 0]
    for i in index:
        e[i] += 1
    return tuple(e)


def aronhold_formula(a3, a2, b2, a1, b1, c1, a0, b0, c0, d0):
    """The Aronhold invariant as a polynomial in its ten coefficients."""
    return (
        -(a0 * a2 - a1 * a1) * c1 * c1
        + (a0 * a3 - a1 * a2) * c0 * c1
        - (a1 * a3 - a2 * a2) * c0 * c0
        - b0 * b0 * a3 * c1
        + b0 * b1 * (3 * a2 * c1 + a3 * c0)
        - (b0 * b2 + 2 * b1 * b1) * (a1 * c1 + a2 * c0)
        + b1 * b2 * (a0 * c1 + 3 * a1 * c0)
        - b2 * b2 * a0 * c0
        + d0 * (b0 * (a1 * a3 - a2 * a2) - b1 * (a0 * a3 - a1 * a2) + b2 * (a0 * a2 - a1 * a1))
        + (b0 * b2 - b1 * b1) * (b0 * b2 - b1 * b1)
    )


def _require_ternary(f: Form, min_degree: int) -> int:
    if f.arity != 3:
        raise ValueError(f"expected a ternary form, got arity {f.arity}")
    if not f.is_homogeneous:
        raise ValueError("form is not homogeneous")
    d = f.degree
    if d < min_degree:
        raise ValueError(f"degree {d} is below the minimum {min_degree}")
    return d


def cubic_coefficients(f: Form) -> AronholdCoefficients:
    """Read the ten normal-form coefficients off a ternary cubic.

    Inverse of :func:`cubic_from_coefficients`.
    """
    if f.arity != 3 or not f.is_homogeneous or f.degree not in (3, -1):
        raise ValueError("expected a ternary cubic form")
    return AronholdCoefficients(
        *(f.coefficient(_exponents(idx)) / mult for idx, mult in zip(CLEBSCH_INDICES, _CUBIC_MULTIPLIERS))
    )


def cubic_from_coefficients(c: AronholdCoefficients) -> Form:
    return Form(3, {_exponents(idx): v * mult for idx, v, mult in zip(CLEBSCH_INDICES, c, _CUBIC_MULTIPLIERS)})


def aronhold_invariant(f: Form) -> Fraction:
    """Aronhold invariant ``S`` of a ternary cubic."""
    return aronhold_formula(*cubic_coefficients(f))


def clebsch_coefficients(f):
    """Third partials of ``f`` in the Clebsch reading (works for Form and EpsForm)."""
    return AronholdCoefficients(*(f.derivative(idx) for idx in CLEBSCH_INDICES))


def clebsch_covariant(f: Form) -> Form:
    """Clebsch covariant ``S(f)``, a form of degree ``4(d-3)`` or zero.

    For a cubic this is the constant ``2^4 3^4`` times the Aronhold invariant.
    """
    _require_ternary(f, 3)
    return _clebsch_cached(f)


@lru_cache(maxsize=512)
def _clebsch_cached(f: Form) -> Form:
    return aronhold_formula(*clebsch_coefficients(f))


def clebsch_any(f):
    """Clebsch formula without validation; accepts :class:`EpsForm`."""
    return aronhold_formula(*clebsch_coefficients(f))


# ---------------------------------------------------------------------------
# Hessian


def hessian_matrix(f: Form) -> list[list[Form]]:
    n = f.arity
    second = {}
    for i in range(n):
        for j in range(i, n):
            second[(i, j)] = second[(j, i)] = derivative(f, (i, j))
    return [[second[(i, j)] for j in range(n)] for i in range(n)]


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def symbolic_determinant(entries: list[list[Form]]) -> Form:
    """Leibniz expansion; fine for the small Hessians used here."""
    n = len(entries)
    total = Form.zero(entries[0][0].arity)
    for p in permutations(range(n)):
        term = None
        for i, j in enumerate(p):
            e = entries[i][j]
            if e.is_zero:
                term = None
                break
            term = e if term is None else term * e
        else:
            if term is not None:
                total = total + term * _perm_sign(p)
    return total


@lru_cache(maxsize=512)
def hessian_det(f: Form) -> Form:
    """Hessian determinant ``H(f) = det(d^2 f / dx_i dx_j)``."""
    return symbolic_determinant(hessian_matrix(f))


# ---------------------------------------------------------------------------
# equivariance


@dataclass(frozen=True)
class EquivarianceReport:
    det: Fraction
    hessian_difference: Form
    clebsch_difference: Form

    @property
    def hessian_ok(self) -> bool:
        return self.hessian_difference.is_zero

    @property
    def clebsch_ok(self) -> bool:
        return self.clebsch_difference.is_zero

    @property
    def passed(self) -> bool:
        return self.hessian_ok and self.clebsch_ok


def equivariance_check(f: Form, matrix) -> EquivarianceReport:
    """Check ``H(f∘A) = (H(f)∘A) det(A)^2`` and ``S(f∘A) = (S(f)∘A) det(A)^4``."""
    _require_ternary(f, 3)
    a = matrix if isinstance(matrix, RationalMatrix) else RationalMatrix(matrix)
    if a.shape != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    det = determinant(a)
    if det == 0:
        raise SingularMatrixError("coordinate change must be invertible")
    fa = linear_substitute(f, a)
    h_diff = hessian_det(fa) - linear_substitute(hessian_det(f), a) * det ** 2
    s_diff = clebsch_covariant(fa) - linear_substitute(clebsch_covariant(f), a) * det ** 4
    return EquivarianceReport(det, h_diff, s_diff)


# ---------------------------------------------------------------------------
# structured quartics and binary forms


@dataclass(frozen=True)
class SimplifiedClebschCase:
    case: str  # "f_yz=0" or "f_yy=0"
    full: Form
    simplified: Form

    @property
    def holds(self) -> bool:
        return self.full == self.simplified


def simplified_clebsch_cases(f: Form) -> list[SimplifiedClebschCase]:
    """Compare ``S(f)`` with its simplified shape under ``f_yz = 0`` or ``f_yy = 0``.

    With ``f_yz = 0``: ``S = (a1 a3 - a2^2)(d0 b0 - c0^2)``.
    With ``f_yy = 0``: ``S = (b0 b2 - b1^2)^2``.
    """
    _require_ternary(f, 3)
    cases = []
    full = clebsch_covariant(f)
    c = clebsch_coefficients(f)
    if derivative(f, (1, 2)).is_zero:
        cases.append(SimplifiedClebschCase("f_yz=0", full, (c.a1 * c.a3 - c.a2 * c.a2) * (c.d0 * c.b0 - c.c0 * c.c0)))
    if derivative(f, (1, 1)).is_zero:
        rhs = c.b0 * c.b2 - c.b1 * c.b1
        cases.append(SimplifiedClebschCase("f_yy=0", full, rhs * rhs))
    if not cases:
        raise ValueError("neither f_yz = 0 nor f_yy = 0 holds")
    return cases


def binary_hessian(h: Form) -> Form:
    if h.arity != 2:
        raise ValueError(f"expected a binary form, got arity {h.arity}")
    return hessian_det(h)


@dataclass(frozen=True)
class BinaryPowerResult:
    """Outcome of :func:`binary_power_of_linear`.

    When ``degenerate`` holds, ``h == coefficient * linear_factor**degree``.
    ``needs_extension`` is kept for completeness; over the rationals the
    factor is always rational (see the function docstring).
    """

    degenerate: bool
    coefficient: Fraction | None = None
    linear_factor: Form | None = None
    degree: int = 0
    needs_extension: bool = False


def binary_power_of_linear(h: Form) -> BinaryPowerResult:
    """Decide whether the binary form ``h`` is ``c * (p x + q y)^d``.

    The binary Hessian vanishes identically exactly for such powers. The
    factor is normalized to ``x + r y`` (or ``y``); ``r`` is read off the two
    leading coefficients, so it is rational whenever ``h`` is.
    """
    if h.arity != 2:
        raise ValueError(f"expected a binary form, got arity {h.arity}")
    if not h.is_homogeneous or h.degree < 1:
        raise ValueError("expected a nonzero homogeneous binary form of degree >= 1")
    d = h.degree
    if not binary_hessian(h).is_zero:
        return BinaryPowerResult(False, degree=d)
    lead = h.coefficient((d, 0))
    x, y = Form.variable(2, 0), Form.variable(2, 1)
    if lead:
        r = h.coefficient((d - 1, 1)) / (d * lead)
        factor = x + y * r
        coeff = lead
    else:
        factor = y
        coeff = h.coefficient((0, d))
    if coeff * factor ** d != h:
        # Unreachable for rational input with vanishing Hessian.
        return BinaryPowerResult(True, degree=d, needs_extension=True)
    return BinaryPowerResult(True, coeff, factor, d)
