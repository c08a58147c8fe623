"""First-order deformations of the locus where the Clebsch covariant vanishes.

Along the family ``alpha(x, y) + z^d`` the linearization of ``S`` reduces to a
second-order operator ``T(alpha, h)`` on binary forms. This module computes
that operator, its kernels, the monomial spectrum at the witness
``alpha = C(d,2) x^(d-2) y^2``, the Zariski tangent space comparison, and the
limit family exhibiting ``alpha + b x^(d-1) z`` in the orbit closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .covariants import clebsch_any
from .poly import EpsForm, Form, derivative, monomials
from .xlinalg import RationalMatrix, nullspace, rank


class VariationMismatchError(ArithmeticError):
    """The two routes to the first variation of ``S`` disagree."""


def _binary(alpha: Form, name: str = "alpha") -> int:
    if alpha.arity != 2:
        raise ValueError(f"{name} must be a binary form, got arity {alpha.arity}")
    if not alpha.is_homogeneous:
        raise ValueError(f"{name} must be homogeneous")
    return alpha.degree


def witness_alpha(d: int) -> Form:
    """``C(d,2) x^(d-2) y^2``, the form used to certify the kernel claims."""
    return Form(2, {(d - 2, 2): comb(d, 2)})


def _alpha_minors(alpha: Form) -> tuple[Form, Form, Form]:
    a111 = derivative(alpha, (0, 0, 0))
    a112 = derivative(alpha, (0, 0, 1))
    a122 = derivative(alpha, (0, 1, 1))
    a222 = derivative(alpha, (1, 1, 1))
    return (
        a112 * a222 - a122 * a122,
        a112 * a122 - a111 * a222,
        a111 * a122 - a112 * a112,
    )


def t_operator(alpha: Form, h: Form) -> Form:
    """``T(alpha, h) = h_11 m_1 + h_12 m_2 + h_22 m_3`` with the minors of alpha's third partials."""
    _binary(alpha)
    if h.arity != 2:
        raise ValueError(f"h must be a binary form, got arity {h.arity}")
    m1, m2, m3 = _alpha_minors(alpha)
    return derivative(h, (0, 0)) * m1 + derivative(h, (0, 1)) * m2 + derivative(h, (1, 1)) * m3


def u_operator(d: int, h: Form) -> Form:
    """``x^2 h_11 - (d-3) x y h_12 + (d-2)(d-3)/2 y^2 h_22``."""
    x, y = Form.variable(2, 0), Form.variable(2, 1)
    return (
        x * x * derivative(h, (0, 0))
        - x * y * derivative(h, (0, 1)) * (d - 3)
        + y * y * derivative(h, (1, 1)) * Fraction((d - 2) * (d - 3), 2)
    )


def variation_bracket(alpha: Form, g: Form) -> Form:
    """The bracket ``g_113 m_1 + g_123 m_2 + g_223 m_3`` (ternary, z is variable 2)."""
    _binary(alpha)
    if g.arity != 3:
        raise ValueError(f"g must be a ternary form, got arity {g.arity}")
    m1, m2, m3 = (m.extend(3) for m in _alpha_minors(alpha))
    return derivative(g, (0, 0, 2)) * m1 + derivative(g, (0, 1, 2)) * m2 + derivative(g, (1, 1, 2)) * m3


def variation_prefactor(d: int) -> Form:
    """``f_333`` of ``z^d``, the factor multiplying the bracket in ``dS``."""
    return Form(3, {(0, 0, d - 3): d * (d - 1) * (d - 2)})


@dataclass(frozen=True)
class VariationResult:
    base: Form
    direction: Form
    variation: Form
    closed_form: Form

    @property
    def routes_agree(self) -> bool:
        return self.variation == self.closed_form


def first_variation_clebsch(alpha: Form, g: Form, strict: bool = True) -> VariationResult:
    """The eps-coefficient of ``S(alpha + z^d + eps g)``.

    Route (a) runs the Clebsch formula on eps-truncated forms. Route (b) is
    the bracket times ``d(d-1)(d-2) z^(d-3)``. With ``strict`` a
    disagreement raises :class:`VariationMismatchError`.
    """
    d = _binary(alpha)
    if d < 4:
        raise ValueError("the first variation needs degree d >= 4")
    if g.arity != 3 or not (g.is_zero or (g.is_homogeneous and g.degree == d)):
        raise ValueError(f"g must be a ternary form of degree {d}")
    base = alpha.extend(3) + Form(3, {(0, 0, d): 1})
    direct = clebsch_any(EpsForm(base, g)).eps_part
    closed = variation_prefactor(d) * variation_bracket(alpha, g)
    result = VariationResult(base, g, direct, closed)
    if strict and not result.routes_agree:
        raise VariationMismatchError(f"routes disagree for g = {g}")
    return result


def _map_matrix(images: list[Form]) -> RationalMatrix:
    # Columns are the images; rows are indexed by every monomial that occurs.
    keys = sorted({e for im in images for e in im.terms}, reverse=True)
    return RationalMatrix([[im.coefficient(k) for im in images] for k in keys])


@dataclass(frozen=True)
class KernelBasis:
    alpha: Form
    degree: int
    basis: tuple[Form, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def kernel_of_t(alpha: Form, r: int) -> KernelBasis:
    """Basis of ``{h of degree r : T(alpha, h) = 0}`` from the exact nullspace."""
    _binary(alpha)
    if r < 0:
        raise ValueError("degree r must be nonnegative")
    mons = monomials(2, r)
    images = [t_operator(alpha, Form(2, {m: 1})) for m in mons]
    vectors = nullspace(_map_matrix(images), ncols=len(mons))
    basis = tuple(Form(2, dict(zip(mons, v))) for v in vectors)
    return KernelBasis(alpha, r, basis)


def spectrum_value(d: int, i: int, j: int) -> Fraction:
    """Eigenvalue of ``U`` on ``x^i y^j``."""
    return i * (i - 1) - (d - 3) * i * j + Fraction((d - 2) * (d - 3) * j * (j - 1), 2)


def discriminant(d: int, j: int) -> int:
    """Discriminant in ``i`` of the eigenvalue equation for fixed ``j``."""
    return 1 - (d - 1) * (d - 3) * j * (j - 2)


def expected_zero_set(d: int) -> frozenset[tuple[int, int]]:
    return frozenset({(0, 0), (1, 0), (0, 1), (d - 2, 1), (d - 3, 2), (d - 2, 2)})


@dataclass
class SpectrumTable:
    d: int
    eigenvalues: dict[tuple[int, int], Fraction]
    discriminants: dict[int, int]

    @property
    def zero_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(k for k, v in self.eigenvalues.items() if v == 0)

    @property
    def zero_set_matches(self) -> bool:
        return self.zero_set == expected_zero_set(self.d)

    @property
    def discriminant_negative(self) -> bool:
        return all(v < 0 for j, v in self.discriminants.items() if j >= 3)

    @property
    def passed(self) -> bool:
        return self.zero_set_matches and self.discriminant_negative

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "eigenvalues": [
                {"i": i, "j": j, "value": f"{v.numerator}/{v.denominator}"} for (i, j), v in self.eigenvalues.items()
            ],
            "zero_set": sorted(self.zero_set),
            "discriminants": {str(j): v for j, v in self.discriminants.items()},
            "zero_set_matches": self.zero_set_matches,
            "discriminant_negative": self.discriminant_negative,
        }


def monomial_spectrum(d: int) -> SpectrumTable:
    """``lambda(i, j)`` for ``i + j <= d`` and ``Delta(j)`` for ``j = 0..d``."""
    if d < 4:
        raise ValueError("the spectrum is defined for d >= 4")
    values = {(i, s - i): spectrum_value(d, i, s - i) for s in range(d + 1) for i in range(s, -1, -1)}
    return SpectrumTable(d, values, {j: discriminant(d, j) for j in range(d + 1)})


def expected_kernel_dimension(d: int, r: int) -> int:
    """Kernel dimension of ``T`` in degree ``r`` for a very general alpha."""
    return {0: 1, 1: 2, d - 1: 2, d: 1}.get(r, 0)


@dataclass
class ZariskiReport:
    alpha: Form
    degree: int
    spanning_forms: list[Form]
    explicit_rank: int
    kernel_dimension: int
    strata: dict[int, int] = field(default_factory=dict)

    @property
    def degenerate(self) -> bool:
        return self.explicit_rank < len(self.spanning_forms)

    @property
    def equal(self) -> bool:
        return not self.degenerate and self.explicit_rank == self.kernel_dimension

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "degree": self.degree,
            "explicit_rank": self.explicit_rank,
            "spanning_count": len(self.spanning_forms),
            "kernel_dimension": self.kernel_dimension,
            "strata": {str(a): k for a, k in self.strata.items()},
            "degenerate": self.degenerate,
            "equal": self.equal,
        }


def tangent_spanning_forms(alpha: Form) -> list[Form]:
    """Binary monomials of degree d, then ``alpha_1 z``, ``alpha_2 z``, ``x z^(d-1)``, ``y z^(d-1)``, ``z^d``."""
    d = _binary(alpha)
    z = Form.variable(3, 2)
    forms = [Form(3, {(m[0], m[1], 0): 1}) for m in monomials(2, d)]
    forms.append(derivative(alpha, (0,)).extend(3) * z)
    forms.append(derivative(alpha, (1,)).extend(3) * z)
    forms += [Form(3, {(1, 0, d - 1): 1}), Form(3, {(0, 1, d - 1): 1}), Form(3, {(0, 0, d): 1})]
    return forms


def zariski_tangent_compare(alpha: Form, verify_routes: bool = False) -> ZariskiReport:
    """Compare the explicit span with the kernel of ``g -> dS`` on ternary degree-d forms.

    ``strata`` maps each z-exponent ``a`` to the kernel dimension of ``T`` in
    binary degree ``d - a`` (everything is in the kernel when ``a = 0``).
    """
    d = _binary(alpha)
    if d < 4:
        raise ValueError("the comparison needs degree d >= 4")
    forms = tangent_spanning_forms(alpha)
    span_rank = rank(RationalMatrix([[f.coefficient(m) for m in monomials(3, d)] for f in forms]))
    mons = monomials(3, d)
    images = []
    for m in mons:
        g = Form(3, {m: 1})
        if verify_routes:
            images.append(first_variation_clebsch(alpha, g).variation)
        else:
            images.append(variation_prefactor(d) * variation_bracket(alpha, g))
    kernel_dim = len(nullspace(_map_matrix(images), ncols=len(mons)))
    strata = {0: d + 1}
    for a in range(1, d + 1):
        strata[a] = kernel_of_t(alpha, d - a).dimension
    return ZariskiReport(alpha, d, forms, span_rank, kernel_dim, strata)


@dataclass
class ClosureReport:
    alpha: Form
    b: Fraction
    degree: int
    coefficients: list[Form]  # coefficient of c^k, k = 0..d-1, as ternary forms
    negative_powers_cancel: bool

    @property
    def expected_constant_term(self) -> Form:
        d = self.degree
        return self.alpha.extend(3) + Form(3, {(d - 1, 0, 1): self.b})

    @property
    def constant_term_ok(self) -> bool:
        return bool(self.coefficients) and self.coefficients[0] == self.expected_constant_term

    @property
    def passed(self) -> bool:
        return self.negative_powers_cancel and self.constant_term_ok


def closure_limit_expand(alpha: Form, b, d: int | None = None) -> ClosureReport:
    """Expand ``(-x^d/c + alpha) + (x + (c b/d) z)^d / c`` as a polynomial in ``c``.

    ``c`` is carried as a fourth variable; the family is multiplied by ``c``
    and the ``c^0`` part of the product must vanish. ``d`` is required only
    when ``alpha`` is zero.
    """
    deg = _binary(alpha)
    if d is None:
        if alpha.is_zero:
            raise ValueError("give the degree explicitly when alpha is zero")
        d = deg
    elif not alpha.is_zero and deg != d:
        raise ValueError(f"alpha has degree {deg}, not {d}")
    if d < 2:
        raise ValueError("the closure family needs degree d >= 2")
    b = Fraction(b)
    x, c = Form.variable(4, 0), Form.variable(4, 3)
    xcz = Form(4, {(1, 0, 0, 0): 1, (0, 0, 1, 1): b / d})
    times_c = -(x ** d) + c * alpha.extend(4) + xcz ** d
    cancels = times_c.part_in_variable(3, 0).is_zero
    coeffs = []
    for k in range(d):
        part = times_c.part_in_variable(3, k + 1)
        coeffs.append(Form(3, {e[:3]: v for e, v in part.items()}))
    return ClosureReport(alpha, b, d, coeffs, cancels)
