"""Curvature of the scaled Hessian metric of a homogeneous form.

The metric on an open set of ``R^n`` is ``g_ij = -f_ij / (d (d-1))``. For a
Hessian metric the fourth-derivative terms of the curvature cancel, leaving

    R_ijkl = -1/(4 d^2 (d-1)^2) * sum_pq g^pq (f_jlp f_ikq - f_ilp f_jkq)

with ``g^pq`` the inverse of the scaled matrix. Sectional curvature of a
plane spanned by ``u, v`` is ``R(u,v,u,v) / (g(u,u) g(v,v) - g(u,v)^2)``.

Quantities on the level set ``M = {f = 1}`` are evaluated at any point of the
ray through the point of interest. For a plane tangent to the level set,
``K_M = f(p) K_U(p) - d^2/4``, which is invariant under scaling ``p``.

Everything is exact except :func:`fd_curvature_oracle` and
:func:`log_metric_product_check`, which work in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .covariants import clebsch_covariant, hessian_det
from .poly import Form, all_index_tuples, derivative, evaluate
from .sampling import make_rng, random_point
from .xlinalg import RationalMatrix, Signature, determinant, inverse, nullspace, signature

Vector = Sequence[Fraction]


class DegenerateMetricError(ValueError):
    """The metric (or a plane) is degenerate where it was needed."""


class IllConditionedError(ValueError):
    pass


class NotTangentError(ValueError):
    pass


def _homogeneous_degree(f: Form, minimum: int = 2) -> int:
    if not f.is_homogeneous or f.is_zero:
        raise ValueError("expected a nonzero homogeneous form")
    d = f.degree
    if d < minimum:
        raise ValueError(f"degree {d} is below {minimum}")
    return d


def _exact_point(point: Sequence, arity: int) -> tuple[Fraction, ...]:
    if len(point) != arity:
        raise ValueError(f"point has length {len(point)}, form has arity {arity}")
    p = tuple(Fraction(c) for c in point)
    if not any(p):
        raise ValueError("point must be nonzero")
    return p


@lru_cache(maxsize=256)
def _partials(f: Form, order: int) -> dict[tuple[int, ...], Form]:
    out = {}
    for idx in all_index_tuples(f.arity, order):
        out[idx] = derivative(f, idx)
    return out


def _partial_values(f: Form, order: int, point) -> dict[tuple[int, ...], object]:
    return {idx: evaluate(form, point) for idx, form in _partials(f, order).items()}


def metric_scale(d: int) -> Fraction:
    return Fraction(-1, d * (d - 1))


@dataclass(frozen=True)
class MetricSample:
    point: tuple[Fraction, ...]
    degree: int
    g: RationalMatrix
    signature: Signature

    @property
    def det(self) -> Fraction:
        return determinant(self.g)

    @property
    def nondegenerate(self) -> bool:
        return self.det != 0


def _metric_matrix(f: Form, d: int, point) -> RationalMatrix:
    n = f.arity
    vals = _partial_values(f, 2, point)
    c = metric_scale(d)
    return RationalMatrix([[c * vals[tuple(sorted((i, j)))] for j in range(n)] for i in range(n)])


def metric_at(f: Form, point: Vector) -> MetricSample:
    """Scaled Hessian metric at a rational point."""
    d = _homogeneous_degree(f)
    p = _exact_point(point, f.arity)
    g = _metric_matrix(f, d, p)
    return MetricSample(p, d, g, signature(g))


def christoffel_first(f: Form, point: Vector) -> list[list[list[Fraction]]]:
    """Christoffel symbols of the first kind, ``-f_ijk / (2 d (d-1))``."""
    d = _homogeneous_degree(f)
    p = _exact_point(point, f.arity)
    n = f.arity
    vals = _partial_values(f, 3, p)
    c = metric_scale(d) / 2
    return [[[c * vals[tuple(sorted((i, j, k)))] for k in range(n)] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class CurvatureTensor:
    point: tuple[Fraction, ...]
    R: tuple  # R[i][j][k][l]

    @property
    def dim(self) -> int:
        return len(self.R)

    def __getitem__(self, idx: tuple[int, int, int, int]) -> Fraction:
        i, j, k, l = idx
        return self.R[i][j][k][l]

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.components())

    def components(self):
        n = self.dim
        for i, j, k, l in product(range(n), repeat=4):
            yield self.R[i][j][k][l]

    def symmetry_violations(self) -> list[str]:
        n = self.dim
        R = self.R
        bad = []
        for i, j, k, l in product(range(n), repeat=4):
            v = R[i][j][k][l]
            if v != -R[j][i][k][l] or v != -R[i][j][l][k] or v != R[k][l][i][j]:
                bad.append(f"pair symmetry at {(i, j, k, l)}")
            if v + R[i][k][l][j] + R[i][l][j][k] != 0:
                bad.append(f"Bianchi at {(i, j, k, l)}")
        return bad

    def evaluate(self, a: Vector, b: Vector, c: Vector, e: Vector) -> Fraction:
        n = self.dim
        total = Fraction(0)
        for i in range(n):
            if not a[i]:
                continue
            for j in range(n):
                if not b[j]:
                    continue
                Rij = self.R[i][j]
                for k in range(n):
                    if not c[k]:
                        continue
                    row = Rij[k]
                    s = sum((row[l] * e[l] for l in range(n) if e[l]), Fraction(0))
                    total += a[i] * b[j] * c[k] * s
        return total

    def max_abs(self) -> Fraction:
        return max((abs(v) for v in self.components()), default=Fraction(0))


def _tensor(f: Form, d: int, p: tuple, g: RationalMatrix) -> CurvatureTensor:
    n = f.arity
    ginv = inverse(g)
    third = _partial_values(f, 3, p)
    F = {(a, b): [third[tuple(sorted((a, b, q)))] for q in range(n)] for a in range(n) for b in range(n)}
    ginvF = {key: ginv @ vec for key, vec in F.items()}

    def B(ab, ce):
        return sum((x * y for x, y in zip(F[ab], ginvF[ce])), Fraction(0))

    pair_cache: dict = {}

    def Bc(ab, ce):
        key = (tuple(sorted(ab)), tuple(sorted(ce)))
        key = min(key, key[::-1])
        if key not in pair_cache:
            pair_cache[key] = B(*key)
        return pair_cache[key]

    scale = -Fraction(1, 4 * d * d * (d - 1) * (d - 1))
    R = tuple(
        tuple(
            tuple(
                tuple(scale * (Bc((j, l), (i, k)) - Bc((i, l), (j, k))) for l in range(n))
                for k in range(n)
            )
            for j in range(n)
        )
        for i in range(n)
    )
    return CurvatureTensor(p, R)


def curvature_tensor_at(f: Form, point: Vector) -> CurvatureTensor:
    """Exact curvature tensor of the scaled Hessian metric at a rational point."""
    d = _homogeneous_degree(f)
    p = _exact_point(point, f.arity)
    g = _metric_matrix(f, d, p)
    if determinant(g) == 0:
        raise DegenerateMetricError(f"metric is degenerate at {p}")
    tensor = _tensor(f, d, p, g)
    bad = tensor.symmetry_violations()
    if bad:  # pragma: no cover - would indicate an arithmetic bug
        raise RuntimeError("curvature tensor symmetry broken: " + "; ".join(bad[:3]))
    return tensor


@dataclass(frozen=True)
class PlaneSpec:
    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]

    def __init__(self, u: Vector, v: Vector):
        object.__setattr__(self, "u", tuple(Fraction(c) for c in u))
        object.__setattr__(self, "v", tuple(Fraction(c) for c in v))

    def gram(self, g: RationalMatrix) -> Fraction:
        return g.quadratic_form(self.u) * g.quadratic_form(self.v) - g.quadratic_form(self.u, self.v) ** 2


def _as_plane(plane) -> PlaneSpec:
    if isinstance(plane, PlaneSpec):
        return plane
    u, v = plane
    return PlaneSpec(u, v)


def _sectional(tensor: CurvatureTensor, g: RationalMatrix, plane: PlaneSpec) -> Fraction:
    gram = plane.gram(g)
    if gram == 0:
        raise DegenerateMetricError("plane is degenerate for the metric (or its vectors are dependent)")
    u, v = plane.u, plane.v
    return tensor.evaluate(u, v, u, v) / gram


def sectional_curvature(f: Form, point: Vector, plane) -> Fraction:
    """Sectional curvature ``K_U`` of the plane at the point."""
    d = _homogeneous_degree(f)
    p = _exact_point(point, f.arity)
    plane = _as_plane(plane)
    g = _metric_matrix(f, d, p)
    if determinant(g) == 0:
        raise DegenerateMetricError(f"metric is degenerate at {p}")
    return _sectional(_tensor(f, d, p, g), g, plane)


def tangent_basis(f: Form, point: Vector) -> list[list[Fraction]]:
    """Rational basis of ``{v : sum_i v_i f_i(point) = 0}``."""
    p = _exact_point(point, f.arity)
    grad = [evaluate(derivative(f, (i,)), p) for i in range(f.arity)]
    if not any(grad):
        raise DegenerateMetricError(f"gradient vanishes at {p}")
    return nullspace(RationalMatrix([grad]))


def _check_tangent(f: Form, p, plane: PlaneSpec) -> None:
    grad = [evaluate(derivative(f, (i,)), p) for i in range(f.arity)]
    for vec in (plane.u, plane.v):
        if sum((a * b for a, b in zip(grad, vec)), Fraction(0)) != 0:
            raise NotTangentError("plane is not tangent to the level set through the point")


def sectional_curvature_on_M(f: Form, point: Vector, plane=None) -> Fraction:
    """Curvature of the level hypersurface through ``point`` rescaled to ``M = {f = 1}``.

    ``plane`` defaults to the tangent plane when the form is ternary.
    """
    d = _homogeneous_degree(f)
    p = _exact_point(point, f.arity)
    fp = evaluate(f, p)
    if fp == 0:
        raise ValueError("f vanishes at the point; it lies on no dilate of M")
    if plane is None:
        basis = tangent_basis(f, p)
        if len(basis) != 2:
            raise ValueError("a plane must be given when the arity is not 3")
        plane = PlaneSpec(*basis)
    plane = _as_plane(plane)
    _check_tangent(f, p, plane)
    g = _metric_matrix(f, d, p)
    if determinant(g) == 0:
        raise DegenerateMetricError(f"metric is degenerate at {p}")
    k_u = _sectional(_tensor(f, d, p, g), g, plane)
    return fp * k_u - Fraction(d * d, 4)


def theorem_curv_value(f: Form, point: Vector) -> Fraction:
    """``K_M`` from the Hessian determinant and Clebsch covariant (ternary, ``d >= 3``)."""
    if f.arity != 3:
        raise ValueError("the covariant formula needs a ternary form")
    d = _homogeneous_degree(f, 3)
    p = _exact_point(point, 3)
    h = evaluate(hessian_det(f), p)
    fp = evaluate(f, p)
    if h == 0 or fp == 0:
        raise ValueError(f"H(f) or f vanishes at {p}")
    s = evaluate(clebsch_covariant(f), p)
    coeff = Fraction(d * d * (d - 1) ** 2, 4 * (d - 2) ** 2)
    return -Fraction(d * d, 4) + coeff * s * fp * fp / (h * h)


@dataclass
class CurvPoint:
    point: tuple[Fraction, ...]
    tensor_route: Fraction
    formula_route: Fraction

    @property
    def agree(self) -> bool:
        return self.tensor_route == self.formula_route


@dataclass
class CurvCheckReport:
    form: Form
    points: list[CurvPoint] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.points) and all(p.agree for p in self.points)


def theorem_curv_check(f: Form, points: Sequence[Vector]) -> CurvCheckReport:
    """Compare ``K_M`` from the curvature tensor with the covariant formula."""
    report = CurvCheckReport(f)
    for point in points:
        report.points.append(
            CurvPoint(tuple(Fraction(c) for c in point), sectional_curvature_on_M(f, point), theorem_curv_value(f, point))
        )
    return report


# ---------------------------------------------------------------------------
# flatness


@dataclass
class FlatnessVerdict:
    flat: bool
    points: list[tuple[Fraction, ...]]
    witness: tuple[Fraction, ...] | None
    tried: int
    numerator_degree_bound: int

    @property
    def note(self) -> str:
        if not self.flat:
            return f"curvature tensor is nonzero at {self.witness}"
        return (
            f"curvature tensor vanishes exactly at {len(self.points)} sampled points; each component is "
            f"N(x)/det(f_ij)(x) with deg N <= {self.numerator_degree_bound}"
        )


def flatness_certificate(
    f: Form,
    sample_count: int = 10,
    seed: int | None = None,
    points: Sequence[Vector] | None = None,
    max_tries: int | None = None,
) -> FlatnessVerdict:
    """Sample the curvature tensor exactly at nondegenerate rational points.

    FLAT if it vanishes at every sample; otherwise NOT FLAT with the first
    nonvanishing point as witness. Explicit ``points`` are tried before random
    ones. A FLAT verdict is probabilistic evidence, not a symbolic proof.
    """
    d = _homogeneous_degree(f)
    n = f.arity
    rng = make_rng(seed)
    max_tries = max_tries or 50 * sample_count
    bound = max(0, (n - 1) * (d - 2) + 2 * (d - 3))
    checked: list[tuple[Fraction, ...]] = []
    candidates = [tuple(Fraction(c) for c in p) for p in (points or [])]
    tried = 0
    while len(checked) < sample_count:
        if tried >= max_tries:
            raise DegenerateMetricError(
                f"found only {len(checked)} nondegenerate points after {tried} tries"
            )
        p = candidates.pop(0) if candidates else random_point(rng, n)
        tried += 1
        g = _metric_matrix(f, d, p)
        if determinant(g) == 0:
            continue
        tensor = _tensor(f, d, p, g)
        if not tensor.is_zero:
            return FlatnessVerdict(False, checked + [p], p, tried, bound)
        checked.append(p)
    return FlatnessVerdict(True, checked, None, tried, bound)


# ---------------------------------------------------------------------------
# scaling along rays


@dataclass
class WarpEntry:
    scale: Fraction
    k_u_scaled: Fraction  # K_U at c*p
    k_m_scaled: Fraction  # K_M at c*p

    def as_dict(self) -> dict:
        return {"scale": self.scale, "K_U": self.k_u_scaled, "K_M": self.k_m_scaled}


@dataclass
class WarpReport:
    point: tuple[Fraction, ...]
    degree: int
    f_value: Fraction
    k_u: Fraction
    k_m: Fraction
    entries: list[WarpEntry] = field(default_factory=list)

    def scaling_ok(self, e: WarpEntry) -> bool:
        c, d = e.scale, self.degree
        return e.k_u_scaled * c ** d == self.k_u

    def ray_constant_ok(self, e: WarpEntry) -> bool:
        return e.k_m_scaled == self.k_m

    def oneill_ok(self, e: WarpEntry) -> bool:
        # K_U(cP) = c^-d (K_M(P) + d^2/4) with P = p / f(p)^(1/d) on M
        c, d = e.scale, self.degree
        return e.k_u_scaled == (self.k_m + Fraction(d * d, 4)) / (c ** d * self.f_value)

    @property
    def passed(self) -> bool:
        return all(self.scaling_ok(e) and self.ray_constant_ok(e) and self.oneill_ok(e) for e in self.entries)


def warp_scaling_check(f: Form, point: Vector, plane=None, scales: Sequence = (2, 3, Fraction(1, 2))) -> WarpReport:
    """Check the ray-scaling laws of ``K_U`` and ``K_M`` along the ray through ``point``."""
    d = _homogeneous_degree(f)
    p = _exact_point(point, f.arity)
    if plane is None:
        basis = tangent_basis(f, p)
        plane = PlaneSpec(basis[0], basis[1])
    plane = _as_plane(plane)
    _check_tangent(f, p, plane)
    fp = evaluate(f, p)
    report = WarpReport(p, d, fp, sectional_curvature(f, p, plane), sectional_curvature_on_M(f, p, plane))
    for c in scales:
        c = Fraction(c)
        q = tuple(c * x for x in p)
        report.entries.append(WarpEntry(c, sectional_curvature(f, q, plane), sectional_curvature_on_M(f, q, plane)))
    return report


# ---------------------------------------------------------------------------
# floating-point oracles


def _float_metric(second: dict, n: int, scale: float, x: np.ndarray) -> np.ndarray:
    g = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            g[i, j] = g[j, i] = scale * evaluate(second[(i, j)], list(x))
    return g


def fd_curvature_oracle(f: Form, point: Sequence[float], h: float = 1e-4) -> float:
    """Max relative deviation between the closed-form tensor and a finite-difference one.

    The oracle uses only the metric entries: first derivatives of ``g`` by
    central differences give the Christoffel symbols, nested central
    differences give second derivatives, and the general pseudo-Riemannian
    formula assembles ``R``. Deviations are relative to the largest exact
    component (absolute when the exact tensor is zero).
    """
    d = _homogeneous_degree(f)
    n = f.arity
    x0 = np.array([float(c) for c in point])
    second = _partials(f, 2)
    second = {**second, **{(j, i): v for (i, j), v in second.items()}}
    scale = float(metric_scale(d))

    def g_at(x):
        return _float_metric(second, n, scale, x)

    g0 = g_at(x0)
    if abs(np.linalg.det(g0)) <= 1e-6:
        raise IllConditionedError(f"|det g| = {abs(np.linalg.det(g0)):.3g} at {tuple(x0)}")
    ginv = np.linalg.inv(g0)
    eye = np.eye(n)

    def dg_at(x):
        # dg[a, b, c] = d g_ab / d x_c
        out = np.empty((n, n, n))
        for c in range(n):
            out[:, :, c] = (g_at(x + h * eye[c]) - g_at(x - h * eye[c])) / (2 * h)
        return out

    dg = dg_at(x0)
    ddg = np.empty((n, n, n, n))
    for e in range(n):
        ddg[:, :, :, e] = (dg_at(x0 + h * eye[e]) - dg_at(x0 - h * eye[e])) / (2 * h)

    gamma = 0.5 * (np.einsum("ijk->ijk", dg) + np.einsum("jki->ijk", dg) - np.einsum("ikj->ijk", dg))
    R = np.empty((n, n, n, n))
    for i, j, k, l in product(range(n), repeat=4):
        second_part = -0.5 * (ddg[i, k, j, l] + ddg[j, l, i, k] - ddg[i, l, j, k] - ddg[j, k, i, l])
        quad = 0.0
        for p_, q in product(range(n), repeat=2):
            quad += ginv[p_, q] * (gamma[j, p_, l] * gamma[i, q, k] - gamma[i, p_, l] * gamma[j, q, k])
        R[i, j, k, l] = second_part - quad

    exact_point = tuple(Fraction(c) for c in x0)
    exact = curvature_tensor_at(f, exact_point)
    E = np.array([float(v) for v in exact.components()]).reshape((n,) * 4)
    scale_ref = np.max(np.abs(E))
    diff = np.max(np.abs(R - E))
    return float(diff / scale_ref) if scale_ref > 0 else float(diff)


@dataclass
class LogMetricReport:
    deviations: list[float]
    tolerance: float

    @property
    def max_deviation(self) -> float:
        return max(self.deviations, default=0.0)

    @property
    def passed(self) -> bool:
        return bool(self.deviations) and self.max_deviation < self.tolerance


def log_metric_product_check(
    f: Form,
    samples: Sequence[Vector],
    tolerance: float = 1e-8,
    times: Sequence[float] = (0.0, -0.7, 1.3),
) -> LogMetricReport:
    """Check that ``(t, x) -> exp(t/sqrt(d)) x`` is an isometry onto ``-d^2 log f``.

    ``R x M`` carries ``dt^2`` plus the restriction of ``-f_ij`` to
    ``M = {f = 1}``. Each sample is pushed to ``M`` along its ray; tangent
    vectors are pushed forward with the analytic Jacobian.
    """
    d = _homogeneous_degree(f)
    n = f.arity
    first = [derivative(f, (i,)) for i in range(n)]
    second = _partials(f, 2)
    second = {**second, **{(j, i): v for (i, j), v in second.items()}}

    def hess(x):
        return np.array([[float(evaluate(second[(i, j)], x)) for j in range(n)] for i in range(n)])

    deviations = []
    for sample in samples:
        p = tuple(Fraction(c) for c in sample)
        fp = evaluate(f, p)
        if fp <= 0:
            raise ValueError(f"f is not positive at {p}")
        x = np.array([float(c) for c in p]) / float(fp) ** (1.0 / d)
        basis = [np.array([float(c) for c in v]) for v in tangent_basis(f, p)]
        product_gram = np.zeros((n, n))
        product_gram[0, 0] = 1.0
        hx = hess(list(x))
        for a, va in enumerate(basis, start=1):
            for b, vb in enumerate(basis, start=1):
                product_gram[a, b] = -va @ hx @ vb
        for t in times:
            s = math.exp(t / math.sqrt(d))
            y = s * x
            fy = evaluate(f, list(y))
            grad = np.array([evaluate(df, list(y)) for df in first])
            log_metric = -(hess(list(y)) / fy - np.outer(grad, grad) / fy ** 2)
            pushed = [y / math.sqrt(d)] + [s * v for v in basis]
            J = np.array(pushed).T
            pulled = J.T @ log_metric @ J
            ref = max(np.max(np.abs(product_gram)), 1.0)
            deviations.append(float(np.max(np.abs(pulled - product_gram)) / ref))
    return LogMetricReport(deviations, tolerance)


def tangent_gram(f: Form, point: Vector) -> RationalMatrix:
    """Scaled metric restricted to the tangent space of the level set."""
    d = _homogeneous_degree(f)
    p = _exact_point(point, f.arity)
    g = _metric_matrix(f, d, p)
    basis = tangent_basis(f, p)
    return RationalMatrix([[g.quadratic_form(u, v) for v in basis] for u in basis])


def coordinate_plane_curvatures_on_M(f: Form, point: Vector) -> list[tuple[tuple[int, int], Fraction]]:
    """``K_M`` on each plane spanned by two vectors of the tangent basis (skips degenerate ones)."""
    d = _homogeneous_degree(f)
    p = _exact_point(point, f.arity)
    fp = evaluate(f, p)
    g = _metric_matrix(f, d, p)
    if determinant(g) == 0:
        raise DegenerateMetricError(f"metric is degenerate at {p}")
    tensor = _tensor(f, d, p, g)
    basis = tangent_basis(f, p)
    out = []
    for a, b in combinations(range(len(basis)), 2):
        plane = PlaneSpec(basis[a], basis[b])
        if plane.gram(g) == 0:
            continue
        out.append(((a, b), fp * _sectional(tensor, g, plane) - Fraction(d * d, 4)))
    return out
