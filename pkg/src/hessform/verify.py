"""Registry of reproduction checks, one group per acceptance criterion.

Each check is a function of a :class:`random.Random` returning one or more
:class:`CheckResult`. Randomness is derived from ``(seed, check name)`` so a
check gives the same answer whether it runs alone or inside ``all``.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable

from . import tangent as tg
from .cones import classify_point, cone_comparison, curvature_scan, hessian_at, sample_cone
from .covariants import (
    aronhold_invariant,
    binary_power_of_linear,
    clebsch_covariant,
    equivariance_check,
    hessian_det,
    simplified_clebsch_cases,
)
from .curvature import (
    DegenerateMetricError,
    IllConditionedError,
    PlaneSpec,
    flatness_certificate,
    fd_curvature_oracle,
    log_metric_product_check,
    sectional_curvature_on_M,
    tangent_basis,
    theorem_curv_value,
    warp_scaling_check,
)
from .poly import Form, derivative, evaluate, monomials, parse_form
from .sampling import default_seed, random_form, random_invertible_matrix, random_point, random_rational
from .xlinalg import signature

QUARTIC = parse_form("x*y*z*(x+y+z)", 3)
CUBIC_R4 = parse_form("(x0^2+x1^2-x2^2-x3^2)*x3", 4)
CUBIC_G = parse_form("(x^2-y^2-z^2)*z", 3)
MASCHKE = parse_form("x^6+y^6+z^6-10*(x^3*y^3+y^3*z^3+z^3*x^3)", 3)
HYPERBOLIC = parse_form("x^2-y^2-z^2", 3)


def _q(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" or "fail"
    exact: str | None = None
    float: float | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return asdict(self)


def result(name: str, ok: bool, value=None, detail: str = "") -> CheckResult:
    exact = fl = None
    if value is not None:
        exact, fl = _q(value), float(value)
    return CheckResult(name, "pass" if ok else "fail", exact, fl, detail)


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: list[CheckResult] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": [r.to_dict() for r in self.results],
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        return cls(
            data["command"],
            dict(data["inputs"]),
            [CheckResult(**r) for r in data["results"]],
            data.get("elapsed_ms", 0.0),
        )


@dataclass(frozen=True)
class Check:
    criterion: int
    section: str
    name: str
    run: Callable[[random.Random], list[CheckResult]]


REGISTRY: list[Check] = []


def check(criterion: int, section: str, name: str):
    def wrap(fn):
        REGISTRY.append(Check(criterion, section, name, fn))
        return fn

    return wrap


# ---------------------------------------------------------------------------
# helpers


def _points_with(f: Form, rng: random.Random, count: int, accept, box=(-3, 3), max_draws: int = 5000):
    out = []
    for _ in range(max_draws):
        if len(out) == count:
            break
        p = random_point(rng, f.arity, box)
        try:
            if accept(p):
                out.append(p)
        except (DegenerateMetricError, ValueError, ZeroDivisionError):
            continue
    return out


def _ternary_curv_ok(f: Form):
    h = hessian_det(f)

    def accept(p):
        return evaluate(f, p) != 0 and evaluate(h, p) != 0

    return accept


def _random_linear(rng: random.Random) -> Form:
    while True:
        p, q = rng.randint(-3, 3), rng.randint(-3, 3)
        if p or q:
            return Form(2, {(1, 0): p, (0, 1): q})


# ---------------------------------------------------------------------------
# quartic example


@check(1, "lemma-quartic", "C1.hessian-identity")
def _c1(rng):
    expected = parse_form("6*x*y*z*(x+y+z)*(x^2+y^2+z^2+x*y+x*z+y*z)", 3)
    return [result("C1.hessian-identity", hessian_det(QUARTIC) == expected)]


@check(2, "lemma-quartic", "C2.clebsch-identities")
def _c2(rng):
    s = clebsch_covariant(QUARTIC)
    displayed = parse_form(
        "x^4+2*x^3*y+3*x^2*y^2+2*x*y^3+y^4+2*x^3*z+7*x^2*y*z+7*x*y^2*z+2*y^3*z+3*x^2*z^2"
        "+3*y^2*z^2+7*x*y*z^2+2*x*z^3+2*y*z^3+z^4",
        3,
    )
    q = parse_form("x^2+y^2+z^2+x*y+x*z+y*z", 3)
    return [
        result("C2.clebsch-displayed", len(displayed) == 15 and s == displayed * 16),
        result("C2.clebsch-minus-square", s - q * q * 16 == QUARTIC * 48),
    ]


@check(9, "lemma-quartic", "C9.quartic-evidence")
def _c9(rng):
    out = []
    sig = signature(hessian_at(QUARTIC, (1, 1, 1)))
    out.append(result("C9.signature-111", tuple(sig) == (1, 2, 0), detail=str(tuple(sig))))
    positive = sample_cone(QUARTIC, "positive", 500, seed=rng.randrange(2**32))
    cmp = cone_comparison(QUARTIC, positive.points)
    out.append(result(
        "C9.index-equals-positive",
        len(positive.points) == 500 and cmp.checked == 500 and cmp.equal,
        len(cmp.discrepancies),
        f"{cmp.checked} positive-cone samples, {len(cmp.discrepancies)} discrepancies",
    ))
    index = sample_cone(QUARTIC, "index", 200, seed=rng.randrange(2**32))
    scan = curvature_scan(QUARTIC, index.points)
    out.append(result(
        "C9.positive-curvature-scan",
        len(scan.rows) == 200 and not scan.skipped and scan.k_min > 0,
        scan.k_min,
        f"min K_M over {len(scan.rows)} samples",
    ))
    k_tensor = sectional_curvature_on_M(QUARTIC, (1, 1, 1))
    k_formula = theorem_curv_value(QUARTIC, (1, 1, 1))
    out.append(result("C9.K_M-at-111", k_tensor == k_formula == 1, k_tensor))
    return out


# ---------------------------------------------------------------------------
# covariants


@check(3, "covariants", "C3.clebsch-vs-aronhold")
def _c3(rng):
    bad = 0
    for _ in range(100):
        f = random_form(rng, 3, 3, bound=5)
        s = clebsch_covariant(f)
        if s != Form.constant(3, aronhold_invariant(f) * 1296):
            bad += 1
    return [result("C3.clebsch-vs-aronhold", bad == 0, bad, "100 random cubics; value is the failure count")]


@check(4, "covariants", "C4.equivariance")
def _c4(rng):
    bad = 0
    for k in range(50):
        f = random_form(rng, 3, 3 + k % 3, bound=3, density=0.6)
        a = random_invertible_matrix(rng, 3, bound=2)
        if not equivariance_check(f, a).passed:
            bad += 1
    return [result("C4.equivariance", bad == 0, bad, "50 random (f, A), degrees 3..5")]


# ---------------------------------------------------------------------------
# curvature


@check(5, "theorem-curv", "C5.two-routes")
def _c5(rng):
    forms = 0
    points = 0
    bad = []
    for k in range(12):
        d = 3 + k % 4
        f = random_form(rng, 3, d, bound=4, density=0.7)
        if hessian_det(f).is_zero:
            continue
        accept = _ternary_curv_ok(f)

        def tensor_ok(p, f=f, accept=accept):
            return accept(p) and sectional_curvature_on_M(f, p) is not None

        pts = _points_with(f, rng, 20, tensor_ok, box=(-2, 2), max_draws=400)
        if len(pts) < 20:
            continue
        forms += 1
        for p in pts:
            points += 1
            if sectional_curvature_on_M(f, p) != theorem_curv_value(f, p):
                bad.append(p)
    ok = forms >= 10 and not bad
    return [result("C5.two-routes", ok, len(bad), f"{forms} forms, {points} points, {len(bad)} mismatches")]


@check(6, "hessian-metric", "C6.finite-difference")
def _c6(rng):
    worst = 0.0
    done = 0
    for k in range(10):
        n = 3 + k % 2
        d = 3 + (k // 2) % 2
        for _ in range(50):
            f = random_form(rng, n, d, bound=5)
            p = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(n))
            if not any(p):
                continue
            try:
                dev = fd_curvature_oracle(f, p, h=1e-4)
            except (IllConditionedError, DegenerateMetricError, ValueError):
                continue
            worst = max(worst, dev)
            done += 1
            break
    return [CheckResult(
        "C6.finite-difference",
        "pass" if done >= 10 and worst < 1e-5 else "fail",
        None,
        worst,
        f"{done} forms, max relative deviation {worst:.3g}",
    )]


@check(7, "flatness", "C7.flat-families")
def _c7(rng):
    out = []
    seeds = lambda: rng.randrange(2**32)  # noqa: E731
    binary_ok = True
    for d in range(2, 7):
        f = random_form(rng, 2, d, bound=5)
        binary_ok &= flatness_certificate(f, 10, seed=seeds()).flat
    out.append(result("C7.binary-forms", binary_ok, detail="5 random binary forms, degrees 2..6"))

    sums_ok = True
    for n in (4, 5):
        for d in (3, 4):
            parts = [random_form(rng, 2, d, bound=4).extend(2) for _ in range(n // 2)]
            f = Form.zero(n)
            for i, part in enumerate(parts):
                f = f + _shift(part, 2 * i, n)
            if n % 2:
                f = f + Form(n, {tuple(d if j == n - 1 else 0 for j in range(n)): rng.choice([-2, -1, 1, 2])})
            sums_ok &= flatness_certificate(f, 10, seed=seeds()).flat
    out.append(result("C7.sums-of-binary", sums_ok, detail="4 and 5 variables, degrees 3 and 4"))

    fermat_ok = True
    for n in (3, 4):
        for d in (3, 4, 5):
            f = Form(n, {tuple(d if j == 0 else 0 for j in range(n)): 1})
            for i in range(1, n):
                f = f - Form(n, {tuple(d if j == i else 0 for j in range(n)): 1})
            fermat_ok &= flatness_certificate(f, 10, seed=seeds()).flat
    out.append(result("C7.fermat", fermat_ok, detail="n = 3, 4 and d = 3, 4, 5"))

    out.append(result("C7.maschke-flat", flatness_certificate(MASCHKE, 10, seed=seeds()).flat))
    out.append(result("C7.maschke-clebsch-zero", clebsch_covariant(MASCHKE).is_zero))
    verdict = flatness_certificate(QUARTIC, 10, seed=seeds(), points=[(1, 1, 1)])
    out.append(result("C7.quartic-not-flat", not verdict.flat, detail=f"witness {verdict.witness}"))
    return out


def _shift(binary: Form, offset: int, n: int) -> Form:
    # Place a form in variables (x_offset, x_offset+1) of an n-ary ring.
    return Form(n, {tuple(e[j - offset] if offset <= j < offset + 2 else 0 for j in range(n)): c for e, c in binary.items()})


@check(8, "hessian-metric", "C8.warp-scaling")
def _c8(rng):
    out = []
    for label, f, p in (("quartic", QUARTIC, (1, 1, 1)), ("cubic", CUBIC_G, (0, 2, -1)), ("cubic-on-M", CUBIC_G, (Fraction(3, 2), 2, Fraction(-1, 2)))):
        rep = warp_scaling_check(f, p, scales=(2, 3, Fraction(1, 2)))
        out.append(result(f"C8.warp-{label}", rep.passed, rep.k_m, f"K_U at p = {rep.k_u}"))
    return out


@check(11, "hessian-metric", "C11.quadratic")
def _c11(rng):
    pts = _points_with(HYPERBOLIC, rng, 20, lambda p: evaluate(HYPERBOLIC, p) > 0)
    values = {sectional_curvature_on_M(HYPERBOLIC, p) for p in pts}
    return [result("C11.quadratic", len(pts) == 20 and values == {-1}, min(values), f"{len(pts)} samples")]


@check(15, "hessian-metric", "C15.log-metric")
def _c15(rng):
    out = []
    for label, f in (("quartic", QUARTIC), ("cubic", CUBIC_G), ("hyperbolic", HYPERBOLIC)):
        pts = sample_cone(f, "index", 5, seed=rng.randrange(2**32)).points
        rep = log_metric_product_check(f, pts, tolerance=1e-8)
        out.append(CheckResult(
            f"C15.log-metric-{label}",
            "pass" if len(pts) == 5 and rep.passed else "fail",
            None,
            rep.max_deviation,
            f"max deviation {rep.max_deviation:.3g}",
        ))
    return out


# ---------------------------------------------------------------------------
# cubic example on R^4


def _r4_predicate(p) -> bool:
    x0, x1, x2, x3 = p
    return x3 < 0 and x0 * x0 + x1 * x1 - x2 * x2 + 3 * x3 * x3 < 0


@check(10, "lemma-cubic", "C10.cubic-evidence")
def _c10(rng):
    out = []
    mismatches = 0
    inside = 0
    for _ in range(1000):
        p = random_point(rng, 4, (-3, 3))
        c = classify_point(CUBIC_R4, p)
        inside += c.in_index_cone
        if c.in_index_cone != _r4_predicate(c.point):
            mismatches += 1
    out.append(result("C10.cone-predicate", mismatches == 0, mismatches, f"1000 samples, {inside} in the index cone"))
    out.append(result(
        "C10.hessian-R4",
        hessian_det(CUBIC_R4) == parse_form("16*x3^2*(x0^2+x1^2-x2^2+3*x3^2)", 4),
    ))
    out.append(result("C10.slice", CUBIC_R4.set_zero(0) == CUBIC_G))
    out.append(result("C10.hessian-g", hessian_det(CUBIC_G) == parse_form("8*z*(x^2-y^2+3*z^2)", 3)))
    s = clebsch_covariant(CUBIC_G)
    out.append(result("C10.clebsch-g", s == Form.constant(3, 16), s.constant_value() if s.is_constant else None))

    # The slice of the R^4 index cone is z < 0, x^2 - y^2 + 3 z^2 < 0. The index
    # cone of g alone is larger (it also meets z > 0), and K_M < 0 occurs there.
    def in_slice(p):
        x, y, z = p
        return z < 0 and x * x - y * y + 3 * z * z < 0 and classify_point(CUBIC_G, p).in_index_cone

    pts = _points_with(CUBIC_G, rng, 50, in_slice)
    bad = 0
    kmin = None
    for p in pts:
        x, y, z = p
        q = x * x - y * y + 3 * z * z
        closed = Fraction(-9, 4) + Fraction(9, 4) * (x * x - y * y - z * z) ** 2 / q ** 2
        k = sectional_curvature_on_M(CUBIC_G, p)
        if not (k == closed == theorem_curv_value(CUBIC_G, p) and k > 0):
            bad += 1
        kmin = k if kmin is None else min(kmin, k)
    out.append(result("C10.reduced-formula", len(pts) == 50 and bad == 0, kmin, "min K_M over the samples"))

    # The slice x0 = 0 is totally geodesic: K_M of the 3-fold on planes inside
    # it equals K_M of the surface for g.
    geo_bad = 0
    for p in pts[:10]:
        lifted = (Fraction(0),) + tuple(p)
        u, v = ((Fraction(0),) + tuple(w) for w in tangent_basis(CUBIC_G, p))
        if sectional_curvature_on_M(CUBIC_R4, lifted, PlaneSpec(u, v)) != sectional_curvature_on_M(CUBIC_G, p):
            geo_bad += 1
    out.append(result("C10.totally-geodesic-slice", geo_bad == 0 and len(pts) >= 10, geo_bad))

    k1 = sectional_curvature_on_M(CUBIC_G, (0, 2, -1))
    k2 = theorem_curv_value(CUBIC_G, (0, 2, -1))
    out.append(result("C10.K_M-at-0,2,-1", k1 == k2 == 54, k1))
    return out


# ---------------------------------------------------------------------------
# structured quartics and binary powers


@check(12, "theorem-four", "C12.simplified-clebsch")
def _c12(rng):
    out = []
    for case in ("f_yz=0", "f_yy=0"):
        bad = 0
        for _ in range(20):
            if case == "f_yz=0":
                f = _lift_xz(random_form(rng, 2, 4, bound=4), "xy") + _lift_xz(random_form(rng, 2, 4, bound=4), "xz")
            else:
                f = _lift_xz(random_form(rng, 2, 4, bound=4), "xz") + Form.variable(3, 1) * _lift_xz(
                    random_form(rng, 2, 3, bound=4), "xz"
                )
            cases = {c.case: c for c in simplified_clebsch_cases(f)}
            if case not in cases or not cases[case].holds:
                bad += 1
        out.append(result(f"C12.{case}", bad == 0, bad, "20 random structured quartics"))

    bad = 0
    for _ in range(50):
        d = rng.randint(2, 7)
        lin = _random_linear(rng)
        coeff = random_rational(rng)
        while coeff == 0:
            coeff = random_rational(rng)
        h = lin ** d * coeff
        res = binary_power_of_linear(h)
        if not (res.degenerate and res.coefficient * res.linear_factor ** d == h):
            bad += 1
    out.append(result("C12.powers-detected", bad == 0, bad, "50 random powers of linear forms"))

    bad = 0
    for _ in range(50):
        l1 = _random_linear(rng)
        l2 = _random_linear(rng)
        while l1.coefficient((1, 0)) * l2.coefficient((0, 1)) == l1.coefficient((0, 1)) * l2.coefficient((1, 0)):
            l2 = _random_linear(rng)
        h = l1 ** rng.randint(1, 4) * l2 ** rng.randint(1, 3)
        if binary_power_of_linear(h).degenerate:
            bad += 1
    out.append(result("C12.non-powers-rejected", bad == 0, bad, "50 products of independent linear forms"))
    return out


def _lift_xz(binary: Form, pair: str) -> Form:
    # Binary form in (x, y) placed on variables (x, y) or (x, z) of a ternary ring.
    if pair == "xy":
        return binary.extend(3)
    return Form(3, {(e[0], 0, e[1]): c for e, c in binary.items()})


# ---------------------------------------------------------------------------
# closure family


@check(13, "lemma-closure", "C13.closure")
def _c13(rng):
    bad = 0
    total = 0
    for d in range(3, 7):
        for _ in range(5):
            alpha = random_form(rng, 2, d, bound=5)
            b = random_rational(rng)
            total += 1
            if not tg.closure_limit_expand(alpha, b).passed:
                bad += 1
    return [result("C13.closure", bad == 0, bad, f"{total} random (alpha, b), d = 3..6")]


# ---------------------------------------------------------------------------
# first variation and the operator T


@check(14, "theorem-irred", "C14.variation")
def _c14_variation(rng):
    out = []
    bad = 0
    for d in (4, 5, 6):
        for _ in range(20):
            alpha = random_form(rng, 2, d, bound=4)
            g = random_form(rng, 3, d, bound=3, density=0.5)
            if not tg.first_variation_clebsch(alpha, g, strict=False).routes_agree:
                bad += 1
    out.append(result("C14.variation-two-routes", bad == 0, bad, "20 pairs for each d = 4, 5, 6"))

    lin_bad = grade_bad = 0
    for d in (4, 5):
        for _ in range(5):
            alpha = random_form(rng, 2, d, bound=4)
            g1 = random_form(rng, 3, d, bound=3, density=0.5)
            g2 = random_form(rng, 3, d, bound=3, density=0.5)
            v = lambda g: tg.first_variation_clebsch(alpha, g).variation  # noqa: E731
            if v(g1 + g2) != v(g1) + v(g2):
                lin_bad += 1
            for a in range(d + 1):
                out_part = tg.variation_bracket(alpha, g1.part_in_variable(2, a))
                if not out_part.is_zero and any(e[2] != a - 1 for e in out_part.terms):
                    grade_bad += 1
    out.append(result("C14.variation-linear", lin_bad == 0, lin_bad))
    out.append(result("C14.variation-z-grading", grade_bad == 0, grade_bad))

    ex = tg.first_variation_clebsch(tg.witness_alpha(4), parse_form("y^3*z", 3))
    out.append(result("C14.variation-example", ex.variation == parse_form("-82944*y^3*z", 3), detail=str(ex.variation)))

    z4 = tg.zariski_tangent_compare(tg.witness_alpha(4), verify_routes=True)
    out.append(result(
        "C14.zariski-d4",
        z4.equal and z4.explicit_rank == z4.kernel_dimension == 10,
        z4.kernel_dimension,
        f"span {z4.explicit_rank}, kernel {z4.kernel_dimension}, strata {z4.strata}",
    ))
    z5 = tg.zariski_tangent_compare(tg.witness_alpha(5))
    out.append(result("C14.zariski-d5", z5.equal and z5.kernel_dimension == 11, z5.kernel_dimension))
    zdeg = tg.zariski_tangent_compare(parse_form("x^4", 2))
    out.append(result("C14.zariski-degenerate-flagged", zdeg.degenerate and not zdeg.equal))
    return out


@check(14, "lemma-general", "C14.spectrum-kernels")
def _c14_general(rng):
    out = []
    spectrum_bad = []
    kernel_bad = []
    factor_bad = []
    for d in range(4, 10):
        table = tg.monomial_spectrum(d)
        if not table.passed:
            spectrum_bad.append(d)
        alpha = tg.witness_alpha(d)
        zeros = table.zero_set
        for r in range(d + 1):
            kb = tg.kernel_of_t(alpha, r)
            want = {(i, r - i) for i in range(r + 1) if (i, r - i) in zeros}
            got = {next(iter(h.terms)) for h in kb.basis if len(h) == 1}
            if kb.dimension != tg.expected_kernel_dimension(d, r) or got != want or len(got) != kb.dimension:
                kernel_bad.append((d, r))
            if any(not tg.t_operator(alpha, h).is_zero for h in kb.basis):
                kernel_bad.append((d, r))
        for _ in range(3):
            h = random_form(rng, 2, rng.randint(0, d + 2), bound=5)
            lhs = tg.t_operator(alpha, h)
            rhs = tg.u_operator(d, h) * Form(2, {(2 * d - 8, 0): -(d * d * (d - 1) ** 2 * (d - 2) ** 2)})
            if lhs != rhs:
                factor_bad.append(d)
    out.append(result("C14.spectrum", not spectrum_bad, len(spectrum_bad), f"d = 4..9; failures {spectrum_bad}"))
    out.append(result("C14.kernels", not kernel_bad, len(kernel_bad), f"witness alpha, r = 0..d; failures {kernel_bad}"))
    out.append(result("C14.T-equals-U-factor", not factor_bad, len(factor_bad), "T = -d^2(d-1)^2(d-2)^2 x^(2d-8) U"))

    ann_bad = 0
    for k in range(50):
        alpha = random_form(rng, 2, 4 + k % 4, bound=5)
        hs = [Form.constant(2, 1), Form.variable(2, 0), Form.variable(2, 1),
              derivative(alpha, (0,)), derivative(alpha, (1,)), alpha]
        if any(not tg.t_operator(alpha, h).is_zero for h in hs):
            ann_bad += 1
    out.append(result("C14.T-annihilates", ann_bad == 0, ann_bad, "50 random alpha, degrees 4..7"))
    return out


# ---------------------------------------------------------------------------
# runner


SECTIONS = tuple(dict.fromkeys(c.section for c in REGISTRY))


def available_selections() -> list[str]:
    return ["all", *SECTIONS, *(f"C{n}" for n in sorted({c.criterion for c in REGISTRY}))]


def select(selection: str) -> list[Check]:
    if selection == "all":
        return list(REGISTRY)
    if selection in SECTIONS:
        return [c for c in REGISTRY if c.section == selection]
    if selection[:1] in "Cc" and selection[1:].isdigit():
        chosen = [c for c in REGISTRY if c.criterion == int(selection[1:])]
        if chosen:
            return chosen
    raise KeyError(f"unknown section {selection!r}; choose from {', '.join(available_selections())}")


def _rng_for(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def run_checks(checks: Iterable[Check], seed: int) -> list[CheckResult]:
    out = []
    for c in checks:
        try:
            out.extend(c.run(_rng_for(seed, c.name)))
        except Exception as exc:  # a crash is a failed check, not a crashed run
            out.append(CheckResult(c.name, "fail", None, None, f"{type(exc).__name__}: {exc}"))
    return out


def run_verify_suite(selection: str = "all", seed: int | None = None) -> RunReport:
    """Run the selected checks and collect a report (raises ``KeyError`` on an unknown tag)."""
    seed = default_seed() if seed is None else seed
    checks = select(selection)
    start = time.perf_counter()
    results = run_checks(checks, seed)
    elapsed = (time.perf_counter() - start) * 1000
    return RunReport("verify", {"selection": selection, "seed": seed}, results, round(elapsed, 1))


def replay(report: RunReport) -> tuple[RunReport, list[str]]:
    """Re-run a report from its inputs; returns the new report and any differing check names."""
    fresh = run_verify_suite(report.inputs["selection"], report.inputs["seed"])
    old = {r.name: (r.status, r.exact) for r in report.results}
    new = {r.name: (r.status, r.exact) for r in fresh.results}
    diffs = sorted(n for n in old.keys() | new.keys() if old.get(n) != new.get(n))
    return fresh, diffs
