"""Positive cone / index cone classification, sampling and curvature scans.

A point is in the positive cone when ``f > 0`` there, and in the index cone
when additionally the Hessian of ``f`` has Lorentzian signature
``(1, n-1, 0)``. Both are cones, so every quantity here is evaluated at
whatever point of the ray the sampler produced.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .curvature import (
    DegenerateMetricError,
    coordinate_plane_curvatures_on_M,
    sectional_curvature_on_M,
)
from .poly import Form, derivative, evaluate
from .sampling import make_rng, random_point
from .xlinalg import RationalMatrix, Signature, signature

ConeKind = Literal["positive", "index"]


@dataclass(frozen=True)
class ConeClassification:
    point: tuple[Fraction, ...]
    f_value: Fraction
    hessian_signature: Signature

    @property
    def in_positive_cone(self) -> bool:
        return self.f_value > 0

    @property
    def in_index_cone(self) -> bool:
        n = len(self.point)
        return self.in_positive_cone and tuple(self.hessian_signature) == (1, n - 1, 0)


def hessian_at(f: Form, point) -> RationalMatrix:
    n = f.arity
    return RationalMatrix([[evaluate(derivative(f, (i, j)), point) for j in range(n)] for i in range(n)])


def classify_point(f: Form, point: Sequence) -> ConeClassification:
    if not f.is_homogeneous or f.degree < 2:
        raise ValueError("expected a homogeneous form of degree >= 2")
    p = tuple(Fraction(c) for c in point)
    if len(p) != f.arity:
        raise ValueError(f"point has length {len(p)}, form has arity {f.arity}")
    if not any(p):
        raise ValueError("cannot classify the origin")
    return ConeClassification(p, evaluate(f, p), signature(hessian_at(f, p)))


@dataclass
class ConeSample:
    which: ConeKind
    points: list[tuple[Fraction, ...]]
    draws: int
    requested: int

    @property
    def acceptance_rate(self) -> float:
        return len(self.points) / self.draws if self.draws else 0.0


def sample_cone(
    f: Form,
    which: ConeKind = "index",
    count: int = 100,
    seed: int | None = None,
    box: tuple = (-3, 3),
    max_draws: int | None = None,
) -> ConeSample:
    """Rejection-sample rational points of ``box^n`` lying in the requested cone."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if which not in ("positive", "index"):
        raise ValueError(f"unknown cone {which!r}")
    rng = make_rng(seed)
    max_draws = max_draws or 200 * count
    points = []
    draws = 0
    while len(points) < count and draws < max_draws:
        p = random_point(rng, f.arity, box)
        draws += 1
        c = classify_point(f, p)
        if c.in_index_cone if which == "index" else c.in_positive_cone:
            points.append(p)
    return ConeSample(which, points, draws, count)


@dataclass
class ConeComparison:
    checked: int
    discrepancies: list[tuple[Fraction, ...]]

    @property
    def equal(self) -> bool:
        return not self.discrepancies


def cone_comparison(f: Form, samples: Sequence) -> ConeComparison:
    """Report positive-cone samples that fail to lie in the index cone."""
    bad = []
    checked = 0
    for p in samples:
        c = classify_point(f, p)
        if not c.in_positive_cone:
            continue
        checked += 1
        if not c.in_index_cone:
            bad.append(c.point)
    return ConeComparison(checked, bad)


@dataclass
class ScanRow:
    point: tuple[Fraction, ...]
    f_value: Fraction
    signature: Signature
    k_min: Fraction
    k_max: Fraction


@dataclass
class ScanTable:
    mode: str
    rows: list[ScanRow] = field(default_factory=list)
    skipped: list[tuple[Fraction, ...]] = field(default_factory=list)

    @property
    def k_min(self) -> Fraction | None:
        return min((r.k_min for r in self.rows), default=None)

    @property
    def k_max(self) -> Fraction | None:
        return max((r.k_max for r in self.rows), default=None)

    def sign_counts(self) -> dict[str, int]:
        """Rows whose curvature range is entirely positive, zero, negative, or mixed."""
        counts = {"positive": 0, "zero": 0, "negative": 0, "mixed": 0}
        for r in self.rows:
            if r.k_min > 0:
                counts["positive"] += 1
            elif r.k_max < 0:
                counts["negative"] += 1
            elif r.k_min == r.k_max == 0:
                counts["zero"] += 1
            else:
                counts["mixed"] += 1
        return counts

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["point", "f", "sig_pos", "sig_neg", "sig_zero", "K_M_exact", "K_M_float"])
        for r in self.rows:
            w.writerow([
                ";".join(str(c) for c in r.point),
                str(r.f_value),
                *r.signature,
                f"{r.k_min.numerator}/{r.k_min.denominator}",
                repr(float(r.k_min)),
            ])
        return buf.getvalue()

    def to_json(self) -> str:
        def q(v: Fraction) -> str:
            return f"{v.numerator}/{v.denominator}"

        return json.dumps({
            "mode": self.mode,
            "rows": [
                {
                    "point": [q(c) for c in r.point],
                    "f": q(r.f_value),
                    "signature": list(r.signature),
                    "K_M_min": q(r.k_min),
                    "K_M_max": q(r.k_max),
                    "K_M_min_float": float(r.k_min),
                }
                for r in self.rows
            ],
            "skipped": [[q(c) for c in p] for p in self.skipped],
            "min": q(self.k_min) if self.k_min is not None else None,
            "max": q(self.k_max) if self.k_max is not None else None,
            "signs": self.sign_counts(),
        }, indent=2)


def curvature_scan(f: Form, samples: Sequence, mode: Literal["K_M", "full-tensor"] = "K_M") -> ScanTable:
    """Exact ``K_M`` at each sample.

    ``K_M`` mode needs a ternary form (the tangent plane is unique).
    ``full-tensor`` mode evaluates ``K_M`` on every plane spanned by two
    tangent basis vectors and records the extremes. Degenerate samples are
    skipped and listed.
    """
    if mode not in ("K_M", "full-tensor"):
        raise ValueError(f"unknown scan mode {mode!r}")
    if mode == "K_M" and f.arity != 3:
        raise ValueError("K_M mode needs a ternary form; use full-tensor")
    table = ScanTable(mode)
    for p in samples:
        c = classify_point(f, p)
        try:
            if mode == "K_M":
                k = sectional_curvature_on_M(f, c.point)
                lo = hi = k
            else:
                values = [k for _, k in coordinate_plane_curvatures_on_M(f, c.point)]
                if not values:
                    raise DegenerateMetricError("no nondegenerate tangent plane")
                lo, hi = min(values), max(values)
        except (DegenerateMetricError, ValueError):
            table.skipped.append(c.point)
            continue
        table.rows.append(ScanRow(c.point, c.f_value, c.hessian_signature, lo, hi))
    return table
