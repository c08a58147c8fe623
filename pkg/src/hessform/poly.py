"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Form` maps exponent vectors to nonzero :class:`~fractions.Fraction`
coefficients. Values are immutable; every operation returns a new form in
canonical shape (no stored zeros), so equality of forms is exact polynomial
equality.

The text format is the one used on the command line::

    x^2*y*z + x*y^2*z + x*y*z^2

Terms are printed in graded-lexicographic descending order with explicit
``*`` and ``^``. Variables are ``x, y, z`` for arity at most three and
``x0, x1, ...`` otherwise; the parser accepts either spelling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

Exponents = tuple[int, ...]

_LETTERS = "xyz"


class FormSyntaxError(ValueError):
    """Raised when a form expression cannot be parsed."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariableError(FormSyntaxError):
    pass


class ArityMismatchError(ValueError):
    pass


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Form:
    """Polynomial in ``arity`` variables over the rationals.

    Despite the name, a ``Form`` need not be homogeneous; use
    :attr:`is_homogeneous` to check.
    """

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Sequence[int], object] | None = None):
        if arity < 1:
            raise ValueError("arity must be at least 1")
        self.arity = arity
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != arity:
                raise ArityMismatchError(f"exponent vector {exps} does not have length {arity}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = clean.get(exps, Fraction(0)) + _as_fraction(coeff)
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, arity: int, terms: dict[Exponents, Fraction]) -> "Form":
        # Trusted constructor: caller guarantees canonical terms.
        obj = cls.__new__(cls)
        obj.arity = arity
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "Form":
        return cls._raw(arity, {})

    @classmethod
    def constant(cls, arity: int, value) -> "Form":
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity: int, index: int) -> "Form":
        if not 0 <= index < arity:
            raise IndexError(f"variable index {index} out of range for arity {arity}")
        exps = [0] * arity
        exps[index] = 1
        return cls._raw(arity, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Form":
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def parse(cls, text: str, arity: int | None = None) -> "Form":
        return parse_form(text, arity)

    # -- structure ----------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Maximal total degree; ``-1`` for the zero form."""
        return max((sum(e) for e in self._terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("form is not constant")
        return self._terms.get((0,) * self.arity, Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in graded-lex descending order."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Form":
        if isinstance(other, Form):
            if other.arity != self.arity:
                raise ArityMismatchError(f"arity {self.arity} vs {other.arity}")
            return other
        if isinstance(other, (int, Rational)):
            return Form.constant(self.arity, other)
        return NotImplemented

    def __add__(self, other) -> "Form":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for exps, c in other._terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return Form._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self) -> "Form":
        return Form._raw(self.arity, {e: -c for e, c in self._terms.items()})

    def __pos__(self) -> "Form":
        return self

    def __sub__(self, other) -> "Form":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Form":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Form":
        if isinstance(other, (int, Rational)):
            c = _as_fraction(other)
            if not c:
                return Form.zero(self.arity)
            return Form._raw(self.arity, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Exponents, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Form._raw(self.arity, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Form":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Form.constant(self.arity, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other) -> "Form":
        if isinstance(other, (int, Rational)):
            return self * (1 / _as_fraction(other))
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Form):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self.is_constant and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation -------------------------------------------

    def diff(self, *indices: int) -> "Form":
        return derivative(self, indices)

    def derivative(self, indices: Sequence[int]) -> "Form":
        return derivative(self, indices)

    def evaluate(self, point: Sequence):
        return evaluate(self, point)

    def __call__(self, *point):
        return evaluate(self, point)

    def substitute(self, matrix) -> "Form":
        return linear_substitute(self, matrix)

    def extend(self, arity: int) -> "Form":
        """The same polynomial viewed in ``arity`` variables (new ones appended)."""
        if arity < self.arity:
            raise ArityMismatchError("cannot shrink arity with extend()")
        pad = (0,) * (arity - self.arity)
        return Form._raw(arity, {e + pad: c for e, c in self._terms.items()})

    def set_zero(self, index: int) -> "Form":
        """Restrict to the hyperplane ``x_index = 0`` and drop that variable."""
        if self.arity == 1:
            raise ArityMismatchError("cannot drop the only variable")
        return Form._raw(
            self.arity - 1,
            {e[:index] + e[index + 1:]: c for e, c in self._terms.items() if e[index] == 0},
        )

    def part_in_variable(self, index: int, power: int) -> "Form":
        """Terms whose exponent of variable ``index`` equals ``power``."""
        return Form._raw(self.arity, {e: c for e, c in self._terms.items() if e[index] == power})

    def to_text(self) -> str:
        return format_form(self)

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"Form({format_form(self)!r}, arity={self.arity})"


# ---------------------------------------------------------------------------
# calculus


def derivative(f: Form, indices: Iterable[int]) -> Form:
    """Iterated partial derivative of ``f`` along the given variable indices."""
    terms = f._terms
    for i in indices:
        if not 0 <= i < f.arity:
            raise IndexError(f"variable index {i} out of range for arity {f.arity}")
        out: dict[Exponents, Fraction] = {}
        for exps, c in terms.items():
            k = exps[i]
            if k:
                e = exps[:i] + (k - 1,) + exps[i + 1:]
                out[e] = c * k
        terms = out
    return Form._raw(f.arity, terms)


def gradient(f: Form) -> list[Form]:
    return [derivative(f, (i,)) for i in range(f.arity)]


def evaluate(f: Form, point: Sequence):
    """Value of ``f`` at ``point``.

    Exact when every coordinate is an int or Fraction; a float otherwise.
    """
    if len(point) != f.arity:
        raise ArityMismatchError(f"point has length {len(point)}, form has arity {f.arity}")
    exact = all(isinstance(p, (int, Rational)) for p in point)
    pts = [_as_fraction(p) for p in point] if exact else [float(p) for p in point]
    maxdeg = [0] * f.arity
    for exps in f._terms:
        for i, e in enumerate(exps):
            if e > maxdeg[i]:
                maxdeg[i] = e
    powers = []
    for p, m in zip(pts, maxdeg):
        row = [1]
        for _ in range(m):
            row.append(row[-1] * p)
        powers.append(row)
    total = Fraction(0) if exact else 0.0
    for exps, c in f._terms.items():
        term = c if exact else float(c)
        for i, e in enumerate(exps):
            if e:
                term *= powers[i][e]
        total += term
    return total


def linear_substitute(f: Form, matrix) -> Form:
    """Return ``f(A x)``: variable ``x_i`` becomes ``sum_j A[i][j] x_j``.

    Composition follows ``(f∘A)∘B == f∘(A @ B)``.
    """
    rows = [list(r) for r in matrix]
    n = f.arity
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ArityMismatchError(f"substitution matrix must be {n}x{n}")
    images = [Form(n, {tuple(int(k == j) for k in range(n)): rows[i][j] for j in range(n)}) for i in range(n)]
    cache: dict[tuple[int, int], Form] = {}

    def power(i: int, e: int) -> Form:
        if (i, e) not in cache:
            cache[(i, e)] = Form.constant(n, 1) if e == 0 else power(i, e - 1) * images[i]
        return cache[(i, e)]

    out = Form.zero(n)
    for exps, c in f._terms.items():
        term = Form.constant(n, c)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


def monomials(arity: int, degree: int) -> list[Exponents]:
    """All exponent vectors of the given total degree, graded-lex descending."""
    if arity == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(arity - 1, degree - first):
            out.append((first,) + rest)
    return out


def form_from_coefficients(arity: int, degree: int, coeffs: Sequence) -> Form:
    return Form(arity, dict(zip(monomials(arity, degree), coeffs)))


def coefficient_vector(f: Form, degree: int) -> list[Fraction]:
    return [f.coefficient(m) for m in monomials(f.arity, degree)]


# ---------------------------------------------------------------------------
# epsilon-truncated forms


@dataclass(frozen=True)
class EpsForm:
    """``base + eps * eps_part`` with ``eps**2 == 0``."""

    base: Form
    eps_part: Form

    def __post_init__(self):
        if self.base.arity != self.eps_part.arity:
            raise ArityMismatchError("base and eps_part must share arity")

    @classmethod
    def lift(cls, f: Form) -> "EpsForm":
        return cls(f, Form.zero(f.arity))

    @property
    def arity(self) -> int:
        return self.base.arity

    def _coerce(self, other) -> "EpsForm":
        if isinstance(other, EpsForm):
            return other
        if isinstance(other, Form):
            return EpsForm.lift(other)
        if isinstance(other, (int, Rational)):
            return EpsForm.lift(Form.constant(self.arity, other))
        return NotImplemented

    def __add__(self, other) -> "EpsForm":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return EpsForm(self.base + other.base, self.eps_part + other.eps_part)

    __radd__ = __add__

    def __neg__(self) -> "EpsForm":
        return EpsForm(-self.base, -self.eps_part)

    def __sub__(self, other) -> "EpsForm":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "EpsForm":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "EpsForm":
        if isinstance(other, (int, Rational)):
            return EpsForm(self.base * other, self.eps_part * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        eps = Form.zero(self.arity)
        if self.eps_part and other.base:
            eps = eps + self.eps_part * other.base
        if self.base and other.eps_part:
            eps = eps + self.base * other.eps_part
        return EpsForm(self.base * other.base, eps)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "EpsForm":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if k == 0:
            return EpsForm.lift(Form.constant(self.arity, 1))
        # (a + eps b)^k = a^k + eps k a^(k-1) b
        return EpsForm(self.base ** k, self.base ** (k - 1) * self.eps_part * k)

    def derivative(self, indices: Sequence[int]) -> "EpsForm":
        return EpsForm(derivative(self.base, indices), derivative(self.eps_part, indices))


# ---------------------------------------------------------------------------
# text format


def variable_names(arity: int) -> list[str]:
    if arity <= 3:
        return list(_LETTERS[:arity])
    return [f"x{i}" for i in range(arity)]


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_form(f: Form) -> str:
    """Canonical text of ``f`` (round-trips through :func:`parse_form`)."""
    if f.is_zero:
        return "0"
    names = variable_names(f.arity)
    pieces = []
    for i, (exps, c) in enumerate(f.sorted_terms()):
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if i == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


_NUM = re.compile(r"\d+(?:/\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        for kind, pattern in (("num", _NUM), ("name", _NAME)):
            m = pattern.match(text, pos)
            if m:
                tokens.append((kind, m.group(0), pos))
                pos = m.end()
                break
        else:
            ch = text[pos]
            if ch not in "+-*^()":
                raise FormSyntaxError(f"unexpected character {ch!r}", pos)
            tokens.append(("op", ch, pos))
            pos += 1
    tokens.append(("end", "", len(text)))
    return tokens


def _variable_index(name: str) -> int | None:
    if name in _LETTERS:
        return _LETTERS.index(name)
    m = re.fullmatch(r"x(\d+)", name)
    return int(m.group(1)) if m else None


def infer_arity(text: str) -> int:
    """Smallest arity containing every variable mentioned in ``text``."""
    arity = 1
    for kind, value, pos in _tokenize(text):
        if kind == "name":
            idx = _variable_index(value)
            if idx is None:
                raise UnknownVariableError(f"unknown variable {value!r}", pos)
            arity = max(arity, idx + 1)
    return arity


class _Parser:
    def __init__(self, text: str, arity: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.arity = arity

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value or kind == "end":
            raise FormSyntaxError(f"expected {value!r}", pos)

    def parse(self) -> Form:
        result = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise FormSyntaxError(f"unexpected {v!r}", pos)
        return result

    def expr(self) -> Form:
        result = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Form:
        result = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            result = result * self.unary()
        return result

    def unary(self) -> Form:
        kind, v, _ = self.peek()
        if kind == "op" and v in ("+", "-"):
            self.take()
            operand = self.unary()
            return -operand if v == "-" else operand
        return self.power()

    def power(self) -> Form:
        base = self.atom()
        while self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "num" or "/" in v:
                raise FormSyntaxError("exponent must be a nonnegative integer", pos)
            base = base ** int(v)
        return base

    def atom(self) -> Form:
        kind, v, pos = self.take()
        if kind == "num":
            num, _, den = v.partition("/")
            if den and int(den) == 0:
                raise FormSyntaxError("zero denominator", pos)
            return Form.constant(self.arity, Fraction(int(num), int(den) if den else 1))
        if kind == "name":
            idx = _variable_index(v)
            if idx is None or idx >= self.arity or (v in _LETTERS and self.arity > 3):
                raise UnknownVariableError(f"unknown variable {v!r} for arity {self.arity}", pos)
            return Form.variable(self.arity, idx)
        if kind == "op" and v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise FormSyntaxError("unexpected end of input", pos)
        raise FormSyntaxError(f"unexpected {v!r}", pos)


def parse_form(text: str, arity: int | None = None) -> Form:
    """Parse an expression into its expanded canonical form.

    >>> str(parse_form("x*y*z*(x+y+z)", 3))
    'x^2*y*z + x*y^2*z + x*y*z^2'
    """
    if arity is None:
        arity = infer_arity(text)
    if not text.strip():
        raise FormSyntaxError("empty expression", 0)
    return _Parser(text, arity).parse()


def variables(arity: int) -> list[Form]:
    """Coordinate forms ``x_0, ..., x_{n-1}``; handy for building forms in code."""
    return [Form.variable(arity, i) for i in range(arity)]


def all_index_tuples(arity: int, order: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing index tuples, i.e. distinct partial derivatives of that order."""
    for idx in product(range(arity), repeat=order):
        if list(idx) == sorted(idx):
            yield idx
