"""Sparse multivariate polynomials over the rationals.

An :class:`MPoly` lives in a fixed number of variables ``x1..xn`` and stores
a map from exponent tuples to nonzero :class:`~fractions.Fraction`
coefficients.  Variable indices in the public API are 1-based.

The same class represents operator polynomials ``q(y)``; :func:`apply_operator`
lets ``y_j`` act as ``d/dx_j`` and :func:`pairing` evaluates the result at 0.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import total_ordering
from math import comb, factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import DimensionError, format_rational, parse_rational

__all__ = [
    "MINUS_INFINITY",
    "MPoly",
    "PolynomialSyntaxError",
    "monomials",
    "grevlex_key",
    "add",
    "sub",
    "mul",
    "scale",
    "partial",
    "directional",
    "shift",
    "homogeneous_component",
    "coefficient",
    "apply_operator",
    "pairing",
    "evaluate",
    "parse",
    "render",
]

Monomial = tuple[int, ...]


@total_ordering
class _MinusInfinity:
    """Degree of the zero polynomial.  Compares below every integer; no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf-degree")

    def __repr__(self):
        return "MINUS_INFINITY"


MINUS_INFINITY = _MinusInfinity()


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def grevlex_key(beta: Monomial):
    """Sort key: larger key means larger monomial in graded reverse lex, x1 > x2 > ..."""
    return (sum(beta), tuple(-b for b in reversed(beta)))


def monomials(nvars: int, degree: int) -> list[Monomial]:
    """All exponent vectors of the given total degree, grevlex descending."""
    if degree < 0:
        return []
    out = []
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev = -1
        beta = []
        for b in bars:
            beta.append(b - prev - 1)
            prev = b
        beta.append(degree + nvars - 2 - prev)
        out.append(tuple(beta))
    out.sort(key=grevlex_key, reverse=True)
    return out


class MPoly:
    """Polynomial in ``nvars`` variables with exact rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for beta, c in terms.items():
                beta = tuple(beta)
                if len(beta) != nvars or any(e < 0 for e in beta):
                    raise DimensionError(f"bad exponent vector {beta} for {nvars} variables")
                c = c if isinstance(c, Fraction) else parse_rational(c)
                if c:
                    clean[beta] = clean.get(beta, 0) + c
                    if not clean[beta]:
                        del clean[beta]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> "MPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, j: int) -> "MPoly":
        _check_index(nvars, j)
        beta = [0] * nvars
        beta[j - 1] = 1
        return cls._raw(nvars, {tuple(beta): Fraction(1)})

    @classmethod
    def monomial(cls, beta: Sequence[int], c=1) -> "MPoly":
        return cls(len(beta), {tuple(beta): c})

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(b) for b in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(b) for b in self.terms}) <= 1

    def variables(self) -> set[int]:
        """1-based indices of the variables that occur."""
        return {j + 1 for beta in self.terms for j, e in enumerate(beta) if e}

    def is_free_of(self, j: int) -> bool:
        _check_index(self.nvars, j)
        return all(beta[j - 1] == 0 for beta in self.terms)

    def coefficient(self, beta: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(beta), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "MPoly"):
        if self.nvars != other.nvars:
            raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for beta, c in other.terms.items():
            s = out.get(beta, 0) + c
            if s:
                out[beta] = s
            else:
                out.pop(beta, None)
        return MPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.nvars, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for b1, c1 in self.terms.items():
            for b2, c2 in other.terms.items():
                beta = tuple(x + y for x, y in zip(b1, b2))
                s = out.get(beta, 0) + c1 * c2
                if s:
                    out[beta] = s
                else:
                    out.pop(beta, None)
        return MPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "MPoly":
        c = Fraction(c)
        if not c:
            return MPoly.zero(self.nvars)
        return MPoly._raw(self.nvars, {b: v * c for b, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MPoly({self.nvars}, {render(self)!r})"

    def __str__(self):
        return render(self)

    # -- calculus ------------------------------------------------------------

    def partial(self, j: int) -> "MPoly":
        return partial(self, j)

    def embed(self, nvars: int, positions: Sequence[int]) -> "MPoly":
        """Re-home variable ``k`` (1-based) at ``positions[k-1]`` of an ``nvars``-variable ring."""
        if len(positions) != self.nvars:
            raise DimensionError("need one target position per variable")
        out = {}
        for beta, c in self.terms.items():
            new = [0] * nvars
            for e, pos in zip(beta, positions):
                new[pos - 1] = e
            out[tuple(new)] = c
        return MPoly._raw(nvars, out)


def _check_index(nvars: int, j: int):
    if not 1 <= j <= nvars:
        raise IndexError(f"variable index {j} outside 1..{nvars}")


def _check_vector(p: MPoly, v: Sequence) -> list[Fraction]:
    if len(v) != p.nvars:
        raise DimensionError(f"vector of length {len(v)} for {p.nvars} variables")
    return [parse_rational(x) for x in v]


def add(p: MPoly, q: MPoly) -> MPoly:
    p._check(q)
    return p + q


def sub(p: MPoly, q: MPoly) -> MPoly:
    p._check(q)
    return p - q


def mul(p: MPoly, q: MPoly) -> MPoly:
    p._check(q)
    return p * q


def scale(p: MPoly, c) -> MPoly:
    return p.scale(c)


def partial(p: MPoly, j: int) -> MPoly:
    """Partial derivative with respect to ``x_j``."""
    _check_index(p.nvars, j)
    k = j - 1
    out = {}
    for beta, c in p.terms.items():
        e = beta[k]
        if e:
            out[beta[:k] + (e - 1,) + beta[k + 1:]] = c * e
    return MPoly._raw(p.nvars, out)


def directional(p: MPoly, v: Sequence) -> MPoly:
    """Directional derivative ``sum_j v_j d p / d x_j``."""
    v = _check_vector(p, v)
    out: dict[Monomial, Fraction] = {}
    for k, vk in enumerate(v):
        if not vk:
            continue
        for beta, c in p.terms.items():
            e = beta[k]
            if e:
                b = beta[:k] + (e - 1,) + beta[k + 1:]
                s = out.get(b, 0) + c * e * vk
                if s:
                    out[b] = s
                else:
                    out.pop(b, None)
    return MPoly._raw(p.nvars, out)


def shift(p: MPoly, v: Sequence) -> MPoly:
    """The polynomial ``p(x - v)``, by binomial expansion of every term."""
    v = _check_vector(p, v)
    out: dict[Monomial, Fraction] = {}
    for beta, c in p.terms.items():
        # per-variable expansions of (x_j - v_j)^{beta_j}: list of (exponent, coeff)
        factors = []
        for e, vj in zip(beta, v):
            if vj:
                factors.append([(e - k, comb(e, k) * (-vj) ** k) for k in range(e + 1)])
            else:
                factors.append([(e, Fraction(1))])
        for combo in itertools.product(*factors):
            b = tuple(t[0] for t in combo)
            coef = c
            for t in combo:
                coef *= t[1]
            s = out.get(b, 0) + coef
            if s:
                out[b] = s
            else:
                out.pop(b, None)
    return MPoly._raw(p.nvars, out)


def homogeneous_component(p: MPoly, d: int) -> MPoly:
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return MPoly._raw(p.nvars, {b: c for b, c in p.terms.items() if sum(b) == d})


def coefficient(p: MPoly, beta: Sequence[int]) -> Fraction:
    return p.coefficient(beta)


def _falling(e: int, g: int) -> int:
    return factorial(e) // factorial(e - g)


def apply_operator(q: MPoly, p: MPoly) -> MPoly:
    """Let ``q(y)`` act on ``p(x)`` with ``y_j`` acting as ``d/dx_j``."""
    q._check(p)
    out: dict[Monomial, Fraction] = {}
    for gamma, cq in q.terms.items():
        for beta, cp in p.terms.items():
            if any(g > b for g, b in zip(gamma, beta)):
                continue
            mult = 1
            for b, g in zip(beta, gamma):
                mult *= _falling(b, g)
            m = tuple(b - g for b, g in zip(beta, gamma))
            s = out.get(m, 0) + cq * cp * mult
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return MPoly._raw(p.nvars, out)


def pairing(q: MPoly, p: MPoly) -> Fraction:
    """``<q, p> = (q . p)(0)``; only matching monomials contribute."""
    q._check(p)
    total = Fraction(0)
    for gamma, cq in q.terms.items():
        cp = p.terms.get(gamma)
        if cp:
            w = 1
            for g in gamma:
                w *= factorial(g)
            total += cq * cp * w
    return total


def evaluate(p: MPoly, point: Sequence) -> Fraction:
    point = _check_vector(p, point)
    total = Fraction(0)
    for beta, c in p.terms.items():
        t = c
        for x, e in zip(point, beta):
            if e:
                t *= x ** e
        total += t
    return total


# -- text form -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z])|(\^)|(\*)|(/)|(\+)|(-))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    kinds = ("INT", "VAR", "^", "*", "/", "+", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        for kind, group in zip(kinds, m.groups()):
            if group is not None:
                tokens.append((kind, group, m.start(m.lastindex)))
                break
        pos = m.end()
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars: int, var: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.nvars = nvars
        self.var = var

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise PolynomialSyntaxError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def integer(self) -> int:
        return int(self.take("INT")[1])

    def coef(self) -> Fraction:
        num = self.integer()
        if self.peek()[0] == "/":
            self.take()
            tok = self.peek()
            den = self.integer()
            if den == 0:
                raise PolynomialSyntaxError("zero denominator", tok[2])
            return Fraction(num, den)
        return Fraction(num)

    def factor(self, beta: list[int]):
        tok = self.take("VAR")
        if tok[1] != self.var:
            raise PolynomialSyntaxError(f"unknown variable {tok[1]!r}", tok[2])
        idx_tok = self.peek()
        j = self.integer()
        if not 1 <= j <= self.nvars:
            raise PolynomialSyntaxError(
                f"variable index {j} outside 1..{self.nvars}", idx_tok[2])
        e = 1
        if self.peek()[0] == "^":
            self.take()
            e = self.integer()
        beta[j - 1] += e

    def term(self, sign: int) -> tuple[Monomial, Fraction]:
        beta = [0] * self.nvars
        c = Fraction(sign)
        kind = self.peek()[0]
        if kind == "INT":
            c *= self.coef()
            if self.peek()[0] == "*":
                self.take()
                self.factor(beta)
            elif self.peek()[0] == "VAR":
                self.factor(beta)
            else:
                return tuple(beta), c
        elif kind == "VAR":
            self.factor(beta)
        else:
            tok = self.peek()
            raise PolynomialSyntaxError(f"expected a term, found {tok[1] or 'end of input'!r}", tok[2])
        while self.peek()[0] == "*":
            self.take()
            self.factor(beta)
        return tuple(beta), c

    def poly(self) -> MPoly:
        terms: dict[Monomial, Fraction] = {}
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            beta, c = self.term(sign)
            terms[beta] = terms.get(beta, 0) + c
            kind = self.peek()[0]
            if kind == "END":
                break
            if kind not in "+-":
                tok = self.peek()
                raise PolynomialSyntaxError(f"unexpected {tok[1]!r}", tok[2])
            sign = -1 if self.take()[0] == "-" else 1
        return MPoly(self.nvars, terms)


def parse(text: str, nvars: int, var: str = "x") -> MPoly:
    """Parse e.g. ``"3*x1^2*x2 - 1/2*x3"``; variable indices are 1-based and bounded by ``nvars``."""
    if not text.strip():
        raise PolynomialSyntaxError("empty polynomial", 0)
    return _Parser(text, nvars, var).poly()


def _render_monomial(beta: Monomial, var: str) -> str:
    parts = []
    for j, e in enumerate(beta, start=1):
        if e == 1:
            parts.append(f"{var}{j}")
        elif e > 1:
            parts.append(f"{var}{j}^{e}")
    return "*".join(parts)


def render(p: MPoly, var: str = "x") -> str:
    """Canonical text: grevlex order, highest degree first, ``"0"`` for zero."""
    if not p.terms:
        return "0"
    out = []
    for k, (beta, c) in enumerate(p.sorted_terms()):
        mono = _render_monomial(beta, var)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def render_monomial_key(beta: Monomial) -> str:
    """Monomial label used as a JSON key (``"1"`` for the empty monomial)."""
    return _render_monomial(beta, "x") or "1"
