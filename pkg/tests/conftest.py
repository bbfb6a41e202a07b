from fractions import Fraction

import sympy
from hypothesis import strategies as st

from geompoly.mpoly import MPoly

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def square_matrices(n_min=1, n_max=4):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n))


def polys(nvars, max_deg=4, max_terms=6):
    def split(d):
        cuts = st.lists(st.integers(0, d), min_size=nvars - 1, max_size=nvars - 1).map(sorted)
        return cuts.map(lambda c: tuple(b - a for a, b in zip([0] + c, c + [d])))

    mono = st.integers(0, max_deg).flatmap(split)
    return st.dictionaries(mono, rationals, max_size=max_terms).map(lambda t: MPoly(nvars, t))


def to_sympy(p: MPoly):
    xs = sympy.symbols(f"x1:{p.nvars + 1}")
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[x ** e for x, e in zip(xs, b)])
                       for b, c in p.terms.items()]), xs


def from_sympy(expr, nvars: int) -> MPoly:
    xs = sympy.symbols(f"x1:{nvars + 1}")
    poly = sympy.Poly(sympy.expand(expr), *xs)
    return MPoly(nvars, {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in poly.terms() if c != 0})


def sympy_matrix(rows):
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows])
