"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices are small dense
:class:`QMatrix` values; rank and nullspace run a sparse fraction-free
elimination on integer rows, since the degree-wise systems built in
:mod:`geompoly.gradedspace` are large but have only ``n`` nonzeros per row.

Subsets ``J`` of ``[n]`` are 1-based throughout, matching the CLI and the
JSON certificates.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "DimensionError",
    "QMatrix",
    "parse_rational",
    "format_rational",
    "determinant",
    "principal_minor",
    "all_principal_minors_nonzero",
    "nullspace",
    "rank",
    "solve",
    "bareiss_pivots",
]

# Large prime used only to certify full rank cheaply (rank mod p <= rank over Q).
_CERT_PRIME = (1 << 61) - 1


class DimensionError(ValueError):
    """Raised on shape mismatches."""


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction; rejects ``q = 0``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"rationals must be given as strings or ints, got {value!r}")
    text = value.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {value!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {value!r}")
    return Fraction(p, q)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(parse_rational(x) if not isinstance(x, Fraction) else x
                           for x in row) for row in rows)
        if not rows:
            raise DimensionError("matrix must have at least one row")
        ncols = len(rows[0])
        if ncols == 0 or any(len(r) != ncols for r in rows):
            raise DimensionError("ragged or empty rows")
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def from_json(cls, data) -> "QMatrix":
        """Build from ``{"n": int, "rows": [[rat, ...], ...]}`` (a dict or a JSON string)."""
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "rows" not in data:
            raise ValueError('matrix JSON needs a "rows" field')
        m = cls([[parse_rational(x) for x in row] for row in data["rows"]])
        n = data.get("n")
        if n is not None and (m.nrows != n or m.ncols != n):
            raise DimensionError(f'"n" = {n} does not match a {m.nrows}x{m.ncols} matrix')
        return m

    def to_json(self) -> dict:
        out = {"rows": [[format_rational(x) for x in row] for row in self.rows]}
        if self.is_square:
            out = {"n": self.nrows, **out}
        return out

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "QMatrix":
        return QMatrix(zip(*self.rows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        """0-based row/column selection."""
        return QMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def permuted(self, perm: Sequence[int]) -> "QMatrix":
        """Return ``P A P^T`` where ``perm[k]`` is the old index placed at position ``k``."""
        return self.submatrix(perm, perm)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self.rows)
        return f"QMatrix([{body}])"


def _as_matrix(A) -> QMatrix:
    return A if isinstance(A, QMatrix) else QMatrix(A)


def _require_square(A: QMatrix):
    if not A.is_square:
        raise DimensionError(f"expected a square matrix, got {A.nrows}x{A.ncols}")


def bareiss_pivots(A) -> tuple[list[int], int]:
    """Fraction-free (Bareiss) elimination of a square matrix.

    Returns the diagonal of the final integer echelon form after clearing
    row denominators, together with the sign of the row permutation used.
    The last pivot is the determinant of the integer-scaled matrix.
    """
    A = _as_matrix(A)
    _require_square(A)
    n = A.nrows
    m = []
    for row in A.rows:
        den = lcm(*(x.denominator for x in row))
        m.append([int(x * den) for x in row])
    sign = 1
    prev = 1
    pivots = []
    for k in range(n):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                pivots.extend([0] * (n - k))
                return pivots, sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
        pivots.append(pk)
    return pivots, sign


def determinant(A) -> Fraction:
    """Exact determinant via Bareiss elimination."""
    A = _as_matrix(A)
    _require_square(A)
    scale = 1
    for row in A.rows:
        scale *= lcm(*(x.denominator for x in row))
    pivots, sign = bareiss_pivots(A)
    return Fraction(sign * pivots[-1], scale)


def principal_minor(A, J: Iterable[int]) -> Fraction:
    """Determinant of the principal submatrix on the 1-based index set ``J``.

    The empty minor is 1.
    """
    A = _as_matrix(A)
    _require_square(A)
    idx = sorted(set(J))
    for j in idx:
        if not 1 <= j <= A.nrows:
            raise IndexError(f"index {j} outside 1..{A.nrows}")
    if not idx:
        return Fraction(1)
    zero_based = [j - 1 for j in idx]
    return determinant(A.submatrix(zero_based, zero_based))


def all_principal_minors_nonzero(A) -> tuple[bool, tuple[int, ...] | None]:
    """Check every nonempty principal minor.

    Returns ``(True, None)`` or ``(False, J)`` where ``J`` is the first
    vanishing subset by cardinality, then lexicographically.
    """
    A = _as_matrix(A)
    _require_square(A)
    n = A.nrows
    for size in range(1, n + 1):
        for J in itertools.combinations(range(1, n + 1), size):
            if principal_minor(A, J) == 0:
                return False, J
    return True, None


# -- sparse fraction-free elimination ---------------------------------------

def _integer_row(row) -> dict[int, int]:
    """Clear denominators of a sparse or dense row and divide out the content."""
    items = row.items() if isinstance(row, dict) else enumerate(row)
    items = [(c, Fraction(v)) for c, v in items if v]
    if not items:
        return {}
    den = lcm(*(v.denominator for _, v in items))
    out = {c: int(v * den) for c, v in items}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _combine(pivot: dict, row: dict, col: int) -> dict:
    """Integer combination of ``row`` and ``pivot`` that kills ``row[col]``."""
    a = pivot[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {c: a * v for c, v in row.items()}
    for c, v in pivot.items():
        w = out.get(c, 0) - b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _echelon(rows: Iterable[dict[int, int]]) -> dict[int, dict[int, int]]:
    """Insert integer rows one at a time; returns ``{pivot column: row}``."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                if row[c] < 0:
                    row = {k: -v for k, v in row.items()}
                pivots[c] = row
                break
            row = _combine(piv, row, c)
    return pivots


def _rank_mod_p(rows: Iterable[dict[int, int]], p: int = _CERT_PRIME) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in row.items()}
                break
            f = row[c]
            for k, v in piv.items():
                w = (row.get(k, 0) - f * v) % p
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
    return len(pivots)


def _sparse_rows(A) -> tuple[list[dict[int, int]], int]:
    if isinstance(A, QMatrix):
        return [_integer_row(r) for r in A.rows], A.ncols
    rows, ncols = A
    return [_integer_row(r) for r in rows], ncols


def rank(A) -> int:
    """Exact rank.

    ``A`` is a :class:`QMatrix`, a list of dense rows, or a pair
    ``(sparse_rows, ncols)`` with rows given as ``{column: value}`` dicts.
    """
    if not isinstance(A, (QMatrix, tuple)):
        A = _as_matrix(A)
    rows, ncols = _sparse_rows(A)
    rows = [r for r in rows if r]
    bound = min(len(rows), ncols)
    # rank mod p never exceeds the rank over Q, so a full-rank residue is a proof.
    if _rank_mod_p(rows) == bound:
        return bound
    return len(_echelon(rows))


def _reduce_upward(pivots: dict[int, dict[int, int]]) -> None:
    cols = sorted(pivots)
    for idx in range(len(cols) - 1, -1, -1):
        c = cols[idx]
        piv = pivots[c]
        for c2 in cols[:idx]:
            other = pivots[c2]
            if c in other:
                pivots[c2] = _combine(piv, other, c)


def nullspace(A) -> list[list[Fraction]]:
    """Basis of the right kernel in canonical form.

    One vector per free (non-pivot) column ``f``, in increasing order of
    ``f``: the vector has a 1 in position ``f``, 0 in every other free
    position, and pivot entries read off the reduced row echelon form.
    Accepts the same inputs as :func:`rank`.
    """
    if not isinstance(A, (QMatrix, tuple)):
        A = _as_matrix(A)
    rows, ncols = _sparse_rows(A)
    rows = [r for r in rows if r]
    if rows and _rank_mod_p(rows) == ncols:
        return []
    pivots = _echelon(rows)
    _reduce_upward(pivots)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for c, piv in pivots.items():
            if f in piv:
                v[c] = Fraction(-piv[f], piv[c])
        basis.append(v)
    return basis


def solve(A, b) -> list[Fraction] | None:
    """One exact solution of ``A x = b`` (free variables set to 0), or None."""
    A = _as_matrix(A)
    if len(b) != A.nrows:
        raise DimensionError("right-hand side length does not match the row count")
    n = A.ncols
    aug = [list(r) + [parse_rational(bi)] for r, bi in zip(A.rows, b)]
    pivots = _echelon(_integer_row(r) for r in aug)
    if n in pivots:
        return None
    _reduce_upward(pivots)
    x = [Fraction(0)] * n
    for c, piv in pivots.items():
        x[c] = Fraction(piv.get(n, 0), piv[c])
    return x
