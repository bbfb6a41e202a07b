"""Cartan matrices, Weyl group orbits in fundamental-weight coordinates,
Dynkin components and parabolic indices.

A weight ``lambda = sum_i lambda_i w_i`` is stored as its coordinate tuple.
The simple reflection ``s_i`` acts by ``lambda - lambda_i * alpha_i`` where
``alpha_i`` is read off the Cartan matrix: by default its ``i``-th row,
or its ``i``-th column with ``convention="column"``.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm, prod
from typing import Iterable, Sequence

from .linalg import QMatrix, principal_minor

__all__ = [
    "CartanError",
    "OrbitCapExceeded",
    "CartanSystem",
    "OrbitSet",
    "DEFAULT_ORBIT_CAP",
    "CONVENTIONS",
    "cartan_matrix",
    "parse_label",
    "labeled_types",
    "simple_root_in_weight_basis",
    "reflect",
    "weyl_orbit",
    "weyl_order",
    "dynkin_components",
    "parabolic_index",
    "subsystem",
]

DEFAULT_ORBIT_CAP = 60480
CONVENTIONS = ("row", "column")


class CartanError(ValueError):
    """Invalid Cartan data or an unknown type label."""


class OrbitCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CartanSystem:
    """A validated Cartan matrix.

    ``convention`` selects whether simple roots are the rows (default) or
    the columns of ``C`` in the fundamental-weight basis.
    """

    C: QMatrix
    label: str | None = None
    convention: str = "row"

    def __post_init__(self):
        C = self.C if isinstance(self.C, QMatrix) else QMatrix(self.C)
        object.__setattr__(self, "C", C)
        if self.convention not in CONVENTIONS:
            raise CartanError(f"unknown convention {self.convention!r}")
        if not C.is_square:
            raise CartanError("Cartan matrix must be square")
        n = C.nrows
        for i in range(n):
            for j in range(n):
                c = C[i, j]
                if c.denominator != 1:
                    raise CartanError(f"entry ({i + 1},{j + 1}) = {c} is not an integer")
                if i == j and c != 2:
                    raise CartanError(f"diagonal entry ({i + 1},{i + 1}) must be 2")
                if i != j and c > 0:
                    raise CartanError(f"off-diagonal entry ({i + 1},{j + 1}) must be <= 0")
                if i != j and (c == 0) != (C[j, i] == 0):
                    raise CartanError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) must vanish together")
        if self.label is not None:
            for size in range(1, n + 1):
                for J in itertools.combinations(range(1, n + 1), size):
                    if principal_minor(C, J) <= 0:
                        raise CartanError(f"{self.label}: principal minor on {J} is not positive")

    @property
    def n(self) -> int:
        return self.C.nrows

    def with_convention(self, convention: str) -> "CartanSystem":
        return CartanSystem(self.C, self.label, convention)

    def describe(self) -> str:
        return self.label or "custom"


# -- classification --------------------------------------------------------------


def _chain(n: int) -> list[list[int]]:
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2
        if i + 1 < n:
            C[i][i + 1] = C[i + 1][i] = -1
    return C


def _from_edges(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        C[a - 1][b - 1] = C[b - 1][a - 1] = -1
    return C


def _raw_cartan(letter: str, rank: int) -> list[list[int]]:
    if letter == "A" and rank >= 1:
        return _chain(rank)
    if letter == "B" and rank >= 2:
        C = _chain(rank)
        C[rank - 1][rank - 2] = -2
        return C
    if letter == "C" and rank >= 2:
        C = _chain(rank)
        C[rank - 2][rank - 1] = -2
        return C
    if letter == "D" and rank >= 4:
        edges = [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
        return _from_edges(rank, edges)
    if letter == "E" and rank in (6, 7, 8):
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, rank)]
        return _from_edges(rank, edges)
    if letter == "F" and rank == 4:
        C = _chain(4)
        C[2][1] = -2
        return C
    if letter == "G" and rank == 2:
        return [[2, -1], [-3, 2]]
    raise CartanError(f"no finite type {letter}{rank}")


def cartan_matrix(letter: str, rank: int, convention: str = "row") -> CartanSystem:
    """Standard Cartan matrix of a finite irreducible type (Bourbaki node numbering)."""
    letter = letter.upper()
    return CartanSystem(QMatrix(_raw_cartan(letter, rank)), f"{letter}{rank}", convention)


_LABEL = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


def parse_label(label: str, convention: str = "row") -> CartanSystem:
    m = _LABEL.match(label)
    if not m:
        raise CartanError(f"malformed type label {label!r}")
    return cartan_matrix(m.group(1), int(m.group(2)), convention)


def labeled_types(max_rank: int = 8) -> list[tuple[str, int]]:
    out = []
    for r in range(1, max_rank + 1):
        out.append(("A", r))
    for r in range(2, max_rank + 1):
        out.append(("B", r))
    for r in range(2, max_rank + 1):
        out.append(("C", r))
    for r in range(4, max_rank + 1):
        out.append(("D", r))
    out += [("E", r) for r in (6, 7, 8) if r <= max_rank]
    if max_rank >= 4:
        out.append(("F", 4))
    if max_rank >= 2:
        out.append(("G", 2))
    return out


# -- weights and reflections ----------------------------------------------------------


def _check_index(sys: CartanSystem, i: int):
    if not 1 <= i <= sys.n:
        raise IndexError(f"node {i} outside 1..{sys.n}")


def simple_root_in_weight_basis(sys: CartanSystem, i: int,
                                convention: str | None = None) -> tuple[Fraction, ...]:
    _check_index(sys, i)
    convention = convention or sys.convention
    if convention == "row":
        return sys.C.row(i - 1)
    if convention == "column":
        return sys.C.column(i - 1)
    raise CartanError(f"unknown convention {convention!r}")


def _weight(sys: CartanSystem, lam: Sequence) -> tuple[Fraction, ...]:
    if len(lam) != sys.n:
        raise ValueError(f"weight of length {len(lam)} for rank {sys.n}")
    return tuple(Fraction(x) for x in lam)


def reflect(sys: CartanSystem, i: int, lam: Sequence) -> tuple[Fraction, ...]:
    lam = _weight(sys, lam)
    alpha = simple_root_in_weight_basis(sys, i)
    c = lam[i - 1]
    if not c:
        return lam
    return tuple(x - c * a for x, a in zip(lam, alpha))


@dataclass(frozen=True)
class OrbitSet:
    """A Weyl orbit, points sorted lexicographically."""

    points: tuple[tuple[Fraction, ...], ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, lam):
        return tuple(Fraction(x) for x in lam) in self._set

    @property
    def _set(self):
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.points)
            object.__setattr__(self, "_cached_set", s)
        return s


def _roots(sys: CartanSystem) -> list[tuple[int, ...]]:
    return [tuple(int(a) for a in simple_root_in_weight_basis(sys, i)) for i in range(1, sys.n + 1)]


def weyl_orbit(sys: CartanSystem, lam: Sequence, cap: int = DEFAULT_ORBIT_CAP) -> OrbitSet:
    """Breadth-first closure of ``{lam}`` under the simple reflections."""
    lam = _weight(sys, lam)
    den = lcm(*(x.denominator for x in lam))
    start = tuple(int(x * den) for x in lam)
    roots = _roots(sys)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i, alpha in enumerate(roots):
            c = v[i]
            if not c:
                continue
            w = tuple(x - c * a for x, a in zip(v, alpha))
            if w not in seen:
                seen.add(w)
                if len(seen) > cap:
                    raise OrbitCapExceeded(f"orbit exceeds the cap of {cap} points")
                queue.append(w)
    pts = sorted(tuple(Fraction(x, den) for x in v) for v in seen)
    return OrbitSet(tuple(pts))


@lru_cache(maxsize=None)
def _weyl_order(C: QMatrix, convention: str, cap: int) -> int:
    sys = CartanSystem(C, None, convention)
    return len(weyl_orbit(sys, (1,) * sys.n, cap))


def weyl_order(sys: CartanSystem, cap: int = DEFAULT_ORBIT_CAP) -> int:
    """Size of the orbit of the strictly dominant weight (1, ..., 1)."""
    # the orbit size does not depend on the row/column convention
    return _weyl_order(sys.C, sys.convention, cap)


def _subset(sys: CartanSystem, J: Iterable[int]) -> list[int]:
    J = sorted(set(J))
    for j in J:
        _check_index(sys, j)
    return J


def dynkin_components(sys: CartanSystem, J: Iterable[int]) -> list[tuple[int, ...]]:
    """Connected components of the Dynkin graph restricted to ``J``, ordered by smallest element."""
    J = _subset(sys, J)
    remaining = set(J)
    comps = []
    for start in J:
        if start not in remaining:
            continue
        comp = {start}
        remaining.discard(start)
        stack = [start]
        while stack:
            a = stack.pop()
            for b in list(remaining):
                if sys.C[a - 1, b - 1] != 0:
                    remaining.discard(b)
                    comp.add(b)
                    stack.append(b)
        comps.append(tuple(sorted(comp)))
    return comps


def subsystem(sys: CartanSystem, J: Iterable[int]) -> CartanSystem:
    """Cartan system of the principal submatrix on ``J`` (same convention, unlabeled)."""
    J = _subset(sys, J)
    if not J:
        raise CartanError("empty subsystem")
    idx = [j - 1 for j in J]
    return CartanSystem(sys.C.submatrix(idx, idx), None, sys.convention)


def parabolic_index(sys: CartanSystem, J: Iterable[int], cap: int = DEFAULT_ORBIT_CAP) -> int:
    """``[W : W_J]`` as ``|W|`` over the product of component Weyl group orders."""
    J = _subset(sys, J)
    total = weyl_order(sys, cap)
    sub = prod(weyl_order(subsystem(sys, comp), cap) for comp in dynkin_components(sys, J))
    if total % sub:
        raise AssertionError(f"|W_J| = {sub} does not divide |W| = {total}")
    return total // sub
