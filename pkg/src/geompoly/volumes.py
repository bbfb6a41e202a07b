"""Volume polynomials of Weyl permutohedra and their faces.

Volumes are Lebesgue measure in fundamental-weight coordinates, where the
weight lattice is the standard integer lattice ("weight" normalization).
Dividing an irreducible factor by the determinant of its Cartan matrix gives
the root-lattice normalization.

Face polynomials are products over Dynkin components, each factor
interpolated from the component's own principal Cartan submatrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Iterable

from .diffops import in_D
from .gradedspace import graded_basis, membership_in_span
from .hull import hull_volume
from .linalg import determinant, rank, solve
from .mpoly import MPoly, evaluate, monomials
from .rootsys import CartanSystem, dynkin_components, subsystem, weyl_orbit

__all__ = [
    "NORMALIZATIONS",
    "InterpolationError",
    "VolumeBasis",
    "permutohedron_volume",
    "volume_polynomial",
    "face_volume_polynomial",
    "volume_basis",
    "renormalize",
    "all_subsets",
    "validation_points",
]

NORMALIZATIONS = ("weight", "root")
MAX_RANK = 4
_OFF_GRID = (Fraction(1, 2), Fraction(3), Fraction(7, 2), Fraction(5))


class InterpolationError(RuntimeError):
    pass


def permutohedron_volume(sys: CartanSystem, lam) -> Fraction:
    """Weight-normalized volume of the convex hull of the Weyl orbit of ``lam``."""
    return hull_volume(list(weyl_orbit(sys, lam))).volume


def all_subsets(n: int) -> list[tuple[int, ...]]:
    """Subsets of ``[n]`` ordered by size, then lexicographically."""
    return [J for k in range(n + 1) for J in itertools.combinations(range(1, n + 1), k)]


def validation_points(n: int, count: int = 5) -> list[tuple[Fraction, ...]]:
    return [tuple(_OFF_GRID[(k + j) % len(_OFF_GRID)] for j in range(n)) for k in range(count)]


@lru_cache(maxsize=None)
def _interpolate(C, convention: str) -> MPoly:
    sys = CartanSystem(C, None, convention)
    n = sys.n
    if n > MAX_RANK:
        raise ValueError(f"volume polynomials are supported up to rank {MAX_RANK}")
    monos = monomials(n, n)
    target = len(monos)
    rows: list[list[Fraction]] = []
    values: list[Fraction] = []
    for lam in itertools.product(range(1, n + 2), repeat=n):
        row = [Fraction(prod(x ** e for x, e in zip(lam, beta))) for beta in monos]
        if rank(rows + [row]) == len(rows) + 1:
            rows.append(row)
            values.append(permutohedron_volume(sys, lam))
            if len(rows) == target:
                break
    if len(rows) < target:
        raise InterpolationError(f"sample grid has rank {len(rows)} < {target}")
    coeffs = solve(rows, values)
    if coeffs is None:
        raise InterpolationError("interpolation system is inconsistent")
    V = MPoly(n, dict(zip(monos, coeffs)))
    for lam in validation_points(n):
        expected = permutohedron_volume(sys, lam)
        if evaluate(V, lam) != expected:
            raise InterpolationError(f"volume polynomial disagrees with the hull volume at {lam}")
    return V


def volume_polynomial(sys: CartanSystem, check: bool = True) -> MPoly:
    """Homogeneous degree-``n`` polynomial interpolating the permutohedron volume.

    Samples come from the grid ``{1..n+1}^n`` in lexicographic order until the
    evaluation system has full rank, then five off-grid points must match
    exactly.  With ``check``, membership in the derivative space of
    ``sys.C`` is asserted for the row convention.
    """
    V = _interpolate(sys.C, sys.convention)
    if check and sys.convention == "row":
        w = in_D(sys.C, V)
        if not w.verdict:
            raise AssertionError(f"volume polynomial fails membership at i={w.failing_index}")
    return V


def _factors(sys: CartanSystem, J: Iterable[int]) -> list[tuple[tuple[int, ...], MPoly]]:
    out = []
    for comp in dynkin_components(sys, J):
        sub = subsystem(sys, comp)
        V = volume_polynomial(sub, check=False)
        out.append((comp, V.embed(sys.n, comp)))
    return out


def face_volume_polynomial(sys: CartanSystem, J: Iterable[int],
                           normalization: str = "weight") -> MPoly:
    """Product of component volume polynomials over the Dynkin components of ``J``."""
    _check_normalization(normalization)
    V = MPoly.constant(sys.n, 1)
    for comp, factor in _factors(sys, J):
        V = V * factor
        if normalization == "root":
            V = V.scale(1 / _component_det(sys, comp))
    return V


def _component_det(sys: CartanSystem, comp: tuple[int, ...]) -> Fraction:
    idx = [j - 1 for j in comp]
    return determinant(sys.C.submatrix(idx, idx))


def _check_normalization(normalization: str):
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")


def _squarefree(J: Iterable[int], n: int) -> tuple[int, ...]:
    J = set(J)
    return tuple(int(j in J) for j in range(1, n + 1))


@dataclass
class VolumeBasis:
    """The ``2^n`` face volume polynomials of a Cartan system, keyed by sorted 1-based subsets."""

    sys: CartanSystem
    entries: dict[tuple[int, ...], MPoly]
    normalization: str = "weight"
    diagnostics: dict = field(default_factory=dict)

    def __getitem__(self, J) -> MPoly:
        return self.entries[tuple(sorted(J))]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def n(self) -> int:
        return self.sys.n

    def squarefree_coefficient(self, J) -> Fraction:
        return self[J].coefficient(_squarefree(J, self.n))

    def by_degree(self, d: int) -> list[tuple[tuple[int, ...], MPoly]]:
        return [(J, V) for J, V in self.entries.items() if len(J) == d]

    def check_invariants(self, graded=None) -> None:
        """Assert every structural property of the basis; raise ``AssertionError`` on failure."""
        n = self.n
        C = self.sys.C
        if self.entries.get(()) != MPoly.constant(n, 1):
            raise AssertionError("V_{} must be 1")
        if set(self.entries) != set(all_subsets(n)):
            raise AssertionError("basis must have one entry per subset")
        for J, V in self.entries.items():
            if not V.is_homogeneous() or (J and V.degree() != len(J)):
                raise AssertionError(f"V_{J} is not homogeneous of degree {len(J)}")
            if not V.variables() <= set(J):
                raise AssertionError(f"V_{J} involves variables outside {J}")
            for K in all_subsets(n):
                c = V.coefficient(_squarefree(K, n))
                if K == J and c <= 0:
                    raise AssertionError(f"squarefree coefficient of V_{J} on {K} is not positive")
                if K != J and c != 0:
                    raise AssertionError(f"V_{J} has nonzero squarefree coefficient on {K}")
            w = in_D(C, V)
            if not w.verdict:
                raise AssertionError(f"V_{J} fails membership at i={w.failing_index}")
        if graded is None:
            graded = graded_basis(C, n + 1)
        dims = graded.degree_dims
        for d in range(n + 1):
            if len(self.by_degree(d)) != comb(n, d) or dims[d] != comb(n, d):
                raise AssertionError(f"degree {d}: {len(self.by_degree(d))} polynomials, "
                                     f"dim D(C)_{d} = {dims[d]}")
            coords = []
            for _, V in self.by_degree(d):
                ok, x = membership_in_span(C, V, basis=graded)
                if not ok:
                    raise AssertionError(f"degree-{d} volume polynomial outside D(C)")
                offset = sum(dims[:d])
                coords.append(x[offset:offset + dims[d]] if x else [Fraction(0)] * dims[d])
            if coords and rank(coords) != comb(n, d):
                raise AssertionError(f"degree-{d} volume polynomials are not a basis of D(C)_{d}")
        if dims[n + 1:] and any(dims[n + 1:]):
            raise AssertionError("D(C) has elements above degree n")


def volume_basis(sys: CartanSystem, normalization: str = "weight", check: bool = True) -> VolumeBasis:
    _check_normalization(normalization)
    n = sys.n
    entries = {J: face_volume_polynomial(sys, J, normalization) for J in all_subsets(n)}
    basis = VolumeBasis(sys, entries, normalization)
    if check:
        basis.check_invariants()
    return basis


def renormalize(obj, sys: CartanSystem, target: str, source: str = "weight", J=None):
    """Switch between weight- and root-lattice normalization.

    ``obj`` is a :class:`VolumeBasis` (its own tag is the source) or a single
    polynomial, taken to be ``V_J`` for ``J`` (default: all of ``[n]``).
    """
    _check_normalization(target)
    if isinstance(obj, VolumeBasis):
        if obj.normalization == target:
            return obj
        entries = {K: renormalize(V, sys, target, obj.normalization, K) for K, V in obj.entries.items()}
        return VolumeBasis(obj.sys, entries, target, dict(obj.diagnostics))
    _check_normalization(source)
    if source == target:
        return obj
    if J is None:
        J = range(1, sys.n + 1)
    factor = prod((_component_det(sys, comp) for comp in dynkin_components(sys, J)), start=Fraction(1))
    return obj.scale(1 / factor) if target == "root" else obj.scale(factor)
