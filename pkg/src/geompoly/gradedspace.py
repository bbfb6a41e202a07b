"""Degree-by-degree structure of the derivative space ``D(M)``.

The degree-``d`` piece is computed as the nullspace of the coefficient
system ``d/dx_i dee_i p = 0`` on a generic homogeneous ``p`` of degree ``d``.
The dual side computes ``dim (S / I_M)_d`` for the ideal
``I_M = (y_i L_i)`` with ``L_i = sum_j M_ij y_j``; the two sequences must agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .diffops import in_D
from .linalg import QMatrix, all_principal_minors_nonzero, nullspace, rank, solve
from .mpoly import MPoly, homogeneous_component, monomials

__all__ = [
    "GradedBasis",
    "HilbertReport",
    "constraint_rows",
    "basis_degree",
    "dual_quotient_dim",
    "graded_basis",
    "hilbert_report",
    "membership_in_span",
    "default_dmax",
]


def _matrix(M) -> QMatrix:
    return M if isinstance(M, QMatrix) else QMatrix(M)


def _bump(m: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    b = list(m)
    b[i] += 1
    b[j] += 1
    return tuple(b)


def constraint_rows(M, d: int) -> tuple[list[dict[int, Fraction]], list[tuple[int, ...]]]:
    """Sparse coefficient system for ``D(M)_d``.

    Columns are the degree-``d`` monomials (grevlex descending); rows are
    indexed by ``(i, m)`` with ``i`` ascending and ``m`` a degree ``d - 2``
    monomial in grevlex order.  Row ``(i, m)`` is the coefficient of ``x^m``
    in ``d/dx_i sum_j M_ij d/dx_j p``.
    """
    M = _matrix(M)
    n = M.nrows
    cols = monomials(n, d)
    index = {beta: k for k, beta in enumerate(cols)}
    rows = []
    for i in range(n):
        Mi = M.row(i)
        for m in monomials(n, d - 2):
            row = {}
            for j in range(n):
                if not Mi[j]:
                    continue
                beta = _bump(m, i, j)
                mult = beta[i] * (beta[i] - 1) if i == j else beta[i] * beta[j]
                row[index[beta]] = Mi[j] * mult
            rows.append(row)
    return rows, cols


def basis_degree(M, d: int) -> list[MPoly]:
    """Canonical basis of the homogeneous degree-``d`` piece of ``D(M)``."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return list(_basis_degree(_matrix(M), d))


@lru_cache(maxsize=4096)
def _basis_degree(M: QMatrix, d: int) -> tuple[MPoly, ...]:
    n = M.nrows
    rows, cols = constraint_rows(M, d)
    if not rows:
        return tuple(MPoly.monomial(beta) for beta in cols)
    return tuple(MPoly(n, {beta: c for beta, c in zip(cols, vec) if c})
                 for vec in nullspace((rows, len(cols))))


def dual_quotient_dim(M, d: int) -> int:
    """``dim S_d - rank span{ y^g * y_i * L_i : |g| = d - 2 }``."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    M = _matrix(M)
    n = M.nrows
    cols = monomials(n, d)
    if d < 2:
        return len(cols)
    index = {beta: k for k, beta in enumerate(cols)}
    rows = []
    for i in range(n):
        Mi = M.row(i)
        for g in monomials(n, d - 2):
            rows.append({index[_bump(g, i, j)]: Mi[j] for j in range(n) if Mi[j]})
    return len(cols) - rank((rows, len(cols)))


def default_dmax(M) -> int:
    return _matrix(M).nrows + 2


@dataclass
class GradedBasis:
    """Per-degree bases of ``D(M)`` up to ``dmax``; every element is re-checked on construction."""

    M: QMatrix
    by_degree: list[list[MPoly]]

    def __post_init__(self):
        for d, polys in enumerate(self.by_degree):
            for p in polys:
                if not p.is_homogeneous() or (p and p.degree() != d):
                    raise AssertionError(f"degree-{d} basis element {p} is not homogeneous of degree {d}")
                w = in_D(self.M, p)
                if not w.verdict:
                    raise AssertionError(f"basis element {p} fails membership at i={w.failing_index}")
            if polys:
                cols = monomials(self.M.nrows, d)
                mat = [[p.coefficient(b) for b in cols] for p in polys]
                if rank(mat) != len(polys):
                    raise AssertionError(f"degree-{d} basis is linearly dependent")

    @property
    def degree_dims(self) -> list[int]:
        return [len(b) for b in self.by_degree]

    @property
    def dmax(self) -> int:
        return len(self.by_degree) - 1

    def elements(self) -> list[MPoly]:
        return [p for polys in self.by_degree for p in polys]


def graded_basis(M, dmax: int | None = None) -> GradedBasis:
    M = _matrix(M)
    if dmax is None:
        dmax = default_dmax(M)
    return GradedBasis(M, [basis_degree(M, d) for d in range(dmax + 1)])


@dataclass
class HilbertReport:
    degree_dims_primal: list[int]
    degree_dims_dual: list[int]
    dmax: int
    binomial_profile: bool
    minors_nonzero: bool
    witness: tuple[int, ...] | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "dims_primal": self.degree_dims_primal,
            "dims_dual": self.degree_dims_dual,
            "binomial_profile": self.binomial_profile,
            "minors_nonzero": self.minors_nonzero,
            "witness": list(self.witness) if self.witness is not None else None,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def hilbert_report(M, dmax: int | None = None) -> HilbertReport:
    """Primal and dual Hilbert functions for degrees ``0..dmax``.

    A disagreement between the two sides raises ``AssertionError``: it can
    only come from a bug.  ``binomial_profile`` records whether the dims are
    ``C(n, d)``; for a nonsingular-minor matrix this must hold, and otherwise
    it is expected to fail somewhere at or before degree ``n + 2``.
    """
    M = _matrix(M)
    n = M.nrows
    if dmax is None:
        dmax = default_dmax(M)
    if dmax < 0:
        raise ValueError("dmax must be nonnegative")
    primal = [len(basis_degree(M, d)) for d in range(dmax + 1)]
    dual = [dual_quotient_dim(M, d) for d in range(dmax + 1)]
    if primal != dual:
        raise AssertionError(f"primal dims {primal} disagree with dual dims {dual}")
    profile = all(primal[d] == comb(n, d) for d in range(dmax + 1))
    ok, witness = all_principal_minors_nonzero(M)
    notes = []
    if ok and dmax >= n + 1 and not profile:
        notes.append("nonzero minors but non-binomial profile")
    if not ok and profile and dmax >= n + 2:
        notes.append("vanishing minor but binomial profile up to dmax")
    return HilbertReport(primal, dual, dmax, profile, ok, witness, notes)


def membership_in_span(M, p: MPoly, dmax: int | None = None,
                       basis: GradedBasis | None = None) -> tuple[bool, list[Fraction]]:
    """Coordinates of ``p`` in the concatenated graded basis, degree by degree.

    Returns ``(False, [])`` when ``p`` is not in the span.
    """
    M = _matrix(M)
    if basis is None:
        if dmax is None:
            dmax = max(default_dmax(M), p.degree()) if p else 0
        basis = graded_basis(M, dmax)
    if p and p.degree() > basis.dmax:
        raise ValueError(f"polynomial of degree {p.degree()} exceeds dmax = {basis.dmax}")
    coords: list[Fraction] = []
    for d, polys in enumerate(basis.by_degree):
        pd = homogeneous_component(p, d)
        if not polys:
            if pd:
                return False, []
            continue
        support = sorted({b for q in polys for b in q.terms} | set(pd.terms))
        A = [[q.coefficient(b) for q in polys] for b in support]
        x = solve(A, [pd.coefficient(b) for b in support])
        if x is None:
            return False, []
        coords.extend(x)
    if p.is_zero():
        return True, []
    return True, coords
