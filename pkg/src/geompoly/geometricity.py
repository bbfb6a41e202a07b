"""Decide whether a polynomial is geometric and decompose it in the volume basis.

Membership in the derivative space is tested first.  For members the
coefficient of ``V_J`` is the squarefree coefficient ``[p]_J`` divided by
``[V_J]_J``, and the decomposition is re-verified exactly.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .diffops import in_D
from .linalg import DimensionError, format_rational
from .mpoly import MPoly, render
from .rootsys import CartanSystem
from .volumes import VolumeBasis, all_subsets, volume_basis

__all__ = [
    "Status",
    "GeometricityCertificate",
    "decompose",
    "is_geometric",
    "round_trip",
    "subset_key",
    "parse_subset_key",
]


class Status(str, enum.Enum):
    GEOMETRIC = "Geometric"
    NOT_IN_SPACE = "NotInSpace"
    INTERNAL_RESIDUAL = "InternalResidual"


def subset_key(J) -> str:
    """JSON key for a subset: ``"[1,3]"``."""
    return "[" + ",".join(str(j) for j in sorted(J)) + "]"


def parse_subset_key(key: str) -> tuple[int, ...]:
    body = json.loads(key)
    if not isinstance(body, list) or not all(isinstance(j, int) for j in body):
        raise ValueError(f"malformed subset key {key!r}")
    return tuple(sorted(body))


@dataclass
class GeometricityCertificate:
    status: Status
    coefficients: dict[tuple[int, ...], Fraction] = field(default_factory=dict)
    witness: tuple[int, MPoly] | None = None
    residual: MPoly | None = None

    @property
    def is_geometric(self) -> bool:
        return self.status is Status.GEOMETRIC

    def to_json(self) -> dict:
        out = {
            "status": self.status.value,
            "coefficients": {subset_key(J): format_rational(c)
                             for J, c in sorted(self.coefficients.items(), key=lambda t: (len(t[0]), t[0]))},
            "witness": None,
        }
        if self.witness is not None:
            i, poly = self.witness
            out["witness"] = {"i": i, "offending": render(poly)}
        if self.residual is not None:
            out["residual"] = render(self.residual)
        return out


def _squarefree(J, n: int) -> tuple[int, ...]:
    return tuple(int(j in J) for j in range(1, n + 1))


def decompose(sys: CartanSystem, p: MPoly, basis: VolumeBasis | None = None) -> GeometricityCertificate:
    if p.nvars != sys.n:
        raise DimensionError(f"polynomial in {p.nvars} variables for rank {sys.n}")
    if basis is None:
        basis = volume_basis(sys)
    w = in_D(sys.C, p)
    if not w.verdict:
        return GeometricityCertificate(Status.NOT_IN_SPACE, witness=(w.failing_index, w.offending))
    coeffs = {}
    recon = MPoly.zero(sys.n)
    for J in all_subsets(sys.n):
        beta = _squarefree(J, sys.n)
        mu = p.coefficient(beta) / basis[J].coefficient(beta)
        coeffs[J] = mu
        recon = recon + basis[J].scale(mu)
    residual = p - recon
    if residual:
        return GeometricityCertificate(Status.INTERNAL_RESIDUAL, coeffs, residual=residual)
    return GeometricityCertificate(Status.GEOMETRIC, coeffs)


def is_geometric(sys: CartanSystem, p: MPoly, basis: VolumeBasis | None = None) -> bool:
    return decompose(sys, p, basis).is_geometric


def round_trip(sys: CartanSystem, coefficients: Mapping, basis: VolumeBasis | None = None) -> MPoly:
    """``sum_J coefficients[J] * V_J``."""
    if basis is None:
        basis = volume_basis(sys)
    out = MPoly.zero(sys.n)
    for J, c in coefficients.items():
        key = tuple(sorted(J))
        if key not in basis.entries:
            raise KeyError(f"unknown subset {J}")
        out = out + basis.entries[key].scale(Fraction(c))
    return out
