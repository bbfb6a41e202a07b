"""Exact convex-hull volume for small rational point sets.

Incremental beneath-beyond construction with a simplicial boundary.  All
predicates run on integers after scaling the input by the common
denominator, so there is no rounding and no perturbation.  A point lying on
the hyperplane of a boundary simplex counts as beneath it; the boundary may
then contain several coplanar simplices, which is harmless for volume.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Sequence

from .linalg import rank

__all__ = ["HullVolumeResult", "UnsupportedDimension", "hull_volume", "shoelace_area", "MAX_DIM"]

MAX_DIM = 4


class UnsupportedDimension(ValueError):
    pass


@dataclass(frozen=True)
class HullVolumeResult:
    volume: Fraction
    dim: int


def _det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        a, b, c = m
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _det(minor)
    return total


def _normal(pts: list[tuple[int, ...]]) -> tuple[list[int], int]:
    """Hyperplane ``a . x = b`` through ``n`` points in dimension ``n``."""
    base = pts[0]
    edges = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
    n = len(base)
    a = []
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in edges]
        a.append((-1) ** j * _det(minor))
    return a, sum(x * y for x, y in zip(a, base))


def _dot(a, x) -> int:
    return sum(u * v for u, v in zip(a, x))


def _prepare(points) -> tuple[list[tuple[int, ...]], int, int]:
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    n = len(pts[0])
    if n == 0 or any(len(p) != n for p in pts):
        raise ValueError("points must share a positive dimension")
    if n > MAX_DIM:
        raise UnsupportedDimension(f"ambient dimension {n} > {MAX_DIM} is not supported")
    pts = list(dict.fromkeys(pts))
    den = lcm(*(x.denominator for p in pts for x in p))
    ints = [tuple(int(x * den) for x in p) for p in pts]
    return ints, n, den


def hull_volume(points: Sequence[Sequence]) -> HullVolumeResult:
    """Lebesgue volume of the convex hull, with its affine dimension.

    Lower-dimensional hulls report volume 0.
    """
    pts, n, den = _prepare(points)
    base = pts[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
    dim = rank(diffs) if diffs else 0
    if dim < n:
        return HullVolumeResult(Fraction(0), dim)
    if n == 1:
        xs = [p[0] for p in pts]
        return HullVolumeResult(Fraction(max(xs) - min(xs), den), 1)

    # initial simplex: greedily pick affinely independent points
    simplex = [0]
    for k in range(1, len(pts)):
        trial = [[x - y for x, y in zip(pts[j], base)] for j in simplex[1:] + [k]]
        if rank(trial) == len(simplex):
            simplex.append(k)
            if len(simplex) == n + 1:
                break
    # interior point = centroid of the simplex, kept as (sum, weight) to stay integral
    weight = n + 1
    inner = [sum(pts[j][c] for j in simplex) for c in range(n)]

    facets: dict[int, tuple[tuple[int, ...], list[int], int]] = {}
    ridges: dict[frozenset, set[int]] = {}
    next_id = itertools.count()

    def add_facet(verts: tuple[int, ...]):
        a, b = _normal([pts[v] for v in verts])
        side = _dot(a, inner) - weight * b
        if side == 0:
            raise AssertionError("degenerate facet in hull construction")
        if side > 0:
            a = [-x for x in a]
            b = -b
        fid = next(next_id)
        facets[fid] = (verts, a, b)
        for r in itertools.combinations(verts, n - 1):
            ridges.setdefault(frozenset(r), set()).add(fid)

    def drop_facet(fid: int):
        verts = facets.pop(fid)[0]
        for r in itertools.combinations(verts, n - 1):
            key = frozenset(r)
            owners = ridges[key]
            owners.discard(fid)
            if not owners:
                del ridges[key]

    for face in itertools.combinations(simplex, n):
        add_facet(face)

    chosen = set(simplex)
    for k, p in enumerate(pts):
        if k in chosen:
            continue
        visible = {fid for fid, (_, a, b) in facets.items() if _dot(a, p) > b}
        if not visible:
            continue
        horizon = []
        for fid in visible:
            verts = facets[fid][0]
            for r in itertools.combinations(verts, n - 1):
                others = ridges[frozenset(r)] - {fid}
                if not others & visible:
                    horizon.append(r)
        for fid in visible:
            drop_facet(fid)
        for r in horizon:
            add_facet(tuple(r) + (k,))

    # cone every boundary simplex over the vertex centroid
    vertices = sorted({v for verts, _, _ in facets.values() for v in verts})
    w = len(vertices)
    centre = [sum(pts[v][c] for v in vertices) for c in range(n)]
    total = 0
    for verts, _, _ in facets.values():
        m = [[w * pts[v][c] - centre[c] for c in range(n)] for v in verts]
        total += abs(_det(m))
    volume = Fraction(total, factorial(n) * w ** n * den ** n)
    return HullVolumeResult(volume, n)


def shoelace_area(points: Sequence[Sequence]) -> Fraction:
    """Area of the convex hull of planar points via a monotone chain and the shoelace formula.

    Independent of :func:`hull_volume`; used as a cross-check in 2D.
    """
    pts = sorted({(Fraction(x), Fraction(y)) for x, y in points})
    if len(pts) < 3:
        return Fraction(0)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    ring = lower[:-1] + upper[:-1]
    s = sum(ring[i][0] * ring[(i + 1) % len(ring)][1] - ring[(i + 1) % len(ring)][0] * ring[i][1]
            for i in range(len(ring)))
    return abs(s) / 2
