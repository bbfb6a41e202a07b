"""Exit criteria AC-1 .. AC-9, runnable from pytest and from ``geompoly verify``.

Every check is exact.  Random inputs come from ``random.Random`` seeded per
criterion from the suite seed, so a given seed always produces the same report.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .diffops import dee, in_D, in_Delta, verify_expansion
from .gradedspace import basis_degree, dual_quotient_dim, hilbert_report
from .linalg import QMatrix, all_principal_minors_nonzero, determinant, principal_minor
from .mpoly import MPoly, directional, homogeneous_component, monomials, partial, render
from .rootsys import cartan_matrix, labeled_types, parabolic_index, parse_label, simple_root_in_weight_basis
from .volumes import all_subsets, face_volume_polynomial, renormalize, volume_basis, volume_polynomial
from .geometricity import Status, decompose, round_trip

__all__ = [
    "DEFAULT_SEED",
    "VOLUME_TYPES",
    "OPTIONAL_TYPES",
    "CYCLIC3",
    "CriterionResult",
    "CRITERIA",
    "random_rational",
    "random_matrix",
    "random_minor_nonzero_matrix",
    "vanishing_minor_matrices",
    "run_criterion",
    "run_all",
]

DEFAULT_SEED = 20240917
VOLUME_TYPES = ("A1", "A2", "A3", "B2", "B3", "C3", "G2")
OPTIONAL_TYPES = ("A4", "D4")
CYCLIC3 = QMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.key} {self.title} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.key, "title": self.title, "passed": self.passed, "details": self.details}


# -- random inputs ------------------------------------------------------------------


def random_rational(rng: random.Random, bound: int = 5, max_den: int = 3) -> Fraction:
    """Uniform-ish rational in ``[-bound, bound]`` with denominator at most ``max_den``."""
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * q, bound * q), q)


def random_matrix(rng: random.Random, n: int, bound: int = 5, max_den: int = 3) -> QMatrix:
    return QMatrix([[random_rational(rng, bound, max_den) for _ in range(n)] for _ in range(n)])


def random_minor_nonzero_matrix(rng: random.Random, n: int) -> QMatrix:
    """Rejection-sample a matrix with every principal minor nonzero."""
    while True:
        M = random_matrix(rng, n)
        if all_principal_minors_nonzero(M)[0]:
            return M


def vanishing_minor_matrices(rng: random.Random, count: int = 10) -> list[tuple[QMatrix, tuple[int, ...]]]:
    """Matrices built so that a chosen principal minor is zero.

    The last diagonal entry of the chosen block is solved for, since the
    minor is affine in it.
    """
    out = [(CYCLIC3, (1,))]
    while len(out) < count:
        n = rng.choice((2, 3, 4))
        size = rng.randint(1, n)
        J = tuple(sorted(rng.sample(range(1, n + 1), size)))
        rows = [[random_rational(rng) for _ in range(n)] for _ in range(n)]
        last = J[-1] - 1
        rows[last][last] = Fraction(0)
        base = principal_minor(QMatrix(rows), J)
        rows[last][last] = Fraction(1)
        slope = principal_minor(QMatrix(rows), J) - base
        if slope == 0:
            continue
        rows[last][last] = -base / slope
        M = QMatrix(rows)
        if principal_minor(M, J) != 0:
            raise AssertionError("construction failed to zero the chosen minor")
        out.append((M, J))
    return out


def _random_poly(rng: random.Random, n: int, max_deg: int, nterms: int) -> MPoly:
    terms = {}
    for _ in range(nterms):
        d = rng.randint(0, max_deg)
        beta = rng.choice(monomials(n, d))
        terms[beta] = random_rational(rng)
    return MPoly(n, terms)


def _random_member(rng: random.Random, M: QMatrix, max_deg: int) -> MPoly:
    n = M.nrows
    p = MPoly.zero(n)
    for d in range(max_deg + 1):
        for q in basis_degree(M, d):
            if rng.random() < 0.6:
                p = p + q.scale(random_rational(rng))
    return p


def _rng(seed: int, key: str) -> random.Random:
    return random.Random(f"{seed}:{key}")


# -- criteria -------------------------------------------------------------------------


def _minor_nonzero_sample(seed: int) -> dict[int, list[QMatrix]]:
    rng = _rng(seed, "AC-1")
    return {n: [random_minor_nonzero_matrix(rng, n) for _ in range(25)] for n in (2, 3, 4, 5)}


def ac1(seed: int, include=()) -> tuple[bool, dict]:
    details = {}
    ok = True
    for n, mats in _minor_nonzero_sample(seed).items():
        bad = 0
        for M in mats:
            dims = [len(basis_degree(M, d)) for d in range(n + 3)]
            expected = [comb(n, d) for d in range(n + 3)]
            if dims != expected or sum(dims) != 2 ** n:
                bad += 1
        details[f"n={n}"] = {"matrices": len(mats), "failures": bad}
        ok &= bad == 0
    return ok, details


def ac2(seed: int, include=()) -> tuple[bool, dict]:
    details = {}
    ok = True
    for n, mats in _minor_nonzero_sample(seed).items():
        bad = 0
        for M in mats:
            for d in range(n + 3):
                if len(basis_degree(M, d)) != dual_quotient_dim(M, d):
                    bad += 1
        details[f"n={n}"] = {"mismatches": bad}
        ok &= bad == 0
    primal = [len(basis_degree(CYCLIC3, d)) for d in range(7)]
    dual = [dual_quotient_dim(CYCLIC3, d) for d in range(7)]
    details["cyclic3"] = {"primal": primal, "dual": dual}
    ok &= primal == dual == [1, 3, 3, 3, 3, 3, 3]
    return ok, details


def ac3(seed: int, include=()) -> tuple[bool, dict]:
    rng = _rng(seed, "AC-3")
    cases = []
    ok = True
    for M, J in vanishing_minor_matrices(rng):
        n = M.nrows
        rep = hilbert_report(M, n + 2)
        dims = rep.degree_dims_primal
        violated = any(dims[d] > comb(n, d) for d in range(n + 1)) or dims[n + 1] > 0
        flagged = not rep.minors_nonzero
        cases.append({"n": n, "zero_minor": list(J), "dims": dims,
                      "witness": list(rep.witness) if rep.witness else None,
                      "violates_profile": violated})
        ok &= violated and flagged and not rep.binomial_profile
    return ok, {"cases": cases}


def ac4(seed: int, include=()) -> tuple[bool, dict]:
    rng = _rng(seed, "AC-4")
    agree = members = 0
    for k in range(200):
        n = rng.randint(1, 4)
        M = random_matrix(rng, n)
        if k % 2:
            p = _random_member(rng, M, rng.randint(0, 6))
            if rng.random() < 0.3:
                p = p + _random_poly(rng, n, 6, 1)
        else:
            p = _random_poly(rng, n, 6, rng.randint(1, 6))
        a = in_Delta(M, p).verdict
        b = in_D(M, p).verdict
        agree += a == b
        members += a
    expansions = 0
    for _ in range(100):
        n = rng.randint(1, 3)
        M = random_matrix(rng, n)
        p = _random_poly(rng, n, 5, rng.randint(1, 6))
        i = rng.randint(1, n)
        expansions += verify_expansion(M, i, p)
    ok = agree == 200 and expansions == 100 and 0 < members < 200
    return ok, {"pairs": 200, "agreements": agree, "members": members,
                "expansion_checks": 100, "expansion_ok": expansions}


def ac5(seed: int, include=()) -> tuple[bool, dict]:
    rng = _rng(seed, "AC-5")
    good = 0
    for _ in range(50):
        n = rng.randint(2, 4)
        M = random_minor_nonzero_matrix(rng, n)
        p = _random_member(rng, M, n)
        passes = in_Delta(M, p).verdict and all(
            in_Delta(M, homogeneous_component(p, d)).verdict for d in range(n + 1))
        good += passes
    return good == 50, {"elements": 50, "passing": good}


def ac6(seed: int, include=()) -> tuple[bool, dict]:
    checked = 0
    failures = []
    for letter, r in labeled_types(8):
        C = cartan_matrix(letter, r).C
        for J in all_subsets(r)[1:]:
            m = principal_minor(C, J)
            checked += 1
            if m <= 0 or m.denominator != 1:
                failures.append(f"{letter}{r} {J}: {m}")
    return not failures, {"types": len(labeled_types(8)), "minors": checked, "failures": failures}


def _identity(V: MPoly, sys, direction_sys) -> tuple[bool, dict]:
    """Is ``d/d alpha_i V`` free of ``x_i`` and a positive multiple of ``V_{[n]-i}`` for every ``i``?"""
    n = sys.n
    passes = True
    multiples = {}
    for i in range(1, n + 1):
        rest = [j for j in range(1, n + 1) if j != i]
        face = face_volume_polynomial(sys, rest)
        D = directional(V, simple_root_in_weight_basis(direction_sys, i))
        mono = next(iter(face.terms))
        k = D.coefficient(mono) / face.coefficient(mono)
        passes &= D.is_free_of(i) and k > 0 and D == face.scale(k)
        multiples[str(i)] = {"multiple": str(k), "parabolic_index": parabolic_index(sys, rest)}
    return passes, multiples


def _convention_check(label: str) -> dict:
    """Derivative identity with the orbit built from rows, differentiating along rows or columns.

    ``column_orbit`` additionally rebuilds the orbit and faces from columns and
    differentiates along columns; that variant lands in the space of the
    transposed matrix, which ``in_D(C)`` reports.
    """
    base = parse_label(label, "row")
    V = volume_polynomial(base, check=False)
    out = {}
    for conv in ("row", "column"):
        ok, multiples = _identity(V, base, parse_label(label, conv))
        out[conv] = {"identity": ok, "multiples": multiples}
    col = parse_label(label, "column")
    Vc = volume_polynomial(col, check=False)
    ok, multiples = _identity(Vc, col, col)
    out["column_orbit"] = {"identity": ok, "in_D(C)": in_D(col.C, Vc).verdict, "multiples": multiples}
    return out


def _ac7_type(label: str) -> tuple[bool, dict]:
    sys = parse_label(label)
    n = sys.n
    V = volume_polynomial(sys, check=False)
    member = in_D(sys.C, V).verdict
    top = basis_degree(sys.C, n)
    proportional = False
    if len(top) == 1:
        b = top[0]
        mono = next(iter(b.terms))
        proportional = V == b.scale(V.coefficient(mono) / b.coefficient(mono))
    conv = _convention_check(label)
    satisfied = [c for c in ("row", "column") if conv[c]["identity"]]
    ok = member and len(top) == 1 and proportional and bool(satisfied)
    return ok, {"in_D": member, "dim_top": len(top), "proportional": proportional,
                "conventions_satisfying_identity": satisfied, "conventions": conv,
                "V": render(V)}


def ac7(seed: int, include=()) -> tuple[bool, dict]:
    details = {}
    ok = True
    for label in VOLUME_TYPES + tuple(include):
        good, info = _ac7_type(label)
        details[label] = info
        ok &= good
    return ok, details


def _ac8_type(label: str, rng: random.Random) -> tuple[bool, dict]:
    sys = parse_label(label)
    n = sys.n
    basis = volume_basis(sys)  # asserts the basis invariants
    trips = 0
    for _ in range(50):
        coeffs = {J: random_rational(rng) for J in all_subsets(n)}
        cert = decompose(sys, round_trip(sys, coeffs, basis), basis)
        trips += cert.status is Status.GEOMETRIC and cert.coefficients == coeffs
    rejected = 0
    for i in range(1, n + 1):
        coeffs = {J: random_rational(rng) for J in all_subsets(n)}
        p = round_trip(sys, coeffs, basis) + MPoly.variable(n, i) ** 2
        cert = decompose(sys, p, basis)
        if cert.status is Status.NOT_IN_SPACE:
            w, offending = cert.witness
            rejected += bool(offending) and partial(dee(sys.C, w, p), w) == offending
    ok = trips == 50 and rejected == n
    return ok, {"round_trips": trips, "perturbations": n, "rejected_with_valid_witness": rejected}


def ac8(seed: int, include=()) -> tuple[bool, dict]:
    details = {}
    ok = True
    for label in VOLUME_TYPES + tuple(include):
        good, info = _ac8_type(label, _rng(seed, f"AC-8:{label}"))
        details[label] = info
        ok &= good
    return ok, details


def ac9(seed: int, include=()) -> tuple[bool, dict]:
    details = {}
    ok = True
    for n in (1, 2, 3):
        sys = cartan_matrix("A", n)
        V = volume_polynomial(sys)
        sq = (1,) * n
        weight = V.coefficient(sq)
        root = renormalize(V, sys, "root").coefficient(sq)
        det = determinant(sys.C)
        details[f"A{n}"] = {"weight": str(weight), "root": str(root), "det": str(det)}
        ok &= root == factorial(n) and weight == det * factorial(n) == (n + 1) * factorial(n)
    return ok, details


CRITERIA: dict[str, tuple[str, Callable]] = {
    "AC-1": ("binomial Hilbert profile for nonzero-minor matrices", ac1),
    "AC-2": ("primal and dual Hilbert functions agree", ac2),
    "AC-3": ("vanishing minor breaks the binomial profile", ac3),
    "AC-4": ("difference and derivative membership agree", ac4),
    "AC-5": ("homogeneous components stay in the space", ac5),
    "AC-6": ("principal minors of Cartan matrices are positive", ac6),
    "AC-7": ("volume polynomial membership and uniqueness", ac7),
    "AC-8": ("volume basis and decomposition round trip", ac8),
    "AC-9": ("squarefree coefficient n! in type A", ac9),
}


def run_criterion(key: str, seed: int = DEFAULT_SEED, include=()) -> CriterionResult:
    title, fn = CRITERIA[key]
    start = time.perf_counter()
    try:
        passed, details = fn(seed, tuple(include))
    except AssertionError as exc:
        passed, details = False, {"error": str(exc)}
    return CriterionResult(key, title, passed, details, time.perf_counter() - start)


def run_all(seed: int = DEFAULT_SEED, include=(), progress: Callable[[CriterionResult], None] | None = None):
    results = []
    for key in CRITERIA:
        res = run_criterion(key, seed, include)
        if progress is not None:
            progress(res)
        results.append(res)
    return results
