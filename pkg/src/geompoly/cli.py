"""Command-line frontend.

Every command prints one JSON document on stdout.  Exit codes: 0 success,
2 bad input (diagnostic on stderr), 1 a failed ``verify`` criterion.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import comb

from . import acceptance
from .geometricity import decompose
from .gradedspace import basis_degree, hilbert_report
from .hull import UnsupportedDimension
from .linalg import QMatrix, all_principal_minors_nonzero, format_rational, parse_rational, principal_minor
from .mpoly import PolynomialSyntaxError, parse, render, render_monomial_key
from .rootsys import (DEFAULT_ORBIT_CAP, CartanError, CartanSystem, OrbitCapExceeded, parse_label,
                      weyl_orbit)
from .volumes import (MAX_RANK, all_subsets, face_volume_polynomial, permutohedron_volume,
                      renormalize, volume_basis, volume_polynomial)

COMMANDS = ("minors", "basis", "hilbert", "orbit", "volume", "volpoly", "facevol", "geometric", "verify")


class InputError(Exception):
    pass


def _add_source(p: argparse.ArgumentParser, cartan: bool):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--type", dest="type_label", metavar="LABEL", help='type label such as "A3" or "G2"')
    g.add_argument("--matrix", metavar="FILE", help='matrix JSON file {"n": .., "rows": [[..], ..]}')
    if cartan:
        p.add_argument("--convention", choices=("row", "column"), default="row")
        p.add_argument("--orbit-cap", type=int, default=DEFAULT_ORBIT_CAP)


def _add_poly(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", metavar="TEXT")
    g.add_argument("--poly-file", metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geompoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minors", help="principal minors of a matrix")
    _add_source(p, cartan=False)

    p = sub.add_parser("basis", help="graded basis of D(M) up to dmax")
    _add_source(p, cartan=False)
    p.add_argument("--dmax", type=int)

    p = sub.add_parser("hilbert", help="primal and dual Hilbert functions")
    _add_source(p, cartan=False)
    p.add_argument("--dmax", type=int)

    for name, help_ in (("orbit", "Weyl orbit of a weight"),
                        ("volume", "permutohedron volume of a weight")):
        p = sub.add_parser(name, help=help_)
        _add_source(p, cartan=True)
        p.add_argument("--weight", metavar="L1,L2,..", help="weight coordinates; default all ones")

    p = sub.add_parser("volpoly", help="volume polynomial")
    _add_source(p, cartan=True)
    p.add_argument("--normalization", choices=("weight", "root"), default="weight")

    p = sub.add_parser("facevol", help="face volume polynomial V_J")
    _add_source(p, cartan=True)
    p.add_argument("--subset", required=True, metavar='"1,3"')
    p.add_argument("--normalization", choices=("weight", "root"), default="weight")

    p = sub.add_parser("geometric", help="decompose a polynomial in the volume basis")
    _add_source(p, cartan=True)
    _add_poly(p)
    p.add_argument("--normalization", choices=("weight", "root"), default="weight")

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    p.add_argument("--include", default="", metavar="TYPE,...",
                   help=f"optional rank-4 types: {','.join(acceptance.OPTIONAL_TYPES)}")
    p.add_argument("--only", default="", metavar="AC-k,...", help="run a subset of criteria")
    return parser


# -- input helpers ---------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _matrix(args) -> tuple[QMatrix, str]:
    if args.type_label:
        sysc = parse_label(args.type_label)
        return sysc.C, sysc.label
    try:
        M = QMatrix.from_json(_read(args.matrix))
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.matrix}: malformed JSON ({exc.msg})") from None
    if not M.is_square:
        raise InputError("matrix must be square")
    return M, "matrix"


def _system(args) -> CartanSystem:
    if args.type_label:
        return parse_label(args.type_label, args.convention)
    M, _ = _matrix(args)
    return CartanSystem(M, None, args.convention)


def _vector(text: str, n: int, what: str) -> list[Fraction]:
    parts = [t for t in text.split(",") if t.strip()]
    vec = [parse_rational(t) for t in parts]
    if len(vec) != n:
        raise InputError(f"{what} needs {n} entries, got {len(vec)}")
    return vec


def _subset(text: str, n: int) -> tuple[int, ...]:
    try:
        J = tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise InputError(f"malformed subset {text!r}") from None
    if any(not 1 <= j <= n for j in J):
        raise InputError(f"subset {text!r} outside 1..{n}")
    return J


def _check_rank(sysc: CartanSystem):
    if sysc.n > MAX_RANK:
        raise InputError(f"volume computations support rank <= {MAX_RANK}, got {sysc.n}")


def _poly_json(V, label: str, normalization: str, degree: int) -> dict:
    return {
        "type": label,
        "normalization": normalization,
        "degree": degree,
        "coefficients": {render_monomial_key(b): format_rational(c) for b, c in V.sorted_terms()},
        "poly": render(V),
    }


# -- commands -----------------------------------------------------------------------------


def cmd_minors(args) -> dict:
    M, label = _matrix(args)
    n = M.nrows
    minors = [{"J": list(J), "value": format_rational(principal_minor(M, J))}
              for J in all_subsets(n)[1:]]
    ok, witness = all_principal_minors_nonzero(M)
    return {"source": label, "n": n, "minors": minors, "all_nonzero": ok,
            "all_positive": all(parse_rational(m["value"]) > 0 for m in minors),
            "witness": list(witness) if witness else None}


def cmd_basis(args) -> dict:
    M, label = _matrix(args)
    dmax = args.dmax if args.dmax is not None else M.nrows + 2
    if dmax < 0:
        raise InputError("--dmax must be nonnegative")
    degrees = [[render(p) for p in basis_degree(M, d)] for d in range(dmax + 1)]
    return {"source": label, "dmax": dmax, "dims": [len(b) for b in degrees], "basis": degrees}


def cmd_hilbert(args) -> dict:
    M, label = _matrix(args)
    if args.dmax is not None and args.dmax < 0:
        raise InputError("--dmax must be nonnegative")
    rep = hilbert_report(M, args.dmax)
    n = M.nrows
    return {"source": label, "dmax": rep.dmax, **rep.to_json(),
            "binomial": [comb(n, d) for d in range(rep.dmax + 1)]}


def _weight(args, sysc) -> list[Fraction]:
    return _vector(args.weight, sysc.n, "--weight") if args.weight else [Fraction(1)] * sysc.n


def cmd_orbit(args) -> dict:
    sysc = _system(args)
    lam = _weight(args, sysc)
    orbit = weyl_orbit(sysc, lam, args.orbit_cap)
    return {"type": sysc.describe(), "convention": sysc.convention,
            "weight": [format_rational(x) for x in lam], "size": len(orbit),
            "points": [[format_rational(x) for x in p] for p in orbit]}


def cmd_volume(args) -> dict:
    sysc = _system(args)
    _check_rank(sysc)
    lam = _weight(args, sysc)
    weyl_orbit(sysc, lam, args.orbit_cap)
    return {"type": sysc.describe(), "convention": sysc.convention, "normalization": "weight",
            "weight": [format_rational(x) for x in lam],
            "volume": format_rational(permutohedron_volume(sysc, lam))}


def cmd_volpoly(args) -> dict:
    sysc = _system(args)
    _check_rank(sysc)
    V = volume_polynomial(sysc, check=sysc.convention == "row")
    V = renormalize(V, sysc, args.normalization)
    return {**_poly_json(V, sysc.describe(), args.normalization, sysc.n), "convention": sysc.convention}


def cmd_facevol(args) -> dict:
    sysc = _system(args)
    _check_rank(sysc)
    J = _subset(args.subset, sysc.n)
    V = face_volume_polynomial(sysc, J, args.normalization)
    return {**_poly_json(V, sysc.describe(), args.normalization, len(J)),
            "subset": list(J), "convention": sysc.convention}


def cmd_geometric(args) -> dict:
    sysc = _system(args)
    _check_rank(sysc)
    text = args.poly if args.poly is not None else _read(args.poly_file)
    p = parse(text, sysc.n)
    basis = volume_basis(sysc, args.normalization)
    cert = decompose(sysc, p, basis)
    return {"type": sysc.describe(), "normalization": args.normalization,
            "convention": sysc.convention, "poly": render(p), **cert.to_json()}


def cmd_verify(args) -> tuple[dict, int]:
    include = tuple(t.strip().upper() for t in args.include.split(",") if t.strip())
    for t in include:
        if t not in acceptance.OPTIONAL_TYPES:
            raise InputError(f"--include accepts {','.join(acceptance.OPTIONAL_TYPES)}, got {t}")
    only = [k.strip().upper() for k in args.only.split(",") if k.strip()]
    for k in only:
        if k not in acceptance.CRITERIA:
            raise InputError(f"unknown criterion {k}")
    results = []
    for key in only or acceptance.CRITERIA:
        res = acceptance.run_criterion(key, args.seed, include)
        print(res.line(), file=sys.stderr, flush=True)
        results.append(res)
    report = {"seed": args.seed, "include": list(include),
              "passed": all(r.passed for r in results),
              "criteria": [r.to_json() for r in results]}
    return report, 0 if report["passed"] else 1


HANDLERS = {
    "minors": cmd_minors,
    "basis": cmd_basis,
    "hilbert": cmd_hilbert,
    "orbit": cmd_orbit,
    "volume": cmd_volume,
    "volpoly": cmd_volpoly,
    "facevol": cmd_facevol,
    "geometric": cmd_geometric,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "verify":
            payload, code = cmd_verify(args)
        else:
            payload, code = HANDLERS[args.command](args), 0
    except (InputError, CartanError, PolynomialSyntaxError, UnsupportedDimension,
            OrbitCapExceeded, ValueError, IndexError) as exc:
        print(f"geompoly {args.command}: {exc}", file=sys.stderr)
        return 2
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
