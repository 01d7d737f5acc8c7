"""Command-line front end.

Exit codes: 0 success, 2 unreadable or malformed input, 3 the requested
mathematics does not apply (degenerate polytope, no lattice-face
triangulation, invalid witness).  Predicates are reported on stdout, never
through the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fileio
from .ehrhart import IDENTITIES, count_lattice_points, verify_ehrhart, ehrhart_via_projections
from .errors import (
    DegeneratePolytopeError,
    FormulaInapplicableError,
    InvalidTriangulationError,
    LatticeFaceError,
    OracleInapplicableError,
    ParseError,
    VerticalFacetError,
)
from .fileio import format_rational
from .lattice_face import (
    count_omega_lattice_points,
    find_lattice_face_triangulation,
    is_lattice_face,
    is_pi_general_position,
    vertex_triangulations,
)
from .polytope import pulling_triangulation, triangulation_problems, volume
from .transform import make_lattice_face

EXIT_PARSE = 2
EXIT_INAPPLICABLE = 3


def _point_str(p) -> str:
    return "(" + ",".join(format_rational(x) for x in p) + ")"


def _load(path):
    pf = fileio.read_polytope(path)
    return pf, pf.polytope()


def _load_witness(path, pf):
    if path is None:
        return None
    tf = fileio.read_triangulation(path)
    if tf.dim != pf.dim:
        raise ParseError(f"triangulation is in dimension {tf.dim}, polytope in {pf.dim}")
    return tf.resolve(pf.points)


def _index_table(pf, steiner=()):
    table = {}
    for i, p in enumerate(list(pf.points) + list(steiner)):
        table.setdefault(tuple(p), i)
    return table


def _witness_dict(verdict, P, table):
    w = verdict.witness
    if w is None:
        return None
    pts = [P.vertices[i] for i in w.subset]
    return {
        "k": w.k,
        "indices": [table[tuple(p)] for p in pts],
        "points": [_point_str(p) for p in pts],
        "reason": w.reason,
    }


def cmd_check(args):
    pf, P = _load(args.file)
    if not P.is_full_dimensional:
        raise DegeneratePolytopeError(f"polytope has affine dimension {P.affine_dim} in R^{P.dim}")
    table = _index_table(pf)
    lf = is_lattice_face(P)
    gp = is_pi_general_position(P.vertices)
    result = {
        "lattice_face": lf.ok,
        "lattice_face_witness": _witness_dict(lf, P, table),
        "pi_general_position": gp.ok,
        "pi_general_position_witness": _witness_dict(gp, P, table),
    }
    lines = [f"lattice-face: {str(lf.ok).lower()}"]
    if result["lattice_face_witness"]:
        lines.append("lattice-face-witness: " + _witness_text(result["lattice_face_witness"]))
    lines.append(f"pi-general-position: {str(gp.ok).lower()}")
    if result["pi_general_position_witness"]:
        lines.append("pi-general-position-witness: " + _witness_text(result["pi_general_position_witness"]))
    return result, lines


def _witness_text(w):
    return f"k={w['k']} indices {w['indices']} span {{{', '.join(w['points'])}}} {w['reason']}"


def _matrix_rows(m):
    return [[format_rational(x) for x in row] for row in m]


def cmd_transform(args):
    pf, P = _load(args.file)
    phi, image = make_lattice_face(P)
    out_pf = fileio.PolytopeFile(pf.dim, phi.apply_all(pf.points))
    verdict = is_lattice_face(image)
    digits = max(len(str(abs(x.numerator))) for v in image.vertices for x in v)
    result = {
        "matrix": _matrix_rows(phi.matrix),
        "stages": [{"label": label, "matrix": _matrix_rows(m)} for label, m in phi.stages],
        "lattice_face": verdict.ok,
        "max_coordinate_digits": digits,
        "output": args.output,
    }
    lines = ["matrix:"] + [" ".join(r) for r in result["matrix"]]
    for st in result["stages"]:
        lines.append(f"stage {st['label']}: " + " ; ".join(" ".join(r) for r in st["matrix"]))
    lines.append(f"lattice-face: {str(verdict.ok).lower()}")
    lines.append(f"max-coordinate-digits: {digits}")
    if args.output:
        fmt = "json" if str(args.output).endswith(".json") else "text"
        fileio.write_polytope(args.output, out_pf, fmt)
        lines.append(f"output: {args.output}")
    else:
        result["image"] = fileio.format_polytope(out_pf)
        lines.append("image:")
        lines.extend(result["image"].rstrip("\n").split("\n"))
    return result, lines


def cmd_ehrhart(args):
    pf, P = _load(args.file)
    witness = _load_witness(args.witness, pf)
    if not P.is_full_dimensional:
        raise DegeneratePolytopeError(f"polytope has affine dimension {P.affine_dim} in R^{P.dim}")
    try:
        poly = ehrhart_via_projections(P, witness)
    except FormulaInapplicableError:
        notes = []
        for i, T in enumerate(vertex_triangulations(P)):
            bad = next(s for s in T.simplices if not is_lattice_face(s.polytope()))
            notes.append(f"vertex triangulation {i}: simplex {{{', '.join(_point_str(v) for v in bad.vertices)}}} is not lattice-face")
        raise FormulaInapplicableError(
            "no triangulation into lattice-face simplices found; " + "; ".join(notes)
        ) from None
    coeffs = [format_rational(c) for c in poly.coefficients]
    result = {"coefficients": coeffs}
    lines = [" ".join(coeffs)]
    if args.verify:
        report = verify_ehrhart(P, args.verify, witness)
        rows = []
        lines.append("m formula count volume projection omega | " + " | ".join(IDENTITIES))
        for r in report.rows:
            row = {
                "m": r.m,
                "formula": format_rational(r.formula),
                "count": r.count,
                "volume": format_rational(r.volume),
                "projection_count": r.projection_count,
                "omega_count": r.omega_count,
                "checks": dict(r.checks),
            }
            rows.append(row)
            verdicts = " | ".join("pass" if r.checks[k] else "FAIL" for k in IDENTITIES)
            lines.append(
                f"{r.m} {row['formula']} {r.count} {row['volume']} {r.projection_count} {r.omega_count} | {verdicts}"
            )
        result["verification"] = rows
        result["all_passed"] = report.all_passed
        lines.append(f"all-passed: {str(report.all_passed).lower()}")
    return result, lines


def cmd_count(args):
    _, P = _load(args.file)
    n = count_lattice_points(P, args.m)
    return {"count": n}, [str(n)]


def cmd_volume(args):
    _, P = _load(args.file)
    v = format_rational(volume(P))
    return {"volume": v}, [v]


def cmd_omega(args):
    _, P = _load(args.file)
    n = count_omega_lattice_points(P)
    return {"omega_count": n}, [str(n)]


def cmd_triangulate(args):
    pf, P = _load(args.file)
    witness = _load_witness(args.witness, pf)
    if args.lattice_face:
        T = find_lattice_face_triangulation(P, witness)
        if T is None:
            raise FormulaInapplicableError("no triangulation into lattice-face simplices found")
    elif witness is not None:
        problems = triangulation_problems(P, witness)
        if problems:
            raise InvalidTriangulationError("; ".join(problems))
        T = witness
    else:
        T = pulling_triangulation(P)
    table = _index_table(pf, T.steiner_points)
    tf = fileio.TriangulationFile(
        pf.dim,
        list(T.steiner_points),
        [tuple(table[tuple(v)] for v in s.vertices) for s in T.simplices],
    )
    result = {
        "dim": tf.dim,
        "steiner": [[format_rational(x) for x in p] for p in tf.steiner],
        "simplices": [list(s) for s in tf.simplices],
    }
    return result, fileio.format_triangulation(tf).rstrip("\n").split("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticeface",
        description="Lattice-face polytopes, lattice-face transformations and Ehrhart polynomials.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="lattice-face and pi-general-position predicates")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("transform", help="map a polytope into lattice-face position")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("ehrhart", help="Ehrhart polynomial from projection volumes")
    p.add_argument("file")
    p.add_argument("--witness")
    p.add_argument("--verify", type=int, metavar="M")
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("count", help="lattice points in the m-th dilate")
    p.add_argument("file")
    p.add_argument("-m", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("volume", help="Euclidean volume")
    p.add_argument("file")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("omega", help="lattice points of the nonnegative part")
    p.add_argument("file")
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("triangulate", help="pulling or lattice-face triangulation")
    p.add_argument("file")
    p.add_argument("--lattice-face", action="store_true")
    p.add_argument("--witness")
    p.set_defaults(func=cmd_triangulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, lines = args.func(args)
    except (ParseError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DegeneratePolytopeError, VerticalFacetError, OracleInapplicableError) as exc:
        print(f"inapplicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except FormulaInapplicableError as exc:
        print(f"formula-inapplicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except InvalidTriangulationError as exc:
        print(f"invalid triangulation: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except LatticeFaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    if args.format == "json":
        print(json.dumps(result, sort_keys=True))
    else:
        print("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
