"""Polytope and triangulation files.

Text polytope file::

    # comments start with '#'
    d n
    x_1 ... x_d      (n lines, each coordinate p or p/q)

Text triangulation file::

    d k s
    k lines of d coordinates      (Steiner points)
    s lines of d+1 point indices  (0-based: polytope points, then Steiner points)

The JSON forms are ``{"dim": d, "points": [["0", "1/2"], ...]}`` and
``{"dim": d, "steiner": [...], "simplices": [[0, 1, 4], ...]}``;
coordinates are strings so nothing is lost to floating point.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError
from .polytope import Polytope, Simplex, Triangulation

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?\Z")


def parse_rational(token: str, line: int | None = None, column: int | None = None) -> Fraction:
    if not _RATIONAL.match(token):
        raise ParseError(f"not a rational number: {token!r}", line, column)
    if "/" in token and int(token.split("/")[1]) == 0:
        raise ParseError(f"zero denominator in {token!r}", line, column)
    return Fraction(token)


def format_rational(x) -> str:
    return str(Fraction(x))


@dataclass
class PolytopeFile:
    dim: int
    points: list

    def polytope(self) -> Polytope:
        return Polytope(self.points)


@dataclass
class TriangulationFile:
    dim: int
    steiner: list = field(default_factory=list)
    simplices: list = field(default_factory=list)

    def resolve(self, points) -> Triangulation:
        """Turn index lists into simplices, given the polytope file's points."""
        table = list(points) + list(self.steiner)
        for i, idx in enumerate(self.simplices):
            if len(idx) != self.dim + 1:
                raise ParseError(f"simplex {i} has {len(idx)} indices, expected {self.dim + 1}")
            bad = [j for j in idx if not 0 <= j < len(table)]
            if bad:
                raise ParseError(f"simplex {i} refers to missing point {bad[0]}")
        return Triangulation(
            [Simplex([table[j] for j in idx]) for idx in self.simplices],
            list(self.steiner),
        )


def _content_lines(text: str):
    """(line number, [(column, token), ...]) for every non-blank line, comments dropped."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]
        if tokens:
            yield lineno, tokens


def _parse_int(tok, lineno, col, what, minimum=0) -> int:
    if not re.fullmatch(r"\d+", tok) or int(tok) < minimum:
        raise ParseError(f"{what} must be an integer >= {minimum}, got {tok!r}", lineno, col)
    return int(tok)


def _parse_coords(tokens, lineno, d):
    if len(tokens) != d:
        col = tokens[d][0] if len(tokens) > d else tokens[-1][0]
        raise ParseError(f"expected {d} coordinates, found {len(tokens)}", lineno, col)
    return tuple(parse_rational(tok, lineno, col) for col, tok in tokens)


def _is_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _json_points(rows, d, what):
    if not isinstance(rows, list):
        raise ParseError(f"{what} must be a list")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise ParseError(f"{what}[{i}] must list {d} coordinates")
        out.append(tuple(parse_rational(str(x)) for x in row))
    return out


def parse_polytope(text: str) -> PolytopeFile:
    if _is_json(text):
        data = _load_json(text)
        d = data.get("dim") if isinstance(data, dict) else None
        if not isinstance(d, int) or d < 0:
            raise ParseError("'dim' must be a nonnegative integer")
        points = _json_points(data.get("points"), d, "points")
        if not points:
            raise ParseError("no points")
        return PolytopeFile(d, points)
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty polytope file", 1, 1)
    lineno, header = lines[0]
    if len(header) != 2:
        raise ParseError("header must be 'd n'", lineno, header[0][0])
    d = _parse_int(header[0][1], lineno, header[0][0], "dimension")
    n = _parse_int(header[1][1], lineno, header[1][0], "point count", 1)
    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] if body else lineno)
        raise ParseError(f"expected {n} point lines, found {len(body)}", where, 1)
    return PolytopeFile(d, [_parse_coords(tokens, ln, d) for ln, tokens in body])


def format_polytope(pf: PolytopeFile) -> str:
    out = [f"{pf.dim} {len(pf.points)}"]
    out += [" ".join(format_rational(x) for x in p) for p in pf.points]
    return "\n".join(out) + "\n"


def format_polytope_json(pf: PolytopeFile) -> str:
    data = {"dim": pf.dim, "points": [[format_rational(x) for x in p] for p in pf.points]}
    return json.dumps(data) + "\n"


def parse_triangulation(text: str) -> TriangulationFile:
    if _is_json(text):
        data = _load_json(text)
        d = data.get("dim") if isinstance(data, dict) else None
        if not isinstance(d, int) or d < 0:
            raise ParseError("'dim' must be a nonnegative integer")
        steiner = _json_points(data.get("steiner", []), d, "steiner")
        simplices = data.get("simplices")
        if not isinstance(simplices, list) or not all(
            isinstance(s, list) and all(isinstance(j, int) for j in s) for s in simplices
        ):
            raise ParseError("'simplices' must be a list of index lists")
        return TriangulationFile(d, steiner, [tuple(s) for s in simplices])
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty triangulation file", 1, 1)
    lineno, header = lines[0]
    if len(header) != 3:
        raise ParseError("header must be 'd k s'", lineno, header[0][0])
    d = _parse_int(header[0][1], lineno, header[0][0], "dimension")
    k = _parse_int(header[1][1], lineno, header[1][0], "Steiner point count")
    s = _parse_int(header[2][1], lineno, header[2][0], "simplex count")
    body = lines[1:]
    if len(body) != k + s:
        where = body[k + s][0] if len(body) > k + s else (body[-1][0] if body else lineno)
        raise ParseError(f"expected {k + s} lines after the header, found {len(body)}", where, 1)
    steiner = [_parse_coords(tokens, ln, d) for ln, tokens in body[:k]]
    simplices = []
    for ln, tokens in body[k:]:
        if len(tokens) != d + 1:
            raise ParseError(f"a simplex needs {d + 1} indices, found {len(tokens)}", ln, tokens[0][0])
        simplices.append(tuple(_parse_int(tok, ln, col, "index") for col, tok in tokens))
    return TriangulationFile(d, steiner, simplices)


def format_triangulation(tf: TriangulationFile) -> str:
    out = [f"{tf.dim} {len(tf.steiner)} {len(tf.simplices)}"]
    out += [" ".join(format_rational(x) for x in p) for p in tf.steiner]
    out += [" ".join(str(j) for j in s) for s in tf.simplices]
    return "\n".join(out) + "\n"


def format_triangulation_json(tf: TriangulationFile) -> str:
    data = {
        "dim": tf.dim,
        "steiner": [[format_rational(x) for x in p] for p in tf.steiner],
        "simplices": [list(s) for s in tf.simplices],
    }
    return json.dumps(data) + "\n"


def read_polytope(path) -> PolytopeFile:
    with open(path) as fh:
        return parse_polytope(fh.read())


def read_triangulation(path) -> TriangulationFile:
    with open(path) as fh:
        return parse_triangulation(fh.read())


def write_polytope(path, pf: PolytopeFile, fmt: str = "text"):
    with open(path, "w") as fh:
        fh.write(format_polytope_json(pf) if fmt == "json" else format_polytope(pf))
