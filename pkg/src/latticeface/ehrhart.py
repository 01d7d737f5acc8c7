"""Ehrhart polynomials: the projection-volume formula and its oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import counting, linalg
from .errors import FormulaInapplicableError, OracleInapplicableError, PreconditionError
from .lattice_face import count_omega_lattice_points, find_lattice_face_triangulation
from .polytope import Polytope, Triangulation, project, volume


@dataclass(frozen=True)
class EhrhartPolynomial:
    """c_0 + c_1 m + ... + c_d m^d with exact rational coefficients."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, m) -> Fraction:
        out = Fraction(0)
        for c in reversed(self.coefficients):
            out = out * m + c
        return out

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            coef = "" if (c == 1 and k) else str(c)
            power = "" if k == 0 else "m" if k == 1 else f"m^{k}"
            terms.append(f"{coef}{power}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def count_lattice_points(P: Polytope, m: int = 1) -> int:
    """|L(mP)|."""
    if m < 1:
        raise PreconditionError("dilation factor must be a positive integer")
    return counting.count_lattice_points(P if m == 1 else P.scaled(m))


def ehrhart_via_projections(P: Polytope, witness: Triangulation | None = None) -> EhrhartPolynomial:
    """Coefficient of m^k is the volume of the projection to the first k coordinates.

    Only asserted when P has a triangulation into lattice-face simplices;
    otherwise :class:`FormulaInapplicableError` is raised.
    """
    if find_lattice_face_triangulation(P, witness) is None:
        raise FormulaInapplicableError("no triangulation into lattice-face simplices is known")
    d = P.dim
    return EhrhartPolynomial(volume(project(P, d - k)) for k in range(d + 1))


def ehrhart_via_interpolation(P: Polytope) -> EhrhartPolynomial:
    """Interpolate brute-force counts at m = 1..d together with i(P, 0) = 1.

    The count at m = d + 1 is then checked against the interpolant.
    """
    if not P.is_integral():
        raise OracleInapplicableError("interpolation needs an integral polytope")
    d = P.dim
    ms = range(d + 1)
    values = [1] + [count_lattice_points(P, m) for m in range(1, d + 1)]
    vandermonde = [[Fraction(m) ** k for k in range(d + 1)] for m in ms]
    poly = EhrhartPolynomial(linalg.solve(vandermonde, values))
    check = count_lattice_points(P, d + 1)
    if poly(d + 1) != check:
        raise ArithmeticError(f"counts are not polynomial: predicted {poly(d + 1)}, counted {check}")
    return poly


IDENTITIES = ("formula = count", "count = vol + proj", "omega = vol")


@dataclass
class VerificationRow:
    m: int
    formula: Fraction
    count: int
    volume: Fraction
    projection_count: int
    omega_count: int
    checks: dict = field(default_factory=dict)


@dataclass
class EhrhartReport:
    polynomial: EhrhartPolynomial
    rows: list

    @property
    def all_passed(self) -> bool:
        return all(all(r.checks.values()) for r in self.rows)


def verify_ehrhart(P: Polytope, m_max: int, witness: Triangulation | None = None) -> EhrhartReport:
    """Check the formula against brute force for m = 1..m_max.

    Per m: formula value equals |L(mP)|; |L(mP)| = Vol(mP) + |L(pi(mP))|;
    the nonnegative part of mP holds exactly Vol(mP) lattice points.
    """
    poly = ehrhart_via_projections(P, witness)
    rows = []
    for m in range(1, m_max + 1):
        mP = P.scaled(m)
        count = counting.count_lattice_points(mP)
        vol = volume(mP)
        proj = counting.count_lattice_points(project(mP, 1))
        omega = count_omega_lattice_points(mP)
        value = poly(m)
        rows.append(VerificationRow(m, value, count, vol, proj, omega, {
            IDENTITIES[0]: value == count,
            IDENTITIES[1]: count == vol + proj,
            IDENTITIES[2]: omega == vol,
        }))
    return EhrhartReport(poly, rows)
