"""Exact lattice-face polytopes and Ehrhart polynomials from projection volumes."""

from .ehrhart import (
    EhrhartPolynomial,
    EhrhartReport,
    count_lattice_points,
    ehrhart_via_interpolation,
    ehrhart_via_projections,
    verify_ehrhart,
)
from .errors import (
    DegeneratePolytopeError,
    FormulaInapplicableError,
    InvalidTriangulationError,
    LatticeFaceError,
    OracleInapplicableError,
    ParseError,
    PreconditionError,
    VerticalFacetError,
)
from .lattice_face import (
    FlatWitness,
    Verdict,
    count_omega_lattice_points,
    find_lattice_face_triangulation,
    is_lattice_face,
    is_pi_general_position,
    negative_boundary_lattice_points,
    omega_additivity_defects,
)
from .polytope import (
    Facet,
    FacetSign,
    Polytope,
    Simplex,
    Triangulation,
    fiber,
    project,
    pulling_triangulation,
    validate_triangulation,
    volume,
)
from .transform import (
    LinearMap,
    ScalingVector,
    make_lattice_face,
    to_lattice_face_scaling,
    to_pi_general_position,
)
