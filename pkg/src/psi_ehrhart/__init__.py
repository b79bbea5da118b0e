"""Exact psi-class intersection numbers, integer-valued intersection
polynomials and their f*-vectors, and Ehrhart lattice-point counting for
inside-out polytopes and open simplicial complexes."""

__version__ = "0.1.0"

from .ehrhart_geom import (
    FIXTURE_NAMES,
    HPolytope,
    Hyperplane,
    InsideOutPolytope,
    OpenSimplex,
    OpenSimplexComplex,
    builtin_fixture,
    ehrhart_interpolate,
    lattice_count_complex,
    lattice_count_insideout,
    lattice_points_insideout,
    lattice_points_open_simplex,
    product_insideout,
    unimodular_check,
    verify_triangulation,
)
from .errors import (
    CacheError,
    ConstructionError,
    DomainError,
    InconsistencyError,
    NotIntegerValuedError,
    PsiEhrhartError,
    UnboundedError,
)
from .intersection_core import (
    KappaPsiMonomial,
    PsiKey,
    kappa_reduce,
    psi_intersection,
)
from .lvalue_poly import (
    BreuerVerdict,
    LPolyRecord,
    breuer_check,
    c_normalizer,
    fstar_of_shifted,
    l_polynomial,
    linear_product_fstar,
    m_shift,
    scan,
)

__all__ = [
    "__version__",
    "FIXTURE_NAMES",
    "HPolytope",
    "Hyperplane",
    "InsideOutPolytope",
    "OpenSimplex",
    "OpenSimplexComplex",
    "builtin_fixture",
    "ehrhart_interpolate",
    "lattice_count_complex",
    "lattice_count_insideout",
    "lattice_points_insideout",
    "lattice_points_open_simplex",
    "product_insideout",
    "unimodular_check",
    "verify_triangulation",
    "CacheError",
    "ConstructionError",
    "DomainError",
    "InconsistencyError",
    "NotIntegerValuedError",
    "PsiEhrhartError",
    "UnboundedError",
    "KappaPsiMonomial",
    "PsiKey",
    "kappa_reduce",
    "psi_intersection",
    "BreuerVerdict",
    "LPolyRecord",
    "breuer_check",
    "c_normalizer",
    "fstar_of_shifted",
    "l_polynomial",
    "linear_product_fstar",
    "m_shift",
    "scan",
]
