"""Lattice-point enumeration for dilated inside-out polytopes and open
simplicial complexes, Ehrhart interpolation, unimodular-triangulation
verification, and the built-in example fixtures.

Conventions.  A polytope is given in H-representation (normal . x <= b,
integer data); dilation by g >= 1 scales every offset by g, and an
inside-out polytope removes the (equally dilated) hyperplanes of its
arrangement plus any boundary facets listed in boundary_excluded.  An
open simplex is the relative interior of the convex hull of affinely
independent integer vertices; membership is decided by an exact
barycentric solve.  Enumeration walks the integer bounding box in
lexicographic order, so all outputs are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    ConstructionError,
    DomainError,
    InconsistencyError,
    UnboundedError,
)
from .exact_arith import Poly, from_fstar, poly_eval

IntVec = Tuple[int, ...]


def _intvec(v: Iterable[int]) -> IntVec:
    return tuple(int(x) for x in v)


def _dot(a: Sequence[int], x: Sequence[int]):
    return sum(ai * xi for ai, xi in zip(a, x))


# ---------------------------------------------------------------------------
# H-polytopes and inside-out polytopes


def _normalize_row(coeffs: Tuple[int, ...], offset: int):
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    g = gcd(g, offset)
    if g > 1:
        return tuple(c // g for c in coeffs), offset // g
    return coeffs, offset


def _fourier_motzkin_box(rows: List[Tuple[Tuple[int, ...], int]], dim: int):
    """Per-coordinate bounds of {x : row . x <= offset} at dilate 1.
    Returns None for an empty polytope; raises UnboundedError if some
    coordinate has no finite bound in either direction."""
    box = []
    for j in range(dim):
        current = [(_intvec(c), int(b)) for c, b in rows]
        for k in range(dim):
            if k == j:
                continue
            pos = [(c, b) for c, b in current if c[k] > 0]
            neg = [(c, b) for c, b in current if c[k] < 0]
            zero = [(c, b) for c, b in current if c[k] == 0]
            combined = set()
            for (a, c1), (bb, c2) in itertools.product(pos, neg):
                coeffs = tuple(-bb[k] * a[i] + a[k] * bb[i] for i in range(dim))
                combined.add(_normalize_row(coeffs, -bb[k] * c1 + a[k] * c2))
            current = zero + sorted(combined)
        lo, hi = None, None
        for c, b in current:
            a = c[j]
            if a == 0:
                if b < 0:
                    return None  # infeasible: 0 <= negative
                continue
            bound = Fraction(b, a)
            if a > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is None or hi is None:
            raise UnboundedError(
                f"polytope is unbounded in coordinate {j}")
        if lo > hi:
            return None
        box.append((lo, hi))
    return tuple(box)


@dataclass(frozen=True)
class HPolytope:
    """Bounded integral polytope {x : normal . x <= offset} with integer
    normals and offsets.  Boundedness is established at construction by
    an exact Fourier-Motzkin bounding box; unbounded input is rejected."""
    inequalities: Tuple[Tuple[IntVec, int], ...]
    dim: int
    unit_box: Optional[tuple] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError(f"dimension must be >= 1, got {self.dim}")
        rows = []
        for normal, offset in self.inequalities:
            normal = _intvec(normal)
            if len(normal) != self.dim:
                raise DomainError(
                    f"normal {normal} has length {len(normal)}, expected {self.dim}")
            rows.append((normal, int(offset)))
        object.__setattr__(self, "inequalities", tuple(rows))
        object.__setattr__(self, "unit_box", _fourier_motzkin_box(rows, self.dim))


@dataclass(frozen=True)
class Hyperplane:
    """Locus normal . x = offset with a nonzero integer normal."""
    normal: IntVec
    offset: int

    def __post_init__(self):
        normal = _intvec(self.normal)
        if not any(normal):
            raise DomainError("hyperplane normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", int(self.offset))


@dataclass(frozen=True)
class InsideOutPolytope:
    """Polytope minus an arrangement; boundary_excluded lists indices of
    inequalities whose equality face is removed as well (strict)."""
    polytope: HPolytope
    arrangement: Tuple[Hyperplane, ...] = ()
    boundary_excluded: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrangement", tuple(self.arrangement))
        excluded = tuple(sorted(set(int(i) for i in self.boundary_excluded)))
        for i in excluded:
            if not 0 <= i < len(self.polytope.inequalities):
                raise DomainError(f"boundary_excluded index {i} out of range")
        for h in self.arrangement:
            if len(h.normal) != self.polytope.dim:
                raise DomainError("arrangement dimension mismatch")
        object.__setattr__(self, "boundary_excluded", excluded)


def lattice_points_insideout(iop: InsideOutPolytope, g: int) -> List[IntVec]:
    """Integer points of the dilate, in lexicographic order."""
    if g < 1:
        raise DomainError(f"dilate must be >= 1, got {g}")
    box = iop.polytope.unit_box
    if box is None:
        return []
    strict = set(iop.boundary_excluded)
    ranges = [range(ceil(lo * g), floor(hi * g) + 1) for lo, hi in box]
    points = []
    for x in itertools.product(*ranges):
        ok = True
        for i, (normal, offset) in enumerate(iop.polytope.inequalities):
            s = _dot(normal, x)
            if s > g * offset or (s == g * offset and i in strict):
                ok = False
                break
        if ok:
            for h in iop.arrangement:
                if _dot(h.normal, x) == g * h.offset:
                    ok = False
                    break
        if ok:
            points.append(x)
    return points


def lattice_count_insideout(iop: InsideOutPolytope, g: int) -> int:
    return len(lattice_points_insideout(iop, g))


def product_insideout(p: InsideOutPolytope, q: InsideOutPolytope) -> InsideOutPolytope:
    """Cartesian product; the removed locus is the union of the padded
    arrangements, so counts multiply dilate by dilate."""
    dp, dq = p.polytope.dim, q.polytope.dim
    zeros_p, zeros_q = (0,) * dp, (0,) * dq
    ineqs = [(n + zeros_q, b) for n, b in p.polytope.inequalities]
    ineqs += [(zeros_p + n, b) for n, b in q.polytope.inequalities]
    arr = [Hyperplane(h.normal + zeros_q, h.offset) for h in p.arrangement]
    arr += [Hyperplane(zeros_p + h.normal, h.offset) for h in q.arrangement]
    shift = len(p.polytope.inequalities)
    excluded = tuple(p.boundary_excluded) + tuple(i + shift for i in q.boundary_excluded)
    return InsideOutPolytope(HPolytope(tuple(ineqs), dp + dq), tuple(arr), excluded)


# ---------------------------------------------------------------------------
# Open simplices and complexes


@dataclass(frozen=True)
class OpenSimplex:
    """Relative interior of the hull of affinely independent integer
    vertices (independence is verified by the operations that need it)."""
    vertices: Tuple[IntVec, ...]

    def __post_init__(self):
        verts = tuple(_intvec(v) for v in self.vertices)
        if not verts:
            raise DomainError("simplex needs at least one vertex")
        if len({len(v) for v in verts}) != 1:
            raise DomainError("vertices of mixed dimension")
        object.__setattr__(self, "vertices", verts)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])


@dataclass(frozen=True)
class OpenSimplexComplex:
    simplices: Tuple[OpenSimplex, ...]

    def __post_init__(self):
        simplices = tuple(self.simplices)
        if simplices and len({s.ambient_dim for s in simplices}) != 1:
            raise DomainError("simplices of mixed ambient dimension")
        object.__setattr__(self, "simplices", simplices)


def _solve_barycentric(vertices: Tuple[IntVec, ...], point: IntVec):
    """Exact solution of sum lam_i v_i = point, sum lam_i = 1, or None
    when the point is outside the affine hull.  Raises on affinely
    dependent vertices (no unique solution)."""
    k = len(vertices)
    ambient = len(vertices[0])
    # rows: ambient coordinate equations plus the affine constraint
    aug = [[Fraction(vertices[i][r]) for i in range(k)] + [Fraction(point[r])]
           for r in range(ambient)]
    aug.append([Fraction(1)] * k + [Fraction(1)])
    pivots = []
    row = 0
    for col in range(k):
        pivot = next((r for r in range(row, len(aug)) if aug[r][col] != 0), None)
        if pivot is None:
            raise ConstructionError("affinely dependent simplex vertices")
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [a * inv for a in aug[row]]
        for r in range(len(aug)):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, len(aug)):
        if aug[r][-1] != 0:
            return None  # inconsistent: point not in the affine hull
    return [aug[r][-1] for r in range(k)]


def lattice_points_open_simplex(s: OpenSimplex, g: int) -> List[IntVec]:
    """Integer points in the relative interior of the dilated simplex,
    lexicographic order."""
    if g < 1:
        raise DomainError(f"dilate must be >= 1, got {g}")
    verts = s.vertices
    ranges = [range(g * min(v[j] for v in verts), g * max(v[j] for v in verts) + 1)
              for j in range(s.ambient_dim)]
    scaled = tuple(tuple(g * c for c in v) for v in verts)
    points = []
    for x in itertools.product(*ranges):
        lam = _solve_barycentric(scaled, x)
        if lam is not None and all(l > 0 for l in lam):
            points.append(x)
    return points


def lattice_count_complex(c: OpenSimplexComplex, g: int) -> int:
    return sum(len(lattice_points_open_simplex(s, g)) for s in c.simplices)


def unimodular_check(s: OpenSimplex) -> bool:
    """True iff the gcd of the maximal minors of the edge matrix
    (v_i - v_0) is 1; for full-dimensional simplices this is |det| = 1."""
    k = s.dim
    if k == 0:
        return True
    edges = [tuple(v[j] - s.vertices[0][j] for j in range(s.ambient_dim))
             for v in s.vertices[1:]]
    minors_gcd = 0
    for cols in itertools.combinations(range(s.ambient_dim), k):
        minor = _int_det([[e[c] for c in cols] for e in edges])
        minors_gcd = gcd(minors_gcd, abs(minor))
    if minors_gcd == 0:
        raise DomainError("affinely dependent simplex vertices")
    return minors_gcd == 1


def _int_det(rows) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[r[c] for c in range(n) if c != j] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * _int_det(minor)
    return total


# ---------------------------------------------------------------------------
# Interpolation and triangulation verification


def ehrhart_interpolate(counter: Callable[[int], int], dim: int) -> Poly:
    """Unique degree-<=dim polynomial through the counts at g = 1..dim+1
    (Newton forward differences), verified at g = dim+2."""
    if dim < 0:
        raise DomainError(f"dimension must be >= 0, got {dim}")
    values = [int(counter(g)) for g in range(1, dim + 2)]
    diffs = []
    work = list(values)
    while work:
        diffs.append(work[0])
        work = [b - a for a, b in zip(work, work[1:])]
    poly = from_fstar(diffs)
    probe = dim + 2
    if poly_eval(poly, probe) != counter(probe):
        raise InconsistencyError(
            f"counts are not a polynomial of degree <= {dim}: value at "
            f"g={probe} is {counter(probe)}, interpolant gives {poly_eval(poly, probe)}")
    return poly


@dataclass(frozen=True)
class TriangulationReport:
    """Successful verification outcome.  fstar counts open simplices per
    dimension; the certificate covers dilates 1..verified_dilates only
    (a symbolic proof of disjointness is out of scope)."""
    fstar: tuple
    verified_dilates: int


def verify_triangulation(c: OpenSimplexComplex, iop: InsideOutPolytope,
                         g_max: int) -> TriangulationReport:
    """Check that the open complex triangulates the inside-out polytope:
    every simplex unimodular, per-dilate point sets pairwise disjoint,
    and their union equal (as a set, not merely in size) to the
    inside-out point set, for every dilate up to g_max."""
    if g_max < 1:
        raise DomainError(f"g_max must be >= 1, got {g_max}")
    for idx, s in enumerate(c.simplices):
        if not unimodular_check(s):
            raise DomainError(f"simplex {idx} {s.vertices} is not unimodular")
    max_dim = max((s.dim for s in c.simplices), default=0)
    fstar = [0] * (max_dim + 1)
    for s in c.simplices:
        fstar[s.dim] += 1
    for g in range(1, g_max + 1):
        seen = {}
        for idx, s in enumerate(c.simplices):
            for pt in lattice_points_open_simplex(s, g):
                if pt in seen:
                    raise InconsistencyError(
                        f"dilate {g}: point {pt} lies in simplices "
                        f"{seen[pt]} and {idx}")
                seen[pt] = idx
        reference = lattice_points_insideout(iop, g)
        if sorted(seen) != reference:
            diff = set(seen).symmetric_difference(reference)
            raise InconsistencyError(
                f"dilate {g}: triangulation and inside-out point sets "
                f"differ at {sorted(diff)[0]}")
    return TriangulationReport(fstar=tuple(fstar), verified_dilates=g_max)


# ---------------------------------------------------------------------------
# Triangulation builders and the face filter


def _filter_faces(faces: Iterable[Tuple[IntVec, ...]],
                  forms: Sequence[Tuple[IntVec, int]]) -> Tuple[OpenSimplex, ...]:
    """Keep the open faces not contained in any excluded locus.  A face
    with every vertex on one locus lies inside it (dropped); strictly
    mixed signs mean the locus crosses the face's interior, which is not
    a refinement and is a construction error; touching at a vertex is
    harmless for an open face."""
    kept = []
    for verts in faces:
        drop = False
        for normal, offset in forms:
            values = [_dot(normal, v) - offset for v in verts]
            if all(v == 0 for v in values):
                drop = True
                break
            if any(v > 0 for v in values) and any(v < 0 for v in values):
                raise ConstructionError(
                    f"face {verts} crosses the locus {normal}.x = {offset}")
        if not drop:
            kept.append(OpenSimplex(verts))
    return tuple(kept)


def _exclusion_forms(iop: InsideOutPolytope) -> List[Tuple[IntVec, int]]:
    forms = [(h.normal, h.offset) for h in iop.arrangement]
    for i in iop.boundary_excluded:
        normal, offset = iop.polytope.inequalities[i]
        forms.append((normal, offset))
    return forms


def interval_triangulation(iop: InsideOutPolytope, lo: int, hi: int) -> OpenSimplexComplex:
    """Integer-segment triangulation of [lo, hi], filtered against the
    inside-out exclusions."""
    faces = [((x,),) for x in range(lo, hi + 1)]
    faces += [((x,), (x + 1,)) for x in range(lo, hi)]
    return OpenSimplexComplex(_filter_faces(faces, _exclusion_forms(iop)))


def box_triangulation(iop: InsideOutPolytope, xlo: int, xhi: int,
                      ylo: int, yhi: int,
                      diagonal: Callable[[int, int], int]) -> OpenSimplexComplex:
    """Unit-cell triangulation of [xlo,xhi] x [ylo,yhi]; diagonal(i, j)
    returns +1 for the main diagonal of the cell with lower-left corner
    (i, j) and -1 for the antidiagonal.  Faces on excluded loci are
    filtered out afterwards."""
    faces: List[Tuple[IntVec, ...]] = []
    for x in range(xlo, xhi + 1):
        for y in range(ylo, yhi + 1):
            faces.append(((x, y),))
    for x in range(xlo, xhi):
        for y in range(ylo, yhi + 1):
            faces.append(((x, y), (x + 1, y)))
    for x in range(xlo, xhi + 1):
        for y in range(ylo, yhi):
            faces.append(((x, y), (x, y + 1)))
    for i in range(xlo, xhi):
        for j in range(ylo, yhi):
            ll, lr = (i, j), (i + 1, j)
            ul, ur = (i, j + 1), (i + 1, j + 1)
            if diagonal(i, j) == 1:
                faces.append((ll, ur))
                faces.append((ll, lr, ur))
                faces.append((ll, ur, ul))
            else:
                faces.append((lr, ul))
                faces.append((ll, lr, ul))
                faces.append((lr, ur, ul))
    return OpenSimplexComplex(_filter_faces(faces, _exclusion_forms(iop)))


# ---------------------------------------------------------------------------
# Built-in fixtures


@dataclass(frozen=True)
class Fixture:
    """An inside-out polytope realizing a shifted L-polynomial:
    multiplier * |g . insideout| = L_d(g + m(d)) for every g >= 1."""
    name: str
    d: Tuple[int, ...]
    insideout: InsideOutPolytope
    complex: Optional[OpenSimplexComplex]
    multiplier: int


def _box1(lo: int, hi: int) -> HPolytope:
    return HPolytope((((1,), hi), ((-1,), -lo)), 1)


def _box2(xlo: int, xhi: int, ylo: int, yhi: int) -> HPolytope:
    return HPolytope((((1, 0), xhi), ((-1, 0), -xlo),
                      ((0, 1), yhi), ((0, -1), -ylo)), 2)


def _lines(*rows) -> Tuple[Hyperplane, ...]:
    return tuple(Hyperplane(n, b) for n, b in rows)


def _build_p1() -> Fixture:
    iop = InsideOutPolytope(_box1(-3, 3), _lines(
        ((1,), 2), ((1,), -2), ((1,), 3), ((1,), -3)))
    return Fixture("P1", (1,), iop, interval_triangulation(iop, -3, 3), 1)


def _build_p1t() -> Fixture:
    iop = InsideOutPolytope(_box1(-1, 1), _lines(((1,), 1), ((1,), -1)))
    return Fixture("P1t", (1,), iop, interval_triangulation(iop, -1, 1), 3)


def _build_p11() -> Fixture:
    iop = InsideOutPolytope(_box2(-3, 3, -3, 3), _lines(
        ((0, 1), 3), ((0, 1), 2), ((0, 1), 1), ((0, 1), 0), ((1, 0), 3)))
    cx = box_triangulation(iop, -3, 3, -3, 3, lambda i, j: 1)
    return Fixture("P11", (1, 1), iop, cx, 1)


def _build_p11t() -> Fixture:
    iop = InsideOutPolytope(_box2(0, 2, 0, 1), _lines(
        ((0, 1), 1), ((1, 0), 1), ((1, 0), 2)))
    cx = box_triangulation(iop, 0, 2, 0, 1, lambda i, j: 1)
    return Fixture("P11t", (1, 1), iop, cx, 18)


def _build_p2() -> Fixture:
    iop = InsideOutPolytope(_box2(-3, 3, -3, 3), _lines(
        ((1, 0), 3), ((1, 0), -3), ((0, 1), 3), ((0, 1), -3),
        ((0, 1), 2), ((0, 1), -2),
        ((1, 1), 4), ((1, 1), -4), ((1, 1), 5), ((1, 1), -5),
        ((1, -1), 4), ((1, -1), -4), ((1, -1), 5), ((1, -1), -5)))
    # cells crossed by an x1+x2 line get the antidiagonal, which then
    # lies on that line and is filtered out; likewise the main diagonal
    # on the x1-x2 lines
    cx = box_triangulation(iop, -3, 3, -3, 3,
                           lambda i, j: -1 if i + j in (3, 4, -5, -6) else 1)
    return Fixture("P2", (2,), iop, cx, 1)


def _build_p2t() -> Fixture:
    iop = InsideOutPolytope(_box2(-3, 3, -1, 1), _lines(
        ((0, 1), 1), ((0, 1), -1), ((1, 0), 3), ((1, 0), -3),
        ((1, 1), 3), ((1, 1), -3), ((1, -1), 3), ((1, -1), -3)))
    cx = box_triangulation(iop, -3, 3, -1, 1,
                           lambda i, j: 1 if (i, j) in ((-3, 0), (2, -1)) else -1)
    return Fixture("P2t", (2,), iop, cx, 3)


_FIXTURE_BUILDERS = {
    "P1": _build_p1,
    "P1t": _build_p1t,
    "P11": _build_p11,
    "P11t": _build_p11t,
    "P2": _build_p2,
    "P2t": _build_p2t,
}

FIXTURE_NAMES = tuple(_FIXTURE_BUILDERS)

_FIXTURES: dict = {}


def builtin_fixture(name: str) -> Fixture:
    if name not in _FIXTURE_BUILDERS:
        raise DomainError(
            f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    if name not in _FIXTURES:
        _FIXTURES[name] = _FIXTURE_BUILDERS[name]()
    return _FIXTURES[name]


# ---------------------------------------------------------------------------
# Plain-text fixture format


def fixture_to_text(iop: InsideOutPolytope) -> str:
    """Header 'dim excluded_indices' ('-' when none), then one line per
    inequality 'a_1 ... a_dim <= b' and per hyperplane 'a_1 ... a_dim == b'."""
    excluded = ",".join(str(i) for i in iop.boundary_excluded) or "-"
    lines = [f"{iop.polytope.dim} {excluded}"]
    for normal, offset in iop.polytope.inequalities:
        lines.append(" ".join(str(c) for c in normal) + f" <= {offset}")
    for h in iop.arrangement:
        lines.append(" ".join(str(c) for c in h.normal) + f" == {h.offset}")
    return "\n".join(lines) + "\n"


def fixture_from_text(text: str) -> InsideOutPolytope:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DomainError("empty fixture description")
    header = lines[0].split()
    if len(header) != 2:
        raise DomainError("fixture header must be 'dim excluded_indices'")
    try:
        dim = int(header[0])
        excluded = () if header[1] == "-" else tuple(
            int(t) for t in header[1].split(","))
    except ValueError as exc:
        raise DomainError(f"bad fixture header {lines[0]!r}") from exc
    inequalities, hyperplanes = [], []
    for ln in lines[1:]:
        for op, sink in (("<=", inequalities), ("==", hyperplanes)):
            if op in ln:
                left, _, right = ln.partition(op)
                try:
                    normal = _intvec(left.split())
                    offset = int(right)
                except ValueError as exc:
                    raise DomainError(f"bad fixture line {ln!r}") from exc
                if len(normal) != dim:
                    raise DomainError(f"fixture line {ln!r} has wrong dimension")
                sink.append((normal, offset))
                break
        else:
            raise DomainError(f"fixture line {ln!r} has no <= or ==")
    return InsideOutPolytope(
        HPolytope(tuple(inequalities), dim),
        tuple(Hyperplane(n, b) for n, b in hyperplanes),
        excluded)
