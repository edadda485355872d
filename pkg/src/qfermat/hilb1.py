"""Point-module classification: simplex faces, shift automorphisms, point counts.

A point module is determined by its orbit sequence (xi, phi xi, phi^2 xi, ...)
of projective points; the consecutive-point constraints
xi_i xi'_j = zeta_n^(e_ij) xi_j xi'_i force the support onto a subset S whose
internal triangle exponents e_ij + e_jk + e_ki all vanish.  The parameter set
is therefore a union of faces of the (n-1)-simplex: every 2-subset is always
admissible, and a larger subset is admissible exactly when its triangles
vanish.

Over the ambient algebra B each admissible face contributes a projective
space.  Over the quotient A the face is cut by the sum of n-th powers of the
supported coordinates: a 2-face {i,j} becomes the n points (1 : u) with
u^n = -1, i.e. u = zeta_2n^(2t+1); larger faces become hypersurfaces of
dimension |S| - 2.  Genericity (all triangles nonzero) is exactly the
discrete case, with n * C(n,2) points in total.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from .cyclo import CycloField, Cyclotomic
from .qalgebra import ALGEBRA_A, ALGEBRA_B, QuantumParams

__all__ = [
    "DichotomyError",
    "FaceComponent",
    "FaceComplex",
    "Hilb1Report",
    "InadmissibleFaceError",
    "K3_EULER_NUMBER",
    "KIND_FINITE_POINTS",
    "KIND_HYPERSURFACE",
    "KIND_PROJECTIVE_SPACE",
    "euler_number_n4",
    "face_complex",
    "fermat_edge_points",
    "hilb1",
    "is_admissible",
    "is_generic",
    "shift_automorphism",
    "triangle_exponent",
    "verify_point_sequence",
]

KIND_PROJECTIVE_SPACE = "projective-space"
KIND_HYPERSURFACE = "hypersurface-in-face"
KIND_FINITE_POINTS = "finite-points"

K3_EULER_NUMBER = 24


class InadmissibleFaceError(ValueError):
    """A face with a nonvanishing internal triangle was supplied."""


class DichotomyError(ValueError):
    """Report shape outside the n=4 two-case classification."""


def triangle_exponent(params: QuantumParams, i: int, j: int, k: int) -> int:
    """e_ij + e_jk + e_ki mod n; cyclic-rotation invariant, negated by a flip."""
    if len({i, j, k}) != 3:
        raise ValueError(f"triangle indices must be distinct, got ({i},{j},{k})")
    for t in (i, j, k):
        params._check_index(t)
    e = params.exps
    return (e[i - 1][j - 1] + e[j - 1][k - 1] + e[k - 1][i - 1]) % params.n


def _require_simplex(params: QuantumParams) -> None:
    if params.n < 3:
        raise ValueError(f"face analysis needs n >= 3, got n={params.n}")


def is_generic(params: QuantumParams) -> bool:
    """True iff every triangle exponent is nonzero."""
    _require_simplex(params)
    n = params.n
    return all(
        triangle_exponent(params, i, j, k) != 0
        for i, j, k in combinations(range(1, n + 1), 3)
    )


def is_admissible(params: QuantumParams, subset: Sequence[int]) -> bool:
    """Whether a subset of generators supports point modules.

    All 2-subsets qualify; a larger subset needs every internal triangle
    exponent to vanish.
    """
    s = sorted(set(subset))
    if len(s) != len(tuple(subset)):
        raise ValueError(f"repeated index in subset {tuple(subset)}")
    for t in s:
        params._check_index(t)
    if len(s) < 2:
        return False
    return all(
        triangle_exponent(params, i, j, k) == 0 for i, j, k in combinations(s, 3)
    )


@dataclass(frozen=True)
class FaceComplex:
    """Maximal admissible faces of the (n-1)-simplex."""

    n: int
    maximal_faces: tuple[tuple[int, ...], ...]
    is_full: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "maximal_faces": [list(f) for f in self.maximal_faces],
            "is_full": self.is_full,
        }


def face_complex(params: QuantumParams) -> FaceComplex:
    """Maximal admissible faces, sorted by (size, lexicographic order).

    Admissible subsets are closed under taking subsets of size >= 2, so a
    greedy sweep from large to small suffices to find the maximal ones.
    """
    _require_simplex(params)
    n = params.n
    everything = tuple(range(1, n + 1))
    if is_admissible(params, everything):
        return FaceComplex(n, (everything,), True)
    maximal: list[tuple[int, ...]] = []
    for size in range(n - 1, 1, -1):
        for cand in combinations(everything, size):
            if any(set(cand) <= set(m) for m in maximal):
                continue
            if is_admissible(params, cand):
                maximal.append(cand)
    maximal.sort(key=lambda f: (len(f), f))
    return FaceComplex(n, tuple(maximal), False)


def shift_automorphism(
    params: QuantumParams, face: Sequence[int], base: int
) -> tuple[int, ...]:
    """Diagonal phase exponents (d_j)_{j in face} of the shift, anchored at base.

    The shift sends a point xi to (zeta_n^(d_j) xi_j); with d_j = e_(base,j)
    the consecutive-point constraints hold on the whole face because its
    triangles vanish.  Changing the base shifts every phase by one constant.
    """
    f = tuple(sorted(set(face)))
    if len(f) != len(tuple(face)) or len(f) < 2:
        raise InadmissibleFaceError(f"face must be a set of >= 2 indices, got {tuple(face)}")
    if base not in f:
        raise InadmissibleFaceError(f"base {base} not in face {f}")
    if not is_admissible(params, f):
        raise InadmissibleFaceError(f"face {f} has a nonvanishing triangle")
    b = base - 1
    return tuple(params.exps[b][j - 1] % params.n for j in f)


def verify_point_sequence(params: QuantumParams, xi: Sequence[Cyclotomic], steps: int) -> bool:
    """Exactly check the consecutive-point relations along the shift orbit.

    The candidate shift is built from the support of xi (base = smallest
    supported index); each of the given number of steps checks
    xi_i * (next xi)_j = zeta_n^(e_ij) * xi_j * (next xi)_i for all i < j.
    Inadmissible supports are allowed in: they fail the check rather than
    raise, which is the point of the negative examples.
    """
    coords = list(xi)
    n = params.n
    if len(coords) != n:
        raise ValueError(f"expected {n} coordinates, got {len(coords)}")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    field = coords[0].field
    if any(c.field is not field for c in coords):
        raise ValueError("coordinates must share one field")
    if field.conductor % n != 0:
        raise ValueError(
            f"coordinate field conductor {field.conductor} lacks the n-th roots of unity"
        )
    support = [k for k in range(n) if not coords[k].is_zero()]
    if not support:
        raise ValueError("the zero vector is not a projective point")
    scale = field.conductor // n
    base = support[0]
    d = [params.exps[base][j] % n for j in range(n)]
    shift = [field.zeta(scale * d[j]) for j in range(n)]
    exps = params.exps
    cur = coords
    for _ in range(steps):
        nxt = [shift[j] * cur[j] for j in range(n)]
        for a in range(n):
            if cur[a].is_zero() and nxt[a].is_zero():
                continue
            for b in range(a + 1, n):
                lhs = cur[a] * nxt[b]
                rhs = field.zeta(scale * exps[a][b]) * cur[b] * nxt[a]
                if lhs != rhs:
                    return False
        cur = nxt
    return True


def fermat_edge_points(params: QuantumParams, i: int, j: int) -> tuple[tuple[Cyclotomic, ...], ...]:
    """The n points of the 2-face {i,j} cut by x_i^n + x_j^n = 0.

    Coordinates are full-length vectors over Q(zeta_2n), normalized to 1 in
    slot i; the affine coordinate u in slot j runs over the roots of
    u^n = -1, namely zeta_2n^(2t+1) for t = 0..n-1.
    """
    params._check_index(i)
    params._check_index(j)
    if i == j:
        raise ValueError("edge needs two distinct indices")
    n = params.n
    field = CycloField(2 * n)
    pts = []
    for t in range(n):
        vec = [field.zero()] * n
        vec[i - 1] = field.one()
        vec[j - 1] = field.zeta(2 * t + 1)
        pts.append(tuple(vec))
    return tuple(pts)


@dataclass(frozen=True)
class FaceComponent:
    """One component of the point-module parameter set."""

    face: tuple[int, ...]
    kind: str
    dimension: int
    shift: tuple[int, ...]
    equation: Optional[str]
    point_count: Optional[int]
    points: Optional[tuple[tuple[Cyclotomic, ...], ...]]
    orbit_length: Optional[int]

    def to_json_dict(self) -> dict:
        out = {
            "face": list(self.face),
            "kind": self.kind,
            "dimension": self.dimension,
            "shift": list(self.shift),
        }
        if self.equation is not None:
            out["equation"] = self.equation
        if self.point_count is not None:
            out["point_count"] = self.point_count
        if self.points is not None:
            out["points"] = [[c.to_json() for c in pt] for pt in self.points]
        if self.orbit_length is not None:
            out["orbit_length"] = self.orbit_length
        return out


@dataclass(frozen=True)
class Hilb1Report:
    """Point-module parameter set of one algebra, organized by maximal faces."""

    params: QuantumParams
    algebra: str
    complex: FaceComplex
    components: tuple[FaceComponent, ...]
    discrete: bool
    total_points: Optional[int]

    def to_json_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "n": self.params.n,
            "complex": self.complex.to_json_dict(),
            "components": [c.to_json_dict() for c in self.components],
            "discrete": self.discrete,
            "total_points": self.total_points,
        }


def _face_equation(face: tuple[int, ...], n: int) -> str:
    return " + ".join(f"x{k}^{n}" for k in face) + " = 0"


def hilb1(params: QuantumParams, algebra: str = ALGEBRA_A) -> Hilb1Report:
    """Classify point modules for the ambient algebra B or the quotient A.

    For B every maximal face carries a projective space.  For A the face is
    cut by the sum of supported n-th powers: 2-faces turn into n exact points
    each, larger faces into hypersurfaces described symbolically.  The report
    is discrete exactly when every maximal face is a 2-face, i.e. for generic
    parameters.
    """
    if algebra not in (ALGEBRA_A, ALGEBRA_B):
        raise ValueError(f"algebra tag must be 'A' or 'B', got {algebra!r}")
    cx = face_complex(params)
    n = params.n
    comps = []
    for face in cx.maximal_faces:
        shift = shift_automorphism(params, face, face[0])
        if algebra == ALGEBRA_B:
            comps.append(
                FaceComponent(
                    face=face,
                    kind=KIND_PROJECTIVE_SPACE,
                    dimension=len(face) - 1,
                    shift=shift,
                    equation=None,
                    point_count=None,
                    points=None,
                    orbit_length=None,
                )
            )
        elif len(face) == 2:
            i, j = face
            e = params.exps[i - 1][j - 1] % n
            comps.append(
                FaceComponent(
                    face=face,
                    kind=KIND_FINITE_POINTS,
                    dimension=0,
                    shift=shift,
                    equation=_face_equation(face, n),
                    point_count=n,
                    points=fermat_edge_points(params, i, j),
                    orbit_length=n // gcd(e, n),
                )
            )
        else:
            comps.append(
                FaceComponent(
                    face=face,
                    kind=KIND_HYPERSURFACE,
                    dimension=len(face) - 2,
                    shift=shift,
                    equation=_face_equation(face, n),
                    point_count=None,
                    points=None,
                    orbit_length=None,
                )
            )
    discrete = bool(comps) and all(c.kind == KIND_FINITE_POINTS for c in comps)
    total = sum(c.point_count for c in comps) if discrete else None
    return Hilb1Report(
        params=params,
        algebra=algebra,
        complex=cx,
        components=tuple(comps),
        discrete=discrete,
        total_points=total,
    )


def euler_number_n4(report: Hilb1Report) -> int:
    """Euler number of the n=4 point-module space: 24 in both dichotomy cases.

    The discrete case returns its exact point count; the full-face case is a
    quartic surface whose Euler number is the K3 constant.  Anything else is
    outside the two-case classification and is refused.
    """
    if report.params.n != 4:
        raise DichotomyError(f"defined only for n=4, got n={report.params.n}")
    if report.algebra != ALGEBRA_A:
        raise DichotomyError("defined for the quotient algebra A only")
    if report.discrete:
        return report.total_points
    if report.complex.is_full:
        return K3_EULER_NUMBER
    raise DichotomyError(
        "report shape is neither discrete nor a full-face hypersurface"
    )
