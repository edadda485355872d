"""Skew polynomial algebras attached to a root-of-unity commutation matrix.

Two graded algebras share one parameter object: the ambient algebra "B" with
only the commutation relations x_i x_j = zeta_n^(e_ij) x_j x_i, and the
quotient algebra "A" obtained by additionally imposing
x_1^n + x_2^n + ... + x_n^n = 0.

Phase convention, fixed once: in x_i * x_j with i the LEFT factor, the swap
produces the phase exponent e_ij, so a word is normal ordered by repeatedly
rewriting descents (left letter greater than right letter) and accumulating
e_(left,right) per swap.

Basis conventions: algebra B has the PBW basis x^a over all multidegrees a;
each x_k^n is central (the n-th power of any commutation phase is 1), so
x_n^n may be rewritten as -(x_1^n + ... + x_(n-1)^n) and algebra A has the
PBW basis restricted to a_n < n.  Polynomials tagged "A" are kept in that
reduced form at all times.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .cyclo import CycloField, Cyclotomic

__all__ = [
    "ALGEBRA_A",
    "ALGEBRA_B",
    "AlgebraMismatchError",
    "DiagAutomorphism",
    "ParamsError",
    "QuantumParams",
    "SkewPoly",
    "commutative_params",
    "fermat_element",
    "from_twist",
    "graded_dimension",
    "is_central",
    "iter_multidegrees",
    "multiply",
    "normal_order",
    "normalizing_automorphism",
    "product_of_generators",
    "reduce_a",
    "validate_params",
]

ALGEBRA_B = "B"
ALGEBRA_A = "A"

Multidegree = tuple[int, ...]
Word = tuple[int, ...]


class ParamsError(ValueError):
    """Invalid commutation-exponent data."""


class AlgebraMismatchError(ValueError):
    """Raised when combining polynomials over different algebras."""


@dataclass(frozen=True)
class QuantumParams:
    """Commutation exponents e_ij in Z/n with zero diagonal and e_ij + e_ji = 0.

    The commutation scalars themselves are q_ij = zeta_n^(e_ij).  Build
    instances through :func:`validate_params`, :func:`from_twist` or
    :func:`commutative_params`; direct construction skips validation.
    """

    n: int
    exps: tuple[tuple[int, ...], ...]

    def exponent(self, i: int, j: int) -> int:
        """e_ij for 1-based generator indices."""
        self._check_index(i)
        self._check_index(j)
        return self.exps[i - 1][j - 1]

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"generator index {i} out of range 1..{self.n}")

    def q_scalar(self, i: int, j: int, field: CycloField | None = None) -> Cyclotomic:
        """q_ij as a cyclotomic number, in Q(zeta_n) unless a field is given."""
        fld = field if field is not None else CycloField(self.n)
        if fld.conductor % self.n != 0:
            raise ValueError(
                f"conductor {fld.conductor} does not contain the n-th roots of unity"
            )
        return fld.zeta((fld.conductor // self.n) * self.exponent(i, j))

    def to_json(self) -> dict:
        return {"n": self.n, "exponents": [list(row) for row in self.exps]}


def validate_params(n: int, exponents: Sequence[Sequence[int]]) -> QuantumParams:
    """Check and normalize an n-by-n exponent matrix.

    Entries are reduced mod n.  Errors name the offending entry, e.g. a
    diagonal e_ii != 0 or a pair with e_ij + e_ji != 0 mod n.
    """
    if not isinstance(n, int) or n < 2:
        raise ParamsError(f"n must be an integer >= 2, got {n!r}")
    rows = list(exponents)
    if len(rows) != n:
        raise ParamsError(f"expected {n} rows, got {len(rows)}")
    mat: list[tuple[int, ...]] = []
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != n:
            raise ParamsError(f"row {i + 1}: expected {n} entries, got {len(row)}")
        for j, e in enumerate(row):
            if not isinstance(e, int) or isinstance(e, bool):
                raise ParamsError(f"entry ({i + 1},{j + 1}): expected integer, got {e!r}")
        mat.append(tuple(e % n for e in row))
    for i in range(n):
        if mat[i][i] != 0:
            raise ParamsError(f"diagonal entry ({i + 1},{i + 1}) must be 0 mod {n}")
        for j in range(i + 1, n):
            if (mat[i][j] + mat[j][i]) % n != 0:
                raise ParamsError(
                    f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) must sum to "
                    f"0 mod {n}; got {mat[i][j]} + {mat[j][i]}"
                )
    return QuantumParams(n, tuple(mat))


def from_twist(twist: Sequence[int]) -> QuantumParams:
    """Parameters with e_ij = d_i - d_j for a diagonal twist vector d."""
    d = list(twist)
    n = len(d)
    if n < 2:
        raise ParamsError(f"twist vector needs length >= 2, got {n}")
    for k, v in enumerate(d):
        if not isinstance(v, int) or isinstance(v, bool):
            raise ParamsError(f"twist[{k}]: expected integer, got {v!r}")
    mat = tuple(
        tuple((d[i] - d[j]) % n for j in range(n)) for i in range(n)
    )
    return QuantumParams(n, mat)


def commutative_params(n: int) -> QuantumParams:
    """All commutation exponents zero."""
    if not isinstance(n, int) or n < 2:
        raise ParamsError(f"n must be an integer >= 2, got {n!r}")
    return QuantumParams(n, tuple((0,) * n for _ in range(n)))


def normal_order(params: QuantumParams, word: Iterable[int]) -> tuple[int, Multidegree]:
    """Phase exponent (mod n) and multidegree of a word in the generators.

    The word is a sequence of 1-based generator indices; the returned phase p
    means  word = zeta_n^p * x^multidegree  in algebra B.
    """
    w = tuple(word)
    n = params.n
    exps = params.exps
    for a in w:
        if not isinstance(a, int) or isinstance(a, bool) or not 1 <= a <= n:
            raise ValueError(f"word letter {a!r} out of range 1..{n}")
    phase = 0
    degs = [0] * n
    for pos, a in enumerate(w):
        degs[a - 1] += 1
        row = exps[a - 1]
        for b in w[pos + 1 :]:
            if a > b:
                phase += row[b - 1]
    return phase % n, tuple(degs)


def _product_phase(exps, a: Multidegree, b: Multidegree) -> int:
    # Phase of x^a * x^b: every x_i in the left factor crosses every x_j (j < i)
    # in the right factor exactly once.
    total = 0
    for i, ai in enumerate(a):
        if ai:
            row = exps[i]
            for j in range(i):
                bj = b[j]
                if bj:
                    total += ai * bj * row[j]
    return total


def _reduce_terms_a(n: int, terms: dict) -> dict:
    # Rewrite x_n^n -> -(x_1^n + ... + x_(n-1)^n) until every exponent of x_n
    # is < n.  All x_k^n are central, so the rewrite touches no phases.
    out: dict = {}
    stack = list(terms.items())
    while stack:
        md, c = stack.pop()
        if md[n - 1] >= n:
            base = list(md)
            base[n - 1] -= n
            for k in range(n - 1):
                new = list(base)
                new[k] += n
                stack.append((tuple(new), -c))
        else:
            prev = out.get(md)
            acc = c if prev is None else prev + c
            if acc.is_zero():
                out.pop(md, None)
            else:
                out[md] = acc
    return out


class SkewPoly:
    """A polynomial in normal-ordered PBW form over a cyclotomic field.

    Terms map multidegrees to nonzero coefficients.  The coefficient field
    must contain the n-th roots of unity (conductor divisible by n); phases
    from reordering land in it via zeta_n = zeta_cond^(cond/n).
    """

    __slots__ = ("params", "algebra", "field", "_terms")

    def __init__(
        self,
        params: QuantumParams,
        algebra: str,
        terms: dict | None = None,
        field: CycloField | None = None,
    ):
        if algebra not in (ALGEBRA_A, ALGEBRA_B):
            raise ValueError(f"algebra tag must be 'A' or 'B', got {algebra!r}")
        if field is None:
            field = CycloField(params.n)
        elif field.conductor % params.n != 0:
            raise ValueError(
                f"conductor {field.conductor} does not contain the n-th roots of unity"
            )
        self.params = params
        self.algebra = algebra
        self.field = field
        clean: dict = {}
        if terms:
            for md, c in terms.items():
                md = tuple(md)
                if len(md) != params.n or any(e < 0 for e in md):
                    raise ValueError(f"bad multidegree {md}")
                if not isinstance(c, Cyclotomic):
                    c = field.from_rational(c)
                elif c.field is not field:
                    raise ValueError("coefficient from a different field")
                if not c.is_zero():
                    prev = clean.get(md)
                    acc = c if prev is None else prev + c
                    if acc.is_zero():
                        clean.pop(md, None)
                    else:
                        clean[md] = acc
        if algebra == ALGEBRA_A and any(md[params.n - 1] >= params.n for md in clean):
            clean = _reduce_terms_a(params.n, clean)
        self._terms = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, params, algebra=ALGEBRA_B, field=None) -> "SkewPoly":
        return cls(params, algebra, {}, field)

    @classmethod
    def one(cls, params, algebra=ALGEBRA_B, field=None) -> "SkewPoly":
        p = cls(params, algebra, {}, field)
        p._terms = {(0,) * params.n: p.field.one()}
        return p

    @classmethod
    def generator(cls, params, i: int, algebra=ALGEBRA_B, field=None) -> "SkewPoly":
        params._check_index(i)
        md = [0] * params.n
        md[i - 1] = 1
        p = cls(params, algebra, {}, field)
        p._terms = {tuple(md): p.field.one()}
        return p

    @classmethod
    def monomial(cls, params, multidegree, coeff=1, algebra=ALGEBRA_B, field=None) -> "SkewPoly":
        return cls(params, algebra, {tuple(multidegree): coeff}, field)

    # -- inspection -------------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, multidegree) -> Cyclotomic:
        return self._terms.get(tuple(multidegree), self.field.zero())

    def support(self) -> list[Multidegree]:
        return sorted(self._terms, key=lambda md: (sum(md), md))

    def total_degrees(self) -> set[int]:
        return {sum(md) for md in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.total_degrees()) <= 1

    def _check_compatible(self, other: "SkewPoly") -> None:
        if (
            self.params != other.params
            or self.algebra != other.algebra
            or self.field is not other.field
        ):
            raise AlgebraMismatchError(
                "operands live in different algebras or coefficient fields"
            )

    # -- arithmetic ---------------------------------------------------------------

    def _with_terms(self, terms: dict) -> "SkewPoly":
        return SkewPoly(self.params, self.algebra, terms, self.field)

    def __add__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        self._check_compatible(other)
        merged = dict(self._terms)
        for md, c in other._terms.items():
            prev = merged.get(md)
            merged[md] = c if prev is None else prev + c
        return self._with_terms(merged)

    def __neg__(self):
        return self._with_terms({md: -c for md, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar) -> "SkewPoly":
        if isinstance(scalar, Cyclotomic):
            if scalar.field is not self.field:
                raise AlgebraMismatchError("scalar from a different field")
        else:
            scalar = self.field.from_rational(scalar)
        return self._with_terms({md: c * scalar for md, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, SkewPoly):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return (
            self.params == other.params
            and self.algebra == other.algebra
            and self.field is other.field
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash(
            (self.params, self.algebra, self.field.conductor, frozenset(self._terms.items()))
        )

    def __repr__(self) -> str:
        try:
            from .expr import print_poly

            return f"<{self.algebra}_{self.params.n} poly: {print_poly(self)}>"
        except Exception:
            return f"<{self.algebra}_{self.params.n} poly, {len(self._terms)} terms>"

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "n": self.params.n,
            "conductor": self.field.conductor,
            "terms": [
                {"multidegree": list(md), "coeff": c.to_json()}
                for md, c in sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            ],
        }


def multiply(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Product in the common algebra of f and g."""
    if not isinstance(f, SkewPoly) or not isinstance(g, SkewPoly):
        raise TypeError("multiply expects two SkewPoly operands")
    f._check_compatible(g)
    n = f.params.n
    exps = f.params.exps
    field = f.field
    scale = field.conductor // n
    out: dict = {}
    for a, ca in f._terms.items():
        for b, cb in g._terms.items():
            ph = _product_phase(exps, a, b) % n
            coeff = ca * cb
            if ph:
                coeff = coeff * field.zeta(scale * ph)
            key = tuple(x + y for x, y in zip(a, b))
            prev = out.get(key)
            out[key] = coeff if prev is None else prev + coeff
    return SkewPoly(f.params, f.algebra, out, field)


def reduce_a(poly: SkewPoly) -> SkewPoly:
    """Rewrite a polynomial into the reduced PBW form of algebra A.

    Accepts a polynomial tagged either A (idempotent re-normalization) or B
    (interpreting its terms in the quotient).
    """
    return SkewPoly(poly.params, ALGEBRA_A, poly._terms, poly.field)


def fermat_element(params: QuantumParams, algebra: str = ALGEBRA_B, field=None) -> SkewPoly:
    """x_1^n + x_2^n + ... + x_n^n (the element that cuts B down to A)."""
    n = params.n
    terms = {}
    for k in range(n):
        md = [0] * n
        md[k] = n
        terms[tuple(md)] = 1
    return SkewPoly(params, algebra, terms, field)


def product_of_generators(params: QuantumParams, algebra: str = ALGEBRA_B, field=None) -> SkewPoly:
    """The ordered product x_1 x_2 ... x_n."""
    return SkewPoly.monomial(params, (1,) * params.n, 1, algebra, field)


def is_central(poly: SkewPoly) -> bool:
    """Whether the polynomial commutes with every generator."""
    gens = [SkewPoly.generator(poly.params, i, poly.algebra, poly.field) for i in range(1, poly.params.n + 1)]
    return all((g * poly - poly * g).is_zero() for g in gens)


@dataclass(frozen=True)
class DiagAutomorphism:
    """A diagonal graded automorphism x_j -> scalar_j * x_j."""

    params: QuantumParams
    scalars: tuple[Cyclotomic, ...]

    def __post_init__(self):
        if len(self.scalars) != self.params.n:
            raise ValueError("one scalar per generator required")
        if any(s.is_zero() for s in self.scalars):
            raise ValueError("automorphism scalars must be nonzero")

    @property
    def is_scalar(self) -> bool:
        """True when every generator is rescaled by the same constant."""
        first = self.scalars[0]
        return all(s == first for s in self.scalars[1:])

    def apply(self, poly: SkewPoly) -> SkewPoly:
        scalars = [
            s if s.field is poly.field else s.embed(poly.field) for s in self.scalars
        ]
        out = {}
        for md, c in poly._terms.items():
            factor = poly.field.one()
            for j, e in enumerate(md):
                if e:
                    factor = factor * scalars[j] ** e
            out[md] = c * factor
        return SkewPoly(poly.params, poly.algebra, out, poly.field)

    def to_json(self) -> dict:
        return {"scalars": [s.to_json() for s in self.scalars]}


def normalizing_automorphism(poly: SkewPoly) -> Optional[DiagAutomorphism]:
    """The diagonal automorphism nu with  poly * x_j = nu(x_j) * poly,  if any.

    Returns None when no diagonal automorphism normalizes the polynomial.
    """
    if poly.is_zero():
        raise ValueError("the zero polynomial normalizes trivially; no unique automorphism")
    scalars = []
    for j in range(1, poly.params.n + 1):
        g = SkewPoly.generator(poly.params, j, poly.algebra, poly.field)
        left = poly * g
        right = g * poly
        if right.is_zero():
            if left.is_zero():
                scalars.append(poly.field.one())
                continue
            return None
        md, ref = next(iter(right._terms.items()))
        cand = left._terms.get(md)
        if cand is None:
            return None
        c = cand / ref
        if (left - right.scale(c)).is_zero():
            scalars.append(c)
        else:
            return None
    return DiagAutomorphism(poly.params, tuple(scalars))


def iter_multidegrees(n: int, total: int, last_cap: int | None = None) -> Iterator[Multidegree]:
    """All length-n multidegrees of the given total degree, lexicographically.

    With last_cap set, the final entry is restricted to be < last_cap.
    """
    if n < 1 or total < 0:
        return
    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            if last_cap is None or remaining < last_cap:
                yield tuple(prefix + [remaining])
            return
        for v in range(remaining + 1):
            yield from rec(prefix + [v], remaining - v, slots - 1)
    yield from rec([], total, n)


def graded_dimension(params: QuantumParams, algebra: str, degree: int) -> int:
    """Dimension of the degree-d graded piece, by counting PBW basis monomials."""
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    if algebra == ALGEBRA_B:
        cap = None
    elif algebra == ALGEBRA_A:
        cap = params.n
    else:
        raise ValueError(f"algebra tag must be 'A' or 'B', got {algebra!r}")
    return sum(1 for _ in iter_multidegrees(params.n, degree, cap))
