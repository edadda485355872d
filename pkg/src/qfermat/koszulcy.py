"""Calabi-Yau criterion and the Frobenius structure of the exterior dual.

The quotient algebra A is Calabi-Yau exactly when the column sums
s_j = sum_i e_ij agree for every j; the leftover grading data is the diagonal
twist x_j -> zeta_n^(-s_j) x_j, which is scalar precisely in the CY case.

The dual of the ambient algebra B is a twisted exterior algebra on generators
y_1..y_n subject to  q_ij y_i y_j + y_j y_i = 0  and  y_k^2 = 0.  Its top
graded piece is one-dimensional, making it Frobenius; the Nakayama-type
automorphism is diagonal and is computed here two ways: brute force from the
multiplication pairing, and by a closed formula.  The two routes are compared
modulo a single global scalar rather than merged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cyclo import CycloField, Cyclotomic
from .qalgebra import (
    ALGEBRA_B,
    DiagAutomorphism,
    ParamsError,
    QuantumParams,
    fermat_element,
    is_central,
    product_of_generators,
    validate_params,
)

__all__ = [
    "CyReport",
    "DEHOMOGENIZE_NOTE",
    "ExtElement",
    "FrobeniusComparison",
    "FrobeniusPairingError",
    "PatchParams",
    "column_sums",
    "compare_frobenius",
    "cy_criterion",
    "deformation_central",
    "dehomogenize",
    "frobenius_bruteforce",
    "frobenius_closedform",
    "is_twist_realizable",
]


class FrobeniusPairingError(RuntimeError):
    """The pairing check of the brute-force route failed; indicates a bug."""


def column_sums(params: QuantumParams) -> tuple[int, ...]:
    """s_j = sum_i e_ij mod n, one value per column."""
    n = params.n
    return tuple(sum(params.exps[i][j] for i in range(n)) % n for j in range(n))


@dataclass(frozen=True)
class CyReport:
    """Outcome of the Calabi-Yau column-sum test."""

    params: QuantumParams
    is_cy: bool
    column_sums: tuple[int, ...]
    common_value: Optional[int]
    serre_twist: DiagAutomorphism
    twist_is_scalar: bool
    twist_vector: Optional[tuple[int, ...]]

    def to_json_dict(self) -> dict:
        out = {
            "is_cy": self.is_cy,
            "column_sums": list(self.column_sums),
            "common_value": self.common_value,
            "serre_scalars": [s.to_json() for s in self.serre_twist.scalars],
            "twist_is_scalar": self.twist_is_scalar,
        }
        if self.twist_vector is not None:
            out["twist_vector"] = list(self.twist_vector)
        return out


def cy_criterion(params: QuantumParams) -> CyReport:
    """Decide the Calabi-Yau property and report the residual diagonal twist."""
    sums = column_sums(params)
    is_cy = len(set(sums)) == 1
    field = CycloField(params.n)
    twist = DiagAutomorphism(params, tuple(field.zeta(-s) for s in sums))
    return CyReport(
        params=params,
        is_cy=is_cy,
        column_sums=sums,
        common_value=sums[0] if is_cy else None,
        serre_twist=twist,
        twist_is_scalar=is_cy,
        twist_vector=is_twist_realizable(params),
    )


# -- twisted exterior dual ------------------------------------------------------


def _blade_product(params: QuantumParams, field: CycloField, s: int, t: int):
    # Product y_S * y_T of basis blades given as bitmasks (bit i = generator i+1).
    # Returns (mask, coeff) or None when the blades share a generator.
    # Each crossing of a in S past b in T with a > b contributes -zeta_n^(e_ba):
    # from q_ba y_b y_a + y_a y_b = 0 we get y_a y_b = -q_ba y_b y_a.
    if s & t:
        return None
    n = params.n
    exps = params.exps
    inv = 0
    ph = 0
    tt = t
    while tt:
        b = (tt & -tt).bit_length() - 1
        tt &= tt - 1
        hi = s >> (b + 1)
        if hi:
            row = exps[b]
            a = b + 1
            while hi:
                if hi & 1:
                    inv += 1
                    ph += row[a]
                hi >>= 1
                a += 1
    # conductor is 2n: -zeta_n^p = zeta_(2n)^(n + 2p)
    coeff = field.zeta((n * inv + 2 * ph) % (2 * n))
    return s | t, coeff


class ExtElement:
    """Element of the twisted exterior dual algebra on y_1..y_n.

    Basis blades are indexed by subsets of {1..n} (bitmasks internally) and
    coefficients live in Q(zeta_2n) so that the signs -zeta_n^e are exact.
    """

    __slots__ = ("params", "field", "_terms")

    def __init__(self, params: QuantumParams, terms: dict | None = None, field=None):
        if field is None:
            field = CycloField(2 * params.n)
        elif field.conductor % (2 * params.n) != 0:
            raise ValueError(
                f"conductor {field.conductor} lacks the 2n-th roots of unity"
            )
        self.params = params
        self.field = field
        clean: dict = {}
        if terms:
            top = 1 << params.n
            for mask, c in terms.items():
                if not 0 <= mask < top:
                    raise ValueError(f"blade mask {mask} out of range")
                if not isinstance(c, Cyclotomic):
                    c = field.from_rational(c)
                if not c.is_zero():
                    prev = clean.get(mask)
                    acc = c if prev is None else prev + c
                    if acc.is_zero():
                        clean.pop(mask, None)
                    else:
                        clean[mask] = acc
        self._terms = clean

    @classmethod
    def zero(cls, params, field=None) -> "ExtElement":
        return cls(params, {}, field)

    @classmethod
    def one(cls, params, field=None) -> "ExtElement":
        e = cls(params, {}, field)
        e._terms = {0: e.field.one()}
        return e

    @classmethod
    def generator(cls, params, j: int, field=None) -> "ExtElement":
        params._check_index(j)
        e = cls(params, {}, field)
        e._terms = {1 << (j - 1): e.field.one()}
        return e

    @classmethod
    def blade(cls, params, indices: Sequence[int], field=None) -> "ExtElement":
        mask = 0
        for j in indices:
            params._check_index(j)
            bit = 1 << (j - 1)
            if mask & bit:
                raise ValueError(f"repeated index {j} in blade")
            mask |= bit
        e = cls(params, {}, field)
        e._terms = {mask: e.field.one()}
        return e

    @property
    def terms(self) -> dict:
        """Blades as sorted index tuples mapped to coefficients."""
        return {_mask_to_subset(m): c for m, c in self._terms.items()}

    def coefficient(self, indices: Sequence[int]) -> Cyclotomic:
        mask = 0
        for j in indices:
            mask |= 1 << (j - 1)
        return self._terms.get(mask, self.field.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "ExtElement"):
        if self.params != other.params or self.field is not other.field:
            raise ValueError("operands from different dual algebras")

    def __add__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        self._check(other)
        merged = dict(self._terms)
        for m, c in other._terms.items():
            prev = merged.get(m)
            merged[m] = c if prev is None else prev + c
        return ExtElement(self.params, merged, self.field)

    def __neg__(self):
        return ExtElement(
            self.params, {m: -c for m, c in self._terms.items()}, self.field
        )

    def __sub__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar) -> "ExtElement":
        if not isinstance(scalar, Cyclotomic):
            scalar = self.field.from_rational(scalar)
        return ExtElement(
            self.params, {m: c * scalar for m, c in self._terms.items()}, self.field
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        if not isinstance(other, ExtElement):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for s, cs in self._terms.items():
            for t, ct in other._terms.items():
                r = _blade_product(self.params, self.field, s, t)
                if r is None:
                    continue
                mask, coeff = r
                val = cs * ct * coeff
                prev = out.get(mask)
                acc = val if prev is None else prev + val
                if acc.is_zero():
                    out.pop(mask, None)
                else:
                    out[mask] = acc
        return ExtElement(self.params, out, self.field)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return (
            self.params == other.params
            and self.field is other.field
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash(
            (self.params, self.field.conductor, frozenset(self._terms.items()))
        )

    def __repr__(self):
        if not self._terms:
            return "<exterior 0>"
        bits = ", ".join(
            f"y{list(_mask_to_subset(m))}: {c.basis_string()}"
            for m, c in sorted(self._terms.items())
        )
        return f"<exterior {bits}>"


def _mask_to_subset(mask: int) -> tuple[int, ...]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def frobenius_bruteforce(params: QuantumParams) -> tuple[Cyclotomic, ...]:
    """Diagonal automorphism scalars of the dual Frobenius pairing, by search.

    For each j the scalar is fixed by pairing y_j against the complementary
    blade; the candidate is then verified on every pair of blades of
    complementary degree (a b = phi(b) a in the top component).  A
    verification failure raises
    FrobeniusPairingError, since the pairing identity is forced by the
    structure; it would indicate an implementation bug, not bad input.
    """
    n = params.n
    field = CycloField(2 * n)
    top = (1 << n) - 1
    scalars = []
    for j in range(n):
        s = 1 << j
        t = top ^ s
        num = _blade_product(params, field, t, s)
        den = _blade_product(params, field, s, t)
        scalars.append(num[1] / den[1])

    by_grade: list[list[int]] = [[] for _ in range(n + 1)]
    for mask in range(1 << n):
        by_grade[bin(mask).count("1")].append(mask)
    blades = {m: ExtElement(params, {m: field.one()}, field) for m in range(1 << n)}
    for k in range(n + 1):
        for u in by_grade[k]:
            bu = blades[u]
            for v in by_grade[n - k]:
                bv = blades[v]
                left = bu * bv
                right = bv * bu
                phi_scalar = field.one()
                vv = v
                while vv:
                    jbit = (vv & -vv).bit_length() - 1
                    vv &= vv - 1
                    phi_scalar = phi_scalar * scalars[jbit]
                if not (left - right.scale(phi_scalar)).is_zero():
                    raise FrobeniusPairingError(
                        f"pairing identity failed on blades {u:#b}, {v:#b}"
                    )
    return tuple(scalars)


def frobenius_closedform(params: QuantumParams) -> tuple[Cyclotomic, ...]:
    """Scalars prod_i(-q_ji) per generator j, straight from the row sums."""
    n = params.n
    field = CycloField(2 * n)
    out = []
    for j in range(n):
        row = sum(params.exps[j]) % n
        # prod_i -zeta_n^(e_ji) = (-1)^n zeta_n^(rowsum) = zeta_2n^(n*n + 2*rowsum)
        out.append(field.zeta((n * n + 2 * row) % (2 * n)))
    return tuple(out)


@dataclass(frozen=True)
class FrobeniusComparison:
    """Brute-force versus closed-form scalars, compared up to one global unit."""

    params: QuantumParams
    bruteforce: tuple[Cyclotomic, ...]
    closedform: tuple[Cyclotomic, ...]
    agree_mod_scalar: bool
    ratio: Optional[Cyclotomic]

    def to_json_dict(self) -> dict:
        return {
            "n": self.params.n,
            "bruteforce": [c.to_json() for c in self.bruteforce],
            "closedform": [c.to_json() for c in self.closedform],
            "agree_mod_scalar": self.agree_mod_scalar,
            "ratio": self.ratio.to_json() if self.ratio is not None else None,
        }


def compare_frobenius(params: QuantumParams) -> FrobeniusComparison:
    """Run both Frobenius routes and compare them modulo a global scalar.

    The two conventions may differ by one overall unit; the comparison
    records that ratio instead of collapsing the routes into each other.
    """
    brute = frobenius_bruteforce(params)
    closed = frobenius_closedform(params)
    ratios = [b / c for b, c in zip(brute, closed)]
    agree = all(r == ratios[0] for r in ratios[1:])
    return FrobeniusComparison(
        params=params,
        bruteforce=brute,
        closedform=closed,
        agree_mod_scalar=agree,
        ratio=ratios[0] if agree else None,
    )


# -- twist recognition and deformation --------------------------------------------


def is_twist_realizable(params: QuantumParams) -> Optional[tuple[int, ...]]:
    """A vector d with e_ij = d_i - d_j mod n, or None when none exists.

    When a solution exists one is pinned down by d_1 = 0; solutions differ by
    a common additive constant.
    """
    n = params.n
    exps = params.exps
    d = tuple(exps[i][0] % n for i in range(n))
    for i in range(n):
        for j in range(n):
            if (d[i] - d[j]) % n != exps[i][j]:
                return None
    return d


def deformation_central(params: QuantumParams, include_product_term: bool = False) -> bool:
    """Centrality of the defining sum of n-th powers, optionally deformed.

    With include_product_term the candidate relation also carries the ordered
    product x_1...x_n, which is central iff every column sum vanishes; the
    check is performed on each summand separately (centrality of a sum of
    distinct PBW monomials with independent multidegrees is equivalent to
    centrality of the parts).
    """
    ok = is_central(fermat_element(params, ALGEBRA_B))
    if include_product_term:
        ok = ok and is_central(product_of_generators(params, ALGEBRA_B))
    return ok


DEHOMOGENIZE_NOTE = (
    "patch exponents use e'_ij = e_ij + e_mi + e_jm, the antisymmetric "
    "normalization of the affine-chart commutation scalars; the naive "
    "symmetric normalization q_ij/(q_mi*q_mj) fails e'_ij + e'_ji = 0 and is "
    "not used"
)


@dataclass(frozen=True)
class PatchParams:
    """Commutation exponents of an affine chart.

    The chart has one generator fewer than the ambient algebra but its
    commutation scalars are still order-th roots of unity, so the exponents
    remain in Z/order; a QuantumParams would wrongly reduce them mod the new
    generator count.
    """

    order: int
    exps: tuple[tuple[int, ...], ...]
    note: str = DEHOMOGENIZE_NOTE

    @property
    def num_generators(self) -> int:
        return len(self.exps)

    def __post_init__(self):
        k = len(self.exps)
        for i in range(k):
            if len(self.exps[i]) != k:
                raise ValueError("patch exponent matrix must be square")
            if self.exps[i][i] % self.order != 0:
                raise ValueError(f"patch diagonal ({i + 1},{i + 1}) must vanish")
            for j in range(i + 1, k):
                if (self.exps[i][j] + self.exps[j][i]) % self.order != 0:
                    raise ValueError(
                        f"patch entries ({i + 1},{j + 1}),({j + 1},{i + 1}) "
                        f"must sum to 0 mod {self.order}"
                    )

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "generators": self.num_generators,
            "exponents": [list(row) for row in self.exps],
            "note": self.note,
        }


def dehomogenize(params: QuantumParams, m: int) -> PatchParams:
    """Commutation exponents of the affine coordinates z_i = x_i x_m^(-1).

    The chart index m is 1-based; generator m is inverted and removed.  On the
    chart, z_i z_j = zeta_n^(e'_ij) z_j z_i with e'_ij = e_ij + e_mi + e_jm,
    obtained by pushing the x_m^(-1) factors to the right.  The surviving
    generators keep their original relative order and the exponents stay mod
    the original n.
    """
    if not 1 <= m <= params.n:
        raise ParamsError(
            f"chart index {m} out of range 1..{params.n}"
        )
    n = params.n
    exps = params.exps
    mm = m - 1
    keep = [i for i in range(n) if i != mm]
    rows = tuple(
        tuple((exps[i][j] + exps[mm][i] + exps[j][mm]) % n for j in keep)
        for i in keep
    )
    return PatchParams(order=n, exps=rows)
