"""Exhaustive enumeration of antisymmetric exponent matrices mod n.

The strict upper triangle, read row-major, is treated as a base-n counter;
that fixes a canonical index for every matrix and makes witness extraction
reproducible.  The scanner vectorizes the two filters (column sums for the
CY test, triangle exponents for genericity) over blocks of indices with
numpy; blocks partition the counter range, so parallel workers own disjoint
sub-ranges and the merge is plain tally addition plus keeping the smallest
witness indices.  A second, independently coded scalar pass over the same
space serves as the self-oracle for the counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from multiprocessing import Pool
from typing import Iterator, Optional, Sequence

import numpy as np

from .qalgebra import QuantumParams

__all__ = [
    "CapacityError",
    "CensusReport",
    "CENSUS_MAX_N",
    "CENSUS_MIN_N",
    "census_scalar_counts",
    "enumerate_params",
    "find_witness",
    "index_to_params",
    "params_to_index",
    "run_census",
    "total_count",
]

CENSUS_MIN_N = 3
CENSUS_MAX_N = 6

_COUNTEREXAMPLE_CAP = 10


class CapacityError(RuntimeError):
    """The requested search space exceeds the supported size."""


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < CENSUS_MIN_N:
        raise ValueError(f"census needs an integer n >= {CENSUS_MIN_N}, got {n!r}")
    if n > CENSUS_MAX_N:
        raise CapacityError(
            f"n={n} gives {n}^{n * (n - 1) // 2} matrices, beyond the "
            f"supported bound n <= {CENSUS_MAX_N}"
        )


def total_count(n: int) -> int:
    """n^(n(n-1)/2), the number of antisymmetric matrices mod n."""
    _check_n(n)
    return n ** (n * (n - 1) // 2)


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple[tuple[int, int], ...]:
    # Strict upper-triangle positions (0-based), row-major; digit t of the
    # counter is e_(i+1)(j+1) for pair (i, j).
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def _triples(n: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(
        (a, b, c)
        for a in range(n)
        for b in range(a + 1, n)
        for c in range(b + 1, n)
    )


def _digits_to_exps(n: int, digits: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    mat = [[0] * n for _ in range(n)]
    for (i, j), d in zip(_pairs(n), digits):
        mat[i][j] = d
        mat[j][i] = (-d) % n
    return tuple(tuple(row) for row in mat)


def index_to_params(n: int, index: int) -> QuantumParams:
    """The matrix at a canonical counter position."""
    total = total_count(n)
    if not 0 <= index < total:
        raise ValueError(f"index {index} out of range 0..{total - 1}")
    t = n * (n - 1) // 2
    digits = [0] * t
    x = index
    for k in range(t - 1, -1, -1):
        x, digits[k] = divmod(x, n)
    return QuantumParams(n, _digits_to_exps(n, digits))


def params_to_index(params: QuantumParams) -> int:
    """Inverse of index_to_params on the canonical enumeration."""
    n = params.n
    idx = 0
    for i, j in _pairs(n):
        idx = idx * n + params.exps[i][j]
    return idx


def enumerate_params(n: int) -> Iterator[QuantumParams]:
    """Every antisymmetric matrix mod n exactly once, in canonical order."""
    _check_n(n)
    t = n * (n - 1) // 2
    for digits in itertools.product(range(n), repeat=t):
        yield QuantumParams(n, _digits_to_exps(n, digits))


# -- vectorized block scanner ---------------------------------------------------


@lru_cache(maxsize=None)
def _colsum_matrix(n: int) -> np.ndarray:
    # Column sums from upper-triangle digits: s_j = sum_(i<j) e_ij - sum_(k>j) e_jk.
    t = n * (n - 1) // 2
    m = np.zeros((t, n), dtype=np.int64)
    for idx, (i, j) in enumerate(_pairs(n)):
        m[idx, j] += 1
        m[idx, i] -= 1
    return m


@lru_cache(maxsize=None)
def _triangle_matrix(n: int) -> np.ndarray:
    # Triangle exponents from digits: t(a,b,c) = e_ab + e_bc - e_ac.
    pairs = {p: k for k, p in enumerate(_pairs(n))}
    trs = _triples(n)
    t = n * (n - 1) // 2
    m = np.zeros((t, len(trs)), dtype=np.int64)
    for col, (a, b, c) in enumerate(trs):
        m[pairs[(a, b)], col] += 1
        m[pairs[(b, c)], col] += 1
        m[pairs[(a, c)], col] -= 1
    return m


def _decode_block(n: int, start: int, stop: int) -> np.ndarray:
    t = n * (n - 1) // 2
    x = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((stop - start, t), dtype=np.int64)
    for k in range(t - 1, -1, -1):
        digits[:, k] = x % n
        x //= n
    return digits


def _scan_block(args) -> dict:
    n, start, stop, witness_limit = args
    digits = _decode_block(n, start, stop)
    sums = (digits @ _colsum_matrix(n)) % n
    tris = (digits @ _triangle_matrix(n)) % n
    cy = (sums == sums[:, :1]).all(axis=1)
    generic = (tris != 0).all(axis=1)
    full = (tris == 0).all(axis=1)
    zerosum = (sums == 0).all(axis=1)

    both = cy & generic
    implication_bad = both & ~zerosum
    dichotomy_bad = cy & ~full & ~generic if n == 4 else np.zeros(0, dtype=bool)

    def first_indices(mask, cap):
        hits = np.flatnonzero(mask)[:cap]
        return [start + int(h) for h in hits]

    return {
        "scanned": stop - start,
        "cy": int(cy.sum()),
        "generic": int(generic.sum()),
        "both": int(both.sum()),
        "full": int(full.sum()),
        "generic_zero_sums": int((generic & zerosum).sum()),
        "implication_bad": int(implication_bad.sum()),
        "implication_bad_indices": first_indices(implication_bad, _COUNTEREXAMPLE_CAP),
        "dichotomy_bad": int(dichotomy_bad.sum()) if n == 4 else 0,
        "dichotomy_bad_indices": (
            first_indices(dichotomy_bad, _COUNTEREXAMPLE_CAP) if n == 4 else []
        ),
        "witness_indices": first_indices(both, witness_limit),
    }


def _blocks(total: int, block_size: int) -> list[tuple[int, int]]:
    return [(s, min(s + block_size, total)) for s in range(0, total, block_size)]


@dataclass(frozen=True)
class CensusReport:
    """Tallies and claim checks over the full enumeration for one n."""

    n: int
    total: int
    count_cy: int
    count_generic: int
    count_generic_and_cy: int
    all_generic_cy_have_zero_column_sums: bool
    implication_counterexamples: tuple[int, ...]
    n4_dichotomy_holds: Optional[bool]
    dichotomy_counterexamples: tuple[int, ...]
    alternative_readings: Optional[dict]
    witnesses: tuple[QuantumParams, ...]
    workers: int

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "count_cy": self.count_cy,
            "count_generic": self.count_generic,
            "count_generic_and_cy": self.count_generic_and_cy,
            "all_generic_cy_have_zero_column_sums": self.all_generic_cy_have_zero_column_sums,
            "implication_counterexamples": list(self.implication_counterexamples),
            "n4_dichotomy_holds": self.n4_dichotomy_holds,
            "dichotomy_counterexamples": list(self.dichotomy_counterexamples),
            "alternative_readings": self.alternative_readings,
            "witnesses": [w.to_json() for w in self.witnesses],
        }

    def csv_counts(self) -> list[tuple[str, int]]:
        return [
            ("total", self.total),
            ("cy", self.count_cy),
            ("generic", self.count_generic),
            ("generic_and_cy", self.count_generic_and_cy),
        ]


EXPECTED_GENERIC_CY_N5 = 3000


def run_census(
    n: int,
    workers: int = 1,
    witness_limit: int = 3,
    block_size: int = 1 << 19,
) -> CensusReport:
    """Scan the whole space, check the claims, and collect witnesses.

    Counts do not depend on worker count or block size: blocks partition the
    canonical counter range in order, per-block tallies are summed, and
    witness/counterexample indices are merged smallest-first.
    """
    _check_n(n)
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if witness_limit < 0:
        raise ValueError(f"witness_limit must be >= 0, got {witness_limit}")
    if block_size < 1:
        raise ValueError(f"block_size must be >= 1, got {block_size}")
    total = total_count(n)
    tasks = [(n, s, e, witness_limit) for s, e in _blocks(total, block_size)]
    if workers == 1 or len(tasks) == 1:
        results = [_scan_block(t) for t in tasks]
    else:
        with Pool(processes=workers) as pool:
            results = pool.map(_scan_block, tasks)

    scanned = sum(r["scanned"] for r in results)
    if scanned != total:
        raise RuntimeError(f"scanned {scanned} of {total} matrices")  # partition bug
    count_cy = sum(r["cy"] for r in results)
    count_generic = sum(r["generic"] for r in results)
    both = sum(r["both"] for r in results)
    generic_zero = sum(r["generic_zero_sums"] for r in results)
    implication_bad = sum(r["implication_bad"] for r in results)
    implication_idx = [
        i for r in results for i in r["implication_bad_indices"]
    ][:_COUNTEREXAMPLE_CAP]
    dichotomy_bad = sum(r["dichotomy_bad"] for r in results)
    dichotomy_idx = [
        i for r in results for i in r["dichotomy_bad_indices"]
    ][:_COUNTEREXAMPLE_CAP]
    witness_idx = [i for r in results for i in r["witness_indices"]][:witness_limit]

    alternative = None
    if n == 5 and both != EXPECTED_GENERIC_CY_N5:
        alternative = {
            "generic_only": count_generic,
            "generic_and_zero_column_sums": generic_zero,
        }
    return CensusReport(
        n=n,
        total=total,
        count_cy=count_cy,
        count_generic=count_generic,
        count_generic_and_cy=both,
        all_generic_cy_have_zero_column_sums=implication_bad == 0,
        implication_counterexamples=tuple(implication_idx),
        n4_dichotomy_holds=(dichotomy_bad == 0) if n == 4 else None,
        dichotomy_counterexamples=tuple(dichotomy_idx),
        alternative_readings=alternative,
        witnesses=tuple(index_to_params(n, i) for i in witness_idx),
        workers=workers,
    )


# -- independent scalar pass (self-oracle) ---------------------------------------


def census_scalar_counts(n: int) -> dict:
    """Reference tallies by direct per-matrix loops.

    Deliberately shares no code with the vectorized scanner: digits come from
    itertools, column sums and triangles are summed term by term.  Quadratic
    in n per matrix and unparallelized; n=5 takes tens of seconds.
    """
    _check_n(n)
    pairs = list(_pairs(n))
    pos = {p: k for k, p in enumerate(pairs)}
    plus = [[] for _ in range(n)]
    minus = [[] for _ in range(n)]
    for k, (i, j) in enumerate(pairs):
        plus[j].append(k)
        minus[i].append(k)
    tri = [
        (pos[(a, b)], pos[(b, c)], pos[(a, c)])
        for a, b, c in _triples(n)
    ]
    total = cy_count = generic_count = both_count = 0
    for u in itertools.product(range(n), repeat=len(pairs)):
        total += 1
        generic = True
        for ta, tb, tc in tri:
            if (u[ta] + u[tb] - u[tc]) % n == 0:
                generic = False
                break
        s0 = (sum(u[k] for k in plus[0]) - sum(u[k] for k in minus[0])) % n
        is_cy = True
        for j in range(1, n):
            sj = (sum(u[k] for k in plus[j]) - sum(u[k] for k in minus[j])) % n
            if sj != s0:
                is_cy = False
                break
        if is_cy:
            cy_count += 1
        if generic:
            generic_count += 1
            if is_cy:
                both_count += 1
    return {
        "total": total,
        "count_cy": cy_count,
        "count_generic": generic_count,
        "count_generic_and_cy": both_count,
    }


# -- witness search ----------------------------------------------------------------

_PREDICATE_ALIASES = {
    "cy": "cy",
    "is_cy": "cy",
    "generic": "generic",
    "is_generic": "generic",
    "full": "full",
    "is_full": "full",
    "full-face": "full",
    "twist-realizable": "full",
    "twist_realizable": "full",
}


def find_witness(n: int, predicates: Sequence[str]) -> Optional[QuantumParams]:
    """First matrix in canonical order satisfying every named predicate.

    Known predicates: cy, generic, full (alias twist-realizable; the cocycle
    condition and the full face complex coincide).  Returns None when the
    space contains no match.
    """
    _check_n(n)
    wanted = set()
    for p in predicates:
        key = _PREDICATE_ALIASES.get(str(p).strip().lower())
        if key is None:
            raise ValueError(
                f"unknown predicate {p!r}; choose from cy, generic, full, twist-realizable"
            )
        wanted.add(key)
    if not wanted:
        raise ValueError("at least one predicate required")
    total = total_count(n)
    for start, stop in _blocks(total, 1 << 19):
        digits = _decode_block(n, start, stop)
        mask = np.ones(stop - start, dtype=bool)
        if "cy" in wanted:
            sums = (digits @ _colsum_matrix(n)) % n
            mask &= (sums == sums[:, :1]).all(axis=1)
        if "generic" in wanted or "full" in wanted:
            tris = (digits @ _triangle_matrix(n)) % n
            if "generic" in wanted:
                mask &= (tris != 0).all(axis=1)
            if "full" in wanted:
                mask &= (tris == 0).all(axis=1)
        hits = np.flatnonzero(mask)
        if hits.size:
            return index_to_params(n, start + int(hits[0]))
    return None
