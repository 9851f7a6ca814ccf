"""Weight distributions, duality transform, classification, monic census.

All counts are exact Python integers (the larger codes here have weight
counts around 10^34).  Two independent pipelines produce the headline
numbers: enumeration of the small side of a code/dual pair followed by the
duality transform, and a support-subset census that never looks at the
transform.  Their agreement is part of the acceptance suite.

The duality transform is implemented by solving, row by row, the triangular
linear system that the binomial-moment identity

    (1/q^k) sum_{i<=n-r} C(n-i, r) A_i = (1/q^r) sum_{i<=r} C(n-i, n-r) B_i

induces for the dual counts B_r, r = 0..n; after solving, the identity is
re-asserted for every r and non-integer or negative solutions are rejected.
A "monic" codeword is one whose first nonzero coordinate (ascending
position) equals 1.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import kernels, linalg
from .codes import CyclicCode, dual_code, generator_matrix, parity_check_matrix
from .errors import (InconsistentDistributionError, InternalCheckError,
                     ResourceLimitError)

DEFAULT_WORD_BUDGET = 2 ** 24
DEFAULT_SUBSET_BUDGET = 10 ** 7


@dataclass(frozen=True)
class WeightDistribution:
    """Exact counts (A_0, ..., A_n) of codewords by Hamming weight."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise ValueError("need n + 1 counts")
        if any(c < 0 for c in self.counts):
            raise ValueError("negative weight count")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def min_positive_weight(self) -> int | None:
        for i in range(1, self.n + 1):
            if self.counts[i]:
                return i
        return None

    def nonzero_weights(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if self.counts[i]]


@dataclass(frozen=True)
class Classification:
    label: str  # MDS | AMDS | NMDS | OTHER
    params: tuple[int, int, int]
    dual_d: int


@dataclass(frozen=True)
class MonicCensus:
    """Counts from the support-subset sweep of an [n, k, n-k] code.

    e1/e2 count distinct monic codewords of weight n-k / n-k+1; f1/f2 count
    the (n-k+1)-subsets supporting a weight-(n-k) codeword / realizing a
    weight-(n-k+1) codeword.  ``overlap`` is the number of subsets landing
    in both families (zero exactly when the restricted subcodes are lines).
    """

    e1: int
    e2: int
    f1: int
    f2: int
    subsets_checked: int
    dim_one: int
    dim_two: int
    overlap: int


# ---------------------------------------------------------------------------
# weight distribution by exact enumeration

_WSTATE: dict = {}


def _weights_init(p: int, m: int, G_idx: np.ndarray):
    from .gf import field_build
    field = field_build(p, m)
    _WSTATE["tables"] = kernels.SmallFieldTables(field)
    _WSTATE["G"] = G_idx


def _weights_chunk(args) -> np.ndarray:
    start, count = args
    return kernels.batched_weight_hist(_WSTATE["tables"], _WSTATE["G"], start, count)


def _direct_hist(c: CyclicCode, jobs: int) -> list[int]:
    G = generator_matrix(c)
    G_idx = np.array([[G.entry(i, j).index for j in range(c.n)]
                      for i in range(c.k)], dtype=np.int16)
    total = c.q ** c.k
    if jobs <= 1:
        _weights_init(c.field.p, c.field.m, G_idx)
        hist = _weights_chunk((0, total))
    else:
        step = max(1 << 16, (total + 4 * jobs - 1) // (4 * jobs))
        ranges = [(lo, min(step, total - lo)) for lo in range(0, total, step)]
        hist = np.zeros(c.n + 1, dtype=np.int64)
        with ProcessPoolExecutor(max_workers=jobs, initializer=_weights_init,
                                 initargs=(c.field.p, c.field.m, G_idx)) as ex:
            for part in ex.map(_weights_chunk, ranges):
                hist += part
    return [int(x) for x in hist]


def weight_distribution(c: CyclicCode, strategy: str = "auto",
                        budget: int = DEFAULT_WORD_BUDGET,
                        jobs: int = 1) -> WeightDistribution:
    """Exact weight distribution of c.

    direct    enumerate all q^k messages and tally codeword weights;
    via_dual  enumerate the dual's q^(n-k) codewords and transform back;
    auto      whichever side is smaller.
    """
    n, k, q = c.n, c.k, c.q
    if k == 0:
        return WeightDistribution(n, (1,) + (0,) * n)
    direct_size = q ** k
    dual_size = q ** (n - k)
    if strategy == "auto":
        strategy = "direct" if direct_size <= dual_size else "via_dual"
        size = min(direct_size, dual_size)
        if size > budget:
            raise ResourceLimitError(
                f"enumeration needs {direct_size} (direct) or {dual_size} "
                f"(via dual) words; budget is {budget}")
    if strategy == "direct":
        if direct_size > budget:
            raise ResourceLimitError(
                f"direct enumeration needs {direct_size} words; budget {budget}")
        counts = _direct_hist(c, jobs)
        wd = WeightDistribution(n, tuple(counts))
        _check_distribution(wd, q, k)
        return wd
    if strategy == "via_dual":
        if dual_size > budget:
            raise ResourceLimitError(
                f"dual enumeration needs {dual_size} words; budget {budget}")
        dual_wd = weight_distribution(dual_code(c), "direct", budget, jobs)
        return macwilliams_transform(dual_wd, n, n - k, q)
    raise ValueError(f"unknown strategy {strategy!r}")


def _check_distribution(wd: WeightDistribution, q: int, k: int) -> None:
    if wd.counts[0] != 1:
        raise InternalCheckError("A_0 != 1")
    if wd.total != q ** k:
        raise InternalCheckError("weight counts do not sum to q^k")


# ---------------------------------------------------------------------------
# duality transform

def macwilliams_transform(wd: WeightDistribution, n: int, k: int,
                          q: int) -> WeightDistribution:
    """Distribution of the dual of a code with the given distribution.

    Solves the binomial-moment system triangularly for the dual counts,
    rejecting any non-integral or negative solution, then re-asserts the
    identity at every r = 0..n.
    """
    if wd.n != n:
        raise ValueError("length mismatch")
    if wd.total != q ** k:
        raise InconsistentDistributionError(
            f"counts sum to {wd.total}, expected q^k = {q ** k}")
    A = wd.counts
    qk = q ** k
    B: list[int] = []
    for r in range(n + 1):
        lhs = sum(comb(n - i, r) * A[i] for i in range(n - r + 1))
        val = Fraction(lhs * q ** r, qk) - sum(
            comb(n - i, n - r) * B[i] for i in range(r))
        if val.denominator != 1 or val < 0:
            raise InconsistentDistributionError(
                f"dual count B_{r} = {val} is not a nonnegative integer")
        B.append(int(val))
    out = WeightDistribution(n, tuple(B))
    for r in range(n + 1):
        lhs = q ** r * sum(comb(n - i, r) * A[i] for i in range(n - r + 1))
        rhs = qk * sum(comb(n - i, n - r) * B[i] for i in range(r + 1))
        if lhs != rhs:
            raise InternalCheckError(f"binomial-moment identity fails at r={r}")
    return out


# ---------------------------------------------------------------------------
# distance and classification

def min_distance(c: CyclicCode, budget: int = DEFAULT_WORD_BUDGET,
                 jobs: int = 1) -> int:
    """Smallest positive weight; caches the result on the code."""
    if c.d is not None:
        return c.d
    wd = weight_distribution(c, "auto", budget, jobs)
    d = wd.min_positive_weight()
    if d is None:
        raise ValueError("zero-dimensional code has no minimum distance")
    c.d = d
    return d


def classify(c: CyclicCode, budget: int = DEFAULT_WORD_BUDGET, jobs: int = 1,
             wd: WeightDistribution | None = None) -> Classification:
    """MDS / AMDS / NMDS / OTHER, with the Singleton bound asserted."""
    n, k, q = c.n, c.k, c.q
    if wd is None:
        wd = weight_distribution(c, "auto", budget, jobs)
    d = wd.min_positive_weight()
    if d is None:
        raise ValueError("cannot classify a zero-dimensional code")
    c.d = d
    if d > n - k + 1:
        raise InternalCheckError("Singleton bound violated; arithmetic bug")
    dual_wd = macwilliams_transform(wd, n, k, q)
    dual_d = dual_wd.min_positive_weight()
    if dual_d is None:
        dual_d = n + 1  # zero dual code: empty minimum, usual convention
    if d == n - k + 1:
        label = "MDS"
        if dual_d != k + 1:
            raise InternalCheckError("dual of an MDS code is not MDS")
    elif d == n - k:
        label = "NMDS" if dual_d == k else "AMDS"
    else:
        label = "OTHER"
    return Classification(label, (n, k, d), dual_d)


def nmds_identity_check(c: CyclicCode, wd: WeightDistribution | None = None,
                        budget: int = DEFAULT_WORD_BUDGET,
                        jobs: int = 1) -> bool:
    """Whether k*A_{n-k} + A_{n-k+1} equals (q-1) * C(n, n-k+1) exactly."""
    n, k, q = c.n, c.k, c.q
    if wd is None:
        wd = weight_distribution(c, "auto", budget, jobs)
    d = wd.min_positive_weight()
    if d != n - k:
        raise ValueError("identity check requires an AMDS code (d = n - k)")
    lhs = k * wd.counts[n - k] + wd.counts[n - k + 1]
    return lhs == (q - 1) * comb(n, n - k + 1)


# ---------------------------------------------------------------------------
# monic census over all (n-k+1)-subsets

_CSTATE: dict = {}


def _census_init(p: int, m: int, H_idx: np.ndarray, n: int, k: int):
    from .gf import field_build
    field = field_build(p, m)
    _CSTATE["tables"] = kernels.SmallFieldTables(field)
    _CSTATE["H"] = H_idx
    _CSTATE["n"] = n
    _CSTATE["k"] = k


def _support_key_rows(positions: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Canonical (pos0, val0, pos1, val1, ...) rows identifying each word.

    Zero-valued pairs are pushed to the end and normalized to (0, 0); since
    a live pair always has a nonzero value, rows are collision-free and
    words can be deduplicated with np.unique(axis=0).
    """
    order = np.argsort(values == 0, axis=1, kind="stable")
    pos_s = np.take_along_axis(positions, order, axis=1)
    val_s = np.take_along_axis(values, order, axis=1)
    pos_s = np.where(val_s != 0, pos_s, 0)
    out = np.empty((len(pos_s), 2 * pos_s.shape[1]), dtype=np.int16)
    out[:, 0::2] = pos_s
    out[:, 1::2] = val_s
    return out


def _census_chunk(subs: np.ndarray):
    t = _CSTATE["tables"]
    H = _CSTATE["H"]
    n, k = _CSTATE["n"], _CSTATE["k"]
    r = n - k
    mats = np.ascontiguousarray(H[:, subs].transpose(1, 0, 2))
    R, ranks = kernels.batched_rref(t, mats)
    dims = (r + 1) - ranks
    if ((dims < 1) | (dims > 2)).any():
        raise InternalCheckError("restricted subcode dimension outside {1, 2}")
    dim1 = dims == 1
    vals = kernels.batched_nullvec(t, R, ranks)
    w = (vals != 0).sum(axis=1)
    if ((w[dim1] != r) & (w[dim1] != r + 1)).any():
        raise InternalCheckError("restricted codeword weight outside {n-k, n-k+1}")
    lead = np.argmax(vals != 0, axis=1)
    leadval = vals[np.arange(len(vals)), lead]
    scale = t.INV[leadval]
    vals = t.MUL[vals, scale[:, None]]
    keys = _support_key_rows(subs.astype(np.int16), vals)
    k4 = keys[dim1 & (w == r)]
    k5 = keys[dim1 & (w == r + 1)]
    f1 = int((dim1 & (w == r)).sum())
    f2 = int((dim1 & (w == r + 1)).sum())
    dim2_rows = np.nonzero(~dim1)[0]
    return f1, f2, k4, k5, int(dim1.sum()), dim2_rows, subs[dim2_rows]


def _census_dim2_scalar(c: CyclicCode, subset: np.ndarray):
    """Monic members of a 2-dimensional restricted subcode (rare path)."""
    H = parity_check_matrix(c)
    sub = H.column_select([int(x) for x in subset])
    basis = linalg.nullspace(sub)
    field = c.field
    q = c.q
    width = len(subset)
    keys4, keys5 = [], []
    weights_seen = set()
    for ia in range(q):
        for ib in range(q):
            if ia == 0 and ib == 0:
                continue
            a = field.from_index(ia)
            b = field.from_index(ib)
            vec = [a * x + b * y for x, y in zip(basis[0], basis[1])]
            nz = [i for i, v in enumerate(vec) if not v.is_zero()]
            if not nz or vec[nz[0]] != field.one():
                continue
            w = len(nz)
            weights_seen.add(w)
            row = []
            for i in nz:
                row += [int(subset[i]), vec[i].index]
            row += [0, 0] * (width - w)
            (keys4 if w == c.n - c.k else keys5).append(row)
    return keys4, keys5, weights_seen


def monic_census(c: CyclicCode, budget: int = DEFAULT_SUBSET_BUDGET,
                 jobs: int = 1, chunk: int = 1 << 14) -> MonicCensus:
    """Census of all (n-k+1)-subsets of coordinates of an AMDS code.

    For every subset I the restricted subcode (codewords supported inside I)
    is computed as the nullspace of the column-restricted parity check; its
    monic codewords are tallied by weight.  e1/e2 deduplicate codewords
    across subsets, f1/f2 count subsets.
    """
    n, k = c.n, c.k
    if min_distance(c) != n - k:
        raise ValueError("census requires an AMDS code (d = n - k)")
    r = n - k + 1
    total = comb(n, r)
    if total > budget:
        raise ResourceLimitError(
            f"census needs {total} subsets; budget is {budget}")
    H = parity_check_matrix(c)
    H_idx = np.array([[H.entry(i, j).index for j in range(n)]
                      for i in range(n - k)], dtype=np.int16)

    def chunks():
        it = itertools.combinations(range(n), r)
        while True:
            block = list(itertools.islice(it, chunk))
            if not block:
                return
            yield np.array(block, dtype=np.int16)

    f1 = f2 = dim_one = 0
    all_k4, all_k5 = [], []
    dim2_subsets = []
    if jobs <= 1:
        _census_init(c.field.p, c.field.m, H_idx, n, k)
        results = map(_census_chunk, chunks())
        for res in results:
            cf1, cf2, k4, k5, d1, _, d2subs = res
            f1 += cf1
            f2 += cf2
            all_k4.append(k4)
            all_k5.append(k5)
            dim_one += d1
            dim2_subsets.extend(list(d2subs))
    else:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_census_init,
                                 initargs=(c.field.p, c.field.m, H_idx, n, k)) as ex:
            for res in ex.map(_census_chunk, chunks()):
                cf1, cf2, k4, k5, d1, _, d2subs = res
                f1 += cf1
                f2 += cf2
                all_k4.append(k4)
                all_k5.append(k5)
                dim_one += d1
                dim2_subsets.extend(list(d2subs))

    width = 2 * r
    overlap = 0
    for subset in dim2_subsets:
        keys4, keys5, weights_seen = _census_dim2_scalar(c, subset)
        if keys4:
            all_k4.append(np.array(keys4, dtype=np.int16))
        if keys5:
            all_k5.append(np.array(keys5, dtype=np.int16))
        in_f1 = (n - k) in weights_seen
        in_f2 = (n - k + 1) in weights_seen
        f1 += in_f1
        f2 += in_f2
        overlap += in_f1 and in_f2

    k4 = np.concatenate(all_k4) if all_k4 else np.zeros((0, width), dtype=np.int16)
    k5 = np.concatenate(all_k5) if all_k5 else np.zeros((0, width), dtype=np.int16)
    e1 = len(np.unique(k4, axis=0)) if len(k4) else 0
    e2 = len(np.unique(k5, axis=0)) if len(k5) else 0
    return MonicCensus(e1=e1, e2=e2,
                       f1=f1, f2=f2, subsets_checked=total,
                       dim_one=dim_one, dim_two=len(dim2_subsets),
                       overlap=overlap)
