"""Vectorized engines behind the exhaustive enumerations.

Everything here mirrors the scalar arithmetic in :mod:`gf` / :mod:`linalg`
exactly (same canonical element indices, same pivoting rule) but operates on
numpy arrays of element indices or coefficient rows.  The scalar paths stay
authoritative; the test suite cross-checks every kernel against them.

Two table flavours:

* :class:`SmallFieldTables` — full q x q add/mul tables for a base field
  GF(q); practical up to a few thousand elements.  Drives batched encoding
  and batched row reduction of the restricted parity checks.
* :class:`BatchExt` — log/antilog tables for a (possibly multi-million
  element) extension field, with elements carried as coefficient rows so
  addition stays cheap.  Built with a baby-step/giant-step sweep so table
  construction is itself vectorized.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

from .gf import FieldSpec, primitive_element


class SmallFieldTables:
    """Dense add/mul/inv/neg tables over canonical indices for GF(q)."""

    __slots__ = ("field", "q", "ADD", "MUL", "INV", "NEG", "LOG", "EXP")

    def __init__(self, field: FieldSpec):
        q = field.element_count
        p, m = field.p, field.m
        exp, log = field.log_tables(force=True)
        self.field = field
        self.q = q
        self.EXP = np.asarray(exp, dtype=np.int32)
        self.LOG = np.asarray(log, dtype=np.int32)
        la = self.LOG[:, None]
        lb = self.LOG[None, :]
        mul = self.EXP[(la + lb) % (q - 1)]
        mul[(la < 0) | (lb < 0)] = 0
        self.MUL = mul.astype(np.int16)
        digits = np.empty((q, m), dtype=np.int16)
        ix = np.arange(q)
        for t in range(m):
            digits[:, t] = (ix // p ** t) % p
        weights = np.array([p ** t for t in range(m)], dtype=np.int64)
        s = (digits[:, None, :] + digits[None, :, :]) % p
        self.ADD = (s.astype(np.int64) @ weights).astype(np.int16)
        self.NEG = (((p - digits) % p).astype(np.int64) @ weights).astype(np.int16)
        inv = self.EXP[(q - 1 - self.LOG) % (q - 1)]
        inv[0] = 0  # never consulted; inverses of zero are rejected upstream
        self.INV = inv.astype(np.int16)


def batched_rref(t: SmallFieldTables, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form of a (B, r, c) stack of index matrices.

    Same deterministic pivot rule as :func:`linalg.rref`.  Returns the
    reduced stack and the per-item rank.
    """
    A = np.ascontiguousarray(mats, dtype=np.int16).copy()
    B, r, c = A.shape
    row_ptr = np.zeros(B, dtype=np.int64)
    rows_idx = np.arange(r)
    for col in range(c):
        eligible = (rows_idx[None, :] >= row_ptr[:, None]) & (A[:, :, col] != 0)
        has = eligible.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        sel = np.argmax(eligible[b], axis=1)
        pr = row_ptr[b]
        tmp = A[b, sel, :].copy()
        A[b, sel, :] = A[b, pr, :]
        A[b, pr, :] = tmp
        inv = t.INV[A[b, pr, col]]
        A[b, pr, :] = t.MUL[A[b, pr, :], inv[:, None]]
        factors = A[b, :, col].copy()
        factors[np.arange(len(b)), pr] = 0
        prod = t.MUL[factors[:, :, None], A[b, pr, :][:, None, :]]
        A[b] = t.ADD[A[b], t.NEG[prod]]
        row_ptr[b] += 1
        if (row_ptr == r).all():
            break
    return A, row_ptr


def batched_nullvec(t: SmallFieldTables, R: np.ndarray,
                    ranks: np.ndarray) -> np.ndarray:
    """One nullspace vector per item for items of nullity exactly one.

    R must be the batched rref of (B, r, c) matrices with rank c - 1; the
    vector is the canonical one (free coordinate set to 1).  Items of other
    ranks get an all-zero row.
    """
    B, r, c = R.shape
    out = np.zeros((B, c), dtype=np.int16)
    ok = ranks == c - 1
    if not ok.any():
        return out
    pc = np.argmax(R != 0, axis=2)  # (B, r): first nonzero column per row
    col_total = c * (c - 1) // 2
    piv_sum = np.zeros(B, dtype=np.int64)
    for i in range(min(r, c - 1)):
        active = i < ranks
        piv_sum[active] += pc[active, i]
    free = col_total - piv_sum
    bsel = np.nonzero(ok)[0]
    out[bsel, free[bsel]] = 1
    for i in range(min(r, c - 1)):
        active = bsel[i < ranks[bsel]]
        vals = R[active, i, free[active]]
        out[active, pc[active, i]] = t.NEG[vals]
    return out


def batched_weight_hist(t: SmallFieldTables, G_idx: np.ndarray,
                        start: int, count: int,
                        chunk: int = 1 << 18) -> np.ndarray:
    """Hamming-weight histogram of messages start .. start+count-1.

    Message number M encodes the vector whose r-th symbol (r = 0 is the most
    significant) has canonical index (M // q^(k-1-r)) mod q; this odometer
    order is the enumeration contract for direct weight distributions.
    """
    k, n = G_idx.shape
    q = t.q
    hist = np.zeros(n + 1, dtype=np.int64)
    place = [q ** (k - 1 - r) for r in range(k)]  # Python ints: q^k may exceed int64
    for lo in range(start, start + count, chunk):
        cnt = min(chunk, start + count - lo)
        idxs = np.arange(lo, lo + cnt, dtype=np.int64)
        top = lo + cnt - 1
        live = [r for r in range(k) if place[r] <= top]  # higher digits are all 0
        digits = {r: ((idxs // place[r]) % q).astype(np.int32) for r in live}
        wt = np.zeros(cnt, dtype=np.int16)
        for j in range(n):
            acc = np.zeros(cnt, dtype=np.int16)
            for r in live:
                gi = int(G_idx[r, j])
                if gi == 0:
                    continue
                acc = t.ADD[acc, t.MUL[:, gi][digits[r]]]
            wt += (acc != 0)
        hist += np.bincount(wt, minlength=n + 1)
    return hist


class BatchExt:
    """Log/antilog tables for GF(p^d) with coefficient-row element arrays.

    ``expc[k]`` holds the coefficient row of gamma^k (gamma the canonical
    primitive element); ``logt[i]`` maps a canonical element index back to k
    (-1 for the zero element).  Packing a coefficient row base-p reproduces
    the canonical index, so scalar and batch representations interconvert
    for free.
    """

    __slots__ = ("field", "p", "d", "order", "expc", "logt", "pow_p", "_red")

    def __init__(self, field: FieldSpec):
        p, d = field.p, field.m
        n_elems = field.element_count
        order = n_elems - 1
        self.field = field
        self.p = p
        self.d = d
        self.order = order
        self.pow_p = np.array([p ** t for t in range(d)], dtype=np.int64)
        # rows of x^(d+t) mod modulus, t = 0 .. d-2, for coefficient products
        red = np.zeros((d - 1, d), dtype=np.int16) if d > 1 else np.zeros((0, d), np.int16)
        for t_row in range(d - 1):
            red[t_row, :] = field._red[t_row]
        self._red = red

        gamma = primitive_element(field)
        s = isqrt(order) + 1
        baby = np.zeros((s, d), dtype=np.int16)
        cur = field.one()
        for i in range(s):
            baby[i, :] = cur.coeffs
            cur = cur * gamma
        giant = gamma ** s
        expc = np.zeros((order, d), dtype=np.int8)
        gj = field.one()
        for j in range((order + s - 1) // s):
            block = self._mul_rows_scalar(baby, np.array(gj.coeffs, dtype=np.int16))
            lo = j * s
            hi = min(order, lo + s)
            expc[lo:hi] = block[:hi - lo]
            gj = gj * giant
        self.expc = expc
        packed = expc.astype(np.int64) @ self.pow_p
        logt = np.full(n_elems, -1, dtype=np.int64)
        logt[packed] = np.arange(order, dtype=np.int64)
        if int((logt < 0).sum()) != 1:
            raise AssertionError("antilog table is not a bijection")
        self.logt = logt

    def _mul_rows_scalar(self, rows: np.ndarray, b: np.ndarray) -> np.ndarray:
        """(N, d) coefficient rows times one fixed element b."""
        n, d = rows.shape
        conv = np.zeros((n, 2 * d - 1), dtype=np.int16)
        for j in range(d):
            bj = int(b[j])
            if bj:
                conv[:, j:j + d] += rows * bj
        conv %= self.p
        low = conv[:, :d].astype(np.int16)
        if d > 1:
            low = low + conv[:, d:] @ self._red
        return (low % self.p).astype(np.int8)

    # -- elementwise operations on (..., d) coefficient arrays ----------------
    def pack(self, a: np.ndarray) -> np.ndarray:
        return a.astype(np.int64) @ self.pow_p

    def log_of(self, a: np.ndarray) -> np.ndarray:
        """Discrete log per row; -1 marks zero elements."""
        return self.logt[self.pack(a)]

    def from_log(self, l: np.ndarray) -> np.ndarray:
        return self.expc[np.asarray(l, dtype=np.int64) % self.order]

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a.astype(np.int16) + b) % self.p

    def neg(self, a: np.ndarray) -> np.ndarray:
        return ((self.p - a.astype(np.int16)) % self.p).astype(a.dtype)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        la = self.log_of(a)
        lb = self.log_of(b)
        out = self.from_log((la + lb) % self.order)
        zero = (la < 0) | (lb < 0)
        if zero.any():
            out = out.copy()
            out[zero] = 0
        return out

    def inv(self, a: np.ndarray) -> np.ndarray:
        la = self.log_of(a)
        if (la < 0).any():
            raise ZeroDivisionError("batched inverse of zero")
        return self.from_log((self.order - la) % self.order)

    def is_zero(self, a: np.ndarray) -> np.ndarray:
        return ~a.any(axis=-1)

    def const(self, value: int, shape: tuple[int, ...]) -> np.ndarray:
        row = np.array(self.field.from_int(value).coeffs, dtype=np.int8)
        return np.broadcast_to(row, shape + (self.d,))
