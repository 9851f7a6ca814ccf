"""Cyclic and BCH codes over GF(q): construction, matrices, duals.

A cyclic code of length n over GF(q) (gcd(n, q) = 1 throughout) is stored by
its monic generator polynomial g dividing x^n - 1, with dimension
k = n - deg g.  Codewords are length-n coefficient vectors; coordinate j
holds the coefficient of x^j.

The BCH family built here is the n = q + 1 one: the generator is the least
common multiple of the minimal polynomials of beta^h, ..., beta^(h+delta-2)
for a primitive n-th root of unity beta, which lives in GF(q^2) since
q = -1 (mod n).  Lengths with a different splitting field are out of scope
and rejected.

Two parity-check routes exist on purpose: the dense (n-k) x n matrix over
GF(q) derived from the generator matrix's nullspace, and the 2 x n matrix
over GF(q^2) whose columns are consecutive 4th/5th powers of roots of unity
(:class:`UnityParityCheck`).  Each can check the other.

Index conventions: codeword coordinates are 0-based internally; reports and
subset arguments use 1-based positions (coordinate i holds c_{i-1}).  The
unity matrix stores its columns so that internal column j corresponds to the
root exponent j + 1; internal column n - 1 is the all-ones column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd as int_gcd

from . import linalg, polyring
from .errors import InternalCheckError, UnsupportedParameterError
from .gf import (FieldElement, FieldSpec, UnitySubgroup, extension_build,
                 field_build, prime_power_decompose, unity_subgroup)
from .linalg import MatrixGF
from .polyring import Poly


@dataclass(frozen=True)
class BCHSpec:
    """Parameters (q, n, delta, h) of a designed-distance-delta BCH code."""

    q: int
    n: int
    delta: int
    h: int

    def __post_init__(self):
        if not 0 <= self.h <= self.n - 1:
            raise ValueError("need 0 <= h <= n-1")
        if not 2 <= self.delta <= self.n:
            raise ValueError("need 2 <= delta <= n")


class CyclicCode:
    """An [n, k] cyclic code over GF(q) with generator polynomial g."""

    __slots__ = ("field", "n", "g", "h", "k", "d", "bch", "_G", "_H")

    def __init__(self, field: FieldSpec, n: int, g: Poly,
                 bch: BCHSpec | None = None):
        if int_gcd(n, field.element_count) != 1:
            raise ValueError("gcd(n, q) must be 1")
        if g.field != field:
            raise ValueError("generator polynomial is over the wrong field")
        if not g.is_monic():
            raise ValueError("generator polynomial must be monic")
        xn1 = Poly.x_pow(field, n) - Poly.one(field)
        quo, rem = divmod(xn1, g)
        if not rem.is_zero():
            raise ValueError("generator must divide x^n - 1 exactly")
        self.field = field
        self.n = n
        self.g = g
        self.h = quo  # parity-check polynomial, g * h = x^n - 1
        self.k = n - g.degree
        self.d: int | None = None
        self.bch = bch
        self._G = None
        self._H = None

    @property
    def q(self) -> int:
        return self.field.element_count

    def params(self) -> tuple[int, int, int | None]:
        return (self.n, self.k, self.d)

    def __repr__(self):
        d = self.d if self.d is not None else "?"
        return f"CyclicCode[{self.n},{self.k},{d}]_GF({self.q})"


def bch_build(spec: BCHSpec | None = None, *, q: int | None = None,
              n: int | None = None, delta: int | None = None,
              h: int | None = None,
              u: UnitySubgroup | None = None) -> CyclicCode:
    """Cyclic code generated by lcm(m_h, ..., m_{h+delta-2}) for n = q + 1.

    Exponent arithmetic in the subscript is modulo n.  Lengths other than
    q + 1 would need a splitting field beyond GF(q^2) and are rejected.
    """
    if spec is None:
        spec = BCHSpec(q, n, delta, h)
    qq, nn = spec.q, spec.n
    if int_gcd(nn, qq) != 1:
        raise ValueError("gcd(n, q) must be 1")
    if nn != qq + 1:
        raise UnsupportedParameterError(
            f"length {nn} != q+1 = {qq + 1}: splitting field is not GF(q^2)")
    p, m = prime_power_decompose(qq)
    base = field_build(p, m)
    if u is None:
        u = unity_subgroup(extension_build(base))
    g = Poly.one(base)
    seen = set()
    for off in range(spec.delta - 1):
        i = (spec.h + off) % nn
        coset = polyring.cyclotomic_coset(i, nn, qq)
        if coset.representative in seen:
            continue
        seen.add(coset.representative)
        g = polyring.lcm(g, polyring.minimal_poly(u, i, base))
    return CyclicCode(base, nn, g, bch=spec)


def generator_matrix(c: CyclicCode) -> MatrixGF:
    """k x n matrix whose rows are the shifts x^i * g, i = 0..k-1."""
    if c._G is None:
        zero = c.field.zero()
        gcoef = list(c.g.coeffs)
        rows = []
        for i in range(c.k):
            row = [zero] * i + gcoef + [zero] * (c.n - i - len(gcoef))
            rows.append(row)
        G = MatrixGF.from_rows(c.field, rows) if rows else \
            MatrixGF.zero(c.field, 0, c.n)
        if rows and linalg.rank(G) != c.k:
            raise InternalCheckError("generator matrix is rank deficient")
        c._G = G
    return c._G


def parity_check_matrix(c: CyclicCode) -> MatrixGF:
    """(n-k) x n matrix H with G H^T = 0, from the nullspace of G's rows."""
    if c._H is None:
        G = generator_matrix(c)
        basis = linalg.nullspace(G)
        H = MatrixGF.from_rows(c.field, basis) if basis else \
            MatrixGF.zero(c.field, 0, c.n)
        if len(basis) != c.n - c.k:
            raise InternalCheckError("parity check has wrong rank")
        for i in range(G.rows):
            if any(x for x in linalg.mat_vec(H, G.row(i))):
                raise InternalCheckError("G H^T != 0")
        c._H = H
    return c._H


def dual_code(c: CyclicCode) -> CyclicCode:
    """The dual cyclic code: generated by the monic reciprocal of h(x)."""
    gd = c.h.reciprocal().monic()
    return CyclicCode(c.field, c.n, gd)


def encode(c: CyclicCode, msg) -> tuple[FieldElement, ...]:
    """msg . G for a length-k message over GF(q); plain ints are canonical indices."""
    msg = [x if isinstance(x, FieldElement) else c.field.from_index(x) for x in msg]
    if len(msg) != c.k:
        raise ValueError(f"message length must be k = {c.k}")
    G = generator_matrix(c)
    zero = c.field.zero()
    out = [zero] * c.n
    for i, mi in enumerate(msg):
        if mi.is_zero():
            continue
        row = G.row(i)
        for j in range(c.n):
            if not row[j].is_zero():
                out[j] = out[j] + mi * row[j]
    return tuple(out)


def contains(c: CyclicCode, word) -> bool:
    """Membership via H . word^T = 0."""
    word = [x if isinstance(x, FieldElement) else c.field.from_index(x) for x in word]
    if len(word) != c.n:
        raise ValueError(f"word length must be n = {c.n}")
    H = parity_check_matrix(c)
    return all(x.is_zero() for x in linalg.mat_vec(H, word))


# ---------------------------------------------------------------------------
# the 2 x n parity check over GF(q^2)

class UnityParityCheck:
    """2 x (q+1) matrix over GF(q^2) with columns (beta^{4i}, beta^{5i}).

    Internal column j holds the exponent i = j + 1, so the last column is
    (1, 1).  A word over GF(q) (in codeword coordinates) is in the BCH code
    with designed distance 3 and offset 4 iff both syndrome sums vanish.
    """

    __slots__ = ("u", "row4", "row5")

    def __init__(self, u: UnitySubgroup):
        n = u.order
        self.u = u
        self.row4 = tuple(u.element(4 * (j + 1)) for j in range(n))
        self.row5 = tuple(u.element(5 * (j + 1)) for j in range(n))

    @property
    def n(self) -> int:
        return self.u.order

    def column(self, j: int) -> tuple[FieldElement, FieldElement]:
        """Internal (0-based) column j = exponent j + 1."""
        return (self.row4[j], self.row5[j])

    def syndrome(self, word) -> tuple[FieldElement, FieldElement]:
        """Syndrome of a GF(q) word given in codeword coordinates.

        Column j pairs with codeword coordinate (j + 1) mod n, which makes
        the two sums equal to sum_t c_t beta^{4t} and sum_t c_t beta^{5t}.
        """
        pair = self.u.pair
        n = self.n
        word = [x if isinstance(x, FieldElement) else pair.base.from_index(x)
                for x in word]
        if len(word) != n:
            raise ValueError(f"word length must be n = {n}")
        s4 = pair.ext.zero()
        s5 = pair.ext.zero()
        for j in range(n):
            cj = word[(j + 1) % n]
            if cj.is_zero():
                continue
            e = pair.embed(cj)
            s4 = s4 + e * self.row4[j]
            s5 = s5 + e * self.row5[j]
        return (s4, s5)

    def annihilates(self, word) -> bool:
        s4, s5 = self.syndrome(word)
        return s4.is_zero() and s5.is_zero()

    def gfq_rows(self) -> MatrixGF:
        """The same check as a 4 x n matrix over GF(q).

        Every e in GF(q^2) splits uniquely as a + b*w over the embedded
        GF(q), where w is the first element in canonical order outside the
        subfield; each GF(q^2) row expands into the two GF(q) rows of its
        a- and b-parts.  Columns follow codeword coordinates.
        """
        pair = self.u.pair
        base, ext = pair.base, pair.ext
        p = base.p
        m = base.m
        w = None
        for ix in range(ext.element_count):
            cand = ext.from_index(ix)
            if not pair.in_subfield(cand):
                w = cand
                break
        basis = [pair.embed(base.from_index(base.p ** t)) for t in range(m)]
        cols = []
        for b in basis:
            cols.append(b.coeffs)
        for b in basis:
            cols.append((w * b).coeffs)
        # GF(p)-matrix with those 2m vectors as columns; invert by rref on [M|I]
        f3 = field_build(p, 1)
        aug_rows = []
        for r in range(2 * m):
            row = [f3.from_int(cols[cc][r]) for cc in range(2 * m)]
            row += [f3.one() if rr == r else f3.zero() for rr in range(2 * m)]
            aug_rows.append(row)
        R, rk, _ = linalg.rref(MatrixGF.from_rows(f3, aug_rows))
        if rk != 2 * m:
            raise InternalCheckError("basis change matrix is singular")
        minv = [[R.entry(r, 2 * m + cc).coeffs[0] for cc in range(2 * m)]
                for r in range(2 * m)]

        def split(e: FieldElement) -> tuple[FieldElement, FieldElement]:
            vec = e.coeffs
            coords = [sum(minv[r][cc] * vec[cc] for cc in range(2 * m)) % p
                      for r in range(2 * m)]
            return (base.elem(coords[:m]), base.elem(coords[m:]))

        n = self.n
        rows = [[base.zero()] * n for _ in range(4)]
        for j in range(n):
            t = (j + 1) % n  # codeword coordinate paired with column j
            a4, b4 = split(self.row4[j])
            a5, b5 = split(self.row5[j])
            rows[0][t] = a4
            rows[1][t] = b4
            rows[2][t] = a5
            rows[3][t] = b5
        return MatrixGF.from_rows(base, rows)

    def validate_against(self, code: CyclicCode, rng, trials: int = 1000) -> None:
        """Check agreement with the dense parity check on random words.

        Half the trials are encoded codewords, half uniform random words;
        raises if the two membership tests ever disagree.
        """
        if code.n != self.n or code.field != self.u.pair.base:
            raise ValueError("code does not match this parity check")
        q = code.q
        for _ in range(trials // 2):
            msg = [rng.randrange(q) for _ in range(code.k)]
            word = encode(code, msg)
            if not self.annihilates(word):
                raise InternalCheckError("codeword not annihilated by unity check")
        for _ in range(trials - trials // 2):
            word = [rng.randrange(q) for _ in range(code.n)]
            if self.annihilates(word) != contains(code, word):
                raise InternalCheckError("membership tests disagree")


def unity_parity_check(q: int, u: UnitySubgroup | None = None) -> UnityParityCheck:
    """Build the 2 x (q+1) unity parity check for GF(q), q a prime power."""
    if u is None:
        p, m = prime_power_decompose(q)
        u = unity_subgroup(extension_build(field_build(p, m)))
    elif u.pair.q != q:
        raise ValueError("unity subgroup does not match q")
    upc = UnityParityCheck(u)
    if upc.column(upc.n - 1) != (u.pair.ext.one(), u.pair.ext.one()):
        raise InternalCheckError("last unity column is not (1, 1)")
    return upc


# ---------------------------------------------------------------------------
# code file format

def code_to_dict(c: CyclicCode) -> dict:
    if c.bch is None:
        raise ValueError("only BCH-built codes carry (delta, h) metadata")
    return {
        "p": c.field.p,
        "m": c.field.m,
        "n": c.n,
        "delta": c.bch.delta,
        "h": c.bch.h,
        "generator": c.g.coeff_indices(),
        "k": c.k,
        "d": c.d,
    }


def code_from_dict(data: dict) -> CyclicCode:
    field = field_build(int(data["p"]), int(data["m"]))
    g = Poly.from_indices(field, data["generator"])
    spec = BCHSpec(field.element_count, int(data["n"]),
                   int(data["delta"]), int(data["h"]))
    c = CyclicCode(field, int(data["n"]), g, bch=spec)
    if c.k != int(data["k"]):
        raise ValueError("stored dimension disagrees with the generator")
    if data.get("d") is not None:
        c.d = int(data["d"])
    return c


def write_code_json(c: CyclicCode, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(code_to_dict(c), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_code_json(path: str) -> CyclicCode:
    with open(path) as fh:
        return code_from_dict(json.load(fh))
