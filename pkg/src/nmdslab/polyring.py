"""Polynomials over a finite field, cyclotomic cosets and minimal polynomials.

A :class:`Poly` stores its coefficients constant term first with no trailing
zeros; the zero polynomial has an empty coefficient tuple and degree -1.
These are the ingredients of a cyclic code's generator polynomial: the coset
of an exponent i modulo n under multiplication by q indexes the conjugates
of beta^i, and the minimal polynomial of beta^i over GF(q) is the product of
the corresponding linear factors, computed in GF(q^2) and projected down
through the verified embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as int_gcd

from .errors import InternalCheckError
from .gf import FieldElement, FieldSpec, UnitySubgroup


class Poly:
    """Immutable dense polynomial over a :class:`FieldSpec`."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------------
    @classmethod
    def from_ints(cls, field: FieldSpec, ints) -> "Poly":
        return cls(field, [field.from_int(c) for c in ints])

    @classmethod
    def from_indices(cls, field: FieldSpec, indices) -> "Poly":
        return cls(field, [field.from_index(i) for i in indices])

    @classmethod
    def zero(cls, field: FieldSpec) -> "Poly":
        return cls(field, [])

    @classmethod
    def one(cls, field: FieldSpec) -> "Poly":
        return cls(field, [field.one()])

    @classmethod
    def x_pow(cls, field: FieldSpec, e: int, scale: FieldElement | None = None) -> "Poly":
        lead = scale if scale is not None else field.one()
        return cls(field, [field.zero()] * e + [lead])

    # -- basics ---------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        if self.is_monic():
            return self
        inv = self.coeffs[-1].inv()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero()

    def coeff_indices(self) -> list[int]:
        """Coefficients as canonical indices, constant term first."""
        return [c.index for c in self.coeffs]

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            terms.append(f"({'+'.join(map(str, c.coeffs))})x^{i}"
                         if self.field.m > 1 else f"{c.coeffs[0]}x^{i}")
        return "Poly(" + " + ".join(terms) + ")"

    def _check_same(self, other: "Poly") -> None:
        if not isinstance(other, Poly) or other.field != self.field:
            raise ValueError("polynomials belong to different fields")

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        self._check_same(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check_same(other)
        zero = self.field.zero()
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return Poly(self.field, [c * other for c in self.coeffs])
        self._check_same(other)
        if not self.coeffs or not other.coeffs:
            return Poly.zero(self.field)
        zero = self.field.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly"):
        self._check_same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = other.leading.inv()
        quo = [self.field.zero()] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            t = rem[-1] * inv_lead
            shift = len(rem) - 1 - db
            quo[shift] = t
            for i, bc in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - t * bc
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(self.field, quo), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = x.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + _lift(c, x.field)
        return acc

    def shift(self, e: int) -> "Poly":
        """Multiply by x^e."""
        if not self.coeffs:
            return self
        return Poly(self.field, [self.field.zero()] * e + list(self.coeffs))

    def reciprocal(self) -> "Poly":
        """x^deg(f) * f(1/x): the coefficient vector reversed."""
        return Poly(self.field, list(reversed(self.coeffs)))


def _lift(c: FieldElement, target: FieldSpec) -> FieldElement:
    if c.field == target:
        return c
    raise ValueError("evaluation point lies in a different field")


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor."""
    f._check_same(g)
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def lcm(f: Poly, g: Poly) -> Poly:
    """Monic least common multiple; lcm(f, 0) = 0."""
    f._check_same(g)
    if f.is_zero() or g.is_zero():
        return Poly.zero(f.field)
    return ((f * g) // gcd(f, g)).monic()


def is_irreducible(f: Poly) -> bool:
    """Irreducibility over the coefficient field.

    f of degree d is reducible iff it has an irreducible factor of degree
    i <= d/2, which happens iff gcd(x^(|F|^i) - x, f) != 1; the powers are
    walked by repeated p-th powering mod f.
    """
    if f.is_zero():
        raise ValueError("irreducibility of the zero polynomial is undefined")
    d = f.degree
    if d == 0:
        return False
    if d == 1:
        return True
    field = f.field
    x = Poly.x_pow(field, 1)
    t = x % f
    for _ in range(d // 2):
        for _ in range(field.m):
            tp = Poly.one(field)
            acc = t
            e = field.p
            while e:
                if e & 1:
                    tp = (tp * acc) % f
                acc = (acc * acc) % f
                e >>= 1
            t = tp
        if gcd(t - x, f).degree != 0:
            return False
    return True


@dataclass(frozen=True)
class CyclotomicCoset:
    """Orbit of a residue i mod n under multiplication by q."""

    representative: int
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)


def cyclotomic_coset(i: int, n: int, q: int) -> CyclotomicCoset:
    if int_gcd(n, q) != 1:
        raise ValueError(f"gcd({n}, {q}) != 1")
    if not 0 <= i < n:
        raise ValueError("residue out of range")
    members = []
    j = i
    while True:
        members.append(j)
        j = (j * q) % n
        if j == i:
            break
    return CyclotomicCoset(min(members), tuple(sorted(members)))


def minimal_poly(u: UnitySubgroup, i: int, base: FieldSpec) -> Poly:
    """Minimal polynomial of beta^i over GF(q), as a monic Poly over base.

    Computed as the product of (x - beta^j) over the coset of i in GF(q^2);
    every coefficient is checked to lie in the embedded copy of GF(q) before
    being projected down.  A coefficient outside the subfield means the
    arithmetic itself is broken, so that aborts rather than degrading.
    """
    pair = u.pair
    if base != pair.base:
        raise ValueError("base field does not match the unity subgroup")
    n = u.order
    q = pair.q
    coset = cyclotomic_coset(i % n, n, q)
    ext = pair.ext
    poly = [ext.one()]
    for j in coset.members:
        root = u.element(j)
        nxt = [ext.zero()] * (len(poly) + 1)
        for t, co in enumerate(poly):
            nxt[t + 1] = nxt[t + 1] + co
            nxt[t] = nxt[t] - co * root
        poly = nxt
    down = []
    for co in poly:
        if not pair.in_subfield(co):
            raise InternalCheckError(
                "minimal polynomial coefficient escapes GF(q); arithmetic bug")
        down.append(pair.project(co))
    out = Poly(base, down)
    if not out.is_monic() or out.degree != len(coset):
        raise InternalCheckError("minimal polynomial lost monicity or degree")
    if not is_irreducible(out):
        raise InternalCheckError("minimal polynomial is not irreducible")
    return out
