"""Exact arithmetic in GF(p), GF(p^m) and its quadratic extension GF(p^2m).

Representation conventions, fixed once and used everywhere:

* A field element is a dense coefficient vector ``(c0, c1, ..., c_{m-1})``
  over GF(p), constant term first.  Packing the vector as a base-p integer
  (``c0`` least significant) gives the element's *canonical index*; ordering
  elements by index is the canonical element order.
* A field modulus is the monic irreducible polynomial of degree m whose
  non-leading coefficient vector has the smallest canonical index.  The
  modulus is found by an ascending scan, so rebuilding a field on any
  machine yields a bit-identical modulus without external tables.
* ``primitive_element`` returns the first element in canonical order whose
  multiplicative order is ``p^m - 1``.

GF(q^2) for q = p^m is represented as a degree-2m extension of GF(p), not a
degree-2 extension of GF(q): one arithmetic kernel then serves both fields.
The copy of GF(q) inside GF(q^2) is an explicitly computed embedding that is
verified, never assumed; an extension element e lies in the embedded image
iff e^q = e.

The subgroup ``U`` of (q+1)-th roots of unity in GF(q^2)* is exposed through
:class:`UnitySubgroup`; its generator is ``beta = gamma^(q-1)`` where
``gamma`` is the canonical primitive element of GF(q^2).

Everything here is immutable after construction and safe to share across
threads; all operations are pure functions.
"""

from __future__ import annotations

import os

from .errors import InternalCheckError

#: Fields with at most this many elements get a log/exp table on demand,
#: used by the batch kernels; larger fields opt in explicitly.
LOG_TABLE_THRESHOLD = 2 ** 20

_CACHE_ENV = "NMDS_CACHE_DIR"
_CACHE_FILENAME = "fields.txt"


# ---------------------------------------------------------------------------
# integer helpers

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (adequate below ~10^12)."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power_decompose(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p^m, or raise ValueError."""
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    [(p, m)] = fac.items()
    return p, m


# ---------------------------------------------------------------------------
# raw polynomial helpers over GF(p): coefficient lists, constant term first,
# trailing zeros allowed on input but never produced

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _ptrim([c % p for c in out])


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    b = _ptrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    _ptrim(r)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        t = (r[-1] * inv_lead) % p
        shift = len(r) - 1 - db
        q[shift] = t
        for i, bi in enumerate(b):
            r[shift + i] = (r[shift + i] - t * bi) % p
        _ptrim(r)
    return _ptrim(q), r


def _pinvmod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Inverse of a modulo mod via the extended Euclidean algorithm."""
    r0, r1 = list(mod), _pdivmod(a, mod, p)[1]
    s0, s1 = [], [1]
    while r1:
        q, r2 = _pdivmod(r0, r1, p)
        r0, r1 = r1, r2
        qs1 = _pmul(q, s1, p)
        s2 = [(x - y) % p for x, y in
              zip(s0 + [0] * max(len(qs1) - len(s0), 0),
                  qs1 + [0] * max(len(s0) - len(qs1), 0))]
        s0, s1 = s1, _ptrim(s2)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = pow(r0[0], p - 2, p)
    return _ptrim([(x * c) % p for x in s0])


# ---------------------------------------------------------------------------
# field spec and elements

class FieldSpec:
    """A finite field GF(p^m) with its canonical irreducible modulus.

    Instances are immutable; obtain them through :func:`field_build`, which
    memoizes so the same (p, m) always yields the same object.
    """

    __slots__ = ("p", "m", "modulus", "element_count", "_red", "_zero", "_one",
                 "_pow_p", "_log_exp")

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.modulus = tuple(modulus)
        self.element_count = p ** m
        # _red[j] = coefficient vector of x^(m+j) reduced mod modulus
        r0 = tuple((-c) % p for c in self.modulus[:m])
        red = [r0]
        for _ in range(m - 2):
            prev = red[-1]
            top = prev[m - 1]
            shifted = [0] + list(prev[:-1])
            if top:
                shifted = [(s + top * r) % p for s, r in zip(shifted, r0)]
            red.append(tuple(shifted))
        self._red = tuple(red)
        self._zero = FieldElement(self, (0,) * m)
        self._one = FieldElement(self, (1,) + (0,) * (m - 1))
        self._pow_p = tuple(p ** i for i in range(m))
        self._log_exp = None

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return (self is other) or (isinstance(other, FieldSpec)
                                   and (self.p, self.m, self.modulus)
                                   == (other.p, other.m, other.modulus))

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"FieldSpec(GF({self.p}^{self.m}))"

    # -- element constructors ------------------------------------------------
    def zero(self) -> "FieldElement":
        return self._zero

    def one(self) -> "FieldElement":
        return self._one

    def elem(self, coeffs) -> "FieldElement":
        """Element from an iterable of coefficient residues (constant first)."""
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.m:
            raise ValueError(f"too many coefficients for GF({self.p}^{self.m})")
        c += [0] * (self.m - len(c))
        return FieldElement(self, tuple(c))

    def from_int(self, value: int) -> "FieldElement":
        """The prime-field constant value * 1."""
        return self.elem([value])

    def from_index(self, ix: int) -> "FieldElement":
        if not 0 <= ix < self.element_count:
            raise ValueError("canonical index out of range")
        c = []
        for _ in range(self.m):
            ix, r = divmod(ix, self.p)
            c.append(r)
        return FieldElement(self, tuple(c))

    def elements(self):
        """All elements in canonical order."""
        for ix in range(self.element_count):
            yield self.from_index(ix)

    def gen(self) -> "FieldElement":
        """The class of x modulo the field modulus (zero when m = 1)."""
        return self.from_index(self.p) if self.m > 1 else self._zero

    # -- optional log/exp accelerator ----------------------------------------
    def log_tables(self, force: bool = False):
        """(exp, log) tables over canonical indices, built on first use.

        ``exp[k]`` is the index of g^k for the canonical primitive element g,
        k = 0 .. p^m - 2; ``log`` maps an index back to the exponent (entry
        for 0 is -1).  Returns None for fields above LOG_TABLE_THRESHOLD
        unless forced.
        """
        if self._log_exp is None:
            if self.element_count > LOG_TABLE_THRESHOLD and not force:
                return None
            g = primitive_element(self)
            n = self.element_count - 1
            exp = [0] * n
            log = [-1] * self.element_count
            cur = self._one
            for k in range(n):
                ix = cur.index
                exp[k] = ix
                log[ix] = k
                cur = cur * g
            self._log_exp = (exp, log)
        return self._log_exp


class FieldElement:
    """An element of a :class:`FieldSpec`; immutable, operator-overloaded."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    # -- basics ---------------------------------------------------------------
    @property
    def index(self) -> int:
        """Canonical index: coefficient vector packed as a base-p integer."""
        return sum(c * w for c, w in zip(self.coeffs, self.field._pow_p))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.coeffs))

    def __repr__(self):
        return f"GF({self.field.p}^{self.field.m}):{list(self.coeffs)}"

    def _check_same(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field.from_int(other)
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other)!r}")
        if other.field != self.field:
            raise ValueError("elements belong to different fields")
        return other

    # -- ring operations -------------------------------------------------------
    def __add__(self, other):
        other = self._check_same(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in
                                              zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check_same(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in
                                              zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._check_same(other) - self

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._check_same(other)
        f = self.field
        p, m = f.p, f.m
        a, b = self.coeffs, other.coeffs
        conv = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        low = conv[:m] + [0] * (m - len(conv[:m]))
        for j in range(m, 2 * m - 1):
            t = conv[j] % p
            if t:
                row = f._red[j - m]
                for i, ri in enumerate(row):
                    if ri:
                        low[i] += t * ri
        return FieldElement(f, tuple(c % p for c in low))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        c = _pinvmod(list(self.coeffs), list(f.modulus), f.p)
        c += [0] * (f.m - len(c))
        return FieldElement(f, tuple(c))

    def __truediv__(self, other):
        other = self._check_same(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._check_same(other) / self

    def __pow__(self, e: int) -> "FieldElement":
        f = self.field
        if not self:
            if e == 0:
                return f.one()
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return f.zero()
        e %= f.element_count - 1
        result = f.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def multiplicative_order(self) -> int:
        if not self:
            raise ValueError("zero has no multiplicative order")
        n = self.field.element_count - 1
        order = n
        for prime in factorize(n):
            while order % prime == 0 and self ** (order // prime) == self.field.one():
                order //= prime
        return order


def frobenius(a: FieldElement, q: int) -> FieldElement:
    """a^q; for a in GF(q^2) this is the conjugate over GF(q)."""
    return a ** q


# ---------------------------------------------------------------------------
# canonical field construction

_FIELDS: dict[tuple[int, int], FieldSpec] = {}
_DISK_CACHE: dict[tuple[int, int], tuple[int, ...]] | None = None


def _canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    # imported here: polyring depends on this module
    from . import polyring
    base = field_build(p, 1)
    for t in range(p ** m):
        coeffs, tt = [], t
        for _ in range(m):
            tt, r = divmod(tt, p)
            coeffs.append(r)
        cand = polyring.Poly.from_ints(base, coeffs + [1])
        if polyring.is_irreducible(cand):
            return tuple(coeffs + [1])
    raise InternalCheckError(f"no irreducible of degree {m} over GF({p})")


def _cache_path() -> str | None:
    d = os.environ.get(_CACHE_ENV)
    return os.path.join(d, _CACHE_FILENAME) if d else None


def _load_disk_cache() -> dict[tuple[int, int], tuple[int, ...]]:
    global _DISK_CACHE
    if _DISK_CACHE is None:
        _DISK_CACHE = {}
        path = _cache_path()
        if path and os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    parts = line.split()
                    if len(parts) < 3:
                        continue
                    p, m = int(parts[0]), int(parts[1])
                    _DISK_CACHE[(p, m)] = tuple(int(x) for x in parts[2:])
    return _DISK_CACHE


def write_field_cache(path: str | None = None) -> str | None:
    """Write every field built so far to the cache file, sorted by (p, m).

    The file has one line per field: ``p m c0 c1 ... cm``.  Regenerating it
    from scratch produces byte-identical content.
    """
    if path is None:
        path = _cache_path()
    if path is None:
        return None
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    lines = []
    for (p, m) in sorted(_FIELDS):
        spec = _FIELDS[(p, m)]
        lines.append(" ".join(map(str, (p, m) + spec.modulus)))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + ("\n" if lines else ""))
    return path


def field_build(p: int, m: int) -> FieldSpec:
    """The canonical GF(p^m); deterministic across runs and platforms."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not isinstance(m, int) or m < 1:
        raise ValueError("extension degree must be >= 1")
    key = (p, m)
    spec = _FIELDS.get(key)
    if spec is not None:
        return spec
    modulus = _load_disk_cache().get(key)
    if modulus is not None and not _modulus_ok(p, m, modulus):
        modulus = None  # stale or foreign cache line; recompute
    if modulus is None:
        modulus = _canonical_modulus(p, m)
    spec = FieldSpec(p, m, modulus)
    _FIELDS[key] = spec
    if _cache_path():
        write_field_cache()
    return spec


def _modulus_ok(p: int, m: int, modulus: tuple[int, ...]) -> bool:
    if len(modulus) != m + 1 or modulus[-1] != 1:
        return False
    if any(not 0 <= c < p for c in modulus):
        return False
    if m == 1:
        return modulus == (0, 1)
    from . import polyring
    f = polyring.Poly.from_ints(field_build(p, 1), list(modulus))
    return polyring.is_irreducible(f)


def primitive_element(spec: FieldSpec) -> FieldElement:
    """First element in canonical order of multiplicative order p^m - 1."""
    n = spec.element_count - 1
    primes = list(factorize(n))
    one = spec.one()
    for ix in range(1, spec.element_count):
        a = spec.from_index(ix)
        if all(a ** (n // prime) != one for prime in primes):
            return a
    raise InternalCheckError("no primitive element found")


# ---------------------------------------------------------------------------
# quadratic extension with verified embedding

class ExtensionPair:
    """GF(q) together with GF(q^2) and the embedding between them."""

    __slots__ = ("base", "ext", "embed_table", "_reverse", "q")

    def __init__(self, base: FieldSpec, ext: FieldSpec,
                 embed_table: tuple[FieldElement, ...]):
        self.base = base
        self.ext = ext
        self.embed_table = embed_table
        self.q = base.element_count
        self._reverse = {e.coeffs: base.from_index(i)
                         for i, e in enumerate(embed_table)}

    def embed(self, a: FieldElement) -> FieldElement:
        if a.field != self.base:
            raise ValueError("embed expects an element of the base field")
        return self.embed_table[a.index]

    def project(self, e: FieldElement) -> FieldElement:
        """Preimage of e under the embedding; e must lie in the subfield."""
        if e.field != self.ext:
            raise ValueError("project expects an element of the extension")
        a = self._reverse.get(e.coeffs)
        if a is None:
            raise ValueError("element is not in the embedded base field")
        return a

    def in_subfield(self, e: FieldElement) -> bool:
        return e.coeffs in self._reverse


def _minimal_poly_over_prime(a: FieldElement) -> list[int]:
    """Minimal polynomial of a over GF(p), as a GF(p)-coefficient list."""
    f = a.field
    conj, seen = [], set()
    cur = a
    while cur.coeffs not in seen:
        seen.add(cur.coeffs)
        conj.append(cur)
        cur = cur ** f.p
    # product of (T - c) over the Frobenius orbit, coefficients in GF(p)
    poly = [f.one()]
    for c in conj:
        nxt = [f.zero()] * (len(poly) + 1)
        for i, co in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + co
            nxt[i] = nxt[i] - co * c
        poly = nxt
    out = []
    for co in poly:
        if any(co.coeffs[1:]):
            raise InternalCheckError("minimal polynomial coefficient not in GF(p)")
        out.append(co.coeffs[0])
    return out


def extension_build(base: FieldSpec) -> ExtensionPair:
    """GF(q^2) over GF(q), with a verified multiplicative-extension embedding.

    The canonical primitive element g of GF(q) is sent to the first root of
    its minimal polynomial along the cyclic subgroup of order q-1 in
    GF(q^2)*; g^j maps to r^j and 0 to 0.  Choosing r as a conjugate root of
    g (rather than an arbitrary element of order q-1) is what makes the
    multiplicative extension additive as well; the homomorphism property is
    re-checked on a deterministic sample at build time.
    """
    p, m = base.p, base.m
    q = base.element_count
    ext = field_build(p, 2 * m)
    g = primitive_element(base)
    gamma = primitive_element(ext)
    e0 = gamma ** (q + 1)  # order q - 1
    fg = _minimal_poly_over_prime(g)

    def eval_fg(x: FieldElement) -> FieldElement:
        acc = ext.zero()
        for c in reversed(fg):
            acc = acc * x + ext.from_int(c)
        return acc

    r = None
    cur = ext.one()
    for _ in range(q - 1):
        if eval_fg(cur).is_zero():
            r = cur
            break
        cur = cur * e0
    if r is None:
        raise InternalCheckError("no conjugate root found in the extension")

    table = [ext.zero()] * q
    table[base.one().index] = ext.one()
    gb, re_ = base.one(), ext.one()
    for _ in range(q - 2):
        gb = gb * g
        re_ = re_ * r
        table[gb.index] = re_
    pair = ExtensionPair(base, ext, tuple(table))

    # spot-verified homomorphism; exhaustive checks live in the test suite
    for i in range(0, q, max(1, q // 16)):
        for j in range(0, q, max(1, q // 16)):
            a, b = base.from_index(i), base.from_index(j)
            if pair.embed(a + b) != pair.embed(a) + pair.embed(b):
                raise InternalCheckError("embedding is not additive")
            if pair.embed(a * b) != pair.embed(a) * pair.embed(b):
                raise InternalCheckError("embedding is not multiplicative")
    return pair


class UnitySubgroup:
    """The cyclic group of all (q+1)-th roots of unity inside GF(q^2)*."""

    __slots__ = ("pair", "beta", "elements", "_exp_of")

    def __init__(self, pair: ExtensionPair, beta: FieldElement,
                 elements: tuple[FieldElement, ...]):
        self.pair = pair
        self.beta = beta
        self.elements = elements
        self._exp_of = {u.coeffs: t for t, u in enumerate(elements)}
        if len(self._exp_of) != len(elements):
            raise InternalCheckError("roots of unity are not pairwise distinct")

    @property
    def order(self) -> int:
        return len(self.elements)

    def element(self, t: int) -> FieldElement:
        """beta^t (exponent taken modulo q+1)."""
        return self.elements[t % self.order]

    def exponent_of(self, u: FieldElement) -> int:
        t = self._exp_of.get(u.coeffs)
        if t is None:
            raise ValueError("element is not a (q+1)-th root of unity")
        return t

    def __contains__(self, u) -> bool:
        return isinstance(u, FieldElement) and u.coeffs in self._exp_of


def unity_subgroup(pair: ExtensionPair) -> UnitySubgroup:
    """All q+1 powers of beta = gamma^(q-1), with beta's order verified."""
    q = pair.q
    ext = pair.ext
    gamma = primitive_element(ext)
    beta = gamma ** (q - 1)
    one = ext.one()
    if beta ** (q + 1) != one:
        raise InternalCheckError("beta^(q+1) != 1")
    for prime in factorize(q + 1):
        if beta ** ((q + 1) // prime) == one:
            raise InternalCheckError("beta has order smaller than q+1")
    elems = [one]
    cur = one
    for _ in range(q):
        cur = cur * beta
        elems.append(cur)
    return UnitySubgroup(pair, beta, tuple(elems))
