"""Exact commutative rings and their elements.

Supported rings are ``Z``, ``Z/n``, ``GF(p)``, ``GF(p)[x]``, ``GF(p)[x]/(f)`` and
finite products of the finite ones.  Elements are :class:`Elem` objects holding a
canonical payload; equality of elements is equality of payloads.

Payload conventions:

* ``Z``: a Python ``int``;
* ``Z/n`` and ``GF(p)``: an ``int`` in ``[0, n)``;
* polynomials: a tuple of ints in ``[0, p)``, constant term first, with no
  trailing zeros (``()`` is the zero polynomial);
* products: a tuple of factor payloads.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from sympy import isprime
from sympy.ntheory import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_sqf_p

from .errors import (
    BudgetExceeded,
    InfiniteRing,
    InvalidDescriptor,
    MixedRings,
    UnsupportedRing,
)

# Finite rings up to this size get O(n^2) lookup tables.  Larger ones use
# number theory (Z/n), componentwise answers (products) or linear scans.
TABLE_LIMIT = 256

# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class Integers:
    pass


@dataclass(frozen=True)
class Modular:
    n: int


@dataclass(frozen=True)
class GaloisPrime:
    p: int


@dataclass(frozen=True)
class PolyOverPrime:
    p: int


@dataclass(frozen=True)
class PolyQuotient:
    """``GF(p)[x]/(f)``; ``f`` is a coefficient tuple, constant term first."""

    p: int
    f: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))


@dataclass(frozen=True)
class Product:
    """Finite product ring.  Nested products are flattened on construction."""

    factors: tuple = field()

    def __post_init__(self):
        flat = []
        for d in self.factors:
            if isinstance(d, Product):
                flat.extend(d.factors)
            else:
                flat.append(d)
        object.__setattr__(self, "factors", tuple(flat))


RingDescriptor = Integers | Modular | GaloisPrime | PolyOverPrime | PolyQuotient | Product


@dataclass(frozen=True)
class Caps:
    is_finite: bool
    is_bezout: bool
    is_euclidean: bool
    is_domain: bool
    is_reduced: bool


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); coefficient tuples, constant term first


def _pstrip(c) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pnorm(c, p) -> tuple[int, ...]:
    return _pstrip(x % p for x in c)


def _padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _pstrip(out)


def _pneg(a, p):
    return tuple((-x) % p for x in a)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pnorm(out, p)


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    r = list(a)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        coef = r[k + db] * inv % p
        q[k] = coef
        if coef:
            for j, y in enumerate(b):
                r[k + j] = (r[k + j] - coef * y) % p
    return _pstrip(q), _pstrip(r[:db])


def _format_poly(c) -> str:
    if not c:
        return "0"
    terms = []
    for k in range(len(c) - 1, -1, -1):
        co = c[k]
        if not co:
            continue
        if k == 0:
            terms.append(str(co))
        else:
            mono = "x" if k == 1 else f"x^{k}"
            terms.append(mono if co == 1 else f"{co}*{mono}")
    return "+".join(terms)


def format_descriptor(d: RingDescriptor) -> str:
    """Canonical spelling of a descriptor (inverse of ``parse_ring_spec``)."""
    if isinstance(d, Integers):
        return "Z"
    if isinstance(d, Modular):
        return f"Z/{d.n}"
    if isinstance(d, GaloisPrime):
        return f"GF({d.p})"
    if isinstance(d, PolyOverPrime):
        return f"GF({d.p})[x]"
    if isinstance(d, PolyQuotient):
        return f"GF({d.p})[x]/({_format_poly(d.f)})"
    if isinstance(d, Product):
        return " x ".join(format_descriptor(f) for f in d.factors)
    raise InvalidDescriptor(f"unknown descriptor {d!r}")


# ---------------------------------------------------------------------------
# elements


class Elem:
    """A ring element.  Integers on either side of an operator are coerced."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        self.ring = ring
        self.value = value

    def _other(self, other):
        if isinstance(other, Elem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise MixedRings(f"{self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, int):
            return self.ring(other).value
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring._add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring._sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring._sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring._mul(self.value, o))

    __rmul__ = __mul__

    def __neg__(self):
        return Elem(self.ring, self.ring._neg(self.value))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out, base = self.ring.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @property
    def is_zero(self) -> bool:
        return self.value == self.ring.zero.value

    def __eq__(self, other):
        if isinstance(other, Elem):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ring(other).value
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor, self.value))

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"Elem({self}, {self.ring})"


# ---------------------------------------------------------------------------
# rings


class Ring:
    """A ring context.  Immutable; obtain instances through :func:`make_ring`."""

    descriptor: RingDescriptor
    caps: Caps
    cardinality: int | float

    def __init__(self, descriptor, caps, cardinality):
        self.descriptor = descriptor
        self.caps = caps
        self.cardinality = cardinality
        self.zero = Elem(self, self._from_int(0))
        self.one = Elem(self, self._from_int(1))

    # payload-level arithmetic, overridden per ring
    def _from_int(self, k: int):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def format(self, value) -> str:
        return str(value)

    def __call__(self, value) -> Elem:
        if isinstance(value, Elem):
            if value.ring != self:
                raise MixedRings(f"{value.ring} vs {self}")
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot coerce {value!r} into {self}")
        return Elem(self, self._from_int(value))

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __str__(self):
        return format_descriptor(self.descriptor)

    def __repr__(self):
        return f"Ring({self})"

    # finite-ring machinery
    @property
    def is_finite(self) -> bool:
        return self.caps.is_finite

    def _payloads(self) -> Iterator:
        raise InfiniteRing(f"{self} is infinite")

    def elements(self) -> Iterator[Elem]:
        """All elements, each once, in the ring's fixed order."""
        for v in self._payloads():
            yield Elem(self, v)

    @functools.cached_property
    def element_list(self) -> list[Elem]:
        return list(self.elements())

    @functools.cached_property
    def _index(self) -> dict:
        return {e.value: i for i, e in enumerate(self.element_list)}

    def index(self, e: Elem) -> int:
        """Position of ``e`` in :meth:`elements` order."""
        return self._index[self(e).value]

    def element(self, i: int) -> Elem:
        return self.element_list[i]

    @functools.cached_property
    def tables(self):
        """Lookup tables used by the exhaustive deciders."""
        if not self.is_finite:
            raise InfiniteRing(f"{self} is infinite")
        if self.cardinality > TABLE_LIMIT:
            raise BudgetExceeded(f"{self} has {self.cardinality} elements; tables are built up to {TABLE_LIMIT}")
        from .tables import FiniteTables

        return FiniteTables(self)

    # Euclidean structure (Z and GF(p)[x] only)
    def euclid_divmod(self, a: Elem, b: Elem) -> tuple[Elem, Elem]:
        raise UnsupportedRing(f"{self} is not Euclidean")

    def euclid_size(self, a: Elem) -> int:
        raise UnsupportedRing(f"{self} is not Euclidean")

    def normal_unit(self, a: Elem) -> Elem:
        """Unit ``u`` with ``u*a`` the canonical associate of ``a``."""
        raise UnsupportedRing(f"{self} is not Euclidean")


class IntegerRing(Ring):
    def _from_int(self, k):
        return k

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def euclid_divmod(self, a, b):
        q, r = divmod(a.value, b.value)
        return Elem(self, q), Elem(self, r)

    def euclid_size(self, a):
        return abs(a.value)

    def normal_unit(self, a):
        return self.one if a.value >= 0 else -self.one


class ModularRing(Ring):
    def __init__(self, descriptor, caps, n):
        self.n = n
        super().__init__(descriptor, caps, n)

    def _from_int(self, k):
        return k % self.n

    def _add(self, a, b):
        return (a + b) % self.n

    def _sub(self, a, b):
        return (a - b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def _mul(self, a, b):
        return a * b % self.n

    def _payloads(self):
        return iter(range(self.n))


class PolyRing(Ring):
    """``GF(p)[x]``."""

    def __init__(self, descriptor, caps, p):
        self.p = p
        super().__init__(descriptor, caps, math.inf)

    def _from_int(self, k):
        return _pnorm((k,), self.p)

    def _add(self, a, b):
        return _padd(a, b, self.p)

    def _neg(self, a):
        return _pneg(a, self.p)

    def _mul(self, a, b):
        return _pmul(a, b, self.p)

    def format(self, value):
        return _format_poly(value)

    def poly(self, coeffs: Sequence[int]) -> Elem:
        """Element from coefficients, constant term first."""
        return Elem(self, _pnorm(coeffs, self.p))

    def __call__(self, value):
        if isinstance(value, (list, tuple)):
            return self.poly(value)
        return super().__call__(value)

    def euclid_divmod(self, a, b):
        q, r = _pdivmod(a.value, b.value, self.p)
        return Elem(self, q), Elem(self, r)

    def euclid_size(self, a):
        return len(a.value)

    def normal_unit(self, a):
        if not a.value:
            return self.one
        return Elem(self, (pow(a.value[-1], -1, self.p),))


class QuotientRing(Ring):
    """``GF(p)[x]/(f)`` with ``f`` monic."""

    def __init__(self, descriptor, caps, p, f):
        self.p = p
        self.f = f
        self.deg = len(f) - 1
        super().__init__(descriptor, caps, p**self.deg)

    def _reduce(self, c):
        return _pdivmod(c, self.f, self.p)[1]

    def _from_int(self, k):
        return self._reduce(_pnorm((k,), self.p))

    def _add(self, a, b):
        return _padd(a, b, self.p)

    def _neg(self, a):
        return _pneg(a, self.p)

    def _mul(self, a, b):
        return self._reduce(_pmul(a, b, self.p))

    def format(self, value):
        return _format_poly(value)

    def poly(self, coeffs: Sequence[int]) -> Elem:
        return Elem(self, self._reduce(_pnorm(coeffs, self.p)))

    def __call__(self, value):
        if isinstance(value, (list, tuple)):
            return self.poly(value)
        return super().__call__(value)

    def _payloads(self):
        # index = sum c_i p^i: 0, 1, ..., x, x+1, ...
        for digits in itertools.product(range(self.p), repeat=self.deg):
            yield _pstrip(reversed(digits))


class ProductRing(Ring):
    def __init__(self, descriptor, caps, factors):
        self.factors = factors
        super().__init__(descriptor, caps, math.prod(f.cardinality for f in factors))

    def _from_int(self, k):
        return tuple(f._from_int(k) for f in self.factors)

    def _add(self, a, b):
        return tuple(f._add(x, y) for f, x, y in zip(self.factors, a, b))

    def _sub(self, a, b):
        return tuple(f._sub(x, y) for f, x, y in zip(self.factors, a, b))

    def _neg(self, a):
        return tuple(f._neg(x) for f, x in zip(self.factors, a))

    def _mul(self, a, b):
        return tuple(f._mul(x, y) for f, x, y in zip(self.factors, a, b))

    def format(self, value):
        return "(" + ",".join(f.format(x) for f, x in zip(self.factors, value)) + ")"

    def __call__(self, value):
        if isinstance(value, tuple):
            if len(value) != len(self.factors):
                raise TypeError(f"{self} needs {len(self.factors)} components")
            return Elem(self, tuple(f(x).value for f, x in zip(self.factors, value)))
        return super().__call__(value)

    def component(self, e: Elem, i: int) -> Elem:
        return Elem(self.factors[i], self(e).value[i])

    def _payloads(self):
        for combo in itertools.product(*(list(f._payloads()) for f in self.factors)):
            yield tuple(combo)


# ---------------------------------------------------------------------------
# construction


def _squarefree(n: int) -> bool:
    return all(k == 1 for k in factorint(n).values())


@functools.lru_cache(maxsize=None)
def make_ring(d: RingDescriptor) -> Ring:
    """Validate a descriptor and build its (cached, shared) ring context."""
    if isinstance(d, Integers):
        return IntegerRing(d, Caps(False, True, True, True, True), math.inf)
    if isinstance(d, Modular):
        if not isinstance(d.n, int) or d.n < 2:
            raise InvalidDescriptor(f"modulus must be >= 2, got {d.n}")
        prime = isprime(d.n)
        caps = Caps(True, True, False, prime, _squarefree(d.n))
        return ModularRing(d, caps, d.n)
    if isinstance(d, GaloisPrime):
        if not isinstance(d.p, int) or not isprime(d.p):
            raise InvalidDescriptor(f"GF({d.p}): {d.p} is not prime")
        return ModularRing(d, Caps(True, True, True, True, True), d.p)
    if isinstance(d, PolyOverPrime):
        if not isinstance(d.p, int) or not isprime(d.p):
            raise InvalidDescriptor(f"GF({d.p})[x]: {d.p} is not prime")
        return PolyRing(d, Caps(False, True, True, True, True), d.p)
    if isinstance(d, PolyQuotient):
        if not isinstance(d.p, int) or not isprime(d.p):
            raise InvalidDescriptor(f"GF({d.p}): {d.p} is not prime")
        f = tuple(d.f)
        if f != _pnorm(f, d.p) or len(f) < 2:
            raise InvalidDescriptor("quotient modulus must be reduced mod p and of degree >= 1")
        if f[-1] != 1:
            raise InvalidDescriptor("quotient modulus must be monic")
        high_first = [ZZ(c) for c in reversed(f)]
        caps = Caps(
            True,
            True,
            False,
            bool(gf_irreducible_p(high_first, d.p, ZZ)),
            bool(gf_sqf_p(high_first, d.p, ZZ)),
        )
        return QuotientRing(PolyQuotient(d.p, f), caps, d.p, f)
    if isinstance(d, Product):
        if len(d.factors) < 2:
            raise InvalidDescriptor("a product needs at least two factors")
        factors = [make_ring(f) for f in d.factors]
        for f in factors:
            if not f.is_finite:
                raise InvalidDescriptor(f"product factor {f} is not finite")
        caps = Caps(True, True, False, False, all(f.caps.is_reduced for f in factors))
        return ProductRing(d, caps, factors)
    raise InvalidDescriptor(f"unknown descriptor {d!r}")


# ---------------------------------------------------------------------------
# ring-core operations


def _same_ring(*elems: Elem) -> Ring:
    ring = elems[0].ring
    for e in elems[1:]:
        if e.ring != ring:
            raise MixedRings(f"{ring} vs {e.ring}")
    return ring


def arith(op: str, a: Elem, b: Elem | None = None) -> Elem:
    """Dispatch ``add``/``sub``/``mul``/``neg`` by name."""
    if op == "neg":
        return -a
    _same_ring(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def _tabled(ring: Ring) -> bool:
    return ring.is_finite and ring.cardinality <= TABLE_LIMIT


def _split(ring: ProductRing, e: Elem) -> list[Elem]:
    return [ring.component(e, i) for i in range(len(ring.factors))]


def _join(ring: ProductRing, parts: Sequence[Elem]) -> Elem:
    return Elem(ring, tuple(x.value for x in parts))


# Linear scans for finite rings too large for tables (quotients; cost O(|R|)).


def _scan_first(ring: Ring, pred) -> Elem | None:
    return next((e for e in ring.elements() if pred(e)), None)


def _scan_combination(ring: Ring, v: Sequence[Elem]) -> list[Elem] | None:
    # grow the ideal one generator at a time as a union of cosets I + r*g
    reach: dict = {ring.zero.value: ()}
    for g in v:
        nxt: dict = {}
        for r in ring.elements():
            rg = r * g
            if rg.value in nxt:
                continue
            for val, coeffs in reach.items():
                key = ring._add(val, rg.value)
                if key not in nxt:
                    nxt[key] = coeffs + (r,)
        reach = nxt
    found = reach.get(ring.one.value)
    return None if found is None else list(found)


def is_unit(a: Elem) -> Elem | None:
    """Inverse of ``a`` if it is a unit, else ``None``."""
    ring = a.ring
    if isinstance(ring, ModularRing) and not _tabled(ring):
        if math.gcd(a.value, ring.n) != 1:
            return None
        return ring(pow(a.value, -1, ring.n))
    if isinstance(ring, ProductRing) and not _tabled(ring):
        parts = [is_unit(x) for x in _split(ring, a)]
        return None if None in parts else _join(ring, parts)
    if ring.is_finite and not _tabled(ring):
        return _scan_first(ring, lambda e: a * e == ring.one)
    if ring.is_finite:
        inv = ring.tables.inv[ring.index(a)]
        return ring.element(int(inv)) if inv >= 0 else None
    if isinstance(ring, IntegerRing):
        return a if a.value in (1, -1) else None
    # GF(p)[x]: nonzero constants
    if len(a.value) == 1:
        return ring.normal_unit(a)
    return None


def divides(a: Elem, b: Elem) -> Elem | None:
    """Some ``q`` with ``b == a*q``, or ``None``.  ``divides(0, 0)`` is ``0``."""
    ring = _same_ring(a, b)
    if a.is_zero:
        return ring.zero if b.is_zero else None
    if isinstance(ring, ModularRing) and not _tabled(ring):
        # smallest nonnegative q, matching the table lookup
        n = ring.n
        g = math.gcd(a.value, n)
        if b.value % g:
            return None
        m = n // g
        return ring((b.value // g) * pow(a.value // g, -1, m) % m) if m > 1 else ring.zero
    if isinstance(ring, ProductRing) and not _tabled(ring):
        parts = [divides(x, y) for x, y in zip(_split(ring, a), _split(ring, b))]
        return None if None in parts else _join(ring, parts)
    if ring.is_finite and not _tabled(ring):
        return _scan_first(ring, lambda e: a * e == b)
    if ring.is_finite:
        q = ring.tables.quot[ring.index(a), ring.index(b)]
        return ring.element(int(q)) if q >= 0 else None
    q, r = ring.euclid_divmod(b, a)
    return q if r.is_zero else None


def extended_gcd(a: Elem, b: Elem) -> tuple[Elem, Elem, Elem]:
    """``(g, u, v)`` with ``u*a + v*b == g`` and ``g`` generating ``(a, b)``.

    Over ``Z`` the gcd is nonnegative, over ``GF(p)[x]`` monic (or zero).  Over
    ``Z/n`` and ``GF(p)`` integer representatives are used.
    """
    ring = _same_ring(a, b)
    if isinstance(ring, ModularRing):
        zz = make_ring(Integers())
        g, u, v = extended_gcd(zz(a.value), zz(b.value))
        return ring(g.value), ring(u.value), ring(v.value)
    if not isinstance(ring, (IntegerRing, PolyRing)):
        raise UnsupportedRing(f"extended gcd is not available over {ring}")
    if a.is_zero and b.is_zero:
        return ring.zero, ring.zero, ring.zero
    r0, r1 = a, b
    s0, s1 = ring.one, ring.zero
    t0, t1 = ring.zero, ring.one
    while not r1.is_zero:
        q, r = ring.euclid_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    u = ring.normal_unit(r0)
    return r0 * u, s0 * u, t0 * u


def ideal_contains_one(v: Sequence[Elem]) -> list[Elem] | None:
    """Coefficients ``c`` with ``sum(c_i * v_i) == 1``, or ``None``."""
    if not v:
        raise ValueError("empty generator list")
    ring = _same_ring(*v)
    if isinstance(ring, ModularRing) and not _tabled(ring):
        zz = make_ring(Integers())
        c = ideal_contains_one([zz(e.value) for e in v] + [zz(ring.n)])
        return None if c is None else [ring(x.value) for x in c[:-1]]
    if isinstance(ring, ProductRing) and not _tabled(ring):
        cols = [ideal_contains_one([ring.component(e, i) for e in v]) for i in range(len(ring.factors))]
        if None in cols:
            return None
        return [_join(ring, [col[k] for col in cols]) for k in range(len(v))]
    if ring.is_finite and not _tabled(ring):
        return _scan_combination(ring, v)
    if ring.is_finite:
        return _finite_unit_combination(ring, v)
    if not isinstance(ring, (IntegerRing, PolyRing)):
        raise UnsupportedRing(f"no ideal membership procedure over {ring}")
    g, coeffs = v[0], [ring.one]
    k = 1
    while k < len(v) and is_unit(g) is None:
        g, s, t = extended_gcd(g, v[k])
        coeffs = [s * c for c in coeffs] + [t]
        k += 1
    inv = is_unit(g)
    if inv is None:
        return None
    coeffs = [c * inv for c in coeffs] + [ring.zero] * (len(v) - k)
    return coeffs


def _finite_unit_combination(ring: Ring, v: Sequence[Elem]) -> list[Elem] | None:
    T = ring.tables
    add, mul = T.add_list, T.mul_list
    reach = {T.zero: ()}
    for g in v:
        gi = ring.index(g)
        nxt: dict[int, tuple] = {}
        for s, coeffs in reach.items():
            for r in range(T.n):
                val = add[s][mul[r][gi]]
                if val not in nxt:
                    nxt[val] = coeffs + (r,)
        reach = nxt
    found = reach.get(T.one)
    if found is None:
        return None
    return [ring.element(r) for r in found]


def elements(ring: Ring) -> Iterator[Elem]:
    """Stream every element of a finite ring in its fixed order."""
    if not ring.is_finite:
        raise InfiniteRing(f"{ring} is infinite")
    return ring.elements()


def is_nilpotent(a: Elem) -> bool:
    ring = a.ring
    if isinstance(ring, ModularRing) and not _tabled(ring):
        # every prime exponent of n is below n.bit_length()
        return pow(a.value, ring.n.bit_length(), ring.n) == 0
    if isinstance(ring, ProductRing) and not _tabled(ring):
        return all(is_nilpotent(x) for x in _split(ring, a))
    if ring.is_finite and not _tabled(ring):
        return (a ** int(ring.cardinality)).is_zero
    if ring.is_finite:
        return bool(ring.tables.nilpotent[ring.index(a)])
    # Z and GF(p)[x] are domains
    return a.is_zero


def is_zero_divisor(a: Elem) -> bool:
    """True iff ``a`` kills some nonzero element (so ``0`` always is)."""
    ring = a.ring
    if isinstance(ring, ModularRing) and not _tabled(ring):
        return math.gcd(a.value, ring.n) > 1
    if isinstance(ring, ProductRing) and not _tabled(ring):
        return any(is_zero_divisor(x) for x in _split(ring, a))
    if ring.is_finite and not _tabled(ring):
        return _scan_first(ring, lambda e: not e.is_zero and (a * e).is_zero) is not None
    if ring.is_finite:
        return bool(ring.tables.zero_divisor[ring.index(a)])
    return a.is_zero
