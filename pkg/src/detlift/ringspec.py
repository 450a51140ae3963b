"""String grammar for rings, elements and matrices.

::

    ring    := atom (" x " atom)*          left-associative product
    atom    := "Z" | "Z/" INT | "GF(" INT ")" | "GF(" INT ")[x]"
             | "GF(" INT ")[x]/(" poly ")"
    poly    := ["-"] term (("+" | "-") term)*
    term    := INT | INT "*" mono | mono
    mono    := "x" | "x^" INT
    matrix2 := "[[" e "," e "],[" e "," e "]]"      (3x3 analogous)
    quad    := "[" e "," e "," e "," e "]"

Element literals are signed integers for ``Z``/``Z/n``/``GF(p)``, polynomials
for the polynomial rings, and ``(e1,e2,...)`` (or a bare integer, mapped
diagonally) for products.  Whitespace is insignificant.  Parse errors carry the
byte offset of the offending character.
"""

from __future__ import annotations

from .errors import InvalidDescriptor, LiteralOutOfRing, ParseError
from .mat import Mat2, Mat3
from .rings import (
    Elem,
    GaloisPrime,
    Integers,
    IntegerRing,
    Modular,
    ModularRing,
    PolyOverPrime,
    PolyQuotient,
    PolyRing,
    Product,
    ProductRing,
    QuotientRing,
    Ring,
    RingDescriptor,
    _pnorm,
    format_descriptor,
    make_ring,
)

# Guards against inputs whose validation or expansion would be unreasonably
# expensive (factoring huge moduli, materializing x^(10^9)).
MAX_MODULUS = 2**64
MAX_DEGREE = 4096
MAX_MODULUS_DEGREE = 64


class _Cursor:
    def __init__(self, s: str):
        if not isinstance(s, str):
            raise TypeError("expected a string")
        self.s = s
        self.i = 0

    def error(self, msg: str, at: int | None = None) -> ParseError:
        i = self.i if at is None else at
        # report a byte offset that lies inside the input
        i = min(i, max(len(self.s) - 1, 0))
        return ParseError(msg, len(self.s[:i].encode("utf-8", "surrogatepass")))

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def accept(self, tok: str) -> bool:
        self.ws()
        if self.s.startswith(tok, self.i):
            self.i += len(tok)
            return True
        return False

    def expect(self, tok: str):
        if not self.accept(tok):
            found = self.peek() or "end of input"
            raise self.error(f"expected {tok!r}, found {found!r}")

    def integer(self, signed: bool = False) -> int:
        self.ws()
        start = self.i
        neg = signed and self.accept("-")
        self.ws()
        j = self.i
        while j < len(self.s) and self.s[j] in "0123456789":
            j += 1
        if j == self.i:
            raise self.error("expected an integer", start)
        if j - self.i > 4000:
            raise self.error("integer literal too long", start)
        v = int(self.s[self.i:j])
        self.i = j
        return -v if neg else v

    def at_digit(self) -> bool:
        c = self.peek()
        return c != "" and c in "0123456789"

    def done(self):
        self.ws()
        if self.i != len(self.s):
            raise self.error(f"unexpected {self.s[self.i]!r}")


# -- rings ---------------------------------------------------------------------


def _poly(cur: _Cursor, p: int, max_degree: int = MAX_DEGREE) -> tuple[int, ...]:
    coeffs: dict[int, int] = {}
    sign = -1 if cur.accept("-") else 1
    while True:
        start = cur.i
        if cur.at_digit():
            c = cur.integer()
            k = 0
            if cur.accept("*"):
                k = _mono(cur, max_degree)
        elif cur.peek() == "x":
            c, k = 1, _mono(cur, max_degree)
        else:
            raise cur.error("expected a polynomial term", start)
        coeffs[k] = coeffs.get(k, 0) + sign * c
        if cur.accept("+"):
            sign = 1
        elif cur.accept("-"):
            sign = -1
        else:
            break
    top = max(coeffs)
    return _pnorm([coeffs.get(k, 0) for k in range(top + 1)], p)


def _mono(cur: _Cursor, max_degree: int) -> int:
    start = cur.i
    cur.expect("x")
    if not cur.accept("^"):
        return 1
    k = cur.integer()
    if k > max_degree:
        raise cur.error(f"exponent above {max_degree}", start)
    return k


def _atom(cur: _Cursor) -> RingDescriptor:
    start = cur.i
    if cur.accept("GF"):
        cur.expect("(")
        at = cur.i
        p = cur.integer()
        cur.expect(")")
        if p >= MAX_MODULUS:
            raise cur.error("characteristic too large", at)
        if not cur.accept("["):
            return GaloisPrime(p)
        cur.expect("x")
        cur.expect("]")
        if not cur.accept("/"):
            return PolyOverPrime(p)
        cur.expect("(")
        if p < 2:
            raise InvalidDescriptor(f"GF({p}): {p} is not prime")
        f = _poly(cur, p, MAX_MODULUS_DEGREE)
        cur.expect(")")
        return PolyQuotient(p, f)
    if cur.accept("Z"):
        if not cur.accept("/"):
            return Integers()
        at = cur.i
        n = cur.integer()
        if n >= MAX_MODULUS:
            raise cur.error("modulus too large", at)
        return Modular(n)
    raise cur.error("expected a ring ('Z', 'Z/n' or 'GF(p)...')", start)


def _ring(cur: _Cursor) -> RingDescriptor:
    d = _atom(cur)
    while cur.peek() == "x":
        cur.expect("x")
        d = Product((d, _atom(cur)))
    return d


def parse_ring_spec(s: str) -> RingDescriptor:
    """Parse and validate a ring descriptor string."""
    cur = _Cursor(s)
    d = _ring(cur)
    cur.done()
    make_ring(d)  # raises InvalidDescriptor
    if isinstance(d, PolyQuotient):
        d = PolyQuotient(d.p, tuple(d.f))
    return d


def parse_ring(s: str) -> Ring:
    return make_ring(parse_ring_spec(s))


# -- elements --------------------------------------------------------------------


def _element(cur: _Cursor, ring: Ring) -> Elem:
    start = cur.i
    if isinstance(ring, ProductRing):
        if cur.accept("("):
            parts = []
            for k, f in enumerate(ring.factors):
                if k:
                    cur.expect(",")
                parts.append(_element(cur, f).value)
            cur.expect(")")
            return Elem(ring, tuple(parts))
        if cur.peek() == "x":
            raise LiteralOutOfRing(f"polynomial literal at offset {start} is not an element of {ring}")
        return ring(cur.integer(signed=True))
    if isinstance(ring, (PolyRing, QuotientRing)):
        return ring.poly(_poly(cur, ring.p))
    if isinstance(ring, (IntegerRing, ModularRing)):
        c = cur.peek()
        if c in ("x", "("):
            raise LiteralOutOfRing(f"literal at offset {start} is not an element of {ring}")
        return ring(cur.integer(signed=True))
    raise LiteralOutOfRing(f"no literal syntax for {ring}")


def parse_element(s: str, ring: Ring) -> Elem:
    cur = _Cursor(s)
    e = _element(cur, ring)
    cur.done()
    return e


def _row(cur: _Cursor, ring: Ring, n: int) -> list[Elem]:
    cur.expect("[")
    out = []
    for k in range(n):
        if k:
            cur.expect(",")
        out.append(_element(cur, ring))
    cur.expect("]")
    return out


def _square(cur: _Cursor, ring: Ring, n: int) -> list[list[Elem]]:
    cur.expect("[")
    rows = []
    for k in range(n):
        if k:
            cur.expect(",")
        rows.append(_row(cur, ring, n))
    cur.expect("]")
    cur.done()
    return rows


def parse_matrix(s: str, ring: Ring) -> tuple[tuple[Elem, ...], ...]:
    """Rectangular matrix ``[[e,...],...]``; all rows must have one length."""
    cur = _Cursor(s)
    cur.expect("[")
    rows = []
    width = None
    while True:
        start = cur.i
        cur.expect("[")
        row = [_element(cur, ring)]
        while cur.accept(","):
            row.append(_element(cur, ring))
        cur.expect("]")
        if width is not None and len(row) != width:
            raise cur.error(f"row of length {len(row)}, expected {width}", start)
        width = len(row)
        rows.append(tuple(row))
        if not cur.accept(","):
            break
    cur.expect("]")
    cur.done()
    return tuple(rows)


def parse_matrix2(s: str, ring: Ring) -> Mat2:
    return Mat2.from_rows(_square(_Cursor(s), ring, 2))


def parse_matrix3(s: str, ring: Ring) -> Mat3:
    return Mat3(_square(_Cursor(s), ring, 3))


def parse_quad(s: str, ring: Ring) -> tuple[Elem, Elem, Elem, Elem]:
    cur = _Cursor(s)
    q = _row(cur, ring, 4)
    cur.done()
    return tuple(q)  # type: ignore[return-value]


# -- printers --------------------------------------------------------------------


def format_ring(d) -> str:
    if isinstance(d, Ring):
        d = d.descriptor
    return format_descriptor(d)


def format_element(e: Elem) -> str:
    return str(e)


def format_matrix(M) -> str:
    return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in M.rows) + "]"


def matrix_json(M) -> list[list[str]]:
    return [[str(e) for e in r] for r in M.rows]


def format_quad(q) -> str:
    return "[" + ",".join(map(str, q)) + "]"
