"""2x2 and 3x3 matrices over one ring, plus small rectangular helpers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import MixedRings, ShapeMismatch
from .rings import Elem, Ring, divides, ideal_contains_one

Rows = tuple[tuple[Elem, ...], ...]


def _check_ring(entries) -> Ring:
    ring = entries[0].ring
    for e in entries[1:]:
        if e.ring != ring:
            raise MixedRings(f"{ring} vs {e.ring}")
    return ring


@dataclass(frozen=True)
class Mat2:
    """``[[a, b], [c, d]]``."""

    a: Elem
    b: Elem
    c: Elem
    d: Elem

    def __post_init__(self):
        _check_ring((self.a, self.b, self.c, self.d))

    @classmethod
    def of(cls, ring: Ring, a, b, c, d) -> Mat2:
        return cls(ring(a), ring(b), ring(c), ring(d))

    @classmethod
    def from_rows(cls, rows) -> Mat2:
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ShapeMismatch("expected a 2x2 matrix")
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls, ring: Ring) -> Mat2:
        return cls(ring.one, ring.zero, ring.zero, ring.one)

    @classmethod
    def zero(cls, ring: Ring) -> Mat2:
        z = ring.zero
        return cls(z, z, z, z)

    @property
    def ring(self) -> Ring:
        return self.a.ring

    @property
    def entries(self) -> tuple[Elem, Elem, Elem, Elem]:
        return (self.a, self.b, self.c, self.d)

    @property
    def rows(self) -> Rows:
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> Elem:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Elem:
        return self.a + self.d

    def adjugate(self) -> Mat2:
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __add__(self, other: Mat2) -> Mat2:
        return Mat2(*(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: Mat2) -> Mat2:
        return Mat2(*(x - y for x, y in zip(self.entries, other.entries)))

    def scale(self, s: Elem) -> Mat2:
        return Mat2(*(s * x for x in self.entries))

    def __matmul__(self, other: Mat2) -> Mat2:
        if not isinstance(other, Mat2):
            raise ShapeMismatch("2x2 times non-2x2")
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def map(self, f) -> Mat2:
        return Mat2(*(f(x) for x in self.entries))

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


@dataclass(frozen=True)
class Mat3:
    rows: Rows

    def __post_init__(self):
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise ShapeMismatch("expected a 3x3 matrix")
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        _check_ring([e for r in self.rows for e in r])

    @classmethod
    def identity(cls, ring: Ring) -> Mat3:
        return cls(tuple(tuple(ring.one if i == j else ring.zero for j in range(3)) for i in range(3)))

    @property
    def ring(self) -> Ring:
        return self.rows[0][0].ring

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def det(self) -> Elem:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def __matmul__(self, other: Mat3) -> Mat3:
        if not isinstance(other, Mat3):
            raise ShapeMismatch("3x3 times non-3x3")
        return Mat3(tuple(tuple(_dot(r, col) for col in zip(*other.rows)) for r in self.rows))

    def __str__(self):
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.rows) + "]"


def _dot(u, v) -> Elem:
    acc = u[0] * v[0]
    for x, y in zip(u[1:], v[1:]):
        acc = acc + x * y
    return acc


def det2(A: Mat2) -> Elem:
    return A.det()


def trace2(A: Mat2) -> Elem:
    return A.trace()


def adjugate2(A: Mat2) -> Mat2:
    return A.adjugate()


def det3(M: Mat3) -> Elem:
    return M.det()


def mat_mul(A, B):
    """Product of two 2x2 or two 3x3 matrices over one ring."""
    if type(A) is not type(B):
        raise ShapeMismatch(f"cannot multiply {type(A).__name__} by {type(B).__name__}")
    if A.ring != B.ring:
        raise MixedRings(f"{A.ring} vs {B.ring}")
    return A @ B


def is_unimodular2(A: Mat2) -> tuple[Elem, Elem, Elem, Elem] | None:
    """Coefficients ``(x, y, z, w)`` with ``ax + by + cz + dw = 1``, or ``None``."""
    coeffs = ideal_contains_one(list(A.entries))
    return None if coeffs is None else tuple(coeffs)


def congruent_mod(B: Mat2, C: Mat2, g: Elem) -> bool:
    """True iff every entry of ``B - C`` lies in ``R*g``."""
    return all(divides(g, e) is not None for e in (B - C).entries)


# -- rectangular helpers (Smith normal form) -----------------------------------


def identity_rows(ring: Ring, n: int) -> Rows:
    return tuple(tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n))


def rows_mul(A: Sequence[Sequence[Elem]], B: Sequence[Sequence[Elem]]) -> Rows:
    if len(A[0]) != len(B):
        raise ShapeMismatch(f"{len(A)}x{len(A[0])} times {len(B)}x{len(B[0])}")
    return tuple(tuple(_dot(r, col) for col in zip(*B)) for r in A)


def det_rows(M: Sequence[Sequence[Elem]]) -> Elem:
    """Laplace expansion along the first row; fine for the small sizes used here."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ShapeMismatch("determinant of a non-square matrix")
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    acc = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in M[1:]]
        term = M[0][j] * det_rows(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc
