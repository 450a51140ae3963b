"""Constructive algorithms over ``Z`` and ``GF(p)[x]``."""

from __future__ import annotations

from dataclasses import dataclass

from .construct import (
    Role,
    Witness,
    lift_matrix,
    rho_witness,
    transport_witness,
)
from .errors import (
    NonzeroDeterminant,
    NotDivisible,
    NotUnimodular,
    PreconditionFailed,
    ShapeMismatch,
    UnsupportedRing,
)
from .mat import Mat2, Rows, congruent_mod, identity_rows, is_unimodular2
from .rings import Elem, IntegerRing, PolyRing, Ring, divides, extended_gcd, ideal_contains_one, is_unit


def _euclidean(ring: Ring) -> None:
    if not isinstance(ring, (IntegerRing, PolyRing)):
        raise UnsupportedRing(f"unsupported ring for this operation: {ring}")


# -- Smith normal form -------------------------------------------------------


@dataclass(frozen=True)
class SnfResult:
    """``U @ D @ V`` reproduces the input; ``U`` and ``V`` are invertible."""

    U: Rows
    D: Rows
    V: Rows

    @property
    def diagonal(self) -> list[Elem]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0])))]


def smith_normal_form(M) -> SnfResult:
    """Diagonal reduction with a divisibility chain.

    Pivot: smallest absolute value (``Z``) or degree (``GF(p)[x]``) in the
    remaining block, first in row-major order.  Diagonal entries are
    normalized nonnegative / monic.
    """
    rows = [list(r) for r in (M.rows if isinstance(M, Mat2) else M)]
    m = len(rows)
    n = len(rows[0]) if m else 0
    if not m or not n or any(len(r) != n for r in rows):
        raise ShapeMismatch("ragged or empty matrix")
    ring = rows[0][0].ring
    _euclidean(ring)
    A = rows
    L = [list(r) for r in identity_rows(ring, m)]
    R = [list(r) for r in identity_rows(ring, n)]
    size = ring.euclid_size

    # Invariant: M == L @ A @ R.
    def row_add(i, j, q):  # row_i(A) += q row_j(A)
        A[i] = [x + q * y for x, y in zip(A[i], A[j])]
        for r in L:
            r[j] = r[j] - q * r[i]

    def col_add(i, j, q):  # col_j(A) += q col_i(A)
        for r in A:
            r[j] = r[j] + q * r[i]
        R[i] = [x - q * y for x, y in zip(R[i], R[j])]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        for r in L:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        R[i], R[j] = R[j], R[i]

    def row_scale(i, u, u_inv):
        A[i] = [u * x for x in A[i]]
        for r in L:
            r[i] = r[i] * u_inv

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    e = A[i][j]
                    if not e.is_zero and (best is None or size(e) < best[0]):
                        best = (size(e), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if not A[i][t].is_zero:
                    q, r = ring.euclid_divmod(A[i][t], p)
                    row_add(i, t, -q)
                    dirty |= not r.is_zero
            for j in range(t + 1, n):
                if not A[t][j].is_zero:
                    q, r = ring.euclid_divmod(A[t][j], p)
                    col_add(t, j, -q)
                    dirty |= not r.is_zero
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if divides(p, A[i][j]) is None),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, ring.one)
        u = ring.normal_unit(A[t][t])
        if u != 1:
            row_scale(t, u, is_unit(u))
    return SnfResult(tuple(map(tuple, L)), tuple(map(tuple, A)), tuple(map(tuple, R)))


def _mat2(rows) -> Mat2:
    return Mat2.from_rows(rows)


# -- witness synthesis -------------------------------------------------------


def simple_extension_witness(A: Mat2) -> Witness:
    """Simple extension of a unimodular matrix via its Smith form.

    ``A = U diag(1, d) V``; the quad ``(1, 0, 0, 1)`` works for ``diag(1, d)``
    and is transported to ``A``.
    """
    _euclidean(A.ring)
    if is_unimodular2(A) is None:
        raise NotUnimodular(f"{A} is not unimodular")
    snf = smith_normal_form(A)
    D = _mat2(snf.D)
    ring = A.ring
    base = Witness(Role.SIMPLE_EXTENSION, D, (ring.one, ring.zero, ring.zero, ring.one))
    w = transport_witness(D, _mat2(snf.U), _mat2(snf.V), base)
    assert w.target == A
    return w


@dataclass(frozen=True)
class DetLiftResult:
    witness: Witness
    lift: Mat2


def det_lift_witness(A: Mat2) -> DetLiftResult:
    """Quad with ``ax+by+cz+dw = 1``, ``xw = yz`` and the unimodular zero-determinant lift."""
    simple = simple_extension_witness(A)
    w = Witness(Role.DET_LIFT, A, rho_witness(simple.quad))
    B = lift_matrix(A, w.quad)
    assert B.det().is_zero
    assert is_unimodular2(B) is not None
    assert congruent_mod(B, A, A.det())
    return DetLiftResult(w, B)


# -- non-full factorization -----------------------------------------------------


@dataclass(frozen=True)
class NonFullFactorization:
    col: tuple[Elem, Elem]
    row: tuple[Elem, Elem]

    def product(self) -> Mat2:
        (l, m), (o, q) = self.col, self.row
        return Mat2(l * o, l * q, m * o, m * q)


def nonfull_factor(M: Mat2) -> NonFullFactorization:
    """Write a determinant-zero matrix as ``(l, m)^T (o, q)``."""
    ring = M.ring
    _euclidean(ring)
    if not M.det().is_zero:
        raise NonzeroDeterminant(f"det({M}) = {M.det()}")
    a, b, c, d = M.entries
    z = ring.zero
    if all(e.is_zero for e in M.entries):
        return NonFullFactorization((z, z), (z, z))
    if a.is_zero and b.is_zero:
        return NonFullFactorization((z, ring.one), (c, d))
    g = extended_gcd(a, b)[0]
    o, q = divides(g, a), divides(g, b)
    # gcd(o, q) = 1 and o*d = q*c, so o | c (or o = 0 and q is a unit)
    m = divides(o, c) if not o.is_zero else divides(q, d)
    f = NonFullFactorization((g, m), (o, q))
    assert f.product() == M
    return f


# -- Hensel determinant lifting -----------------------------------------------


@dataclass(frozen=True)
class HenselLift:
    t: int
    iterations: int
    B: Mat2
    ladder: tuple[Mat2, ...]  # B_0 = A, B_1, ..., B_k

    @property
    def precision_exponent(self) -> int:
        return 2**self.iterations

    @property
    def modulus(self) -> int:
        return self.t**self.precision_exponent


def hensel_det_lift(A: Mat2, t: int, k: int) -> HenselLift:
    """Precision-doubling lift: ``B_k = A (mod t)`` and ``det(B_k) = 0 (mod t^(2^k))``.

    Step ``n -> n+1`` with ``T = t^(2^n)`` and ``s = det(B_n)/T`` adds ``T M``
    where ``aw + dx - bz - cy = -s (mod T)``, since
    ``det(B + T M) = det B + T (aw + dx - bz - cy) + T^2 det M``.
    Entries are kept in ``[0, t^(2^(n+1)))``.
    """
    ring = A.ring
    if not isinstance(ring, IntegerRing):
        raise UnsupportedRing("Hensel lifting is implemented over Z")
    if isinstance(t, Elem):
        t = t.value
    if t < 2:
        raise PreconditionFailed("t must be >= 2")
    if k < 1:
        raise PreconditionFailed("need at least one iteration")
    if is_unimodular2(A) is None:
        raise NotUnimodular(f"{A} is not unimodular")
    if A.det().value % t:
        raise NotDivisible(f"{t} does not divide det = {A.det()}")
    B = A
    ladder = [A]
    T = t
    for _ in range(k):
        a, b, c, d = B.entries
        s = B.det().value // T
        coeffs = ideal_contains_one([d, -c, -b, a, ring(T)])
        x, y, z, w = (e * (-s) for e in coeffs[:4])
        T2 = T * T
        B = (B + Mat2(x, y, z, w).scale(ring(T))).map(lambda e: ring(e.value % T2))
        assert B.det().value % T2 == 0
        ladder.append(B)
        T = T2
    return HenselLift(t, k, B, tuple(ladder))
