"""Exhaustive decision procedures over finite rings.

Every decider scans quads in the fixed order of :mod:`detlift.tables` (``x``
fastest) and returns the first witness found.  Weak liftability is decided from
its definition by scanning lifted matrices, never through ``phi``, so that the
``phi`` criteria can be checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .construct import Quad, Role, Witness, lift_matrix, phi_eval
from .errors import BudgetExceeded, InfiniteRing, NotUnimodular, PreconditionFailed
from .mat import Mat2
from .rings import Elem, Ring


# Scans visit |R|^4 quads per matrix; 32^4 is about a million.
SCAN_LIMIT = 32


def _tables(ring: Ring):
    if not ring.is_finite:
        raise InfiniteRing(f"{ring} is infinite")
    if ring.cardinality > SCAN_LIMIT:
        raise BudgetExceeded(f"{ring} has {ring.cardinality} elements; exhaustive scans stop at {SCAN_LIMIT}")
    return ring.tables


class _Scan:
    """Index-coded view of one matrix for vectorized quad scans."""

    def __init__(self, A: Mat2, require_unimodular: bool = True):
        self.A = A
        self.ring = A.ring
        T = self.T = _tables(A.ring)
        self.a, self.b, self.c, self.d = (A.ring.index(e) for e in A.entries)
        self.det = int(T.sub[T.mul[self.a, self.d], T.mul[self.b, self.c]])
        self.unimodular = bool(T.unimodular(self.a, self.b, self.c, self.d))
        if require_unimodular and not self.unimodular:
            raise NotUnimodular(f"{A} is not unimodular")

    def first(self, mask_fn: Callable[[slice], np.ndarray]) -> Optional[int]:
        for lo, hi in self.T.chunks:
            mask = mask_fn(slice(lo, hi))
            i = int(np.argmax(mask))
            if mask[i]:
                return lo + i
        return None

    def quad(self, k: int) -> Quad:
        x, y, z, w = (self.ring.element(int(q[k])) for q in self.T.quads)
        return (x, y, z, w)

    # forms on a slice of quads
    def linear(self, s):
        T = self.T
        x, y, z, w = (q[s] for q in T.quads)
        mul, add = T.mul, T.add
        return add[add[mul[self.a][x], mul[self.b][y]], add[mul[self.c][z], mul[self.d][w]]]

    def simple(self, s):
        T = self.T
        qp = T.quad_products
        mul, add = T.mul, T.add
        return add[
            add[mul[self.a][qp["xw"][s]], mul[self.b][qp["xz"][s]]],
            add[mul[self.c][qp["yw"][s]], mul[self.d][qp["yz"][s]]],
        ]

    def phi(self, s):
        T = self.T
        return T.sub[T.add[T.one, T.mul[self.det][T.quad_products["det"][s]]], self.linear(s)]

    def lifted(self, s):
        """Entries of ``A + det(A) C_quad`` on a slice."""
        T = self.T
        x, y, z, w = (q[s] for q in T.quads)
        m = T.mul[self.det]
        return (
            T.sub[self.a, m[w]],
            T.add[self.b, m[z]],
            T.add[self.c, m[y]],
            T.sub[self.d, m[x]],
        )

    def det_zero(self, e1, e2, e3, e4):
        T = self.T
        return T.sub[T.mul[e1, e4], T.mul[e2, e3]] == 0


def decide_simply_extendable(A: Mat2) -> Optional[Witness]:
    """First quad with ``axw + bxz + cyw + dyz = 1``."""
    sc = _Scan(A)
    k = sc.first(lambda s: sc.simple(s) == sc.T.one)
    return None if k is None else Witness(Role.SIMPLE_EXTENSION, A, sc.quad(k))


def decide_extendable(A: Mat2) -> Optional[Witness]:
    """First quad for which ``1 - simple_form`` is a multiple of ``det(A)``; ``v`` is the quotient."""
    sc = _Scan(A)
    T = sc.T
    quot = T.quot[sc.det]

    def mask(s):
        return quot[T.sub[T.one, sc.simple(s)]] >= 0

    k = sc.first(mask)
    if k is None:
        return None
    rest = int(T.sub[T.one, sc.simple(slice(k, k + 1))[0]])
    v = A.ring.element(int(quot[rest]))
    return Witness(Role.EXTENSION, A, sc.quad(k), v=v)


def decide_det_liftable(A: Mat2) -> Optional[Witness]:
    """First quad with ``ax + by + cz + dw = 1`` and ``xw - yz = 0``."""
    sc = _Scan(A)
    T = sc.T
    qdet = T.quad_products["det"]
    k = sc.first(lambda s: (sc.linear(s) == T.one) & (qdet[s] == 0))
    return None if k is None else Witness(Role.DET_LIFT, A, sc.quad(k))


def _lift_search(A: Mat2, unimodular_lift: bool, singular_c: bool, unimodular_c: bool):
    sc = _Scan(A)
    T = sc.T
    qdet = T.quad_products["det"]
    xs, ys, zs, ws = T.quads

    def mask(s):
        e = sc.lifted(s)
        m = sc.det_zero(*e)
        if unimodular_lift:
            m &= T.unimodular(*e)
        if singular_c:
            m &= qdet[s] == 0
        if unimodular_c:
            # C = [[-w, z], [y, -x]] generates the same ideal as (x, y, z, w)
            m &= T.unimodular(xs[s], ys[s], zs[s], ws[s])
        return m

    k = sc.first(mask)
    if k is None:
        return None
    quad = sc.quad(k)
    return Witness(Role.WEAK_LIFT_MATRIX, A, quad, matrix=lift_matrix(A, quad))


def decide_det_liftable_direct(A: Mat2) -> Optional[Witness]:
    """First unimodular ``B = A + det(A) C_quad`` with ``det(B) = 0``."""
    return _lift_search(A, unimodular_lift=True, singular_c=False, unimodular_c=False)


def decide_lift_unimodular_companion(A: Mat2) -> Optional[Witness]:
    """Unimodular ``C`` with ``det(C) = 0`` and ``A + det(A) C`` unimodular of determinant 0."""
    return _lift_search(A, unimodular_lift=True, singular_c=True, unimodular_c=True)


def decide_lift_singular_companion(A: Mat2) -> Optional[Witness]:
    """Any ``C`` with ``det(C) = det(A + det(A) C) = 0``."""
    return _lift_search(A, unimodular_lift=False, singular_c=True, unimodular_c=False)


def decide_weakly_det_liftable(A: Mat2) -> Optional[Witness]:
    """First ``B = A + det(A) C_quad`` with ``det(B) = 0``.

    For invertible ``A`` congruence modulo a unit is vacuous and the zero matrix
    is returned directly.
    """
    sc = _Scan(A)
    inv = sc.T.inv[sc.det]
    if inv >= 0:
        u = A.ring.element(int(inv))
        # C = -A / det(A), i.e. w = u a, z = -u b, y = -u c, x = u d
        quad = (u * A.d, -(u * A.c), -(u * A.b), u * A.a)
        return Witness(Role.WEAK_LIFT_MATRIX, A, quad, matrix=lift_matrix(A, quad))
    return _lift_search(A, unimodular_lift=False, singular_c=False, unimodular_c=False)


def phi_root_search(A: Mat2) -> Optional[Witness]:
    """First quad with ``phi = 0`` (the ring need not be reduced)."""
    sc = _Scan(A, require_unimodular=False)
    k = sc.first(lambda s: sc.phi(s) == 0)
    return None if k is None else Witness(Role.PHI_ROOT, A, sc.quad(k))


def phi_attains_nilpotent(A: Mat2) -> bool:
    """Whether some quad makes ``phi`` nilpotent."""
    sc = _Scan(A, require_unimodular=False)
    nil = sc.T.nilpotent
    return sc.first(lambda s: nil[sc.phi(s)]) is not None


def refine_phi_root(A: Mat2, quad) -> Optional[Quad]:
    """Search ``quad + (R phi(quad))^4`` for a root of ``phi``.

    Requires ``phi(quad)`` nonzero with square zero.
    """
    ring = A.ring
    T = _tables(ring)
    quad = tuple(ring(q) for q in quad)
    f = phi_eval(A, quad)
    if f.is_zero or not (f * f).is_zero:
        raise PreconditionFailed(f"phi(quad) = {f} is not a nonzero element of square zero")
    fi = ring.index(f)
    multiples = np.unique(T.mul[fi])  # R*phi, ascending element order
    m = len(multiples)
    k = np.arange(m**4)
    offs = [multiples[k // m**i % m] for i in range(4)]
    base = [ring.index(q) for q in quad]
    x, y, z, w = (T.add[b, o] for b, o in zip(base, offs))
    a, b, c, d = (ring.index(e) for e in A.entries)
    det = int(T.sub[T.mul[a, d], T.mul[b, c]])
    mul, add = T.mul, T.add
    lin = add[add[mul[a][x], mul[b][y]], add[mul[c][z], mul[d][w]]]
    phi = T.sub[add[T.one, mul[det][T.sub[mul[x, w], mul[y, z]]]], lin]
    hits = np.flatnonzero(phi == 0)
    if not len(hits):
        return None
    j = hits[0]
    return tuple(ring.element(int(v[j])) for v in (x, y, z, w))  # type: ignore[return-value]


def annihilator_criterion(A: Mat2, quad) -> bool:
    """``phi in phi * b`` where ``b`` is the ideal of entries of ``B_{A,quad}``."""
    ring = A.ring
    T = _tables(ring)
    f = ring.index(phi_eval(A, quad))
    B = lift_matrix(A, quad)
    ideal = T.ideal_members[T.ideal_of([ring.index(e) for e in B.entries])]
    return bool((T.mul[f][ideal] == f).any())


def first_square_zero_phi(A: Mat2) -> Optional[Quad]:
    """First quad with ``phi`` nonzero of square zero and ``B_{A,quad}`` not unimodular."""
    sc = _Scan(A, require_unimodular=False)
    T = sc.T

    def mask(s):
        f = sc.phi(s)
        e = sc.lifted(s)
        return (f != 0) & (T.mul[f, f] == 0) & ~T.unimodular(*e)

    k = sc.first(mask)
    return None if k is None else sc.quad(k)


# -- classification ------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    matrix: Mat2
    unimodular: bool
    det: Elem
    det_is_nilpotent: bool
    det_is_zero_divisor: bool
    simply_extendable: Optional[Witness] = None
    extendable: Optional[Witness] = None
    det_liftable: Optional[Witness] = None
    det_liftable_direct: Optional[Witness] = None
    lift_unimodular_companion: Optional[Witness] = None
    lift_singular_companion: Optional[Witness] = None
    weakly_det_liftable: Optional[Witness] = None
    phi_root: Optional[Witness] = None

    WITNESS_FIELDS = (
        "simply_extendable",
        "extendable",
        "det_liftable",
        "det_liftable_direct",
        "lift_unimodular_companion",
        "lift_singular_companion",
        "weakly_det_liftable",
        "phi_root",
    )

    def to_dict(self) -> dict:
        out = {
            "matrix": [[str(e) for e in r] for r in self.matrix.rows],
            "unimodular": self.unimodular,
            "det": str(self.det),
            "det_is_nilpotent": self.det_is_nilpotent,
            "det_is_zero_divisor": self.det_is_zero_divisor,
        }
        for name in self.WITNESS_FIELDS:
            w = getattr(self, name)
            out[name] = None if w is None else w.to_dict()
        return out


def classify(A: Mat2) -> Classification:
    sc = _Scan(A, require_unimodular=False)
    T = sc.T
    base = dict(
        matrix=A,
        unimodular=sc.unimodular,
        det=A.ring.element(sc.det),
        det_is_nilpotent=bool(T.nilpotent[sc.det]),
        det_is_zero_divisor=bool(T.zero_divisor[sc.det]),
    )
    if not sc.unimodular:
        return Classification(**base)
    return Classification(
        **base,
        simply_extendable=decide_simply_extendable(A),
        extendable=decide_extendable(A),
        det_liftable=decide_det_liftable(A),
        det_liftable_direct=decide_det_liftable_direct(A),
        lift_unimodular_companion=decide_lift_unimodular_companion(A),
        lift_singular_companion=decide_lift_singular_companion(A),
        weakly_det_liftable=decide_weakly_det_liftable(A),
        phi_root=phi_root_search(A),
    )


# -- ring-level scans ------------------------------------------------------------


@dataclass(frozen=True)
class WJ21Report:
    holds: bool
    counterexample: Optional[tuple[Elem, ...]] = None  # (a, b, c, d, Psi, Delta)

    def to_dict(self) -> dict:
        ce = None if self.counterexample is None else [str(e) for e in self.counterexample]
        return {"holds": self.holds, "counterexample": ce}


def wj21_check(ring: Ring) -> WJ21Report:
    """For all unimodular ``(a, b, c, d)`` and all ``(Psi, Delta)``, solve
    ``ax + by + cz + dw = Psi`` and ``xw - yz = Delta``.

    Solvability is unchanged by ``A -> P A Q`` (it rescales ``Delta`` by a unit)
    and by transposition, so one matrix per orbit is checked.  Each orbit is
    represented by its first member, hence the reported counterexample is the
    first failing matrix in enumeration order.
    """
    T = _tables(ring)
    n = T.n
    x, y, z, w = T.quads
    qdet = T.quad_products["det"]
    mul, add = T.mul, T.add
    va, vb, vc, vd = T.matrices()
    um = T.unimodular(va, vb, vc, vd)
    labels = T.orbit_labels
    reps = np.flatnonzero(um & (labels == np.arange(len(labels))))
    for k in reps:
        a, b, c, d = int(va[k]), int(vb[k]), int(vc[k]), int(vd[k])
        lin = add[add[mul[a][x], mul[b][y]], add[mul[c][z], mul[d][w]]]
        seen = np.bincount(lin * n + qdet, minlength=n * n)
        if (seen == 0).any():
            miss = int(np.argmax(seen == 0))
            psi, delta = divmod(miss, n)
            ce = tuple(ring.element(i) for i in (a, b, c, d, psi, delta))
            return WJ21Report(False, ce)
    return WJ21Report(True)


def wj21_check_naive(ring: Ring) -> WJ21Report:
    """Unreduced version of :func:`wj21_check`, scanning every unimodular matrix."""
    T = _tables(ring)
    n = T.n
    x, y, z, w = T.quads
    qdet = T.quad_products["det"]
    mul, add = T.mul, T.add
    va, vb, vc, vd = T.matrices()
    for k in np.flatnonzero(T.unimodular(va, vb, vc, vd)):
        a, b, c, d = int(va[k]), int(vb[k]), int(vc[k]), int(vd[k])
        lin = add[add[mul[a][x], mul[b][y]], add[mul[c][z], mul[d][w]]]
        seen = np.bincount(lin * n + qdet, minlength=n * n)
        if (seen == 0).any():
            miss = int(np.argmax(seen == 0))
            psi, delta = divmod(miss, n)
            return WJ21Report(False, tuple(ring.element(i) for i in (a, b, c, d, psi, delta)))
    return WJ21Report(True)


def zero_det_all_nonfull(ring: Ring) -> tuple[bool, Optional[Mat2]]:
    """Whether every determinant-zero matrix over ``ring`` is a column times a row."""
    T = _tables(ring)
    n = T.n
    l, m, o, q = T.quads
    mul = T.mul
    outer = ((mul[l, o] * n + mul[l, q]) * n + mul[m, o]) * n + mul[m, q]
    hit = np.zeros(n**4, dtype=bool)
    hit[outer] = True
    a, b, c, d = T.matrices()
    singular = T.sub[mul[a, d], mul[b, c]] == 0
    bad = np.flatnonzero(singular & ~hit)
    if len(bad):
        k = bad[0]
        e = ring.element
        return False, Mat2(e(int(a[k])), e(int(b[k])), e(int(c[k])), e(int(d[k])))
    return True, None


def is_hermite(ring: Ring) -> bool:
    """Every pair is a multiple of a unimodular pair."""
    T = _tables(ring)
    n = T.n
    k = np.arange(n * n)
    p, q = k // n, k % n
    um = T.unimodular_pair(p, q)
    p, q = p[um], q[um]
    hit = np.zeros(n * n, dtype=bool)
    for e in range(n):
        hit[T.mul[e][p] * n + T.mul[e][q]] = True
    return bool(hit.all())


def stable_range_at_most_2(ring: Ring) -> bool:
    """For unimodular ``(a, b, c)`` some ``(a + cx, b + cy)`` is unimodular."""
    T = _tables(ring)
    n = T.n
    k = np.arange(n * n)
    xs, ys = k % n, k // n
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if not T.ideal_has_one[T.ideal_of([a, b, c])]:
                    continue
                if not T.unimodular_pair(T.add[a, T.mul[c][xs]], T.add[b, T.mul[c][ys]]).any():
                    return False
    return True


# -- batched classification of a whole ring ----------------------------------------

BATCH_PROPERTIES = (
    "simply_extendable",
    "extendable",
    "det_liftable",
    "det_liftable_direct",
    "lift_unimodular_companion",
    "lift_singular_companion",
    "weakly_det_liftable",
    "phi_root",
    "phi_nilpotent",
)

_CELLS = 1 << 20  # matrix-by-quad cells evaluated per numpy step


def _batch_chunks(total: int) -> list[tuple[int, int]]:
    """Quad ranges growing from 256 to 4096, then fixed 4096-wide steps."""
    cuts, c, width = [0], 0, 256
    while c < total:
        c = min(total, c + width)
        cuts.append(c)
        width = min(2 * width, 4096)
    return list(zip(cuts[:-1], cuts[1:]))


@dataclass
class RingClassification:
    """Index-coded classification of every unimodular matrix of a finite ring.

    ``matrices`` holds flat matrix indices (see :meth:`FiniteTables.matrices`);
    ``hits[name][i]`` is the flat index of the first witnessing quad for matrix
    ``i`` or ``-1``.  The quads agree with what the single-matrix deciders return.
    """

    ring: Ring
    total: int
    matrices: np.ndarray
    det: np.ndarray
    hits: dict

    def present(self, name: str) -> np.ndarray:
        return self.hits[name] >= 0

    def matrix(self, i: int) -> Mat2:
        T = self.ring.tables
        k = int(self.matrices[i])
        e = self.ring.element
        return Mat2(*(e(int(v[k])) for v in T.matrices()))


def _batch_masks(T, a, b, c, d, det, x, y, z, w, qp):
    """Lazily evaluated 2-D masks, matrices along axis 0 and quads along axis 1."""
    mul, add, sub = T.mul, T.add, T.sub
    cache = {}

    def get(key, fn):
        if key not in cache:
            cache[key] = fn()
        return cache[key]

    def linear():
        return get("lin", lambda: add[add[mul[a, x], mul[b, y]], add[mul[c, z], mul[d, w]]])

    def simple():
        return get(
            "simple",
            lambda: add[add[mul[a, qp["xw"]], mul[b, qp["xz"]]], add[mul[c, qp["yw"]], mul[d, qp["yz"]]]],
        )

    def phi():
        return get("phi", lambda: sub[add[T.one, mul[det, qp["det"]]], linear()])

    def lifted():
        def build():
            m = lambda q: mul[det, q]  # noqa: E731
            return sub[a, m(w)], add[b, m(z)], add[c, m(y)], sub[d, m(x)]

        return get("lifted", build)

    def lift_singular():
        def build():
            e1, e2, e3, e4 = lifted()
            return sub[mul[e1, e4], mul[e2, e3]] == 0

        return get("lift_singular", build)

    def lift_unimodular():
        return get("lift_um", lambda: T.unimodular(*lifted()))

    one = T.one
    quot = T.quot
    return {
        "simply_extendable": lambda: simple() == one,
        "extendable": lambda: quot[det, sub[one, simple()]] >= 0,
        "det_liftable": lambda: (linear() == one) & (qp["det"] == 0),
        "det_liftable_direct": lambda: lift_singular() & lift_unimodular(),
        "lift_unimodular_companion": lambda: lift_singular()
        & lift_unimodular()
        & (qp["det"] == 0)
        & T.unimodular(x, y, z, w),
        "lift_singular_companion": lambda: lift_singular() & (qp["det"] == 0),
        "weakly_det_liftable": lift_singular,
        "phi_root": lambda: phi() == 0,
        "phi_nilpotent": lambda: T.nilpotent[phi()],
        "square_zero_phi": lambda: (phi() != 0) & (mul[phi(), phi()] == 0) & ~lift_unimodular(),
    }


def first_hits(ring: Ring, matrices: np.ndarray, names, quad_limit: Optional[int] = None) -> dict:
    """For each flat matrix index, the first quad satisfying each named mask (or -1)."""
    T = _tables(ring)
    n = T.n
    va, vb, vc, vd = T.matrices()
    a, b, c, d = va[matrices], vb[matrices], vc[matrices], vd[matrices]
    det = T.sub[T.mul[a, d], T.mul[b, c]]
    qs = T.quads
    qp = T.quad_products
    limit = n**4 if quad_limit is None else min(quad_limit, n**4)
    out = {name: np.full(len(matrices), -1, dtype=np.intp) for name in names}
    for name in names:
        todo = np.arange(len(matrices))
        if name == "weakly_det_liftable":
            # invertible determinant: C = -A/det(A) gives the zero matrix
            inv = T.inv[det]
            unit = inv >= 0
            u = inv[unit]
            x = T.mul[u, d[unit]]
            y = T.neg[T.mul[u, c[unit]]]
            z = T.neg[T.mul[u, b[unit]]]
            w = T.mul[u, a[unit]]
            out[name][unit] = x + n * (y + n * (z + n * w))
            todo = todo[~unit]
        for lo, hi in _batch_chunks(n**4):
            if lo >= limit or not len(todo):
                break
            hi = min(hi, limit)
            step = max(1, _CELLS // (hi - lo))
            sl = slice(lo, hi)
            x, y, z, w = (q[None, sl] for q in qs)
            qps = {k: v[None, sl] for k, v in qp.items()}
            found = []
            for s in range(0, len(todo), step):
                idx = todo[s:s + step]
                col = lambda v: v[idx, None]  # noqa: E731
                masks = _batch_masks(T, col(a), col(b), col(c), col(d), col(det), x, y, z, w, qps)
                mask = masks[name]()
                first = mask.argmax(axis=1)
                ok = mask[np.arange(len(idx)), first]
                out[name][idx[ok]] = lo + first[ok]
                found.append(idx[ok])
            if found:
                todo = np.setdiff1d(todo, np.concatenate(found), assume_unique=True)
    return out


def classify_ring(ring: Ring) -> RingClassification:
    """Run every decider on every unimodular matrix of ``ring`` at once."""
    T = _tables(ring)
    va, vb, vc, vd = T.matrices()
    um = np.flatnonzero(T.unimodular(va, vb, vc, vd))
    det = T.sub[T.mul[va[um], vd[um]], T.mul[vb[um], vc[um]]]
    hits = first_hits(ring, um, BATCH_PROPERTIES)
    return RingClassification(ring, T.n**4, um, det, hits)


def witness_from_hit(A: Mat2, name: str, k: int) -> Optional[Witness]:
    """Rebuild the verified witness that a batched hit stands for."""
    if k < 0:
        return None
    T = _tables(A.ring)
    quad = tuple(A.ring.element(int(q[k])) for q in T.quads)
    if name == "simply_extendable":
        return Witness(Role.SIMPLE_EXTENSION, A, quad)
    if name == "extendable":
        sc = _Scan(A)
        rest = int(T.sub[T.one, sc.simple(slice(k, k + 1))[0]])
        return Witness(Role.EXTENSION, A, quad, v=A.ring.element(int(T.quot[sc.det, rest])))
    if name == "det_liftable":
        return Witness(Role.DET_LIFT, A, quad)
    if name in ("phi_root",):
        return Witness(Role.PHI_ROOT, A, quad)
    if name in (
        "det_liftable_direct",
        "lift_unimodular_companion",
        "lift_singular_companion",
        "weakly_det_liftable",
    ):
        return Witness(Role.WEAK_LIFT_MATRIX, A, quad, matrix=lift_matrix(A, quad))
    raise ValueError(f"no witness role for {name}")


def refinement_cases(ring: Ring, matrices: np.ndarray, quads: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`refine_phi_root` presence and :func:`annihilator_criterion`.

    ``matrices`` and ``quads`` are aligned flat indices of pairs whose ``phi``
    value is nonzero of square zero.  Returns ``(root_found, criterion)``.
    """
    T = _tables(ring)
    n = T.n
    mul, add, sub = T.mul, T.add, T.sub
    va, vb, vc, vd = T.matrices()
    a, b, c, d = va[matrices], vb[matrices], vc[matrices], vd[matrices]
    det = sub[mul[a, d], mul[b, c]]
    x, y, z, w = (q[quads] for q in T.quads)

    def phi_of(a, b, c, d, det, x, y, z, w):
        lin = add[add[mul[a, x], mul[b, y]], add[mul[c, z], mul[d, w]]]
        return sub[add[T.one, mul[det, sub[mul[x, w], mul[y, z]]]], lin]

    f = phi_of(a, b, c, d, det, x, y, z, w)
    if ((f == 0) | (mul[f, f] != 0)).any():
        raise PreconditionFailed("every phi value must be nonzero of square zero")
    # phi in phi * (entries of the lift)
    e = (sub[a, mul[det, w]], add[b, mul[det, z]], add[c, mul[det, y]], sub[d, mul[det, x]])
    ideal = T.ideal_sum[T.pair_ideal[e[0], e[1]], T.pair_ideal[e[2], e[3]]]
    member = np.zeros((len(T.ideal_members), n), dtype=bool)
    for i, mem in enumerate(T.ideal_members):
        member[i] = (mul[:, mem] == np.arange(n)[:, None]).any(axis=1)
    criterion = member[ideal, f]
    found = np.zeros(len(f), dtype=bool)
    for fv in np.unique(f):
        sel = np.flatnonzero(f == fv)
        mult = np.unique(mul[fv])
        m = len(mult)
        k = np.arange(m**4)
        offs = [mult[k // m**i % m][None, :] for i in range(4)]
        col = lambda v: v[sel, None]  # noqa: E731
        px, py, pz, pw = (add[col(q), o] for q, o in zip((x, y, z, w), offs))
        ph = phi_of(col(a), col(b), col(c), col(d), col(det), px, py, pz, pw)
        found[sel] = (ph == 0).any(axis=1)
    return found, criterion
