from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from detlift import finite
from detlift.census import enumerate_um2
from detlift.construct import lift_matrix, linear_form, phi_eval, quad_det, simple_form
from detlift.errors import BudgetExceeded, InfiniteRing, NotUnimodular, PreconditionFailed
from detlift.finite import (
    annihilator_criterion,
    classify,
    classify_ring,
    decide_det_liftable,
    decide_det_liftable_direct,
    decide_extendable,
    decide_simply_extendable,
    decide_weakly_det_liftable,
    first_square_zero_phi,
    phi_attains_nilpotent,
    phi_root_search,
    refine_phi_root,
    refinement_cases,
    witness_from_hit,
    wj21_check,
    wj21_check_naive,
)
from detlift.mat import Mat2, is_unimodular2
from detlift.rings import elements, is_unit
from detlift.ringspec import parse_matrix2, parse_ring

Z2, Z4 = parse_ring("Z/2"), parse_ring("Z/4")
A4 = parse_matrix2("[[1,0],[0,2]]", Z4)


def _vals(q):
    return tuple(e.value for e in q)


# -- spec examples ------------------------------------------------------------------


def test_simply_extendable_examples():
    assert _vals(decide_simply_extendable(parse_matrix2("[[1,0],[0,0]]", Z2)).quad) == (1, 0, 0, 1)
    w = decide_simply_extendable(Mat2.identity(Z2))
    assert w is not None and simple_form(Mat2.identity(Z2), (1, 0, 0, 1)) == 1
    assert decide_simply_extendable(A4) is not None
    assert simple_form(A4, (1, 0, 0, 1)) == 1


def test_extendable_examples():
    w = decide_extendable(parse_matrix2("[[1,0],[0,0]]", Z2))
    assert _vals(w.quad) == (1, 0, 0, 1) and w.v == 0
    Z5 = parse_ring("Z/5")
    A = parse_matrix2("[[2,1],[1,3]]", parse_ring("Z/7"))
    w = decide_extendable(A)
    assert _vals(w.quad) == (0, 0, 0, 0) and w.v == is_unit(A.det())
    B = parse_matrix2("[[1,2],[3,3]]", Z5)
    assert decide_extendable(B).v * B.det() == 1


def test_det_liftable_examples():
    assert _vals(decide_det_liftable(A4).quad) == (1, 0, 0, 0)
    for spec in ["Z/2", "Z/6", "GF(2)[x]/(x^2)", "Z/2 x Z/3"]:
        ring = parse_ring(spec)
        assert _vals(decide_det_liftable(Mat2.identity(ring)).quad) == _vals((ring.one, ring.zero, ring.zero, ring.zero))
    # every determinant-zero unimodular matrix is det liftable
    for spec in ["Z/4", "Z/6", "GF(2)[x]/(x^2)", "Z/2 x Z/2"]:
        for A in enumerate_um2(parse_ring(spec)):
            if A.det().is_zero:
                assert decide_det_liftable(A) is not None


def test_det_liftable_direct_examples():
    w = decide_det_liftable_direct(A4)
    assert w.matrix == parse_matrix2("[[1,0],[0,0]]", Z4)
    Z3 = parse_ring("Z/3")
    w = decide_det_liftable_direct(Mat2.identity(Z3))
    assert w.matrix.det() == 0 and is_unimodular2(w.matrix) is not None
    S = parse_matrix2("[[1,2],[2,0]]", Z4)  # det = -4 = 0
    assert decide_det_liftable_direct(S).matrix == S


def test_weakly_det_liftable_examples():
    assert decide_weakly_det_liftable(A4).matrix == parse_matrix2("[[1,0],[0,0]]", Z4)
    I3 = Mat2.identity(parse_ring("Z/3"))
    assert decide_weakly_det_liftable(I3).matrix == Mat2.zero(I3.ring)
    for A in enumerate_um2(Z4):
        if decide_det_liftable_direct(A) is not None:
            assert decide_weakly_det_liftable(A) is not None


def test_phi_root_examples():
    assert _vals(phi_root_search(A4).quad) == (1, 0, 0, 0)
    I = Mat2.identity(Z4)
    assert phi_root_search(I) is not None
    assert phi_eval(I, (1, 0, 0, 1)).is_zero


def test_refine_phi_root_examples():
    assert _vals(refine_phi_root(A4, (3, 0, 0, 0))) == (1, 0, 0, 0)
    with pytest.raises(PreconditionFailed):
        refine_phi_root(A4, (1, 0, 0, 0))  # phi = 0
    with pytest.raises(PreconditionFailed):
        refine_phi_root(A4, (0, 0, 0, 0))  # phi = 1


@pytest.mark.parametrize("spec", ["Z/2", "Z/4", "GF(3)"])
def test_wj21_examples(spec):
    assert wj21_check(parse_ring(spec)).holds


def test_preconditions():
    with pytest.raises(NotUnimodular):
        decide_det_liftable(parse_matrix2("[[2,0],[0,2]]", Z4))
    with pytest.raises(InfiniteRing):
        decide_det_liftable(parse_matrix2("[[1,0],[0,1]]", parse_ring("Z")))
    with pytest.raises(BudgetExceeded):
        decide_det_liftable(Mat2.identity(parse_ring("Z/1000")))


def test_classification_of_the_z4_example():
    c = classify(A4)
    d = c.to_dict()
    assert d["det"] == "2" and d["det_is_nilpotent"] and d["det_is_zero_divisor"] and d["unimodular"]
    for name in ("simply_extendable", "extendable", "det_liftable", "weakly_det_liftable", "phi_root"):
        assert d[name] is not None
    assert d["det_liftable"]["quad"] == ["1", "0", "0", "0"]
    assert d["simply_extendable"]["quad"] == ["1", "0", "0", "1"]
    nonum = classify(parse_matrix2("[[2,0],[0,2]]", Z4))
    assert not nonum.unimodular and nonum.det_liftable is None


# -- independent oracle over Z/n -----------------------------------------------------------


def _oracle(n: int, a: int, b: int, c: int, d: int) -> dict:
    """First witnesses straight from the definitions with plain integers (x fastest)."""
    import math

    det = (a * d - b * c) % n
    out = dict.fromkeys(("simple", "ext", "lift", "direct", "weak", "phi"))
    for w, z, y, x in itertools.product(range(n), repeat=4):
        q = (x, y, z, w)
        s = (a * x * w + b * x * z + c * y * w + d * y * z) % n
        if out["simple"] is None and s == 1:
            out["simple"] = q
        if out["ext"] is None:
            v = next((v for v in range(n) if (s + det * v) % n == 1), None)
            if v is not None:
                out["ext"] = q + (v,)
        if out["lift"] is None and (a * x + b * y + c * z + d * w) % n == 1 and (x * w - y * z) % n == 0:
            out["lift"] = q
        B = ((a - det * w) % n, (b + det * z) % n, (c + det * y) % n, (d - det * x) % n)
        bdet = (B[0] * B[3] - B[1] * B[2]) % n
        if out["weak"] is None and bdet == 0:
            out["weak"] = q
        g = math.gcd(math.gcd(B[0], B[1]), math.gcd(math.gcd(B[2], B[3]), n))
        if out["direct"] is None and bdet == 0 and g == 1:
            out["direct"] = q
        phi = (1 - a * x - b * y - c * z - d * w + det * (x * w - y * z)) % n
        if out["phi"] is None and phi == 0:
            out["phi"] = q
    return out


def _compare(A: Mat2, want: dict):
    def q(wit):
        return None if wit is None else _vals(wit.quad)

    assert q(decide_simply_extendable(A)) == want["simple"]
    e = decide_extendable(A)
    assert (None if e is None else _vals(e.quad) + (e.v.value,)) == want["ext"]
    assert q(decide_det_liftable(A)) == want["lift"]
    assert q(decide_det_liftable_direct(A)) == want["direct"]
    assert q(phi_root_search(A)) == want["phi"]
    w = decide_weakly_det_liftable(A)
    assert (w is None) == (want["weak"] is None)
    if is_unit(A.det()) is None:
        assert q(w) == want["weak"]


@pytest.mark.parametrize("n", [2, 3])
def test_deciders_match_oracle_exhaustive(n):
    ring = parse_ring(f"Z/{n}")
    for A in enumerate_um2(ring):
        _compare(A, _oracle(n, *(e.value for e in A.entries)))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_deciders_match_oracle_sampled(n):
    ring = parse_ring(f"Z/{n}")
    mats = list(enumerate_um2(ring))
    rng = random.Random(n)
    for A in rng.sample(mats, 25):
        _compare(A, _oracle(n, *(e.value for e in A.entries)))


# -- batched classification agrees with the per-matrix deciders ---------------------------

SINGLE = {
    "simply_extendable": decide_simply_extendable,
    "extendable": decide_extendable,
    "det_liftable": decide_det_liftable,
    "det_liftable_direct": decide_det_liftable_direct,
    "lift_unimodular_companion": finite.decide_lift_unimodular_companion,
    "lift_singular_companion": finite.decide_lift_singular_companion,
    "weakly_det_liftable": decide_weakly_det_liftable,
    "phi_root": phi_root_search,
}


@pytest.mark.parametrize("spec", ["Z/4", "Z/6", "GF(2)[x]/(x^2)", "Z/2 x Z/2", "GF(2)[x]/(x^2+x+1)"])
def test_batch_matches_single_matrix_deciders(spec):
    ring = parse_ring(spec)
    rc = classify_ring(ring)
    for i in range(len(rc.matrices)):
        A = rc.matrix(i)
        for name, fn in SINGLE.items():
            single = fn(A)
            batch = witness_from_hit(A, name, int(rc.hits[name][i]))
            assert single == batch, (A, name)
        assert bool(rc.hits["phi_nilpotent"][i] >= 0) == phi_attains_nilpotent(A)


def test_enumeration_is_deterministic():
    a = [str(A) for A in enumerate_um2(parse_ring("Z/6"))]
    b = [str(A) for A in enumerate_um2(parse_ring("Z/6"))]
    assert a == b
    first = [_vals(decide_det_liftable(A).quad) for A in enumerate_um2(Z4)]
    again = [_vals(decide_det_liftable(A).quad) for A in enumerate_um2(Z4)]
    assert first == again


# -- square-zero refinement ----------------------------------------------------------


@pytest.mark.parametrize("spec", ["Z/4", "GF(2)[x]/(x^2)"])
def test_no_square_zero_phi_with_nonunimodular_lift(spec):
    # the one nonzero nilpotent t has R*t = {0, t}; frozen from an exhaustive scan
    assert all(first_square_zero_phi(A) is None for A in enumerate_um2(parse_ring(spec)))


@pytest.mark.parametrize("spec", ["Z/8", "GF(2)[x]/(x^3)", "Z/2 x GF(2)[x]/(x^2)", "Z/4 x Z/2"])
def test_refinement_vectorized_matches_scalar(spec):
    ring = parse_ring(spec)
    T = ring.tables
    rng = random.Random(spec)
    mats, quads = [], []
    ums = list(enumerate_um2(ring))
    for A in rng.sample(ums, min(len(ums), 60)):
        q = first_square_zero_phi(A)
        if q is None:
            continue
        mats.append(sum(ring.index(e) * len(T.add) ** k for k, e in enumerate(reversed(A.entries))))
        quads.append(sum(ring.index(e) * len(T.add) ** k for k, e in enumerate(q)))
        f = phi_eval(A, q)
        assert not f.is_zero and (f * f).is_zero
        assert is_unimodular2(lift_matrix(A, q)) is None
        r = refine_phi_root(A, q)
        if r is not None:
            assert phi_eval(A, r).is_zero
            # r - q has every entry in R*phi(q)
            mult = {f * e for e in elements(ring)}
            assert all((ri - qi) in mult for ri, qi in zip(r, q))
    assert mats, f"no square-zero phi values sampled over {spec}"
    found, crit = refinement_cases(ring, np.array(mats), np.array(quads))
    for i, (m, k) in enumerate(zip(mats, quads)):
        va, vb, vc, vd = T.matrices()
        A = Mat2(*(ring.element(int(v[m])) for v in (va, vb, vc, vd)))
        q = tuple(ring.element(int(v[k])) for v in T.quads)
        assert bool(found[i]) == (refine_phi_root(A, q) is not None)
        assert bool(crit[i]) == annihilator_criterion(A, q)


def test_refinement_presence_matches_annihilator_z8():
    ring = parse_ring("Z/8")
    for A in enumerate_um2(ring):
        q = first_square_zero_phi(A)
        if q is not None:
            assert (refine_phi_root(A, q) is not None) == annihilator_criterion(A, q)


# -- WJ(2,1) -------------------------------------------------------------------------


@pytest.mark.parametrize("spec", ["Z/2", "Z/3", "Z/4", "Z/6", "GF(2)[x]/(x^2)", "Z/2 x Z/2", "Z/2 x GF(3)"])
def test_wj21_orbit_reduction_matches_naive(spec):
    ring = parse_ring(spec)
    assert wj21_check(ring) == wj21_check_naive(ring)


def _targets(A: Mat2) -> set:
    ring = A.ring
    els = list(elements(ring))
    return {
        (linear_form(A, q), quad_det(q))
        for q in itertools.product(els, repeat=4)
    }


@pytest.mark.parametrize("spec", ["Z/4", "Z/6"])
def test_wj21_targets_invariant_under_equivalence(spec):
    # the orbit reduction relies on: targets(P A Q) = {(psi, u delta)} with u a unit
    ring = parse_ring(spec)
    els = list(elements(ring))
    gl2 = [M for M in (Mat2(*e) for e in itertools.product(els, repeat=4)) if is_unit(M.det()) is not None]
    rng = random.Random(spec)
    mats = list(enumerate_um2(ring))
    for _ in range(12):
        A = rng.choice(mats)
        P, Q = rng.choice(gl2), rng.choice(gl2)
        B = P @ A @ Q
        base = _targets(A)
        moved = _targets(B)
        assert len(base) == len(moved)
        units = [u for u in els if is_unit(u) is not None]
        assert any({(p, u * d) for p, d in base} == moved for u in units)
        At = Mat2(A.a, A.c, A.b, A.d)
        assert _targets(At) == base


def test_orbit_labels_are_orbit_minima():
    ring = parse_ring("Z/6")
    T = ring.tables
    labels = T.orbit_labels
    assert (labels <= np.arange(len(labels))).all()
    assert (labels[labels] == labels).all()
    n = T.n
    els = list(elements(ring))
    gl2 = [M for M in (Mat2(*e) for e in itertools.product(els, repeat=4)) if is_unit(M.det()) is not None]
    rng = random.Random(0)

    def flat(M):
        a, b, c, d = (ring.index(e) for e in M.entries)
        return ((a * n + b) * n + c) * n + d

    for _ in range(500):
        k = rng.randrange(n**4)
        va, vb, vc, vd = T.matrices()
        A = Mat2(*(ring.element(int(v[k])) for v in (va, vb, vc, vd)))
        B = rng.choice(gl2) @ A @ rng.choice(gl2)
        assert flat(A) == k
        assert labels[flat(B)] == labels[k]


# -- ring-level scans ------------------------------------------------------------------


def test_nonfull_scan():
    ok, ce = finite.zero_det_all_nonfull(parse_ring("Z/6"))
    assert ok and ce is None
    ok, ce = finite.zero_det_all_nonfull(Z4)
    assert not ok and ce.det().is_zero
    # the counterexample is no column times row
    els = list(elements(Z4))
    for l, m, o, q in itertools.product(els, repeat=4):
        assert Mat2(l * o, l * q, m * o, m * q) != ce


@pytest.mark.parametrize("spec", ["Z/4", "Z/6", "GF(2)[x]/(x^2)", "Z/2 x Z/2"])
def test_hermite_and_stable_range(spec):
    ring = parse_ring(spec)
    assert finite.is_hermite(ring)
    assert finite.stable_range_at_most_2(ring)
