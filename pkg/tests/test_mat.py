from __future__ import annotations

import itertools
import math
import random

import numpy as np
import pytest

from detlift.errors import MixedRings, ShapeMismatch
from detlift.mat import Mat2, Mat3, adjugate2, congruent_mod, det2, det3, is_unimodular2, mat_mul, trace2
from detlift.rings import divides, elements
from detlift.ringspec import parse_matrix2, parse_matrix3, parse_ring

Z = parse_ring("Z")

RINGS = ["Z", "Z/6", "Z/8", "GF(5)", "GF(2)[x]", "GF(2)[x]/(x^2)", "Z/4 x Z/3"]


def _rand(ring, rng):
    if ring.is_finite:
        return rng.choice(ring.element_list)
    if ring == Z:
        return Z(rng.randint(-10**6, 10**6))
    return ring.poly([rng.randrange(ring.p) for _ in range(rng.randint(0, 4))])


def _rand2(ring, rng):
    return Mat2(*(_rand(ring, rng) for _ in range(4)))


# -- spec examples -------------------------------------------------------------


def test_det_trace_adjugate_examples():
    I = Mat2.identity(Z)
    assert det2(I) == 1 and trace2(I) == 2 and adjugate2(I) == I
    A = parse_matrix2("[[2,1],[1,3]]", Z)
    assert det2(A) == 5
    Z4 = parse_ring("Z/4")
    B = parse_matrix2("[[1,0],[0,2]]", Z4)
    assert det2(B) == 2 and adjugate2(B) == parse_matrix2("[[2,0],[0,1]]", Z4)


def test_det3_and_mat_mul_examples():
    assert det3(Mat3.identity(Z)) == 1
    assert det3(parse_matrix3("[[1,0,0],[0,2,-1],[0,1,0]]", Z)) == 1
    A = parse_matrix2("[[2,1],[1,3]]", Z)
    assert mat_mul(A, adjugate2(A)) == parse_matrix2("[[5,0],[0,5]]", Z)
    with pytest.raises(ShapeMismatch):
        mat_mul(A, Mat3.identity(Z))
    with pytest.raises(MixedRings):
        mat_mul(A, Mat2.identity(parse_ring("Z/5")))


def test_is_unimodular_examples():
    w = is_unimodular2(parse_matrix2("[[2,0],[0,3]]", Z))
    assert w == (-1, 0, 0, 1)
    assert is_unimodular2(parse_matrix2("[[2,4],[6,8]]", Z)) is None
    for spec in RINGS:
        ring = parse_ring(spec)
        assert is_unimodular2(Mat2(ring.zero, ring.zero, ring.zero, ring.one)) == (0, 0, 0, 1)


def test_congruent_mod_examples():
    A = parse_matrix2("[[2,1],[1,3]]", Z)
    assert congruent_mod(A, A, Z(7))
    assert congruent_mod(parse_matrix2("[[2,6],[1,3]]", Z), A, Z(5))
    assert not congruent_mod(parse_matrix2("[[1,0],[0,0]]", Z), Mat2.zero(Z), Z(2))


# -- properties -------------------------------------------------------------------


@pytest.mark.parametrize("spec", RINGS)
def test_adjugate_identity_random(spec):
    ring = parse_ring(spec)
    rng = random.Random(spec)
    for _ in range(10_000):
        A = _rand2(ring, rng)
        dI = Mat2.identity(ring).scale(A.det())
        assert A @ A.adjugate() == dI
        assert A.adjugate() @ A == dI


@pytest.mark.parametrize("spec", RINGS)
def test_det_multiplicative_random(spec):
    ring = parse_ring(spec)
    rng = random.Random("mul" + spec)
    for _ in range(2_000):
        A, B = _rand2(ring, rng), _rand2(ring, rng)
        assert (A @ B).det() == A.det() * B.det()
        M = Mat3([[_rand(ring, rng) for _ in range(3)] for _ in range(3)])
        N = Mat3([[_rand(ring, rng) for _ in range(3)] for _ in range(3)])
        assert (M @ N).det() == M.det() * N.det()


@pytest.mark.parametrize("n", [2, 3, 4, 6, 12])
def test_is_unimodular_matches_gcd(n):
    ring = parse_ring(f"Z/{n}")
    for a, b, c, d in itertools.product(range(n), repeat=4):
        w = is_unimodular2(Mat2.of(ring, a, b, c, d))
        assert (w is not None) == (math.gcd(math.gcd(a, b), math.gcd(math.gcd(c, d), n)) == 1)
        if w is not None:
            x, y, z, ww = w
            assert a * x + b * y + c * z + d * ww == 1


def _all_mats(n):
    k = np.arange(n**4)
    return k // n**3, k // n**2 % n, k // n % n, k % n


def _unimodular_np(n, a, b, c, d):
    g = np.gcd(np.gcd(a, b), np.gcd(np.gcd(c, d), n))
    return g == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_product_unimodular_lemma_exhaustive(n):
    # (2) GE unimodular => G and E unimodular
    # (3) G unimodular and GE = G mod det(G): GE unimodular <=> E unimodular
    a, b, c, d = _all_mats(n)
    um = _unimodular_np(n, a, b, c, d)
    for g in range(n**4):
        ga, gb, gc, gd = a[g], b[g], c[g], d[g]
        pa, pb = (ga * a + gb * c) % n, (ga * b + gb * d) % n
        pc, pd = (gc * a + gd * c) % n, (gc * b + gd * d) % n
        prod_um = _unimodular_np(n, pa, pb, pc, pd)
        assert not (prod_um & ~(um[g] & um)).any()
        if not um[g]:
            continue
        det = int((ga * gd - gb * gc) % n)
        h = math.gcd(det, n)  # R det(G) = multiples of gcd(det, n)
        congruent = ((pa - ga) % h == 0) & ((pb - gb) % h == 0) & ((pc - gc) % h == 0) & ((pd - gd) % h == 0)
        assert (prod_um[congruent] == um[congruent]).all()


@pytest.mark.parametrize("spec", ["Z/2", "Z/3", "Z/4", "GF(2)[x]/(x^2)"])
def test_congruence_iff_adjugate_factorization(spec):
    # H = G (I + adj(G) O) for some O  <=>  H = G mod det(G)
    ring = parse_ring(spec)
    els = list(elements(ring))
    mats = [Mat2(*e) for e in itertools.product(els, repeat=4)]
    I = Mat2.identity(ring)
    for G in mats:
        reach = {G @ (I + G.adjugate() @ O) for O in mats}
        cong = {H for H in mats if congruent_mod(H, G, G.det())}
        assert reach == cong


def test_congruent_mod_matches_divides():
    rng = random.Random(3)
    for _ in range(2_000):
        A, B = _rand2(Z, rng), _rand2(Z, rng)
        g = Z(rng.randint(-20, 20))
        expect = all(divides(g, e) is not None for e in (A - B).entries)
        assert congruent_mod(A, B, g) == expect
