"""Acceptance run: one PASS/FAIL line per criterion, at the required budgets.

Run with ``pytest tests/test_acceptance.py`` (lines are echoed in the summary)
or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager

from sympy import primefactors

from conftest import ACCEPTANCE_LINES
from detlift.bezout import det_lift_witness, hensel_det_lift, nonfull_factor, simple_extension_witness, smith_normal_form
from detlift.census import CLASS_NAMES, enumerate_um2, run_census
from detlift.construct import check_identities, linear_form, quad_det, simple_form
from detlift.errors import DetliftError, ParseError
from detlift.finite import (
    decide_det_liftable,
    decide_det_liftable_direct,
    decide_extendable,
    decide_simply_extendable,
    decide_weakly_det_liftable,
    phi_attains_nilpotent,
    phi_root_search,
    wj21_check_naive,
)
from detlift.mat import Mat2, congruent_mod, det_rows, is_unimodular2, rows_mul
from detlift.rings import divides, elements
from detlift.ringspec import parse_matrix2, parse_ring, parse_ring_spec

LATTICE_RINGS = [f"Z/{n}" for n in range(2, 9)] + [
    "GF(2)[x]/(x^2+x+1)",  # GF(4)
    "GF(2)[x]/(x^2)",
    "Z/2 x Z/2",
    "Z/4 x Z/3",
]

Z = parse_ring("Z")


class _Check:
    def __init__(self):
        self.failures: list[str] = []

    def expect(self, ok: bool, what: str):
        if not ok and len(self.failures) < 5:
            self.failures.append(what)


@contextmanager
def criterion(k: int, title: str, budget: float):
    chk = _Check()
    t0 = time.perf_counter()
    yield chk
    elapsed = time.perf_counter() - t0
    ok = not chk.failures and elapsed <= budget
    detail = "" if not chk.failures else "; " + "; ".join(chk.failures)
    if elapsed > budget:
        detail += f"; over budget by {elapsed - budget:.1f}s"
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {title} ({elapsed:.1f}s, budget {budget:.0f}s){detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def _present_set(fn, mats):
    return {i for i, A in enumerate(mats) if fn(A) is not None}


def _random_gl2(rng) -> Mat2:
    M = Mat2.identity(Z)
    for _ in range(rng.randint(1, 6)):
        k = rng.randint(-9, 9)
        M = M @ rng.choice(
            [Mat2.of(Z, 1, k, 0, 1), Mat2.of(Z, 1, 0, k, 1), Mat2.of(Z, 0, 1, 1, 0), Mat2.of(Z, -1, 0, 0, 1)]
        )
    return M


# -- criteria -----------------------------------------------------------------------------


def test_criterion_1_det_lift_conditions_agree():
    with criterion(1, "det-lift quad condition equals the direct lift definition", 60) as chk:
        for spec in LATTICE_RINGS:
            mats = list(enumerate_um2(parse_ring(spec)))
            a = _present_set(decide_det_liftable, mats)
            b = _present_set(decide_det_liftable_direct, mats)
            chk.expect(a == b, f"{spec}: {len(a ^ b)} matrices differ")


def test_criterion_2_implication_lattice():
    with criterion(2, "simple/extendable/det-liftable/weak inclusions", 60) as chk:
        for spec in LATTICE_RINGS:
            mats = list(enumerate_um2(parse_ring(spec)))
            se = _present_set(decide_simply_extendable, mats)
            ex = _present_set(decide_extendable, mats)
            dl = _present_set(decide_det_liftable, mats)
            wk = _present_set(decide_weakly_det_liftable, mats)
            chk.expect(se <= dl, f"{spec}: simple not within det-liftable")
            chk.expect(se <= ex, f"{spec}: simple not within extendable")
            chk.expect(ex <= wk, f"{spec}: extendable not within weak")
            chk.expect(dl <= wk, f"{spec}: det-liftable not within weak")


def test_criterion_3_companion_identities():
    with criterion(3, "det(D)=phi, det(B)=det(A)phi, trace identity", 30) as chk:
        ring = parse_ring("Z/4")
        els = list(elements(ring))
        quads = [(x, y, z, w) for w in els for z in els for y in els for x in els]
        bad = sum(1 for A in (Mat2(*q) for q in quads) for q in quads if not check_identities(A, q).ok)
        chk.expect(bad == 0, f"Z/4: {bad} failing pairs")
        rng = random.Random(3)
        bad = 0
        for _ in range(100_000):
            A = Mat2.of(Z, *(rng.randint(-100, 100) for _ in range(4)))
            q = tuple(Z(rng.randint(-100, 100)) for _ in range(4))
            bad += not check_identities(A, q).ok
        chk.expect(bad == 0, f"Z: {bad} failing random cases")


def test_criterion_4_phi_root_criteria():
    with criterion(4, "phi-root criteria on reduced and non-reduced rings", 60) as chk:
        for spec in ["Z/6", "GF(3)", "Z/2 x Z/3"]:
            for A in enumerate_um2(parse_ring(spec)):
                weak = decide_weakly_det_liftable(A) is not None
                root = phi_root_search(A) is not None
                chk.expect(weak == root, f"{spec}: weak != phi-root at {A}")
        for spec in ["Z/4", "GF(2)[x]/(x^2)"]:
            for A in enumerate_um2(parse_ring(spec)):
                weak = decide_weakly_det_liftable(A) is not None
                if phi_root_search(A) is not None:
                    chk.expect(weak, f"{spec}: phi-root without weak lift at {A}")
                if weak:
                    chk.expect(phi_attains_nilpotent(A), f"{spec}: weak lift but phi never nilpotent at {A}")


def test_criterion_5_hensel_ladder():
    with criterion(5, "Hensel ladder congruences, k=4", 30) as chk:
        rng = random.Random(5)
        done = 0
        while done < 1_000:
            A = Mat2.of(Z, *(rng.randint(-50, 50) for _ in range(4)))
            det = A.det().value
            if det in (0, 1, -1) or is_unimodular2(A) is None:
                continue
            t = rng.choice(primefactors(det))
            h = hensel_det_lift(A, t, 4)
            chk.expect(h.B.det().value % t**16 == 0, f"det(B4) not 0 mod {t}^16 for {A}")
            chk.expect(congruent_mod(h.B, A, Z(t)), f"B4 != A mod {t} for {A}")
            for n in range(1, 5):
                chk.expect(h.ladder[n].det().value % t ** (2**n) == 0, f"rung {n} det for {A}")
                chk.expect(congruent_mod(h.ladder[n], h.ladder[n - 1], Z(t ** (2 ** (n - 1)))), f"rung {n} for {A}")
            done += 1


def test_criterion_6_snf_and_witnesses():
    with criterion(6, "SNF invariants and witness synthesis on 10^4 unimodular matrices", 60) as chk:
        rng = random.Random(6)
        for _ in range(10_000):
            A = _random_gl2(rng) @ Mat2.of(Z, 1, 0, 0, rng.randint(-200, 200)) @ _random_gl2(rng)
            r = smith_normal_form(A)
            chk.expect(rows_mul(rows_mul(r.U, r.D), r.V) == A.rows, f"UDV != A for {A}")
            chk.expect(abs(det_rows(r.U).value) == 1 and abs(det_rows(r.V).value) == 1, f"U, V not invertible for {A}")
            d1, d2 = r.diagonal
            chk.expect(r.D[0][1] == 0 and r.D[1][0] == 0, f"D not diagonal for {A}")
            chk.expect(d1 == 1 and d2.value >= 0 and divides(d1, d2) is not None, f"bad diagonal for {A}")
            w = simple_extension_witness(A)
            chk.expect(simple_form(A, w.quad) == 1, f"simple equation fails for {A}")
            lift = det_lift_witness(A)
            B, q = lift.lift, lift.witness.quad
            chk.expect(linear_form(A, q) == 1 and quad_det(q) == 0, f"det-lift equations fail for {A}")
            chk.expect(B.det() == 0 and is_unimodular2(B) is not None, f"B singular-unimodular fails for {A}")
            chk.expect(congruent_mod(B, A, A.det()), f"B != A mod det for {A}")


def test_criterion_7_nonfull_factorization():
    with criterion(7, "non-full refactorization of 10^4 zero-determinant matrices", 10) as chk:
        rng = random.Random(7)
        for _ in range(10_000):
            l, m, o, q = (rng.randint(-10**6, 10**6) for _ in range(4))
            M = Mat2.of(Z, l * o, l * q, m * o, m * q)
            chk.expect(nonfull_factor(M).product() == M, f"refactor fails for {M}")


def test_criterion_8_wj21():
    with criterion(8, "WJ(2,1) holds on Z/2..Z/6, GF(2), GF(3)", 120) as chk:
        for spec in ["Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "GF(2)", "GF(3)"]:
            rep = wj21_check_naive(parse_ring(spec))
            chk.expect(rep.holds, f"{spec}: counterexample {rep.to_dict()['counterexample']}")


def test_criterion_9_pi2_se2_flags():
    with criterion(9, "every tested ring is Pi2 and SE2 with equal class counts", 60) as chk:
        for spec in LATTICE_RINGS:
            rep = run_census(parse_ring(spec), max_cardinality=12)
            chk.expect(rep.ring_flags["is_pi2"] and rep.ring_flags["is_se2"], f"{spec}: flags {rep.ring_flags}")
            counts = {rep.class_counts[k] for k in CLASS_NAMES}
            chk.expect(counts == {rep.unimodular_count}, f"{spec}: class counts {rep.class_counts}")
            chk.expect(rep.all_pass, f"{spec}: a verdict failed")


_TOKENS = ["Z", "Z/", "GF(", ")", "[x]", "/(", "x", "^", "+", "-", "*", " x ", "[", "]", ",", "(", " "]


def _fuzz_string(rng: random.Random) -> str:
    if rng.random() < 0.5:
        pool = [chr(rng.randrange(32, 127)) for _ in range(8)] + ["é", "−", "\x00", "\n"]
        s = "".join(rng.choice(pool) for _ in range(rng.randint(0, 64)))
    else:
        parts = []
        while sum(len(p) for p in parts) < rng.randint(0, 60):
            parts.append(rng.choice(_TOKENS) if rng.random() < 0.7 else str(rng.randint(0, 10 ** rng.randint(0, 6))))
        s = "".join(parts)
    while len(s.encode("utf-8")) > 64:
        s = s[:-1]
    return s


def test_criterion_10_cli_determinism_and_fuzz():
    with criterion(10, "byte-identical census JSON and 10^5-string parser fuzz", 60) as chk:
        cmd = [sys.executable, "-m", "detlift", "census", "--ring", "Z/6"]
        a = subprocess.run(cmd, capture_output=True).stdout
        b = subprocess.run(cmd, capture_output=True).stdout
        chk.expect(a == b and bool(a), "census output differs between runs")
        chk.expect(bool(a) and json.loads(a)["ring"] == "Z/6", "census output is not the expected JSON")
        rng = random.Random(10)
        rings = [parse_ring(s) for s in ["Z", "Z/6", "GF(2)[x]", "GF(3)[x]/(x^2+1)", "Z/4 x Z/3"]]
        for i in range(100_000):
            s = _fuzz_string(rng)
            for parse in (parse_ring_spec, lambda t: parse_matrix2(t, rings[i % len(rings)])):
                try:
                    parse(s)
                except ParseError as e:
                    n = len(s.encode("utf-8", "surrogatepass"))
                    chk.expect(0 <= e.offset < max(n, 1), f"offset {e.offset} outside {s!r}")
                except DetliftError:
                    pass
                except Exception as e:  # noqa: BLE001 - any other exception is a crash
                    chk.expect(False, f"{type(e).__name__} on {s!r}")


def main() -> int:
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    print(f"{10 - failed}/10 criteria passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
