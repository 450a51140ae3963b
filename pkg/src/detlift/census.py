"""Exhaustive census of ``Um(M_2(R))`` over a finite ring, with theorem verdicts."""

from __future__ import annotations

import csv
import io
import os
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .errors import BudgetExceeded, InfiniteRing
from .finite import (
    RingClassification,
    classify_ring,
    first_hits,
    is_hermite,
    refinement_cases,
    stable_range_at_most_2,
    wj21_check,
    zero_det_all_nonfull,
)
from .mat import Mat2
from .rings import Ring, format_descriptor, make_ring

DEFAULT_MAX_CARDINALITY = 12
BUDGET_ENV = "DETLIFT_CENSUS_MAX_CARD"

CLASS_NAMES = ("simply_extendable", "extendable", "det_liftable", "weakly_det_liftable", "phi_root")
CONDITION_NAMES = ("det_liftable_direct", "lift_unimodular_companion", "lift_singular_companion")

# Square-zero phi values are looked for among the first quads only; see
# the refinement verdict below.
REFINEMENT_QUAD_LIMIT = 4096


def _ring(ring) -> Ring:
    if isinstance(ring, Ring):
        return ring
    return make_ring(ring)


def enumerate_um2(ring) -> Iterator[Mat2]:
    """All unimodular 2x2 matrices, ``a`` varying slowest."""
    ring = _ring(ring)
    if not ring.is_finite:
        raise InfiniteRing(f"{ring} is infinite")
    T = ring.tables
    va, vb, vc, vd = T.matrices()
    e = ring.element
    for k in np.flatnonzero(T.unimodular(va, vb, vc, vd)):
        yield Mat2(e(int(va[k])), e(int(vb[k])), e(int(vc[k])), e(int(vd[k])))


def budget_from_env(default: int = DEFAULT_MAX_CARDINALITY) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise BudgetExceeded(f"{BUDGET_ENV}={raw!r} is not an integer") from None


@dataclass
class Verdict:
    name: str
    passed: Optional[bool]  # None: hypotheses not met
    counterexample: Optional[Mat2] = None
    note: str = ""

    def to_dict(self) -> dict:
        ce = None
        if self.counterexample is not None:
            ce = [[str(e) for e in r] for r in self.counterexample.rows]
        out = {"name": self.name, "pass": "N/A" if self.passed is None else self.passed, "counterexample": ce}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class CensusReport:
    ring: str
    total_matrices: int
    unimodular_count: int
    class_counts: dict
    condition_counts: dict
    ring_flags: dict
    verdicts: list
    elapsed: float = 0.0
    records: Optional[RingClassification] = field(default=None, repr=False, compare=False)

    @property
    def all_pass(self) -> bool:
        return all(v.passed is not False for v in self.verdicts)

    def verdict(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def to_dict(self) -> dict:
        # elapsed is left out so that identical runs serialize identically
        return {
            "ring": self.ring,
            "total_matrices": self.total_matrices,
            "unimodular_count": self.unimodular_count,
            "class_counts": dict(self.class_counts),
            "condition_counts": dict(self.condition_counts),
            "ring_flags": dict(self.ring_flags),
            "verdicts": [v.to_dict() for v in self.verdicts],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["ring", "class", "count"])
        w.writerow([self.ring, "unimodular", self.unimodular_count])
        for name in CLASS_NAMES:
            w.writerow([self.ring, name, self.class_counts[name]])
        for name in CONDITION_NAMES:
            w.writerow([self.ring, name, self.condition_counts[name]])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [
            f"ring {self.ring}: {self.unimodular_count} unimodular of {self.total_matrices} matrices",
        ]
        for name in CLASS_NAMES + CONDITION_NAMES:
            counts = self.class_counts if name in self.class_counts else self.condition_counts
            lines.append(f"  {name:28s} {counts[name]}")
        lines.append("  flags: " + ", ".join(f"{k}={v}" for k, v in sorted(self.ring_flags.items())))
        for v in self.verdicts:
            status = "N/A" if v.passed is None else ("pass" if v.passed else "FAIL")
            extra = "" if v.counterexample is None else f"  counterexample {v.counterexample}"
            lines.append(f"  [{status:4s}] {v.name}{extra}")
        lines.append(f"  elapsed {self.elapsed:.2f}s")
        return "\n".join(lines) + "\n"


def run_census(ring, max_cardinality: Optional[int] = None) -> CensusReport:
    """Classify every unimodular matrix of a finite ring and check the theorems."""
    t0 = time.perf_counter()
    ring = _ring(ring)
    if not ring.is_finite:
        raise InfiniteRing(f"{ring} is infinite")
    bound = budget_from_env() if max_cardinality is None else max_cardinality
    if ring.cardinality > bound:
        raise BudgetExceeded(f"|{ring}| = {ring.cardinality} exceeds the census bound {bound}")
    rc = classify_ring(ring)
    present = {name: rc.present(name) for name in rc.hits}
    um = len(rc.matrices)
    singular = rc.det == 0

    nonfull, _ = zero_det_all_nonfull(ring)
    flags = {
        "is_pi2": bool(present["extendable"][singular].all()),
        "is_se2": bool(present["simply_extendable"].all()),
        "wj21_holds": wj21_check(ring).holds,
        "is_hermite": is_hermite(ring),
        "stable_range_le_2": stable_range_at_most_2(ring),
        "zero_det_nonfull": nonfull,
        "is_reduced": ring.caps.is_reduced,
    }
    report = CensusReport(
        ring=format_descriptor(ring.descriptor),
        total_matrices=rc.total,
        unimodular_count=um,
        class_counts={name: int(present[name].sum()) for name in CLASS_NAMES},
        condition_counts={name: int(present[name].sum()) for name in CONDITION_NAMES},
        ring_flags=flags,
        verdicts=[],
        records=rc,
    )
    report.verdicts = verify_theorems(report)
    report.elapsed = time.perf_counter() - t0
    return report


def _first(rc: RingClassification, bad: np.ndarray) -> Optional[Mat2]:
    idx = np.flatnonzero(bad)
    return rc.matrix(int(idx[0])) if len(idx) else None


def _holds(name: str, rc: RingClassification, bad: np.ndarray, note: str = "") -> Verdict:
    ce = _first(rc, bad)
    return Verdict(name, ce is None, ce, note)


def verify_theorems(report: CensusReport) -> list[Verdict]:
    """Evaluate each implication over the per-matrix records of ``report``."""
    rc = report.records
    ring = rc.ring
    T = ring.tables
    p = {name: rc.present(name) for name in rc.hits}
    flags = report.ring_flags
    det = rc.det
    singular = det == 0
    invertible = T.inv[det] >= 0
    zero_divisor_det = T.zero_divisor[det]
    simple, ext, dl, weak, phi = (p[n] for n in CLASS_NAMES)
    out: list[Verdict] = []

    def na(name, why):
        out.append(Verdict(name, None, None, why))

    # the four characterizations of determinant liftability
    disagree = (dl != p["det_liftable_direct"]) | (dl != p["lift_unimodular_companion"])
    disagree |= dl != p["lift_singular_companion"]
    out.append(_holds("det-lift-conditions-agree", rc, disagree))
    out.append(_holds("singular-or-invertible-is-det-liftable", rc, (singular | invertible) & ~dl))

    # inclusion lattice
    out.append(_holds("simple-implies-det-liftable", rc, simple & ~dl))
    out.append(_holds("simple-implies-extendable", rc, simple & ~ext))
    out.append(_holds("extendable-implies-weakly-det-liftable", rc, ext & ~weak))
    out.append(_holds("det-liftable-implies-weakly-det-liftable", rc, dl & ~weak))
    counts = report.class_counts
    ok = counts["simply_extendable"] <= min(counts["extendable"], counts["det_liftable"])
    ok &= counts["det_liftable"] <= counts["weakly_det_liftable"]
    ok &= counts["extendable"] <= counts["weakly_det_liftable"]
    ok &= all(c <= report.unimodular_count for c in counts.values())
    out.append(Verdict("class-count-inequalities", bool(ok)))

    # ring-level characterizations
    differ = simple != dl
    pi2 = flags["is_pi2"]
    v = Verdict("pi2-iff-simple-equals-det-liftable", pi2 == (not differ.any()))
    if not v.passed:
        v.counterexample = _first(rc, differ) if pi2 else _first(rc, singular & ~ext)
    out.append(v)
    se2_rhs = pi2 and bool(dl[~singular].all())
    v = Verdict("se2-iff-pi2-and-nonsingular-det-liftable", flags["is_se2"] == se2_rhs)
    if not v.passed:
        v.counterexample = _first(rc, ~simple) if not flags["is_se2"] else _first(rc, ~singular & ~dl)
    out.append(v)

    if pi2 and flags["stable_range_le_2"]:
        out.append(_holds("pi2-with-sr2-simple-extendable-det-liftable-agree", rc, (simple != ext) | (simple != dl)))
    else:
        na("pi2-with-sr2-simple-extendable-det-liftable-agree", "needs a Pi_2 ring of stable range at most 2")

    if flags["zero_det_nonfull"]:
        out.append(_holds("nonfull-extendable-iff-weakly-det-liftable", rc, ext != weak))
        if flags["stable_range_le_2"]:
            bad = (simple != ext) | (simple != dl) | (simple != weak)
            out.append(_holds("nonfull-with-sr2-all-four-agree", rc, bad))
        else:
            na("nonfull-with-sr2-all-four-agree", "stable range exceeds 2")
    else:
        why = "some zero-determinant matrix is not a column times a row"
        na("nonfull-extendable-iff-weakly-det-liftable", why)
        na("nonfull-with-sr2-all-four-agree", why)

    # phi criteria
    out.append(_holds("det-liftable-implies-phi-root", rc, dl & ~phi))
    out.append(_holds("phi-root-implies-weakly-det-liftable", rc, phi & ~weak))
    scope = ~zero_divisor_det if not ring.caps.is_reduced else np.ones_like(phi)
    out.append(
        _holds(
            "weakly-det-liftable-implies-phi-root-when-reduced-or-det-regular",
            rc,
            scope & weak & ~phi,
        )
    )
    out.append(_holds("weak-with-zero-divisor-det-implies-nilpotent-phi", rc, zero_divisor_det & weak & ~p["phi_nilpotent"]))
    out.append(_refinement_verdict(rc))

    if flags["wj21_holds"]:
        out.append(_holds("wj21-implies-all-det-liftable", rc, ~dl))
        if pi2:
            out.append(_holds("wj21-and-pi2-implies-se2", rc, ~simple))
        else:
            na("wj21-and-pi2-implies-se2", "not a Pi_2 ring")
    else:
        na("wj21-implies-all-det-liftable", "WJ21 fails")
        na("wj21-and-pi2-implies-se2", "WJ21 fails")
    return out


def _refinement_verdict(rc: RingClassification) -> Verdict:
    """Square-zero ``phi`` value with a non-unimodular lift: a root exists in
    ``quad + (R phi)^4`` iff ``phi`` lies in ``phi`` times the entry ideal of the lift."""
    name = "square-zero-phi-refinement-matches-annihilator"
    ring = rc.ring
    if ring.caps.is_reduced:
        return Verdict(name, None, None, "reduced ring: no nonzero square-zero values")
    hits = first_hits(ring, rc.matrices, ["square_zero_phi"], quad_limit=REFINEMENT_QUAD_LIMIT)["square_zero_phi"]
    idx = np.flatnonzero(hits >= 0)
    if not len(idx):
        return Verdict(name, None, None, "no square-zero phi value among the scanned quads")
    found, criterion = refinement_cases(ring, rc.matrices[idx], hits[idx])
    bad = np.flatnonzero(found != criterion)
    if len(bad):
        i = int(idx[bad[0]])
        quad = [str(ring.element(int(q[hits[i]]))) for q in ring.tables.quads]
        return Verdict(name, False, rc.matrix(i), f"quad {quad}")
    return Verdict(name, True, None, f"{len(idx)} cases checked")
