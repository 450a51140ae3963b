"""Explicit constructions attached to a unimodular 2x2 matrix ``A = [[a, b], [c, d]]``.

A *quad* is a 4-tuple ``(x, y, z, w)`` of ring elements.  The forms used
throughout are

* ``linear_form``  ``ax + by + cz + dw``
* ``simple_form``  ``axw + bxz + cyw + dyz``
* ``phi_eval``     ``1 - (ax + by + cz + dw) + det(A)(xw - yz)``

and the companion matrices ``C = [[-w, z], [y, -x]]``, ``D = I + adj(A) C`` and
``B = A D = A + det(A) C``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import MixedRings, NotInvertible, WitnessInvalid
from .mat import Mat2, Mat3
from .rings import Elem, is_unit

Quad = tuple[Elem, Elem, Elem, Elem]


class Role(str, enum.Enum):
    SIMPLE_EXTENSION = "simple-extension"
    EXTENSION = "extension"
    DET_LIFT = "det-lift"
    PHI_ROOT = "phi-root"
    WEAK_LIFT_MATRIX = "weak-lift-matrix"


def _quad(A: Mat2, quad: Sequence) -> Quad:
    if len(quad) != 4:
        raise ValueError("a quad has four entries")
    ring = A.ring
    out = tuple(ring(q) for q in quad)
    return out  # type: ignore[return-value]


def linear_form(A: Mat2, quad) -> Elem:
    x, y, z, w = _quad(A, quad)
    return A.a * x + A.b * y + A.c * z + A.d * w


def simple_form(A: Mat2, quad) -> Elem:
    x, y, z, w = _quad(A, quad)
    return A.a * x * w + A.b * x * z + A.c * y * w + A.d * y * z


def quad_det(quad) -> Elem:
    x, y, z, w = quad
    return x * w - y * z


def phi_eval(A: Mat2, quad) -> Elem:
    q = _quad(A, quad)
    return 1 - linear_form(A, q) + A.det() * quad_det(q)


def companion(A: Mat2, quad) -> tuple[Mat2, Mat2, Mat2]:
    """``(C, D, B)`` for the quad; ``D`` and ``B`` are built from their definitions."""
    x, y, z, w = _quad(A, quad)
    C = Mat2(-w, z, y, -x)
    D = Mat2.identity(A.ring) + A.adjugate() @ C
    B = A @ D
    return C, D, B


def lift_matrix(A: Mat2, quad) -> Mat2:
    """``A + det(A) C_quad``, which equals ``B`` of :func:`companion`."""
    x, y, z, w = _quad(A, quad)
    return A + Mat2(-w, z, y, -x).scale(A.det())


def bordered(A: Mat2, quad, v) -> Mat3:
    x, y, z, w = _quad(A, quad)
    v = A.ring(v)
    return Mat3(((A.a, A.b, y), (A.c, A.d, -x), (-z, w, v)))


def build_extension(A: Mat2, quad, v) -> Mat3:
    """The 3x3 matrix ``[[a, b, y], [c, d, -x], [-z, w, v]]`` of determinant 1."""
    q = _quad(A, quad)
    v = A.ring(v)
    if simple_form(A, q) + A.det() * v != 1:
        raise WitnessInvalid(f"axw+bxz+cyw+dyz+(ad-bc)v != 1 for quad {_fmt(q)}, v={v}")
    M = bordered(A, q, v)
    assert M.det() == 1
    return M


def rho_witness(quad) -> Quad:
    """``(x, y, z, w) -> (xw, xz, yw, yz)``."""
    x, y, z, w = quad
    return (x * w, x * z, y * w, y * z)


def _fmt(q) -> str:
    return "(" + ",".join(map(str, q)) + ")"


@dataclass(frozen=True)
class Witness:
    """A verified certificate for one property of ``target``.

    Construction checks the defining equation of ``role`` and raises
    :class:`WitnessInvalid` on failure, so every instance is valid.
    """

    role: Role
    target: Mat2
    quad: Quad
    v: Optional[Elem] = None
    matrix: Optional[Mat2] = None

    def __post_init__(self):
        A = self.target
        q = _quad(A, self.quad)
        object.__setattr__(self, "quad", q)
        role = Role(self.role)
        object.__setattr__(self, "role", role)
        if role is Role.SIMPLE_EXTENSION:
            ok = simple_form(A, q) == 1
        elif role is Role.EXTENSION:
            if self.v is None:
                raise WitnessInvalid("extension witness needs v")
            object.__setattr__(self, "v", A.ring(self.v))
            ok = simple_form(A, q) + A.det() * self.v == 1
        elif role is Role.DET_LIFT:
            ok = linear_form(A, q) == 1 and quad_det(q).is_zero
        elif role is Role.PHI_ROOT:
            ok = phi_eval(A, q).is_zero
        else:
            if self.matrix is None:
                raise WitnessInvalid("weak-lift witness needs the lifted matrix")
            if self.matrix.ring != A.ring:
                raise MixedRings(f"{A.ring} vs {self.matrix.ring}")
            ok = self.matrix == lift_matrix(A, q) and self.matrix.det().is_zero
        if not ok:
            raise WitnessInvalid(f"{role.value} equation fails for {A} at quad {_fmt(q)}")

    def extension(self) -> Mat3:
        """The bordered 3x3 matrix (extension roles only)."""
        if self.role is Role.SIMPLE_EXTENSION:
            return build_extension(self.target, self.quad, 0)
        if self.role is Role.EXTENSION:
            return build_extension(self.target, self.quad, self.v)
        raise WitnessInvalid(f"{self.role.value} witness has no extension")

    def to_dict(self) -> dict:
        out = {"role": self.role.value, "quad": [str(e) for e in self.quad]}
        if self.v is not None:
            out["v"] = str(self.v)
        if self.matrix is not None:
            out["matrix"] = [[str(e) for e in r] for r in self.matrix.rows]
        return out


def transport_witness(A: Mat2, P: Mat2, Q: Mat2, w: Witness) -> Witness:
    """Move an (simple) extension witness of ``A`` to one of ``P @ A @ Q``.

    The bordered matrix is conjugated by ``diag(P, 1)`` and ``diag(Q, 1)``; its
    determinant becomes ``det(P) det(Q)``, which is undone by scaling the border
    column by the inverse unit.
    """
    if w.role not in (Role.SIMPLE_EXTENSION, Role.EXTENSION):
        raise ValueError("only extension witnesses can be transported")
    if w.target != A:
        raise WitnessInvalid("witness does not belong to A")
    ring = A.ring
    ip, iq = is_unit(P.det()), is_unit(Q.det())
    if ip is None or iq is None:
        raise NotInvertible("P and Q must be invertible")
    u = ip * iq
    v = ring.zero if w.v is None else w.v
    M = bordered(A, w.quad, v)
    o, z = ring.one, ring.zero
    left = Mat3(((P.a, P.b, z), (P.c, P.d, z), (z, z, o)))
    right = Mat3(((Q.a, Q.b, z), (Q.c, Q.d, z), (z, z, o)))
    N = left @ M @ right
    y2, x2, v2 = u * N[0, 2], -(u * N[1, 2]), u * N[2, 2]
    z2, w2 = -N[2, 0], N[2, 1]
    A2 = P @ A @ Q
    if w.role is Role.SIMPLE_EXTENSION:
        return Witness(Role.SIMPLE_EXTENSION, A2, (x2, y2, z2, w2))
    return Witness(Role.EXTENSION, A2, (x2, y2, z2, w2), v=v2)


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of the three companion-matrix identities."""

    det_d: tuple[Elem, Elem]  # det(D) vs Phi
    det_b: tuple[Elem, Elem]  # det(B) vs det(A) Phi
    trace_gap: tuple[Elem, Elem]  # 1 - det(A) det(C) vs Tr(D) - det(D)

    @property
    def det_d_ok(self) -> bool:
        return self.det_d[0] == self.det_d[1]

    @property
    def det_b_ok(self) -> bool:
        return self.det_b[0] == self.det_b[1]

    @property
    def trace_gap_ok(self) -> bool:
        return self.trace_gap[0] == self.trace_gap[1]

    @property
    def ok(self) -> bool:
        return self.det_d_ok and self.det_b_ok and self.trace_gap_ok

    def to_dict(self) -> dict:
        def side(pair, flag):
            return {"lhs": str(pair[0]), "rhs": str(pair[1]), "pass": flag}

        return {
            "det_D_equals_phi": side(self.det_d, self.det_d_ok),
            "det_B_equals_detA_phi": side(self.det_b, self.det_b_ok),
            "trace_gap": side(self.trace_gap, self.trace_gap_ok),
        }


def check_identities(A: Mat2, quad) -> IdentityReport:
    q = _quad(A, quad)
    C, D, B = companion(A, q)
    phi = phi_eval(A, q)
    delta = A.det()
    return IdentityReport(
        det_d=(D.det(), phi),
        det_b=(B.det(), delta * phi),
        trace_gap=(1 - delta * C.det(), D.trace() - D.det()),
    )
