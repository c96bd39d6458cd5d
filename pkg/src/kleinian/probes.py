"""Uniqueness probes: does a candidate invariant have the affine-diagram divisor?

A candidate is a polynomial in X, Y, Z.  It is accepted when its divisor
profile matches the affine diagram of the group.  For accepted candidates
the profile is compared with that of the distinguished function F (X, or
X + cY for D types, with c recovered from the candidate itself) and F is
tested as an exact polynomial divisor with a unit cofactor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .cyclo import CycloNum, get_field
from .dynkin import MatchResult, affine_diagram, match_profile
from .expr import parse_polynomial, required_order
from .groups import field_order, generators, validate
from .invariants import expand_xyz, invariant_triple
from .poly import Poly, substitute_linear
from .resolution.profile import DivisorProfile
from .resolution.type_a import divisor_profile_A
from .resolution.type_d import analyze_D, c_from_point, f_xcy, rho_coordinate
from .resolution.type_e import divisor_profile_E


class ProbeError(ValueError):
    pass


def profile_of(kind: str, r: int, P: Poly) -> DivisorProfile:
    if kind == "A":
        return divisor_profile_A(P, r)
    if kind == "D":
        return analyze_D(P, r).profile
    return divisor_profile_E(r, P)


def is_invariant(kind: str, r: int, P: Poly) -> bool:
    f = get_field(lcm(P.field.order, field_order(kind, r)))
    P = P.map_field(f)
    return all(substitute_linear(P, g) == P for g in generators(kind, r, f).values())


def distinguished_function(kind: str, r: int, c=None) -> Poly:
    T = invariant_triple(kind, r)
    if kind == "D":
        if c is None:
            raise ProbeError("the D-type function needs a parameter c")
        return f_xcy(c, r)
    return T.X


def same_profile(p: DivisorProfile, q: DivisorProfile) -> bool:
    a, b = p.support(), q.support()
    return a.multiplicities() == b.multiplicities() and a.adjacency == b.adjacency


@dataclass
class ProbeVerdict:
    kind: str
    r: int
    candidate: str
    accepted: bool
    profile: DivisorProfile
    match: MatchResult
    same_profile_as_f: bool | None = None
    unit_multiple_of_f: bool | None = None
    recovered_c: CycloNum | None = None
    notes: list[str] = field(default_factory=list)

    def summary(self) -> str:
        head = "accepted" if self.accepted else f"rejected ({self.match.reason})"
        parts = [f"{self.kind}{self.r} {self.candidate}: {head}", f"profile {self.profile.summary()}"]
        if self.accepted:
            parts.append(f"same profile as F: {self.same_profile_as_f}")
            parts.append(f"unit multiple of F: {self.unit_multiple_of_f}")
        if self.recovered_c is not None:
            c = self.recovered_c
            parts.append(f"recovered c = {c.to_fraction() if c.is_rational() else c}")
        return "; ".join(parts + self.notes)


def _embed_pair(P: Poly, Q: Poly):
    f = get_field(lcm(P.field.order, Q.field.order))
    return P.map_field(f), Q.map_field(f)


def unit_multiple(P: Poly, F: Poly) -> bool:
    """P = u F exactly with u(0) != 0."""
    P, F = _embed_pair(P, F)
    q, rem = P.divmod(F)
    return rem.is_zero() and not q.constant_term().is_zero()


def probe(kind: str, r: int, candidate, label: str | None = None) -> ProbeVerdict:
    validate(kind, r)
    if kind == "A" and r == 1:
        raise ProbeError("uniqueness probes exclude A1")
    T = invariant_triple(kind, r)
    if isinstance(candidate, str):
        text = candidate
        poly3 = parse_polynomial(candidate, get_field(lcm(T.field.order, required_order(candidate))))
    else:
        text, poly3 = label or repr(candidate), candidate
    P = expand_xyz(poly3, T)
    if not P:
        raise ProbeError("candidate is identically zero")
    if not is_invariant(kind, r, P):
        raise ProbeError("candidate is not invariant")
    if not P.constant_term().is_zero():
        prof = DivisorProfile()
        return ProbeVerdict(kind, r, text, False, prof, MatchResult(False, reason="candidate is a unit"))
    prof = profile_of(kind, r, P)
    match = match_profile(prof, affine_diagram(kind, r))
    verdict = ProbeVerdict(kind, r, text, match.ok, prof, match)
    if not match.ok:
        return verdict
    c = None
    if kind == "D":
        an = analyze_D(P, r)
        if an.issues:
            verdict.notes.append("issues: " + ", ".join(an.issues))
        try:
            c = c_from_point(rho_coordinate(P, r), r)
        except (ValueError, ZeroDivisionError) as err:
            verdict.notes.append(f"no c recovered: {err}")
            verdict.same_profile_as_f = False
            verdict.unit_multiple_of_f = False
            return verdict
        verdict.recovered_c = c
    F = distinguished_function(kind, r, c)
    verdict.same_profile_as_f = same_profile(prof, profile_of(kind, r, F))
    verdict.unit_multiple_of_f = unit_multiple(P, F)
    return verdict
