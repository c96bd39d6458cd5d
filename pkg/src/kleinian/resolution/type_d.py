"""D_r divisor profiles through the index-2 cover by H = A_h, h = 2r - 5.

The resolution of C^2/D_r is the quotient of the resolution of C^2/H, blown
up at the two fixed points alpha_1, alpha_2 of the lifted involution, by
that involution.  Everything is read off chart expressions on the cover:

    d_j = image of l_j = image of l_(h+1-j)     (1 <= j <= r-3)
    d_(r-2) = image of l_(r-2)
    e_i = image of the blow-up curve over alpha_i

A function pulled back to the cover has the l_j valuation on d_j and half
the blow-up multiplicity on e_i, since the involution branches along e_i.
The alpha points sit in chart r-3 at v = 0, u^2 = (-1)^r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from ..cyclo import CycloNum, get_field
from ..invariants import invariant_triple
from ..poly import Poly, UniPoly, point_multiplicity, squarefree_decomposition
from .profile import EXCEPTIONAL, OPEN, DivisorProfile
from .type_a import AAnalysis, analyze_A

RHO = "rho"
AXIS = "c"


def cover_rank(r: int) -> int:
    return 2 * r - 5


def component_ids(r: int) -> list[str]:
    return [f"d{j}" for j in range(1, r - 1)] + ["e1", "e2"]


def alpha_coordinates(field, r: int) -> list[CycloNum]:
    """u-coordinates (chart r-3, v = 0) of the two fixed points."""
    u = field.one if r % 2 == 0 else field.zeta(4)
    return [u, -u]


def _root_order(f: UniPoly, x: CycloNum) -> int:
    lin = UniPoly(f.field, [-x, 1])
    k = 0
    while not f.is_zero() and f.degree() >= 1:
        q, rem = f.divmod(lin)
        if not rem.is_zero():
            break
        f, k = q, k + 1
    return k


def _is_squarefree(f: UniPoly) -> bool:
    if f.degree() <= 0:
        return True
    return all(m == 1 for m, _ in squarefree_decomposition(f))


@dataclass
class DAnalysis:
    r: int
    cover: AAnalysis
    point_multiplicities: list[int]
    profile: DivisorProfile
    issues: list[str] = field(default_factory=list)

    @property
    def h(self) -> int:
        return cover_rank(self.r)

    def cover_multiset(self) -> dict[str, int]:
        """div of the pulled-back function on the blown-up cover (exceptional part)."""
        out = {f"l{j}": self.cover.nu(j) for j in range(1, self.h + 1)}
        out["e~1"], out["e~2"] = self.point_multiplicities
        return out


def d_field(P: Poly):
    return get_field(lcm(P.field.order, 4))


def analyze_D(P: Poly, r: int) -> DAnalysis:
    if r < 4:
        raise ValueError("D_r needs r >= 4")
    f = d_field(P)
    P = P.map_field(f)
    h = cover_rank(r)
    an = analyze_A(P, h)
    for j in range(0, h + 2):
        if an.nu(j) != an.nu(h + 1 - j):
            raise ValueError(f"valuations on l{j} and l{h + 1 - j} differ: not D_{r}-invariant")
    mid = r - 2
    chart = an.charts[r - 3]
    alphas = alpha_coordinates(f, r)
    mus = [point_multiplicity(chart.full(), (u0, 0)) for u0 in alphas]
    for m in mus:
        if m % 2:
            raise ValueError("odd multiplicity at a fixed point: not D-invariant")

    prof = DivisorProfile()
    for j in range(1, r - 1):
        prof.add(f"d{j}", EXCEPTIONAL, an.nu(j))
    for i, m in enumerate(mus, 1):
        prof.add(f"e{i}", EXCEPTIONAL, m // 2)
    for j in range(1, r - 2):
        prof.connect(f"d{j}", f"d{j + 1}")
    prof.connect("e1", f"d{mid}")
    prof.connect("e2", f"d{mid}")

    # residual contacts, pushed down
    on_mid = chart.on_u_axis()
    at_alpha = [_root_order(on_mid, u0) for u0 in alphas]
    contacts = {f"d{j}": an.contacts[j] for j in range(1, r - 2)}
    off_alpha = an.contacts[mid] - sum(at_alpha)
    if off_alpha % 2:
        raise AssertionError("contacts on the middle curve are not paired by the involution")
    contacts[f"d{mid}"] = off_alpha // 2
    for i, m in enumerate(mus, 1):
        contacts[f"e{i}"] = m - an.nu(mid)
    if any(n < 0 for n in contacts.values()):
        raise AssertionError(f"negative contact count {contacts}")
    prof.add(AXIS, OPEN, an.nu(0))
    prof.connect(AXIS, "d1")
    if any(contacts.values()):
        prof.add(RHO, OPEN, 1)
        for cid, n in contacts.items():
            prof.connect(RHO, cid, n)

    issues = []
    for j in range(1, r - 2):
        if not _is_squarefree(an.charts[j].on_v_axis()):
            issues.append(f"coincident residual roots on l{j}")
    if not _is_squarefree(on_mid):
        issues.append("coincident residual roots")
    if any(at_alpha):
        issues.append("residual curve meets a fixed point")
    hits = [k for k in an.corners if k <= h]
    if hits:
        issues.append("residual curve passes through a corner " + ",".join(f"o{k}" for k in hits))
    res = DAnalysis(r, an, mus, prof, issues)
    defects = prof.principal_defects()
    if any(defects.values()):
        raise AssertionError(f"D-type profile is not principal: {defects}")
    return res


# -- the distinguished function X + cY -----------------------------------------


def _as_num(c, base_order: int) -> CycloNum:
    if isinstance(c, CycloNum):
        return get_field(lcm(base_order, c.field.order)).embed(c)
    return get_field(base_order)(c)


def f_xcy(c, r: int) -> Poly:
    """X + cY with the classical D_r invariants, over a field containing c and i."""
    from ..groups import field_order

    c = _as_num(c, lcm(field_order("D", r), 4))
    T = invariant_triple("D", r, c.field)
    return T.X + T.Y.scale(c)


@dataclass
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def degenerate_check(c, r: int) -> Verdict:
    if r < 4:
        return Verdict(False, "D_r needs r >= 4")
    c = _as_num(c, 4)
    if c.is_zero():
        return Verdict(False, "c = 0")
    an = analyze_D(f_xcy(c, r), r)
    if an.issues:
        return Verdict(False, an.issues[0])
    return Verdict(True)


class DegenerateParameter(ValueError):
    pass


def divisor_profile_D(c, r: int) -> DivisorProfile:
    v = degenerate_check(c, r)
    if not v:
        raise DegenerateParameter(f"c = {c!r} is degenerate for D_{r}: {v.reason}")
    return analyze_D(f_xcy(c, r), r).profile


def chart_expression_D(P: Poly, r: int, j: int):
    """Chart U_j (0 <= j <= r-3) expression of P on the A_h cover."""
    from .type_a import chart_expression

    if not 0 <= j <= r - 3:
        raise ValueError(f"chart {j} is outside the first half for D_{r}")
    return chart_expression(P.map_field(d_field(P)), cover_rank(r), j)


def rho_coordinate(P: Poly, r: int) -> CycloNum:
    """Where the residual curve meets d_2, as a coordinate on d_2.

    Measured by u_1 on l_2 (chart 1, v_1 = 0).  For r >= 5 the curve meets
    l_2 once and the point itself is returned; for r = 4 it meets l_2 in a
    pair of points swapped by the involution, and the invariant sum of
    their coordinates is returned.
    """
    expr = chart_expression_D(P, r, 1)
    f = expr.on_u_axis()
    if r >= 5:
        if f.degree() != 1:
            raise ValueError(f"residual meets l2 in {f.degree()} points, expected 1")
        return -f.coeffs[0] / f.coeffs[1]
    if f.degree() != 2:
        raise ValueError(f"residual meets l2 in {f.degree()} points, expected 2")
    return -f.coeffs[1] / f.coeffs[2]


def rho_intersection_point(c, r: int) -> CycloNum:
    v = degenerate_check(c, r)
    if not v:
        raise DegenerateParameter(f"c = {c!r} is degenerate for D_{r}: {v.reason}")
    return rho_coordinate(f_xcy(c, r), r)


def c_from_point(point: CycloNum, r: int) -> CycloNum:
    """Inverse of rho_intersection_point: u = -c/2 (r >= 5), u + 1/u = -2/c (r = 4)."""
    if r >= 5:
        return point * (-2)
    if point.is_zero():
        raise ValueError("u + 1/u = 0 corresponds to c = infinity")
    return -2 / point
