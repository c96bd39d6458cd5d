"""Toric minimal resolution of C^2/A_r.

Chart U_k (0 <= k <= r) has coordinates

    u_k = Z1^(k+1) Z2^(k-r),   v_k = Z1^(-k) Z2^(r+1-k).

In U_k the line u_k = 0 is l_k (c_0 for k = 0) and v_k = 0 is l_(k+1)
(c_(r+1) for k = r).  An invariant monomial Z1^a Z2^b becomes u^alpha v^beta
with alpha = (a(n-k) + bk)/n, beta = (a(n-1-k) + b(k+1))/n, n = r + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..poly import Poly, UniPoly
from .profile import EXCEPTIONAL, OPEN, DivisorProfile

RESIDUAL = "res"


class NotInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class ChartMap:
    r: int
    k: int

    @property
    def n(self) -> int:
        return self.r + 1

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Exponents of (u_k, v_k) in (Z1, Z2): rows are u_k and v_k."""
        r, k = self.r, self.k
        return ((k + 1, k - r), (-k, r + 1 - k))

    def to_chart(self, a: int, b: int) -> tuple[int, int]:
        n, k = self.n, self.k
        if (a - b) % n:
            raise NotInvariantError(f"Z1^{a} Z2^{b} is not A_{self.r}-invariant")
        return (a * (n - k) + b * k) // n, (a * (n - 1 - k) + b * (k + 1)) // n

    def from_chart(self, alpha: int, beta: int) -> tuple[int, int]:
        (p, q), (s, t) = self.matrix
        return alpha * p + beta * s, alpha * q + beta * t


def monomial_to_chart(a: int, b: int, r: int, k: int) -> tuple[int, int]:
    if not 0 <= k <= r:
        raise ValueError(f"chart index {k} out of range for A_{r}")
    return ChartMap(r, k).to_chart(a, b)


def component_ids(r: int) -> list[str]:
    return ["c0"] + [f"l{j}" for j in range(1, r + 1)] + [f"c{r + 1}"]


@dataclass
class ChartExpression:
    """P = u^alpha v^beta * residual in one chart."""

    k: int
    alpha: int
    beta: int
    residual: Poly

    def on_u_axis(self) -> UniPoly:
        """residual(u, 0) as a polynomial in u."""
        return _restrict(self.residual, 0)

    def on_v_axis(self) -> UniPoly:
        """residual(0, v) as a polynomial in v."""
        return _restrict(self.residual, 1)

    def full(self) -> Poly:
        mono = Poly.monomial(self.residual.field, (self.alpha, self.beta))
        return mono * self.residual


def _restrict(R: Poly, keep: int) -> UniPoly:
    other = 1 - keep
    deg = max((e[keep] for e in R.terms), default=0)
    cs = [R.field.zero] * (deg + 1)
    for e, c in R.terms.items():
        if e[other] == 0:
            cs[e[keep]] = c
    return UniPoly(R.field, cs)


def _order_at_zero(f: UniPoly) -> int:
    if f.is_zero():
        raise ValueError("residual vanishes along a toric divisor")
    return next(i for i, c in enumerate(f.coeffs) if c)


def chart_expression(P: Poly, r: int, k: int) -> ChartExpression:
    if not P:
        raise ValueError("the zero polynomial has no divisor")
    cm = ChartMap(r, k)
    images = {cm_e: c for cm_e, c in ((cm.to_chart(*e), c) for e, c in P.terms.items())}
    alpha = min(e[0] for e in images)
    beta = min(e[1] for e in images)
    residual = Poly(P.field, {(x - alpha, y - beta): c for (x, y), c in images.items()})
    return ChartExpression(k, alpha, beta, residual)


def valuation_A(P: Poly, r: int, component) -> int:
    """Order of vanishing of pi^* P along c0, l_j (given as j or 'lj') or c_(r+1)."""
    if isinstance(component, int):
        component = f"l{component}"
    if component == "c0":
        return chart_expression(P, r, 0).alpha
    if component == f"c{r + 1}":
        return chart_expression(P, r, r).beta
    if component.startswith("l"):
        j = int(component[1:])
        if 1 <= j <= r:
            return chart_expression(P, r, j).alpha
    raise ValueError(f"unknown component {component!r} for A_{r}")


@dataclass
class AAnalysis:
    r: int
    charts: list[ChartExpression]
    valuations: dict[str, int]
    contacts: dict[int, int] = field(default_factory=dict)
    corners: list[int] = field(default_factory=list)

    def nu(self, j: int) -> int:
        """Valuation along l_j, with l_0 = c0 and l_(r+1) = c_(r+1)."""
        return self.valuations[component_ids(self.r)[j]]


def analyze_A(P: Poly, r: int) -> AAnalysis:
    charts = [chart_expression(P, r, k) for k in range(r + 1)]
    ids = component_ids(r)
    vals = {ids[0]: charts[0].alpha, ids[-1]: charts[r].beta}
    for j in range(1, r + 1):
        vals[ids[j]] = charts[j].alpha
        if charts[j - 1].beta != charts[j].alpha:
            raise AssertionError(f"chart valuations disagree on l{j}")
    res = AAnalysis(r, charts, vals)
    for j in range(1, r + 1):
        # points of l_j in U_j, plus the corner l_(j-1) . l_j seen from U_(j-1)
        on_j = charts[j].on_v_axis()
        at_corner = _order_at_zero(charts[j - 1].on_u_axis())
        res.contacts[j] = on_j.degree() + at_corner
        expected = 2 * res.nu(j) - res.nu(j - 1) - res.nu(j + 1)
        if res.contacts[j] != expected:
            raise AssertionError(
                f"residual contact on l{j} is {res.contacts[j]}, principal divisor predicts {expected}"
            )
    res.corners = [k for k in range(r + 1) if charts[k].residual.constant_term().is_zero()]
    return res


def divisor_profile_A(P: Poly, r: int) -> DivisorProfile:
    """div(pi^* P) on the minimal resolution of C^2/A_r.

    The residual (non-toric) part of P is reported as one open component
    ``res`` of multiplicity 1 whose intersection counts are the total
    contact orders with each l_j.
    """
    an = analyze_A(P, r)
    ids = component_ids(r)
    prof = DivisorProfile()
    prof.add(ids[0], OPEN, an.valuations[ids[0]])
    for j in range(1, r + 1):
        prof.add(ids[j], EXCEPTIONAL, an.valuations[ids[j]])
    prof.add(ids[-1], OPEN, an.valuations[ids[-1]])
    for j in range(r + 1):
        prof.connect(ids[j], ids[j + 1])
    if any(an.contacts.values()):
        prof.add(RESIDUAL, OPEN, 1)
        for j, n in an.contacts.items():
            prof.connect(RESIDUAL, ids[j], n)
    return prof
