"""E-type divisor profiles from the quotient map of P^1 by the projective group.

With the integer invariants the quotient map is

    E6: [Z, X^2]    E7: [Y^2, X^3]    E8: [Y^3, X^5]

and the fiber over [s:t] is the binary form t*phi1 - s*phi2.  A critical
value is one whose fiber has all roots of one multiplicity b > 1.  The
resolution graph is the central curve e with one chain of b_j - 1 curves
per critical value; a function whose homogeneous part of degree d vanishes
to order o_d at the points over v_j has valuation

    min_d (d (b_j - k) / 2 + k o_d) / b_j

on the k-th curve of that chain, and lowest-degree / 2 on e.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

from ..cyclo import CycloField, CycloNum, get_field
from ..invariants import InvariantTriple, invariant_triple, solve_syzygy
from ..poly import Poly, binary_divide, binary_order, binary_pattern, binary_radical
from .profile import EXCEPTIONAL, OPEN, DivisorProfile
from .type_a import divisor_profile_A

PROPER = "d"
CHAIN_TAGS = ("1", "2", "inf")

# critical values and branch indices for the classical (radical-scaled) invariants
CLASSICAL_VALUES = {
    6: (("i", 1), ("-i", 1), (1, 0)),
    7: ((0, 1), (1, 1), (1, 0)),
    8: ((0, 1), (-1, 1), (1, 0)),
}
CLASSICAL_INDICES = {6: (3, 3, 2), 7: (4, 2, 3), 8: (3, 2, 5)}


def e_field(r: int) -> CycloField:
    # E6 needs sqrt(-3) for its critical values
    return get_field({6: 24, 7: 8, 8: 5}[r])


def _check_kind(r: int) -> None:
    if r not in (6, 7, 8):
        raise ValueError(f"no E{r}")


@lru_cache(maxsize=None)
def e_invariants(r: int) -> InvariantTriple:
    _check_kind(r)
    return invariant_triple("E", r, e_field(r))


def quotient_map(r: int) -> tuple[Poly, Poly]:
    T = e_invariants(r)
    X, Y, Z = T.as_tuple()
    if r == 6:
        return Z, X**2
    if r == 7:
        return Y**2, X**3
    return Y**3, X**5


def fiber(r: int, value) -> Poly:
    s, t = value
    p1, p2 = quotient_map(r)
    return p1.scale(t) - p2.scale(s)


def _classical_values(f: CycloField, r: int):
    out = []
    for s, t in CLASSICAL_VALUES[r]:
        if s == "i":
            s = f.zeta(4)
        elif s == "-i":
            s = -f.zeta(4)
        out.append((f(s), f(t)))
    return out


def candidate_values(r: int) -> list[tuple[CycloNum, CycloNum]]:
    """Values to test for criticality.

    The classical values (for the radical-scaled forms), the two coordinate
    points, a few generic points, and the values predicted by the syzygy
    of the integer invariants:
      E6  X^4 + b Y^3 + g Z^2 = 0:  Z^2 + X^4/g is a cube, s = +-sqrt(-1/g)
      E7  X^3 Y + b Y^3 + g Z^2 = 0: X^3 + b Y^2 is a square, s = -1/b
      E8  X^5 + b Y^3 + g Z^2 = 0:   X^5 + b Y^3 is a square, s = -1/b
    """
    f = e_field(r)
    syz = solve_syzygy(e_invariants(r))
    _, beta, gamma = syz.coefficients
    derived = []
    if r == 6:
        s = f.sqrt_rational(Fraction(-1) / gamma)
        derived = [(s, f.one), (-s, f.one)]
    else:
        derived = [(f(Fraction(-1) / beta), f.one)]
    generic = [(f(a), f.one) for a in (1, -1, 2)]
    coords = [(f.zero, f.one), (f.one, f.zero)]
    out = []
    for v in derived + coords + _classical_values(f, r) + generic:
        if not any(_same_point(v, w) for w in out):
            out.append(v)
    return out


def _same_point(v, w) -> bool:
    return v[0] * w[1] == v[1] * w[0]


@dataclass
class BranchData:
    r: int
    values: list[tuple[CycloNum, CycloNum]]
    indices: tuple[int, int, int]
    fiber_counts: tuple[int, int, int]
    degree: int
    m: int
    rejected: list[tuple[tuple[CycloNum, CycloNum], dict[int, int]]] = field(default_factory=list)
    scalings: list[str] = field(default_factory=list)

    @property
    def b_inf(self) -> int:
        return self.indices[2]


class BranchError(ArithmeticError):
    pass


def _fmt(x: CycloNum) -> str:
    return str(x.to_fraction()) if x.is_rational() else repr(x)


@lru_cache(maxsize=None)
def branch_data(r: int) -> BranchData:
    _check_kind(r)
    p1, p2 = quotient_map(r)
    deg = p1.degree()
    if p2.degree() != deg:
        raise BranchError("quotient map forms of unequal degree")
    critical = []
    rejected = []
    for v in candidate_values(r):
        fb = fiber(r, v)
        if not fb:
            continue
        pat = binary_pattern(fb)
        if len(pat) == 1 and next(iter(pat)) > 1:
            critical.append((v, pat))
        else:
            rejected.append((v, pat))
    if len(critical) != 3:
        raise BranchError(f"E{r}: found {len(critical)} critical values, expected 3")
    inf = [c for c in critical if not c[0][1]]
    zero = [c for c in critical if not c[0][0]]
    rest = [c for c in critical if c[0][0] and c[0][1]]
    if len(inf) != 1:
        raise BranchError(f"E{r}: [1:0] is not critical")
    ordered = zero + rest + inf
    values = [c[0] for c in ordered]
    indices = tuple(next(iter(c[1])) for c in ordered)
    counts = tuple(next(iter(c[1].values())) for c in ordered)
    for b, n in zip(indices, counts):
        if b * n != deg:
            raise BranchError(f"E{r}: fiber of {n} points of index {b} has degree != {deg}")
    X = e_invariants(r).X
    if binary_pattern(X) != {1: X.degree()}:
        raise BranchError(f"E{r}: X is not squarefree")
    q = binary_divide(fiber(r, values[2]), X ** (deg // X.degree()))
    if q is None or q.degree() != 0:
        raise BranchError(f"E{r}: fiber over [1:0] is not a power of X")
    m = X.degree() // 2
    scalings = []
    for (s, t), (ps, pt) in zip(values, _classical_values(e_field(r), r)):
        if t and pt and s and ps:
            factor = s / ps
            note = f"[{_fmt(ps)}:1] -> [{_fmt(s)}:1], factor {_fmt(factor)}"
            if not factor.is_rational() and (factor * factor).is_rational():
                note += f" (factor^2 = {_fmt(factor * factor)})"
            scalings.append(note)
        else:
            scalings.append(f"[{_fmt(ps)}:{_fmt(pt)}] -> [{_fmt(s)}:{_fmt(t)}]")
    return BranchData(r, values, indices, counts, deg, m, rejected, scalings)


# -- divisor --------------------------------------------------------------------


def chain_ids(r: int) -> dict[str, list[str]]:
    bd = branch_data(r)
    return {
        tag: [f"l{tag}.{k}" for k in range(1, b)] for tag, b in zip(CHAIN_TAGS, bd.indices)
    }


def _fiber_radicals(r: int) -> list[Poly]:
    bd = branch_data(r)
    rads = [binary_radical(fiber(r, v)) for v in bd.values[:2]]
    return rads + [e_invariants(r).X]


def _integral(q: Fraction, where: str) -> int:
    if q.denominator != 1:
        raise ArithmeticError(f"non-integral multiplicity {q} on {where}")
    return q.numerator


def valuations_E(P: Poly, r: int) -> dict[str, int]:
    bd = branch_data(r)
    f = e_field(r)
    P = P.map_field(get_field(lcm(P.field.order, f.order))) if P.field != f else P
    if P.field != f:
        raise ValueError(f"coefficients outside Q(zeta_{f.order}) are not supported for E{r}")
    parts = P.homogeneous_parts()
    low = min(parts)
    vals = {"e": _integral(Fraction(low, 2), "e")}
    rads = _fiber_radicals(r)
    ids = chain_ids(r)
    for tag, b, rad in zip(CHAIN_TAGS, bd.indices, rads):
        orders = {d: binary_order(part, rad) for d, part in parts.items()}
        for k, cid in enumerate(ids[tag], 1):
            best = min(Fraction(d * (b - k), 2) + k * o for d, o in orders.items())
            vals[cid] = _integral(best / b, cid)
    return vals


def divisor_profile_E(r: int, P: Poly | None = None) -> DivisorProfile:
    """div(pi^* P) for P invariant under E_r (default P = X).

    Exceptional multiplicities come from the valuations; the proper
    transform d is one open component of multiplicity 1 whose contacts are
    fixed by div(P) . C = 0 on every (-2)-curve C.
    """
    if P is None:
        P = e_invariants(r).X
    vals = valuations_E(P, r)
    prof = DivisorProfile()
    prof.add("e", EXCEPTIONAL, vals["e"])
    for tag, chain in chain_ids(r).items():
        prev = "e"
        for cid in chain:
            prof.add(cid, EXCEPTIONAL, vals[cid])
            prof.connect(prev, cid)
            prev = cid
    defects = prof.principal_defects()
    contacts = {cid: -n for cid, n in defects.items()}
    if any(n < 0 for n in contacts.values()):
        raise ArithmeticError(f"negative proper-transform contact {contacts}")
    if any(contacts.values()):
        prof.add(PROPER, OPEN, 1)
        for cid, n in contacts.items():
            prof.connect(PROPER, cid, n)
    return prof


def edf_multiplicities(r: int) -> dict[str, int]:
    """The closed-form chain multiplicities m - mk/b_j and m - k."""
    bd = branch_data(r)
    m = bd.m
    out = {"e": m}
    for tag, b in zip(CHAIN_TAGS, bd.indices):
        for k in range(1, b):
            q = Fraction(m - k) if tag == "inf" else m - Fraction(m * k, b)
            out[f"l{tag}.{k}"] = _integral(q, f"l{tag}.{k}")
    return out


def local_model_valuations(r: int) -> dict[str, int]:
    """Chain multiplicities recomputed with the A-type engine on the local models.

    Near a point over v_j, X is z1^m (j = 1, 2) or z1^m z2 (j = inf) in
    coordinates where the stabilizer acts as A_(b-1).  In the invariants of
    that A_(b-1), z1^b = Y and z1 z2 = X.
    """
    bd = branch_data(r)
    m = bd.m
    out = {"e": m}
    f = get_field(1)
    z1, z2 = Poly.var(f, 0), Poly.var(f, 1)
    for tag, b in zip(CHAIN_TAGS, bd.indices):
        model = z1**m * z2 if tag == "inf" else z1**m
        prof = divisor_profile_A(model, b - 1)
        for k in range(1, b):
            out[f"l{tag}.{k}"] = prof.multiplicity(f"l{k}")
    return out
