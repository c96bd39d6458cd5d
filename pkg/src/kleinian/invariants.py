"""Basic invariants X, Y, Z of each Kleinian group and their syzygy.

A and D types use the classical forms with rational coefficients.  For the
E types the radical scalars in front of the classical forms (cube roots,
fifth roots, sqrt 3, ...) are dropped and the integer forms are kept:

    E6: (f6, f8, f12)    E7: (f8, f6^2, f6 f12)    E8: (F12, F20, Jac(F12, F20))

with F20 = det Hess(F12).  Multiplicities of divisors do not see nonzero
scalars, and the syzygy is rediscovered with rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

from .cyclo import CycloField, get_field
from .expr import parse_polynomial, required_order
from .groups import GroupData, field_order, validate
from .linalg import nullspace
from .poly import Poly, hessian_det, jacobian_det, substitute_linear


@dataclass
class InvariantTriple:
    kind: str
    r: int
    X: Poly
    Y: Poly
    Z: Poly
    normalization: str = ""

    @property
    def field(self) -> CycloField:
        return self.X.field

    @property
    def degrees(self) -> tuple[int, int, int]:
        return (self.X.degree(), self.Y.degree(), self.Z.degree())

    def as_tuple(self):
        return (self.X, self.Y, self.Z)

    def map_field(self, target: CycloField) -> "InvariantTriple":
        return InvariantTriple(
            self.kind, self.r,
            self.X.map_field(target), self.Y.map_field(target), self.Z.map_field(target),
            self.normalization,
        )


def _vars(f: CycloField):
    return Poly.var(f, 0), Poly.var(f, 1)


def klein_forms(f: CycloField) -> dict[str, Poly]:
    z1, z2 = _vars(f)
    f6 = z1 * z2 * (z1**4 - z2**4)
    f8 = z1**8 + 14 * z1**4 * z2**4 + z2**8
    f12 = z1**12 - 33 * z1**8 * z2**4 - 33 * z1**4 * z2**8 + z2**12
    F12 = z1 * z2 * (z1**10 + 11 * z1**5 * z2**5 - z2**10)
    F20 = hessian_det(F12)
    F30 = jacobian_det(F12, F20)
    return {"f6": f6, "f8": f8, "f12": f12, "F12": F12, "F20": F20, "F30": F30}


NORMALIZATIONS = {
    6: "X = f6, Y = f8, Z = f12; classical scalars 1, -1/(3 cbrt 4), 1/(6 sqrt 3) dropped",
    7: "X = f8, Y = f6^2, Z = f6 f12; classical scalars -1/cbrt 3, -6, i sqrt 2 dropped",
    8: "X = F12, Y = F20, Z = Jac(F12, F20); classical scalars -5th-root(1728), 1/121, 1/20 dropped",
}


def invariant_triple(kind: str, r: int, field: CycloField | None = None) -> InvariantTriple:
    validate(kind, r)
    f = field or get_field(field_order(kind, r))
    z1, z2 = _vars(f)
    if kind == "A":
        return InvariantTriple(kind, r, z1 * z2, z1 ** (r + 1), z2 ** (r + 1), "as classical")
    if kind == "D":
        n = 2 * r - 4
        half = Fraction(1, 2)
        return InvariantTriple(
            kind, r,
            z1**2 * z2**2,
            (z1**n + z2**n).scale(half),
            (z1 * z2 * (z1**n - z2**n)).scale(half),
            "as classical",
        )
    k = klein_forms(f)
    if r == 6:
        X, Y, Z = k["f6"], k["f8"], k["f12"]
    elif r == 7:
        X, Y, Z = k["f8"], k["f6"] ** 2, k["f6"] * k["f12"]
    else:
        X, Y, Z = k["F12"], k["F20"], k["F30"]
    return InvariantTriple(kind, r, X, Y, Z, NORMALIZATIONS[r])


def expected_degrees(kind: str, r: int) -> tuple[int, int, int]:
    if kind == "A":
        return (2, r + 1, r + 1)
    if kind == "D":
        return (4, 2 * r - 4, 2 * r - 2)
    return {6: (6, 8, 12), 7: (8, 12, 18), 8: (12, 20, 30)}[r]


@dataclass
class InvarianceReport:
    failures: dict[str, list[int]] = dc_field(default_factory=dict)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def verify_invariance(T: InvariantTriple, G: GroupData) -> InvarianceReport:
    """Check P(g z) = P(z) for every element g and every invariant P."""
    if T.kind != G.kind or T.r != G.r:
        raise ValueError(f"invariants of {T.kind}{T.r} checked against {G.label}")
    polys = {n: p if p.field == G.field else p.map_field(G.field) for n, p in zip("XYZ", T.as_tuple())}
    report = InvarianceReport({n: [] for n in polys})
    for i, g in enumerate(G.elements):
        for n, p in polys.items():
            if substitute_linear(p, g) != p:
                report.failures[n].append(i)
        report.checked += 1
    return report


# -- syzygy ----------------------------------------------------------------

# exponent triples (a, b, c) for X^a Y^b Z^c
def syzygy_monomials(kind: str, r: int) -> list[tuple[int, int, int]]:
    if kind == "A":
        return [(r + 1, 0, 0), (0, 1, 1)]
    if kind == "D":
        return [(r - 1, 0, 0), (1, 2, 0), (0, 0, 2)]
    return {6: [(4, 0, 0), (0, 3, 0), (0, 0, 2)],
            7: [(3, 1, 0), (0, 3, 0), (0, 0, 2)],
            8: [(5, 0, 0), (0, 3, 0), (0, 0, 2)]}[r]


@dataclass
class Syzygy:
    monomials: list[tuple[int, int, int]]
    coefficients: list[Fraction]

    def as_poly(self, field: CycloField) -> Poly:
        return Poly(field, {m: c for m, c in zip(self.monomials, self.coefficients)}, 3)

    def __str__(self):
        parts = []
        for (a, b, c), q in zip(self.monomials, self.coefficients):
            mon = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip("XYZ", (a, b, c)) if k
            )
            if q == 1:
                parts.append(mon)
            elif q == -1:
                parts.append(f"-{mon}")
            else:
                parts.append(f"{q}*{mon}")
        return " + ".join(parts).replace("+ -", "- ") + " = 0"


class SyzygyError(ArithmeticError):
    pass


def _expand_monomial(T: InvariantTriple, exps) -> Poly:
    out = Poly.const(T.field, 1)
    for p, k in zip(T.as_tuple(), exps):
        if k:
            out = out * p**k
    return out


def solve_syzygy(T: InvariantTriple) -> Syzygy:
    """Find the unique linear relation among the admissible monomials in X, Y, Z."""
    mons = syzygy_monomials(T.kind, T.r)
    expanded = [_expand_monomial(T, m) for m in mons]
    support = sorted(set().union(*(p.terms for p in expanded)))
    rows = [[p.coeff(e) for p in expanded] for e in support]
    basis = nullspace(rows, T.field.zero, T.field.one)
    if not basis:
        raise SyzygyError(f"no relation among {mons} for {T.kind}{T.r}")
    if len(basis) > 1:
        raise SyzygyError(f"relation space of dimension {len(basis)} for {T.kind}{T.r}")
    vec = basis[0]
    lead = next(x for x in vec if x)
    vec = [x / lead for x in vec]
    if not all(x.is_rational() for x in vec):
        raise SyzygyError("relation with irrational coefficients")
    return Syzygy(mons, [x.to_fraction() for x in vec])


def check_syzygy(T: InvariantTriple, S: Syzygy) -> bool:
    return expand_xyz(S.as_poly(T.field), T).is_zero()


# -- expressions in X, Y, Z ------------------------------------------------


def expand_xyz(expr, T: InvariantTriple) -> Poly:
    """Substitute the concrete invariants into a polynomial in X, Y, Z.

    ``expr`` is a 3-variable Poly or a string in the expression grammar.  The
    result lives in the smallest field containing both coefficient fields.
    """
    if isinstance(expr, str):
        n = lcm(T.field.order, required_order(expr))
        expr = parse_polynomial(expr, get_field(n))
    n = lcm(T.field.order, expr.field.order)
    target = get_field(n)
    images = [p.map_field(target) for p in T.as_tuple()]
    return expr.map_field(target).compose(images)
