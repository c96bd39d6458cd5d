"""The Kleinian subgroups of SL2 built from explicit generators.

Generators (omega_N = exp(2 pi i / N)):

    sigma_N = diag(omega_N, omega_N^-1)
    tau     = [[0, 1], [-1, 0]]
    mu      = (1/sqrt 2) [[omega_8^7, omega_8^7], [omega_8^5, omega_8]]
    kappa   = (1/sqrt 5) [[w^4 - w, w^2 - w^3], [w^2 - w^3, w - w^4]],  w = omega_5

    A_r = <sigma_{r+1}>,  D_r = <sigma_{2r-4}, tau>,  E6 = <sigma_4, tau, mu>,
    E7 = <sigma_8, tau, mu>,  E8 = <sigma_10, kappa>

The (2,2) entry of mu is omega_8.  The variant with omega_8^7 in that slot
(``mu_variant``) has determinant (1 - i)/2 and lies outside SL2.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import lcm

from .cyclo import CycloField, CycloNum, get_field

KINDS = ("A", "D", "E")

MU_NOTE = (
    "mu uses entry (2,2) = omega_8 rather than omega_8^7: "
    "the omega_8^7 variant has determinant (1 - i)/2, the corrected one has "
    "determinant 1 and satisfies mu^3 = -1, mu tau = -sigma_4 tau mu, mu sigma_4 = tau^-1 mu"
)


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over a cyclotomic field."""

    a: CycloNum
    b: CycloNum
    c: CycloNum
    d: CycloNum

    def rows(self):
        return (self.a, self.b), (self.c, self.d)

    @property
    def field(self) -> CycloField:
        return self.a.field

    def __mul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def det(self) -> CycloNum:
        return self.a * self.d - self.b * self.c

    def trace(self) -> CycloNum:
        return self.a + self.d

    def inverse(self) -> "Mat2":
        det = self.det()
        if det == 1:
            return Mat2(self.d, -self.b, -self.c, self.a)
        inv = det.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            return self.inverse() ** (-k)
        one, zero = self.field.one, self.field.zero
        result = Mat2(one, zero, zero, one)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_scalar(self) -> bool:
        return not self.b and not self.c and self.a == self.d

    def __repr__(self):
        return f"Mat2({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def identity(field: CycloField) -> Mat2:
    return Mat2(field.one, field.zero, field.zero, field.one)


# -- parameters ------------------------------------------------------------


def validate(kind: str, r: int) -> None:
    if kind == "A" and r >= 1:
        return
    if kind == "D" and r >= 4:
        return
    if kind == "E" and r in (6, 7, 8):
        return
    raise ValueError(f"no Kleinian group of type {kind}{r}")


def expected_order(kind: str, r: int) -> int:
    validate(kind, r)
    if kind == "A":
        return r + 1
    if kind == "D":
        return 4 * (r - 2)
    return {6: 24, 7: 48, 8: 120}[r]


def field_order(kind: str, r: int) -> int:
    """Smallest cyclotomic field holding every generator entry."""
    validate(kind, r)
    if kind == "A":
        return r + 1
    if kind == "D":
        return lcm(4, 2 * r - 4)
    return 5 if r == 8 else 8


def label(kind: str, r: int) -> str:
    return f"{kind}{r}"


def parse_label(text: str) -> tuple[str, int]:
    """'E8' -> ('E', 8); 'D 5' and 'd5' also accepted."""
    t = text.replace(" ", "").upper()
    if not t or t[0] not in KINDS or not t[1:].isdigit():
        raise ValueError(f"cannot parse group label {text!r}")
    kind, r = t[0], int(t[1:])
    validate(kind, r)
    return kind, r


# -- generators ------------------------------------------------------------


def sigma(field: CycloField, n: int) -> Mat2:
    w = field.zeta(n)
    return Mat2(w, field.zero, field.zero, w.inverse())


def tau(field: CycloField) -> Mat2:
    return Mat2(field.zero, field.one, -field.one, field.zero)


def mu(field: CycloField) -> Mat2:
    w = lambda k: field.zeta(8, k)  # noqa: E731
    inv_sqrt2 = (w(1) + w(7)) / 2
    return Mat2(w(7) * inv_sqrt2, w(7) * inv_sqrt2, w(5) * inv_sqrt2, w(1) * inv_sqrt2)


def mu_variant(field: CycloField) -> Mat2:
    w = lambda k: field.zeta(8, k)  # noqa: E731
    inv_sqrt2 = (w(1) + w(7)) / 2
    return Mat2(w(7) * inv_sqrt2, w(7) * inv_sqrt2, w(5) * inv_sqrt2, w(7) * inv_sqrt2)


def kappa(field: CycloField) -> Mat2:
    w = lambda k: field.zeta(5, k)  # noqa: E731
    inv_sqrt5 = (2 * (w(1) + w(4)) + 1).inverse()
    return Mat2(
        (w(4) - w(1)) * inv_sqrt5,
        (w(2) - w(3)) * inv_sqrt5,
        (w(2) - w(3)) * inv_sqrt5,
        (w(1) - w(4)) * inv_sqrt5,
    )


def generators(kind: str, r: int, field: CycloField | None = None) -> dict[str, Mat2]:
    field = field or get_field(field_order(kind, r))
    if kind == "A":
        return {f"sigma_{r + 1}": sigma(field, r + 1)}
    if kind == "D":
        return {f"sigma_{2 * r - 4}": sigma(field, 2 * r - 4), "tau": tau(field)}
    if r == 6:
        return {"sigma_4": sigma(field, 4), "tau": tau(field), "mu": mu(field)}
    if r == 7:
        return {"sigma_8": sigma(field, 8), "tau": tau(field), "mu": mu(field)}
    return {"sigma_10": sigma(field, 10), "kappa": kappa(field)}


# -- groups ----------------------------------------------------------------


@dataclass
class GroupData:
    kind: str
    r: int
    field: CycloField
    generators: dict[str, Mat2]
    elements: list[Mat2]
    classes: list[list[int]] = dc_field(default_factory=list)
    center: list[int] = dc_field(default_factory=list)

    def __post_init__(self):
        self.index = {g: i for i, g in enumerate(self.elements)}

    @property
    def label(self) -> str:
        return label(self.kind, self.r)

    @property
    def order(self) -> int:
        return len(self.elements)

    def class_of(self, g: Mat2) -> int:
        i = self.index[g]
        return self._class_index[i]

    @property
    def _class_index(self):
        if not hasattr(self, "_ci"):
            ci = [0] * self.order
            for k, cl in enumerate(self.classes):
                for i in cl:
                    ci[i] = k
            self._ci = ci
        return self._ci

    def element_order(self, g: Mat2) -> int:
        one = identity(self.field)
        k, h = 1, g
        while h != one:
            h, k = h * g, k + 1
        return k

    def exponent(self) -> int:
        e = 1
        for cl in self.classes:
            e = lcm(e, self.element_order(self.elements[cl[0]]))
        return e


class ClosureError(RuntimeError):
    pass


def build_group(kind: str, r: int) -> GroupData:
    """Enumerate the group by breadth-first closure of its generators."""
    validate(kind, r)
    field = get_field(field_order(kind, r))
    gens = generators(kind, r, field)
    cap = 4 * expected_order(kind, r)
    one = identity(field)
    seen = {one: None}
    elements = [one]
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens.values():
                y = x * g
                if y not in seen:
                    seen[y] = None
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise ClosureError(
                            f"closure of {kind}{r} generators exceeded {cap} elements"
                        )
        frontier = nxt
    G = GroupData(kind, r, field, gens, elements)
    G.classes = conjugacy_classes(G)
    G.center = center(G)
    return G


def conjugacy_classes(G: GroupData) -> list[list[int]]:
    """Classes as lists of element indices, ordered by first element index."""
    assigned = [False] * G.order
    inverses = [g.inverse() for g in G.elements]
    classes = []
    for i, x in enumerate(G.elements):
        if assigned[i]:
            continue
        cl = set()
        for g, gi in zip(G.elements, inverses):
            cl.add(G.index[g * x * gi])
        for j in cl:
            assigned[j] = True
        classes.append(sorted(cl))
    return classes


def center(G: GroupData) -> list[int]:
    if G.classes:
        return [cl[0] for cl in G.classes if len(cl) == 1]
    return [i for i, z in enumerate(G.elements) if all(z * g == g * z for g in G.generators.values())]


def projective_order(G: GroupData) -> int:
    """|G / (G n {+-1})|, the order of the image in PSL2."""
    minus_one = -identity(G.field)
    return G.order // (2 if minus_one in G.index else 1)


def check_relations(G: GroupData, mu_matrix: Mat2 | None = None) -> dict[str, bool]:
    """Check the generator relations that make sense for this group's generators.

    Relations involving sigma_4 or mu are checked only where both live in the
    group's field; ``mu_matrix`` overrides mu (to expose the omega_8^7 variant).
    """
    f = G.field
    one = identity(f)
    minus = -one
    out: dict[str, bool] = {}
    gens = G.generators
    for name, g in gens.items():
        out[f"det({name}) = 1"] = g.det() == 1
    sig_name = next((n for n in gens if n.startswith("sigma_")), None)
    s = gens[sig_name] if sig_name else None
    if "tau" in gens:
        t = gens["tau"]
        out["tau^2 = -1"] = t * t == minus
        out[f"tau {sig_name} = {sig_name}^-1 tau"] = t * s == s.inverse() * t
    if "mu" in gens or mu_matrix is not None:
        m = mu_matrix if mu_matrix is not None else gens["mu"]
        t = tau(f)
        s4 = sigma(f, 4)
        out["mu^3 = -1"] = m**3 == minus
        out["mu tau = -sigma_4 tau mu"] = m * t == -(s4 * t * m)
        out["mu sigma_4 = tau^-1 mu"] = m * s4 == t.inverse() * m
        out["det(mu) = 1"] = m.det() == 1
    if "kappa" in gens:
        k = gens["kappa"]
        out["kappa^2 = -1"] = k * k == minus
    if s is not None:
        n = int(sig_name.split("_")[1])
        out[f"{sig_name}^{n} = 1"] = s**n == one
    return out
