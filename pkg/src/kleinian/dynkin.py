"""Affine A-D-E diagrams, their Cartan matrices, and marked-graph matching."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .groups import validate
from .linalg import rational_nullspace
from .resolution.profile import OPLUS, DivisorProfile

KODAIRA = {"E6": "IV*", "E7": "III*", "E8": "II*"}


@dataclass
class AffineDiagram:
    kind: str
    r: int
    nodes: list[str]
    marks: dict[str, int]
    edges: dict[frozenset, int]
    oplus: str = OPLUS
    kodaira: str = ""

    @property
    def label(self) -> str:
        return f"{self.kind}{self.r}~"

    def mark_vector(self) -> list[int]:
        return [self.marks[n] for n in self.nodes]

    def edge_list(self) -> list[tuple[str, str, int]]:
        idx = {n: i for i, n in enumerate(self.nodes)}
        out = []
        for key, k in self.edges.items():
            a, b = sorted(key, key=idx.__getitem__) if len(key) == 2 else (next(iter(key)),) * 2
            out.append((a, b, k))
        return sorted(out, key=lambda e: (idx[e[0]], idx[e[1]]))

    def to_dot(self) -> str:
        lines = [f'graph "{self.label}" {{']
        for n in self.nodes:
            shape = "doublecircle" if n == self.oplus else "circle"
            lines.append(f'  "{n}" [label="{n}:{self.marks[n]}", shape={shape}];')
        for a, b, k in self.edge_list():
            for _ in range(k):
                lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "kind": self.label,
            "kodaira": self.kodaira,
            "nodes": [{"id": n, "mark": self.marks[n], "oplus": n == self.oplus} for n in self.nodes],
            "edges": [[a, b, k] for a, b, k in self.edge_list()],
        }


def _diagram(kind, r, chain_marks: list[tuple[str, int]], extra_edges, kodaira) -> AffineDiagram:
    nodes = [n for n, _ in chain_marks]
    marks = dict(chain_marks)
    edges: dict[frozenset, int] = {}
    for a, b in extra_edges:
        key = frozenset((a, b))
        edges[key] = edges.get(key, 0) + 1
    return AffineDiagram(kind, r, nodes, marks, edges, OPLUS, kodaira)


def affine_diagram(kind: str, r: int) -> AffineDiagram:
    validate(kind, r)
    if kind == "A":
        names = [OPLUS] + [f"a{j}" for j in range(1, r + 1)]
        edges = [(names[i], names[(i + 1) % (r + 1)]) for i in range(r + 1)]
        return _diagram(kind, r, [(n, 1) for n in names], edges, f"I{r + 1}")
    if kind == "D":
        chain = [f"d{j}" for j in range(2, r - 1)]
        nodes = [(OPLUS, 1), ("d1", 1)] + [(n, 2) for n in chain] + [("e1", 1), ("e2", 1)]
        edges = [(OPLUS, "d2"), ("d1", "d2")]
        edges += list(zip(chain, chain[1:]))
        edges += [(chain[-1], "e1"), (chain[-1], "e2")]
        return _diagram(kind, r, nodes, edges, f"I{r - 4}*")
    if r == 6:
        chain = [("a1", 1), ("a2", 2), ("a3", 3), ("a4", 2), ("a5", 1)]
        nodes = chain + [("b", 2), (OPLUS, 1)]
        edges = [("a1", "a2"), ("a2", "a3"), ("a3", "a4"), ("a4", "a5"), ("a3", "b"), ("b", OPLUS)]
    elif r == 7:
        chain = [("a1", 1), ("a2", 2), ("a3", 3), ("a4", 4), ("a5", 3), ("a6", 2), (OPLUS, 1)]
        nodes = chain + [("b", 2)]
        names = [n for n, _ in chain]
        edges = list(zip(names, names[1:])) + [("a4", "b")]
    else:
        chain = [(OPLUS, 1), ("a1", 2), ("a2", 3), ("a3", 4), ("a4", 5), ("a5", 6), ("a6", 4), ("a7", 2)]
        nodes = chain + [("b", 3)]
        names = [n for n, _ in chain]
        edges = list(zip(names, names[1:])) + [("a5", "b")]
    return _diagram(kind, r, nodes, edges, KODAIRA[f"E{r}"])


def cartan_matrix(D: AffineDiagram) -> list[list[int]]:
    idx = {n: i for i, n in enumerate(D.nodes)}
    size = len(D.nodes)
    C = [[2 if i == j else 0 for j in range(size)] for i in range(size)]
    for key, k in D.edges.items():
        a, b = tuple(key)
        C[idx[a]][idx[b]] -= k
        C[idx[b]][idx[a]] -= k
    return C


def null_vector(C: list[list[int]]) -> list[int]:
    """Minimal positive integer kernel vector of an affine Cartan matrix."""
    basis = rational_nullspace(C)
    if len(basis) != 1:
        raise ValueError(f"kernel of dimension {len(basis)}, expected 1")
    vec = basis[0]
    den = 1
    for q in vec:
        den = lcm(den, Fraction(q).denominator)
    ints = [int(q * den) for q in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if all(x < 0 for x in ints if x):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise ValueError(f"kernel vector {ints} is not positive")
    return ints


# -- matching --------------------------------------------------------------------


def find_isomorphism(
    marks_a: dict[str, int],
    edges_a: dict[frozenset, int],
    marks_b: dict[str, int],
    edges_b: dict[frozenset, int],
    fixed: dict[str, str] | None = None,
) -> dict[str, str] | None:
    """Mark- and edge-multiplicity-preserving bijection from graph a to graph b.

    Backtracking in a fixed node order; candidates pruned by mark and by
    weighted degree.  Returns the first mapping found, or None.
    """
    if len(marks_a) != len(marks_b):
        return None

    def degrees(marks, edges):
        deg = {n: 0 for n in marks}
        for key, k in edges.items():
            for n in key:
                deg[n] += k
        return deg

    deg_a, deg_b = degrees(marks_a, edges_a), degrees(marks_b, edges_b)
    order = list(marks_a)
    fixed = dict(fixed or {})
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def compatible(a, b) -> bool:
        if marks_a[a] != marks_b[b] or deg_a[a] != deg_b[b]:
            return False
        for a2, b2 in mapping.items():
            if edges_a.get(frozenset((a, a2)), 0) != edges_b.get(frozenset((b, b2)), 0):
                return False
        return True

    def extend(i) -> bool:
        if i == len(order):
            return True
        a = order[i]
        choices = [fixed[a]] if a in fixed else [b for b in marks_b if b not in fixed.values()]
        for b in choices:
            if b in used or not compatible(a, b):
                continue
            mapping[a] = b
            used.add(b)
            if extend(i + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    return dict(mapping) if extend(0) else None


@dataclass
class MatchResult:
    ok: bool
    mapping: dict[str, str] = field(default_factory=dict)
    reason: str = ""
    diagram: str = ""

    def __bool__(self):
        return self.ok

    def to_dict(self):
        if not self.ok:
            return None
        return {"kind": self.diagram, "mapping": dict(self.mapping)}


def match_profile(P: DivisorProfile, D: AffineDiagram) -> MatchResult:
    """Match a divisor profile against an affine diagram; all open curves go to the oplus node."""
    Q = P.coalesce_open(OPLUS)
    opens = Q.open_components()
    if len(opens) != 1:
        return MatchResult(False, reason="profile has no open component", diagram=D.label)
    marks = Q.multiplicities()
    if len(marks) != len(D.nodes):
        return MatchResult(
            False, reason=f"{len(marks)} components against {len(D.nodes)} diagram nodes",
            diagram=D.label,
        )
    if sorted(marks.values()) != sorted(D.marks.values()):
        return MatchResult(
            False,
            reason=f"multiplicities {sorted(marks.values())} differ from marks {sorted(D.marks.values())}",
            diagram=D.label,
        )
    iso = find_isomorphism(marks, Q.adjacency, D.marks, D.edges, {OPLUS: D.oplus})
    if iso is None:
        return MatchResult(False, reason="no mark-preserving graph isomorphism", diagram=D.label)
    label = "+".join(Q.merged.get(OPLUS, [OPLUS]))
    mapping = {(label if k == OPLUS else k): v for k, v in iso.items()}
    return MatchResult(True, mapping, diagram=D.label)
