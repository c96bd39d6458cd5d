"""McKay graphs from character tables computed modulo a prime (Dixon's method).

Central characters w(C) = |C| chi(g_C) / chi(1) are the common eigenvectors
of the class-multiplication matrices.  Over F_p with p = 1 mod the group
exponent all eigenvalues lie in F_p, so the eigenspaces are found by trying
every lambda in F_p.  Only small integers (degrees, tensor multiplicities)
are ever lifted back from F_p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt, lcm

from .dynkin import AffineDiagram, MatchResult, affine_diagram, find_isomorphism
from .groups import GroupData
from .linalg import nullspace_mod_p
from .resolution.profile import OPLUS


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def admissible_primes(modulus: int, lower: int):
    """Primes p = 1 mod ``modulus`` with p > lower, in increasing order."""
    p = (lower // modulus + 1) * modulus + 1
    while True:
        if is_prime(p):
            yield p
        p += modulus


def primitive_root(p: int) -> int:
    n = p - 1
    factors = [q for q in range(2, n + 1) if n % q == 0 and is_prime(q)]
    for g in range(2, p):
        if all(pow(g, n // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root mod {p}")


@dataclass
class ModularCharacterData:
    p: int
    class_sizes: list[int]
    representatives: list[int]
    inverse_class: list[int]
    table: list[list[int]]
    degrees: list[int]
    root: int = 0  # image of zeta_N in F_p used to reduce traces

    @property
    def size(self) -> int:
        return len(self.class_sizes)


class SplitError(ArithmeticError):
    pass


def class_constants(G: GroupData) -> list[list[list[int]]]:
    """c[i][j][l] = #{x in C_i : x^-1 g_l in C_j}, so C_i C_j = sum_l c[i][j][l] C_l."""
    k = len(G.classes)
    reps = [G.elements[cl[0]] for cl in G.classes]
    inv = [g.inverse() for g in G.elements]
    cls = G._class_index
    c = [[[0] * k for _ in range(k)] for _ in range(k)]
    for i, cl in enumerate(G.classes):
        for x in cl:
            xi = inv[x]
            for l, g in enumerate(reps):
                j = cls[G.index[xi * g]]
                c[i][j][l] += 1
    return c


def _split(c, p: int, order: list[int]) -> list[list[int]]:
    k = len(c)
    spaces = [[[1 if a == b else 0 for a in range(k)] for b in range(k)]]  # rows are basis vectors
    for j in order:
        A = c[j]  # A[i][l], acting on column vectors w_l
        nxt = []
        for basis in spaces:
            if len(basis) == 1:
                nxt.append(basis)
                continue
            # columns of A B and B for the basis vectors
            AB = [[sum(A[i][l] * b[l] for l in range(k)) % p for b in basis] for i in range(k)]
            B = [[b[i] for b in basis] for i in range(k)]
            found = 0
            for lam in range(p):
                M = [[(AB[i][s] - lam * B[i][s]) % p for s in range(len(basis))] for i in range(k)]
                kern = nullspace_mod_p(M, p)
                if kern:
                    vecs = [
                        [sum(a[s] * basis[s][l] for s in range(len(basis))) % p for l in range(k)]
                        for a in kern
                    ]
                    nxt.append(vecs)
                    found += len(kern)
                    if found == len(basis):
                        break
            if found != len(basis):
                raise SplitError(f"class matrix {j} is not diagonalizable over F_{p}")
        spaces = nxt
    if any(len(b) != 1 for b in spaces):
        raise SplitError("common eigenspaces did not split to lines")
    return [b[0] for b in spaces]


def _reduce(x, p: int, root: int) -> int:
    acc = 0
    for i, a in enumerate(x.num):
        if a:
            acc += a * pow(root, i, p)
    return acc * pow(x.den, p - 2, p) % p


def character_data(G: GroupData) -> ModularCharacterData:
    order = G.order
    k = len(G.classes)
    sizes = [len(cl) for cl in G.classes]
    reps = [cl[0] for cl in G.classes]
    inv_class = [G._class_index[G.index[G.elements[r].inverse()]] for r in reps]
    c = class_constants(G)
    modulus = lcm(G.exponent(), G.field.order)
    split_order = sorted(range(1, k), key=lambda j: (sizes[j], j))
    last_err = None
    for attempt, p in enumerate(admissible_primes(modulus, 2 * order)):
        if attempt >= 5:
            break
        try:
            vectors = _split(c, p, split_order)
        except SplitError as err:
            last_err = err
            continue
        rows, degrees = [], []
        for w in vectors:
            w0 = pow(w[0], p - 2, p)
            w = [x * w0 % p for x in w]
            s = sum(w[l] * w[inv_class[l]] * pow(sizes[l], p - 2, p) for l in range(k)) % p
            d2 = order * pow(s, p - 2, p) % p
            d = next((d for d in range(1, isqrt(order) + 1) if d * d % p == d2), None)
            if d is None:
                raise SplitError(f"no degree with square {d2} mod {p}")
            rows.append([d * w[l] * pow(sizes[l], p - 2, p) % p for l in range(k)])
            degrees.append(d)
        perm = sorted(range(k), key=lambda i: (degrees[i], [x for x in rows[i]]))
        rows = [rows[i] for i in perm]
        degrees = [degrees[i] for i in perm]
        if any(x != 1 for x in rows[0]):
            raise SplitError("first character is not trivial")
        root = pow(primitive_root(p), (p - 1) // G.field.order, p)
        return ModularCharacterData(p, sizes, reps, inv_class, rows, degrees, root)
    raise SplitError(f"no admissible prime split the class algebra: {last_err}")


@dataclass
class McKayGraph:
    dimensions: list[int]
    adjacency: list[list[int]]
    names: list[str] = field(default_factory=list)

    def edges(self) -> dict[frozenset, int]:
        out = {}
        n = len(self.dimensions)
        for i in range(n):
            for j in range(i + 1, n):
                if self.adjacency[i][j]:
                    out[frozenset((self.names[i], self.names[j]))] = self.adjacency[i][j]
        return out

    def to_dot(self, title: str = "mckay") -> str:
        lines = [f'graph "{title}" {{']
        for i, (n, d) in enumerate(zip(self.names, self.dimensions)):
            shape = "doublecircle" if i == 0 else "circle"
            lines.append(f'  "{n}" [label="{n}:{d}", shape={shape}];')
        for key, k in sorted(self.edges().items(), key=lambda e: sorted(e[0], key=self.names.index)):
            a, b = sorted(key, key=self.names.index)
            for _ in range(k):
                lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "nodes": [{"id": n, "dimension": d} for n, d in zip(self.names, self.dimensions)],
            "adjacency": self.adjacency,
        }


def mckay_graph(G: GroupData, data: ModularCharacterData | None = None) -> McKayGraph:
    data = data or character_data(G)
    p, k = data.p, data.size
    chi_v = [_reduce(G.elements[r].trace(), p, data.root) for r in data.representatives]
    inv_order = pow(G.order, p - 2, p)
    A = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            s = 0
            for l in range(k):
                s += data.class_sizes[l] * chi_v[l] * data.table[i][l] * data.table[j][data.inverse_class[l]]
            val = s * inv_order % p
            if val >= 3:
                raise ArithmeticError(f"tensor multiplicity lifted to {val}")
            A[i][j] = val
    names = [f"chi{i}" for i in range(k)]
    return McKayGraph(list(data.degrees), A, names)


@dataclass
class McKayReport:
    graph: McKayGraph
    match: MatchResult
    burnside: bool
    dimension_identity: bool
    symmetric: bool
    loopless: bool

    @property
    def ok(self) -> bool:
        return bool(self.match) and self.burnside and self.dimension_identity and self.symmetric and self.loopless


def verify_mckay(G: GroupData, diagram: AffineDiagram | None = None) -> McKayReport:
    diagram = diagram or affine_diagram(G.kind, G.r)
    M = mckay_graph(G)
    d = M.dimensions
    n = len(d)
    burnside = sum(x * x for x in d) == G.order
    ident = all(2 * d[i] == sum(M.adjacency[i][j] * d[j] for j in range(n)) for i in range(n))
    symmetric = all(M.adjacency[i][j] == M.adjacency[j][i] for i in range(n) for j in range(n))
    loopless = all(M.adjacency[i][i] == 0 for i in range(n))
    marks = dict(zip(M.names, d))
    iso = find_isomorphism(marks, M.edges(), diagram.marks, diagram.edges, {M.names[0]: diagram.oplus})
    if iso is None:
        match = MatchResult(False, reason="McKay graph is not isomorphic to the diagram", diagram=diagram.label)
    else:
        match = MatchResult(True, iso, diagram=diagram.label)
    return McKayReport(M, match, burnside, ident, symmetric, loopless)


__all__ = [
    "ModularCharacterData", "McKayGraph", "McKayReport", "character_data",
    "mckay_graph", "verify_mckay", "admissible_primes", "OPLUS",
]
