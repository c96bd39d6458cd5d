"""End-to-end verification of one Kleinian group.

Every check is independent and records a verdict, a short detail line and
its wall time.  The report passes only when every check passes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .cyclo import CycloNum, get_field
from .dynkin import affine_diagram, cartan_matrix, match_profile, null_vector
from .expr import parse_number
from .groups import MU_NOTE, build_group, check_relations, expected_order, validate
from .invariants import (
    check_syzygy,
    invariant_triple,
    solve_syzygy,
    verify_invariance,
)
from .mckay import verify_mckay
from .probes import probe
from .resolution.profile import OPLUS
from .resolution.type_a import divisor_profile_A
from .resolution.type_d import DegenerateParameter, degenerate_check, divisor_profile_D
from .resolution.type_e import branch_data, divisor_profile_E, edf_multiplicities

# candidates whose divisor must match F's; "F" is replaced by the distinguished function
UNIT_CANDIDATES = {
    "A": ["(1+X)*X", "(2+Y)*X", "(3-Z+X)*X", "X*(1+Y*Z)", "5*X"],
    "D": ["(1+X)*F", "(2+Z)*F", "zeta(4)*F", "(1+Y)*F", "(7-X*Z)*F"],
    "E": ["(1+X)*X", "(2+Y)*X", "(1+Z)*X", "(1+Y)*X", "3*X"],
}
ADVERSARIAL = {
    "A": ["Y", "Z", "X^2+Y", "X^3+Z", "X*Y"],
    "D": ["Z", "X", "X^2", "X^2+Z", "X*Y"],
    "E": ["Y", "Z", "X^2", "Y+Z", "X*Y"],
}
DEFAULT_C = Fraction(2)


def format_number(x) -> str:
    """Exact literal in the command-line grammar, e.g. 1/2 or (3 + 2*zeta(8)^3)."""
    if not isinstance(x, CycloNum):
        return str(x)
    if x.is_rational():
        return str(x.to_fraction())
    n = x.field.order
    terms = []
    for k, q in enumerate(x.coefficients):
        if not q:
            continue
        base = "1" if k == 0 else (f"zeta({n})" if k == 1 else f"zeta({n})^{k}")
        if k == 0:
            terms.append(str(q))
        elif q == 1:
            terms.append(base)
        elif q == -1:
            terms.append(f"-{base}")
        else:
            terms.append(f"{q}*{base}")
    return "(" + " + ".join(terms).replace("+ -", "- ") + ")"


def same_number(a: CycloNum, b: CycloNum) -> bool:
    f = get_field(lcm(a.field.order, b.field.order))
    return f.embed(a) == f.embed(b)


def parse_c(text) -> CycloNum:
    if isinstance(text, CycloNum):
        return text
    if isinstance(text, (int, Fraction)):
        return get_field(4)(text)
    return parse_number(str(text))


def sample_c(r: int, count: int = 3, seed: int = 0) -> list[Fraction]:
    """Admissible rational parameters for D_r, drawn deterministically."""
    rng = random.Random(seed * 1009 + r)
    out: list[Fraction] = []
    while len(out) < count:
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if q in out:
            continue
        if degenerate_check(q, r):
            out.append(q)
    return out


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def to_dict(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail, "seconds": round(self.seconds, 3)}


@dataclass
class VerificationReport:
    kind: str
    r: int
    c: str | None = None
    checks: list[Check] = field(default_factory=list)
    profile: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def target(self) -> str:
        base = f"{self.kind}{self.r}"
        return base if self.c is None else f"{base} c={self.c}"

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(ch.ok for ch in self.checks)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "r": self.r,
            "c": self.c,
            "ok": self.ok,
            "checks": [ch.to_dict() for ch in self.checks],
            "profile": self.profile,
            "notes": list(self.notes),
        }

    def render(self, timings: bool = True) -> str:
        lines = [f"{self.target}: {'PASS' if self.ok else 'FAIL'}"]
        for ch in self.checks:
            t = f" [{ch.seconds:.2f}s]" if timings else ""
            lines.append(f"  {'ok  ' if ch.ok else 'FAIL'} {ch.name}: {ch.detail}{t}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


class _Runner:
    def __init__(self, report: VerificationReport):
        self.report = report

    def run(self, name, fn):
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as err:  # a crashing check is a failing check
            ok, detail = False, f"{type(err).__name__}: {err}"
        self.report.checks.append(Check(name, bool(ok), detail, time.perf_counter() - t0))
        return ok


def expected_syzygy(kind: str, r: int) -> dict[tuple[int, int, int], Fraction] | None:
    if kind == "A":
        return {(r + 1, 0, 0): Fraction(1), (0, 1, 1): Fraction(-1)}
    if kind == "D":
        return {(r - 1, 0, 0): Fraction(1), (1, 2, 0): Fraction(-1), (0, 0, 2): Fraction(1)}
    return None


def syzygy_at_points(T, S, count: int = 5, seed: int = 0) -> bool:
    """Evaluate the relation at random rational points of C^2."""
    rng = random.Random(seed)
    rel = S.as_poly(T.field)
    for _ in range(count):
        pt = [T.field(Fraction(rng.randint(-20, 20), rng.randint(1, 7))) for _ in range(2)]
        vals = [p.evaluate(pt) for p in T.as_tuple()]
        if not rel.evaluate(vals).is_zero():
            return False
    return True


def distinguished_profile(kind: str, r: int, c=None):
    if kind == "A":
        return divisor_profile_A(invariant_triple("A", r).X, r)
    if kind == "D":
        return divisor_profile_D(c, r)
    return divisor_profile_E(r)


def verify(kind: str, r: int, c=None, probes: bool = True) -> VerificationReport:
    """Run the full pipeline for one group.

    Raises DegenerateParameter before any work if a D-type c is degenerate.
    """
    validate(kind, r)
    cnum = None
    if kind == "D":
        cnum = parse_c(DEFAULT_C if c is None else c)
        v = degenerate_check(cnum, r)
        if not v:
            raise DegenerateParameter(f"c = {format_number(cnum)} is degenerate for D{r}: {v.reason}")
    rep = VerificationReport(kind, r, None if cnum is None else format_number(cnum))
    run = _Runner(rep).run
    state: dict = {}

    def group_order():
        G = state["G"] = build_group(kind, r)
        return G.order == expected_order(kind, r), f"|G| = {G.order}, expected {expected_order(kind, r)}"

    def relations():
        rel = check_relations(state["G"])
        bad = [k for k, v in rel.items() if not v]
        return not bad, f"{len(rel)} relations" + (f", failing: {bad}" if bad else "")

    def invariance():
        T = state["T"] = invariant_triple(kind, r)
        res = verify_invariance(T, state["G"])
        return res.ok, f"X, Y, Z fixed by {res.checked} elements"

    def syzygy():
        T = state.get("T") or invariant_triple(kind, r)
        S = solve_syzygy(T)
        exp = expected_syzygy(kind, r)
        got = {m: q for m, q in zip(S.monomials, S.coefficients) if q}
        ok = check_syzygy(T, S) and syzygy_at_points(T, S)
        if exp is not None:
            ok = ok and got == exp
        return ok, str(S)

    def profile():
        prof = state["profile"] = distinguished_profile(kind, r, cnum)
        return prof.is_principal(), prof.summary()

    def diagram():
        D = state["D"] = affine_diagram(kind, r)
        m = state["match"] = match_profile(state["profile"], D)
        rep.profile = state["profile"].to_dict(m.to_dict())
        return m.ok, f"matched {D.label}" if m.ok else m.reason

    def cartan():
        D = state["D"]
        vec = null_vector(cartan_matrix(D))
        ok = vec == D.mark_vector()
        m = state["match"]
        if m.ok:
            support = state["profile"].support().coalesce_open(OPLUS).multiplicities()
            by_label = {(k if k in support else OPLUS): v for k, v in m.mapping.items()}
            ok = ok and all(support[k] == D.marks[v] for k, v in by_label.items())
        else:
            ok = False
        return ok, f"null vector {tuple(vec)}"

    def mckay():
        G = state["G"]
        res = verify_mckay(G, state["D"])
        ok = res.ok
        if ok:
            dims = dict(zip(res.graph.names, res.graph.dimensions))
            ok = all(dims[a] == state["D"].marks[b] for a, b in res.match.mapping.items())
        return ok, f"dimensions {res.graph.dimensions}, sum of squares {sum(d * d for d in res.graph.dimensions)}"

    def uniqueness():
        if kind == "A" and r == 1:
            return True, "skipped for A1"
        F = f"(X+({format_number(cnum)})*Y)" if kind == "D" else "X"
        failures = []
        for cand in UNIT_CANDIDATES[kind]:
            text = cand.replace("F", F)
            v = probe(kind, r, text)
            good = v.accepted and v.same_profile_as_f
            if kind == "D":
                good = good and v.recovered_c is not None and same_number(v.recovered_c, cnum)
            if not good:
                failures.append(f"{text} not recognized")
        for text in ADVERSARIAL[kind]:
            v = probe(kind, r, text)
            if v.accepted:
                failures.append(f"{text} accepted")
        n = len(UNIT_CANDIDATES[kind]) + len(ADVERSARIAL[kind])
        return not failures, "; ".join(failures) if failures else f"{n} candidates classified"

    def branch():
        bd = branch_data(r)
        ok = bd.m == bd.b_inf + 1 and divisor_profile_E(r).multiplicities().items() >= edf_multiplicities(r).items()
        rep.notes.extend(f"critical value {s}" for s in bd.scalings)
        return ok, f"indices {bd.indices}, fibers {bd.fiber_counts}, m = {bd.m}"

    run("group order", group_order)
    if "G" not in state:
        return rep
    run("relations", relations)
    run("invariance", invariance)
    run("syzygy", syzygy)
    if kind == "E":
        run("branch data", branch)
    if run("divisor profile", profile):
        run("diagram match", diagram)
        run("Cartan oracle", cartan)
    run("McKay oracle", mckay)
    if probes:
        run("uniqueness probes", uniqueness)
    if kind == "E":
        rep.notes.append(MU_NOTE)
    return rep


def all_targets(seed: int = 0) -> list[tuple[str, int, Fraction | None]]:
    out: list[tuple[str, int, Fraction | None]] = [("A", r, None) for r in range(2, 11)]
    for r in range(4, 9):
        out += [("D", r, c) for c in sample_c(r, 3, seed)]
    out += [("E", r, None) for r in (6, 7, 8)]
    return out


def _verify_target(args):
    kind, r, c = args
    return verify(kind, r, c)


def verify_many(targets, workers: int | None = None) -> list[VerificationReport]:
    """Run independent targets in parallel; results come back in canonical order."""
    from concurrent.futures import ProcessPoolExecutor

    order = sorted(targets, key=lambda t: (t[0], t[1], Fraction(0) if t[2] is None else Fraction(t[2])))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_target, order))
