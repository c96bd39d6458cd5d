"""Divisor profiles: curve components with multiplicities and intersection counts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

EXCEPTIONAL = "exceptional"
OPEN = "open"
OPLUS = "oplus"


@dataclass(frozen=True)
class Component:
    id: str
    kind: str
    multiplicity: int


@dataclass
class DivisorProfile:
    """div(pi^* F) near the exceptional set.

    ``adjacency`` maps an unordered pair of ids to the intersection number.
    All exceptional curves are (-2)-curves.
    """

    components: list[Component] = field(default_factory=list)
    adjacency: dict[frozenset, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    merged: dict[str, list[str]] = field(default_factory=dict)

    # -- construction --------------------------------------------------
    def add(self, cid: str, kind: str, multiplicity: int) -> None:
        if multiplicity < 0:
            raise ValueError(f"negative multiplicity on {cid}")
        if cid in self.ids():
            raise ValueError(f"duplicate component {cid}")
        self.components.append(Component(cid, kind, int(multiplicity)))

    def connect(self, a: str, b: str, count: int = 1) -> None:
        if a == b:
            raise ValueError("self-intersections are not stored in the adjacency")
        if count <= 0:
            return
        key = frozenset((a, b))
        self.adjacency[key] = self.adjacency.get(key, 0) + count

    # -- queries ---------------------------------------------------------
    def ids(self) -> list[str]:
        return [c.id for c in self.components]

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def multiplicity(self, cid: str) -> int:
        return self.component(cid).multiplicity

    def multiplicities(self) -> dict[str, int]:
        return {c.id: c.multiplicity for c in self.components}

    def exceptional(self) -> list[Component]:
        return [c for c in self.components if c.kind == EXCEPTIONAL]

    def open_components(self) -> list[Component]:
        return [c for c in self.components if c.kind == OPEN]

    def intersection(self, a: str, b: str) -> int:
        return self.adjacency.get(frozenset((a, b)), 0)

    def neighbors(self, cid: str) -> dict[str, int]:
        out = {}
        for key, n in self.adjacency.items():
            if cid in key:
                (other,) = key - {cid}
                out[other] = n
        return out

    def edges(self) -> list[tuple[str, str, int]]:
        order = {cid: i for i, cid in enumerate(self.ids())}
        out = []
        for key, n in self.adjacency.items():
            a, b = sorted(key, key=lambda x: order.get(x, len(order)))
            out.append((a, b, n))
        return sorted(out, key=lambda e: (order.get(e[0], 0), order.get(e[1], 0)))

    def is_connected_exceptional(self) -> bool:
        exc = [c.id for c in self.exceptional()]
        if not exc:
            return True
        seen = {exc[0]}
        stack = [exc[0]]
        excset = set(exc)
        while stack:
            x = stack.pop()
            for y in self.neighbors(x):
                if y in excset and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen == excset

    def principal_defects(self) -> dict[str, int]:
        """(div F) . C for each exceptional (-2)-curve C; all zero for a principal divisor."""
        mult = self.multiplicities()
        out = {}
        for c in self.exceptional():
            total = -2 * c.multiplicity
            for other, n in self.neighbors(c.id).items():
                total += mult[other] * n
            out[c.id] = total
        return out

    def is_principal(self) -> bool:
        return not any(self.principal_defects().values())

    # -- transforms --------------------------------------------------------
    def support(self) -> "DivisorProfile":
        """Drop open components of multiplicity zero (they are not in the divisor)."""
        keep = {c.id for c in self.components if c.kind == EXCEPTIONAL or c.multiplicity}
        out = DivisorProfile(notes=list(self.notes))
        for c in self.components:
            if c.id in keep:
                out.components.append(c)
        for key, n in self.adjacency.items():
            if key <= keep:
                out.adjacency[key] = n
        return out

    def coalesce_open(self, name: str = OPLUS) -> "DivisorProfile":
        """Merge all open components of the support into one node.

        The merged node carries the common multiplicity of its parts, or 0
        when the parts disagree (which no diagram accepts).
        """
        base = self.support()
        opens = base.open_components()
        if not opens:
            return base
        mults = {c.multiplicity for c in opens}
        merged_mult = mults.pop() if len(mults) == 1 else 0
        open_ids = {c.id for c in opens}
        out = DivisorProfile(notes=list(base.notes))
        for c in base.components:
            if c.id not in open_ids:
                out.components.append(c)
        out.components.append(Component(name, OPEN, merged_mult))
        out.merged[name] = sorted(open_ids, key=base.ids().index)
        for key, n in base.adjacency.items():
            inside = key & open_ids
            if not inside:
                out.adjacency[key] = n
            elif len(inside) == 1:
                (other,) = key - open_ids
                out.connect(name, other, n)
        return out

    # -- serialization -----------------------------------------------------
    def to_dict(self, diagram_match=None) -> dict:
        return {
            "components": [
                {"id": c.id, "kind": c.kind, "multiplicity": c.multiplicity}
                for c in self.components
            ],
            "adjacency": [[a, b, n] for a, b, n in self.edges()],
            "diagram_match": diagram_match,
        }

    def to_json(self, diagram_match=None) -> str:
        return json.dumps(self.to_dict(diagram_match), indent=2, sort_keys=False) + "\n"

    def to_dot(self, name: str = "profile") -> str:
        lines = [f"graph {_dot_id(name)} {{"]
        for c in self.components:
            shape = "doublecircle" if c.kind == OPEN else "circle"
            lines.append(
                f'  {_dot_id(c.id)} [label="{c.id}:{c.multiplicity}", shape={shape}];'
            )
        for a, b, n in self.edges():
            for _ in range(n):
                lines.append(f"  {_dot_id(a)} -- {_dot_id(b)};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        parts = [f"{c.id}:{c.multiplicity}" for c in self.components]
        return " ".join(parts)


def _dot_id(text: str) -> str:
    return '"' + text.replace('"', r"\"") + '"'
