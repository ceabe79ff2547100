"""Game instances for the five matching-game variants.

A game is an edge-weighted graph plus multiplicity bounds.  Bipartite
variants carry an explicit left/right split; sides are never inferred
from edge direction.  ``general-matching`` games keep every vertex in
``right`` and leave ``left`` empty.

Variants:

* ``assignment``        bipartite, every vertex matched at most once
* ``general-matching``  arbitrary simple graph, vertices matched at most once
* ``b-uniform``         bipartite, every vertex matched up to the same b,
                        edges repeatable
* ``b-unconstrained``   bipartite, per-vertex caps, edges repeatable
* ``b-constrained``     bipartite, per-vertex caps, each edge at most once
* ``b-general``         bipartite, per-vertex floors/caps and per-edge
                        floors/caps
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction

Coalition = frozenset[str]
Edge = tuple[str, str]

VARIANTS = (
    "assignment",
    "general-matching",
    "b-uniform",
    "b-unconstrained",
    "b-constrained",
    "b-general",
)

BIPARTITE_VARIANTS = tuple(v for v in VARIANTS if v != "general-matching")

# Enumeration guards: coalition enumeration is exponential in the vertex
# count, matching enumeration in the total multiplicity budget.
DEFAULT_COALITION_CAP = 16
DEFAULT_BUDGET_CAP = 24


class CapExceeded(Exception):
    """An enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class GameInstance:
    variant: str
    left: tuple[str, ...]
    right: tuple[str, ...]
    edges: tuple[tuple[str, str, Fraction], ...]
    vertex_lower: dict[str, int] = field(default_factory=dict)
    vertex_upper: dict[str, int] = field(default_factory=dict)
    edge_lower: dict[Edge, int] = field(default_factory=dict)
    edge_upper: dict[Edge, int] = field(default_factory=dict)
    name: str = ""
    note: str = ""

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.left + self.right

    @property
    def edge_keys(self) -> tuple[Edge, ...]:
        return tuple((i, j) for i, j, _ in self.edges)

    def weight(self, key: Edge) -> Fraction:
        for i, j, w in self.edges:
            if (i, j) == key:
                return w
        raise KeyError(key)

    def incident(self, q: str) -> tuple[Edge, ...]:
        return tuple((i, j) for i, j, _ in self.edges if q in (i, j))

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {q: set() for q in self.vertices}
        for i, j, _ in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj


def make_game(
    variant: str,
    left: tuple[str, ...] | list[str],
    right: tuple[str, ...] | list[str],
    edges,
    vertex_upper: dict[str, int] | int | None = None,
    vertex_lower: dict[str, int] | None = None,
    edge_upper: dict[Edge, int] | None = None,
    edge_lower: dict[Edge, int] | None = None,
    name: str = "",
    note: str = "",
) -> GameInstance:
    """Build a GameInstance, filling variant defaults for absent bounds.

    Defaults: vertex floors 0, vertex caps 1 (an int ``vertex_upper``
    sets every vertex, as in the uniform variant), edge floors 0, edge
    caps 1 for single-use variants and min(b_i, b_j) where edges repeat.
    """
    left = tuple(left)
    right = tuple(right)
    norm_edges = tuple((i, j, Fraction(w)) for i, j, w in edges)
    vertices = left + right

    if isinstance(vertex_upper, int):
        b = {q: vertex_upper for q in vertices}
    else:
        b = {q: 1 for q in vertices}
        b.update(vertex_upper or {})
    a = {q: 0 for q in vertices}
    a.update(vertex_lower or {})

    keys = [(i, j) for i, j, _ in norm_edges]
    if variant in ("b-uniform", "b-unconstrained"):
        d = {(i, j): min(b.get(i, 1), b.get(j, 1)) for i, j in keys}
    else:
        d = {k: 1 for k in keys}
    d.update(edge_upper or {})
    c = {k: 0 for k in keys}
    c.update(edge_lower or {})

    return GameInstance(variant, left, right, norm_edges, a, b, c, d, name, note)


def validate_game(g: GameInstance) -> list[str]:
    """Check every instance invariant; return the list of violations.

    An empty list means the instance is well formed.  Violations are
    data, not exceptions: they name the offending vertex or edge.
    """
    bad: list[str] = []
    if g.variant not in VARIANTS:
        return [f"unknown variant {g.variant!r}"]

    seen: set[str] = set()
    for q in g.vertices:
        if not q or any(ch.isspace() for ch in q):
            bad.append(f"invalid vertex id {q!r}")
        if q in seen:
            bad.append(f"duplicate vertex id {q!r}")
        seen.add(q)
    if g.variant == "general-matching" and g.left:
        bad.append("general-matching games keep all vertices on one side")

    keys_seen: set[frozenset[str]] = set()
    for i, j, w in g.edges:
        if i == j:
            bad.append(f"self-loop at {i!r}")
            continue
        if g.variant == "general-matching":
            if i not in g.right or j not in g.right:
                bad.append(f"edge {i}~{j} uses unknown vertex")
        else:
            if i not in g.left or j not in g.right:
                bad.append(f"edge {i}~{j} does not go left to right")
        pair = frozenset((i, j))
        if pair in keys_seen:
            bad.append(f"parallel edge {i}~{j}")
        keys_seen.add(pair)
        if w <= 0:
            bad.append(f"non-positive weight on edge {i}~{j}")

    keys = set(g.edge_keys)
    if set(g.vertex_upper) != set(g.vertices):
        bad.append("vertex cap map does not cover exactly the vertices")
    if set(g.vertex_lower) != set(g.vertices):
        bad.append("vertex floor map does not cover exactly the vertices")
    if set(g.edge_upper) != keys:
        bad.append("edge cap map does not cover exactly the edges")
    if set(g.edge_lower) != keys:
        bad.append("edge floor map does not cover exactly the edges")
    else:
        for k in g.edge_keys:
            cl, cu = g.edge_lower.get(k, 0), g.edge_upper.get(k, 1)
            if cl < 0:
                bad.append(f"negative edge floor on {k[0]}~{k[1]}")
            if cu < 1:
                bad.append(f"edge cap below one on {k[0]}~{k[1]}")
            if cl > cu:
                bad.append(f"edge bound order violated on {k[0]}~{k[1]}")

    for q in g.vertices:
        aq, bq = g.vertex_lower.get(q, 0), g.vertex_upper.get(q, 1)
        if bq < 1:
            bad.append(f"vertex cap below one at {q!r}")
        if aq < 0:
            bad.append(f"negative vertex floor at {q!r}")
        if aq > bq:
            bad.append(f"vertex bound order violated at {q!r}")

    if g.variant in ("assignment", "general-matching"):
        if any(b != 1 for b in g.vertex_upper.values()):
            bad.append("single-use variant requires vertex caps of one")
    if g.variant == "b-uniform" and len(set(g.vertex_upper.values())) > 1:
        bad.append("uniform variant requires one common vertex cap")
    if g.variant != "b-general":
        if any(v != 0 for v in g.vertex_lower.values()):
            bad.append("vertex floors are only allowed in the b-general variant")
        if any(v != 0 for v in g.edge_lower.values()):
            bad.append("edge floors are only allowed in the b-general variant")
    if g.variant in ("assignment", "general-matching", "b-constrained"):
        if any(v != 1 for v in g.edge_upper.values()):
            bad.append("single-use edges require edge caps of one")
    if g.variant in ("b-uniform", "b-unconstrained"):
        for (i, j) in g.edge_keys:
            want = min(g.vertex_upper.get(i, 1), g.vertex_upper.get(j, 1))
            if g.edge_upper.get((i, j)) != want:
                bad.append(f"repeatable edge {i}~{j} must carry cap min(b_i, b_j)")
    return bad


def induce_subgame(g: GameInstance, s: Coalition) -> GameInstance:
    """Restrict the game to the vertices in ``s``.

    Keeps exactly the members of ``s`` and the edges with both endpoints
    inside; all bounds are inherited unchanged.  Note that inherited
    vertex floors can make the restricted b-general game infeasible;
    that is surfaced by the matching oracle, not rejected here.
    """
    unknown = s - set(g.vertices)
    if unknown:
        raise ValueError(f"coalition members not in game: {sorted(unknown)}")
    left = tuple(q for q in g.left if q in s)
    right = tuple(q for q in g.right if q in s)
    edges = tuple((i, j, w) for i, j, w in g.edges if i in s and j in s)
    keys = [(i, j) for i, j, _ in edges]
    return GameInstance(
        g.variant,
        left,
        right,
        edges,
        {q: g.vertex_lower[q] for q in left + right},
        {q: g.vertex_upper[q] for q in left + right},
        {k: g.edge_lower[k] for k in keys},
        {k: g.edge_upper[k] for k in keys},
        g.name,
        g.note,
    )


def _is_connected(members: tuple[str, ...], adj: dict[str, set[str]]) -> bool:
    inside = set(members)
    stack = [members[0]]
    seen = {members[0]}
    while stack:
        q = stack.pop()
        for r in adj[q]:
            if r in inside and r not in seen:
                seen.add(r)
                stack.append(r)
    return len(seen) == len(inside)


def connected_coalitions(
    g: GameInstance, cap: int = DEFAULT_COALITION_CAP
) -> list[Coalition]:
    """All nonempty vertex subsets whose induced subgraph is connected.

    Singletons are included.  The result is ordered lexicographically on
    the sorted member ids, so reports and witnesses are reproducible.
    """
    n = len(g.vertices)
    if n > cap:
        raise CapExceeded(f"{n} vertices exceed coalition enumeration cap {cap}")
    ids = sorted(g.vertices)
    adj = g.adjacency()
    found: list[tuple[str, ...]] = []
    for r in range(1, n + 1):
        for combo in itertools.combinations(ids, r):
            if _is_connected(combo, adj):
                found.append(combo)
    found.sort()
    return [frozenset(t) for t in found]


def connected_components(g: GameInstance) -> list[Coalition]:
    """Vertex sets of the connected components, in lexicographic order."""
    adj = g.adjacency()
    remaining = set(g.vertices)
    comps: list[tuple[str, ...]] = []
    for q in sorted(g.vertices):
        if q not in remaining:
            continue
        stack, seen = [q], {q}
        while stack:
            x = stack.pop()
            for r in adj[x]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        remaining -= seen
        comps.append(tuple(sorted(seen)))
    comps.sort()
    return [frozenset(t) for t in comps]
