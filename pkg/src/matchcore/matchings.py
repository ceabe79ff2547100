"""Integral matching oracles and fractional matching structure.

The exhaustive enumerator here is deliberately independent of the LP
path: it is the ground truth that duality results are checked against,
and the source of the full set of optimal integral matchings that the
essential/viable/subpar classification quantifies over.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .games import (
    DEFAULT_BUDGET_CAP,
    CapExceeded,
    Edge,
    GameInstance,
)
from .simplex import solve_lp
from .gamelp import build_primal_lp, edge_name

ZERO = Fraction(0)
HALF = Fraction(1, 2)
ONE = Fraction(1)

ESSENTIAL = "essential"
VIABLE = "viable"
SUBPAR = "subpar"


class InfeasibleGameError(Exception):
    """The instance admits no matching within its bounds."""


class SolverInvariantError(Exception):
    """A solver output violated a structural guarantee of its polytope."""


@dataclass(frozen=True)
class MatchingVector:
    """Edge multiplicities with their cached total weight.

    Zero entries are dropped, so equal vectors compare equal and the
    support is exactly ``multiplicities.keys()``.
    """

    multiplicities: tuple[tuple[Edge, Fraction], ...]
    weight: Fraction

    def as_dict(self) -> dict[Edge, Fraction]:
        return dict(self.multiplicities)

    def load(self, q: str) -> Fraction:
        return sum(
            (m for (i, j), m in self.multiplicities if q in (i, j)), start=ZERO
        )

    def multiplicity(self, key: Edge) -> Fraction:
        return self.as_dict().get(key, ZERO)


def make_matching_vector(g: GameInstance, mult: dict[Edge, Fraction]) -> MatchingVector:
    items = []
    weight = ZERO
    for k in g.edge_keys:
        m = Fraction(mult.get(k, ZERO))
        if m < 0:
            raise ValueError(f"negative multiplicity on {edge_name(k)}")
        if m:
            items.append((k, m))
            weight += g.weight(k) * m
    return MatchingVector(tuple(items), weight)


def brute_force_optima(
    g: GameInstance, budget_cap: int = DEFAULT_BUDGET_CAP
) -> tuple[Fraction | None, list[MatchingVector]]:
    """Exhaustive maximum-weight integral matchings, all of them.

    Enumerates every integral multiplicity vector within the variant's
    bounds and returns the optimum plus the complete list of optimal
    vectors.  Returns ``(None, [])`` when vertex or edge floors make the
    instance infeasible.  Raises :class:`CapExceeded` when the total
    multiplicity budget (sum of vertex caps) exceeds ``budget_cap``.
    """
    budget = sum(g.vertex_upper.values())
    if budget > budget_cap:
        raise CapExceeded(
            f"total multiplicity budget {budget} exceeds cap {budget_cap}"
        )
    keys = g.edge_keys
    weights = {k: g.weight(k) for k in keys}
    caps = {
        k: min(g.edge_upper[k], g.vertex_upper[k[0]], g.vertex_upper[k[1]])
        for k in keys
    }
    floors = {k: g.edge_lower[k] for k in keys}
    if any(floors[k] > caps[k] for k in keys):
        return None, []

    # Largest additional weight obtainable from edges k.. onward.
    suffix = [ZERO] * (len(keys) + 1)
    for t in range(len(keys) - 1, -1, -1):
        suffix[t] = suffix[t + 1] + weights[keys[t]] * caps[keys[t]]

    best: Fraction | None = None
    optima: list[dict[Edge, int]] = []
    load = {q: 0 for q in g.vertices}
    current: dict[Edge, int] = {}
    lower = g.vertex_lower

    def leaf_ok() -> bool:
        return all(load[q] >= lower[q] for q in g.vertices)

    def visit(t: int, weight: Fraction) -> None:
        nonlocal best
        if best is not None and weight + suffix[t] < best:
            return
        if t == len(keys):
            if not leaf_ok():
                return
            if best is None or weight > best:
                best = weight
                optima.clear()
            if weight == best:
                optima.append(dict(current))
            return
        k = keys[t]
        i, j = k
        top = min(
            caps[k],
            g.vertex_upper[i] - load[i],
            g.vertex_upper[j] - load[j],
        )
        if floors[k] > top:
            return
        for m in range(floors[k], top + 1):
            if m:
                current[k] = m
                load[i] += m
                load[j] += m
            visit(t + 1, weight + weights[k] * m)
            if m:
                del current[k]
                load[i] -= m
                load[j] -= m

    visit(0, ZERO)
    if best is None:
        return None, []
    vectors = [
        make_matching_vector(g, {k: Fraction(m) for k, m in opt.items()})
        for opt in optima
    ]
    return best, vectors


def fractional_optimum(g: GameInstance) -> MatchingVector:
    """Exact vertex-optimal fractional matching from the primal LP.

    Asserts the structural guarantee of the variant's polytope on every
    solve: bipartite variants must come back integral, general graphs
    half-integral with the half edges forming disjoint odd cycles.
    """
    lp = build_primal_lp(g)
    sol = solve_lp(lp)
    if sol.status == "infeasible":
        raise InfeasibleGameError("no matching satisfies the bounds")
    if sol.status != "optimal":
        raise SolverInvariantError(f"primal LP came back {sol.status}")
    mult = {k: sol.values[f"x[{edge_name(k)}]"] for k in g.edge_keys}
    vec = make_matching_vector(g, mult)
    if g.variant == "general-matching":
        if not check_half_integral(vec).is_half_integral:
            raise SolverInvariantError("general-graph vertex is not half-integral")
    else:
        if any(m.denominator != 1 for _, m in vec.multiplicities):
            raise SolverInvariantError("bipartite vertex solution is not integral")
    return vec


@dataclass(frozen=True)
class HalfIntegralReport:
    is_half_integral: bool
    ones: tuple[Edge, ...]
    halves: tuple[Edge, ...]
    half_components: tuple[tuple[str, ...], ...]


def check_half_integral(x: MatchingVector) -> HalfIntegralReport:
    """Verify the half-integral vertex structure of a fractional matching.

    Every multiplicity must be 0, 1/2 or 1; the 1-edges must form a
    matching; the 1/2-edges must decompose into odd cycles, disjoint
    from each other and from the 1-edges.  Failures are report content,
    not exceptions.
    """
    ones: list[Edge] = []
    halves: list[Edge] = []
    for k, m in x.multiplicities:
        if m == ONE:
            ones.append(k)
        elif m == HALF:
            halves.append(k)
        else:
            return HalfIntegralReport(False, (), (), ())

    used: set[str] = set()
    for i, j in ones:
        if i in used or j in used:
            return HalfIntegralReport(False, (), (), ())
        used.update((i, j))

    adj: dict[str, list[str]] = {}
    for i, j in halves:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    if used & set(adj):
        return HalfIntegralReport(False, (), (), ())

    cycles: list[tuple[str, ...]] = []
    seen: set[str] = set()
    for start in sorted(adj):
        if start in seen:
            continue
        if len(adj[start]) != 2:
            return HalfIntegralReport(False, (), (), ())
        cycle = [start]
        seen.add(start)
        prev, here = None, start
        while True:
            nxt = [r for r in sorted(adj[here]) if r != prev]
            if len(adj[here]) != 2 or not nxt:
                return HalfIntegralReport(False, (), (), ())
            prev, here = here, nxt[0]
            if here == start:
                break
            if here in seen:
                return HalfIntegralReport(False, (), (), ())
            seen.add(here)
            cycle.append(here)
        if len(cycle) % 2 == 0:
            return HalfIntegralReport(False, (), (), ())
        cycles.append(tuple(cycle))
    return HalfIntegralReport(True, tuple(ones), tuple(halves), tuple(cycles))


class DecompositionError(Exception):
    """The vector is not a feasible fractional matching of the game."""


def _max_matching_covering(
    support: list[Edge], tight: frozenset[str]
) -> list[Edge] | None:
    """Largest matching inside ``support`` covering all of ``tight``.

    Ties break toward the lexicographically earliest edge-index set.
    Exhaustive; support sizes here are desk scale.
    """
    best: tuple[int, tuple[int, ...]] | None = None

    def rec(t: int, chosen: list[int], used: set[str]) -> None:
        nonlocal best
        remaining = len(support) - t
        if best is not None and len(chosen) + remaining < -best[0]:
            return
        if t == len(support):
            if tight <= used:
                key = (-len(chosen), tuple(chosen))
                if best is None or key < best:
                    best = key
            return
        i, j = support[t]
        if i not in used and j not in used:
            chosen.append(t)
            used.update((i, j))
            rec(t + 1, chosen, used)
            chosen.pop()
            used.difference_update((i, j))
        rec(t + 1, chosen, used)

    rec(0, [], set())
    if best is None:
        return None
    return [support[t] for t in best[1]]


def birkhoff_decompose(
    g: GameInstance, x: MatchingVector
) -> list[tuple[Fraction, MatchingVector]]:
    """Write a bipartite fractional matching as a combination of matchings.

    Returns pairs ``(coefficient, integral matching)`` with positive
    coefficients summing to at most one whose weighted sum reproduces
    ``x`` exactly, component-wise.  Repeatedly extracts a maximum
    matching of the current support that covers every saturated vertex
    and subtracts the largest feasible amount of it.
    """
    if g.variant == "general-matching":
        raise ValueError("decomposition into matchings needs a bipartite game")
    mult = {k: m for k, m in x.multiplicities}
    if any(m < 0 for m in mult.values()):
        raise DecompositionError("negative multiplicity")
    load = {q: x.load(q) for q in g.vertices}
    if any(v > 1 for v in load.values()):
        raise DecompositionError("vertex load exceeds one")

    remaining = Fraction(1)
    terms: list[tuple[Fraction, dict[Edge, Fraction]]] = []
    while any(mult.values()):
        support = [k for k in g.edge_keys if mult.get(k, ZERO) > 0]
        tight = frozenset(q for q in g.vertices if load[q] == remaining)
        matching = _max_matching_covering(support, tight)
        if matching is None:
            raise DecompositionError("no matching covers the saturated vertices")
        step = min(mult[k] for k in matching)
        covered = {q for k in matching for q in k}
        for q in g.vertices:
            if q not in covered and load[q] > 0:
                step = min(step, remaining - load[q])
        if step <= 0:
            raise DecompositionError("decomposition stalled")
        for k in matching:
            mult[k] -= step
            if mult[k] == 0:
                del mult[k]
        for q in covered:
            load[q] -= step
        remaining -= step
        terms.append((step, {k: ONE for k in matching}))

    merged: list[tuple[Fraction, dict[Edge, Fraction]]] = []
    for coeff, m in terms:
        for idx, (c0, m0) in enumerate(merged):
            if m0 == m:
                merged[idx] = (c0 + coeff, m0)
                break
        else:
            merged.append((coeff, m))
    return [(c, make_matching_vector(g, m)) for c, m in merged]


def _label(times_used: int, total: int) -> str:
    if times_used == total:
        return ESSENTIAL
    if times_used == 0:
        return SUBPAR
    return VIABLE


def classification_table(
    g: GameInstance, budget_cap: int = DEFAULT_BUDGET_CAP
) -> tuple[dict[str, str], dict[Edge, str], Fraction, list[MatchingVector]]:
    """Labels for every vertex and edge from one enumeration pass."""
    best, optima = brute_force_optima(g, budget_cap)
    if best is None:
        raise InfeasibleGameError("no feasible matching to classify against")
    total = len(optima)
    vlabels = {
        q: _label(sum(1 for m in optima if m.load(q) > 0), total)
        for q in g.vertices
    }
    elabels = {
        k: _label(sum(1 for m in optima if m.multiplicity(k) > 0), total)
        for k in g.edge_keys
    }
    return vlabels, elabels, best, optima


def classify_vertex(
    g: GameInstance, q: str, budget_cap: int = DEFAULT_BUDGET_CAP
) -> str:
    """essential / viable / subpar against all optimal integral matchings."""
    if q not in g.vertices:
        raise ValueError(f"unknown vertex {q!r}")
    _, optima = brute_force_optima(g, budget_cap)
    if not optima:
        raise InfeasibleGameError("no feasible matching to classify against")
    used = sum(1 for m in optima if m.load(q) > 0)
    return _label(used, len(optima))


def classify_edge(
    g: GameInstance, key: Edge, budget_cap: int = DEFAULT_BUDGET_CAP
) -> str:
    """essential / viable / subpar for an edge, by positive multiplicity."""
    if key not in g.edge_keys:
        raise ValueError(f"unknown edge {edge_name(key)}")
    _, optima = brute_force_optima(g, budget_cap)
    if not optima:
        raise InfeasibleGameError("no feasible matching to classify against")
    used = sum(1 for m in optima if m.multiplicity(key) > 0)
    return _label(used, len(optima))
