"""Primal/dual linear programs of the matching-game variants.

The primal maximizes total matched weight subject to the variant's
multiplicity bounds; the dual prices vertices (and, where edges carry
their own caps or floors, edges).  Builders emit rows in a fixed order
(left vertices, right vertices, edge rows) so solver output and reports
are deterministic.

Variable naming: ``x[i~j]`` primal multiplicities, ``y[q]`` vertex cap
prices, ``y_lo[q]`` vertex floor credits, ``z[i~j]`` edge cap prices,
``z_lo[i~j]`` edge floor credits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .games import Edge, GameInstance
from .simplex import LinearProgram, LPSolution, solve_lp

ZERO = Fraction(0)
ONE = Fraction(1)


def edge_name(key: Edge) -> str:
    return f"{key[0]}~{key[1]}"


def _vertex_rows(g: GameInstance, kind: str) -> list[tuple[tuple[Fraction, ...], str, Fraction, str]]:
    keys = g.edge_keys
    rows = []
    for q in g.vertices:
        coeffs = tuple(ONE if q in k else ZERO for k in keys)
        if kind == "upper":
            rows.append((coeffs, "<=", Fraction(g.vertex_upper[q]), q))
        else:
            rows.append((coeffs, ">=", Fraction(g.vertex_lower[q]), f"{q}:lo"))
    return rows


def build_primal_lp(g: GameInstance) -> LinearProgram:
    """Maximum-weight (fractional) matching LP for the variant of ``g``."""
    keys = g.edge_keys
    names = tuple(f"x[{edge_name(k)}]" for k in keys)
    objective = tuple(w for _, _, w in g.edges)
    rows: list[tuple[tuple[Fraction, ...], str, Fraction, str]] = []
    if g.variant == "b-general":
        for q in g.vertices:
            coeffs = tuple(ONE if q in k else ZERO for k in keys)
            rows.append((coeffs, ">=", Fraction(g.vertex_lower[q]), f"{q}:lo"))
            rows.append((coeffs, "<=", Fraction(g.vertex_upper[q]), f"{q}:hi"))
        for idx, k in enumerate(keys):
            unit = tuple(ONE if t == idx else ZERO for t in range(len(keys)))
            rows.append((unit, ">=", Fraction(g.edge_lower[k]), f"{edge_name(k)}:lo"))
            rows.append((unit, "<=", Fraction(g.edge_upper[k]), f"{edge_name(k)}:hi"))
    else:
        rows.extend(_vertex_rows(g, "upper"))
        if g.variant == "b-constrained":
            for idx, k in enumerate(keys):
                unit = tuple(ONE if t == idx else ZERO for t in range(len(keys)))
                rows.append((unit, "<=", ONE, edge_name(k)))
    return LinearProgram(
        variables=names,
        objective=objective,
        maximize=True,
        constraints=tuple((c, r, b) for c, r, b, _ in rows),
        nonnegative=(True,) * len(names),
        row_labels=tuple(lbl for _, _, _, lbl in rows),
    )


def build_dual_lp(g: GameInstance) -> LinearProgram:
    """Dual of :func:`build_primal_lp`: minimum-cost covering prices."""
    keys = g.edge_keys
    vs = g.vertices
    if g.variant in ("assignment", "general-matching"):
        names = tuple(f"y[{q}]" for q in vs)
        objective = tuple(ONE for _ in vs)
        var_of = {q: t for t, q in enumerate(vs)}
        rows = []
        for k, (i, j, w) in zip(keys, g.edges):
            coeffs = [ZERO] * len(names)
            coeffs[var_of[i]] += ONE
            coeffs[var_of[j]] += ONE
            rows.append((tuple(coeffs), ">=", w, edge_name(k)))
    elif g.variant in ("b-uniform", "b-unconstrained"):
        names = tuple(f"y[{q}]" for q in vs)
        objective = tuple(Fraction(g.vertex_upper[q]) for q in vs)
        var_of = {q: t for t, q in enumerate(vs)}
        rows = []
        for k, (i, j, w) in zip(keys, g.edges):
            coeffs = [ZERO] * len(names)
            coeffs[var_of[i]] += ONE
            coeffs[var_of[j]] += ONE
            rows.append((tuple(coeffs), ">=", w, edge_name(k)))
    elif g.variant == "b-constrained":
        names = tuple(f"y[{q}]" for q in vs) + tuple(f"z[{edge_name(k)}]" for k in keys)
        objective = tuple(Fraction(g.vertex_upper[q]) for q in vs) + tuple(
            ONE for _ in keys
        )
        rows = []
        for t, (i, j, w) in enumerate(g.edges):
            coeffs = [ZERO] * len(names)
            coeffs[vs.index(i)] += ONE
            coeffs[vs.index(j)] += ONE
            coeffs[len(vs) + t] += ONE
            rows.append((tuple(coeffs), ">=", w, edge_name(keys[t])))
    elif g.variant == "b-general":
        names = (
            tuple(f"y[{q}]" for q in vs)
            + tuple(f"y_lo[{q}]" for q in vs)
            + tuple(f"z[{edge_name(k)}]" for k in keys)
            + tuple(f"z_lo[{edge_name(k)}]" for k in keys)
        )
        nv, ne = len(vs), len(keys)
        objective = (
            tuple(Fraction(g.vertex_upper[q]) for q in vs)
            + tuple(Fraction(-g.vertex_lower[q]) for q in vs)
            + tuple(Fraction(g.edge_upper[k]) for k in keys)
            + tuple(Fraction(-g.edge_lower[k]) for k in keys)
        )
        rows = []
        for t, (i, j, w) in enumerate(g.edges):
            coeffs = [ZERO] * len(names)
            coeffs[vs.index(i)] += ONE
            coeffs[vs.index(j)] += ONE
            coeffs[nv + vs.index(i)] -= ONE
            coeffs[nv + vs.index(j)] -= ONE
            coeffs[2 * nv + t] += ONE
            coeffs[2 * nv + ne + t] -= ONE
            rows.append((tuple(coeffs), ">=", w, edge_name(keys[t])))
    else:
        raise ValueError(f"unknown variant {g.variant!r}")
    return LinearProgram(
        variables=names,
        objective=objective,
        maximize=False,
        constraints=tuple((c, r, b) for c, r, b, _ in rows),
        nonnegative=(True,) * len(names),
        row_labels=tuple(lbl for _, _, _, lbl in rows),
    )


@dataclass(frozen=True)
class DualSolution:
    """Covering prices: one value per vertex, plus edge terms if priced."""

    vertex_upper: dict[str, Fraction]
    vertex_lower: dict[str, Fraction] = field(default_factory=dict)
    edge_upper: dict[Edge, Fraction] = field(default_factory=dict)
    edge_lower: dict[Edge, Fraction] = field(default_factory=dict)


def dual_solution_from_lp(g: GameInstance, sol: LPSolution) -> DualSolution:
    if sol.status != "optimal":
        raise ValueError(f"dual LP did not produce an optimum: {sol.status}")
    v = sol.values
    vertex_upper = {q: v[f"y[{q}]"] for q in g.vertices}
    vertex_lower = {}
    edge_upper = {}
    edge_lower = {}
    if g.variant == "b-constrained":
        edge_upper = {k: v[f"z[{edge_name(k)}]"] for k in g.edge_keys}
    elif g.variant == "b-general":
        vertex_lower = {q: v[f"y_lo[{q}]"] for q in g.vertices}
        edge_upper = {k: v[f"z[{edge_name(k)}]"] for k in g.edge_keys}
        edge_lower = {k: v[f"z_lo[{edge_name(k)}]"] for k in g.edge_keys}
    return DualSolution(vertex_upper, vertex_lower, edge_upper, edge_lower)


def solve_dual(g: GameInstance) -> tuple[LPSolution, DualSolution]:
    sol = solve_lp(build_dual_lp(g))
    return sol, dual_solution_from_lp(g, sol)


def dual_cover_slack(g: GameInstance, y: DualSolution, key: Edge) -> Fraction:
    """Left-hand side minus weight of the covering row for one edge."""
    i, j = key
    lhs = y.vertex_upper[i] + y.vertex_upper[j]
    if g.variant == "b-general":
        lhs -= y.vertex_lower.get(i, ZERO) + y.vertex_lower.get(j, ZERO)
        lhs += y.edge_upper.get(key, ZERO) - y.edge_lower.get(key, ZERO)
    elif g.variant == "b-constrained":
        lhs += y.edge_upper.get(key, ZERO)
    return lhs - g.weight(key)


def dual_is_feasible(g: GameInstance, y: DualSolution) -> bool:
    entries = (
        list(y.vertex_upper.values())
        + list(y.vertex_lower.values())
        + list(y.edge_upper.values())
        + list(y.edge_lower.values())
    )
    if any(e < 0 for e in entries):
        return False
    return all(dual_cover_slack(g, y, k) >= 0 for k in g.edge_keys)


def dual_objective(g: GameInstance, y: DualSolution) -> Fraction:
    total = ZERO
    for q in g.vertices:
        total += g.vertex_upper[q] * y.vertex_upper[q]
        if g.variant == "b-general":
            total -= g.vertex_lower[q] * y.vertex_lower.get(q, ZERO)
    for k in g.edge_keys:
        if g.variant == "b-constrained":
            total += y.edge_upper.get(k, ZERO)
        elif g.variant == "b-general":
            total += g.edge_upper[k] * y.edge_upper.get(k, ZERO)
            total -= g.edge_lower[k] * y.edge_lower.get(k, ZERO)
    return total


def dual_is_optimal(g: GameInstance, y: DualSolution, optimum: Fraction) -> bool:
    return dual_is_feasible(g, y) and dual_objective(g, y) == optimum


@dataclass(frozen=True)
class DualityReport:
    objectives_equal: bool
    primal_feasible: bool
    dual_feasible: bool
    tight_primal_rows: tuple[str, ...]
    tight_dual_rows: tuple[str, ...]


def verify_duality(g: GameInstance, x: LPSolution, y: LPSolution) -> DualityReport:
    """Exact feasibility, objective equality and tight-row sets.

    ``x`` must come from the primal of ``g`` and ``y`` from its dual;
    a missing variable name is treated as a dimension mismatch.
    """
    primal = build_primal_lp(g)
    dual = build_dual_lp(g)
    for name in primal.variables:
        if name not in x.values:
            raise ValueError(f"primal solution is missing {name}")
    for name in dual.variables:
        if name not in y.values:
            raise ValueError(f"dual solution is missing {name}")

    def evaluate(lp: LinearProgram, values: dict[str, Fraction]):
        feasible = all(values[v] >= 0 for v in lp.variables)
        tight = []
        for (coeffs, rel, rhs), label in zip(lp.constraints, lp.row_labels):
            lhs = sum(
                (c * values[v] for c, v in zip(coeffs, lp.variables)), start=ZERO
            )
            if (rel == "<=" and lhs > rhs) or (rel == ">=" and lhs < rhs):
                feasible = False
            if rel == "==" and lhs != rhs:
                feasible = False
            if lhs == rhs:
                tight.append(label)
        obj = sum(
            (c * values[v] for c, v in zip(lp.objective, lp.variables)), start=ZERO
        )
        return feasible, tuple(tight), obj

    pf, pt, pobj = evaluate(primal, x.values)
    df, dt, dobj = evaluate(dual, y.values)
    return DualityReport(
        objectives_equal=(pobj == dobj),
        primal_feasible=pf,
        dual_feasible=df,
        tight_primal_rows=pt,
        tight_dual_rows=dt,
    )
