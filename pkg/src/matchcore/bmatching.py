"""Core constructions for the bipartite b-matching variants.

For repeatable or capped edges the dual no longer reads off as profits
directly: vertex prices are scaled by the vertex caps, and edge prices
must be split between the two endpoints.  Every optimal dual (together
with every admissible split) yields a core imputation; the image of
that map, the dual image, can be a strict subset of the core, and the
membership tests here decide both sets exactly.

Naming note: the per-edge amounts credited to the left or right
endpoint are called split parts throughout, never c/d, because c and d
already name the edge floor and cap bounds of the general variant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .analysis import Imputation, game_worth
from .games import (
    DEFAULT_BUDGET_CAP,
    DEFAULT_COALITION_CAP,
    Coalition,
    Edge,
    GameInstance,
    connected_coalitions,
)
from .gamelp import (
    DualSolution,
    dual_is_optimal,
    edge_name,
)
from .analysis import worth as coalition_worth
from .simplex import LinearProgram, solve_lp

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

B_VARIANTS = ("b-uniform", "b-unconstrained", "b-constrained", "b-general")


@dataclass(frozen=True)
class SplitScheme:
    """Division of each priced edge's dual value between its endpoints.

    ``cap_left[e] + cap_right[e]`` must equal the edge-cap dual of e,
    and likewise for the floor duals of the general variant.
    """

    cap_left: dict[Edge, Fraction] = field(default_factory=dict)
    cap_right: dict[Edge, Fraction] = field(default_factory=dict)
    floor_left: dict[Edge, Fraction] = field(default_factory=dict)
    floor_right: dict[Edge, Fraction] = field(default_factory=dict)


def split_all_left(y: DualSolution) -> SplitScheme:
    return SplitScheme(
        cap_left=dict(y.edge_upper),
        cap_right={k: ZERO for k in y.edge_upper},
        floor_left=dict(y.edge_lower),
        floor_right={k: ZERO for k in y.edge_lower},
    )


def split_all_right(y: DualSolution) -> SplitScheme:
    return SplitScheme(
        cap_left={k: ZERO for k in y.edge_upper},
        cap_right=dict(y.edge_upper),
        floor_left={k: ZERO for k in y.edge_lower},
        floor_right=dict(y.edge_lower),
    )


def split_half(y: DualSolution) -> SplitScheme:
    return SplitScheme(
        cap_left={k: v * HALF for k, v in y.edge_upper.items()},
        cap_right={k: v * HALF for k, v in y.edge_upper.items()},
        floor_left={k: v * HALF for k, v in y.edge_lower.items()},
        floor_right={k: v * HALF for k, v in y.edge_lower.items()},
    )


CANONICAL_SPLITS = (
    ("left", split_all_left),
    ("right", split_all_right),
    ("half", split_half),
)


def _check_split(y: DualSolution, s: SplitScheme) -> None:
    for k, z in y.edge_upper.items():
        if s.cap_left.get(k, ZERO) < 0 or s.cap_right.get(k, ZERO) < 0:
            raise ValueError(f"negative split part on {edge_name(k)}")
        if s.cap_left.get(k, ZERO) + s.cap_right.get(k, ZERO) != z:
            raise ValueError(f"split does not add up on {edge_name(k)}")
    for k, z in y.edge_lower.items():
        if s.floor_left.get(k, ZERO) < 0 or s.floor_right.get(k, ZERO) < 0:
            raise ValueError(f"negative split part on {edge_name(k)}")
        if s.floor_left.get(k, ZERO) + s.floor_right.get(k, ZERO) != z:
            raise ValueError(f"split does not add up on {edge_name(k)}")


def _require_optimal(g: GameInstance, y: DualSolution) -> Fraction:
    w = game_worth(g)
    if not dual_is_optimal(g, y, w):
        raise ValueError("dual solution is not optimal for this game")
    return w


class ProfitSignError(Exception):
    """A dual-derived profit came out negative (possible under floors)."""


def uniform_imputation_from_dual(g: GameInstance, y: DualSolution) -> Imputation:
    """Uniform variant: profit is the common cap times the vertex price."""
    if g.variant != "b-uniform":
        raise ValueError("not a uniform game")
    _require_optimal(g, y)
    bc = next(iter(g.vertex_upper.values()))
    return {q: bc * y.vertex_upper[q] for q in g.vertices}


def uniform_dual_from_imputation(g: GameInstance, imp: Imputation) -> DualSolution:
    """Inverse of the uniform map; the result must be an optimal dual.

    For the uniform variant this succeeds for every core imputation,
    which is exactly what makes the dual a complete description of the
    core there.
    """
    if g.variant != "b-uniform":
        raise ValueError("not a uniform game")
    bc = next(iter(g.vertex_upper.values()))
    y = DualSolution({q: imp[q] / bc for q in g.vertices})
    if not dual_is_optimal(g, y, game_worth(g)):
        raise ValueError("imputation is not in the core: scaled prices not optimal")
    return y


def uncon_imputation_from_dual(g: GameInstance, y: DualSolution) -> Imputation:
    """Unconstrained variant: profit_q = b_q times the vertex price."""
    if g.variant not in ("b-unconstrained", "b-uniform"):
        raise ValueError("not an unconstrained-edges game")
    _require_optimal(g, y)
    return {q: g.vertex_upper[q] * y.vertex_upper[q] for q in g.vertices}


def in_dual_image_uncon(g: GameInstance, imp: Imputation) -> bool:
    """Is ``imp`` the image of some optimal dual under the scaling map?

    The map is a bijection, so the test inverts it: divide by the caps
    and check dual feasibility plus optimal objective.
    """
    if g.variant not in ("b-unconstrained", "b-uniform"):
        raise ValueError("not an unconstrained-edges game")
    y = DualSolution({q: imp[q] / g.vertex_upper[q] for q in g.vertices})
    return dual_is_optimal(g, y, game_worth(g))


def con_imputation_from_dual(
    g: GameInstance, y: DualSolution, split: SplitScheme
) -> Imputation:
    """Constrained variant: scaled vertex prices plus split edge prices."""
    if g.variant != "b-constrained":
        raise ValueError("not a constrained game")
    _require_optimal(g, y)
    _check_split(y, split)
    imp = {q: g.vertex_upper[q] * y.vertex_upper[q] for q in g.vertices}
    for k in g.edge_keys:
        i, j = k
        imp[i] += split.cap_left.get(k, ZERO)
        imp[j] += split.cap_right.get(k, ZERO)
    return imp


def gen_imputation_from_dual(
    g: GameInstance, y: DualSolution, split: SplitScheme
) -> Imputation:
    """General variant: cap and floor prices net out, scaled by the bounds.

    profit_i = (b_i * cap_price_i - a_i * floor_price_i)
             + sum over incident edges of (d_e * own cap share
                                           - c_e * own floor share).

    With floors present nothing forces the result nonnegative; a
    negative entry is raised as a finding rather than clamped.
    """
    if g.variant != "b-general":
        raise ValueError("not a general-bounds game")
    _require_optimal(g, y)
    _check_split(y, split)
    imp: Imputation = {}
    for q in g.vertices:
        imp[q] = g.vertex_upper[q] * y.vertex_upper[q] - g.vertex_lower[
            q
        ] * y.vertex_lower.get(q, ZERO)
    for k in g.edge_keys:
        i, j = k
        d, c = g.edge_upper[k], g.edge_lower[k]
        imp[i] += d * split.cap_left.get(k, ZERO) - c * split.floor_left.get(k, ZERO)
        imp[j] += d * split.cap_right.get(k, ZERO) - c * split.floor_right.get(k, ZERO)
    negative = sorted(q for q, v in imp.items() if v < 0)
    if negative:
        raise ProfitSignError(
            f"dual-derived profits are negative at {', '.join(negative)}"
        )
    return imp


def _feasibility(
    names: list[str],
    rows: list[tuple[dict[str, Fraction], str, Fraction]],
) -> bool:
    """Is the nonnegative system feasible?  Decided by one exact solve."""
    index = {n: t for t, n in enumerate(names)}
    constraints = []
    for coeffs, rel, rhs in rows:
        vec = [ZERO] * len(names)
        for n, cval in coeffs.items():
            vec[index[n]] += cval
        constraints.append((tuple(vec), rel, rhs))
    lp = LinearProgram(
        variables=tuple(names),
        objective=(ZERO,) * len(names),
        maximize=False,
        constraints=tuple(constraints),
        nonnegative=(True,) * len(names),
    )
    return solve_lp(lp).status == "optimal"


def in_dual_image_con(g: GameInstance, imp: Imputation) -> bool:
    """Does any optimal dual plus admissible split reproduce ``imp``?

    The split quantifier is linear, so the whole question is one LP
    feasibility problem over prices and split parts; no search.
    """
    if g.variant != "b-constrained":
        raise ValueError("not a constrained game")
    w = game_worth(g)
    if sum(imp.values(), start=ZERO) != w:
        return False
    names = [f"y[{q}]" for q in g.vertices]
    for k in g.edge_keys:
        names += [f"sL[{edge_name(k)}]", f"sR[{edge_name(k)}]"]
    rows: list[tuple[dict[str, Fraction], str, Fraction]] = []
    obj: dict[str, Fraction] = {}
    for i, j, wt in g.edges:
        k = (i, j)
        rows.append(
            (
                {
                    f"y[{i}]": ONE,
                    f"y[{j}]": ONE,
                    f"sL[{edge_name(k)}]": ONE,
                    f"sR[{edge_name(k)}]": ONE,
                },
                ">=",
                wt,
            )
        )
        obj[f"sL[{edge_name(k)}]"] = ONE
        obj[f"sR[{edge_name(k)}]"] = ONE
    for q in g.vertices:
        obj[f"y[{q}]"] = Fraction(g.vertex_upper[q])
    rows.append((obj, "==", w))
    for q in g.vertices:
        rec: dict[str, Fraction] = {f"y[{q}]": Fraction(g.vertex_upper[q])}
        side = "sL" if q in g.left else "sR"
        for k in g.edge_keys:
            if q in k:
                rec[f"{side}[{edge_name(k)}]"] = ONE
        rows.append((rec, "==", imp[q]))
    return _feasibility(names, rows)


def in_dual_image_gen(g: GameInstance, imp: Imputation) -> bool:
    """Dual-image membership for the general variant, as one LP."""
    if g.variant != "b-general":
        raise ValueError("not a general-bounds game")
    w = game_worth(g)
    if sum(imp.values(), start=ZERO) != w:
        return False
    names = [f"y[{q}]" for q in g.vertices]
    names += [f"y_lo[{q}]" for q in g.vertices]
    for k in g.edge_keys:
        e = edge_name(k)
        names += [f"capL[{e}]", f"capR[{e}]", f"floL[{e}]", f"floR[{e}]"]
    rows: list[tuple[dict[str, Fraction], str, Fraction]] = []
    obj: dict[str, Fraction] = {}
    for q in g.vertices:
        obj[f"y[{q}]"] = Fraction(g.vertex_upper[q])
        obj[f"y_lo[{q}]"] = Fraction(-g.vertex_lower[q])
    for i, j, wt in g.edges:
        e = edge_name((i, j))
        d, c = Fraction(g.edge_upper[(i, j)]), Fraction(g.edge_lower[(i, j)])
        rows.append(
            (
                {
                    f"y[{i}]": ONE,
                    f"y[{j}]": ONE,
                    f"y_lo[{i}]": -ONE,
                    f"y_lo[{j}]": -ONE,
                    f"capL[{e}]": ONE,
                    f"capR[{e}]": ONE,
                    f"floL[{e}]": -ONE,
                    f"floR[{e}]": -ONE,
                },
                ">=",
                wt,
            )
        )
        obj[f"capL[{e}]"] = d
        obj[f"capR[{e}]"] = d
        obj[f"floL[{e}]"] = -c
        obj[f"floR[{e}]"] = -c
    rows.append((dict(obj), "==", w))
    for q in g.vertices:
        rec: dict[str, Fraction] = {
            f"y[{q}]": Fraction(g.vertex_upper[q]),
            f"y_lo[{q}]": Fraction(-g.vertex_lower[q]),
        }
        side = "L" if q in g.left else "R"
        for k in g.edge_keys:
            if q in k:
                e = edge_name(k)
                rec[f"cap{side}[{e}]"] = Fraction(g.edge_upper[k])
                rec[f"flo{side}[{e}]"] = Fraction(-g.edge_lower[k])
        rows.append((rec, "==", imp[q]))
    return _feasibility(names, rows)


def in_dual_image(g: GameInstance, imp: Imputation) -> bool:
    """Variant-dispatched dual-image membership."""
    if g.variant in ("b-uniform", "b-unconstrained"):
        return in_dual_image_uncon(g, imp)
    if g.variant == "b-constrained":
        return in_dual_image_con(g, imp)
    if g.variant == "b-general":
        return in_dual_image_gen(g, imp)
    raise ValueError(f"dual image is defined for b-variants, not {g.variant}")


@dataclass(frozen=True)
class CoalitionSystem:
    """Linear description of the core over connected coalitions.

    One >= inequality per connected coalition (worth on the right), one
    equality for the grand coalition, nonnegativity on every profit.
    Floor-infeasible coalitions are listed in ``skipped``.
    """

    vertices: tuple[str, ...]
    inequalities: tuple[tuple[Coalition, Fraction], ...]
    grand_worth: Fraction
    skipped: tuple[Coalition, ...] = ()


def coalition_system(
    g: GameInstance,
    cap: int = DEFAULT_COALITION_CAP,
    budget_cap: int = DEFAULT_BUDGET_CAP,
) -> CoalitionSystem:
    grand = frozenset(g.vertices)
    rows: list[tuple[Coalition, Fraction]] = []
    skipped: list[Coalition] = []
    for s in connected_coalitions(g, cap):
        if s == grand:
            continue
        ws = coalition_worth(g, s, budget_cap)
        if ws is None:
            skipped.append(s)
        else:
            rows.append((s, ws))
    return CoalitionSystem(
        vertices=tuple(g.vertices),
        inequalities=tuple(rows),
        grand_worth=game_worth(g, budget_cap),
        skipped=tuple(skipped),
    )


def all_coalition_system(
    g: GameInstance,
    cap: int = DEFAULT_COALITION_CAP,
    budget_cap: int = DEFAULT_BUDGET_CAP,
) -> CoalitionSystem:
    """Same, over every nonempty coalition; the redundant cross-check."""
    import itertools

    n = len(g.vertices)
    if n > cap:
        from .games import CapExceeded

        raise CapExceeded(f"{n} vertices exceed coalition enumeration cap {cap}")
    grand = frozenset(g.vertices)
    ids = sorted(g.vertices)
    rows: list[tuple[Coalition, Fraction]] = []
    skipped: list[Coalition] = []
    for r in range(1, n + 1):
        for combo in itertools.combinations(ids, r):
            s = frozenset(combo)
            if s == grand:
                continue
            ws = coalition_worth(g, s, budget_cap)
            if ws is None:
                skipped.append(s)
            else:
                rows.append((s, ws))
    return CoalitionSystem(
        vertices=tuple(g.vertices),
        inequalities=tuple(rows),
        grand_worth=game_worth(g, budget_cap),
        skipped=tuple(skipped),
    )


@dataclass(frozen=True)
class SystemVerdict:
    in_core: bool
    witness: Coalition | None


def core_membership_via_system(sys: CoalitionSystem, imp: Imputation) -> SystemVerdict:
    """Exact satisfaction check; the witness is the violated coalition."""
    if set(imp) != set(sys.vertices):
        raise ValueError("imputation keys do not match the system's vertices")
    for q in sorted(sys.vertices):
        if imp[q] < 0:
            return SystemVerdict(False, frozenset((q,)))
    if sum(imp.values(), start=ZERO) != sys.grand_worth:
        return SystemVerdict(False, frozenset(sys.vertices))
    for s, rhs in sys.inequalities:
        if sum((imp[q] for q in s), start=ZERO) < rhs:
            return SystemVerdict(False, s)
    return SystemVerdict(True, None)


def system_lp(sys: CoalitionSystem, objective: dict[str, Fraction]) -> LinearProgram:
    """The system as an LP with the given profit objective (maximized)."""
    names = tuple(sys.vertices)
    rows = [
        (tuple(ONE if q in s else ZERO for q in names), ">=", rhs)
        for s, rhs in sys.inequalities
    ]
    rows.append(((ONE,) * len(names), "==", sys.grand_worth))
    return LinearProgram(
        variables=names,
        objective=tuple(objective.get(q, ZERO) for q in names),
        maximize=True,
        constraints=tuple(rows),
        nonnegative=(True,) * len(names),
    )


def sample_core_imputations(
    sys: CoalitionSystem, seed: int, count: int
) -> list[Imputation]:
    """Distinct core vertices found by optimizing random integer profiles.

    The seed is explicit so reports built from samples stay
    reproducible; sampling explores the whole core, including any part
    outside the dual image.
    """
    rng = Random(seed)
    out: list[Imputation] = []
    for _ in range(count):
        objective = {q: Fraction(rng.randint(1, 9)) for q in sys.vertices}
        sol = solve_lp(system_lp(sys, objective))
        if sol.status != "optimal":
            raise RuntimeError(f"core polytope came back {sol.status}")
        imp = {q: sol.values[q] for q in sys.vertices}
        if imp not in out:
            out.append(imp)
    return out
