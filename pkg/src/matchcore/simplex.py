"""Exact rational simplex solver.

Dense two-phase tableau method over `fractions.Fraction` with Bland's
anti-cycling rule for both the entering and the leaving choice.  The
games in this package produce heavily degenerate programs, so cycling
protection is not optional, and determinism matters because reports are
compared byte for byte.

The solver is meant for desk-scale programs (tens of variables).  Every
``optimal`` answer is an exact basic solution: downstream code relies on
equalities such as "dual objective == worth" holding exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

RELATIONS = ("<=", ">=", "==")


@dataclass(frozen=True)
class LinearProgram:
    variables: tuple[str, ...]
    objective: tuple[Fraction, ...]
    maximize: bool
    constraints: tuple[tuple[tuple[Fraction, ...], str, Fraction], ...]
    nonnegative: tuple[bool, ...] = ()
    row_labels: tuple[str, ...] = ()

    def check(self) -> None:
        n = len(self.variables)
        if len(set(self.variables)) != n:
            raise ValueError("duplicate variable names")
        if len(self.objective) != n:
            raise ValueError("objective length does not match variables")
        nn = self.nonnegative or (True,) * n
        if len(nn) != n:
            raise ValueError("nonnegative flags do not match variables")
        for coeffs, rel, _ in self.constraints:
            if len(coeffs) != n:
                raise ValueError("constraint width does not match variables")
            if rel not in RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
        if self.row_labels and len(self.row_labels) != len(self.constraints):
            raise ValueError("row labels do not match constraints")


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    values: dict[str, Fraction]
    objective_value: Fraction | None
    is_vertex: bool = False


def _pivot(tableau, cost, basis, row, col) -> None:
    prow = tableau[row]
    piv = prow[col]
    inv = ONE / piv
    tableau[row] = [x * inv for x in prow]
    prow = tableau[row]
    for i, r in enumerate(tableau):
        if i == row:
            continue
        f = r[col]
        if f:
            tableau[i] = [a - f * b for a, b in zip(r, prow)]
    f = cost[col]
    if f:
        for j, b in enumerate(prow):
            if b:
                cost[j] -= f * b
    basis[row] = col


def _run(tableau, cost, basis, ncols) -> str:
    """Minimize until reduced costs are nonnegative (Bland's rule)."""
    while True:
        enter = -1
        for j in range(ncols):
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        best_key = None
        best_row = -1
        for i, r in enumerate(tableau):
            a = r[enter]
            if a > 0:
                key = (r[-1] / a, basis[i])
                if best_key is None or key < best_key:
                    best_key = key
                    best_row = i
        if best_row < 0:
            return "unbounded"
        _pivot(tableau, cost, basis, best_row, enter)


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Exact optimum of ``lp`` as a basic solution.

    Returns status ``infeasible`` or ``unbounded`` when no optimum
    exists.  The output is a pure function of the input: Bland's rule
    with first-index tie-breaking leaves no room for tie ambiguity.
    """
    lp.check()
    n = len(lp.variables)
    nn = lp.nonnegative or (True,) * n
    if n == 0:
        for coeffs, rel, rhs in lp.constraints:
            ok = (rel == "<=" and rhs >= 0) or (rel == ">=" and rhs <= 0) or (
                rel == "==" and rhs == 0
            )
            if not ok:
                return LPSolution("infeasible", {}, None)
        return LPSolution("optimal", {}, ZERO, True)

    # Free variables enter as a difference of two nonnegative columns.
    cols: list[tuple[int, int]] = []
    for idx in range(n):
        cols.append((idx, 1))
        if not nn[idx]:
            cols.append((idx, -1))
    nstruct = len(cols)

    cost_struct = [Fraction(s) * lp.objective[idx] for idx, s in cols]
    if lp.maximize:
        cost_struct = [-x for x in cost_struct]

    rows = []
    for coeffs, rel, rhs in lp.constraints:
        a = [Fraction(s) * coeffs[idx] for idx, s in cols]
        if rhs < 0:
            a = [-x for x in a]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "==": "=="}[rel]
        rows.append((a, rel, rhs))

    m = len(rows)
    nslack = sum(1 for _, rel, _ in rows if rel in ("<=", ">="))
    nart = sum(1 for _, rel, _ in rows if rel in (">=", "=="))
    width = nstruct + nslack + nart
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    art_cols: list[int] = []
    s_at = nstruct
    a_at = nstruct + nslack
    for a, rel, rhs in rows:
        row = a + [ZERO] * (nslack + nart) + [rhs]
        if rel == "<=":
            row[s_at] = ONE
            basis.append(s_at)
            s_at += 1
        elif rel == ">=":
            row[s_at] = -ONE
            s_at += 1
            row[a_at] = ONE
            basis.append(a_at)
            art_cols.append(a_at)
            a_at += 1
        else:
            row[a_at] = ONE
            basis.append(a_at)
            art_cols.append(a_at)
            a_at += 1
        tableau.append(row)

    if art_cols:
        cost = [ZERO] * (width + 1)
        for j in art_cols:
            cost[j] = ONE
        for i, b in enumerate(basis):
            if cost[b]:
                f = cost[b]
                cost = [c - f * t for c, t in zip(cost, tableau[i])]
        status = _run(tableau, cost, basis, width)
        assert status == "optimal"  # phase one is always bounded below by 0
        if -cost[-1] != 0:
            return LPSolution("infeasible", {}, None)
        # Drive lingering artificials out of the (degenerate) basis.
        art_set = set(art_cols)
        drop: list[int] = []
        for i in range(m):
            if basis[i] in art_set:
                piv = next(
                    (j for j in range(nstruct + nslack) if tableau[i][j] != 0), -1
                )
                if piv < 0:
                    drop.append(i)  # redundant constraint
                else:
                    _pivot(tableau, cost, basis, i, piv)
        for i in reversed(drop):
            del tableau[i]
            del basis[i]
        m = len(tableau)
        keep = [j for j in range(width) if j not in art_set]
        remap = {j: k for k, j in enumerate(keep)}
        tableau = [[r[j] for j in keep] + [r[-1]] for r in tableau]
        basis = [remap[b] for b in basis]
        width = len(keep)

    cost = [ZERO] * (width + 1)
    for j in range(nstruct):
        cost[j] = cost_struct[j]
    for i, b in enumerate(basis):
        if cost[b]:
            f = cost[b]
            cost = [c - f * t for c, t in zip(cost, tableau[i])]
    status = _run(tableau, cost, basis, width)
    if status == "unbounded":
        return LPSolution("unbounded", {}, None)

    expanded = [ZERO] * nstruct
    for i, b in enumerate(basis):
        if b < nstruct:
            expanded[b] = tableau[i][-1]
    values = {name: ZERO for name in lp.variables}
    for (idx, s), x in zip(cols, expanded):
        values[lp.variables[idx]] += Fraction(s) * x
    objective = sum(
        (c * values[v] for c, v in zip(lp.objective, lp.variables)), start=ZERO
    )
    _assert_feasible(lp, values)
    return LPSolution("optimal", values, objective, all(nn))


def _assert_feasible(lp: LinearProgram, values: dict[str, Fraction]) -> None:
    # Cheap exact self-check; a failure here is a solver bug.
    nn = lp.nonnegative or (True,) * len(lp.variables)
    for flag, name in zip(nn, lp.variables):
        if flag and values[name] < 0:
            raise AssertionError(f"solver produced negative {name}")
    for coeffs, rel, rhs in lp.constraints:
        lhs = sum(
            (c * values[v] for c, v in zip(coeffs, lp.variables)), start=ZERO
        )
        ok = (rel == "<=" and lhs <= rhs) or (rel == ">=" and lhs >= rhs) or (
            rel == "==" and lhs == rhs
        )
        if not ok:
            raise AssertionError("solver produced an infeasible point")


def solve_over_optimal_face(
    lp: LinearProgram,
    optimal_value: Fraction,
    secondary_objective: tuple[Fraction, ...],
    maximize: bool,
) -> LPSolution:
    """Optimize a second objective over the optimal face of ``lp``.

    The face is the feasible set of ``lp`` intersected with the equality
    "original objective == optimal_value".  The caller supplies the true
    optimum (from :func:`solve_lp`); an infeasible face means it was
    wrong and raises.  An unbounded secondary objective is reported as
    such, never clamped: on the faces this package builds it signals a
    modeling bug loudly.
    """
    face = LinearProgram(
        variables=lp.variables,
        objective=tuple(secondary_objective),
        maximize=maximize,
        constraints=lp.constraints + ((lp.objective, "==", optimal_value),),
        nonnegative=lp.nonnegative,
        row_labels=(lp.row_labels + ("optimum",)) if lp.row_labels else (),
    )
    sol = solve_lp(face)
    if sol.status == "infeasible":
        raise ValueError(
            "optimal face is empty; the supplied optimal_value is not the optimum"
        )
    return sol
