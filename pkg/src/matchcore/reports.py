"""Deterministic analysis reports.

A report is a header plus ordered sections of pre-formatted lines.  The
text rendering and the JSON document are both pure functions of the
analysis results, with every number in canonical rational form, so two
runs over the same input are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import (
    Imputation,
    check_concurrency,
    core_imputation_from_dual,
    degeneracy_report,
    antipodal_imputations,
    payment_report,
    game_worth,
)
from .bmatching import (
    B_VARIANTS,
    CANONICAL_SPLITS,
    coalition_system,
    con_imputation_from_dual,
    gen_imputation_from_dual,
    in_dual_image,
    uncon_imputation_from_dual,
    uniform_imputation_from_dual,
)
from .games import GameInstance
from .gamelp import edge_name, solve_dual
from .matchings import classification_table
from .rationals import format_rational as fr


@dataclass
class Report:
    header: list[tuple[str, str]]
    sections: list[tuple[str, list[str]]] = field(default_factory=list)

    def add(self, title: str, lines: list[str]) -> None:
        self.sections.append((title, lines))

    def to_text(self) -> str:
        out = [f"{k}: {v}" for k, v in self.header]
        for title, lines in self.sections:
            out.append("")
            out.append(f"[{title}]")
            out.extend(lines)
        return "\n".join(out) + "\n"

    def to_json(self) -> str:
        doc = {
            "header": {k: v for k, v in self.header},
            "sections": [
                {"title": title, "lines": lines} for title, lines in self.sections
            ],
        }
        return json.dumps(doc, indent=2) + "\n"


def table(rows: list[tuple[str, ...]]) -> list[str]:
    """Left-aligned columns with two-space gutters."""
    if not rows:
        return []
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return [
        "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows
    ]


def report_header(g: GameInstance, cap: int, budget_cap: int) -> Report:
    return Report(
        header=[
            ("game", g.name or "(unnamed)"),
            ("variant", g.variant),
            ("caps", f"coalition-vertices={cap} multiplicity-budget={budget_cap}"),
        ]
    )


def imputation_lines(g: GameInstance, imp: Imputation) -> list[str]:
    rows = [(q, fr(imp[q])) for q in g.vertices]
    rows.append(("total", fr(sum(imp.values(), start=Fraction(0)))))
    return table(rows)


def worth_section(g: GameInstance, budget_cap: int) -> list[str]:
    return [f"grand-coalition = {fr(game_worth(g, budget_cap))}"]


def concurrency_section(g: GameInstance, budget_cap: int) -> list[str]:
    rep = check_concurrency(g, budget_cap)
    lines = [
        f"integral-optimum = {fr(rep.integral)}",
        f"fractional-optimum = {fr(rep.fractional)}",
        f"concurrent = {'yes' if rep.concurrent else 'no'}",
    ]
    if g.variant == "general-matching":
        lines.append(f"core = {'nonempty' if rep.concurrent else 'empty'}")
    return lines


def dual_section(g: GameInstance) -> list[str]:
    sol, y = solve_dual(g)
    rows = [(q, fr(y.vertex_upper[q])) for q in g.vertices]
    if y.vertex_lower:
        rows += [(f"{q}:lo", fr(y.vertex_lower[q])) for q in g.vertices]
    if y.edge_upper:
        rows += [(f"z[{edge_name(k)}]", fr(y.edge_upper[k])) for k in g.edge_keys]
    if y.edge_lower:
        rows += [(f"z_lo[{edge_name(k)}]", fr(y.edge_lower[k])) for k in g.edge_keys]
    return table(rows) + [f"objective = {fr(sol.objective_value)}"]


def dual_imputation(g: GameInstance, split: str = "half") -> Imputation | None:
    """The dual-derived imputation of the variant, or None for empty core."""
    if g.variant == "general-matching" and not check_concurrency(g).concurrent:
        return None
    _, y = solve_dual(g)
    if g.variant in ("assignment", "general-matching"):
        return core_imputation_from_dual(g, y)
    if g.variant == "b-uniform":
        return uniform_imputation_from_dual(g, y)
    if g.variant == "b-unconstrained":
        return uncon_imputation_from_dual(g, y)
    maker = dict(CANONICAL_SPLITS)[split]
    if g.variant == "b-constrained":
        return con_imputation_from_dual(g, y, maker(y))
    return gen_imputation_from_dual(g, y, maker(y))


def imputation_section(g: GameInstance, split: str = "half") -> list[str]:
    imp = dual_imputation(g, split)
    if imp is None:
        return ["core = empty"]
    lines = []
    if g.variant in ("b-constrained", "b-general"):
        lines.append(f"split = {split}")
    return lines + imputation_lines(g, imp)


def classify_section(g: GameInstance, budget_cap: int) -> list[str]:
    vlabels, elabels, best, optima = classification_table(g, budget_cap)
    rows = [("vertex", "label")] + [(q, vlabels[q]) for q in g.vertices]
    rows += [("edge", "label")] + [(edge_name(k), elabels[k]) for k in g.edge_keys]
    return table(rows) + [
        f"optimal-matchings = {len(optima)}",
        f"optimum = {fr(best)}",
    ]


def payments_section(g: GameInstance, budget_cap: int) -> list[str]:
    rep = payment_report(g, budget_cap)
    first = next(iter(rep.vertices.values()))
    if first.core_empty:
        return ["core = empty"]
    rows = [("vertex", "paid-sometimes", "max-profit")]
    for q in g.vertices:
        p = rep.vertices[q]
        rows.append((q, "yes" if p.paid_sometimes else "no", fr(p.max_profit)))
    rows.append(("edge", "always-fair", "max-overpay"))
    for k in g.edge_keys:
        e = rep.edges[k]
        rows.append((edge_name(k), "yes" if e.always_fair else "no", fr(e.max_slack)))
    return table(rows)


def antipodal_section(g: GameInstance) -> list[str]:
    left_best, right_best = antipodal_imputations(g)
    lines = ["left-optimal:"]
    lines += ["  " + s for s in imputation_lines(g, left_best)]
    lines.append("right-optimal:")
    lines += ["  " + s for s in imputation_lines(g, right_best)]
    return lines


def degeneracy_section(g: GameInstance, budget_cap: int) -> list[str]:
    rep = degeneracy_report(g, budget_cap)
    lines = [
        f"degenerate = {'yes' if rep.degenerate else 'no'}",
        f"optimal-matchings = {rep.optima_count}",
        "viable-vertices = " + (" ".join(rep.viable_vertices) or "(none)"),
        "viable-edges = "
        + (" ".join(edge_name(k) for k in rep.viable_edges) or "(none)"),
    ]
    if rep.never_paid_vertices is not None:
        lines.append(
            "never-paid-vertices = " + (" ".join(rep.never_paid_vertices) or "(none)")
        )
    if rep.always_fair_edges is not None:
        lines.append(
            "always-fair-edges = "
            + (" ".join(edge_name(k) for k in rep.always_fair_edges) or "(none)")
        )
    return lines


def system_section(g: GameInstance, cap: int, budget_cap: int) -> list[str]:
    sys = coalition_system(g, cap, budget_cap)
    rows = []
    for s, rhs in sys.inequalities:
        rows.append((" + ".join(sorted(s)), ">=", fr(rhs)))
    rows.append((" + ".join(sorted(sys.vertices)), "==", fr(sys.grand_worth)))
    lines = table(rows)
    if sys.skipped:
        lines.append(
            "skipped-infeasible = "
            + " ".join("{" + ",".join(sorted(s)) + "}" for s in sys.skipped)
        )
    return lines


def full_report(g: GameInstance, cap: int, budget_cap: int) -> Report:
    """The standard battery for a bundled instance, variant-aware."""
    rep = report_header(g, cap, budget_cap)
    rep.add("worth", worth_section(g, budget_cap))
    rep.add("concurrency", concurrency_section(g, budget_cap))
    rep.add("dual", dual_section(g))
    rep.add("imputation", imputation_section(g))
    rep.add("classification", classify_section(g, budget_cap))
    if g.variant in ("assignment", "general-matching"):
        rep.add("payments", payments_section(g, budget_cap))
        rep.add("degeneracy", degeneracy_section(g, budget_cap))
    if g.variant == "assignment":
        rep.add("antipodal", antipodal_section(g))
    if g.variant in B_VARIANTS:
        rep.add("system", system_section(g, cap, budget_cap))
        imp = dual_imputation(g)
        rep.add(
            "dual-image",
            [f"dual-derived-imputation-in-image = "
             f"{'yes' if in_dual_image(g, imp) else 'no'}"],
        )
    return rep
