from fractions import Fraction as F
from random import Random

import pytest

from matchcore.analysis import game_worth, is_core_imputation, meet_join
from matchcore.bmatching import (
    ProfitSignError,
    all_coalition_system,
    coalition_system,
    con_imputation_from_dual,
    core_membership_via_system,
    gen_imputation_from_dual,
    in_dual_image,
    in_dual_image_con,
    in_dual_image_gen,
    in_dual_image_uncon,
    sample_core_imputations,
    split_all_left,
    split_all_right,
    split_half,
    uncon_imputation_from_dual,
    uniform_dual_from_imputation,
    uniform_imputation_from_dual,
)
from matchcore.bundled import load_instance
from matchcore.gamelp import DualSolution, dual_is_optimal, solve_dual
from matchcore.games import make_game

from gamegen import random_b_game

Z = F(0)


def imp(g, *values):
    return dict(zip(g.vertices, (F(v) for v in values)))


def test_uniform_forward_and_inverse():
    g = load_instance("path5-b2")
    assert game_worth(g) == F(21, 5)
    _, y = solve_dual(g)
    profits = uniform_imputation_from_dual(g, y)
    assert profits == imp(g, 2, 2, 0, F(1, 5), 0)
    back = uniform_dual_from_imputation(g, profits)
    assert back.vertex_upper == {
        "u1": F(1),
        "u2": F(1),
        "v1": Z,
        "v2": F(1, 10),
        "v3": Z,
    }


def test_uniform_cap_one_reduces_to_identity():
    g = make_game(
        "b-uniform",
        ["u"],
        ["v1", "v2"],
        [("u", "v1", F(1)), ("u", "v2", F(11, 10))],
        vertex_upper=1,
    )
    _, y = solve_dual(g)
    assert uniform_imputation_from_dual(g, y) == dict(y.vertex_upper)


def test_uniform_inverse_rejects_non_core():
    g = load_instance("path5-b2")
    with pytest.raises(ValueError):
        uniform_dual_from_imputation(g, imp(g, F(21, 5), 0, 0, 0, 0))


def test_uncon_imputation_bpath4():
    g = load_instance("bpath4-uncon")
    _, y = solve_dual(g)
    assert y.vertex_upper == {"u1": F(1), "u2": Z, "v1": Z, "v2": F(2)}
    assert uncon_imputation_from_dual(g, y) == imp(g, 2, 0, 0, 2)


def test_uncon_single_edge_scaling():
    w = F(7, 2)
    g = make_game(
        "b-unconstrained",
        ["u"],
        ["v"],
        [("u", "v", w)],
        vertex_upper={"u": 3, "v": 2},
    )
    assert game_worth(g) == 2 * w
    _, y = solve_dual(g)
    # the cheap side carries the price: min 3u + 2v forces (0, w)
    assert y.vertex_upper == {"u": Z, "v": w}
    assert uncon_imputation_from_dual(g, y) == {"u": Z, "v": 2 * w}


def test_in_dual_image_uncon_cases():
    g = load_instance("bpath4-uncon")
    assert in_dual_image_uncon(g, imp(g, 2, 0, 0, 2))
    assert not in_dual_image_uncon(g, imp(g, 3, 0, 0, 1))
    assert not in_dual_image_uncon(g, imp(g, 2, 0, 1, 1))


def test_uncon_core_strictly_exceeds_dual_image():
    g = load_instance("bpath4-uncon")
    sys = coalition_system(g)
    outside = imp(g, 3, 0, 0, 1)
    assert core_membership_via_system(sys, outside).in_core
    assert not in_dual_image_uncon(g, outside)


def test_con_imputations_from_dual_family():
    g = load_instance("bpath4-con")
    heavy = ("u1", "v2")
    y1 = DualSolution(
        {"u1": F(1), "u2": Z, "v1": Z, "v2": F(1)},
        edge_upper={k: (F(1) if k == heavy else Z) for k in g.edge_keys},
    )
    assert dual_is_optimal(g, y1, F(4))
    assert con_imputation_from_dual(g, y1, split_all_left(y1)) == imp(g, 3, 0, 0, 1)
    assert con_imputation_from_dual(g, y1, split_all_right(y1)) == imp(g, 2, 0, 0, 2)
    assert con_imputation_from_dual(g, y1, split_half(y1)) == imp(
        g, F(5, 2), 0, 0, F(3, 2)
    )
    y0 = DualSolution(
        {"u1": F(1), "u2": Z, "v1": Z, "v2": F(2)},
        edge_upper={k: Z for k in g.edge_keys},
    )
    assert con_imputation_from_dual(g, y0, split_all_left(y0)) == imp(g, 2, 0, 0, 2)


def test_con_split_must_match_dual():
    g = load_instance("bpath4-con")
    _, y = solve_dual(g)
    bad = split_all_left(y)
    bad.cap_left[("u1", "v2")] += 1
    with pytest.raises(ValueError):
        con_imputation_from_dual(g, y, bad)


def test_con_dual_image_family_points():
    g = load_instance("bpath4-con")
    for b in (Z, F(1, 2), F(1)):
        assert in_dual_image_con(g, imp(g, 3 - b, 0, 0, 1 + b))


def test_con_dual_image_reaches_beyond_listed_family():
    # Certificate: prices (0,0,0,3) with edge price 1 on u1~v1 are optimal
    # (objective 4), and splitting that edge price to either endpoint
    # yields (1,0,0,3) and (0,0,1,3).  Both are therefore in the image.
    g = load_instance("bpath4-con")
    y = DualSolution(
        {"u1": Z, "u2": Z, "v1": Z, "v2": F(3)},
        edge_upper={
            ("u1", "v1"): F(1),
            ("u1", "v2"): Z,
            ("u2", "v2"): Z,
        },
    )
    assert dual_is_optimal(g, y, F(4))
    assert con_imputation_from_dual(g, y, split_all_left(y)) == imp(g, 1, 0, 0, 3)
    assert con_imputation_from_dual(g, y, split_all_right(y)) == imp(g, 0, 0, 1, 3)
    assert in_dual_image_con(g, imp(g, 1, 0, 0, 3))
    assert in_dual_image_con(g, imp(g, 0, 0, 1, 3))


def test_con_dual_image_rejects_non_imputations():
    g = load_instance("bpath4-con")
    assert not in_dual_image_con(g, imp(g, 4, 0, 0, 1))  # wrong total
    assert not in_dual_image_con(g, imp(g, 4, 0, 0, 0))  # core violation too


def test_coalition_system_rhs_by_variant():
    gu = load_instance("bpath4-uncon")
    su = coalition_system(gu)
    rhs = {tuple(sorted(s)): v for s, v in su.inequalities}
    assert rhs[("u1", "v1")] == 2  # repeatable edge used twice
    assert rhs[("u1", "v2")] == 3
    assert rhs[("u1", "v1", "v2")] == 4
    assert rhs[("u2", "v2")] == 1
    assert rhs[("u1", "u2", "v2")] == 3
    assert su.grand_worth == 4
    gc = load_instance("bpath4-con")
    sc = coalition_system(gc)
    rhs = {tuple(sorted(s)): v for s, v in sc.inequalities}
    assert rhs[("u1", "v1")] == 1  # single-use edge
    assert sc.grand_worth == 4


def test_system_membership_witnesses():
    gu = load_instance("bpath4-uncon")
    su = coalition_system(gu)
    assert core_membership_via_system(su, imp(gu, 3, 0, 0, 1)).in_core
    got = core_membership_via_system(su, imp(gu, 1, 0, 0, 3))
    assert not got.in_core and got.witness == frozenset({"u1", "v1"})
    gc = load_instance("bpath4-con")
    sc = coalition_system(gc)
    assert core_membership_via_system(sc, imp(gc, 1, 0, 0, 3)).in_core


def test_gen_reduces_to_assignment_on_single_edge():
    w = F(9, 5)
    g = make_game("b-general", ["u"], ["v"], [("u", "v", w)])
    _, y = solve_dual(g)
    profits = gen_imputation_from_dual(g, y, split_half(y))
    assert sum(profits.values(), start=Z) == w
    assert all(v >= 0 for v in profits.values())
    sys = coalition_system(g)
    assert core_membership_via_system(sys, profits).in_core


def test_gen_d1_matches_constrained_results():
    g = load_instance("bpath4-gen-d1")
    assert game_worth(g) == 4
    _, y = solve_dual(g)
    sys = coalition_system(g)
    for split in (split_all_left, split_all_right, split_half):
        profits = gen_imputation_from_dual(g, y, split(y))
        assert core_membership_via_system(sys, profits).in_core
    # the family reachable in the single-use encoding is reachable here
    for b in (Z, F(1, 2), F(1)):
        assert in_dual_image_gen(g, imp(g, 3 - b, 0, 0, 1 + b))


def test_gen_cap_matches_unconstrained_results():
    g = load_instance("bpath4-gen-cap")
    assert game_worth(g) == 4
    y = DualSolution(
        {"u1": F(1), "u2": Z, "v1": Z, "v2": F(2)},
        vertex_lower={q: Z for q in g.vertices},
        edge_upper={k: Z for k in g.edge_keys},
        edge_lower={k: Z for k in g.edge_keys},
    )
    assert dual_is_optimal(g, y, F(4))
    profits = gen_imputation_from_dual(g, y, split_half(y))
    assert profits == imp(g, 2, 0, 0, 2)
    assert in_dual_image_gen(g, profits)
    sys = coalition_system(g)
    assert core_membership_via_system(sys, profits).in_core


def test_gen_floor_can_turn_profits_negative():
    # With a vertex floor the dual may pay through the floor credit and
    # the reconstructed profit goes negative; reported, never clamped.
    g = make_game(
        "b-general",
        ["u"],
        ["v"],
        [("u", "v", F(1))],
        vertex_lower={"u": 1},
    )
    assert game_worth(g) == 1
    y = DualSolution(
        {"u": Z, "v": F(2)},
        vertex_lower={"u": F(1), "v": Z},
        edge_upper={("u", "v"): Z},
        edge_lower={("u", "v"): Z},
    )
    assert dual_is_optimal(g, y, F(1))
    with pytest.raises(ProfitSignError):
        gen_imputation_from_dual(g, y, split_half(y))


def test_gen_floor_infeasible_coalitions_are_skipped():
    g = make_game(
        "b-general",
        ["u"],
        ["v"],
        [("u", "v", F(1))],
        vertex_lower={"u": 1},
    )
    sys = coalition_system(g)
    assert frozenset({"u"}) in sys.skipped
    verdict = core_membership_via_system(sys, {"u": Z, "v": F(1)})
    assert verdict.in_core


def test_connected_system_equals_full_system():
    rng = Random(71)
    for variant in ("b-uniform", "b-unconstrained", "b-constrained", "b-general"):
        done = 0
        while done < 8:
            g = random_b_game(rng, variant)
            if not g.edges:
                continue
            done += 1
            fast = coalition_system(g)
            full = all_coalition_system(g)
            for sample in sample_core_imputations(fast, seed=5, count=2):
                assert core_membership_via_system(full, sample).in_core
            perturbed = sample_core_imputations(fast, seed=6, count=1)[0]
            qs = sorted(perturbed)
            perturbed[qs[0]] += F(1, 2)
            perturbed[qs[-1]] -= F(1, 2)
            a = core_membership_via_system(fast, perturbed).in_core
            b = core_membership_via_system(full, perturbed).in_core
            assert a == b


def test_dual_derived_imputations_pass_core_check():
    rng = Random(73)
    for variant in ("b-uniform", "b-unconstrained", "b-constrained", "b-general"):
        done = 0
        while done < 8:
            g = random_b_game(rng, variant)
            if not g.edges:
                continue
            done += 1
            _, y = solve_dual(g)
            sys = coalition_system(g)
            if variant == "b-uniform":
                profile = [uniform_imputation_from_dual(g, y)]
            elif variant == "b-unconstrained":
                profile = [uncon_imputation_from_dual(g, y)]
            elif variant == "b-constrained":
                profile = [
                    con_imputation_from_dual(g, y, s(y))
                    for s in (split_all_left, split_all_right, split_half)
                ]
            else:
                profile = [
                    gen_imputation_from_dual(g, y, s(y))
                    for s in (split_all_left, split_all_right, split_half)
                ]
            for profits in profile:
                assert core_membership_via_system(sys, profits).in_core
                assert in_dual_image(g, profits)


def test_uniform_core_is_exactly_the_dual_image():
    rng = Random(79)
    done = 0
    while done < 10:
        g = random_b_game(rng, "b-uniform")
        if not g.edges:
            continue
        done += 1
        sys = coalition_system(g)
        for sample in sample_core_imputations(sys, seed=9, count=3):
            back = uniform_dual_from_imputation(g, sample)
            assert dual_is_optimal(g, back, game_worth(g))


def test_meet_join_uniform_lattice():
    rng = Random(83)
    done = 0
    while done < 8:
        g = random_b_game(rng, "b-uniform", max_side=3, max_b=2)
        if not g.edges:
            continue
        done += 1
        sys = coalition_system(g)
        samples = sample_core_imputations(sys, seed=3, count=2)
        if len(samples) < 2:
            continue
        meet, join = meet_join(g, samples[0], samples[1])
        assert is_core_imputation(g, meet).in_core
        assert is_core_imputation(g, join).in_core


def test_sampling_is_deterministic():
    g = load_instance("bpath4-uncon")
    sys = coalition_system(g)
    a = sample_core_imputations(sys, seed=17, count=4)
    b = sample_core_imputations(sys, seed=17, count=4)
    assert a == b
