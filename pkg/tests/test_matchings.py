from fractions import Fraction as F
from random import Random

import pytest

from matchcore.bundled import load_instance
from matchcore.games import CapExceeded, induce_subgame, make_game
from matchcore.matchings import (
    MatchingVector,
    birkhoff_decompose,
    brute_force_optima,
    check_half_integral,
    classify_edge,
    classify_vertex,
    classification_table,
    fractional_optimum,
    make_matching_vector,
)

from gamegen import random_assignment

H = F(1, 2)


def loads_ok(g, vec):
    return all(vec.load(q) <= g.vertex_upper[q] for q in g.vertices)


def test_ring7_three_optima_share_heavy_edge():
    g = load_instance("ring7")
    best, optima = brute_force_optima(g)
    assert best == 4
    assert len(optima) == 3
    assert all(m.multiplicity(("v2", "v7")) == 1 for m in optima)
    rests = sorted(
        tuple(sorted(k for k, _ in m.multiplicities if k != ("v2", "v7")))
        for m in optima
    )
    assert rests == [
        (("v1", "v6"), ("v3", "v4")),
        (("v1", "v6"), ("v4", "v5")),
        (("v3", "v4"), ("v5", "v6")),
    ]


def test_path5_two_optima():
    best, optima = brute_force_optima(load_instance("path5"))
    assert best == F(21, 10)
    assert len(optima) == 2


def test_bpath4_uncon_optimum():
    g = load_instance("bpath4-uncon")
    best, optima = brute_force_optima(g)
    assert best == 4
    assert [dict(m.multiplicities) for m in optima] == [
        {("u1", "v1"): F(1), ("u1", "v2"): F(1)}
    ]


def test_budget_cap():
    g = load_instance("tiers8")
    with pytest.raises(CapExceeded):
        brute_force_optima(g, budget_cap=4)


def test_floors_can_make_games_infeasible():
    g = make_game(
        "b-general",
        ["u"],
        ["v", "w"],
        [("u", "v", F(1))],
        vertex_lower={"w": 1},
    )
    best, optima = brute_force_optima(g)
    assert best is None and optima == []


def test_fractional_optimum_values():
    k3 = fractional_optimum(load_instance("k3"))
    assert k3.weight == F(3, 2)
    assert all(m == H for _, m in k3.multiplicities)
    t4 = fractional_optimum(load_instance("tritail4"))
    assert t4.weight == 2
    p5 = fractional_optimum(load_instance("path5"))
    assert p5.weight == F(21, 10)
    assert all(m.denominator == 1 for _, m in p5.multiplicities)


def test_half_integral_k3():
    rep = check_half_integral(fractional_optimum(load_instance("k3")))
    assert rep.is_half_integral
    assert rep.ones == ()
    assert len(rep.halves) == 3
    assert rep.half_components == (("v1", "v2", "v3"),)


def test_half_integral_integral_matching():
    g = load_instance("path5")
    _, optima = brute_force_optima(g)
    rep = check_half_integral(optima[0])
    assert rep.is_half_integral and rep.halves == ()


def test_half_integral_rejects_thirds():
    g = load_instance("k3")
    vec = make_matching_vector(g, {("v1", "v2"): F(1, 3)})
    assert not check_half_integral(vec).is_half_integral


def test_half_integral_rejects_even_cycle():
    g = make_game(
        "general-matching",
        [],
        ["a", "b", "c", "d"],
        [("a", "b", F(1)), ("b", "c", F(1)), ("c", "d", F(1)), ("a", "d", F(1))],
    )
    vec = make_matching_vector(g, {k: H for k in g.edge_keys})
    assert not check_half_integral(vec).is_half_integral


def test_birkhoff_four_cycle():
    g = make_game(
        "assignment",
        ["u1", "u2"],
        ["v1", "v2"],
        [
            ("u1", "v1", F(1)),
            ("u1", "v2", F(1)),
            ("u2", "v1", F(1)),
            ("u2", "v2", F(1)),
        ],
    )
    vec = make_matching_vector(g, {k: H for k in g.edge_keys})
    terms = birkhoff_decompose(g, vec)
    assert sorted(c for c, _ in terms) == [H, H]
    resum = {}
    for c, m in terms:
        for k, x in m.multiplicities:
            resum[k] = resum.get(k, F(0)) + c * x
    assert resum == vec.as_dict()


def test_birkhoff_path5_half_vector():
    g = load_instance("path5")
    vec = make_matching_vector(g, {k: H for k in g.edge_keys})
    terms = birkhoff_decompose(g, vec)
    _, optima = brute_force_optima(g)
    assert sorted(c for c, _ in terms) == [H, H]
    got = sorted(tuple(sorted(m.multiplicities)) for _, m in terms)
    want = sorted(tuple(sorted(m.multiplicities)) for m in optima)
    assert got == want


def test_birkhoff_integral_identity():
    g = load_instance("path5")
    _, optima = brute_force_optima(g)
    terms = birkhoff_decompose(g, optima[0])
    assert terms == [(F(1), optima[0])]


def test_birkhoff_rejects_overloaded():
    g = load_instance("path5")
    vec = MatchingVector(((("u1", "v1"), F(2)),), F(2))
    with pytest.raises(Exception):
        birkhoff_decompose(g, vec)


def test_birkhoff_random_combinations_resum():
    rng = Random(41)
    done = 0
    while done < 30:
        g = random_assignment(rng)
        if not g.edges:
            continue
        _, optima = brute_force_optima(g)
        weights = [F(rng.randint(0, 3), 8) for _ in optima]
        if sum(weights) > 1:
            continue
        mix = {}
        for w, m in zip(weights, optima):
            for k, x in m.multiplicities:
                mix[k] = mix.get(k, F(0)) + w * x
        vec = make_matching_vector(g, mix)
        terms = birkhoff_decompose(g, vec)
        done += 1
        total = sum((c for c, _ in terms), start=F(0))
        assert total <= 1
        assert all(c > 0 for c, _ in terms)
        resum = {}
        for c, m in terms:
            assert all(x == 1 for _, x in m.multiplicities)
            assert loads_ok(g, m)
            for k, x in m.multiplicities:
                resum[k] = resum.get(k, F(0)) + c * x
        assert resum == vec.as_dict()


def test_classify_named_instances():
    ring7 = load_instance("ring7")
    assert classify_vertex(ring7, "v2") == "essential"
    assert classify_vertex(ring7, "v1") == "viable"
    assert classify_edge(ring7, ("v2", "v7")) == "essential"
    assert classify_edge(ring7, ("v4", "v7")) == "subpar"
    assert classify_edge(ring7, ("v1", "v6")) == "viable"
    assert classify_vertex(load_instance("tritail4"), "v4") == "essential"
    assert classify_vertex(load_instance("fork3"), "v1") == "subpar"


def test_classification_table_matches_pointwise():
    g = load_instance("ring7")
    vlabels, elabels, best, optima = classification_table(g)
    assert best == 4 and len(optima) == 3
    for q in g.vertices:
        assert vlabels[q] == classify_vertex(g, q)
    for k in g.edge_keys:
        assert elabels[k] == classify_edge(g, k)


def test_classification_cross_checks():
    # Deletion: a vertex is essential iff removing it lowers the optimum.
    # Forcing: an edge is subpar iff insisting on it lowers the optimum.
    rng = Random(43)
    for _ in range(25):
        g = random_assignment(rng, max_side=3)
        if not g.edges:
            continue
        best, _ = brute_force_optima(g)
        vlabels, elabels, _, _ = classification_table(g)
        for q in g.vertices:
            rest = frozenset(set(g.vertices) - {q})
            without, _ = brute_force_optima(induce_subgame(g, rest))
            assert (vlabels[q] == "essential") == (without < best)
        for (i, j) in g.edge_keys:
            rest = frozenset(set(g.vertices) - {i, j})
            without, _ = brute_force_optima(induce_subgame(g, rest))
            forced = g.weight((i, j)) + without
            assert (elabels[(i, j)] == "subpar") == (forced < best)
