import random
from itertools import combinations, product

import pytest

from chromcert.coloring import (
    greedy_list_colour,
    is_colourable,
    list_chromatic_at_least,
    list_colour,
)
from chromcert.families import FamilySpec, generate
from chromcert.graphs import Graph
from chromcert.oracles import (
    brute_colourable,
    brute_first_colouring,
    brute_list_colour,
)


def proper(g, col):
    return all(col[u] != col[v] for u, v in g.edges)


def k24():
    return Graph.build(6, [(i, j) for i in (0, 1) for j in (2, 3, 4, 5)])


def test_odd_cycle():
    c5 = generate(FamilySpec.cycle(5))
    assert is_colourable(c5, 2) is None
    col = is_colourable(c5, 3)
    assert col is not None and proper(c5, col)


def test_petersen_against_brute_force():
    pet = generate(FamilySpec.kneser(5, 2))
    assert not brute_colourable(pet, 2)
    assert brute_colourable(pet, 3)
    assert is_colourable(pet, 2) is None
    col = is_colourable(pet, 3)
    assert col is not None and proper(pet, col)


def test_grotzsch_against_brute_force():
    # Twice-iterated Mycielskian of an edge: 11 vertices, triangle-free.
    g = generate(FamilySpec.mycielski(4))
    assert g.n == 11
    assert brute_first_colouring(g, 3) is None
    oracle = brute_first_colouring(g, 4)
    assert oracle is not None and proper(g, oracle)
    assert is_colourable(g, 3) is None
    col = is_colourable(g, 4)
    assert col is not None and proper(g, col)


def test_edge_cases():
    empty = Graph.build(0, [])
    assert is_colourable(empty, 0) == {}
    one = Graph.build(1, [])
    assert is_colourable(one, 0) is None
    assert is_colourable(one, 1) == {0: 0}
    with pytest.raises(ValueError):
        is_colourable(one, -1)


def test_is_colourable_matches_enumeration_on_random_graphs():
    rng = random.Random(23)
    for _ in range(150):
        n = rng.randint(1, 7)
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < rng.uniform(0.1, 0.9)]
        g = Graph.build(n, edges)
        for t in range(1, 5):
            assert (is_colourable(g, t) is not None) == brute_colourable(g, t)


def test_list_colour_forced_unsat():
    g = Graph.build(2, [(0, 1)])
    assert list_colour(g, {0: frozenset({1}), 1: frozenset({1})}) is None


def test_list_colour_forced_choice():
    g = Graph.build(2, [(0, 1)])
    assert list_colour(g, {0: frozenset({1}), 1: frozenset({1, 2})}) == {0: 1, 1: 2}


def test_list_colour_k24_spec_lists():
    # The classic non-2-choosability lists for K_{2,4}.
    lists = {
        0: frozenset({1, 2}),
        1: frozenset({3, 4}),
        2: frozenset({1, 3}),
        3: frozenset({1, 4}),
        4: frozenset({2, 3}),
        5: frozenset({2, 4}),
    }
    g = k24()
    assert brute_list_colour(g, lists) is None  # 2^6 product enumeration
    assert list_colour(g, lists) is None


def test_list_colour_rejects_missing_or_empty_lists():
    g = Graph.build(2, [(0, 1)])
    with pytest.raises(ValueError):
        list_colour(g, {0: frozenset({1})})
    with pytest.raises(ValueError):
        list_colour(g, {0: frozenset({1}), 1: frozenset()})


def test_list_colour_matches_product_enumeration():
    rng = random.Random(37)
    for _ in range(120):
        n = rng.randint(1, 7)
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.5]
        g = Graph.build(n, edges)
        lists = {
            v: frozenset(rng.sample(range(5), rng.randint(1, 3))) for v in range(n)
        }
        mine = list_colour(g, lists)
        oracle = brute_list_colour(g, lists)
        assert (mine is None) == (oracle is None)
        if mine is not None:
            assert proper(g, mine) and all(mine[v] in lists[v] for v in g.vertices)
        fast = greedy_list_colour(g, lists)
        if fast is not None:
            assert proper(g, fast)


def test_choosability_t1_and_t2():
    edge = Graph.build(2, [(0, 1)])
    ok, witness = list_chromatic_at_least(edge, 2)
    assert ok and witness == {0: frozenset({0}), 1: frozenset({0})}
    ok, witness = list_chromatic_at_least(edge, 1)
    assert ok and all(not cs for cs in witness.values())
    assert list_chromatic_at_least(Graph.build(0, []), 1) == (False, None)
    assert list_chromatic_at_least(Graph.build(3, []), 2) == (False, None)


def test_choosability_c4_is_two():
    c4 = generate(FamilySpec.cycle(4))
    assert list_chromatic_at_least(c4, 2)[0]
    assert not list_chromatic_at_least(c4, 3)[0]


def test_choosability_c4_full_enumeration_cross_check():
    # Independent route: every assignment of 2-element lists over the
    # sufficient universe {0..7} admits a proper colouring.
    c4 = generate(FamilySpec.cycle(4))
    pairs = list(combinations(range(8), 2))
    for ls in product(pairs, repeat=4):
        lists = {v: frozenset(ls[v]) for v in range(4)}
        if greedy_list_colour(c4, lists) is not None:
            continue
        assert brute_list_colour(c4, lists) is not None


def test_choosability_k4_is_four():
    k4 = generate(FamilySpec.complete(4))
    ok, witness = list_chromatic_at_least(k4, 4)
    assert ok
    assert all(len(cs) == 3 for cs in witness.values())
    assert brute_list_colour(k4, witness) is None
    assert not list_chromatic_at_least(k4, 5)[0]


def test_choosability_k24_witness_found_and_refuted():
    ok, witness = list_chromatic_at_least(k24(), 3)
    assert ok
    assert all(len(cs) == 2 for cs in witness.values())
    assert brute_list_colour(k24(), witness) is None


def test_choosability_cap():
    big = generate(FamilySpec.cycle(9))
    with pytest.raises(ValueError):
        list_chromatic_at_least(big, 3)
    # the cap only applies from t = 3 up
    assert list_chromatic_at_least(big, 2)[0]


def test_choosability_canonical_search_matches_full_enumeration_tiny():
    # K_3 and P_3 at t = 3, where unrenamed enumeration is affordable.
    for g, expected in ((generate(FamilySpec.complete(3)), True),
                        (Graph.build(3, [(0, 1), (1, 2)]), False)):
        got, witness = list_chromatic_at_least(g, 3)
        assert got == expected
        pairs = list(combinations(range(6), 2))
        found = False
        for ls in product(pairs, repeat=3):
            lists = {v: frozenset(ls[v]) for v in range(3)}
            if brute_list_colour(g, lists) is None:
                found = True
                break
        assert found == expected
        if got:
            assert brute_list_colour(g, witness) is None
