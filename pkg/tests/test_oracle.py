import random

import pytest

from fourleaf import (
    Graph,
    exhaustive_sweep,
    graph_from_mask,
    min_leaf_spanning_tree,
    random_sweep,
    sharpness_graph,
    solve,
)

from .helpers import (
    brute_min_leaves,
    complete_graph,
    path_graph,
    random_connected_graph,
    star_graph,
)


def test_oracle_path_has_two_leaves():
    rep = min_leaf_spanning_tree(path_graph(6))
    assert rep.min_leaves == 2 and rep.exact
    assert rep.trees_enumerated == 1  # unique spanning tree


def test_oracle_star_needs_five():
    rep = min_leaf_spanning_tree(star_graph(5))
    assert rep.min_leaves == 5 and rep.exact
    assert rep.trees_enumerated == 1


def test_oracle_sharpness_needs_five():
    for m in (1, 2):
        rep = min_leaf_spanning_tree(sharpness_graph(m), stop_at=None)
        assert rep.min_leaves == 5 and rep.exact


def test_oracle_single_vertex():
    rep = min_leaf_spanning_tree(Graph(1))
    assert rep.min_leaves == 0 and rep.trees_enumerated == 1


def test_oracle_rejects_disconnected():
    with pytest.raises(ValueError):
        min_leaf_spanning_tree(Graph(3, [(0, 1)]))


def test_oracle_counts_match_cayley():
    # n^(n-2) labeled trees in K_n; full enumeration with early exit disabled
    rep4 = min_leaf_spanning_tree(complete_graph(4), stop_at=None)
    assert rep4.trees_enumerated == 16 and rep4.min_leaves == 2
    rep5 = min_leaf_spanning_tree(complete_graph(5), stop_at=None)
    assert rep5.trees_enumerated == 125 and rep5.min_leaves == 2


def test_oracle_budget_flags_inexact():
    rep = min_leaf_spanning_tree(complete_graph(6), budget=3, stop_at=None)
    assert rep.trees_enumerated == 3
    assert not rep.exact
    assert rep.min_leaves >= 2  # upper bound from the trees seen


def test_oracle_witness_is_valid_and_minimal():
    rng = random.Random(77)
    for _ in range(60):
        n = rng.randrange(2, 8)
        g = random_connected_graph(rng, n, rng.choice([0.3, 0.5, 0.8]))
        rep = min_leaf_spanning_tree(g)
        assert rep.exact
        assert rep.witness.is_spanning
        assert rep.witness.leaf_count == rep.min_leaves
        assert rep.min_leaves == brute_min_leaves(g)


def test_oracle_lower_bounds_solver():
    rng = random.Random(78)
    for _ in range(60):
        n = rng.randrange(3, 9)
        g = random_connected_graph(rng, n, rng.choice([0.3, 0.5, 0.8]))
        res = solve(g)
        from fourleaf import Solved

        if isinstance(res, Solved):
            rep = min_leaf_spanning_tree(g)
            assert rep.exact
            assert res.tree.leaf_count >= rep.min_leaves


def test_graph_from_mask_bit_order_matches_graph6():
    from fourleaf import encode_graph6, parse_graph6

    for mask in (0, 1, 5, 63, 40):
        g = graph_from_mask(4, mask)
        assert parse_graph6(encode_graph6(g)) == g


def test_exhaustive_sweep_n4_counts_forced():
    s = exhaustive_sweep(4, workers=1)
    assert s.graphs_scanned == 64
    assert s.connected == 38
    assert s.violations == []
    assert s.hypotheses_held == s.solver_trees


def test_exhaustive_sweep_n5_clean():
    s = exhaustive_sweep(5, workers=1)
    assert s.graphs_scanned == 1024
    assert s.violations == []
    assert s.hypotheses_held == s.solver_trees


def test_exhaustive_sweep_n1():
    s = exhaustive_sweep(1, workers=1)
    assert s.graphs_scanned == 1 and s.connected == 1 and s.solver_trees == 1


def test_random_sweep_deterministic():
    a = random_sweep(12, 24, seed=5, workers=1)
    b = random_sweep(12, 24, seed=5, workers=2)
    assert a.violations == [] and b.violations == []
    assert (a.graphs_scanned, a.connected, a.hypotheses_held, a.solver_trees,
            a.solver_refutations, a.oracle_checked) == \
           (b.graphs_scanned, b.connected, b.hypotheses_held, b.solver_trees,
            b.solver_refutations, b.oracle_checked)
    assert a.hypotheses_held == 24  # instances are post-verified


def test_random_sweep_zero_samples():
    s = random_sweep(10, 0, seed=1, workers=1)
    assert s.graphs_scanned == 0 and s.violations == []


def test_sweep_records_are_parseable():
    import json

    s = exhaustive_sweep(4, workers=1)
    lines = s.to_records().strip().splitlines()
    head = json.loads(lines[0])
    assert head["type"] == "summary" and head["graphs_scanned"] == 64


def test_win_style_alpha_bound_small():
    """Connected graphs with independence number <= 4 always admit a <=4-leaf
    spanning tree; check exhaustively at n = 5 via the oracle."""
    from fourleaf import sigma_k

    for mask in range(1 << 10):
        g = graph_from_mask(5, mask)
        from fourleaf import is_connected

        if not is_connected(g)[0]:
            continue
        if sigma_k(g, 5).is_infinite:  # alpha < 5
            assert min_leaf_spanning_tree(g).min_leaves <= 4
