"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The exhaustive 7-vertex sweep is the heavy one (a few minutes on two
cores); everything else finishes in seconds.
"""

import random
from contextlib import contextmanager

import pytest

from fourleaf import (
    InducedStarFound,
    LowSigmaWitness,
    Move,
    Refuted,
    Solved,
    apply_exchange,
    decompose,
    exhaustive_sweep,
    find_induced_star,
    find_move,
    graph_from_mask,
    hypotheses_hold,
    is_connected,
    min_leaf_spanning_tree,
    potential,
    random_sweep,
    sharpness_graph,
    sigma_k,
    solve,
    verify_certificate,
)

from .helpers import brute_sigma, random_connected_graph
from .test_solver import FIXTURES, STAR_FIXTURES, make_host

SEED = 20260810


@contextmanager
def criterion(num, text):
    try:
        yield
    except BaseException:
        print(f"FAIL criterion {num}: {text}")
        raise
    print(f"PASS criterion {num}: {text}")


def test_criterion_2_sharpness_reproduction():
    with criterion(2, "tight family: sigma_5 = 5m = n-2, min leaves 5, exact refutation"):
        for m in (1, 2):
            g = sharpness_graph(m)
            assert is_connected(g)[0]
            assert find_induced_star(g, 5) is None
            rep = sigma_k(g, 5)
            assert rep.value == 5 * m == g.n - 2
            oracle = min_leaf_spanning_tree(g, stop_at=None)
            assert oracle.exact and oracle.min_leaves == 5
            res = solve(g)
            assert isinstance(res, Refuted)
            assert isinstance(res.certificate, LowSigmaWitness)
            assert res.certificate.degree_sum == 5 * m
        for m in range(3, 11):
            res = solve(sharpness_graph(m))
            assert isinstance(res, Refuted)
            assert isinstance(res.certificate, LowSigmaWitness)
            assert res.certificate.degree_sum == 5 * m


def test_criterion_3_dichotomy_fuzz():
    with criterion(3, "1000 random 40-vertex instances: all solved, verified, <=2 branch vertices"):
        summary = random_sweep(40, 1000, seed=SEED, workers=2)
        assert summary.graphs_scanned == 1000
        assert summary.hypotheses_held == 1000
        assert summary.solver_trees == 1000
        assert summary.solver_refutations == 0
        assert summary.violations == []


def test_criterion_4_oracle_equivalence_small_and_random12():
    with criterion(4, "oracle equivalence at n<=6 exhaustively and on 100 random 12-vertex instances"):
        for n in (5, 6):
            summary = exhaustive_sweep(n, workers=2, oracle_check=True)
            assert summary.violations == []
            assert summary.hypotheses_held == summary.solver_trees
        summary = random_sweep(12, 100, seed=SEED, workers=2, oracle_check=True)
        assert summary.oracle_checked == 100
        assert summary.violations == []
        assert summary.solver_trees == 100
        # explicit lower-bound audit on a sample, exact oracle reports only
        rng = random.Random(SEED)
        audited = 0
        for _ in range(40):
            g = random_connected_graph(rng, rng.randrange(4, 9), 0.5)
            res = solve(g)
            rep = min_leaf_spanning_tree(g)
            if isinstance(res, Solved) and rep.exact:
                assert res.tree.leaf_count >= rep.min_leaves
                audited += 1
        assert audited > 20


def test_criterion_5_potential_descent():
    with criterion(5, "every accepted move strictly lowers the potential within 64n^3 moves"):
        rng = random.Random(SEED)
        cases = [sharpness_graph(m) for m in range(1, 11)]
        cases += [random_connected_graph(rng, rng.randrange(5, 13), rng.choice([0.3, 0.5, 0.7]))
                  for _ in range(60)]
        for name, skel, chords, *_ in FIXTURES:
            from fourleaf import Graph

            cases.append(Graph(skel["n"], list(skel["edges"]) + list(chords)))
        for g in cases:
            res = solve(g, collect_trace=True)
            assert res.moves <= 64 * g.n ** 3
            for rec in res.trace:
                assert rec.phi_after < rec.phi_before
            if isinstance(res, Refuted):
                assert verify_certificate(g, res.certificate)


def test_criterion_6_per_entry_fixtures():
    with criterion(6, "all 20 catalog entries trigger on their fixtures with the declared outcome"):
        tags = set()
        for name, skel, chords, tag, outcome, removed, added in FIXTURES:
            g, t = make_host(skel["edges"], chords, skel["n"])
            dec = decompose(t)
            res = find_move(g, dec)
            assert isinstance(res, Move) and res.claim_tag == tag, name
            assert res.exchange.declared_outcome is outcome, name
            before = potential(g, t, dec)
            after = potential(g, apply_exchange(t, res.exchange))
            assert after < before, name
            tags.add(tag)
        for name, skel, chords, center, leaves in STAR_FIXTURES:
            g, t = make_host(skel["edges"], chords, skel["n"])
            res = find_move(g, decompose(t))
            assert isinstance(res, InducedStarFound), name
            assert verify_certificate(g, res), name
        assert len(tags) == 20


def test_criterion_7_sigma_and_star_oracles():
    with criterion(7, "sigma_k matches brute force; every emitted witness re-verifies"):
        rng = random.Random(SEED)
        # exhaustive n <= 4, sampled n in 5..8, matching the sweeps' range
        for n in (3, 4):
            for mask in range(1 << (n * (n - 1) // 2)):
                g = graph_from_mask(n, mask)
                assert sigma_k(g, 5).value == brute_sigma(g, 5)[0]
        for _ in range(300):
            n = rng.randrange(5, 9)
            mask = rng.randrange(1 << (n * (n - 1) // 2))
            g = graph_from_mask(n, mask)
            for k in (2, 5):
                assert sigma_k(g, k).value == brute_sigma(g, k)[0]
        # witnesses coming out of the solver and the checker re-verify
        for _ in range(150):
            n = rng.randrange(5, 10)
            g = random_connected_graph(rng, n, rng.choice([0.2, 0.35, 0.5]))
            cert = hypotheses_hold(g)
            if cert is not None:
                assert verify_certificate(g, cert)
            res = solve(g)
            if isinstance(res, Refuted):
                assert verify_certificate(g, res.certificate)


@pytest.mark.slow
def test_criterion_1_exhaustive_seven_vertices():
    with criterion(1, "all 2,097,152 labeled 7-vertex graphs: zero violations"):
        summary = exhaustive_sweep(7, workers=2)
        assert summary.graphs_scanned == 2_097_152
        assert summary.hypotheses_held == summary.solver_trees
        assert summary.violations == []
        assert summary.oracle_checked == summary.connected
