import pytest
from oracles import adj_from_edges, complete_adj, corpus, cycle_adj, naive_optimum, path_adj

from kneser_roman.graphs import complete_graph, cycle_graph, edgeless_graph, from_edges, kneser_graph, path_graph
from kneser_roman.labelings import Labeling, verify
from kneser_roman.solvers import Invariant, SolverError, check_certificate, solve_bnb, solve_brute
from kneser_roman.solvers.brute import BRUTE_CAP

INVS = ("RDN", "TRDN", "SRDN")
CORPUS = corpus()


def _adj(g):
    return {v: {u for u in range(g.order) if g.rows[v] >> u & 1} for v in range(g.order)}


@pytest.mark.parametrize("idx", range(0, len(CORPUS), 5))
def test_brute_matches_naive_oracle(idx):
    n, edges = CORPUS[idx]
    g = from_edges(n, edges)
    for inv in INVS:
        want = naive_optimum(adj_from_edges(n, edges), inv)
        res = solve_brute(g, inv)
        assert (res.upper, res.certificate.values) == want


@pytest.mark.parametrize("threads", [1, 4])
def test_bnb_matches_brute_on_corpus(threads):
    bad = []
    for n, edges in CORPUS:
        g = from_edges(n, edges)
        for inv in INVS:
            b = solve_brute(g, inv).upper
            r = solve_bnb(g, inv, 60, threads=threads)
            if not r.optimal or r.upper != b:
                bad.append((n, edges, inv, b, r.lower, r.upper))
    assert not bad


@pytest.mark.parametrize("n", range(3, 11))
def test_paths_and_cycles(n):
    # closed forms quoted for signed Roman domination of paths and cycles
    assert solve_brute(path_graph(n), "SRDN").upper == (2 * n) // 3
    assert solve_brute(cycle_graph(n), "SRDN").upper == -(-2 * n // 3)


def test_complete_graphs():
    assert solve_brute(complete_graph(3), "SRDN").upper == 2
    for n in (4, 5, 6):
        assert solve_brute(complete_graph(n), "SRDN").upper == 1
    assert naive_optimum(complete_adj(3), "SRDN")[0] == 2


def test_oracle_agrees_on_small_closed_forms():
    assert naive_optimum(path_adj(6), "SRDN")[0] == 4
    assert naive_optimum(cycle_adj(7), "SRDN")[0] == 5


def test_remark_one_k52():
    g = kneser_graph((5, 2))
    assert solve_brute(g, "RDN").upper == 6
    r = solve_bnb(g, "RDN", 30)
    assert r.optimal and r.upper == 6


@pytest.mark.parametrize("n,want", [(5, 5), (6, 5), (7, 5)])
def test_small_kneser_srdn(n, want):
    r = solve_bnb(kneser_graph((n, 2)), "SRDN", 60)
    assert r.optimal and r.upper == want


def test_symmetry_does_not_change_optimum():
    g = kneser_graph((7, 2))
    for inv in INVS:
        a = solve_bnb(g, inv, 60, symmetry=True)
        b = solve_bnb(g, inv, 60, symmetry=False)
        assert a.optimal and b.optimal and a.upper == b.upper


def test_lagrangian_off_same_optimum():
    g = kneser_graph((6, 2))
    for inv in INVS:
        assert solve_bnb(g, inv, 60, lag_iters=0).upper == solve_bnb(g, inv, 60).upper


def test_seed_is_checked():
    g = path_graph(4)
    with pytest.raises(AssertionError):
        solve_bnb(g, "RDN", 5, seed=Labeling("RDF", (0, 0, 0, 0)))
    r = solve_bnb(g, "RDN", 5, seed=Labeling("RDF", (1, 1, 1, 1)))
    assert r.upper == 3


def test_certificates_verify():
    g = kneser_graph((6, 2))
    for inv in INVS:
        r = solve_bnb(g, inv, 60)
        rep = verify(g, r.certificate)
        assert rep.feasible and rep.weight == r.upper
        assert check_certificate(g, inv, r.upper, r.certificate)


def test_budget_exhaustion_reports_bracket():
    g = kneser_graph((8, 3))
    r = solve_bnb(g, "SRDN", 0.05)
    assert r.exhausted_budget and not r.optimal
    assert 2 <= r.lower < r.upper
    assert r.optimum == "unknown(budget exhausted)"
    rep = verify(g, r.certificate)
    assert rep.feasible and rep.weight == r.upper


def test_deterministic_single_thread():
    g = kneser_graph((7, 2))
    a, b = solve_bnb(g, "SRDN", 60), solve_bnb(g, "SRDN", 60)
    assert a.certificate == b.certificate and a.nodes == b.nodes


def test_edge_cases():
    g0 = edgeless_graph(0)
    for inv in INVS:
        assert solve_bnb(g0, inv).upper == 0
        assert solve_brute(g0, inv).upper == 0
    iso = edgeless_graph(3)
    assert solve_bnb(iso, "RDN").upper == 3
    assert solve_bnb(iso, "SRDN").upper == 3
    with pytest.raises(SolverError):
        solve_bnb(iso, "TRDN")
    with pytest.raises(SolverError):
        solve_brute(iso, "TRDN")


def test_argument_checks():
    g = path_graph(3)
    with pytest.raises(SolverError):
        solve_bnb(g, "RDN", 0)
    with pytest.raises(SolverError):
        solve_bnb(g, "RDN", threads=0)
    with pytest.raises(SolverError):
        solve_brute(path_graph(BRUTE_CAP + 1), "RDN")
    with pytest.raises(ValueError):
        solve_bnb(g, "XYZ")


def test_check_certificate_variant_mismatch():
    g = kneser_graph((5, 2))
    with pytest.raises(SolverError):
        check_certificate(g, "SRDN", 10, Labeling("RDF", (1,) * 10))
    assert not check_certificate(g, "RDN", 9, Labeling("RDF", (1,) * 10))


@pytest.mark.parametrize("n,k,inv,want", [(9, 2, "SRDN", 3), (11, 2, "SRDN", 3), (10, 3, "RDN", 12), (8, 3, "TRDN", 16)])
def test_symmetric_seed_is_feasible(n, k, inv, want):
    from kneser_roman.solvers.seeding import symmetric_seed

    g = kneser_graph((n, k))
    f = symmetric_seed(g, Invariant.parse(inv))
    rep = verify(g, f)
    assert rep.feasible and rep.weight == want


def test_symmetric_seed_block_partitions():
    from kneser_roman.solvers.seeding import _partitions, _types

    assert list(_partitions(5, 2)) == [(4, 1), (3, 2)]
    assert list(_types((2, 1), 2)) == [(1, 1), (2, 0)]


@pytest.mark.parametrize("inv", INVS)
def test_local_search_keeps_feasibility(inv):
    import numpy as np

    from kneser_roman.solvers._heuristic import search
    from kneser_roman.solvers.bnb import _Problem

    g = kneser_graph((7, 2))
    p = _Problem.build(g, Invariant.parse(inv), False, 0)
    out = search(p.ptr, p.idx, p.n, p.inv, p.low, np.ones(g.order, dtype=np.int64), 200, 1)
    rep = verify(g, Labeling(Invariant.parse(inv).variant, tuple(int(x) for x in out)))
    assert rep.feasible and rep.weight <= g.order
