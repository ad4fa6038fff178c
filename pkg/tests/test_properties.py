from hypothesis import assume, given
from hypothesis import strategies as st
from oracles import is_rdf, is_srdf, is_trdf

from kneser_roman.bounds import BoundsRecord, Provenance, Quantity, sandwich
from kneser_roman.graphs import from_dimacs, from_edges, from_graph6, relabel, to_dimacs, to_graph6
from kneser_roman.labelings import Labeling, dumps_labeling, ledgers, loads_labeling, verify
from kneser_roman.solvers import emit_ilp, encode, solve_bnb, solve_brute


@st.composite
def graphs(draw, min_order=0, max_order=9):
    n = draw(st.integers(min_order, max_order))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return from_edges(n, edges)


@st.composite
def graph_and_labeling(draw, variant, max_order=9):
    g = draw(graphs(max_order=max_order))
    codomain = (-1, 1, 2) if variant == "SRDF" else (0, 1, 2)
    vals = draw(st.lists(st.sampled_from(codomain), min_size=g.order, max_size=g.order))
    return g, Labeling(variant, tuple(vals))


def _adj(g):
    return {v: {u for u in range(g.order) if g.rows[v] >> u & 1} for v in range(g.order)}


@given(graph_and_labeling("SRDF"))
def test_closed_sum_iff_ledger_score(gf):
    g, f = gf
    for lg in ledgers(g, f):
        closed = f.values[lg.vertex] + sum(f.values[u] for u in _adj(g)[lg.vertex])
        assert (closed >= 1) == (lg.score >= 1)
        assert closed == lg.score


@given(graph_and_labeling("SRDF"))
def test_ledger_counts_partition_degree(gf):
    g, f = gf
    for lg in ledgers(g, f):
        assert lg.alpha + lg.beta + lg.gamma == g.degree(lg.vertex)


@given(st.sampled_from(["RDF", "TRDF", "SRDF"]).flatmap(lambda v: graph_and_labeling(v)))
def test_verifiers_match_definitions(gf):
    g, f = gf
    oracle = {"RDF": is_rdf, "TRDF": is_trdf, "SRDF": is_srdf}[f.variant.value]
    rep = verify(g, f)
    assert rep.feasible == oracle(_adj(g), f.values)
    assert rep.feasible == (not rep.violations)
    assert rep.weight == sum(f.values)


@st.composite
def consistent_triples(draw):
    """Intervals around a hidden (gamma, rdn, trdn) that satisfies the chain."""
    gm = draw(st.integers(1, 12))
    r = draw(st.integers(gm, 2 * gm))
    t = draw(st.integers(r, r + 6))

    def interval(q, v):
        lo = draw(st.one_of(st.none(), st.integers(0, v)))
        hi = draw(st.one_of(st.none(), st.integers(v, v + 8)))
        return BoundsRecord(q, "G", lo, Provenance.CERT if lo is not None else None,
                            hi, Provenance.CERT if hi is not None else None)

    return interval(Quantity.GAMMA, gm), interval(Quantity.RDN, r), interval(Quantity.TRDN, t), (gm, r, t)


def _width(rec):
    lo = rec.lower if rec.lower is not None else -10**9
    hi = rec.upper if rec.upper is not None else 10**9
    return lo, hi


@given(consistent_triples())
def test_sandwich_idempotent_and_sound(x):
    gm, rd, tr, truth = x
    once = sandwich(gm, rd, tr)
    assert sandwich(*once) == once
    for rec, v in zip(once, truth):
        lo, hi = _width(rec)
        assert lo <= v <= hi


@given(consistent_triples(), st.integers(0, 3))
def test_sandwich_monotone(x, shrink):
    gm, rd, tr, truth = x
    loose = sandwich(gm, rd, tr)
    # tighten the RDN input towards the hidden value
    lo, hi = _width(rd)
    tight_rd = BoundsRecord(Quantity.RDN, "G",
                            max(lo, truth[1] - shrink), Provenance.CERT,
                            min(hi, truth[1] + shrink), Provenance.CERT)
    tight = sandwich(gm, tight_rd, tr)
    for a, b in zip(tight, loose):
        alo, ahi = _width(a)
        blo, bhi = _width(b)
        assert blo <= alo and ahi <= bhi


@given(graphs(min_order=1, max_order=7), st.sampled_from(["RDN", "TRDN", "SRDN"]))
def test_certificates_always_verify(g, inv):
    assume(inv != "TRDN" or all(g.rows))
    for res in (solve_brute(g, inv), solve_bnb(g, inv, 30)):
        rep = verify(g, res.certificate)
        assert rep.feasible and rep.weight == res.upper


@given(graphs(min_order=1, max_order=7), st.sampled_from(["RDN", "SRDN"]), st.randoms(use_true_random=False))
def test_optimum_is_isomorphism_invariant(g, inv, rnd):
    perm = list(range(g.order))
    rnd.shuffle(perm)
    assert solve_bnb(g, inv, 30).upper == solve_bnb(relabel(g, perm), inv, 30).upper


@given(graphs(max_order=70))
def test_io_roundtrips(g):
    assert from_graph6(to_graph6(g)).rows == g.rows
    assert from_dimacs(to_dimacs(g)).rows == g.rows


@given(st.sampled_from(["RDF", "SRDF"]).flatmap(lambda v: graph_and_labeling(v)))
def test_labeling_file_roundtrip(gf):
    g, f = gf
    assume(g.order > 0)
    assert loads_labeling(g, dumps_labeling(g, f)) == f


@given(st.sampled_from(["RDF", "SRDF"]).flatmap(lambda v: graph_and_labeling(v, max_order=7)))
def test_model_feasibility_matches_verifier(gf):
    g, f = gf
    model = emit_ilp(g, "RDN" if f.variant.value == "RDF" else "SRDN")
    a = encode(model, g, f)
    assert model.feasible(a) == verify(g, f).feasible
    assert model.evaluate(a) == sum(f.values)
