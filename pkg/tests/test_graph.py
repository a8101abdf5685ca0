from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from _strategies import multigraphs, simple_graphs
from s3real.atlas import get_entry, k133, k4_star
from s3real.graph import (
    GraphError,
    MultiGraph,
    bc_closure,
    complement,
    contract,
    contract_vertices,
    degree_sequence,
    expand_k6,
    find_embedding,
    from_edge_list,
    hamiltonian_cycle,
    has_path_avoiding,
    inverse_layoff,
    inverse_lift,
    is_connected,
    is_ham_cycle,
    is_isomorphic,
    is_simple,
    is_strongly_connected,
    join,
    k6_clique_of,
    lift,
    orientation_arcs,
    parse_edge_list_text,
    to_dot,
    to_edge_list_text,
)
from s3real.sequences import DegreeSequence, parse
from s3real.z3build import havel_hakimi


def test_construction():
    g = from_edge_list([(1, 2)] * 4)
    assert g.multiplicity(1, 2) == 4 and g.edge_count == 4
    assert degree_sequence(g).degrees == (4, 4)
    k1 = from_edge_list([], [1])
    assert k1.order == 1 and k1.edge_count == 0
    with pytest.raises(GraphError):
        from_edge_list([(1, 1)])


def test_degree_sequences_of_named_graphs():
    assert degree_sequence(MultiGraph.complete(7)) == parse("6^7")
    assert degree_sequence(k4_star()) == parse("5^4")
    assert degree_sequence(k133()).degrees == (6, 4, 4)


def test_is_simple():
    assert is_simple(MultiGraph.complete(7))
    assert not is_simple(from_edge_list([(1, 2)] * 4))
    assert not is_simple(k133())


def test_lift():
    g = lift(MultiGraph.complete(5), 1, 2, 3)
    assert g.order == 4 and g.multiplicity(2, 3) == 2 and g.edge_count == 7
    entry = get_entry("(7^4,4^4)")
    first = lift(entry.graph, *entry.script.steps[0])
    assert first == entry.script.replay(entry.graph)[1]
    with pytest.raises(GraphError):
        lift(MultiGraph.complete(4), 1, 2, 3)  # degree 3
    with pytest.raises(GraphError):
        lift(MultiGraph.complete(6), 1, 2, 2)


def test_contract():
    k7 = MultiGraph.complete(7)
    k6_edges = [(a, b) for a, b in k7.edges() if b <= 6]
    q, mapping = contract(k7, k6_edges)
    assert q.order == 2 and q.multiplicity(1, 7) == 6
    assert set(mapping.values()) == {1, 7}
    tri = from_edge_list([(1, 2), (2, 3), (1, 3), (3, 4), (1, 5)])
    q, _ = contract(tri, [(1, 2), (2, 3), (1, 3)])
    assert q.order == 3 and q.has_edge(1, 4) and q.has_edge(1, 5)
    q, mapping = contract(k7, [])
    assert q == k7 and all(mapping[v] == v for v in k7.vertices)
    with pytest.raises(GraphError):
        contract(k7, [(1, 99)])


def test_join_and_complement():
    k1a, k1b = from_edge_list([], [1]), from_edge_list([], [2])
    assert join(k1a, k1b) == MultiGraph.complete(2)
    w4 = join(from_edge_list([], [5]), MultiGraph.cycle([1, 2, 3, 4]))
    assert is_isomorphic(w4, get_entry("W4").graph)
    assert complement(MultiGraph.complete(5)).edge_count == 0
    c5 = MultiGraph.cycle([1, 2, 3, 4, 5])
    assert is_isomorphic(complement(c5), c5)
    with pytest.raises(GraphError):
        join(k1a, k1a)


def test_inverse_layoff():
    g = havel_hakimi((5,) * 6)
    h = inverse_layoff(g, list(g.vertices))
    assert degree_sequence(h) == parse("6^7")
    x = g.fresh_id()
    q, _ = contract(h, list(g.edges()))
    assert q.order == 2 and q.multiplicity(min(g.vertices), x) == 6
    with pytest.raises(GraphError):
        inverse_layoff(g, [1, 2, 3])


def test_special_insertion_six_regular_eight():
    base = get_entry("(6^3,5^4)").graph
    u1, u2 = [v for v in base.vertices if base.degree(v) == 6][:2]
    vs = [v for v in base.vertices if base.degree(v) == 5]
    assert base.has_edge(u1, u2)
    g = inverse_lift(base, vs, (u1, u2))
    assert degree_sequence(g) == parse("6^8")
    assert lift(g, g.max_id(), u1, u2) == base
    with pytest.raises(GraphError):
        inverse_lift(base, vs, (vs[0], u1))


def test_expand_k6():
    g = havel_hakimi(parse("9,7^2,6^4,5^5"))
    u = 1
    d = g.degree(u)
    h = expand_k6(g, u, [4, d - 4])
    clique = k6_clique_of(u, g)
    assert sorted(h.degree(v) for v in clique) == sorted([9, 5 + d - 4, 5, 5, 5, 5])
    q, _ = contract_vertices(h, clique)
    assert q == g
    assert has_path_avoiding(h, clique, [(a, b) for a in clique for b in clique if a < b])
    with pytest.raises(GraphError):
        expand_k6(g, u, [4, d - 5])


def test_strong_connectivity():
    tri = from_edge_list([(1, 2), (2, 3), (1, 3)])
    # edges (1,2),(1,3),(2,3): 1->2, 2->3, 3->1
    assert is_strongly_connected(tri, [0, 1, 0])
    assert orientation_arcs(tri, [0, 1, 0]) == [(1, 2), (3, 1), (2, 3)]
    assert not is_strongly_connected(tri, [0, 1, 1])  # 1->2, 3->1, 3->2: 3 is a source
    two = from_edge_list([(1, 2), (3, 4)])
    assert not any(is_strongly_connected(two, [a, b]) for a in (0, 1) for b in (0, 1))


def test_closure_examples():
    c5 = MultiGraph.cycle([1, 2, 3, 4, 5])
    cl, added = bc_closure(c5)
    assert cl == c5 and added == []
    k4e = MultiGraph.complete(4).with_edges([], remove=[(1, 2)])
    cl, added = bc_closure(k4e)
    assert cl == MultiGraph.complete(4) and added == [(1, 2)]


def test_closure_of_minus_two_complement_is_complete():
    for n in range(10, 16):
        g = havel_hakimi(DegreeSequence((4,) * (n - 4) + (3,) * 4))
        cl, _ = bc_closure(complement(g))
        assert cl == MultiGraph.complete(n)


def test_hamiltonian_cycle():
    c5 = MultiGraph.cycle([1, 2, 3, 4, 5])
    cyc = hamiltonian_cycle(c5)
    assert is_ham_cycle(c5, cyc)
    star = from_edge_list([(1, 2), (1, 3), (1, 4)])
    assert hamiltonian_cycle(star) is None
    base = get_entry("(4^3,3^4)").graph
    cyc = hamiltonian_cycle(complement(base))
    assert cyc is not None and is_ham_cycle(complement(base), cyc)


def test_embedding():
    c5 = MultiGraph.cycle([1, 2, 3, 4, 5])
    assert find_embedding(c5, MultiGraph.complete(5), spanning=True) is not None
    assert find_embedding(c5, MultiGraph.complete(5)) is None
    assert find_embedding(MultiGraph.complete(4), MultiGraph.cycle([1, 2, 3, 4]), spanning=True) is None
    assert find_embedding(from_edge_list([(1, 2)] * 3), from_edge_list([(7, 9)] * 4), spanning=True) is not None
    assert find_embedding(from_edge_list([(1, 2)] * 5), from_edge_list([(7, 9)] * 4)) is None
    assert is_isomorphic(k133(), from_edge_list([(5, 6)] * 3 + [(6, 7)] + [(7, 5)] * 3))


def test_text_formats():
    g = from_edge_list([(1, 2), (1, 2), (2, 3)], [9])
    text = to_edge_list_text(g)
    assert parse_edge_list_text(text) == g
    assert parse_edge_list_text("# comment\n1 2  # trailing\n\n3\n") == from_edge_list([(1, 2)], [3])
    with pytest.raises(GraphError):
        parse_edge_list_text("1 2 3\n")
    dot = to_dot(g, dashed=[(2, 3)])
    assert "2 -- 3 [style=dashed];" in dot and dot.count("1 -- 2;") == 2


def test_connected():
    assert is_connected(MultiGraph.complete(3))
    assert not is_connected(from_edge_list([(1, 2), (3, 4)]))


# -- properties ---------------------------------------------------------------------

@settings(max_examples=200, derandomize=True, deadline=None)
@given(simple_graphs(min_n=3, max_n=9), st.data())
def test_inverse_lift_then_lift_roundtrip(g, data):
    edges = g.distinct_edges()
    if not edges:
        return
    a, b = data.draw(st.sampled_from(edges))
    others = [v for v in g.vertices if v not in (a, b)]
    if len(others) < 2:
        return
    targets = data.draw(st.lists(st.sampled_from(others), min_size=2, max_size=len(others), unique=True))
    h = inverse_lift(g, targets, (a, b))
    x = g.fresh_id()
    assert h.degree(x) == len(targets) + 2
    assert lift(h, x, a, b) == g


@settings(max_examples=200, derandomize=True, deadline=None)
@given(multigraphs(), st.data())
def test_contraction_degree_bookkeeping(g, data):
    edges = g.distinct_edges()
    chosen = data.draw(st.lists(st.sampled_from(edges), unique=True)) if edges else []
    q, mapping = contract(g, chosen)
    loops = sum(g.multiplicity(a, b) for a, b in g.distinct_edges() if mapping[a] == mapping[b])
    assert q.edge_count == g.edge_count - loops
    for c in q.vertices:
        members = [v for v in g.vertices if mapping[v] == c]
        assert c == min(members)
        internal = sum(g.multiplicity(a, b) for a, b in g.distinct_edges() if mapping[a] == mapping[b] == c)
        assert q.degree(c) == sum(g.degree(v) for v in members) - 2 * internal


@settings(max_examples=200, derandomize=True, deadline=None)
@given(simple_graphs(min_n=3, max_n=9))
def test_closure_witness(g):
    cl, added = bc_closure(g)
    n = g.order
    deg = Counter(g.degrees())
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    for a, b in added:
        assert b not in adj[a] and deg[a] + deg[b] >= n
        adj[a].add(b)
        adj[b].add(a)
        deg[a] += 1
        deg[b] += 1
    for a in cl.vertices:
        for b in cl.vertices:
            if a < b and not cl.has_edge(a, b):
                assert cl.degree(a) + cl.degree(b) < n
    if cl == MultiGraph.complete(n, start=1):
        cyc = hamiltonian_cycle(g)
        assert cyc is not None and is_ham_cycle(g, cyc)
