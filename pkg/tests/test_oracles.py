import random
from itertools import combinations

import pytest

from _naive import naive_boundary_classes, naive_connected
from s3real.atlas import get_entry, k133, k4_star, parallel_k2
from s3real.graph import MultiGraph, boundary_of, from_edge_list, is_strongly_connected
from s3real.oracles import (
    BoundaryFunction,
    CapExceeded,
    achievable_boundaries,
    achievable_boundaries_parallel,
    boundary_from_class,
    brute_force_realization,
    degree_sequence_of,
    find_beta_orientation,
    is_s3_connected,
    is_z3_connected,
    merge_reports,
    modulo3_orientation,
    prefix_ranges,
    validate_witness,
)

# (graph, edges, classes reached by any orientation, by strong ones, total classes)
FROZEN = {
    "K4": (lambda: MultiGraph.complete(4), 6, 26, 6, 27),
    "K5": (lambda: MultiGraph.complete(5), 10, 81, 51, 81),
    "K6": (lambda: MultiGraph.complete(6), 15, 243, 240, 243),
    "W4": (lambda: get_entry("W4").graph, 8, 81, 14, 81),
    "3K2": (lambda: parallel_k2(3), 3, 3, 2, 3),
    "4K2": (lambda: parallel_k2(4), 4, 3, 3, 3),
    "K133": (k133, 7, 9, 9, 9),
    "K4*": (k4_star, 10, 27, 27, 27),
    "C5": (lambda: MultiGraph.cycle([1, 2, 3, 4, 5]), 5, 31, 1, 81),
}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_class_counts(name):
    make, m, n_any, n_strong, total = FROZEN[name]
    g = make()
    rep = achievable_boundaries(g)
    assert g.edge_count == m and rep.classes == total
    assert int(rep.achievable.sum()) == n_any
    assert int(rep.achievable_strong.sum()) == n_strong
    assert int(rep.counts.sum()) == 2 ** m


def test_named_verdicts():
    assert is_s3_connected(MultiGraph.complete(7))
    assert is_s3_connected(k133()) and is_s3_connected(k4_star())
    assert is_s3_connected(parallel_k2(4)) and not is_s3_connected(parallel_k2(3))
    assert not is_s3_connected(MultiGraph.complete(5))
    assert is_z3_connected(MultiGraph.complete(5)) and is_z3_connected(get_entry("W4").graph)
    assert not is_z3_connected(MultiGraph.complete(4))
    assert not is_z3_connected(MultiGraph.cycle([1, 2, 3, 4, 5]))


def test_single_vertex():
    k1 = from_edge_list([], [1])
    assert is_s3_connected(k1) and is_z3_connected(k1)
    rep = achievable_boundaries(k1)
    assert rep.classes == 1 and rep.all_achievable(strong=True)


def test_cap():
    with pytest.raises(CapExceeded):
        is_s3_connected(MultiGraph.complete(8))
    with pytest.raises(CapExceeded):
        achievable_boundaries(MultiGraph.complete(5), edge_cap=9)
    assert is_z3_connected(MultiGraph.complete(5), edge_cap=10)


def _random_multigraph(rng, n, m):
    pairs = list(combinations(range(1, n + 1), 2))
    return from_edge_list([rng.choice(pairs) for _ in range(m)], range(1, n + 1))


def test_cross_check_against_naive():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 5)
        g = _random_multigraph(rng, n, rng.randint(1, 10))
        vs = list(g.vertices)
        rep = achievable_boundaries(g)
        for strong, flags in ((False, rep.achievable), (True, rep.achievable_strong)):
            got = {tuple(boundary_from_class(vs, int(i)).residues[v] for v in vs)
                   for i in range(rep.classes) if flags[i]}
            assert got == naive_boundary_classes(g.edges(), vs, strong)
        assert is_s3_connected(g) == naive_connected(g.edges(), vs, True)
        assert is_z3_connected(g) == naive_connected(g.edges(), vs, False)


def test_witness_agrees_with_scan():
    rng = random.Random(5)
    for _ in range(30):
        g = _random_multigraph(rng, rng.randint(2, 5), rng.randint(2, 9))
        vs = list(g.vertices)
        rep = achievable_boundaries(g)
        for idx in range(rep.classes):
            beta = boundary_from_class(vs, idx)
            for strong in (False, True):
                bits = find_beta_orientation(g, beta, strong)
                assert (bits is None) == (rep.witness(beta, strong) is None)
                if bits is not None:
                    assert bits == rep.witness(beta, strong)
                    assert validate_witness(g, bits, beta, strong)
                assert find_beta_orientation(g, beta, strong, prune=False) == bits


def test_modulo3_orientation():
    assert modulo3_orientation(parallel_k2(3)) is None
    assert modulo3_orientation(MultiGraph.complete(5)) is not None
    # every K6 vertex has odd degree, and the constant classes have no strong witness
    assert modulo3_orientation(MultiGraph.complete(6)) is None
    g = MultiGraph.complete(7)
    bits = modulo3_orientation(g)
    assert bits is not None and is_strongly_connected(g, bits)
    assert all(r == 0 for r in boundary_of(g, bits).values())


def test_boundary_function():
    with pytest.raises(ValueError):
        BoundaryFunction({1: 1, 2: 1})
    b = BoundaryFunction({1: 4, 2: 2})
    assert b.residues == {1: 1, 2: 2}
    assert boundary_from_class([1, 2], b.class_index([1, 2])) == b
    with pytest.raises(ValueError):
        b.check_domain(MultiGraph.complete(3))


def test_merge_and_parallel_scan():
    g = MultiGraph.complete(5)
    whole = achievable_boundaries(g)
    parts = [achievable_boundaries(g, code_range=r) for r in prefix_ranges(g.edge_count, 3)]
    merged = parts[0]
    for p in parts[1:]:
        merged = merge_reports(merged, p)
    assert (merged.witness_any == whole.witness_any).all()
    assert (merged.witness_strong == whole.witness_strong).all()
    assert (merged.counts == whole.counts).all()
    par = achievable_boundaries_parallel(g, workers=1)
    assert (par.witness_strong == whole.witness_strong).all()


def test_brute_force_realization():
    g = brute_force_realization((3, 3, 3, 3))
    assert g == MultiGraph.complete(4, start=1)
    assert brute_force_realization((3, 3, 1, 1)) is None
    multi = brute_force_realization((3, 3), simple_only=False)
    assert multi is not None and multi.multiplicity(1, 2) == 3
    assert degree_sequence_of(brute_force_realization((6, 6, 6, 5, 5, 5, 5))).degrees == (6, 6, 6, 5, 5, 5, 5)
    with pytest.raises(CapExceeded):
        brute_force_realization((1,) * 10)


def test_kernel_families_within_cap():
    for m in range(4, 11):
        assert is_s3_connected(parallel_k2(m))
    # the two-vertex quotient behind the attach rule
    for m in range(2, 6):
        assert is_z3_connected(parallel_k2(m))
    assert not is_z3_connected(parallel_k2(1))
