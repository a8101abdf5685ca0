import pytest

from s3real.atlas import (
    AtlasError,
    build_join_family,
    edge_checksum,
    entry_for_sequence,
    get_entry,
    identify_kernel,
    kernel_graph,
    list_entries,
    matches_kernel,
    parallel_k2,
    z3_kernel_names,
)
from s3real.graph import (
    MultiGraph,
    complement,
    degree_sequence,
    is_ham_cycle,
    is_simple,
    lift,
)
from s3real.oracles import is_s3_connected, is_z3_connected
from s3real.sequences import parse

SCRIPTED = ["(7^4,4^4)", "(7^3,6,5,4^3)", "(7^3,5^3,4^2)", "(7^2,6^3,4^3)",
            "(8^3,5^2,4^4)", "(8^3,6,4^5)", "(9^3,5,4^6)", "(10^3,4^8)"]
DECOMPOSED = ["(6^3,5^4)", "(6^4,5^4)", "(7,6^2,5^5)", "(7^2,5^6)", "(6^5,5^4)"]


def test_names_match_degree_sequences():
    for name in list_entries():
        entry = get_entry(name)
        if name.startswith("("):
            assert entry.sequence == parse(name), name
            assert is_simple(entry.graph)
    assert get_entry(" (6^3, 5^4) ").name == "(6^3,5^4)"
    with pytest.raises(AtlasError):
        get_entry("(5^8)")


def test_entry_lookup_by_sequence():
    assert entry_for_sequence(parse("6^3,5^4"), "S3").name == "(6^3,5^4)"
    assert entry_for_sequence(parse("4^3,3^4"), "Z3").name == "(4^3,3^4)"
    assert entry_for_sequence(parse("6^8"), "S3") is None
    assert set(z3_kernel_names()) == {"W4", "(4^5,3^4)", "(4^3,3^4)", "(4^4,3^4)", "(5,4^2,3^5)", "(5^2,3^6)"}


@pytest.mark.parametrize("name", SCRIPTED)
def test_scripts_land_on_their_kernel(name):
    entry = get_entry(name)
    graphs = entry.script.replay(entry.graph)
    assert len(graphs) == len(entry.script.steps) + 1
    assert entry.script.lands_on_kernel(entry.graph)
    assert identify_kernel(graphs[-1]) == entry.script.terminal


@pytest.mark.parametrize("name", DECOMPOSED)
def test_decompositions(name):
    entry = get_entry(name)
    solid, cycle = entry.decomposition
    assert is_ham_cycle(complement(solid), cycle)
    assert is_z3_connected(solid)
    assert entry.graph == solid.with_edges(zip(cycle, cycle[1:] + cycle[:1]))


def test_oracle_confirms_small_entries():
    for name in list_entries():
        entry = get_entry(name)
        if entry.graph.edge_count > 26:
            continue
        check = is_s3_connected if entry.claim == "S3" else is_z3_connected
        assert check(entry.graph), name


def test_kernels():
    assert kernel_graph("5K2") == parallel_k2(5)
    assert kernel_graph("K7") == MultiGraph.complete(7)
    for bad in ("3K2", "K6", "K(1,2,2)", "W4"):
        with pytest.raises(AtlasError):
            kernel_graph(bad)
    assert identify_kernel(MultiGraph.complete(8)) == "K8"
    assert identify_kernel(MultiGraph.complete(6)) is None
    assert matches_kernel(MultiGraph.complete(7), "K7")
    assert matches_kernel(get_entry("W4").graph, "W4")
    assert not matches_kernel(MultiGraph.complete(7), "K8")
    spanning = MultiGraph.from_edge_list([(1, 2)] * 3 + [(2, 3)] * 2 + [(1, 3)] * 4)
    assert not matches_kernel(spanning, "K(1,3,3)")
    assert matches_kernel(spanning, "K(1,3,3)", spanning=True)


def test_checksum_is_stable():
    assert edge_checksum(get_entry("W4").graph) == "329834eaa90f0319"
    moved = get_entry("W4").graph.with_edges([(5, 7)])
    assert edge_checksum(moved) != "329834eaa90f0319"


def test_join_family_small():
    fam = build_join_family(13, 12)
    g = fam.graph
    assert degree_sequence(g) == parse("12^2,12,4^10")
    final = fam.script.replay(g)[-1]
    assert final.order == 3
    assert final.multiplicity(fam.hub, fam.u1) >= 3 and final.multiplicity(fam.hub, fam.u2) >= 3
    assert fam.script.lands_on_kernel(g)
    assert lift(g, 4, fam.hub, 5).order == g.order - 1
    with pytest.raises(ValueError):
        build_join_family(13, 11)
    with pytest.raises(ValueError):
        build_join_family(13, 14)
