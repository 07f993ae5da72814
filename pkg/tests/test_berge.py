from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperx.berge import (
    BergeWitness,
    BudgetExhausted,
    PatternGraph,
    Verdict,
    brute_force_berge,
    combine_verdicts,
    find_berge,
    graph_pk_free_check,
    is_berge_family_free,
    is_berge_free,
    longest_path_at_least,
    make_pattern,
    parse_pattern,
    validate_witness,
)
from hyperx.errors import BadParams, Infeasible, TooLarge
from hyperx.genlab import enumerate_small, loose_cycle, loose_path, random_linear, star

PATTERNS = ["cycle:3", "cycle:4", "cycle:5", "book:2", "kst:2,2", "kst:2,3", "path:3"]


def python_berge(H, G):
    """Pure-Python reference: try every vertex map, then match pattern edges to hyperedges."""
    sets = H.edge_sets
    for image in permutations(range(H.n), G.p):
        options = [[i for i, e in enumerate(sets) if image[a] in e and image[b] in e] for a, b in G.edges]
        if any(not o for o in options):
            continue
        used: set[int] = set()

        def match(j):
            if j == len(options):
                return True
            for i in options[j]:
                if i not in used:
                    used.add(i)
                    if match(j + 1):
                        return True
                    used.discard(i)
            return False

        if match(0):
            return True
    return False


@pytest.mark.parametrize(
    "text, p, m",
    [("cycle:5", 5, 5), ("book:2", 4, 5), ("kst:2,3", 5, 6), ("path:4", 5, 4), ("complete:4", 4, 6),
     (" Cycle : 6 ", 6, 6), ("kst:2, 1", 3, 2)],
)
def test_parse_pattern(text, p, m):
    G = parse_pattern(text)
    assert (G.p, G.num_edges) == (p, m)


@pytest.mark.parametrize("text", ["cycle", "cycle:2", "book:1", "kst:2", "wheel:5", "cycle:x", "kst:0,2", ""])
def test_parse_pattern_rejects(text):
    with pytest.raises(BadParams):
        parse_pattern(text)


def test_dsl_round_trip():
    for text in PATTERNS + ["complete:4"]:
        assert parse_pattern(text).dsl == text


def test_book_shape():
    G = make_pattern("book", 3)
    assert G.degrees == (4, 4, 2, 2, 2)
    assert G.adjacency[2] == frozenset({0, 1})


def test_pattern_graph_validation():
    with pytest.raises(BadParams):
        PatternGraph(3, ((0, 0),))
    with pytest.raises(BadParams):
        PatternGraph(3, ((0, 3),))
    with pytest.raises(BadParams):
        PatternGraph(3, ((0, 1), (1, 0)))


def test_search_order_starts_at_max_degree():
    G = make_pattern("kst", 2, 3)
    order = G.search_order
    assert sorted(order) == list(range(5))
    assert G.degrees[order[0]] == 3


def test_loose_path_is_c5_free(path2):
    assert is_berge_free(path2, parse_pattern("cycle:5")) is Verdict.FREE


def test_loose_triangle_contains_c3(triangle3):
    w = find_berge(triangle3, parse_pattern("cycle:3"))
    assert isinstance(w, BergeWitness)
    assert validate_witness(triangle3, parse_pattern("cycle:3"), w)


def test_tiny_budget_is_unknown():
    H = random_linear(3, 15, 20, seed=3)
    assert is_berge_free(H, parse_pattern("cycle:8"), budget=2) is Verdict.UNKNOWN
    assert isinstance(find_berge(H, parse_pattern("cycle:8"), budget=2), BudgetExhausted)


def test_fano_contains_small_patterns(fano):
    for text in ["cycle:3", "cycle:4", "cycle:5", "book:2", "kst:2,2"]:
        G = parse_pattern(text)
        w = find_berge(fano, G)
        assert isinstance(w, BergeWitness) and validate_witness(fano, G, w), text


def test_p2_is_k21(path2):
    """K_{2,1} is a two-edge path, so any two intersecting hyperedges contain it."""
    K21 = parse_pattern("kst:2,1")
    assert sorted(K21.degrees) == sorted(parse_pattern("path:2").degrees)
    assert is_berge_free(path2, K21) is Verdict.CONTAINS
    assert is_berge_free(loose_path(1, 3), K21) is Verdict.FREE


def test_witness_rejects_tampering(triangle3):
    G = parse_pattern("cycle:3")
    w = find_berge(triangle3, G)
    first = next(iter(w.edge_map))
    edges = dict(w.edge_map)
    edges[first] = edges[next(e for e in edges if e != first)]
    assert not validate_witness(triangle3, G, BergeWitness(w.core_map, edges))
    core = dict(w.core_map)
    core[0] = core[1]
    assert not validate_witness(triangle3, G, BergeWitness(core, w.edge_map))
    assert not validate_witness(triangle3, G, BergeWitness({0: 0}, w.edge_map))


def test_witness_to_dict(triangle3):
    w = find_berge(triangle3, parse_pattern("cycle:3"))
    d = w.to_dict()
    assert set(d["core_map"]) == {"0", "1", "2"}
    assert set(d["edge_map"]) == {"0,1", "1,2", "0,2"}


@pytest.mark.parametrize("text", ["cycle:3", "cycle:4", "book:2", "kst:2,2", "path:3"])
def test_brute_force_matches_python_reference(text):
    G = parse_pattern(text)
    for H in enumerate_small(3, 6, 3):
        assert (brute_force_berge(H, G) is not None) == python_berge(H, G)
    for H in [loose_cycle(3, 3), loose_cycle(4, 3), star(3, 3)]:
        assert (brute_force_berge(H, G) is not None) == python_berge(H, G)


@pytest.mark.parametrize("text", PATTERNS)
def test_search_matches_brute_force_exhaustive(text):
    G = parse_pattern(text)
    for H in enumerate_small(3, 7, 3):
        fast = find_berge(H, G)
        slow = brute_force_berge(H, G)
        assert (fast is None) == (slow is None)
        if fast is not None:
            assert validate_witness(H, G, fast) and validate_witness(H, G, slow)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32), k=st.sampled_from([3, 4]), n=st.integers(7, 14), text=st.sampled_from(PATTERNS))
def test_search_matches_brute_force_random(seed, k, n, text):
    try:
        H = random_linear(k, n, 4, seed)
    except Infeasible:
        return
    if H.m > 8:
        return
    G = parse_pattern(text)
    fast = find_berge(H, G)
    assert (fast is None) == (brute_force_berge(H, G) is None)
    if fast is not None:
        assert validate_witness(H, G, fast)


def test_brute_force_caps():
    with pytest.raises(TooLarge):
        brute_force_berge(loose_path(2, 3), parse_pattern("cycle:8"))
    with pytest.raises(TooLarge):
        brute_force_berge(loose_path(9, 3), parse_pattern("cycle:3"))


def test_family_verdicts(path2, triangle3):
    fam = [parse_pattern("cycle:3"), parse_pattern("cycle:4")]
    assert is_berge_family_free(path2, fam) is Verdict.FREE
    assert is_berge_family_free(triangle3, fam) is Verdict.CONTAINS
    assert combine_verdicts([Verdict.FREE, Verdict.UNKNOWN]) is Verdict.UNKNOWN
    assert combine_verdicts([Verdict.UNKNOWN, Verdict.CONTAINS]) is Verdict.CONTAINS
    assert combine_verdicts([]) is Verdict.FREE


def test_quick_absent_pattern_too_big(edge3):
    assert find_berge(edge3, parse_pattern("cycle:3")) is None


def test_longest_path():
    path_edges = [(0, 1), (1, 2), (2, 3)]
    assert longest_path_at_least(4, path_edges, 3)
    assert not longest_path_at_least(4, path_edges, 4)
    assert longest_path_at_least(3, [], 0)
    assert not longest_path_at_least(3, [], 1)


def test_graph_pk_free_check():
    tri = make_pattern("complete", 3)
    assert graph_pk_free_check(tri, 3) == (True, True)  # 3 edges, bound (3-1)*3/2 = 3
    assert graph_pk_free_check(tri, 2) == (False, True)
    k4 = make_pattern("complete", 4)
    assert graph_pk_free_check(k4, 4) == (True, True)  # 6 <= 3*4/2
    with pytest.raises(BadParams):
        graph_pk_free_check(tri, 0)
