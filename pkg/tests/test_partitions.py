import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bifree.partitions import (
    IntersectionGraph,
    SetPartition,
    bell_number,
    blocks_cross,
    catalan_number,
    classify_pair_partition,
    count_bicon_pairs,
    enumerate_noncrossing,
    enumerate_pair_noncrossing,
    enumerate_pairings,
    enumerate_partitions,
    intersection_graph,
    is_refinement,
    mobius_nc,
    _noncrossing_by_filter,
    _noncrossing_recursive,
)

# ---------------------------------------------------------------------------
# independent oracles, kept deliberately naive
# ---------------------------------------------------------------------------


def crossing_oracle(p: SetPartition) -> bool:
    """Quadruple scan straight from the definition: v1 < w1 < v2 < w2 with
    v's and w's in different blocks."""
    idx = p.block_index()
    n = p.n
    for v1 in range(1, n + 1):
        for w1 in range(v1 + 1, n + 1):
            if idx[v1 - 1] == idx[w1 - 1]:
                continue
            for v2 in range(w1 + 1, n + 1):
                if idx[v2 - 1] != idx[v1 - 1]:
                    continue
                for w2 in range(v2 + 1, n + 1):
                    if idx[w2 - 1] == idx[w1 - 1]:
                        return True
    return False


def pairings_oracle(n: int):
    """All pairings as frozensets, built from scratch with combinations."""
    if n == 0:
        return [frozenset()]
    out = []

    def rec(points, acc):
        if not points:
            out.append(frozenset(acc))
            return
        first = points[0]
        for other in points[1:]:
            rest = tuple(x for x in points[1:] if x != other)
            rec(rest, acc + [(first, other)])

    rec(tuple(range(1, n + 1)), [])
    return out


def double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2))


# ---------------------------------------------------------------------------
# canonical form and serialization
# ---------------------------------------------------------------------------


def test_canonical_form_unique():
    a = SetPartition(4, [[3, 1], [4, 2]])
    b = SetPartition(4, [(2, 4), (1, 3)])
    assert a == b
    assert hash(a) == hash(b)
    assert a.blocks == ((1, 3), (2, 4))


def test_invalid_partitions_rejected():
    with pytest.raises(ValueError):
        SetPartition(3, [[1, 2]])
    with pytest.raises(ValueError):
        SetPartition(3, [[1, 2], [2, 3]])
    with pytest.raises(ValueError):
        SetPartition(3, [[1, 2, 3], []])
    with pytest.raises(ValueError):
        SetPartition(2, [[1, 2, 3]])


def test_text_round_trip():
    p = SetPartition.from_text("1,4|2,5|3,6")
    assert p.n == 6
    assert p.to_text() == "1,4|2,5|3,6"
    assert SetPartition.from_text(p.to_text()) == p
    assert SetPartition.from_text("", n=0) == SetPartition(0, [])


# ---------------------------------------------------------------------------
# enumeration counts
# ---------------------------------------------------------------------------


def test_enumerate_partitions_counts():
    # frozen Bell numbers, cross-checked against the binomial recurrence
    expected = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    for n, count in enumerate(expected):
        assert bell_number(n) == count
        if n <= 7:
            seen = list(enumerate_partitions(n))
            assert len(seen) == count
            assert len(set(seen)) == count


def test_enumerate_partitions_n3_exhaustive():
    texts = {p.to_text() for p in enumerate_partitions(3)}
    assert texts == {"1|2|3", "1,2|3", "1,3|2", "1|2,3", "1,2,3"}


def test_noncrossing_counts_match_catalan_and_filter():
    for n in range(9):
        nc = list(enumerate_noncrossing(n))
        assert len(nc) == catalan_number(n)
        assert {p.to_text() for p in nc} == {
            p.to_text() for p in enumerate_partitions(n) if not crossing_oracle(p)
        }


def test_noncrossing_recursive_agrees_with_filter():
    for n in range(9):
        rec = {p.to_text() for p in _noncrossing_recursive(n)}
        filt = {p.to_text() for p in _noncrossing_by_filter(n)}
        assert rec == filt
    # above the filter cut-off the recursive branch is used; spot-check count
    assert sum(1 for _ in enumerate_noncrossing(11)) == catalan_number(11)


def test_pair_noncrossing():
    assert [p.to_text() for p in enumerate_pair_noncrossing(2)] == ["1,2"]
    assert list(enumerate_pair_noncrossing(3)) == []
    four = {p.to_text() for p in enumerate_pair_noncrossing(4)}
    assert four == {"1,2|3,4", "1,4|2,3"}
    for n in (0, 2, 4, 6, 8, 10):
        got = list(enumerate_pair_noncrossing(n))
        assert len(got) == catalan_number(n // 2)
        oracle = {
            p.to_text()
            for p in enumerate_noncrossing(n)
            if p.is_pair_partition()
        } if n <= 8 else None
        if oracle is not None:
            assert {p.to_text() for p in got} == oracle


def test_enumerate_pairings_counts():
    for n in (0, 2, 4, 6, 8):
        got = {frozenset(p.blocks) for p in enumerate_pairings(n)}
        assert len(got) == double_factorial(n - 1)  # (-1)!! == 1 covers n=0
        assert got == {frozenset(s) for s in pairings_oracle(n)}
    assert list(enumerate_pairings(5)) == []


# ---------------------------------------------------------------------------
# refinement order
# ---------------------------------------------------------------------------


def test_refinement_examples():
    singles = SetPartition.singletons(3)
    assert is_refinement(singles, SetPartition(3, [[1, 2], [3]]))
    assert is_refinement(SetPartition(3, [[1, 2], [3]]), SetPartition.full(3))
    assert not is_refinement(
        SetPartition(3, [[1, 3], [2]]), SetPartition(3, [[1, 2], [3]])
    )
    with pytest.raises(ValueError):
        is_refinement(SetPartition.singletons(2), SetPartition.singletons(3))


def test_refinement_is_partial_order():
    for n in range(6):
        parts = list(enumerate_partitions(n))
        for p in parts:
            assert is_refinement(p, p)
        for p in parts:
            for q in parts:
                if is_refinement(p, q) and is_refinement(q, p):
                    assert p == q
        les = {
            (i, j)
            for i, p in enumerate(parts)
            for j, q in enumerate(parts)
            if is_refinement(p, q)
        }
        for i, j in les:
            for k in range(len(parts)):
                if (j, k) in les:
                    assert (i, k) in les


# ---------------------------------------------------------------------------
# Mobius function of the non-crossing lattice
# ---------------------------------------------------------------------------


def test_mobius_base_cases():
    for n in range(1, 5):
        for p in enumerate_noncrossing(n):
            assert mobius_nc(p, p) == 1
    assert mobius_nc(SetPartition.singletons(2), SetPartition.full(2)) == -1
    assert mobius_nc(SetPartition.singletons(4), SetPartition.full(4)) == -5
    # incomparable arguments give 0
    assert mobius_nc(SetPartition(4, [[1, 2], [3, 4]]), SetPartition(4, [[1], [2, 3, 4]])) == 0


def test_mobius_full_interval_closed_form():
    for n in range(1, 8):
        expected = (-1) ** (n - 1) * catalan_number(n - 1)
        assert mobius_nc(SetPartition.singletons(n), SetPartition.full(n)) == expected


def test_mobius_rejects_crossing_input():
    crossing = SetPartition(4, [[1, 3], [2, 4]])
    with pytest.raises(ValueError):
        mobius_nc(crossing, SetPartition.full(4))


def test_mobius_recursions_hold():
    # both defining recursions, checked on every comparable pair up to n = 6
    for n in range(1, 7):
        ncs = list(enumerate_noncrossing(n))
        above = [
            [j for j, s in enumerate(ncs) if is_refinement(p, s)] for p in ncs
        ]
        above_sets = [set(row) for row in above]
        for i, p in enumerate(ncs):
            for j in above[i]:
                s = ncs[j]
                interval = [k for k in above[i] if j in above_sets[k]]
                expected = 1 if i == j else 0
                assert sum(mobius_nc(ncs[k], s) for k in interval) == expected
                assert sum(mobius_nc(p, ncs[k]) for k in interval) == expected


# ---------------------------------------------------------------------------
# intersection graphs and pairing classification
# ---------------------------------------------------------------------------


def test_blocks_cross_matches_definition():
    for n in range(2, 7):
        for p in enumerate_partitions(n):
            any_cross = any(
                blocks_cross(a, b) for a, b in combinations(p.blocks, 2)
            )
            assert any_cross == crossing_oracle(p)


def test_intersection_graph_examples():
    g = intersection_graph(SetPartition(4, [[1, 2], [3, 4]]))
    assert g.num_vertices == 2 and not g.edges
    g = intersection_graph(SetPartition(4, [[1, 3], [2, 4]]))
    assert g.num_vertices == 2 and len(g.edges) == 1
    g = intersection_graph(SetPartition(6, [[1, 4], [2, 5], [3, 6]]))
    assert g.num_vertices == 3 and len(g.edges) == 3  # triangle


def test_graph_connectivity_and_bipartiteness():
    triangle = IntersectionGraph(3, frozenset({(0, 1), (1, 2), (0, 2)}))
    assert triangle.is_connected() and not triangle.is_bipartite()
    path = IntersectionGraph(3, frozenset({(0, 1), (1, 2)}))
    assert path.is_connected() and path.is_bipartite()
    lonely = IntersectionGraph(2, frozenset())
    assert not lonely.is_connected() and lonely.is_bipartite()


def test_classify_examples():
    c = classify_pair_partition(SetPartition(2, [[1, 2]]))
    assert c.is_pair and c.is_connected and c.is_bipartite_connected
    c = classify_pair_partition(SetPartition(4, [[1, 3], [2, 4]]))
    assert c.is_pair and c.is_connected and c.is_bipartite_connected
    c = classify_pair_partition(SetPartition(4, [[1, 2], [3, 4]]))
    assert c.is_pair and not c.is_connected
    c = classify_pair_partition(SetPartition(6, [[1, 4], [2, 5], [3, 6]]))
    assert c.is_pair and c.is_connected and not c.is_bipartite_connected
    c = classify_pair_partition(SetPartition(3, [[1, 2, 3]]))
    assert not c.is_pair


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.randoms(use_true_random=False))
def test_classify_invariant_under_reflection(half, rnd):
    n = 2 * half
    pairings = list(enumerate_pairings(n))
    p = pairings[rnd.randrange(len(pairings))]
    mirrored = p.relabel({x: n + 1 - x for x in range(1, n + 1)})
    assert classify_pair_partition(p) == classify_pair_partition(mirrored)


def brute_force_bicon(two_j: int) -> int:
    """Test-local reimplementation: own pairing walk, own crossing test,
    own bipartite 2-colouring."""
    count = 0
    for pairing in pairings_oracle(two_j):
        blocks = sorted(tuple(sorted(b)) for b in pairing)
        edges = [
            (i, j)
            for i in range(len(blocks))
            for j in range(i + 1, len(blocks))
            if blocks[i][0] < blocks[j][0] < blocks[i][1] < blocks[j][1]
            or blocks[j][0] < blocks[i][0] < blocks[j][1] < blocks[i][1]
        ]
        adj = {i: set() for i in range(len(blocks))}
        for i, j in edges:
            adj[i].add(j)
            adj[j].add(i)
        colour = {0: 0}
        stack = [0]
        ok = True
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in colour:
                    colour[w] = colour[v] ^ 1
                    stack.append(w)
                elif colour[w] == colour[v]:
                    ok = False
        if ok and len(colour) == len(blocks):
            count += 1
    return count


def test_count_bicon_pairs():
    assert count_bicon_pairs(2) == 1
    assert count_bicon_pairs(4) == 1
    assert count_bicon_pairs(6) == 3
    for two_j in (2, 4, 6, 8):
        assert count_bicon_pairs(two_j) == brute_force_bicon(two_j)
    with pytest.raises(ValueError):
        count_bicon_pairs(5)
    with pytest.raises(ValueError):
        count_bicon_pairs(0)
