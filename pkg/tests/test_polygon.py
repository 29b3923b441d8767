from itertools import combinations

import pytest

from dihedral_gravity.polygon import (
    Chord,
    DihedralPolygon,
    DihedralTree,
    Dissection,
    SubPolygon,
    admissible_ordering,
    all_dissections,
    chord_contracts_to,
    chord_index,
    chord_table,
    chords,
    contract_edges,
    corolla,
    crosses,
    dissection_to_tree,
    dissections,
    is_admissible,
    iter_admissible_orderings,
    residual_chords,
    s_tree_count,
    split_by_chord,
    subpolygons,
    tree_to_dissection,
)
from dihedral_gravity.series import cayley_count
from oracles import noncrossing_subsets


def test_polygon_needs_three_sides():
    with pytest.raises(ValueError):
        DihedralPolygon(2)


def test_chord_sorts_and_rejects_adjacent():
    assert Chord(6, 4, 1).vertices == (1, 4)
    for i, j in [(0, 1), (0, 5), (2, 2), (3, 4)]:
        with pytest.raises(ValueError):
            Chord(6, i, j)
    with pytest.raises(ValueError):
        Chord(6, 0, 6)


@pytest.mark.parametrize("n", range(3, 13))
def test_chord_count(n):
    brute = sum(1 for i, j in combinations(range(n), 2) if (j - i) % n not in (1, n - 1))
    assert len(chords(DihedralPolygon(n))) == brute == n * (n - 3) // 2


def test_small_chord_lists():
    assert chords(3) == []
    assert len(chords(4)) == 2
    assert len(chords(5)) == 5


def _segments_cross(n, a, b):
    # planar oracle on the regular n-gon
    import math

    pts = [(math.cos(2 * math.pi * v / n), math.sin(2 * math.pi * v / n)) for v in range(n)]

    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    if set(a) & set(b):
        return False
    p1, p2 = pts[a[0]], pts[a[1]]
    q1, q2 = pts[b[0]], pts[b[1]]
    return orient(p1, p2, q1) * orient(p1, p2, q2) < 0 and orient(q1, q2, p1) * orient(q1, q2, p2) < 0


def test_crossing_examples():
    assert not crosses(Chord(6, 0, 2), Chord(6, 2, 4))
    assert crosses(Chord(6, 0, 3), Chord(6, 1, 4))
    assert not crosses(Chord(6, 0, 2), Chord(6, 3, 5))


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_crossing_matches_geometry(n):
    for a, b in combinations(chord_table(n), 2):
        assert crosses(Chord(n, *a), Chord(n, *b)) == _segments_cross(n, a, b)


def test_crossing_size_mismatch():
    with pytest.raises(ValueError):
        crosses(Chord(5, 0, 2), Chord(6, 0, 2))


def test_dissection_examples():
    assert len(dissections(4, 1)) == 2
    assert len(dissections(5, 1)) == 5
    assert len(dissections(5, 2)) == 5
    assert len(dissections(6, 3)) == 14
    assert len(dissections(6, 2)) == 21
    assert dissections(5, 3) == []


@pytest.mark.parametrize("n", range(3, 10))
def test_dissection_counts_brute_force_and_cayley(n):
    for k in range(n - 2):
        count = len(dissections(n, k))
        assert count == noncrossing_subsets(n, k)
        assert count == cayley_count(n, k)


def test_cayley_at_ten():
    assert all(len(dissections(10, k)) == cayley_count(10, k) for k in range(8))


def test_dissection_rejects_crossing():
    with pytest.raises(ValueError):
        Dissection.from_chords(6, [(0, 3), (1, 4)])


def test_subpolygon_examples():
    (whole,) = subpolygons(5, Dissection(5, ()))
    assert whole.vertices == tuple(range(5))
    assert sorted(p.size for p in subpolygons(5, Dissection.from_chords(5, [(0, 2)]))) == [3, 4]
    assert sorted(p.size for p in subpolygons(6, Dissection.from_chords(6, [(0, 2), (2, 4)]))) == [3, 3, 4]


@pytest.mark.parametrize("n", range(4, 9))
def test_subpolygon_invariants(n):
    for d in all_dissections(n):
        regions = subpolygons(n, d)
        assert len(regions) == d.k + 1
        assert sum(r.size for r in regions) == n + 2 * d.k
        for pair in d.pairs:
            assert sum(pair in r.chord_sides for r in regions) == 2
        # canonical order by least original side
        keys = [r.sort_key() for r in regions]
        assert keys == sorted(keys)
        for r in regions:
            for local in chord_table(r.size):
                assert r.relabel(r.unlabel(local)) == local


def test_relabel_preserves_chord_order():
    reg = SubPolygon(9, (0, 2, 3, 5, 7, 8))
    local = list(chord_table(reg.size))
    parents = [reg.unlabel(p) for p in local]
    assert parents == sorted(parents)


def test_split_by_chord_order():
    p0, p1 = split_by_chord(6, (2, 5))
    assert p0.vertices == (0, 1, 2, 5) and p1.vertices == (2, 3, 4, 5)


def test_residual_examples():
    ds = Dissection.from_chords(7, [(0, 2), (2, 5)]).chords
    assert residual_chords(ds) == set(ds)
    assert residual_chords({Chord(6, 0, 3), Chord(6, 1, 4)}) == set()
    cs = {Chord(6, 0, 3), Chord(6, 1, 4), Chord(6, 1, 5)}
    brute = {c for c in cs if not any(crosses(c, o) for o in cs if o != c)}
    assert residual_chords(cs) == brute


# -- trees


def test_corolla_and_triangulation_tree():
    assert dissection_to_tree(5, Dissection(5, ())).canonical() == corolla(5).canonical()
    tri = Dissection.from_chords(6, [(0, 2), (2, 4), (0, 4)])
    t = dissection_to_tree(6, tri)
    t.validate()
    assert len(t.vertices) == 4 and all(len(v) == 3 for v in t.vertices)


@pytest.mark.parametrize("n", range(3, 9))
def test_tree_round_trip(n):
    for d in all_dissections(n):
        t = dissection_to_tree(n, d)
        t.validate()
        assert tree_to_dissection(t) == d


@pytest.mark.parametrize("n", range(4, 8))
def test_poset_isomorphism(n):
    ds = all_dissections(n)
    for big in ds:
        t = dissection_to_tree(n, big)
        edges = t.internal_edges
        reached = set()
        for size in range(len(edges) + 1):
            for drop in combinations(edges, size):
                contracted = contract_edges(t, drop)
                contracted.validate()
                reached.add(tree_to_dissection(contracted))
        below = {d for d in ds if set(d.pairs) <= set(big.pairs)}
        assert reached == below


def test_tree_validation_errors():
    with pytest.raises(ValueError):
        DihedralTree(3, ((("ext", 0), ("ext", 1)),)).validate()
    bad = DihedralTree(4, ((("ext", 0), ("ext", 1), ("int", 0)), (("ext", 2), ("ext", 3))))
    with pytest.raises(ValueError):
        bad.validate()


def test_non_dihedral_tree_rejected():
    # leaves {0, 2} are not a cyclic interval of the 4-gon
    t = DihedralTree(4, ((("ext", 0), ("ext", 2), ("int", 0)), (("int", 0), ("ext", 1), ("ext", 3))))
    with pytest.raises(ValueError):
        tree_to_dissection(t)


def test_s_tree_counts():
    assert s_tree_count(4, 1) == 3
    assert s_tree_count(5, 1) == 10
    assert s_tree_count(5, 2) == 15


def test_one_chord_dissections_are_dihedral_trees():
    trees = {dissection_to_tree(5, d).canonical() for d in dissections(5, 1)}
    assert len(trees) == 5


# -- admissible orderings


def test_single_chord_ordering():
    d = Dissection.from_chords(6, [(1, 4)])
    cs, ps = admissible_ordering(d)
    assert cs == [chord_index(6)[(1, 4)]] and len(ps) == 2
    with pytest.raises(ValueError):
        admissible_ordering(Dissection(6, ()))


def test_path_and_star_orderings():
    path = Dissection.from_chords(8, [(0, 2), (0, 4), (0, 6)])
    cs, ps = admissible_ordering(path)
    assert is_admissible(path, cs, ps)
    star = Dissection.from_chords(6, [(0, 2), (2, 4), (0, 4)])
    orders = list(iter_admissible_orderings(star))
    center = SubPolygon(6, (0, 2, 4))
    # three leaves can go in any order; the last two regions can swap
    assert len(orders) == 12
    assert all(center in ps[-2:] for _, ps in orders)


@pytest.mark.parametrize("n", range(4, 8))
def test_every_ordering_is_admissible(n):
    for d in all_dissections(n):
        if d.k == 0:
            continue
        for cs, ps in iter_admissible_orderings(d):
            assert is_admissible(d, cs, ps)


# -- contraction


def test_contraction_examples():
    assert chord_contracts_to((0, 4), [0, 1, 2, 3, 4], 6) is None
    assert chord_contracts_to((0, 3), [0, 1, 2, 3, 4], 6) == (0, 3)
    for pair in chord_table(7):
        assert chord_contracts_to(Chord(7, *pair), range(7)) == pair
