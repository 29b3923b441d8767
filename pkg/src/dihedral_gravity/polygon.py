"""Polygons, chords, dissections and dihedral trees.

Everything lives on the standard polygon with sides ``0..n-1``.  Vertex
``v_i`` sits between sides ``i`` and ``i+1`` (mod n), so the side joining
``v_{i-1}`` and ``v_i`` is side ``i``.  A chord is a pair of non-adjacent
vertices stored as ``(i, j)`` with ``i < j``; the lexicographic order on these
pairs is the global chord order used for every sign downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence


@dataclass(frozen=True)
class DihedralPolygon:
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"a polygon needs at least 3 sides, got {self.n}")


@dataclass(frozen=True, order=True)
class Chord:
    """Unordered pair of non-adjacent vertices of an ``n``-gon."""

    n: int
    i: int
    j: int

    def __post_init__(self):
        i, j, n = self.i, self.j, self.n
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"vertex out of range for {n}-gon: {(i, j)}")
        if i > j:
            object.__setattr__(self, "i", j)
            object.__setattr__(self, "j", i)
        if (self.j - self.i) % n in (0, 1, n - 1):
            raise ValueError(f"({i}, {j}) joins adjacent or equal vertices of a {n}-gon")

    @property
    def vertices(self) -> tuple[int, int]:
        return (self.i, self.j)

    def __repr__(self):
        return f"Chord({self.i},{self.j}|{self.n})"


@lru_cache(maxsize=None)
def chord_table(n: int) -> tuple[tuple[int, int], ...]:
    """Vertex pairs of all chords of the ``n``-gon in global order."""
    return tuple(
        (i, j) for i in range(n) for j in range(i + 2, n) if not (i == 0 and j == n - 1)
    )


@lru_cache(maxsize=None)
def chord_index(n: int) -> dict[tuple[int, int], int]:
    return {pair: k for k, pair in enumerate(chord_table(n))}


def chords(poly: DihedralPolygon | int) -> list[Chord]:
    n = poly.n if isinstance(poly, DihedralPolygon) else poly
    return [Chord(n, i, j) for i, j in chord_table(n)]


def _pairs_cross(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (i, j), (k, l) = a, b
    return i < k < j < l or k < i < l < j


def crosses(c1: Chord, c2: Chord) -> bool:
    if c1.n != c2.n:
        raise ValueError(f"chords of a {c1.n}-gon and a {c2.n}-gon cannot be compared")
    return _pairs_cross(c1.vertices, c2.vertices)


@lru_cache(maxsize=None)
def crossing_table(n: int) -> tuple[frozenset[int], ...]:
    """For each chord index, the set of chord indices crossing it."""
    table = chord_table(n)
    return tuple(
        frozenset(b for b, q in enumerate(table) if _pairs_cross(p, q)) for p in table
    )


# ---------------------------------------------------------------------------
# dissections and sub-polygons


@dataclass(frozen=True)
class Dissection:
    """A set of pairwise non-crossing chords, stored as sorted chord indices."""

    n: int
    chord_ids: tuple[int, ...]

    def __post_init__(self):
        ids = tuple(sorted(set(self.chord_ids)))
        object.__setattr__(self, "chord_ids", ids)
        cross = crossing_table(self.n)
        for a, b in combinations(ids, 2):
            if b in cross[a]:
                raise ValueError(f"chords {chord_table(self.n)[a]} and {chord_table(self.n)[b]} cross")

    @classmethod
    def from_chords(cls, n: int, cs: Iterable[Chord | tuple[int, int]]) -> "Dissection":
        idx = chord_index(n)
        ids = []
        for c in cs:
            pair = c.vertices if isinstance(c, Chord) else tuple(sorted(c))
            ids.append(idx[pair])
        return cls(n, tuple(ids))

    @property
    def k(self) -> int:
        return len(self.chord_ids)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        table = chord_table(self.n)
        return tuple(table[c] for c in self.chord_ids)

    @property
    def chords(self) -> list[Chord]:
        return [Chord(self.n, i, j) for i, j in self.pairs]

    def __len__(self):
        return len(self.chord_ids)


@lru_cache(maxsize=None)
def _dissection_ids(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    if k == 0:
        return ((),)
    cross = crossing_table(n)
    out = []
    for smaller in _dissection_ids(n, k - 1):
        start = smaller[-1] + 1 if smaller else 0
        for c in range(start, len(cross)):
            if not any(c in cross[s] for s in smaller):
                out.append(smaller + (c,))
    return tuple(out)


def dissections(poly: DihedralPolygon | int, k: int) -> list[Dissection]:
    """All dissections with ``k`` chords, in lexicographic order of chord indices."""
    n = poly.n if isinstance(poly, DihedralPolygon) else poly
    if k < 0 or k > n - 3:
        return []
    return [Dissection(n, ids) for ids in _dissection_ids(n, k)]


def all_dissections(n: int) -> list[Dissection]:
    return [d for k in range(n - 2) for d in dissections(n, k)]


@dataclass(frozen=True)
class SubPolygon:
    """A region of a dissection.

    ``vertices`` are the parent vertices on the region's boundary in
    increasing order; region vertex ``vertices[t]`` is vertex ``t`` of the
    standard polygon of size ``len(vertices)``.  Since the map is increasing,
    relabeling preserves the lexicographic chord order.
    """

    n: int
    vertices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> tuple[tuple[str, object], ...]:
        """Boundary edges in dihedral order: edge ``t`` joins region vertices t-1 and t.

        Each entry is ``("side", s)`` or ``("chord", (a, b))``.
        """
        out = []
        vs = self.vertices
        m = len(vs)
        for t in range(m):
            a, b = vs[t - 1], vs[t]
            if (b - a) % self.n == 1:
                out.append(("side", b))
            else:
                out.append(("chord", (min(a, b), max(a, b))))
        return tuple(out)

    @property
    def sides(self) -> tuple[int, ...]:
        return tuple(sorted(e for kind, e in self.edges if kind == "side"))

    @property
    def chord_sides(self) -> tuple[tuple[int, int], ...]:
        return tuple(e for kind, e in self.edges if kind == "chord")

    def contains_pair(self, pair: tuple[int, int]) -> bool:
        vs = self.vertices
        return pair[0] in vs and pair[1] in vs

    def relabel(self, pair: tuple[int, int]) -> tuple[int, int]:
        """Parent chord -> chord of the standard polygon of this region."""
        pos = {v: t for t, v in enumerate(self.vertices)}
        a, b = pos[pair[0]], pos[pair[1]]
        return (a, b) if a < b else (b, a)

    def unlabel(self, pair: tuple[int, int]) -> tuple[int, int]:
        a, b = self.vertices[pair[0]], self.vertices[pair[1]]
        return (a, b) if a < b else (b, a)

    def sort_key(self):
        s = self.sides
        return (s[0] if s else self.n, self.vertices)


def _split_regions(n: int, pairs: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    regions = [tuple(range(n))]
    for i, j in pairs:
        for r, vs in enumerate(regions):
            if i in vs and j in vs:
                inside = tuple(v for v in vs if i <= v <= j)
                outside = tuple(v for v in vs if v <= i or v >= j)
                regions[r:r + 1] = [inside, outside]
                break
        else:  # pragma: no cover - guarded by Dissection validation
            raise ValueError("chord does not lie in any region")
    return regions


@lru_cache(maxsize=None)
def _subpolygons(n: int, ids: tuple[int, ...]) -> tuple[SubPolygon, ...]:
    table = chord_table(n)
    regions = [SubPolygon(n, vs) for vs in _split_regions(n, [table[c] for c in ids])]
    return tuple(sorted(regions, key=SubPolygon.sort_key))


def subpolygons(poly: DihedralPolygon | int, d: Dissection) -> list[SubPolygon]:
    """The ``k+1`` regions of ``d`` ordered by their least original side."""
    n = poly.n if isinstance(poly, DihedralPolygon) else poly
    if d.n != n:
        raise ValueError("dissection belongs to a different polygon")
    return list(_subpolygons(n, d.chord_ids))


def split_by_chord(n: int, pair: tuple[int, int], region: SubPolygon | None = None) -> tuple[SubPolygon, SubPolygon]:
    """Cut ``region`` (default: whole polygon) along ``pair``; canonical order."""
    vs = region.vertices if region is not None else tuple(range(n))
    i, j = pair
    a = SubPolygon(n, tuple(v for v in vs if i <= v <= j))
    b = SubPolygon(n, tuple(v for v in vs if v <= i or v >= j))
    return tuple(sorted((a, b), key=SubPolygon.sort_key))


def residual_chords(chord_set: Iterable[Chord]) -> set[Chord]:
    cs = list(chord_set)
    return {c for c in cs if not any(crosses(c, o) for o in cs if o != c)}


def residual_ids(n: int, ids: Iterable[int]) -> tuple[int, ...]:
    ids = tuple(ids)
    cross = crossing_table(n)
    s = set(ids)
    return tuple(c for c in ids if not (cross[c] & s))


# ---------------------------------------------------------------------------
# dihedral trees


@dataclass(frozen=True)
class DihedralTree:
    """A tree whose internal vertices carry cyclically ordered half-edges.

    ``vertices[v]`` lists the edges around internal vertex ``v``; an edge is
    ``("ext", s)`` for the leaf labeled by side ``s`` or ``("int", e)`` for an
    internal edge, each internal label appearing at exactly two vertices.
    """

    n: int
    vertices: tuple[tuple[tuple[str, int], ...], ...]

    @property
    def internal_edges(self) -> list[int]:
        return sorted({e for v in self.vertices for kind, e in v if kind == "int"})

    def edge_ends(self) -> dict[int, list[int]]:
        ends: dict[int, list[int]] = {}
        for v, adj in enumerate(self.vertices):
            for kind, e in adj:
                if kind == "int":
                    ends.setdefault(e, []).append(v)
        return ends

    def validate(self) -> None:
        ends = self.edge_ends()
        if any(len(vs) != 2 for vs in ends.values()):
            raise ValueError("every internal edge needs exactly two endpoints")
        leaves = sorted(e for v in self.vertices for kind, e in v if kind == "ext")
        if leaves != list(range(self.n)):
            raise ValueError("external edges must be labeled 0..n-1 exactly once")
        if len(ends) != len(self.vertices) - 1:
            raise ValueError("not a tree: wrong number of internal edges")
        # connectivity
        seen, stack = {0}, [0]
        adj = {v: [] for v in range(len(self.vertices))}
        for a, b in ends.values():
            adj[a].append(b)
            adj[b].append(a)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise ValueError("not a tree: disconnected")
        for adj_v in self.vertices:
            if len(adj_v) < 3:
                raise ValueError("internal vertices must have degree at least 3")

    def leaves_beyond(self, edge: int, towards: int) -> frozenset[int]:
        """Leaf labels reachable from vertex ``towards`` without crossing ``edge``."""
        ends = self.edge_ends()
        out, seen, stack = set(), {towards}, [towards]
        while stack:
            v = stack.pop()
            for kind, e in self.vertices[v]:
                if kind == "ext":
                    out.add(e)
                elif e != edge:
                    a, b = ends[e]
                    w = b if a == v else a
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return frozenset(out)

    def canonical(self) -> frozenset:
        """Embedding-free fingerprint: the leaf sets cut out by each internal edge."""
        ends = self.edge_ends()
        splits = set()
        for e, (a, _) in ends.items():
            side = self.leaves_beyond(e, a)
            other = frozenset(range(self.n)) - side
            splits.add(frozenset((side, other)))
        return frozenset(splits)


def dissection_to_tree(poly: DihedralPolygon | int, d: Dissection) -> DihedralTree:
    """Dual graph of ``d``: one vertex per region, one internal edge per chord."""
    n = poly.n if isinstance(poly, DihedralPolygon) else poly
    regions = subpolygons(n, d)
    pos = {pair: e for e, pair in enumerate(d.pairs)}
    verts = []
    for reg in regions:
        adj = []
        for kind, val in reg.edges:
            adj.append(("ext", val) if kind == "side" else ("int", pos[val]))
        verts.append(tuple(adj))
    return DihedralTree(n, tuple(verts))


def _interval_to_chord(n: int, leaves: frozenset[int]) -> tuple[int, int]:
    """Leaves ``{a+1, ..., b}`` (cyclic) are cut off by the chord ``{v_a, v_b}``."""
    m = len(leaves)
    if not 2 <= m <= n - 2:
        raise ValueError("edge does not cut off an admissible set of leaves")
    for start in leaves:
        if all((start + t) % n in leaves for t in range(m)):
            a, b = (start - 1) % n, (start + m - 1) % n
            return (min(a, b), max(a, b))
    raise ValueError("leaves beyond an edge are not a cyclic interval: tree is not dihedral")


def tree_to_dissection(t: DihedralTree) -> Dissection:
    t.validate()
    pairs = []
    for e, (a, _) in t.edge_ends().items():
        pairs.append(_interval_to_chord(t.n, t.leaves_beyond(e, a)))
    return Dissection.from_chords(t.n, pairs)


def contract_edges(t: DihedralTree, edges: Iterable[int]) -> DihedralTree:
    """Contract internal edges, splicing cyclic orders at each merge."""
    verts = [list(v) for v in t.vertices]
    alive = list(range(len(verts)))
    for e in edges:
        holders = [v for v in alive if ("int", e) in verts[v]]
        a, b = holders
        la, lb = verts[a], verts[b]
        ia, ib = la.index(("int", e)), lb.index(("int", e))
        merged = la[:ia] + lb[ib + 1:] + lb[:ib] + la[ia + 1:]
        verts[a] = merged
        alive.remove(b)
    return DihedralTree(t.n, tuple(tuple(verts[v]) for v in alive))


def corolla(n: int) -> DihedralTree:
    return DihedralTree(n, (tuple(("ext", s) for s in range(n)),))


def s_tree_count(n: int, k: int) -> int:
    """Number of (non-planar) trees with ``n`` labeled leaves and ``k`` internal edges.

    Counted as sets of ``k`` pairwise compatible splits of ``{0..n-1}``.
    """
    base = frozenset(range(n))
    splits = []
    for size in range(2, n // 2 + 1):
        for part in combinations(range(n), size):
            a = frozenset(part)
            if 2 * size == n and 0 not in a:
                continue
            splits.append((a, base - a))

    def compatible(s, t):
        return any(not (x & y) for x in s for y in t)

    count = 0

    def extend(chosen, start):
        nonlocal count
        if len(chosen) == k:
            count += 1
            return
        for idx in range(start, len(splits)):
            if all(compatible(splits[idx], splits[c]) for c in chosen):
                extend(chosen + [idx], idx + 1)

    extend([], 0)
    return count


# ---------------------------------------------------------------------------
# admissible orderings and contraction of sides


def _region_graph(n: int, d: Dissection):
    regions = subpolygons(n, d)
    where = {}
    for r, reg in enumerate(regions):
        for pair in reg.chord_sides:
            where.setdefault(pair, []).append(r)
    edges = {chord_index(n)[pair]: tuple(rs) for pair, rs in where.items()}
    return regions, edges


def admissible_ordering(d: Dissection) -> tuple[list[int], list[SubPolygon]]:
    """Order chords and regions by pruning the least-indexed leaf of the dual tree.

    Returns chord ids ``c_1..c_r`` and regions ``p_0..p_r`` such that deleting
    ``c_1..c_j`` isolates exactly ``p_0..p_{j-1}``.
    """
    if not d.chord_ids:
        raise ValueError("admissible orderings need a non-empty dissection")
    return next(iter_admissible_orderings(d, first_only=True))


def iter_admissible_orderings(d: Dissection, first_only: bool = False):
    """All leaf-pruning sequences of the dual tree (or just the canonical one)."""
    regions, edges = _region_graph(d.n, d)

    def rec(alive_edges, alive_regions, cs, ps):
        if not alive_edges:
            (last,) = alive_regions
            yield list(cs), [regions[r] for r in ps + [last]]
            return
        degree = {r: 0 for r in alive_regions}
        for e in alive_edges:
            for r in edges[e]:
                degree[r] += 1
        leaves = sorted(r for r in alive_regions if degree[r] == 1)
        for leaf in leaves[:1] if first_only else leaves:
            (e,) = [e for e in alive_edges if leaf in edges[e]]
            yield from rec(alive_edges - {e}, alive_regions - {leaf}, cs + [e], ps + [leaf])

    yield from rec(frozenset(edges), frozenset(range(len(regions))), [], [])


def is_admissible(d: Dissection, cs: Sequence[int], ps: Sequence[SubPolygon]) -> bool:
    """Check the prefix-disconnection property by explicit edge deletion."""
    regions, edges = _region_graph(d.n, d)
    index = {reg: r for r, reg in enumerate(regions)}
    order = [index[p] for p in ps]
    if sorted(cs) != sorted(edges) or sorted(order) != list(range(len(regions))):
        return False
    for j in range(1, len(cs) + 1):
        remaining = set(edges) - set(cs[:j])
        adj = {r: set() for r in range(len(regions))}
        for e in remaining:
            a, b = edges[e]
            adj[a].add(b)
            adj[b].add(a)
        isolated = {r for r in adj if not adj[r]}
        # the first j regions are cut off, the rest stays connected
        if not set(order[:j]) <= isolated:
            return False
        rest = order[j:]
        seen, stack = {rest[0]}, [rest[0]]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != set(rest):
            return False
    return True


def contract_vertex(n: int, kept: Sequence[int], v: int) -> int:
    """Image of vertex ``v`` after contracting every side not in ``kept``.

    Contracted vertex ``t`` sits between kept sides ``kept[t]`` and
    ``kept[t+1]``; ``v`` lands after the last kept side at or before it.
    """
    kept_set = set(kept)
    s = v
    for _ in range(n):
        if s in kept_set:
            return sorted(kept).index(s)
        s = (s - 1) % n
    raise ValueError("no side kept")


def chord_contracts_to(c: Chord | tuple[int, int], kept: Sequence[int], n: int | None = None) -> tuple[int, int] | None:
    """Image chord in the polygon on ``kept`` sides, or None when it degenerates."""
    if isinstance(c, Chord):
        n, pair = c.n, c.vertices
    else:
        pair = c
    kept = sorted(kept)
    m = len(kept)
    if m < 3:
        raise ValueError("at least three sides must be kept")
    a, b = (contract_vertex(n, kept, v) for v in pair)
    if (b - a) % m in (0, 1, m - 1):
        return None
    return (min(a, b), max(a, b))
