"""Chord-monomial model of the dihedral gravity cooperad (desuspended).

``C(n)_k`` is the degree-k cohomology of M_{0,n}, presented by wedge
monomials in chord forms.  Monomials are stored as sorted tuples of global
chord ids with an integer coefficient.  A space keeps its spanning monomials
ordered by (residual count, chord ids), so the leftmost pivot columns of the
evaluation matrix form a basis adapted to the residual filtration.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from . import cache
from . import arnold
from .arnold import betti_moduli, eval_columns, sort_sign
from .exactla import RationalMatrix, column_coordinates, pivot_columns, rank
from .polygon import (
    Chord,
    Dissection,
    SubPolygon,
    _subpolygons,
    admissible_ordering,
    chord_contracts_to,
    chord_index,
    chord_table,
    crossing_table,
    dissections,
    residual_ids,
    split_by_chord,
)


@dataclass(frozen=True)
class ChordMonomial:
    """``coeff * omega_{c_1} ^ ... ^ omega_{c_k}`` with chord ids sorted."""

    n: int
    chord_ids: tuple[int, ...]
    coeff: int = 1

    @classmethod
    def from_chords(cls, n: int, cs: Iterable, coeff: int = 1) -> "ChordMonomial":
        """Build from chords, pairs or ids in wedge order; the sort sign goes to ``coeff``."""
        idx = chord_index(n)
        ids = []
        for c in cs:
            if isinstance(c, Chord):
                if c.n != n:
                    raise ValueError(f"chord of a {c.n}-gon in a {n}-gon monomial")
                ids.append(idx[c.vertices])
            elif isinstance(c, tuple):
                ids.append(idx[tuple(sorted(c))])
            else:
                ids.append(int(c))
        s, ordered = sort_sign(ids)
        return cls(n, ordered if s else tuple(ids), coeff * s)

    @property
    def degree(self) -> int:
        return len(self.chord_ids)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        table = chord_table(self.n)
        return tuple(table[c] for c in self.chord_ids)

    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def residual(self) -> tuple[int, ...]:
        return residual_ids(self.n, self.chord_ids)


@dataclass(frozen=True)
class TensorTerm:
    """``coeff * X_0 (x) ... (x) X_r``; factor i is (region, local sorted chord ids)."""

    coeff: int
    factors: tuple[tuple[SubPolygon, tuple[int, ...]], ...]


def localize(region: SubPolygon, ids: Iterable[int]) -> tuple[int, ...]:
    """Global chord ids inside ``region`` -> chord ids of its standard polygon."""
    table = chord_table(region.n)
    local = chord_index(region.size)
    return tuple(sorted(local[region.relabel(table[c])] for c in ids))


def globalize(region: SubPolygon, ids: Iterable[int]) -> tuple[int, ...]:
    table = chord_table(region.size)
    glob = chord_index(region.n)
    return tuple(sorted(glob[region.unlabel(table[c])] for c in ids))


def _home(regions: Sequence[SubPolygon], pair: tuple[int, int]) -> int:
    for r, reg in enumerate(regions):
        if reg.contains_pair(pair):
            return r
    raise ValueError(f"chord {pair} lies in no region")  # pragma: no cover


def delta_chord(m: ChordMonomial, c: Chord | tuple[int, int] | int) -> TensorTerm | None:
    """Residue along one chord: ``X_0 ^ w_c ^ X_1 -> X_0 (x) X_1``, or None for zero."""
    n = m.n
    if isinstance(c, Chord):
        if c.n != n:
            raise ValueError(f"chord of a {c.n}-gon applied to a {n}-gon monomial")
        cid = chord_index(n)[c.vertices]
    elif isinstance(c, tuple):
        cid = chord_index(n)[tuple(sorted(c))]
    else:
        cid = c
    if m.coeff == 0 or cid not in m.chord_ids:
        return None
    if crossing_table(n)[cid] & set(m.chord_ids):
        return None
    table = chord_table(n)
    p0, p1 = split_by_chord(n, table[cid])
    rest = [x for x in m.chord_ids if x != cid]
    x0 = [x for x in rest if p0.contains_pair(table[x])]
    x1 = [x for x in rest if not p0.contains_pair(table[x])]
    s, _ = sort_sign(x0 + [cid] + x1)
    return TensorTerm(m.coeff * s, ((p0, localize(p0, x0)), (p1, localize(p1, x1))))


def delta_dissection(m: ChordMonomial, d: Dissection, ordering: Sequence[int] | None = None) -> TensorTerm | None:
    """Residue along every chord of ``d``; factors in canonical region order.

    Chords are contracted out of the wedge one at a time in ``ordering``
    (default: the canonical admissible ordering).  Writing the result as
    ``s * w_{c_1} ^ ... ^ w_{c_r} ^ X_0 ^ ... ^ X_r`` (chords of d sorted,
    X_i the remaining chords of region i), the value is
    ``s * kappa * X_0 (x) ... (x) X_r`` where kappa multiplies, over c in d,
    ``(-1)^(chords of X lying in the first side of c)``.  For one chord this
    is exactly ``delta_chord``.
    """
    n = m.n
    if d.n != n:
        raise ValueError("dissection and monomial live on different polygons")
    if not d.chord_ids:
        raise ValueError("need a non-empty dissection")
    ids = set(m.chord_ids)
    if m.coeff == 0 or not set(d.chord_ids) <= ids:
        return None
    cross = crossing_table(n)
    if any(cross[c] & ids for c in d.chord_ids):
        return None
    if ordering is None:
        ordering = admissible_ordering(d)[0]
    if sorted(ordering) != list(d.chord_ids):
        raise ValueError("ordering must list the chords of the dissection")
    coeff = m.coeff
    wedge = list(m.chord_ids)
    for c in ordering:
        pos = wedge.index(c)
        if pos % 2:
            coeff = -coeff
        wedge.pop(pos)
    coeff *= sort_sign(list(ordering))[0]
    table = chord_table(n)
    regions = _subpolygons(n, d.chord_ids)
    keyed = [(_home(regions, table[x]), x) for x in wedge]
    coeff *= sort_sign(keyed)[0]
    for c in d.chord_ids:
        first = split_by_chord(n, table[c])[0]
        if sum(first.contains_pair(table[x]) for x in wedge) % 2:
            coeff = -coeff
    factors = tuple(
        (reg, localize(reg, [x for h, x in keyed if h == r])) for r, reg in enumerate(regions)
    )
    return TensorTerm(coeff, factors)


# ---------------------------------------------------------------------------
# spaces


class GravitySpace:
    """Degree-k piece of C(n), presented by all k-subsets of chords."""

    def __init__(self, n: int, k: int, sign: int = 1):
        if n < 3 or not 0 <= k <= n - 3:
            raise ValueError(f"no degree {k} for n = {n}")
        self.n, self.k, self.sign = n, k, sign
        nch = len(chord_table(n))
        monos = list(combinations(range(nch), k))
        counts = {mono: len(residual_ids(n, mono)) for mono in monos}
        monos.sort(key=lambda mono: (counts[mono], mono))
        self.spanning_monomials: list[tuple[int, ...]] = monos
        self.residual_counts: list[int] = [counts[mono] for mono in monos]
        self.index = {mono: i for i, mono in enumerate(monos)}
        self._eval: RationalMatrix | None = None
        self._pivots: list[int] | None = None
        self._coords: list[dict[int, Fraction]] | None = None
        self._lock = threading.Lock()

    @property
    def eval_matrix(self) -> RationalMatrix:
        if self._eval is None:
            vals = eval_columns(self.n, self.k, self.spanning_monomials, self.sign)
            rows, cols = vals.shape
            ent = {}
            for r in range(rows):
                row = vals[r]
                for c in row.nonzero()[0]:
                    ent[(r, int(c))] = int(row[c])
            self._eval = RationalMatrix(rows, cols, ent)
        return self._eval

    @property
    def pivot_basis(self) -> list[int]:
        """Leftmost spanning-monomial columns forming a basis of the image."""
        if self._pivots is None:
            with self._lock:
                if self._pivots is None:
                    self._pivots = self._load_or_find_pivots()
        return self._pivots

    def _load_or_find_pivots(self) -> list[int]:
        key = self._cache_key()
        stored = cache.load(key)
        if stored is not None and self._pivots_valid(stored):
            return list(stored)
        piv = pivot_columns(self.eval_matrix)
        cache.store(key, piv)
        return piv

    def _cache_key(self) -> str:
        return f"pivots-n{self.n}-k{self.k}-s{self.sign}"

    def _pivots_valid(self, piv) -> bool:
        if not isinstance(piv, list) or len(piv) != betti_moduli(self.n)[self.k]:
            return False
        if any(not isinstance(c, int) or not 0 <= c < len(self.spanning_monomials) for c in piv):
            return False
        sub = eval_columns(self.n, self.k, [self.spanning_monomials[c] for c in piv], self.sign)
        ent = {(r, c): int(sub[r, c]) for r in range(sub.shape[0]) for c in range(sub.shape[1]) if sub[r, c]}
        return rank(RationalMatrix(sub.shape[0], sub.shape[1], ent)) == len(piv)

    @property
    def coords(self) -> list[dict[int, Fraction]]:
        """Coordinates of every spanning monomial in the pivot basis (by pivot position)."""
        if self._coords is None:
            with self._lock:
                if self._coords is None:
                    piv, coords = column_coordinates(self.eval_matrix)
                    if self._pivots is not None and self._pivots != piv:  # pragma: no cover
                        raise RuntimeError("cached pivots disagree with elimination")
                    if self._pivots is None:
                        cache.store(self._cache_key(), piv)
                    self._pivots = piv
                    self._coords = coords
        return self._coords

    @property
    def dim(self) -> int:
        return len(self.pivot_basis)

    @property
    def relation_kernel(self) -> list[dict[int, Fraction]]:
        """Kernel of the evaluation matrix, one vector per non-pivot monomial."""
        coords = self.coords
        piv = self.pivot_basis
        pivset = set(piv)
        out = []
        for f in range(len(self.spanning_monomials)):
            if f in pivset:
                continue
            vec = {f: Fraction(1)}
            for pos, v in coords[f].items():
                vec[piv[pos]] = -v
            out.append(vec)
        return out

    def coordinates(self, ids: Sequence[int], coeff=1) -> dict[int, Fraction]:
        """Pivot coordinates of ``coeff * omega_ids`` (any order, repeats give zero)."""
        s, key = sort_sign(list(ids))
        if s == 0 or coeff == 0:
            return {}
        return {p: v * s * coeff for p, v in self.coords[self.index[key]].items()}

    def pivot_residuals(self) -> list[int]:
        return [self.residual_counts[c] for c in self.pivot_basis]

    def filtration_dims(self) -> list[int]:
        """``dim R_r`` for r = 0..n-3."""
        res = self.pivot_residuals()
        return [sum(1 for x in res if x <= r) for r in range(self.n - 2)]

    def r0_positions(self) -> list[int]:
        return [p for p, x in enumerate(self.pivot_residuals()) if x == 0]

    def __repr__(self):
        return f"GravitySpace(n={self.n}, k={self.k}, dim={self.dim})"


_registry: dict[tuple[int, int, int], GravitySpace] = {}
_registry_lock = threading.Lock()


def build_space(n: int, k: int, sign: int = 1) -> GravitySpace:
    """Shared, lazily evaluated space for (n, k, chord-form sign)."""
    key = (n, k, sign)
    with _registry_lock:
        sp = _registry.get(key)
        if sp is None:
            sp = GravitySpace(n, k, sign)
            _registry[key] = sp
    return sp


def clear_registry() -> None:
    """Drop memoized spaces and nbc bases, so the next build rereads the disk cache."""
    with _registry_lock:
        _registry.clear()
    arnold._nbc_sets.cache_clear()
    arnold.nbc_index.cache_clear()


# ---------------------------------------------------------------------------
# tensor layouts


@dataclass
class TensorLayout:
    """Direct sum over keys of tensor products; coordinates are mixed-radix."""

    blocks: list[tuple[object, tuple[int, ...], int, tuple[int, ...]]]
    size: int

    def __post_init__(self):
        self._where = {(key, md): (off, dims) for key, md, off, dims in self.blocks}

    def index(self, key, md: tuple[int, ...], positions: Sequence[int]) -> int:
        off, dims = self._where[(key, md)]
        idx = 0
        for p, d in zip(positions, dims):
            idx = idx * d + p
        return off + idx

    def elements(self):
        for key, md, off, dims in self.blocks:
            for pos in product(*(range(d) for d in dims)):
                yield key, md, pos


def multidegrees(sizes: Sequence[int], total: int) -> list[tuple[int, ...]]:
    ranges = [range(s - 2) for s in sizes]
    return [md for md in product(*ranges) if sum(md) == total]


def _layout(n: int, ds: Sequence[Dissection], total: int, basis_size) -> TensorLayout:
    blocks, off = [], 0
    for d in ds:
        sizes = [reg.size for reg in _subpolygons(n, d.chord_ids)]
        for md in multidegrees(sizes, total):
            dims = tuple(basis_size(s, k) for s, k in zip(sizes, md))
            blocks.append((d.chord_ids, md, off, dims))
            count = 1
            for x in dims:
                count *= x
            off += count
    return TensorLayout(blocks, off)


def tensor_coordinates(parts: Sequence[Mapping[int, Fraction]]) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {(): Fraction(1)}
    for part in parts:
        out = {key + (p,): v * w for key, v in out.items() for p, w in part.items()}
    return out


def full_layout(n: int, ds: Sequence[Dissection], total: int, sign: int = 1) -> TensorLayout:
    return _layout(n, ds, total, lambda s, k: build_space(s, k, sign).dim)


def r0_layout(n: int, ds: Sequence[Dissection], total: int, sign: int = 1) -> TensorLayout:
    return _layout(n, ds, total, lambda s, k: len(build_space(s, k, sign).r0_positions()))


# ---------------------------------------------------------------------------
# decomposition maps


@dataclass
class WellDefinedReport:
    n: int
    k: int
    chord_ids: tuple[int, ...]
    relations_checked: int
    failures: list[int]

    @property
    def ok(self) -> bool:
        return not self.failures


def _term_coordinates(term: TensorTerm | None, sign: int) -> dict[tuple[int, ...], Fraction]:
    if term is None or any(len(ids) > reg.size - 3 for reg, ids in term.factors):
        return {}
    parts = [
        build_space(reg.size, len(ids), sign).coordinates(ids) for reg, ids in term.factors
    ]
    return {key: term.coeff * v for key, v in tensor_coordinates(parts).items()}


def _delta_image(src: GravitySpace, d: Dissection, col: int, layout: TensorLayout) -> dict[int, Fraction]:
    mono = ChordMonomial(src.n, src.spanning_monomials[col])
    term = delta_dissection(mono, d)
    if term is None or any(len(ids) > reg.size - 3 for reg, ids in term.factors):
        return {}
    md = tuple(len(ids) for _, ids in term.factors)
    out: dict[int, Fraction] = {}
    for pos, v in _term_coordinates(term, src.sign).items():
        i = layout.index(d.chord_ids, md, pos)
        out[i] = out.get(i, 0) + v
    return out


def decomposition_map(src: GravitySpace, d: Dissection, check: bool = True) -> tuple[RationalMatrix, WellDefinedReport | None]:
    """Matrix of the residue along ``d`` on pivot coordinates, plus a report that
    every relation among spanning monomials maps to zero."""
    layout = full_layout(src.n, [d], src.k - len(d), src.sign)
    cols = [_delta_image(src, d, c, layout) for c in src.pivot_basis]
    mat = RationalMatrix.from_columns(layout.size, cols)
    report = None
    if check:
        piv = src.pivot_basis
        pivset = set(piv)
        failures = []
        checked = 0
        for f, coords in enumerate(src.coords):
            if f in pivset:
                continue
            checked += 1
            image = _delta_image(src, d, f, layout)
            for pos, v in coords.items():
                for i, w in cols[pos].items():
                    image[i] = image.get(i, 0) - v * w
            if any(image.values()):
                failures.append(f)
        report = WellDefinedReport(src.n, src.k, d.chord_ids, checked, failures)
    return mat, report


def well_definedness(n: int, sign: int = 1) -> list[WellDefinedReport]:
    """Run the relation check for every single chord and every degree."""
    out = []
    for k in range(1, n - 2):
        src = build_space(n, k, sign)
        for d in dissections(n, 1):
            out.append(decomposition_map(src, d)[1])
    return out


@dataclass
class ResidualFiltration:
    n: int
    dims: dict[int, list[int]]  # degree -> dim R_r for r = 0..n-3

    def graded(self, k: int) -> list[int]:
        r = self.dims[k]
        return [r[0]] + [r[i] - r[i - 1] for i in range(1, len(r))]


def residual_filtration(n: int, sign: int = 1) -> ResidualFiltration:
    return ResidualFiltration(n, {k: build_space(n, k, sign).filtration_dims() for k in range(n - 2)})


# ---------------------------------------------------------------------------
# pullback along side contraction


def matching_sides(region: SubPolygon, choice: str = "first") -> dict[tuple[int, int], int]:
    """For each chord-side of ``region``, a side of the cut-off component beyond it."""
    n = region.n
    out = {}
    for a, b in region.chord_sides:
        inner = list(range(a + 1, b + 1))
        outer = [s % n for s in range(b + 1, a + n + 1)]
        comp = outer if set(region.vertices) <= set(range(a, b + 1)) else inner
        out[(a, b)] = min(comp) if choice == "first" else max(comp)
    return out


def _contraction(region: SubPolygon, matching: Mapping[tuple[int, int], int]):
    images = [val if kind == "side" else matching[val] for kind, val in region.edges]
    kept = sorted(images)
    rho = [kept.index(s) for s in images]
    return kept, rho


def psi_pullback(region: SubPolygon, local_ids: Sequence[int], matching: Mapping | None = None, coeff: int = 1) -> dict[tuple[int, ...], int]:
    """Pull a sub-polygon monomial back to the n-gon by contracting the sides
    beyond each chord-side down to its matching side.

    Returns ``{sorted global chord ids: coefficient}``.
    """
    if matching is None:
        matching = matching_sides(region)
    n, size = region.n, region.size
    kept, rho = _contraction(region, matching)
    local = chord_table(size)
    fibers = []
    for lid in local_ids:
        x, y = local[lid]
        target = tuple(sorted((rho[x], rho[y])))
        fibers.append(
            [g for g, pair in enumerate(chord_table(n)) if chord_contracts_to(pair, kept, n) == target]
        )
    out: dict[tuple[int, ...], int] = {}
    for choice in product(*fibers):
        s, key = sort_sign(list(choice))
        if s:
            out[key] = out.get(key, 0) + s * coeff
    return {k: v for k, v in out.items() if v}


def _expand_wedge(parts: Sequence[Mapping[tuple[int, ...], int]]) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = {(): 1}
    for part in parts:
        nxt: dict[tuple[int, ...], int] = {}
        for a, v in out.items():
            for b, w in part.items():
                s, key = sort_sign(list(a) + list(b))
                if s:
                    nxt[key] = nxt.get(key, 0) + s * v * w
        out = {k: v for k, v in nxt.items() if v}
    return out


# ---------------------------------------------------------------------------
# Phi and Psi


def _gr_positions(space: GravitySpace, r: int) -> list[int]:
    return [p for p, x in enumerate(space.pivot_residuals()) if x == r]


def phi_map(n: int, r: int, k: int, sign: int = 1) -> RationalMatrix:
    """gr_r C(n)_k -> sum over r-chord dissections of R_0 tensor products."""
    space = build_space(n, k, sign)
    ds = dissections(n, r)
    layout = r0_layout(n, ds, k - r, sign)
    cols = []
    for p in _gr_positions(space, r):
        mono = ChordMonomial(n, space.spanning_monomials[space.pivot_basis[p]])
        col: dict[int, Fraction] = {}
        for d in ds:
            if d.chord_ids:
                term = delta_dissection(mono, d)
            else:
                term = TensorTerm(1, ((SubPolygon(n, tuple(range(n))), mono.chord_ids),))
            if term is None or any(len(ids) > reg.size - 3 for reg, ids in term.factors):
                continue
            md = tuple(len(ids) for _, ids in term.factors)
            parts = []
            for reg, ids in term.factors:
                sub = build_space(reg.size, len(ids), sign)
                where = {q: i for i, q in enumerate(sub.r0_positions())}
                c = sub.coordinates(ids)
                if any(q not in where for q in c):
                    raise ArithmeticError("residue of a graded piece left R_0")
                parts.append({where[q]: v for q, v in c.items()})
            for pos, v in tensor_coordinates(parts).items():
                i = layout.index(d.chord_ids, md, pos)
                col[i] = col.get(i, 0) + term.coeff * v
        cols.append(col)
    return RationalMatrix.from_columns(layout.size, cols)


def psi_element(n: int, d: Dissection, factors: Sequence[tuple[int, ...]], matching_choice: str = "first", sign: int = 1) -> dict[tuple[int, ...], int]:
    """Psi of ``X_0 (x) ... (x) X_r`` (factors in canonical region order, local ids).

    Built as psi(X) ^ w_{c_1} ^ psi(X) ^ ... along the admissible ordering, and
    normalized so that its leading monomial has residue exactly the input.
    """
    regions = _subpolygons(n, d.chord_ids)
    if not d.chord_ids:
        return {tuple(factors[0]): 1}
    cs, ps = admissible_ordering(d)
    canon = {reg: i for i, reg in enumerate(regions)}
    parts, leading = [], []
    for j, reg in enumerate(ps):
        ids = factors[canon[reg]]
        parts.append(psi_pullback(reg, ids, matching_sides(reg, matching_choice)))
        leading.extend(globalize(reg, ids))
        if j < len(cs):
            parts.append({(cs[j],): 1})
            leading.append(cs[j])
    lead = ChordMonomial.from_chords(n, leading)
    term = delta_dissection(lead, d)
    if term is None or abs(term.coeff) != 1 or [ids for _, ids in term.factors] != [tuple(f) for f in factors]:
        raise ArithmeticError("leading monomial of Psi does not decompose to its input")
    lam = term.coeff
    return {key: lam * v for key, v in _expand_wedge(parts).items()}


def psi_map(n: int, r: int, k: int, matching_choice: str = "first", sign: int = 1) -> RationalMatrix:
    """Sum of R_0 tensor products -> gr_r C(n)_k, in the same bases as ``phi_map``."""
    space = build_space(n, k, sign)
    ds = dissections(n, r)
    layout = r0_layout(n, ds, k - r, sign)
    gr = _gr_positions(space, r)
    gr_index = {p: i for i, p in enumerate(gr)}
    res = space.pivot_residuals()
    cols = []
    by_key = {d.chord_ids: d for d in ds}
    for key, md, pos in layout.elements():
        d = by_key[key]
        regions = _subpolygons(n, key)
        factors = []
        for reg, kk, p in zip(regions, md, pos):
            sub = build_space(reg.size, kk, sign)
            factors.append(sub.spanning_monomials[sub.pivot_basis[sub.r0_positions()[p]]])
        elem = psi_element(n, d, factors, matching_choice, sign)
        vec: dict[int, Fraction] = {}
        for mono, v in elem.items():
            for q, w in space.coordinates(mono, v).items():
                vec[q] = vec.get(q, 0) + w
        if any(res[q] > r for q, v in vec.items() if v):
            raise ArithmeticError("Psi left the r-th residual filtration step")
        cols.append({gr_index[q]: v for q, v in vec.items() if v and res[q] == r})
    return RationalMatrix.from_columns(len(gr), cols)


@dataclass
class PhiReport:
    n: int
    r: int
    k: int
    gr_dim: int
    target_dim: int
    phi_rank: int
    phi_psi_identity: bool | None

    @property
    def ok(self) -> bool:
        return (
            self.gr_dim == self.target_dim == self.phi_rank
            and self.phi_psi_identity is not False
        )


def check_phi(n: int, r: int, k: int, with_psi: bool = True, matching_choice: str = "first", sign: int = 1) -> PhiReport:
    phi = phi_map(n, r, k, sign)
    target = phi.rows
    gr = phi.cols
    ident = None
    if with_psi:
        psi = psi_map(n, r, k, matching_choice, sign)
        ident = psi.shape == (gr, target) and (phi @ psi) == RationalMatrix.identity(target)
    return PhiReport(n, r, k, gr, target, rank(phi), ident)


def kunneth_r0_dim(n: int, r: int, k: int, sign: int = 1) -> int:
    """``sum_{d in Diss_r} prod dim R_0 C(p)_{k_p}`` over multidegrees."""
    return r0_layout(n, dissections(n, r), k - r, sign).size


# ---------------------------------------------------------------------------
# coradical filtration


@dataclass
class CoradicalReport:
    n: int
    rows: list[dict]  # one per (degree j, step k)
    filtration_failures: list[tuple]

    @property
    def ok(self) -> bool:
        return not self.filtration_failures and all(row["equal"] for row in self.rows)


def coradical_check(n: int, sign: int = 1) -> CoradicalReport:
    """Compare ``F_k = cap ker(Delta_d), |d| = k+1`` with ``R_k`` in every degree."""
    rows = []
    for j in range(n - 2):
        space = build_space(n, j, sign)
        res = space.pivot_residuals()
        for k in range(n - 2):
            ds = dissections(n, k + 1)
            stacked: dict[tuple[int, int], Fraction] = {}
            offset = 0
            for d in ds:
                if j < len(d):
                    continue
                mat, _ = decomposition_map(space, d, check=False)
                for (a, b), v in mat.entries.items():
                    stacked[(offset + a, b)] = v
                offset += mat.rows
            big = RationalMatrix(offset, space.dim, stacked)
            f_dim = space.dim - rank(big)
            r_dim = sum(1 for x in res if x <= k)
            contained = all(b not in {p for p, x in enumerate(res) if x <= k} for (_, b) in big.entries)
            rows.append({"degree": j, "k": k, "F": f_dim, "R": r_dim, "equal": f_dim == r_dim and contained})
    return CoradicalReport(n, rows, filtration_compatibility(n, sign))


def filtration_compatibility(n: int, sign: int = 1) -> list[tuple]:
    """Monomial-level check that residues drop the residual count by |d|."""
    failures = []
    nch = len(chord_table(n))
    for j in range(1, n - 2):
        for mono_ids in combinations(range(nch), j):
            mono = ChordMonomial(n, mono_ids)
            res = len(mono.residual)
            for size in range(1, j + 1):
                for d in dissections(n, size):
                    term = delta_dissection(mono, d)
                    if term is None:
                        continue
                    total = sum(len(residual_ids(reg.size, ids)) for reg, ids in term.factors)
                    if total > res - len(d):
                        failures.append((mono_ids, d.chord_ids))
    return failures
