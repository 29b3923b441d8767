"""Rows of the residue spectral sequence as explicit finite complexes.

Row q has ``V_p = sum_{d in Diss_p} H^{q-p}(M(d))`` for p = 0..q, where
``M(d)`` is the product of the moduli spaces of the regions of d.  An element
is written as one global wedge ``Y = X_0 ^ ... ^ X_p`` of the factor monomials
(regions in canonical order).  The differential sends ``(d, Y)`` to the sum
over chords c of Y crossed by no other chord of Y of ``(d + c, iota_c Y)``,
where ``iota_c`` moves ``omega_c`` to the front of the wedge and drops it.
Contractions anticommute, so ``d o d = 0``; the constructor re-checks it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactla import FiniteComplex, RationalMatrix, homology_dims, rank
from .gravity import (
    TensorLayout,
    build_space,
    full_layout,
    globalize,
    localize,
    tensor_coordinates,
)
from .polygon import Dissection, _subpolygons, chord_table, crossing_table, dissections
from .arnold import betti_moduli, sort_sign


@dataclass
class CobarRow:
    n: int
    q: int
    layouts: list[TensorLayout]
    complex: FiniteComplex

    @property
    def dims(self) -> list[int]:
        return list(self.complex.spaces)

    @property
    def differentials(self) -> list[RationalMatrix]:
        return self.complex.differentials


def _position_dissections(n: int, p: int) -> list[Dissection]:
    return dissections(n, p) if p else [Dissection(n, ())]


def _factor_monomials(n: int, key: tuple[int, ...], md, pos, sign: int):
    regions = _subpolygons(n, key)
    out = []
    for reg, k, i in zip(regions, md, pos):
        sp = build_space(reg.size, k, sign)
        out.append(globalize(reg, sp.spanning_monomials[sp.pivot_basis[i]]))
    return out


def _differential(n: int, src: TensorLayout, dst: TensorLayout, sign: int) -> RationalMatrix:
    cross = crossing_table(n)
    table = chord_table(n)
    cols = []
    for key, md, pos in src.elements():
        wedge = [c for part in _factor_monomials(n, key, md, pos, sign) for c in part]
        members = set(wedge)
        col: dict[int, Fraction] = {}
        for t, c in enumerate(wedge):
            if cross[c] & members:
                continue
            rest = wedge[:t] + wedge[t + 1:]
            new_key = tuple(sorted(key + (c,)))
            regions = _subpolygons(n, new_key)
            keyed = []
            for x in rest:
                home = next(r for r, reg in enumerate(regions) if reg.contains_pair(table[x]))
                keyed.append((home, x))
            s = sort_sign(keyed)[0] * (-1) ** t
            parts = []
            new_md = []
            for r, reg in enumerate(regions):
                ids = localize(reg, [x for h, x in keyed if h == r])
                new_md.append(len(ids))
                if len(ids) > reg.size - 3:
                    parts = None
                    break
                parts.append(build_space(reg.size, len(ids), sign).coordinates(ids))
            if parts is None:
                continue
            for tp, v in tensor_coordinates(parts).items():
                i = dst.index(new_key, tuple(new_md), tp)
                col[i] = col.get(i, 0) + s * v
        cols.append(col)
    return RationalMatrix.from_columns(dst.size, cols)


def build_row(n: int, q: int, sign: int = 1) -> CobarRow:
    """Row q of the residue spectral sequence; raises ComplexError if d o d != 0."""
    if n < 3 or not 0 <= q <= n - 3:
        raise ValueError(f"row q = {q} does not exist for n = {n}")
    layouts = [full_layout(n, _position_dissections(n, p), q - p, sign) for p in range(q + 1)]
    diffs = [_differential(n, layouts[p], layouts[p + 1], sign) for p in range(q)]
    return CobarRow(n, q, layouts, FiniteComplex([lay.size for lay in layouts], diffs))


@dataclass
class ExactnessReport:
    n: int
    q: int
    dims: list[int]
    homology: list[int]

    @property
    def kernel_at_zero(self) -> int:
        return self.homology[0]

    @property
    def exact(self) -> bool:
        return all(h == 0 for h in self.homology[1:])


def check_exactness(row: CobarRow) -> ExactnessReport:
    return ExactnessReport(row.n, row.q, row.dims, homology_dims(row.complex))


@lru_cache(maxsize=None)
def _kernel_at_zero(n: int, q: int, sign: int) -> int:
    if q == 0:
        return 1
    layouts = [full_layout(n, _position_dissections(n, p), q - p, sign) for p in (0, 1)]
    d0 = _differential(n, layouts[0], layouts[1], sign)
    return layouts[0].size - rank(d0)


def brown_betti_kernel(n: int, sign: int = 1) -> list[int]:
    """Betti numbers of Brown's moduli space as kernels of the first differential."""
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    return [_kernel_at_zero(n, q, sign) for q in range(n - 2)]


@dataclass
class CofreeReport:
    n: int
    generators: dict[int, list[int]]  # polygon size -> X dims by degree
    expected: list[int]
    assembled: list[int]

    @property
    def ok(self) -> bool:
        return self.expected == self.assembled


def _assemble(n: int, gens: dict[int, list[int]]) -> list[int]:
    out = [0] * (n - 2)
    for p in range(n - 2):
        for d in _position_dissections(n, p):
            sizes = [reg.size for reg in _subpolygons(n, d.chord_ids)]
            poly = [1]
            for s in sizes:
                x = gens[s]
                nxt = [0] * (len(poly) + len(x) - 1)
                for i, a in enumerate(poly):
                    for j, b in enumerate(x):
                        nxt[i + j] += a * b
                poly = nxt
            for k, v in enumerate(poly):
                if k + p < len(out):
                    out[k + p] += v
    return out


def cofree_generator_dims(n: int, method: str = "kernel", sign: int = 1) -> CofreeReport:
    """Cogenerator dimensions for all sizes up to n and the cofree dimension identity
    ``b_j(M_0,n) = sum_d sum prod dim X(p_i)`` over all dissections.

    ``method`` picks how X is computed: ``kernel`` (first cobar differential)
    or ``r0`` (bottom step of the residual filtration).
    """
    gens = {}
    for m in range(3, n + 1):
        if method == "kernel":
            gens[m] = brown_betti_kernel(m, sign)
        elif method == "r0":
            gens[m] = [build_space(m, k, sign).filtration_dims()[0] for k in range(m - 2)]
        else:
            raise ValueError(f"unknown method {method!r}")
    return CofreeReport(n, gens, betti_moduli(n), _assemble(n, gens))
