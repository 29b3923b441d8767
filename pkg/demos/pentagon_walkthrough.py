"""A guided tour of the pentagon: dissections, chord monomials, residues, cobar.

Run with ``python3 demos/pentagon_walkthrough.py``.
"""

from dihedral_gravity.cobar import build_row, check_exactness
from dihedral_gravity.gravity import ChordMonomial, build_space, decomposition_map, delta_chord
from dihedral_gravity.polygon import dissections, subpolygons
from dihedral_gravity.series import brown_betti_series

N = 5

print(f"Dissections of the {N}-gon by number of chords:")
for k in range(N - 2):
    ds = dissections(N, k)
    print(f"  {k} chords: {len(ds)}  e.g. {list(ds[-1].pairs)}")

d = dissections(N, 1)[0]
print(f"\nCutting along {d.pairs[0]} leaves regions "
      + ", ".join(str(r.vertices) for r in subpolygons(N, d)))

print()
for k in range(N - 2):
    sp = build_space(N, k)
    print(f"Degree {k}: {len(sp.spanning_monomials)} chord monomials span a space of "
          f"dimension {sp.dim} ({len(sp.relation_kernel)} linear relations)")

print()
m = ChordMonomial.from_chords(N, [(0, 2), (0, 3)])
for c in [(0, 2), (0, 3)]:
    term = delta_chord(m, c)
    print(f"residue of {m.pairs} along {c}: coefficient {term.coeff}, "
          f"factors {[(reg.vertices, ids) for reg, ids in term.factors]}")

mat, rep = decomposition_map(build_space(N, 2), d)
print(f"\nResidue along {d.pairs[0]} in top degree: a {mat.rows}x{mat.cols} matrix, "
      f"{rep.relations_checked} relations mapped to zero")

print("\nCobar rows (dimensions, homology):")
for q in range(N - 2):
    rep = check_exactness(build_row(N, q))
    print(f"  q={q}: dims {rep.dims} homology {rep.homology}")
print(f"Brown Betti numbers from the generating series: {brown_betti_series(N)}")
