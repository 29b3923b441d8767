import pytest

from dihedral_gravity.arnold import betti_moduli
from dihedral_gravity.cobar import (
    brown_betti_kernel,
    build_row,
    check_exactness,
    cofree_generator_dims,
)
from dihedral_gravity.polygon import _subpolygons, all_dissections
from dihedral_gravity.series import brown_betti_series, euler_betti, kunneth_dim


def test_row_examples():
    assert build_row(5, 0).dims == [1]
    rep = check_exactness(build_row(4, 1))
    assert rep.dims == [2, 2] and rep.homology == [0, 0]
    rep = check_exactness(build_row(5, 1))
    assert rep.dims == [5, 5] and rep.homology == [0, 0]
    rep = check_exactness(build_row(5, 2))
    assert rep.dims == [6, 10, 5] and rep.kernel_at_zero == 1 and rep.exact
    with pytest.raises(ValueError):
        build_row(5, 3)


@pytest.mark.parametrize("n", range(3, 8))
def test_row_dims_match_kunneth(n):
    for q in range(n - 2):
        row = build_row(n, q)
        for p, dim in enumerate(row.dims):
            expected = sum(
                kunneth_dim([reg.size for reg in _subpolygons(n, d.chord_ids)], q - p)
                for d in all_dissections(n)
                if d.k == p
            )
            assert dim == expected


@pytest.mark.parametrize("n", range(3, 8))
def test_rows_are_exact(n):
    for q in range(n - 2):
        rep = check_exactness(build_row(n, q))
        assert rep.exact, rep


@pytest.mark.parametrize("n", range(3, 8))
def test_row_euler_characteristic(n):
    euler = euler_betti(n)
    for q in range(n - 2):
        dims = build_row(n, q).dims
        assert sum((-1) ** p * d for p, d in enumerate(dims)) == euler[q]


def test_brown_examples():
    assert brown_betti_kernel(3) == [1]
    assert brown_betti_kernel(4) == [1, 0]
    assert brown_betti_kernel(5) == [1, 0, 1]
    assert brown_betti_kernel(6) == [1, 0, 5, 4]


@pytest.mark.parametrize("n", range(3, 8))
def test_kernel_matches_series(n):
    assert brown_betti_kernel(n) == brown_betti_series(n)


def test_cofree_examples():
    rep = cofree_generator_dims(4)
    assert rep.generators[4] == [1, 0] and rep.assembled == [1, 2] and rep.ok
    assert cofree_generator_dims(6).generators[6][3] == 4


@pytest.mark.parametrize("n", range(3, 8))
def test_cofree_identity(n):
    for method in ("kernel", "r0"):
        rep = cofree_generator_dims(n, method)
        assert rep.ok and rep.expected == betti_moduli(n)
    assert cofree_generator_dims(n, "r0").generators == cofree_generator_dims(n).generators


def test_cofree_unknown_method():
    with pytest.raises(ValueError):
        cofree_generator_dims(4, "guess")


@pytest.mark.slow
def test_rows_at_eight():
    for q in range(6):
        build_row(8, q)  # raises if d o d != 0
    assert brown_betti_kernel(8) == brown_betti_series(8)


@pytest.mark.parametrize("n", range(3, 8))
def test_top_degree_generators_give_free_lie_count(n):
    # top-degree cogenerators, multiplied over regions and summed over dissections, give (n-2)!
    from math import factorial, prod

    gens = {m: brown_betti_series(m)[-1] for m in range(3, n + 1)}
    total = sum(prod(gens[reg.size] for reg in _subpolygons(n, d.chord_ids)) for d in all_dissections(n))
    assert total == factorial(n - 2) == betti_moduli(n)[-1]
    assert cofree_generator_dims(n).generators[n][-1] == gens[n]
