import pytest

from liftlab.exact import (
    ExactMatrix, Z2, Z4, ZZ, gf2_in_span, gf2_invert, gf2_nullspace,
    gf2_rank, gf2_row_reduce, gf2_solve, gf2_span_intersection, halve_even,
    mask_of, mat_add, mat_mul, mod_reduce, rank_z, rank_z2, scalar_mul,
    smith_normal_form, support_of,
)


def test_build_reduces_and_drops_zeros():
    a = ExactMatrix.build(Z2, 2, 2, [(0, 0, 1), (0, 0, 1), (1, 1, 3)])
    assert a.entries == ((1, 1, 1),)
    b = ExactMatrix.build(Z4, 1, 1, [(0, 0, 6)])
    assert b.entries == ((0, 0, 2),)


def test_bit_rows_round_trip():
    a = ExactMatrix.from_dense(Z2, [[1, 0, 1], [0, 1, 1]])
    assert a.bit_rows() == [0b101, 0b110]
    assert ExactMatrix.from_bit_rows(a.bit_rows(), 3) == a
    assert a.bit_cols() == [0b01, 0b10, 0b11]


def test_mask_helpers():
    assert mask_of([0, 3]) == 0b1001
    assert support_of(0b1001) == (0, 3)


def test_mat_mul_rings():
    a = ExactMatrix.from_dense(ZZ, [[1, 2], [3, -1]])
    b = ExactMatrix.from_dense(ZZ, [[0, 1], [1, 0]])
    assert mat_mul(a, b).to_dense() == [[2, 1], [-1, 3]]
    az4 = mod_reduce(a, 4)
    assert mat_mul(az4, mod_reduce(b, 4)).to_dense() == [[2, 1], [3, 3]]


def test_mod_reduce_and_halve_even():
    a = ExactMatrix.from_dense(ZZ, [[2, 3], [-1, 4]])
    assert mod_reduce(a, 2).to_dense() == [[0, 1], [1, 0]]
    even = ExactMatrix.from_dense(Z4, [[2, 0], [0, 2]])
    assert halve_even(even).to_dense() == [[1, 0], [0, 1]]
    with pytest.raises(ValueError, match=r"\(0,1\)"):
        halve_even(ExactMatrix.from_dense(Z4, [[2, 3], [0, 0]]))


def test_gf2_rank_and_nullspace():
    rows = [0b101, 0b110, 0b011]
    assert gf2_rank(rows, 3) == 2
    null = gf2_nullspace(rows, 3)
    assert len(null) == 1
    for r in rows:
        assert (r & null[0]).bit_count() % 2 == 0


def test_gf2_solve_consistent_and_not():
    rows = [0b011, 0b110]
    sol = gf2_solve(rows, [1, 1], 3)
    assert sol is not None
    particular, basis = sol
    assert (rows[0] & particular).bit_count() % 2 == 1
    assert len(basis) == 1
    # inconsistent: x0 = 0 and x0 = 1
    assert gf2_solve([0b001, 0b001], [0, 1], 3) is None


def test_gf2_invert():
    rows = [0b110, 0b011, 0b101]
    with pytest.raises(ValueError):
        gf2_invert(rows, 3)  # singular (rows sum to zero)
    rows = [0b11, 0b01]
    inv = gf2_invert(rows, 2)
    # check product is identity
    for i in range(2):
        for j in range(2):
            bit = 0
            for m in range(2):
                bit ^= ((rows[i] >> m) & 1) & ((inv[m] >> j) & 1)
            assert bit == (i == j)


def test_span_intersection():
    a = [0b011, 0b101]
    b = [0b110, 0b011]
    inter = gf2_span_intersection(a, b, 3)
    # both spans are 2-dimensional subspaces of the even-weight space
    assert gf2_rank(inter, 3) == 2
    for v in inter:
        assert gf2_in_span(v, a, 3) and gf2_in_span(v, b, 3)
    assert gf2_span_intersection([0b01], [0b10], 2) == []


def test_row_reduce_pivots_are_lowest_bits():
    red, pivots = gf2_row_reduce([0b110, 0b101, 0b011], 3)
    for row, p in zip(red, pivots):
        assert row & (1 << p)
        assert row % (1 << p) == 0


def test_smith_identity_and_diag():
    a = ExactMatrix.identity(ZZ, 3)
    s = smith_normal_form(a)
    assert s.invariant_factors == (1, 1, 1)
    assert s.torsion() == ()


def test_smith_torsion_circulant():
    # det 2: the mod-2 circulant with zero diagonal
    a = ExactMatrix.from_dense(ZZ, [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    s = smith_normal_form(a)
    assert s.invariant_factors == (1, 1, 2)
    assert s.torsion() == (2,)
    assert rank_z(a) == 3
    assert rank_z2(mod_reduce(a, 2)) == 2


def test_smith_transforms_reconstruct():
    a = ExactMatrix.from_dense(ZZ, [[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    s = smith_normal_form(a, transforms=True)
    prod = mat_mul(mat_mul(s.left_transform, a), s.right_transform)
    dense = prod.to_dense()
    for i in range(3):
        for j in range(3):
            want = s.invariant_factors[i] if (i == j and i < s.rank) else 0
            assert dense[i][j] == want
    # divisibility chain
    for f, g in zip(s.invariant_factors, s.invariant_factors[1:]):
        assert g % f == 0


def test_matrix_ops_shape_errors():
    a = ExactMatrix.zeros(Z2, 2, 3)
    b = ExactMatrix.zeros(Z2, 2, 3)
    with pytest.raises(ValueError):
        mat_mul(a, b)
    assert mat_add(a, b).is_zero()
    assert scalar_mul(3, a).is_zero()
