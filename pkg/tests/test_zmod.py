import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricert.errors import DimensionError, ImNotInKerError
from tricert.zmod import (ZModMatrix, howell_form, kernel, reduce_vector,
                          smith_normal_form, solve, solve_matrix, span_contains,
                          subgroup_order)
from tricert.abgroup import Coset, coset_reduce, subquotient


def mat4(rows):
    return ZModMatrix.from_rows(4, rows)


# ----------------------------------------------------------------------
# Smith normal form


def test_snf_already_diagonal_single_two():
    sf = smith_normal_form(mat4([[2]]))
    assert sf.diagonal == (2,)
    assert sf.verify(mat4([[2]]))


def test_snf_upper_triangular_unit_catches_lift():
    # the integer lift has invariant factors 1, 4, so mod 4 the diagonal
    # must come out (1, 0)
    m = mat4([[2, 1], [0, 2]])
    sf = smith_normal_form(m)
    assert sf.diagonal == (1, 0)
    assert sf.verify(m)


def test_snf_diag_two_two():
    m = mat4([[2, 0], [0, 2]])
    assert smith_normal_form(m).diagonal == (2, 2)


@st.composite
def zmod_matrices(draw, max_dim=6):
    modulus = draw(st.sampled_from([2, 4]))
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    entries = draw(st.lists(st.integers(0, modulus - 1), min_size=rows * cols,
                            max_size=rows * cols))
    return ZModMatrix(modulus, rows, cols, entries)


@given(zmod_matrices())
@settings(max_examples=200, deadline=None)
def test_snf_properties(m):
    sf = smith_normal_form(m)
    assert sf.verify(m)
    allowed = {1, 2, 0} if m.modulus == 4 else {1, 0}
    assert set(sf.diagonal) <= allowed
    order = {1: 0, 2: 1, 0: 2}
    assert all(order[a] <= order[b] for a, b in zip(sf.diagonal, sf.diagonal[1:]))


@given(zmod_matrices(max_dim=4))
@settings(max_examples=100, deadline=None)
def test_snf_invariant_factors_match_integer_lift(m):
    # oracle: the cokernel of [M | mI] over the integers has the same
    # invariant factors as the cokernel of the diagonal mod m
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import invariant_factors
    lift = sympy.Matrix(m.rows, m.cols + m.rows,
                        lambda i, j: int(m[i, j]) if j < m.cols
                        else (m.modulus if j - m.cols == i else 0))
    oracle = sorted(int(f) for f in invariant_factors(lift) if int(f) not in (0, 1))
    sf = smith_normal_form(m)
    diag = list(sf.diagonal) + [0] * (m.rows - min(m.rows, m.cols))
    # the cokernel factor of a diagonal entry d over Z/m is Z/d (Z/m for d = 0)
    mine = sorted(d if d else m.modulus for d in diag
                  if (d if d else m.modulus) > 1)
    assert mine == oracle


def test_invertibility_iff_mod2_invertible_exhaustive_2x2():
    # brute-force oracle: search for a two-sided inverse among all 2x2s
    all_mats = [ZModMatrix(4, 2, 2, e) for e in itertools.product(range(4), repeat=4)]
    ident = ZModMatrix.identity(4, 2)
    for m in all_mats:
        brute = any((m @ x == ident and x @ m == ident) for x in all_mats)
        assert m.is_invertible() == brute


# ----------------------------------------------------------------------
# solve


def test_solve_two_x_equals_two():
    res = solve(mat4([[2]]), ZModMatrix.column(4, [2]))
    assert res.x.entries == (1,)
    assert howell_form(res.kernel) == howell_form(mat4([[2]]))


def test_solve_parity_obstruction():
    res = solve(mat4([[2]]), ZModMatrix.column(4, [1]))
    assert res.x is None
    assert "2" in res.inconsistency


def test_solve_rank_deficient_system():
    a = mat4([[1, 2], [0, 0]])
    res = solve(a, ZModMatrix.column(4, [3, 0]))
    assert res.x.entries == (3, 0)
    assert (a @ res.x).entries == (3, 0)
    # kernel is spanned by (2, 1); (2, 3) generates the same subgroup
    assert howell_form(res.kernel) == howell_form(mat4([[2], [1]]))
    assert span_contains(howell_form(res.kernel), ZModMatrix.column(4, [2, 3]))


@pytest.mark.parametrize("modulus", [2, 4])
def test_solve_random_consistent_systems(modulus):
    rng = random.Random(11)
    for _ in range(100):
        a = ZModMatrix.random(modulus, rng.randint(1, 5), rng.randint(1, 5), rng)
        x0 = ZModMatrix.random(modulus, a.cols, 1, rng)
        res = solve(a, a @ x0)
        assert res.x is not None
        assert a @ res.x == a @ x0
        # anything in the kernel span solves the homogeneous system
        if res.kernel.cols:
            combo = res.kernel @ ZModMatrix.random(modulus, res.kernel.cols, 1, rng)
            assert (a @ combo).is_zero()


def test_solve_matrix_joint():
    a = mat4([[1, 2], [1, 3]])
    b = ZModMatrix.identity(4, 2)
    x, _ = solve_matrix(a, b)
    assert a @ x == b
    # a matrix singular mod 2 admits no inverse
    x2, _ = solve_matrix(mat4([[2, 1], [0, 2]]), b)
    assert x2 is None


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionError):
        solve(mat4([[1, 2]]), ZModMatrix.column(4, [1, 2]))


# ----------------------------------------------------------------------
# Howell forms and cosets


def test_howell_is_canonical_for_the_span():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 4)
        g = ZModMatrix.random(4, n, rng.randint(1, 4), rng)
        # shuffle columns and mix in redundant combinations
        perm = list(range(g.cols))
        rng.shuffle(perm)
        extra = g @ ZModMatrix.random(4, g.cols, 2, rng)
        g2 = ZModMatrix.from_numpy(4, np.hstack([g.np[:, perm], extra.np]))
        assert howell_form(g) == howell_form(g2)


def test_howell_order_and_membership():
    g = mat4([[2, 0], [0, 2]])
    h = howell_form(g)
    assert subgroup_order(h) == 4
    assert span_contains(h, ZModMatrix.column(4, [2, 2]))
    assert not span_contains(h, ZModMatrix.column(4, [1, 0]))


def test_coset_reduce_examples():
    three = Coset.free(1, mat4([[2]]), ZModMatrix.column(4, [3]))
    assert three.rep.entries == (1,)
    full = Coset.free(1, mat4([[1]]), ZModMatrix.column(4, [0]))
    assert full.rep.entries == (0,) and full.is_zero()
    two = Coset.free(1, mat4([[2]]), ZModMatrix.column(4, [2]))
    assert two.is_zero()
    assert coset_reduce(three) == three


def test_coset_equality_is_presentation_independent():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 3)
        g = ZModMatrix.random(4, n, rng.randint(0, 3), rng)
        v = ZModMatrix.random(4, n, 1, rng)
        # translate the representative by a subgroup element
        shift = g @ ZModMatrix.random(4, g.cols, 1, rng) if g.cols else \
            ZModMatrix.zeros(4, n, 1)
        c1 = Coset.free(n, g, v)
        c2 = Coset.free(n, g, v + shift)
        assert c1 == c2
        assert c1.contains(v + shift)


# ----------------------------------------------------------------------
# subquotients


def test_subquotient_cyclic():
    sq = subquotient(mat4([[1]]), mat4([[2]]))
    assert sq.group.factors == (2,)
    assert sq.class_of(ZModMatrix.column(4, [3])).tolist() == [1]


def test_subquotient_free_quotient():
    sq = subquotient(ZModMatrix.identity(4, 2), ZModMatrix.zeros(4, 2, 0))
    assert sq.group.factors == (4, 4)


def test_subquotient_diagonal_kernel():
    sq = subquotient(mat4([[1], [1]]), mat4([[2], [2]]))
    assert sq.group.factors == (2,)


def test_subquotient_rejects_bad_image():
    with pytest.raises(ImNotInKerError):
        subquotient(mat4([[2]]), mat4([[1]]))


def test_subquotient_order_identity():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.randint(1, 4)
        k = ZModMatrix.random(4, n, rng.randint(0, 4), rng)
        im = k @ ZModMatrix.random(4, k.cols, rng.randint(0, 3), rng) if k.cols \
            else ZModMatrix.zeros(4, n, 0)
        sq = subquotient(k, im)
        ker_order = subgroup_order(howell_form(k))
        im_order = subgroup_order(howell_form(im))
        assert ker_order == im_order * sq.group.order


def test_subquotient_class_map_round_trip():
    rng = random.Random(13)
    for _ in range(50):
        n = rng.randint(1, 4)
        k = ZModMatrix.random(4, n, rng.randint(1, 4), rng)
        im = k @ ZModMatrix.random(4, k.cols, rng.randint(0, 2), rng)
        sq = subquotient(k, im)
        for cls in sq.group.elements():
            rep = sq.rep_of(cls)
            assert sq.class_of(rep).tolist() == list(cls)


def test_matrix_json_round_trip():
    m = mat4([[2, 1], [0, 3]])
    again = ZModMatrix.from_json_obj(m.to_json_obj())
    assert again == m
    with pytest.raises(DimensionError):
        ZModMatrix.from_json_obj({"modulus": 4, "rows": 2, "cols": 2,
                                  "entries": [1, 2, 3]})
