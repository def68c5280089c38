"""Multiplication tables, matrix families, and the affine composition rule."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from basiskit.errors import (
    BasiskitError,
    CayleyTableError,
    EnumerationCapExceeded,
    MembershipError,
    MixedGroups,
)
from basiskit.groups import (
    AffineTransform,
    MatrixGroup,
    affine_apply,
    boost_2d,
    compose,
    cyclic_group,
    dihedral_group,
    inverse,
    membership_check,
    permutation_matrix,
    quaternion_group,
    rotation_2d,
    symmetric_group,
    validate_cayley_table,
)
from basiskit.matrices import Matrix
from basiskit.scalars import APPROX, EXACT, approx

F = Fraction


# -- finite fixtures -----------------------------------------------------------


def test_fixture_orders():
    assert cyclic_group(2).order == 2
    assert cyclic_group(6).order == 6
    assert symmetric_group(3).order == 6
    assert dihedral_group(4).order == 8
    assert quaternion_group().order == 8


def test_cyclic_structure():
    z4 = cyclic_group(4)
    a = z4.element(1)
    assert (a * a).payload == 2
    assert (a * a * a * a).payload == 0
    assert a.inverse().payload == 3


def test_s3_is_not_abelian():
    s3 = symmetric_group(3)
    pairs = [
        (a, b)
        for a in s3.elements()
        for b in s3.elements()
        if not (a * b).eq_to(b * a)
    ]
    assert pairs, "expected at least one noncommuting pair"


def test_quaternion_relations():
    q8 = quaternion_group()
    names = list(q8.names)

    def by(name):
        return q8.element(names.index(name))

    i, j, k = by("i"), by("j"), by("k")
    assert (i * i).eq_to(by("-1"))
    assert (j * j).eq_to(by("-1"))
    assert (k * k).eq_to(by("-1"))
    assert (i * j).eq_to(k)
    assert (j * i).eq_to(by("-k"))
    assert (i * j * k).eq_to(by("-1"))


def test_dihedral_reflection_squares_to_identity():
    d4 = dihedral_group(4)
    for g in d4.elements():
        gg = g * g
        # rotations of order 4 exist; every reflection squares to e
        if g.payload >= 4:
            assert gg.payload == 0


def test_mixing_groups_rejected():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    with pytest.raises(MixedGroups):
        compose(z2, z2.element(1), z3.element(1))


# -- table validation ----------------------------------------------------------


def test_validate_rejects_non_closed():
    with pytest.raises(CayleyTableError) as err:
        validate_cayley_table([[0, 1], [1, 7]])
    kinds = [kind for kind, _ in err.value.violations]
    assert "not-closed" in kinds


def test_validate_rejects_missing_identity():
    # the constant table is closed and associative but has no identity
    with pytest.raises(CayleyTableError) as err:
        validate_cayley_table([[0, 0], [0, 0]])
    kinds = [kind for kind, _ in err.value.violations]
    assert "no-identity" in kinds


def test_swapped_identity_is_still_a_group():
    # 1 acts as the identity here; validation must find it
    group = validate_cayley_table([[1, 0], [0, 1]])
    assert group.identity_index == 1


def test_validate_reports_first_associativity_witness():
    # doctored 3-table: closed, has identity 0, but (1*1)*2 != 1*(1*2)
    table = [
        [0, 1, 2],
        [1, 2, 2],
        [2, 2, 1],
    ]
    with pytest.raises(CayleyTableError) as err:
        validate_cayley_table(table)
    by_kind = dict(err.value.violations)
    assert "not-associative" in by_kind
    a, b, c = by_kind["not-associative"]
    # lexicographically first failing triple
    for a2 in range(3):
        for b2 in range(3):
            for c2 in range(3):
                lhs = table[table[a2][b2]][c2]
                rhs = table[a2][table[b2][c2]]
                if lhs != rhs:
                    assert (a, b, c) == (a2, b2, c2)
                    return
    raise AssertionError("table is associative after all")


def test_validate_accepts_klein_four():
    table = [
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
    ]
    group = validate_cayley_table(table)
    assert group.order == 4
    assert group.identity_index == 0
    assert group.inverses == (0, 1, 2, 3)


def test_table_size_cap():
    n = 300
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    with pytest.raises(BasiskitError):
        validate_cayley_table(table)


# -- matrix families -----------------------------------------------------------


def test_gl_membership():
    gl2 = MatrixGroup.general_linear(2)
    ok, residual = membership_check(gl2, Matrix.from_rows([[1, 2], [3, 4]], EXACT))
    assert ok and residual == 0.0
    ok, _ = membership_check(gl2, Matrix.from_rows([[1, 2], [2, 4]], EXACT))
    assert not ok


def test_sl_membership_residual():
    sl2 = MatrixGroup.special_linear(2)
    ok, residual = membership_check(sl2, Matrix.from_rows([[2, 0], [0, 1]], EXACT))
    assert not ok
    assert residual == pytest.approx(1.0)
    ok, residual = membership_check(
        sl2, Matrix.from_rows([[2, 0], [0, F(1, 2)]], EXACT)
    )
    assert ok and residual == 0.0


def test_so_membership_is_the_metric_condition():
    so2 = MatrixGroup.metric_preserving(2, 0)
    ok, residual = membership_check(so2, rotation_2d(0.3))
    assert ok and residual < 1e-12
    # orientation-reversing isometries belong too: the predicate is
    # M^T eta M = eta, nothing else
    flip = Matrix.from_rows([[1.0, 0.0], [0.0, -1.0]], APPROX)
    ok, residual = membership_check(so2, flip)
    assert ok and residual == 0.0
    stretch = Matrix.from_rows([[2.0, 0.0], [0.0, 1.0]], APPROX)
    ok, residual = membership_check(so2, stretch)
    assert not ok and residual == pytest.approx(3.0)


def test_lorentz_boost_membership():
    so11 = MatrixGroup.metric_preserving(1, 1)
    ok, residual = membership_check(so11, boost_2d(0.7))
    assert ok and residual < 1e-12


def test_element_constructor_raises_with_residual():
    so2 = MatrixGroup.metric_preserving(2, 0)
    bad = Matrix.from_rows([[2.0, 0.0], [0.0, 1.0]], APPROX)
    with pytest.raises(MembershipError) as err:
        so2.element(bad)
    assert err.value.residual == pytest.approx(3.0)


def test_matrix_group_compose_and_inverse():
    gl2 = MatrixGroup.general_linear(2)
    a = gl2.element(Matrix.from_rows([[1, 1], [0, 1]], EXACT))
    b = gl2.element(Matrix.from_rows([[1, 0], [1, 1]], EXACT))
    ab = compose(gl2, a, b)
    assert ab.payload.rows_as_lists() == [[2, 1], [1, 1]]
    assert inverse(gl2, a).payload.rows_as_lists() == [[1, -1], [0, 1]]


def test_element_accepts_nested_rows():
    gl2 = MatrixGroup.general_linear(2)
    a = gl2.element([[2, 0], [0, 3]])
    assert a.payload.rows_as_lists() == [[2, 0], [0, 3]]
    with pytest.raises(MembershipError):
        gl2.element([[1, 1], [1, 1]])


# -- affine transforms ---------------------------------------------------------


def test_affine_normative_example():
    # quarter turn plus shift by (1, 1) sends (1, 0) to (1, 2)
    backend = EXACT
    t = AffineTransform(
        Matrix.from_rows([[0, -1], [1, 0]], backend),
        (F(1), F(1)),
    )
    assert affine_apply(t, (1, 0)) == (F(1), F(2))


def test_affine_after_applies_right_operand_first():
    shift = AffineTransform(Matrix.identity(2, EXACT), (F(1), F(0)))
    turn = AffineTransform(Matrix.from_rows([[0, -1], [1, 0]], EXACT), (F(0), F(0)))
    # turn.after(shift): shift first, then rotate
    combined = turn.after(shift)
    assert affine_apply(combined, (0, 0)) == affine_apply(turn, affine_apply(shift, (0, 0)))
    assert affine_apply(combined, (0, 0)) == (F(0), F(1))


def test_affine_inverse_round_trip():
    t = AffineTransform(
        Matrix.from_rows([[2, 1], [1, 1]], EXACT), (F(3), F(-2))
    )
    u = t.after(t.inverted())
    assert u.eq(AffineTransform.identity(2, EXACT))


affine_entries = st.integers(min_value=-4, max_value=4)


@st.composite
def exact_affine(draw):
    a, b, c, d = (F(draw(affine_entries)) for _ in range(4))
    assume(a * d - b * c != 0)
    shift = (F(draw(affine_entries)), F(draw(affine_entries)))
    return AffineTransform(Matrix.from_rows([[a, b], [c, d]], EXACT), shift)


@given(exact_affine(), exact_affine(), exact_affine())
def test_affine_composition_is_associative(t1, t2, t3):
    left = t1.after(t2).after(t3)
    right = t1.after(t2.after(t3))
    assert left.eq(right)


@given(exact_affine(), exact_affine())
def test_affine_composition_matches_pointwise(t1, t2):
    combined = t1.after(t2)
    for point in [(0, 0), (1, 0), (0, 1), (2, -3)]:
        assert affine_apply(combined, point) == affine_apply(
            t1, affine_apply(t2, point)
        )


# -- generated groups ----------------------------------------------------------


def test_closure_of_quarter_rotation():
    so2 = MatrixGroup.metric_preserving(2, 0, backend=approx(1e-9))
    quarter = Matrix.from_rows([[0.0, -1.0], [1.0, 0.0]], APPROX)
    so2.close_over([quarter])
    assert len(so2.store) == 4


def test_closure_cap_enforced():
    gl1 = MatrixGroup.general_linear(1, EXACT)
    doubling = Matrix.from_rows([[2]], EXACT)
    with pytest.raises(EnumerationCapExceeded):
        gl1.close_over([doubling], cap=50)


def test_permutation_matrix_acts_on_columns():
    # perm sends 0->1, 1->2, 2->0; the matrix must move basis column j
    # to column perm[j]
    p = permutation_matrix((1, 2, 0))
    e0 = (F(1), F(0), F(0))
    moved = p.matvec(e0)
    assert moved == (F(0), F(1), F(0))


def test_permutation_matrices_compose_like_permutations():
    from itertools import permutations

    perms = list(permutations(range(3)))
    for p in perms:
        for q in perms:
            pq = tuple(p[q[i]] for i in range(3))  # apply q first
            assert permutation_matrix(p).mul(permutation_matrix(q)).eq(
                permutation_matrix(pq)
            )
