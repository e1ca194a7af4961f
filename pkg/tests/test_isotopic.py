import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opair.errors import DimensionError, PreconditionError, PropertyViolation
from opair.exact import Mat, Subspace, null_space, matrix_rank
from opair.isotopic import (
    Classification,
    MatrixPair,
    bracket_v1,
    bracket_v2,
    classify_a0,
    compute_annihilator,
    compute_normalizer,
    example1_generators,
    gl_companion_map,
    gl_transform,
    invariants_and_classify,
    mixed_identity_v1,
    mixed_identity_v2,
    substructure_check,
    verify_pair_axioms,
)

E11, E12, E21, E22 = (Mat.unit(2, i, j) for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)))
I2 = Mat.identity(2)
P1 = MatrixPair.of([[1, 2], [3, 4]], [[5, 6], [7, 8]])

small = st.integers(-3, 3)


def mats(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n).map(Mat)


def normalizer_dim_oracle(p: MatrixPair) -> int:
    """Solve AXB - BXA = alpha A + beta B in the unknowns (X, alpha, beta) directly."""
    n, N = p.n, p.n * p.n
    cols = [bracket_v2(p.A, p.B, Mat.basis_element(n, k)).vec() for k in range(N)]
    cols += [tuple(-x for x in p.A.vec()), tuple(-x for x in p.B.vec())]
    L = [list(r) for r in zip(*cols)]
    return null_space(L, N + 2).dim


def test_brackets_by_hand():
    assert bracket_v1(E11, E12, I2) == E12
    assert bracket_v2(E11, E12, I2) == E12
    assert bracket_v2(I2, I2, E12).is_zero()


def test_fixture_e11_e12_is_okubo():
    inv = invariants_and_classify(MatrixPair(E11, E12))
    assert (inv.a, inv.a0, inv.classification) == (2, 2, Classification.OKUBO)
    assert compute_annihilator(MatrixPair(E11, E12)) == Subspace.span_mats([E12, E22], 2)


def test_fixture_identity_pair():
    inv = invariants_and_classify(MatrixPair(I2, I2))
    assert (inv.a, inv.a0, inv.classification) == (4, 0, Classification.ZERO_QUOTIENT)


def test_fixture_p1():
    inv = invariants_and_classify(P1)
    assert inv.a == 2
    assert compute_normalizer(P1).dim == normalizer_dim_oracle(P1)


def test_classify_out_of_range():
    with pytest.raises(PropertyViolation):
        classify_a0(3)
    assert classify_a0(1) is Classification.AFF_LINE


def test_unequal_sizes_rejected():
    with pytest.raises(DimensionError):
        MatrixPair(I2, Mat.identity(3))


def test_example1_generators_need_n2():
    with pytest.raises(PreconditionError):
        example1_generators(MatrixPair(Mat.identity(3), Mat.identity(3)))


@given(mats(2), mats(2))
def test_example1_generators_in_annihilator(A, B):
    p = MatrixPair(A, B)
    ann = compute_annihilator(p)
    m1, m2 = example1_generators(p)
    assert m1 in ann and m2 in ann
    if p.is_proportional():
        assert ann.dim == 4
    else:
        assert ann.dim == 2
        if matrix_rank([m1.vec(), m2.vec()]) == 2:
            assert Subspace.span_mats([m1, m2], 2) == ann


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(mats(n), mats(n))))
@settings(max_examples=60)
def test_normalizer_matches_oracle_and_a0_range(AB):
    p = MatrixPair(*AB)
    if p.is_proportional():
        return
    nor = compute_normalizer(p)
    assert nor.dim == normalizer_dim_oracle(p)
    assert 0 <= nor.dim - compute_annihilator(p).dim <= 2


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(*[mats(n)] * 5)))
@settings(max_examples=60)
def test_mixed_identities(t):
    X, Y, Z, A, B = t
    lhs, rhs = mixed_identity_v1(X, Y, Z, A, B)
    assert lhs == rhs
    lhs, rhs = mixed_identity_v2(A, B, X, Y, Z)
    assert lhs == rhs


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(*[mats(n)] * 3)), small, small)
@settings(max_examples=60)
def test_jacobi_of_combined_bracket(t, alpha, beta):
    X, Y, Z = t
    C = X * alpha + Y * beta
    br = lambda u, v: bracket_v1(u, v, C)
    assert (br(br(X, Y), Z) + br(br(Y, Z), X) + br(br(Z, X), Y)).is_zero()


def test_verify_pair_axioms_report():
    rep = verify_pair_axioms(2, 10, seed=3)
    assert rep.passed and rep.checked == 60


@given(mats(2), mats(2), mats(2), mats(2))
@settings(max_examples=40)
def test_gl_equivariance(A, B, C, D):
    if not (C.is_invertible() and D.is_invertible()):
        return
    p = MatrixPair(A, B)
    q = gl_transform(p, C, D)
    phi = gl_companion_map(C, D)
    moved = Subspace.span_mats([phi(X) for X in compute_annihilator(p).basis_mats()], 2)
    assert moved == compute_annihilator(q)
    assert invariants_and_classify(p) == invariants_and_classify(q)


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(mats(n), mats(n))))
@settings(max_examples=40)
def test_substructure_closure(AB):
    assert substructure_check(MatrixPair(*AB)).passed


def test_ordered_pair_swaps_orientation_only():
    p, q = MatrixPair(E11, E12), MatrixPair(E12, E11)
    assert compute_annihilator(p) == compute_annihilator(q)
    assert invariants_and_classify(p) == invariants_and_classify(q)
