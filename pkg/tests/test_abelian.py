import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equichain.abelian import (AbelianGroup, GroupHom, IntMatrix, Presentation, cokernel,
                               hom_on_presentations, kernel_basis, rank, smith_normal_form,
                               solve, subquotient)
from equichain.errors import CompositeModulus, IllDefined, NotASubgroup

from oracles import cokernel_oracle, invariant_factors, rank_mod


def small_matrices(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r).map(lambda d: IntMatrix(d, r, c))))


# -- smith normal form -------------------------------------------------------

def test_snf_two_by_two_example():
    S = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
    assert S.D == IntMatrix.diag([2, 4])


def test_snf_identity_and_zero():
    assert smith_normal_form(IntMatrix.identity(3)).D == IntMatrix.identity(3)
    assert smith_normal_form(IntMatrix.zeros(2, 3)).D == IntMatrix.zeros(2, 3)


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_snf_factorisation(A):
    S = smith_normal_form(A)
    assert S.U @ A @ S.V == S.D
    assert S.U.det() in (1, -1) and S.V.det() in (1, -1)
    assert S.U @ S.U_inv == IntMatrix.identity(A.rows)
    assert S.V @ S.V_inv == IntMatrix.identity(A.cols)
    piv = list(S.pivots[:S.rank])
    assert all(d > 0 for d in piv) and not any(S.pivots[S.rank:])
    assert all(b % a == 0 for a, b in zip(piv, piv[1:]))
    for i in range(A.rows):
        for j in range(A.cols):
            if i != j:
                assert S.D[i, j] == 0


@settings(max_examples=80, deadline=None)
@given(small_matrices(3, 3))
def test_snf_matches_determinantal_divisors(A):
    S = smith_normal_form(A)
    assert list(S.pivots[:S.rank]) == invariant_factors(A.tolist(), A.rows, A.cols)


@settings(max_examples=60, deadline=None)
@given(small_matrices(), st.sampled_from([2, 3, 5]))
def test_snf_mod_p_rank(A, p):
    S = smith_normal_form(A, p)
    assert (S.U @ A @ S.V).reduce(p) == S.D.reduce(p)
    assert S.rank == rank_mod(A.tolist(), p)


def test_snf_deterministic():
    A = IntMatrix([[4, 6, 2], [2, 8, 10], [6, 2, 4]])
    a, b = smith_normal_form(A), smith_normal_form(IntMatrix(A.tolist()))
    assert (a.U, a.V, a.D) == (b.U, b.V, b.D)


def test_big_entries_stay_exact():
    A = IntMatrix([[10**30 + 1, 10**30], [10**30, 10**30 - 1]])
    S = smith_normal_form(A)
    assert S.U @ A @ S.V == S.D
    assert abs(S.pivots[0] * S.pivots[1]) == abs(A.det())


# -- cokernels and kernels -----------------------------------------------------

def test_cokernel_examples():
    assert cokernel(IntMatrix([[2], [2]])) == AbelianGroup(1, (2,))
    assert cokernel(IntMatrix.zeros(2, 0)) == AbelianGroup(2)
    assert cokernel(IntMatrix.diag([1, 3])) == AbelianGroup(0, (3,))


@settings(max_examples=80, deadline=None)
@given(small_matrices(3, 3))
def test_cokernel_matches_oracle(A):
    free, tors = cokernel_oracle(A.tolist(), A.rows, A.cols)
    assert cokernel(A) == AbelianGroup(free, tors)


@settings(max_examples=50, deadline=None)
@given(small_matrices(3, 3, -3, 3), st.randoms(use_true_random=False))
def test_cokernel_invariant_under_unimodular_change(A, rnd):
    def unimodular(n):
        M = IntMatrix.identity(n)
        for _ in range(6):
            if n < 2:
                break
            i, j = rnd.sample(range(n), 2)
            E = [[int(r == c) for c in range(n)] for r in range(n)]
            E[i][j] = rnd.randint(-3, 3)
            M = IntMatrix(E) @ M
        return M
    if A.rows == 0 or A.cols == 0:
        return
    B = unimodular(A.rows) @ A @ unimodular(A.cols)
    assert cokernel(A) == cokernel(B)


def test_kernel_basis_examples():
    K = kernel_basis(IntMatrix([[1, 1]]))
    assert K.shape == (2, 1) and set(K.column(0)) == {1, -1} and sum(K.column(0)) == 0
    assert kernel_basis(IntMatrix([[2]]), 2).tolist() == [[1]]
    assert kernel_basis(IntMatrix([[2]])).shape == (1, 0)


def test_kernel_rejects_composite_modulus():
    with pytest.raises(CompositeModulus):
        kernel_basis(IntMatrix([[1]]), 4)


@settings(max_examples=60, deadline=None)
@given(small_matrices(), st.sampled_from([0, 2, 3, 7]))
def test_rank_nullity(A, p):
    K = kernel_basis(A, p)
    assert K.cols + rank(A, p) == A.cols
    assert (A @ K).is_zero(p)


@settings(max_examples=60, deadline=None)
@given(small_matrices(4, 3))
def test_integer_kernel_is_saturated(A):
    K = kernel_basis(A)
    if K.cols:
        # a saturated basis has trivial torsion in its cokernel
        assert cokernel(K).torsion == ()


def test_solve_roundtrip():
    A = IntMatrix([[2, 0], [0, 3], [1, 1]])
    x = solve(A, (4, 9, 5))
    assert A.apply(x) == (4, 9, 5)
    assert solve(A, (1, 0, 0)) is None


# -- subquotients ------------------------------------------------------------

def test_subquotient_examples():
    sq = subquotient(IntMatrix.identity(2), IntMatrix([[2], [2]]))
    assert sq.group == AbelianGroup(1, (2,))
    assert subquotient(IntMatrix.identity(2), IntMatrix.identity(2)).group.is_trivial
    assert subquotient(IntMatrix([[1], [0]]), IntMatrix.zeros(2, 0)).group == AbelianGroup(1)


def test_subquotient_rejects_outside_boundaries():
    with pytest.raises(NotASubgroup):
        subquotient(IntMatrix([[1], [0]]), IntMatrix([[0], [1]]))


def test_subquotient_projection_coordinates():
    sq = subquotient(IntMatrix.identity(2), IntMatrix([[2], [2]]))
    # (1,1) is half the boundary: order 2; (1,0) generates the free part
    assert sq.project((2, 2)) == (0, 0)
    assert sq.project((1, 1)) != (0, 0)
    assert sq.project(sq.generators.column(0)) == (1, 0)


@settings(max_examples=40, deadline=None)
@given(small_matrices(3, 3))
def test_subquotient_with_no_boundaries_is_the_cycle_group(A):
    K = kernel_basis(A)
    assert subquotient(K, IntMatrix.zeros(A.cols, 0)).group == AbelianGroup(K.cols)


# -- homomorphisms -------------------------------------------------------------

def test_hom_times_two():
    f = GroupHom(Presentation.free(1), Presentation.free(1), IntMatrix([[2]]))
    info = hom_on_presentations(f)
    assert info.kernel.is_trivial and info.cokernel == AbelianGroup(0, (2,))


def test_hom_to_zero():
    f = GroupHom(Presentation.diagonal([2]), Presentation.free(0), IntMatrix.zeros(0, 1))
    info = hom_on_presentations(f)
    assert info.kernel == AbelianGroup(0, (2,)) and info.kernel_exponent == 2


def test_hom_projection_kills_torsion():
    dom = Presentation.diagonal([0, 2])
    f = GroupHom(dom, Presentation.free(1), IntMatrix([[1, 0]]))
    info = hom_on_presentations(f)
    assert info.kernel == AbelianGroup(0, (2,)) and info.surjective


def test_ill_defined_hom():
    f = GroupHom(Presentation.diagonal([2]), Presentation.free(1), IntMatrix([[1]]))
    with pytest.raises(IllDefined):
        hom_on_presentations(f)


def test_group_rendering():
    assert str(AbelianGroup()) == "0"
    assert str(AbelianGroup(1)) == "Z"
    assert str(AbelianGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
    assert AbelianGroup.from_orders([4, 2, 0, 1]) == AbelianGroup(1, (2, 4))
