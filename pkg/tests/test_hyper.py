import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equichain.abelian import AbelianGroup, IntMatrix
from equichain.complexes import restrict_action
from equichain.errors import NotAnAutomorphism, NotPrimeOrder
from equichain.functors import coinvariant_complex
from equichain.homology import Coeff, Z
from equichain.hyper import (collapse_check, cyclic_cohomology, cyclic_cohomology_trivial,
                             differential_squares, e_infinity, integral_page_I, page, page_I,
                             page_I_e2_expected, page_II, page_II_e2_expected, s_groups,
                             total_differential)
from equichain.spaces import builtin, circle_reflection, circle_rotation, fuzz, point_complex


def G(free=0, *t):
    return AbelianGroup(free, tuple(t))


# -- cohomology of Z/p ---------------------------------------------------------

def test_trivial_integer_module():
    for p in (2, 3, 5):
        got = [cyclic_cohomology_trivial(G(1), p, q) for q in range(5)]
        assert got == [G(1), G(), G(0, p), G(), G(0, p)]


def test_sign_module():
    got = [cyclic_cohomology(IntMatrix.zeros(1, 0), IntMatrix([[-1]]), 2, q) for q in range(5)]
    assert got == [G(), G(0, 2), G(), G(0, 2), G()]


def test_trivial_mod_p_module():
    for p in (2, 3):
        assert all(cyclic_cohomology_trivial(G(0, p), p, q) == G(0, p) for q in range(5))


def test_rejects_non_automorphism():
    with pytest.raises(NotAnAutomorphism):
        cyclic_cohomology(IntMatrix.zeros(1, 0), IntMatrix([[2]]), 2, 1)


# -- total complex -------------------------------------------------------------

def test_total_differential_squares_to_zero(builtins):
    for X in builtins.values():
        for n in range(-4, X.dim + 2):
            D1, D0 = total_differential(X, n), total_differential(X, n - 1)
            if D1.cols and D0.rows:
                assert (D0 @ D1).is_zero()


def test_acyclic_cone_pattern():
    X = builtin("cone_of(circle_rotation(3))")
    S = s_groups(X, Z, -6, 3)
    expected = [G(0, 3) if n < 0 and n % 2 == 0 else G(1) if n == 0 else G() for n in range(-6, 4)]
    assert S == expected


def test_circle_reflection_negative_degrees():
    assert s_groups(circle_reflection(), Coeff.mod(2), -5, -1) == [G(0, 2, 2)] * 5


def test_point_with_trivial_action():
    assert s_groups(point_complex(3), Coeff.mod(3), -5, 0) == [G(0, 3)] * 6


# -- pages ---------------------------------------------------------------------

def test_page_II_of_reflected_sphere():
    pg = page_II(builtin("sphere_reflection"), 2, 2)
    for (a, b), v in pg.dims.items():
        assert v == (1 if b in (0, 2) and a <= 0 else 0)


def test_free_rotation_rows_below_zero_vanish():
    X = circle_rotation(3)
    pg = page_I(X, 3, 2)
    assert all(v == 0 for (s, t), v in pg.dims.items() if t < 0)
    einf = e_infinity(X, 3, "I")
    assert all(v == 0 for (s, t), v in einf.dims.items() if t < 0)


def test_trivial_action_pages_agree():
    X = restrict_action(builtin("sphere_reflection"), [0, 1])
    triv = point_complex(2)
    for Y in (X, triv):
        assert page_I(Y, 2, 2).dims == page_I(Y, 2, 3).dims


def test_acyclic_cone_filtration_II_mod_p():
    X = builtin("cone_of(circle_rotation(3))")
    einf = e_infinity(X, 3, "II")
    for (a, b), v in einf.dims.items():
        assert v == (1 if b == 0 and a <= 0 else 0)


def test_page_one_counts_orbits_and_fixed_cells(builtins):
    # over Z/p, H^q(G, permutation module) is the orbit count for q = 0 and
    # the fixed-cell count for q > 0
    for X in builtins.values():
        p = X.group.order
        pg = page_I(X, p, 1, depth=4)
        orbits = coinvariant_complex(X).complex.cell_counts
        for (s, t), v in pg.dims.items():
            assert v == (orbits[s] if t == 0 else len(X.fixed_cells(s)))


def test_e2_closed_forms(builtins):
    for name, X in builtins.items():
        p = X.group.order
        assert page(X, p, 2, "I", differentials=False).dims == page_I_e2_expected(X, p), name
        assert page(X, p, 2, "II", differentials=False).dims == page_II_e2_expected(X, p), name


def test_differentials_square_to_zero():
    for name in ("sphere_reflection", "circle_reflection", "cross_polytope_sphere(2,reflection)"):
        X = builtin(name)
        for filt in ("I", "II"):
            for r in (1, 2, 3):
                pg = (page_I if filt == "I" else page_II)(X, 2, r)
                assert differential_squares(pg) == []


def test_reflected_sphere_collapses_with_lower_rows():
    X = builtin("sphere_reflection")
    rep = collapse_check(X)
    assert rep.passed
    assert any(v for (s, t), v in e_infinity(X, 2).dims.items() if t < 0)


def test_wrong_prime_rejected():
    with pytest.raises(NotPrimeOrder):
        page_I(circle_reflection(), 3, 2)


def test_integral_pages():
    X = builtin("cone_of(circle_rotation(3))")
    # vertices: one free orbit and the fixed apex
    e1 = integral_page_I(X, 1, depth=2)
    assert [e1[(0, t)] for t in (0, -1, -2)] == [G(2), G(), G(0, 3)]
    e2 = integral_page_I(X, 2, depth=4)
    assert e2[(0, 0)] == G(1) and e2[(0, -2)] == G(0, 3) and e2[(0, -1)] == G()


def test_page_text_and_json_are_stable():
    pg = page_II(builtin("sphere_reflection"), 2, 2)
    assert pg.to_text() == page_II(builtin("sphere_reflection"), 2, 2).to_text()
    d = pg.to_dict()
    assert d["filtration"] == "II" and d["page"] == 2 and len(d["grid"]) == 3


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_collapse_on_fuzzed(seed):
    assert collapse_check(fuzz(seed, budget=20)).passed
