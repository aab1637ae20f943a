import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equichain.complexes import FiniteGroup, make_complex
from equichain.errors import (BadParameter, InapplicableHypothesis, NotCoprime, NotFree,
                              NotPrimeOrder)
from equichain.spaces import builtin, circle_rotation, fuzz
from equichain.theorems import (conner_check, coprime_check, free_action_check, smith_check,
                                sphere_degree)


def test_sphere_degree():
    assert sphere_degree([0, 0]) == "point"
    assert sphere_degree([0, 1, 0]) == 1
    assert sphere_degree([1, 0]) == 0
    assert sphere_degree([0, 2]) is None and sphere_degree([1, 1]) is None


def test_smith_reflected_sphere():
    rep = smith_check(builtin("sphere_reflection"))
    assert rep.passed and rep.values["fixed set"] == "mod-p homology sphere of dimension 1"


def test_smith_free_rotation():
    rep = smith_check(circle_rotation(3))
    assert rep.passed and rep.values["fixed set"] == "empty"


def test_smith_cone_point_case():
    rep = smith_check(builtin("cone_of(circle_rotation(3))"))
    assert rep.passed
    assert sum(rep.values["H(X^G;Z/p) dims"]) == 1


def test_smith_non_sphere_is_inapplicable():
    rep = smith_check(builtin("torus_diagonal(3)"))
    assert rep.status() == "inapplicable" and rep.passed


def test_smith_needs_prime_order():
    X = make_complex(FiniteGroup.cyclic(4), [], [[[0]]] * 4, cell_counts=(1,))
    with pytest.raises(NotPrimeOrder):
        smith_check(X)


def test_conner_cones():
    for name in ("cone_of(circle_rotation(2))", "cone_of(circle_rotation(5))",
                 "cone_of(cross_polytope_sphere(1,antipodal))"):
        rep = conner_check(builtin(name))
        assert rep.passed, [v.to_dict() for v in rep.failures]


def test_conner_rejects_non_acyclic():
    with pytest.raises(InapplicableHypothesis):
        conner_check(builtin("sphere_reflection"))


def test_coprime_examples():
    rep = coprime_check(builtin("sphere_reflection"), 3)
    assert rep.passed and rep.values["H(G,X;Z/l)"] == ["Z/3", "0", "0"]
    rep = coprime_check(circle_rotation(3), 2)
    assert rep.passed and rep.values["H(X;Z/l)^G"] == ["Z/2", "Z/2"]


def test_coprime_errors():
    with pytest.raises(NotCoprime):
        coprime_check(builtin("sphere_reflection"), 2)
    with pytest.raises(BadParameter):
        coprime_check(builtin("sphere_reflection"), 9)


def test_free_action_examples():
    rep = free_action_check(circle_rotation(5))
    assert rep.passed and rep.values["H(G,X;Z)"] == ["Z", "Z"]
    rep = free_action_check(builtin("lens_sphere(3)"))
    assert rep.passed and rep.values["H(G,X;Z)"] == ["Z", "Z/3", "0", "Z"]
    with pytest.raises(NotFree):
        free_action_check(builtin("sphere_reflection"))


def test_all_checks_on_builtins(builtins):
    for name, X in builtins.items():
        assert smith_check(X).passed, name
        try:
            assert conner_check(X).passed, name
        except InapplicableHypothesis:
            pass
        for ell in (2, 3, 5, 7):
            if X.group.order % ell:
                assert coprime_check(X, ell).passed, (name, ell)
        if X.is_free():
            assert free_action_check(X).passed, name


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_all_checks_on_fuzzed(seed):
    X = fuzz(seed, budget=25)
    assert smith_check(X).passed
    try:
        assert conner_check(X, low=-4).passed
    except InapplicableHypothesis:
        pass
    ell = 2 if X.group.order != 2 else 3
    assert coprime_check(X, ell).passed
    if X.is_free():
        assert free_action_check(X).passed
