import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equichain.abelian import AbelianGroup, GroupHom, IntMatrix
from equichain.complexes import FiniteGroup, make_complex
from equichain.errors import NotPrimeOrder
from equichain.les import build_les, check_exact, les_values
from equichain.spaces import builtin, circle_reflection, circle_rotation, fuzz


def test_circle_reflection_sequence():
    L = build_les(circle_reflection())
    vals = les_values(L)
    assert vals["H_0(X/G)"] == "Z"
    assert vals["H_0(G,X)"] == "Z + Z/2"
    assert vals["H_0(X^G;Z/2)"] == "Z/2 + Z/2"
    n0 = L.map_between("quotient", 0)
    # generators are torsion first: zero torsion part, twice the free generator
    assert n0.matrix.tolist() == [[0], [2]]
    assert check_exact(L).passed


def test_sphere_reflection_junctions():
    L = build_les(builtin("sphere_reflection"))
    assert L.map_between("invariant", 1).matrix.tolist() == [[1]]
    assert L.map_between("quotient", 0).matrix.tolist() == [[2]]
    assert check_exact(L).passed


def test_free_rotation_has_empty_fixed_column():
    for p in (2, 3, 5):
        L = build_les(circle_rotation(p))
        for t in L.terms:
            if t.kind == "fixed":
                assert t.group.is_trivial
        for n in (0, 1):
            assert L.map_between("quotient", n).matrix == IntMatrix.identity(1)


def test_corrupted_map_fails_at_named_junction():
    L = build_les(builtin("sphere_reflection"))
    i = next(j for j, t in enumerate(L.terms) if t.label == "H_0(X/G)")
    f = L.maps[i]
    bad = L.replace_map(i, GroupHom(f.domain, f.codomain, IntMatrix([[1]])))
    rep = check_exact(bad)
    failed = [v.name for v in rep.failures]
    assert failed and all(name.startswith("exact at ") for name in failed)
    assert "exact at H_0(X/G)" in failed or "exact at H_0(G,X)" in failed
    assert rep.failures[0].witness["term"] in ("H_0(X/G)", "H_0(G,X)")


def test_zero_complex_is_vacuously_exact():
    X = make_complex(FiniteGroup.cyclic(2), [], [[()], [()]], cell_counts=(0,))
    L = build_les(X)
    assert all(t.group.is_trivial for t in L.terms)
    assert check_exact(L).passed


def test_requires_prime_order():
    X = make_complex(FiniteGroup.cyclic(4), [], [[[0]]] * 4, cell_counts=(1,))
    with pytest.raises(NotPrimeOrder):
        build_les(X)


def test_lift_choice_does_not_matter(builtins):
    for name, X in builtins.items():
        a, b = build_les(X), build_les(X, symmetric_lift=True)
        assert [f.matrix for f in a.maps] == [f.matrix for f in b.maps], name


def test_builtins_exact(builtins):
    for name, X in builtins.items():
        rep = check_exact(build_les(X))
        assert rep.passed, (name, [v.to_dict() for v in rep.failures])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
def test_fuzzed_sequences_are_exact(seed, p):
    X = fuzz(seed, budget=30, p=p)
    assert check_exact(build_les(X)).passed
    assert check_exact(build_les(X, symmetric_lift=True)).passed


def test_longer_window():
    L = build_les(builtin("sphere_reflection"), top=4)
    assert L.terms[0].label == "H_5(X^G;Z/2)"
    assert check_exact(L).passed
    assert AbelianGroup() == L.terms[0].group
