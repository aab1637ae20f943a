import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equichain.abelian import AbelianGroup
from equichain.complexes import validate
from equichain.errors import BadParameter, UnknownName
from equichain.homology import Z, homology
from equichain.les import build_les, check_exact
from equichain.spaces import (BUILTIN_CORPUS, CATALOG, SIMPLICIAL_CORPUS, SpaceSpec, builtin,
                              builtin_simplicial, fuzz, parse_spec)


def test_parse_nested_names():
    assert parse_spec("cone_of(circle_rotation(3))") == SpaceSpec(
        "cone_of", (SpaceSpec("circle_rotation", (3,)),))
    assert parse_spec("cross_polytope_sphere(2, antipodal)").args == (2, "antipodal")
    assert str(parse_spec("lens_sphere( 5 )")) == "lens_sphere(5)"
    for bad in ("cone_of(", "a b", "3"):
        with pytest.raises(BadParameter):
            parse_spec(bad)


def test_sphere_reflection_boundaries():
    X = builtin("sphere_reflection")
    assert X.cell_counts == (1, 1, 2)
    assert X.boundary(2).apply((1, 1)) == (2,)
    assert X.boundary(1).is_zero()


def test_circle_rotation_five():
    X = builtin("circle_rotation(5)")
    assert X.cell_counts == (5, 5) and X.is_free()


def test_cones_are_acyclic():
    for name in ("cone_of(circle_rotation(3))", "cone_of(sphere_reflection)"):
        H = homology(builtin(name).chain_complex, Z).groups()
        assert H[0] == AbelianGroup(1) and all(g.is_trivial for g in H[1:])


def test_alias_matches_reflection():
    assert builtin("cp1_conjugation") == builtin("sphere_reflection")


def test_every_corpus_entry_validates():
    for name in BUILTIN_CORPUS:
        assert validate(builtin(name)) == [], name
    for name in SIMPLICIAL_CORPUS:
        assert builtin_simplicial(name).is_admissible(), name


def test_catalog_names_build():
    defaults = {"circle_rotation": "(3)", "cross_polytope_sphere": "(2)", "lens_sphere": "(3)",
                "cone_of": "(point)", "torus_diagonal": "(2)"}
    for e in CATALOG:
        assert validate(builtin(e.name + defaults.get(e.name, ""))) == []


def test_bad_names_and_parameters():
    with pytest.raises(UnknownName):
        builtin("klein_bottle")
    with pytest.raises(BadParameter):
        builtin("circle_rotation(4)")
    with pytest.raises(BadParameter):
        builtin("circle_reflection(2)")
    with pytest.raises(BadParameter):
        builtin_simplicial("circle_rotation(3)")


def test_fuzz_is_deterministic():
    for seed in (0, 1, 17, 123):
        assert fuzz(seed) == fuzz(seed)
        assert hash(fuzz(seed)) == hash(fuzz(seed))


def test_fuzz_small_budget_is_valid():
    assert validate(fuzz(0, budget=5)) == []


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([None, 2, 3, 5]))
def test_fuzz_output_validates(seed, p):
    X = fuzz(seed, p=p)
    assert validate(X) == []
    if p is not None:
        assert X.group.order == p


def test_fuzz_covers_every_prime(fuzz_corpus):
    assert {X.group.order for X in fuzz_corpus} == {2, 3, 5}
    assert any(not X.is_free() for X in fuzz_corpus) and any(X.is_free() for X in fuzz_corpus)


def test_many_fuzzed_z2_complexes_are_exact():
    for seed in range(1000):
        assert check_exact(build_les(fuzz(10_000 + seed, budget=30, p=2))).passed
