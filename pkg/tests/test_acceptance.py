"""Acceptance gate: one test per criterion, each printing a single line

    criterion N: PASS|FAIL  <detail>

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py``.
"""

import sys

import pytest

from equichain.abelian import AbelianGroup, hom_on_presentations
from equichain.functors import coinvariant_complex, invariant_complex, norm_map, quotient_D
from equichain.homology import Coeff, Z, Q, homology, i_star, map_on_homology
from equichain.hyper import collapse_check, default_depth, e_infinity, s_groups
from equichain.les import build_les, check_exact
from equichain.simplicial import barycentric_subdivision
from equichain.spaces import BUILTIN_CORPUS, SIMPLICIAL_CORPUS, builtin, builtin_simplicial
from equichain.theorems import conner_check, coprime_check, smith_check

from oracles import betti_mod, homology_oracle, quotient_chain_complex

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def G(free=0, *torsion):
    return AbelianGroup(free, tuple(torsion))


def same_class(H, u, v) -> bool:
    """``u`` and ``v`` are coordinate vectors in ``H``'s generators."""
    return all((a - b) % o == 0 if o else a == b for a, b, o in zip(u, v, H.orders))


def inv_groups(X, coeff=Z):
    return homology(invariant_complex(X, as_mod(coeff)).complex, coeff).groups()


def as_mod(coeff):
    return Coeff.parse(coeff).modulus if isinstance(coeff, str) else coeff.modulus


# -- 1 ---------------------------------------------------------------------------

def test_criterion_1_circle_reflection():
    X = builtin("circle_reflection")
    Hi = homology(invariant_complex(X).complex, Z)
    Hq = homology(coinvariant_complex(X).complex, Z)
    ok = Hi.groups() == [G(1, 2), G()]
    # the orbit of v_1 (index 1) is fixed, so it is an invariant generator as is
    v1 = X.labels[0].index("v_1")
    N0 = map_on_homology(norm_map(X).matrices, Hq, Hi)[0]
    q_v1 = Hq[0].project([int(i == v1) for i in range(2)])
    image = N0.matrix.apply(q_v1)
    two_v1 = Hi[0].project([2 * int(i == v1) for i in range(2)])
    ok_map = same_class(Hi[0], image, two_v1)
    record(1, ok and ok_map,
           f"H(G,X) = {[str(g) for g in Hi.groups()]}; N[v1bar] == 2[v1]: {ok_map}")


# -- 2 ---------------------------------------------------------------------------

def test_criterion_2_circle_rotation():
    details, ok = [], True
    for p in (2, 3, 5):
        X = builtin(f"circle_rotation({p})")
        Hi = homology(invariant_complex(X).complex, Z)
        Hq = homology(coinvariant_complex(X).complex, Z)
        homs = map_on_homology(norm_map(X).matrices, Hq, Hi)
        iso = all(hom_on_presentations(f).isomorphism for f in homs)
        good = Hi.groups() == [G(1), G(1)] and iso
        ok &= good
        details.append(f"p={p}:{'ok' if good else 'bad'}")
    record(2, ok, "H_1 = H_0 = Z, norm isomorphisms; " + " ".join(details))


# -- 3 ---------------------------------------------------------------------------

def test_criterion_3_sphere_reflection():
    X = builtin("sphere_reflection")
    groups = inv_groups(X)
    L = build_les(X)
    pi1 = L.map_between("invariant", 1)
    n0 = L.map_between("quotient", 0)
    ok_groups = groups == [G(1), G(0, 2), G()]
    ok_pi = pi1.matrix.tolist() == [[1]] and hom_on_presentations(pi1).isomorphism
    ok_n = n0.matrix.tolist() == [[2]] and n0.domain.group() == G(1) and n0.codomain.group() == G(1)
    record(3, ok_groups and ok_pi and ok_n and check_exact(L).passed,
           f"H(G,X) = {[str(g) for g in groups]}; H_1(G,X)->H_1(X^G) = {pi1.matrix.tolist()}; "
           f"H_0(X/G)->H_0(G,X) = {n0.matrix.tolist()}")


# -- 4 ---------------------------------------------------------------------------

def test_criterion_4_quotient_comparison(builtins, fuzz_corpus):
    bad = [n for n, X in builtins.items() if quotient_D(X, compare=True).comparison_diagnostics()]
    bad += [f"fuzz#{i}" for i, X in enumerate(fuzz_corpus)
            if quotient_D(X, compare=True).comparison_diagnostics()]
    record(4, not bad, f"{len(builtins)} builtins + {len(fuzz_corpus)} fuzzed; failures {bad[:5]}")


# -- 5 ---------------------------------------------------------------------------

def test_criterion_5_les_exact(builtins, fuzz_corpus):
    bad = [n for n, X in builtins.items() if not check_exact(build_les(X)).passed]
    bad += [f"fuzz#{i}" for i, X in enumerate(fuzz_corpus) if not check_exact(build_les(X)).passed]
    record(5, not bad, f"{len(builtins)} builtins + {len(fuzz_corpus)} fuzzed; failures {bad[:5]}")


# -- 6 ---------------------------------------------------------------------------

def test_criterion_6_istar_kernel(builtins, fuzz_corpus):
    def fails(X):
        return any(not d.annihilated for d in i_star(X))
    bad = [n for n, X in builtins.items() if fails(X)]
    bad += [f"fuzz#{i}" for i, X in enumerate(fuzz_corpus) if fails(X)]
    record(6, not bad, f"|G| kills ker i_* in every degree; failures {bad[:5]}")


# -- 7 ---------------------------------------------------------------------------

def test_criterion_7_free_actions():
    ok, details = True, []
    for n in range(1, 5):
        X = builtin(f"cross_polytope_sphere({n},antipodal)")
        oracle = [G(f, *t) for f, t in homology_oracle(*quotient_chain_complex(X))]
        got = inv_groups(X)
        good = got == oracle and X.is_free()
        if n == 2:
            good &= got == [G(1), G(0, 2), G()]
        ok &= good
        details.append(f"S^{n}:{'ok' if good else [str(g) for g in got]}")
    for p in (2, 3, 5):
        X = builtin(f"lens_sphere({p})")
        got = inv_groups(X)
        oracle = [G(f, *t) for f, t in homology_oracle(*quotient_chain_complex(X))]
        good = got == oracle == [G(1), G(0, p), G(), G(1)]
        ok &= good
        details.append(f"L({p},1):{'ok' if good else [str(g) for g in got]}")
    record(7, ok, " ".join(details))


# -- 8 ---------------------------------------------------------------------------

def test_criterion_8_coprime():
    cases = [("sphere_reflection", 3), ("circle_reflection", 3), ("circle_reflection", 5),
             ("circle_rotation(3)", 2)]
    ok, details = True, []
    for name, ell in cases:
        rep = coprime_check(builtin(name), ell)
        ok &= rep.passed
        details.append(f"{name}/{ell}:{rep.status()}")
    X = builtin("sphere_reflection")
    lhs = inv_groups(X, f"zp:3")
    expected = [G(0, 3), G(), G()]
    ok &= lhs == expected
    record(8, ok, " ".join(details) + f"; sphere_reflection over Z/3 = {[str(g) for g in lhs]}")


# -- 9 ---------------------------------------------------------------------------

def _tot_matches_einf(X) -> bool:
    p = X.group.prime_order
    depth = default_depth(X)
    einf = e_infinity(X, p, "I", depth)
    totals = einf.total_by_degree()
    # degrees whose diagonal lies wholly inside the window
    S = s_groups(X, Coeff.mod(p), -depth + X.dim + 1, X.dim)
    lo = -depth + X.dim + 1
    return all(totals.get(lo + i, 0) == len(g.torsion) for i, g in enumerate(S))


def test_criterion_9_collapse(builtins, fuzz_corpus):
    bad = [n for n, X in builtins.items() if not collapse_check(X).passed]
    bad += [f"fuzz#{i}" for i, X in enumerate(fuzz_corpus) if not collapse_check(X).passed]
    tot_bad = [n for n, X in builtins.items() if not _tot_matches_einf(X)]
    record(9, not bad and not tot_bad,
           f"E2 = Einf on {len(builtins)} builtins + {len(fuzz_corpus)} fuzzed; "
           f"Einf sums to dim H(Tot) on builtins; failures {(bad + tot_bad)[:5]}")


# -- 10 --------------------------------------------------------------------------

def test_criterion_10_smith():
    cases = {
        "sphere_reflection": "mod-p homology sphere of dimension 1",
        "circle_reflection": "mod-p homology sphere of dimension 0",
        "circle_rotation(2)": "empty",
        "circle_rotation(3)": "empty",
        "circle_rotation(5)": "empty",
        "cross_polytope_sphere(2,antipodal)": "empty",
        "cross_polytope_sphere(3,antipodal)": "empty",
        "lens_sphere(3)": "empty",
        "lens_sphere(5)": "empty",
    }
    ok, details = True, []
    for name, fixed in cases.items():
        rep = smith_check(builtin(name))
        rank = [v for v in rep.verdicts if v.name.startswith("rank identity")]
        good = (rep.status() == "pass" and rep.values.get("fixed set") == fixed
                and len(rank) == 1 and rank[0].status == "pass")
        ok &= good
        details.append(f"{name}:{'ok' if good else rep.status()}")
    record(10, ok, " ".join(details))


# -- 11 --------------------------------------------------------------------------

def test_criterion_11_conner():
    names = ["cone_of(circle_rotation(2))", "cone_of(circle_rotation(3))",
             "cone_of(circle_rotation(5))", "cone_of(cross_polytope_sphere(1,antipodal))",
             "cone_of(cross_polytope_sphere(2,antipodal))"]
    ok, details = True, []
    for name in names:
        rep = conner_check(builtin(name), low=-6)
        needed = {"S_n pattern: Z at 0, Z/p at negative even n, 0 otherwise",
                  "H_n(G,X;Z) = 0 for n > 0", "H_0(X/G;Z) = Z", "reduced H(X/G;Z) vanishes"}
        seen = {v.name for v in rep.verdicts if v.status == "pass"}
        good = rep.passed and needed <= seen
        ok &= good
        details.append(f"{name}:{'ok' if good else rep.status()}")
    record(11, ok, " ".join(details))


# -- 12 --------------------------------------------------------------------------

def test_criterion_12_cp1():
    X = builtin("cp1_conjugation")
    H = inv_groups(X, "zp:2")
    ok = H[1] == G(0, 2) and H[2] == G(0, 2)
    record(12, ok, f"H(G,CP^1;Z/2) = {[str(g) for g in H]}")


# -- 13 --------------------------------------------------------------------------

def _consistency(counts, bds, Hz, primes):
    """UCT and rational rank of ``Hz`` against independent mod-p Betti numbers."""
    for p in primes:
        b = betti_mod(counts, bds, p)
        for k in range(len(counts)):
            prev = Hz[k - 1].p_torsion_count(p) if k else 0
            if b[k] != Hz[k].free_rank + Hz[k].p_torsion_count(p) + prev:
                return False
    bq = betti_mod(counts, bds, 0)
    return bq == [g.free_rank for g in Hz]


def _complexes_of(X):
    inv = invariant_complex(X).complex
    co = coinvariant_complex(X).complex
    return [X.chain_complex, inv, co]


def _lists(C):
    return list(C.cell_counts), [C.boundary(k).tolist() for k in range(1, C.dim + 1)]


def test_criterion_13_uct_and_rational(builtins, fuzz_corpus):
    bad = []
    samples = list(builtins.items()) + [(f"fuzz#{i}", X) for i, X in enumerate(fuzz_corpus[:150])]
    for name, X in samples:
        for C in _complexes_of(X):
            Hz = homology(C, Z).groups()
            counts, bds = _lists(C)
            ok = _consistency(counts, bds, Hz, (2, 3))
            ok &= homology(C, Q).dims() == [g.free_rank for g in Hz]
            ok &= homology(C, "zp:2").dims() == betti_mod(counts, bds, 2)
            if not ok:
                bad.append(name)
    record(13, not bad, f"{len(samples)} complexes x 3 functors; failures {bad[:5]}")


# -- 14 --------------------------------------------------------------------------

def test_criterion_14_subdivision():
    ok, details = True, []
    for name in SIMPLICIAL_CORPUS:
        K = builtin_simplicial(name)
        sd = barycentric_subdivision(K)
        a, b = inv_groups(K.to_chain_complex()), inv_groups(sd.to_chain_complex())
        good = a == b
        ok &= good
        details.append(f"{name}:{'ok' if good else 'differs'}")
    record(14, ok, " ".join(details))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
