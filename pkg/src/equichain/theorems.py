"""Executable checks of the headline results for finite group actions.

Every check verifies its hypotheses first and reports them separately, so
an input outside the hypotheses is reported as inapplicable rather than as
a counterexample.
"""

from __future__ import annotations

from math import gcd

from .abelian import AbelianGroup, hom_on_presentations, is_prime
from .complexes import EquivariantChainComplex
from .errors import BadParameter, InapplicableHypothesis, NotCoprime, NotFree, NotPrimeOrder
from .functors import coinvariant_complex, fixed_complex, invariant_complex, norm_map
from .homology import Coeff, Z, homology, invariant_homology, map_on_homology, reduced
from .hyper import cyclic_prime, s_groups
from .report import Report


def _strs(groups) -> list[str]:
    return [str(g) for g in groups]


def _prime_of(X: EquivariantChainComplex, p: int | None) -> int:
    gp = X.group.prime_order
    if gp is None:
        raise NotPrimeOrder(f"group of order {X.group.order} is not cyclic of prime order")
    if p is not None and p != gp:
        raise NotPrimeOrder(f"group has order {gp}, not {p}")
    return gp


def sphere_degree(dims: list[int]) -> int | None | str:
    """Classify reduced mod-p Betti numbers: ``"point"`` if all vanish, the
    degree ``n`` if there is exactly one class, else ``None``."""
    if not any(dims):
        return "point"
    nz = [i for i, d in enumerate(dims) if d]
    if len(nz) == 1 and dims[nz[0]] == 1:
        return nz[0]
    return None


def smith_check(X: EquivariantChainComplex, p: int | None = None) -> Report:
    """Mod-p homology spheres have empty or mod-p homology-sphere fixed sets;
    mod-p acyclic complexes have nonempty mod-p acyclic fixed sets."""
    p = _prime_of(X, p)
    Fp = Coeff.mod(p)
    rep = Report("Smith theory")
    dims = reduced(homology(X.chain_complex, Fp).groups(), Fp)
    shape = sphere_degree([len(g.torsion) for g in dims])
    rep.values["p"] = p
    rep.values["reduced H(X;Z/p)"] = _strs(dims)
    if shape is None:
        rep.add("hypothesis: X is a mod-p homology sphere or point", None,
                "reduced mod-p homology is neither that of a sphere nor of a point")
        return rep
    rep.add("hypothesis: X is a mod-p homology sphere or point", True,
            "point" if shape == "point" else f"sphere of dimension {shape}")

    fixed, cells = fixed_complex(X, p)
    b = homology(fixed, Fp).dims()
    empty = sum(len(c) for c in cells) == 0
    total = sum(b)
    rep.values["H(X^G;Z/p) dims"] = b
    if shape == "point":
        ok = not empty and total == 1
        rep.add("fixed set is nonempty and mod-p acyclic", ok,
                "empty fixed set" if empty else f"total mod-p Betti number {total}")
        rep.add("rank identity: sum of fixed Betti numbers is 1", total == 1, f"sum = {total}")
    else:
        if empty:
            rep.values["fixed set"] = "empty"
            rep.add("fixed set is empty or a mod-p homology sphere", True, "empty")
        else:
            fshape = sphere_degree([len(g.torsion) for g in reduced(homology(fixed, Fp).groups(), Fp)])
            ok = isinstance(fshape, int)
            if ok:
                rep.values["fixed set"] = f"mod-p homology sphere of dimension {fshape}"
                rep.values["observation: fixed dimension <= sphere dimension"] = fshape <= shape
            rep.add("fixed set is empty or a mod-p homology sphere", ok,
                    f"m = {fshape}" if ok else f"fixed Betti numbers {b}")
        rep.add("rank identity: sum of fixed Betti numbers is 0 or 2", total in (0, 2),
                f"sum = {total}")
    # below degree 0 the hypercohomology only sees the fixed set
    lo = -2 * (X.dim + 1)
    s_dims = [len(g.torsion) for g in s_groups(X, Fp, lo, -1)]
    bad = [lo + i for i, d in enumerate(s_dims) if d != total]
    rep.add("dim S_r(G,X;Z/p) equals the fixed Betti sum for r < 0", not bad,
            f"checked r in [{lo}, -1]" if not bad else f"mismatch at r = {bad}",
            witness=bad or None)
    return rep


def conner_check(X: EquivariantChainComplex, p: int | None = None, low: int = -6) -> Report:
    """Integrally acyclic ``Z/p``-complexes have acyclic quotients.  Also
    checks the intermediate hypercohomology and invariant-chain values.
    Raises :class:`InapplicableHypothesis` for non-acyclic input."""
    p = _prime_of(X, p)
    Hx = reduced(homology(X.chain_complex, Z).groups(), Z)
    if any(not g.is_trivial for g in Hx):
        raise InapplicableHypothesis(f"X is not Z-acyclic: reduced homology {_strs(Hx)}")
    rep = Report("Conner conjecture (cyclic of prime order)")
    rep.values["p"] = p
    rep.add("hypothesis: X is Z-acyclic", True)

    Hq = homology(coinvariant_complex(X).complex, Z)
    red_q = reduced(Hq.groups(), Z)
    rep.values["H(X/G;Z)"] = _strs(Hq.groups())
    bad = [k for k, g in enumerate(red_q) if not g.is_trivial]
    rep.add("reduced H(X/G;Z) vanishes", not bad, "" if not bad else f"nonzero in degrees {bad}",
            witness=bad or None)

    hi = X.dim + 1
    S = s_groups(X, Z, low, hi)
    expected = []
    for n in range(low, hi + 1):
        if n == 0:
            expected.append(AbelianGroup(1))
        elif n < 0 and n % 2 == 0:
            expected.append(AbelianGroup(0, (p,)))
        else:
            expected.append(AbelianGroup())
    rep.values[f"S_n(G,X;Z) for n = {low}..{hi}"] = _strs(S)
    bad = [low + i for i, (a, b) in enumerate(zip(S, expected)) if a != b]
    rep.add("S_n pattern: Z at 0, Z/p at negative even n, 0 otherwise", not bad,
            "" if not bad else f"differs at n = {bad}", witness=bad or None)

    Hi = homology(invariant_complex(X).complex, Z)
    rep.values["H(G,X;Z)"] = _strs(Hi.groups())
    bad = [k for k in range(1, len(Hi)) if not Hi.group(k).is_trivial]
    rep.add("H_n(G,X;Z) = 0 for n > 0", not bad, "" if not bad else f"nonzero in degrees {bad}",
            witness=bad or None)
    rep.add("H_0(G,X;Z) = Z", Hi.group(0) == AbelianGroup(1), str(Hi.group(0)))
    N0 = map_on_homology(norm_map(X).matrices, Hq, Hi)[0]
    info = hom_on_presentations(N0)
    ok = info.injective and info.cokernel == AbelianGroup(0, (p,))
    rep.add("norm on H_0 is injective with cokernel Z/p", ok,
            f"kernel {info.kernel}, cokernel {info.cokernel}")
    rep.add("H_0(X/G;Z) = Z", Hq.group(0) == AbelianGroup(1), str(Hq.group(0)))
    return rep


def coprime_check(X: EquivariantChainComplex, ell: int) -> Report:
    """With ``Z/ell`` coefficients, ``ell`` prime to ``|G|``, invariant-chain
    homology agrees with the invariants of homology."""
    if not isinstance(ell, int) or not is_prime(ell):
        raise BadParameter(f"coefficient prime expected, got {ell!r}")
    if gcd(ell, X.group.order) != 1:
        raise NotCoprime(f"{ell} divides the group order {X.group.order}")
    F = Coeff.mod(ell)
    lhs = homology(invariant_complex(X, ell).complex, F).groups()
    rhs = invariant_homology(X, F)
    rep = Report(f"invariant chains versus invariant homology over Z/{ell}")
    rep.values["H(G,X;Z/l)"] = _strs(lhs)
    rep.values["H(X;Z/l)^G"] = _strs(rhs)
    bad = [k for k, (a, b) in enumerate(zip(lhs, rhs)) if a != b]
    rep.add("degreewise isomorphic", not bad, "" if not bad else f"differ in degrees {bad}",
            witness=bad or None)
    return rep


def free_action_check(X: EquivariantChainComplex) -> Report:
    """For free actions the norm map is an isomorphism on homology."""
    if not X.is_free():
        raise NotFree("some cell has a nontrivial stabilizer")
    Hq = homology(coinvariant_complex(X).complex, Z)
    Hi = homology(invariant_complex(X).complex, Z)
    homs = map_on_homology(norm_map(X).matrices, Hq, Hi)
    rep = Report("norm map for a free action")
    rep.values["H(X/G;Z)"] = _strs(Hq.groups())
    rep.values["H(G,X;Z)"] = _strs(Hi.groups())
    for k, f in enumerate(homs):
        info = hom_on_presentations(f)
        rep.add(f"norm induces an isomorphism in degree {k}", info.isomorphism,
                "" if info.isomorphism else f"kernel {info.kernel}, cokernel {info.cokernel}")
    return rep


def collapse_check(X: EquivariantChainComplex, p: int | None = None) -> Report:
    from .hyper import collapse_check as _collapse
    cyclic_prime(X)
    return _collapse(X, p)
