"""The long exact sequence relating quotient, invariant-chain and fixed-set
homology for ``Z/p``-actions, with an explicit connecting homomorphism.

    ... -> H_n(X/G) -N-> H_n(G,X) -pi-> H_n(X^G; Z/p) -delta-> H_{n-1}(X/G) -> ...
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import AbelianGroup, GroupHom, IntMatrix, Presentation, homology_at
from .complexes import EquivariantChainComplex
from .errors import NotASubgroup, NotPrimeOrder
from .functors import (coinvariant_complex, fixed_complex, fixed_projection, invariant_complex,
                       norm_map, orbit_basis)
from .homology import Coeff, GradedGroup, Z, homology, map_on_homology
from .report import Report


@dataclass(frozen=True)
class LESTerm:
    label: str
    kind: str  # "quotient" | "invariant" | "fixed" | "zero"
    degree: int
    presentation: Presentation

    @property
    def group(self) -> AbelianGroup:
        return self.presentation.group()


@dataclass(frozen=True)
class LongExactSequence:
    """``maps[i]`` goes from ``terms[i]`` to ``terms[i+1]``."""

    terms: tuple[LESTerm, ...]
    maps: tuple[GroupHom, ...]
    p: int

    def map_between(self, kind: str, degree: int) -> GroupHom:
        """The map leaving the term of the given kind and degree."""
        for i, t in enumerate(self.terms[:-1]):
            if t.kind == kind and t.degree == degree:
                return self.maps[i]
        raise KeyError(f"no {kind} term in degree {degree}")

    def replace_map(self, i: int, f: GroupHom) -> "LongExactSequence":
        maps = list(self.maps)
        maps[i] = f
        return LongExactSequence(self.terms, tuple(maps), self.p)


_ZERO = Presentation.free(0)


def _pres(H: GradedGroup, n: int) -> Presentation:
    return H[n].presentation() if 0 <= n < len(H) else _ZERO


def _zero_hom(a: Presentation, b: Presentation) -> GroupHom:
    return GroupHom(a, b, IntMatrix.zeros(b.generators, a.generators))


def _degree_maps(homs: list[GroupHom], n: int, a: Presentation, b: Presentation) -> GroupHom:
    if 0 <= n < len(homs) and homs[n].domain == a and homs[n].codomain == b:
        return homs[n]
    return _zero_hom(a, b)


def connecting_map(X: EquivariantChainComplex, n: int, H_fixed: GradedGroup,
                   H_quot: GradedGroup, symmetric: bool = False) -> GroupHom:
    """``delta: H_n(X^G; Z/p) -> H_{n-1}(X/G)``.

    Each generator cycle is lifted to an invariant chain supported on the
    fixed orbits, pushed through the boundary, and divided by the norm.
    ``symmetric`` picks the alternative lift (residues in ``(-p/2, p/2]``
    plus the norm of the all-ones chain) used to test independence of the
    choice.
    """
    p = X.group.prime_order
    src, tgt = _pres(H_fixed, n), _pres(H_quot, n - 1)
    if n < 1 or n >= len(H_fixed) or n - 1 >= len(H_quot):
        return _zero_hom(src, tgt)
    inv = invariant_complex(X)
    ob = orbit_basis(X)
    _, cells = fixed_complex(X, p)
    pos = {c: i for i, c in enumerate(cells[n])}
    stab_n = [ob[n][j].stabilizer_order for j in inv.orbits[n]]
    stab_m = [ob[n - 1][j].stabilizer_order for j in inv.orbits[n - 1]]
    reps = [ob[n][j].representative for j in inv.orbits[n]]
    cols = []
    for z in H_fixed[n].generators.columns():
        lift = []
        for rep in reps:
            c = z[pos[rep]] % p if rep in pos else 0
            if symmetric and c > p // 2:
                c -= p
            lift.append(c)
        if symmetric:
            lift = [c + s for c, s in zip(lift, stab_n)]
        y = inv.complex.boundary(n).apply(lift)
        x = []
        for yi, s in zip(y, stab_m):
            if yi % s:
                raise AssertionError("boundary of the lift is not a norm")
            x.append(yi // s)
        cols.append(H_quot[n - 1].project(x))
    return GroupHom(src, tgt, IntMatrix.from_columns(cols, tgt.generators)).check()


def build_les(X: EquivariantChainComplex, top: int | None = None,
              symmetric_lift: bool = False) -> LongExactSequence:
    """The sequence from ``H_{top+1}(X^G; Z/p)`` down to ``H_0(X^G; Z/p) -> 0``."""
    p = X.group.prime_order
    if p is None:
        raise NotPrimeOrder(f"group of order {X.group.order} is not of prime order")
    if top is None:
        top = X.dim
    Fp = Coeff.mod(p)
    co = coinvariant_complex(X)
    inv = invariant_complex(X)
    fixed, _ = fixed_complex(X, p)
    Hq = homology(co.complex, Z)
    Hi = homology(inv.complex, Z)
    Hf = homology(fixed, Fp)
    N_star = map_on_homology(norm_map(X).matrices, Hq, Hi)
    pi_star = map_on_homology(fixed_projection(X).matrices, Hi, Hf)

    terms, maps = [], []
    terms.append(LESTerm(f"H_{top + 1}(X^G;Z/{p})", "fixed", top + 1, _pres(Hf, top + 1)))
    for n in range(top, -1, -1):
        q = LESTerm(f"H_{n}(X/G)", "quotient", n, _pres(Hq, n))
        i = LESTerm(f"H_{n}(G,X)", "invariant", n, _pres(Hi, n))
        f = LESTerm(f"H_{n}(X^G;Z/{p})", "fixed", n, _pres(Hf, n))
        maps.append(connecting_map(X, n + 1, Hf, Hq, symmetric_lift))
        maps.append(_degree_maps(N_star, n, q.presentation, i.presentation))
        maps.append(_degree_maps(pi_star, n, i.presentation, f.presentation))
        terms += [q, i, f]
    terms.append(LESTerm("0", "zero", -1, _ZERO))
    maps.append(_zero_hom(terms[-2].presentation, _ZERO))
    return LongExactSequence(tuple(terms), tuple(maps), p)


def check_exact(L: LongExactSequence) -> Report:
    """Exactness at every term that has both an incoming and an outgoing map."""
    rep = Report("long exact sequence")
    for i in range(1, len(L.terms) - 1):
        f, g = L.maps[i - 1], L.maps[i]
        label = L.terms[i].label
        try:
            sq = homology_at(f, g)
        except NotASubgroup:
            rep.add(f"exact at {label}", False, "composite of consecutive maps is nonzero",
                    witness={"junction": i, "term": label})
            continue
        ok = sq.group.is_trivial
        rep.add(f"exact at {label}", ok,
                "" if ok else f"ker/im = {sq.group}",
                witness=None if ok else {"junction": i, "term": label, "defect": str(sq.group)})
    return rep


def les_values(L: LongExactSequence) -> dict:
    return {t.label: str(t.group) for t in L.terms[:-1]}
