"""Invariant, coinvariant and fixed subcomplexes, the norm map, and the
cokernel complex ``D = C^G / N(C_G)``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .abelian import (GroupHom, IntMatrix, Presentation, check_modulus, hom_on_presentations,
                      kernel_basis, solve_columns)
from .complexes import ChainComplex, ChainMap, EquivariantChainComplex
from .errors import NotPrimeOrder, SignedOrbit


@dataclass(frozen=True)
class Orbit:
    representative: int
    cells: tuple[int, ...]
    stabilizer: tuple[int, ...]
    coset_reps: tuple[int, ...]
    # sign with which each orbit cell appears in the orbit sum, aligned with ``cells``
    cell_signs: tuple[int, ...]
    stabilizer_sign: int

    @property
    def stabilizer_order(self) -> int:
        return len(self.stabilizer)

    def sum_vector(self, n: int) -> tuple[int, ...]:
        v = [0] * n
        for c, s in zip(self.cells, self.cell_signs):
            v[c] = s
        return tuple(v)


@dataclass(frozen=True)
class OrbitBasis:
    orbits: tuple[tuple[Orbit, ...], ...]

    def __getitem__(self, k: int) -> tuple[Orbit, ...]:
        return self.orbits[k]

    def orbit_of(self, k: int) -> dict[int, int]:
        """cell index -> position of its orbit in ``orbits[k]``."""
        return {c: j for j, o in enumerate(self.orbits[k]) for c in o.cells}


@lru_cache(maxsize=256)
def orbit_basis(X: EquivariantChainComplex) -> OrbitBasis:
    """Orbits per dimension.  Representatives are minimal cell indices and
    coset representatives are taken in element-index order."""
    G, act = X.group, X.action
    dims = []
    for k in range(X.dim + 1):
        seen: set[int] = set()
        orbits = []
        for rep in range(X.cell_counts[k]):
            if rep in seen:
                continue
            stab, cosets, where = [], [], {}
            sign_stab = 1
            for g in G.elements:
                j, s = act.act(g, k, rep)
                if j == rep:
                    stab.append(g)
                    if s == -1:
                        sign_stab = -1
                if j not in where:
                    where[j] = s
                    cosets.append(g)
            cells = tuple(sorted(where))
            seen.update(cells)
            orbits.append(Orbit(rep, cells, tuple(stab), tuple(cosets),
                                tuple(where[c] for c in cells), sign_stab))
        dims.append(tuple(orbits))
    return OrbitBasis(tuple(dims))


@dataclass(frozen=True)
class InvariantComplex:
    """``C(X; A)^G`` in an explicit basis.

    ``inclusion[k]`` has one ambient column per basis vector; over ``Z`` the
    basis is the orbit sums of orbits with unsigned stabilizer.
    """

    complex: ChainComplex
    inclusion: tuple[IntMatrix, ...]
    orbits: tuple[tuple[int, ...], ...] | None
    modulus: int

    def inclusion_map(self, X: EquivariantChainComplex) -> ChainMap:
        target = X.chain_complex
        if self.modulus:
            target = ChainComplex(target.cell_counts, tuple(b.reduce(self.modulus)
                                                            for b in target.boundaries),
                                  self.modulus)
        return ChainMap(self.complex, target, self.inclusion)


def _boundaries_in_basis(X, basis, modulus):
    out = []
    for k in range(1, X.dim + 1):
        image = (X.boundary(k) @ basis[k]).reduce(modulus)
        B = solve_columns(basis[k - 1], image, modulus)
        if B is None:
            raise AssertionError("boundary of an invariant chain is not invariant")
        out.append(B)
    return tuple(out)


@lru_cache(maxsize=256)
def invariant_complex(X: EquivariantChainComplex, modulus: int = 0) -> InvariantComplex:
    """Invariant chains.

    Over ``Z`` the basis is the orbit sums ``sum_{g in E} g.rep``; over
    ``Z/p`` it is an honest kernel basis of the stacked ``(P_g - 1)``.
    """
    check_modulus(modulus)
    if modulus:
        basis = []
        for k in range(X.dim + 1):
            n = X.cell_counts[k]
            gens = X.group.generators()
            if gens:
                stacked = IntMatrix.vstack(*[X.action_matrix(g, k) - IntMatrix.identity(n)
                                             for g in gens])
            else:
                stacked = IntMatrix.zeros(0, n)
            basis.append(kernel_basis(stacked, modulus))
        basis = tuple(basis)
        bds = _boundaries_in_basis(X, basis, modulus)
        return InvariantComplex(ChainComplex(tuple(b.cols for b in basis), bds, modulus),
                                basis, None, modulus)

    ob = orbit_basis(X)
    basis, kept = [], []
    for k in range(X.dim + 1):
        orbits = [j for j, o in enumerate(ob[k]) if o.stabilizer_sign == 1]
        kept.append(tuple(orbits))
        n = X.cell_counts[k]
        basis.append(IntMatrix.from_columns([ob[k][j].sum_vector(n) for j in orbits], n))
    # the coefficient of an invariant chain on an orbit representative is its
    # coordinate in the orbit-sum basis
    bds = []
    for k in range(1, X.dim + 1):
        image = X.boundary(k) @ basis[k]
        reps = [ob[k - 1][j].representative for j in kept[k - 1]]
        bds.append(image.select_rows(reps))
    return InvariantComplex(ChainComplex(tuple(len(o) for o in kept), tuple(bds)),
                            tuple(basis), tuple(kept), 0)


@dataclass(frozen=True)
class CoinvariantComplex:
    """Chains of the quotient space: one generator per orbit."""

    complex: ChainComplex
    projection: ChainMap
    orbits: OrbitBasis


def _require_unsigned(X, ob):
    for k in range(X.dim + 1):
        for o in ob[k]:
            if o.stabilizer_sign != 1:
                raise SignedOrbit(f"orbit of cell {o.representative} in dim {k} has a stabilizer "
                                  f"acting by -1")


@lru_cache(maxsize=256)
def coinvariant_complex(X: EquivariantChainComplex) -> CoinvariantComplex:
    ob = orbit_basis(X)
    _require_unsigned(X, ob)
    proj = []
    for k in range(X.dim + 1):
        m = [[0] * X.cell_counts[k] for _ in ob[k]]
        for j, o in enumerate(ob[k]):
            for c, s in zip(o.cells, o.cell_signs):
                m[j][c] = s
        proj.append(IntMatrix(m, len(ob[k]), X.cell_counts[k]))
    bds = []
    for k in range(1, X.dim + 1):
        reps = [o.representative for o in ob[k]]
        bds.append(proj[k - 1] @ X.boundary(k).select_columns(reps))
    C = ChainComplex(tuple(len(o) for o in ob.orbits), tuple(bds))
    return CoinvariantComplex(C, ChainMap(X.chain_complex, C, tuple(proj)), ob)


def fixed_complex(X: EquivariantChainComplex, modulus: int = 0) -> tuple[ChainComplex, tuple[tuple[int, ...], ...]]:
    """The subcomplex of cells fixed by all of ``G``, with the fixed cell
    indices per dimension."""
    check_modulus(modulus)
    cells = tuple(X.fixed_cells(k) for k in range(X.dim + 1))
    bds = tuple(X.boundary(k).select_rows(cells[k - 1]).select_columns(cells[k]).reduce(modulus)
                for k in range(1, X.dim + 1))
    return ChainComplex(tuple(len(c) for c in cells), bds, modulus), cells


@lru_cache(maxsize=256)
def norm_map(X: EquivariantChainComplex) -> ChainMap:
    """``N(orbit of s) = sum_g g.s``, written in the orbit-sum basis: the
    stabilizer order on the diagonal."""
    co = coinvariant_complex(X)
    inv = invariant_complex(X)
    mats = []
    for k in range(X.dim + 1):
        orbits = co.orbits[k]
        mats.append(IntMatrix.diag([o.stabilizer_order for o in orbits]))
    return ChainMap(co.complex, inv.complex, tuple(mats))


@dataclass(frozen=True)
class QuotientD:
    """``D_k = coker(N_k)`` presented on the orbit-sum generators.

    ``boundary[k-1]`` is the induced map ``D_k -> D_{k-1}``.  When ``G`` is
    cyclic of prime order, ``comparison[k]`` is the isomorphism
    ``D_k -> C_k(X^G; Z/p)`` and ``fixed`` is the mod-p fixed complex.
    """

    presentations: tuple[Presentation, ...]
    boundary: tuple[GroupHom, ...]
    comparison: tuple[GroupHom, ...] | None
    fixed: ChainComplex | None

    def groups(self):
        return [P.group() for P in self.presentations]

    def comparison_diagnostics(self) -> list[str]:
        """Empty iff every comparison map is an isomorphism commuting with the
        boundaries."""
        if self.comparison is None:
            return ["no comparison map (group order is not prime)"]
        out = []
        for k, phi in enumerate(self.comparison):
            info = hom_on_presentations(phi)
            if not info.isomorphism:
                out.append(f"comparison map at dim {k} is not an isomorphism "
                           f"(kernel {info.kernel}, cokernel {info.cokernel})")
        for k in range(1, len(self.comparison)):
            lhs = self.comparison[k - 1].compose(self.boundary[k - 1])
            fixed_bd = GroupHom(self.comparison[k].codomain, self.comparison[k - 1].codomain,
                                self.fixed.boundary(k))
            rhs = fixed_bd.compose(self.comparison[k])
            diff = GroupHom(lhs.domain, lhs.codomain, lhs.matrix - rhs.matrix)
            if not diff.is_zero():
                out.append(f"comparison maps do not commute with the boundary at dim {k}")
        return out


def quotient_D(X: EquivariantChainComplex, compare: bool | None = None) -> QuotientD:
    """The complex ``D(X)``.

    ``compare=None`` builds the comparison with the mod-p fixed complex when
    ``|G|`` is prime; ``compare=True`` insists on it and raises
    :class:`NotPrimeOrder` otherwise.
    """
    p = X.group.prime_order
    if compare and p is None:
        raise NotPrimeOrder(f"group of order {X.group.order} is not of prime order")
    inv = invariant_complex(X)
    N = norm_map(X)
    pres = tuple(Presentation(N.matrix(k)) for k in range(X.dim + 1))
    bds = tuple(GroupHom(pres[k], pres[k - 1], inv.complex.boundary(k)).check()
                for k in range(1, X.dim + 1))
    if p is None or compare is False:
        return QuotientD(pres, bds, None, None)
    fixed, cells = fixed_complex(X, p)
    ob = orbit_basis(X)
    comps = []
    for k in range(X.dim + 1):
        pos = {c: i for i, c in enumerate(cells[k])}
        m = [[0] * pres[k].generators for _ in cells[k]]
        for col, j in enumerate(inv.orbits[k]):
            rep = ob[k][j].representative
            if rep in pos:
                m[pos[rep]][col] = 1
        target = Presentation(IntMatrix.diag([p] * len(cells[k])))
        comps.append(GroupHom(pres[k], target, IntMatrix(m, len(cells[k]), pres[k].generators)).check())
    return QuotientD(pres, bds, tuple(comps), fixed)


def fixed_projection(X: EquivariantChainComplex) -> ChainMap:
    """Invariant chains (over ``Z``) onto ``C(X^G; Z/p)``: the composite of
    ``C^G -> D`` with the comparison isomorphism."""
    p = X.group.prime_order
    if p is None:
        raise NotPrimeOrder(f"group of order {X.group.order} is not of prime order")
    D = quotient_D(X, compare=True)
    inv = invariant_complex(X)
    return ChainMap(inv.complex, D.fixed, tuple(phi.matrix for phi in D.comparison))
