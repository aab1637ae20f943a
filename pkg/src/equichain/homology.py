"""Homology over Z, Q and Z/p, induced maps, and the group action on homology."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .abelian import (AbelianGroup, GroupHom, HomAnalysis, IntMatrix, Presentation, Subquotient,
                      check_modulus, hom_on_presentations, kernel_basis, rank, subquotient)
from .complexes import ChainComplex, ChainMap, EquivariantChainComplex
from .errors import CompositeModulus
from .functors import invariant_complex


@dataclass(frozen=True)
class Coeff:
    """Coefficient ring: ``Z``, ``Q`` or ``Z/p``."""

    kind: str
    p: int = 0

    @classmethod
    def parse(cls, text: str) -> "Coeff":
        t = text.strip().lower()
        if t == "z":
            return cls("Z")
        if t == "q":
            return cls("Q")
        if t.startswith("zp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise CompositeModulus(f"bad modulus in coefficient {text!r}") from None
            return cls.mod(p)
        raise ValueError(f"unknown coefficient {text!r} (use z, q or zp:P)")

    @classmethod
    def mod(cls, p: int) -> "Coeff":
        if p == 0:
            return cls("Z")
        check_modulus(p)
        return cls("Zp", p)

    @property
    def modulus(self) -> int:
        return self.p if self.kind == "Zp" else 0

    def __str__(self) -> str:
        return {"Z": "Z", "Q": "Q"}.get(self.kind, f"Z/{self.p}")


CoeffLike = Union[Coeff, str, int]
Z = Coeff("Z")
Q = Coeff("Q")


def as_coeff(c: CoeffLike) -> Coeff:
    if isinstance(c, Coeff):
        return c
    if isinstance(c, str):
        return Coeff.parse(c)
    return Coeff.mod(int(c))


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    group: AbelianGroup
    coeff: Coeff
    subquotient: Subquotient | None

    @property
    def generators(self) -> IntMatrix:
        return self.subquotient.generators

    @property
    def orders(self) -> tuple[int, ...]:
        return self.subquotient.orders

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.subquotient.project(v)

    def presentation(self) -> Presentation:
        return self.subquotient.presentation()

    def dim(self) -> int:
        """Rank over Q, or dimension over Z/p."""
        return self.group.free_rank if self.coeff.kind != "Zp" else len(self.group.torsion)


@dataclass(frozen=True)
class GradedGroup:
    degrees: tuple[HomologyGroup, ...]
    coeff: Coeff

    def __getitem__(self, k: int) -> HomologyGroup:
        return self.degrees[k]

    def __len__(self) -> int:
        return len(self.degrees)

    def group(self, k: int) -> AbelianGroup:
        return self.degrees[k].group if 0 <= k < len(self.degrees) else AbelianGroup()

    def groups(self) -> list[AbelianGroup]:
        return [h.group for h in self.degrees]

    def dims(self) -> list[int]:
        return [h.dim() for h in self.degrees]

    def __str__(self) -> str:
        return ", ".join(f"H_{h.degree} = {h.group}" for h in reversed(self.degrees))


def homology(C: ChainComplex, coeff: CoeffLike = Z) -> GradedGroup:
    coeff = as_coeff(coeff)
    m = coeff.modulus
    if C.modulus and C.modulus != m:
        raise ValueError(f"complex is over Z/{C.modulus}; cannot take {coeff} homology")
    out = []
    for k in range(C.dim + 1):
        dk, dk1 = C.boundary(k), C.boundary(k + 1)
        if coeff.kind == "Q":
            r = C.cell_counts[k] - rank(dk) - rank(dk1)
            out.append(HomologyGroup(k, AbelianGroup(r), coeff, None))
            continue
        sq = subquotient(kernel_basis(dk.reduce(m), m), dk1, m)
        out.append(HomologyGroup(k, sq.group, coeff, sq))
    return GradedGroup(tuple(out), coeff)


def map_on_homology(matrices: Sequence[IntMatrix], source: GradedGroup,
                    target: GradedGroup) -> list[GroupHom]:
    """Push generator representatives through chain-level ``matrices`` and
    project into the target's coordinates."""
    homs = []
    for k in range(len(source)):
        s = source[k]
        if k < len(target):
            t = target[k]
            f = matrices[k] if k < len(matrices) else IntMatrix.zeros(t.generators.rows,
                                                                      s.generators.rows)
            cols = [t.project(f.apply(g)) for g in s.generators.columns()]
            tp = t.presentation()
        else:
            cols, tp = [() for _ in range(s.generators.cols)], Presentation.free(0)
        mat = IntMatrix.from_columns(cols, tp.generators)
        homs.append(GroupHom(s.presentation(), tp, mat).check())
    return homs


def induced_map(f: ChainMap, coeff: CoeffLike = Z, source: GradedGroup | None = None,
                target: GradedGroup | None = None) -> list[GroupHom]:
    coeff = as_coeff(coeff)
    if source is None:
        source = homology(f.source, coeff)
    if target is None:
        target = homology(f.target, coeff)
    return map_on_homology(f.matrices, source, target)


def homology_action(X: EquivariantChainComplex, coeff: CoeffLike = Z,
                    H: GradedGroup | None = None) -> list[list[GroupHom]]:
    """``result[t][i]``: the automorphism of ``H_t(X)`` induced by the
    ``i``-th generator of the group."""
    coeff = as_coeff(coeff)
    if H is None:
        H = homology(X.chain_complex, coeff)
    per_gen = [map_on_homology([X.action_matrix(g, k) for k in range(X.dim + 1)], H, H)
               for g in X.group.generators()]
    return [[homs[t] for homs in per_gen] for t in range(len(H))]


def fixed_subgroup(P: Presentation, automorphisms: Sequence[GroupHom]) -> HomAnalysis:
    """Analysis of ``x -> (g x - x)_g`` whose kernel is the fixed subgroup."""
    n = P.generators
    if not automorphisms:
        f = GroupHom(P, Presentation.free(0), IntMatrix.zeros(0, n))
    else:
        blocks = [a.matrix - IntMatrix.identity(n) for a in automorphisms]
        rel = P.relations
        big = IntMatrix.vstack(*[IntMatrix.hstack(*[rel if i == j else IntMatrix.zeros(n, rel.cols)
                                                    for j in range(len(blocks))])
                                 for i in range(len(blocks))])
        f = GroupHom(P, Presentation(big), IntMatrix.vstack(*blocks))
    return hom_on_presentations(f)


def invariant_homology(X: EquivariantChainComplex, coeff: CoeffLike = Z) -> list[AbelianGroup]:
    """``H_t(X; A)^G`` for every ``t``."""
    coeff = as_coeff(coeff)
    work = Z if coeff.kind == "Q" else coeff
    H = homology(X.chain_complex, work)
    action = homology_action(X, work, H)
    out = []
    for t in range(len(H)):
        ker = fixed_subgroup(H[t].presentation(), action[t]).kernel
        out.append(AbelianGroup(ker.free_rank) if coeff.kind == "Q" else ker)
    return out


def invariant_chain_homology(X: EquivariantChainComplex, coeff: CoeffLike = Z) -> GradedGroup:
    """``H(G, X; A)``: homology of the invariant chains."""
    coeff = as_coeff(coeff)
    inv = invariant_complex(X, coeff.modulus)
    return homology(inv.complex, coeff)


@dataclass(frozen=True)
class IStarDegree:
    degree: int
    hom: GroupHom
    analysis: HomAnalysis
    group_order: int

    @property
    def kernel_exponent(self) -> int | None:
        return self.analysis.kernel_exponent

    @property
    def annihilated(self) -> bool:
        e = self.kernel_exponent
        return e is not None and self.group_order % e == 0


def i_star(X: EquivariantChainComplex, coeff: CoeffLike = Z) -> list[IStarDegree]:
    """The map ``H(G, X) -> H(X)`` induced by including invariant chains."""
    coeff = as_coeff(coeff)
    inv = invariant_complex(X, coeff.modulus)
    src = homology(inv.complex, coeff)
    tgt = homology(X.chain_complex, coeff)
    homs = map_on_homology(inv.inclusion, src, tgt)
    return [IStarDegree(k, h, hom_on_presentations(h), X.group.order)
            for k, h in enumerate(homs)]


def reduced(groups: Sequence[AbelianGroup], coeff: Coeff) -> list[AbelianGroup]:
    """Drop one copy of the coefficient ring from degree 0 (non-empty input)."""
    out = list(groups)
    if not out:
        return out
    g0 = out[0]
    if coeff.kind == "Zp":
        if g0.torsion:
            out[0] = AbelianGroup.elementary(coeff.p, len(g0.torsion) - 1)
    elif g0.free_rank:
        out[0] = AbelianGroup(g0.free_rank - 1, g0.torsion)
    return out
