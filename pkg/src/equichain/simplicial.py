"""Finite simplicial complexes with simplicial group actions.

Simplices are stored as sorted vertex tuples.  Compiling to a chain complex
orients every simplex by ascending vertex order, so an element acting on a
simplex picks up the parity of the permutation needed to re-sort the image.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .abelian import IntMatrix
from .complexes import EquivariantChainComplex, FiniteGroup, SignedAction, validate
from .errors import InvalidComplex, NotAdmissible


def _parity(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


def _close(simplices: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    out = set()
    for s in simplices:
        s = tuple(sorted(set(s)))
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    return tuple(sorted(out, key=lambda t: (len(t), t)))


@dataclass(frozen=True)
class SimplicialGComplex:
    n_vertices: int
    simplices: tuple[tuple[int, ...], ...]
    group: FiniteGroup
    vertex_action: tuple[tuple[int, ...], ...]

    @classmethod
    def from_facets(cls, n_vertices: int, facets: Iterable[Sequence[int]], group: FiniteGroup,
                    vertex_action: Sequence[Sequence[int]] | None = None) -> "SimplicialGComplex":
        """Close ``facets`` under faces (and add every vertex) and check the action."""
        facets = list(facets) + [(v,) for v in range(n_vertices)]
        if vertex_action is None:
            vertex_action = [list(range(n_vertices))] * group.order
        K = cls(n_vertices, _close(facets), group, tuple(tuple(p) for p in vertex_action))
        diags = K.diagnostics()
        if diags:
            raise InvalidComplex(diags)
        return K

    @cached_property
    def _simplex_set(self) -> frozenset:
        return frozenset(self.simplices)

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def by_dim(self, k: int) -> list[tuple[int, ...]]:
        return [s for s in self.simplices if len(s) == k + 1]

    def image(self, g: int, s: Sequence[int]) -> tuple[int, ...]:
        return tuple(sorted(self.vertex_action[g][v] for v in s))

    def diagnostics(self) -> list[str]:
        G, out = self.group, []
        if len(self.vertex_action) != G.order:
            return [f"vertex action lists {len(self.vertex_action)} elements, group has {G.order}"]
        for g, perm in enumerate(self.vertex_action):
            if sorted(perm) != list(range(self.n_vertices)):
                return [f"element {g} does not permute the vertices"]
        if any(v != i for i, v in enumerate(self.vertex_action[0])):
            out.append("identity element does not fix every vertex")
        for g in G.elements:
            for h in G.elements:
                gh = G.mul(g, h)
                for v in range(self.n_vertices):
                    if self.vertex_action[gh][v] != self.vertex_action[g][self.vertex_action[h][v]]:
                        out.append(f"vertex action of {gh} = {g}*{h} is not a composite at vertex {v}")
                        break
        sset = self._simplex_set
        for s in self.simplices:
            for k in range(1, len(s)):
                for f in combinations(s, k):
                    if f not in sset:
                        out.append(f"face {f} of simplex {s} is missing")
            for g in G.elements:
                if self.image(g, s) not in sset:
                    out.append(f"element {g} sends simplex {s} outside the complex")
        return out

    def admissibility_violations(self) -> list[tuple[tuple[int, ...], int]]:
        """``(simplex, element)`` pairs where the simplex is fixed setwise but
        not vertexwise."""
        bad = []
        for s in self.simplices:
            for g in self.group.elements:
                if self.image(g, s) == s and any(self.vertex_action[g][v] != v for v in s):
                    bad.append((s, g))
        return bad

    def is_admissible(self) -> bool:
        return not self.admissibility_violations()

    def to_chain_complex(self) -> EquivariantChainComplex:
        bad = self.admissibility_violations()
        if bad:
            s, g = bad[0]
            raise NotAdmissible([f"simplex {s} is fixed setwise but not vertexwise by element {g}; "
                                 f"apply barycentric_subdivision first"])
        return to_chain_complex(self)

    def underlying(self) -> "SimplicialGComplex":
        """The same complex with the trivial group."""
        return SimplicialGComplex(self.n_vertices, self.simplices, FiniteGroup.trivial(),
                                  (tuple(range(self.n_vertices)),))


def to_chain_complex(K: SimplicialGComplex) -> EquivariantChainComplex:
    """Oriented simplicial chains with the induced signed action (no
    admissibility check; see :meth:`SimplicialGComplex.to_chain_complex`)."""
    dim = max(K.dim, 0)
    cells = [K.by_dim(k) for k in range(dim + 1)]
    index = [{s: i for i, s in enumerate(c)} for c in cells]
    boundaries = []
    for k in range(1, dim + 1):
        m = [[0] * len(cells[k]) for _ in range(len(cells[k - 1]))]
        for j, s in enumerate(cells[k]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                m[index[k - 1][face]][j] += -1 if i % 2 else 1
        boundaries.append(IntMatrix(m, len(cells[k - 1]), len(cells[k])))
    images, signs = [], []
    for g in K.group.elements:
        perm = K.vertex_action[g]
        gi, gs = [], []
        for k in range(dim + 1):
            ii, ss = [], []
            for s in cells[k]:
                img = [perm[v] for v in s]
                ii.append(index[k][tuple(sorted(img))])
                ss.append(_parity(img))
            gi.append(tuple(ii))
            gs.append(tuple(ss))
        images.append(tuple(gi))
        signs.append(tuple(gs))
    labels = tuple(tuple("[" + ",".join(map(str, s)) + "]" for s in c) for c in cells)
    return EquivariantChainComplex(K.group, tuple(len(c) for c in cells), tuple(boundaries),
                                   SignedAction(tuple(images), tuple(signs)), labels)


def barycentric_subdivision(K: SimplicialGComplex) -> SimplicialGComplex:
    """Vertices are the simplices of ``K`` (in ``K.simplices`` order);
    simplices are chains of proper inclusions."""
    verts = list(K.simplices)
    index = {s: i for i, s in enumerate(verts)}
    chains = []

    def extend(chain):
        chains.append(tuple(index[s] for s in chain))
        top = set(chain[-1])
        for t in verts:
            if len(t) > len(chain[-1]) and top <= set(t):
                extend(chain + [t])

    for s in verts:
        extend([s])
    perms = []
    for g in K.group.elements:
        perms.append(tuple(index[K.image(g, s)] for s in verts))
    return SimplicialGComplex(len(verts), _close(chains), K.group, tuple(perms))


def join(K: SimplicialGComplex, L: SimplicialGComplex) -> SimplicialGComplex:
    """Simplicial join with the diagonal action; ``L``'s vertices are shifted
    past ``K``'s."""
    if K.group.table != L.group.table:
        raise ValueError("join needs both complexes over the same group")
    off = K.n_vertices
    ks = [()] + list(K.simplices)
    ls = [()] + [tuple(v + off for v in t) for t in L.simplices]
    simplices = [a + b for a in ks for b in ls if a or b]
    perms = [tuple(K.vertex_action[g]) + tuple(off + v for v in L.vertex_action[g])
             for g in K.group.elements]
    return SimplicialGComplex(off + L.n_vertices,
                              tuple(sorted(simplices, key=lambda t: (len(t), t))),
                              K.group, tuple(perms))


def point(group: FiniteGroup) -> SimplicialGComplex:
    return SimplicialGComplex(1, ((0,),), group, ((0,),) * group.order)


def empty(group: FiniteGroup) -> SimplicialGComplex:
    return SimplicialGComplex(0, (), group, ((),) * group.order)


def cone(K: SimplicialGComplex) -> SimplicialGComplex:
    """Join with a fixed apex (the last vertex)."""
    return join(K, point(K.group))


def check_simplicial(K: SimplicialGComplex) -> SimplicialGComplex:
    diags = K.diagnostics()
    if diags:
        raise InvalidComplex(diags)
    return K


def compile_checked(K: SimplicialGComplex) -> EquivariantChainComplex:
    X = K.to_chain_complex()
    diags = validate(X)
    if diags:
        raise InvalidComplex(diags)
    return X
