"""Finite groups acting by signed cell permutations on chain complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .abelian import IntMatrix, is_prime
from .errors import InvalidComplex, InvalidGroup, NotAdmissible, NotASubgroup


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------

def group_table_diagnostics(table: Sequence[Sequence[int]]) -> list[str]:
    n = len(table)
    if n == 0:
        return ["multiplication table is empty"]
    out = []
    for i, row in enumerate(table):
        if len(row) != n:
            return [f"multiplication table row {i} has length {len(row)}, expected {n}"]
        for x in row:
            if not isinstance(x, int) or not 0 <= x < n:
                return [f"multiplication table entry {x!r} in row {i} is not an element index"]
    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            out.append(f"element 0 is not the identity (fails at element {a})")
            break
    for a in range(n):
        if sorted(table[a]) != list(range(n)):
            out.append(f"multiplication table row {a} is not a permutation")
            break
    if out:
        return out
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    return [f"multiplication table not associative at ({a},{b},{c})"]
    return out


@dataclass(frozen=True)
class FiniteGroup:
    """Group on the elements ``0..order-1`` with ``0`` the identity.

    Cyclic groups carry a designated ``generator``; the periodic resolution
    used for hypercohomology is built from it.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    label: str | None = None
    generator: int | None = None

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise InvalidGroup("cyclic group order must be positive")
        table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        return cls(n, table, f"cyclic:{n}", 1 if n > 1 else 0)

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls.cyclic(1)

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], label: str | None = None) -> "FiniteGroup":
        diags = group_table_diagnostics(table)
        if diags:
            raise InvalidGroup("; ".join(diags))
        table = tuple(tuple(r) for r in table)
        n = len(table)
        g = cls(n, table, label)
        gen = None
        for x in range(n):
            if g.element_order(x) == n:
                gen = x
                break
        if gen is not None:
            g = cls(n, table, label or f"cyclic:{n}", gen)
        return g

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        return tuple(next(b for b in range(self.order) if self.table[a][b] == 0)
                     for a in range(self.order))

    def power(self, g: int, k: int) -> int:
        x = 0
        for _ in range(k % self.order if self.order else 0):
            x = self.table[x][g]
        return x

    def element_order(self, g: int) -> int:
        x, k = g, 1
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def is_cyclic(self) -> bool:
        return self.generator is not None

    @property
    def prime_order(self) -> int | None:
        """``p`` when the group is cyclic of prime order ``p``."""
        return self.order if is_prime(self.order) else None

    def generators(self) -> tuple[int, ...]:
        """A small generating set: the designated generator if cyclic,
        otherwise a greedy choice in index order."""
        if self.order == 1:
            return ()
        if self.generator is not None:
            return (self.generator,)
        gens, span = [], {0}
        for x in self.elements:
            if x in span:
                continue
            gens.append(x)
            span = self._closure(span | {x})
        return tuple(gens)

    def _closure(self, elems: set[int]) -> set[int]:
        elems = set(elems) | {0}
        frontier = list(elems)
        while frontier:
            new = []
            for a in frontier:
                for b in list(elems):
                    for c in (self.table[a][b], self.table[b][a]):
                        if c not in elems:
                            elems.add(c)
                            new.append(c)
            frontier = new
        return elems

    def is_subgroup(self, elems: Sequence[int]) -> bool:
        s = set(elems)
        if 0 not in s or any(not 0 <= x < self.order for x in s):
            return False
        return all(self.table[a][b] in s for a in s for b in s) and \
            all(self.inverse[a] in s for a in s)

    def subgroup(self, elems: Sequence[int]) -> tuple["FiniteGroup", tuple[int, ...]]:
        """The subgroup on ``elems`` reindexed in increasing order, plus the
        inclusion map (new index -> old index)."""
        if not self.is_subgroup(elems):
            raise NotASubgroup(f"elements {sorted(set(elems))} do not form a subgroup")
        inc = tuple(sorted(set(elems)))
        pos = {g: i for i, g in enumerate(inc)}
        table = [[pos[self.table[a][b]] for b in inc] for a in inc]
        return FiniteGroup.from_table(table), inc

    def to_dict(self) -> dict:
        if self.label == f"cyclic:{self.order}" and self.generator == (1 if self.order > 1 else 0) \
                and self.table == FiniteGroup.cyclic(self.order).table:
            return {"cyclic": self.order}
        return {"order": self.order, "table": [list(r) for r in self.table]}


# ---------------------------------------------------------------------------
# Actions and complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignedAction:
    """``images[g][k][i]`` / ``signs[g][k][i]``: element ``g`` sends the
    ``k``-cell ``i`` to ``signs * cell images``."""

    images: tuple[tuple[tuple[int, ...], ...], ...]
    signs: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def from_lists(cls, images, signs=None) -> "SignedAction":
        images = tuple(tuple(tuple(int(x) for x in dim) for dim in g) for g in images)
        if signs is None:
            signs = tuple(tuple((1,) * len(dim) for dim in g) for g in images)
        else:
            signs = tuple(tuple(tuple(int(s) for s in dim) for dim in g) for g in signs)
        return cls(images, signs)

    @classmethod
    def trivial(cls, order: int, cell_counts: Sequence[int]) -> "SignedAction":
        return cls.from_lists([[list(range(c)) for c in cell_counts] for _ in range(order)])

    def act(self, g: int, k: int, i: int) -> tuple[int, int]:
        return self.images[g][k][i], self.signs[g][k][i]

    def matrix(self, g: int, k: int) -> IntMatrix:
        img, sgn = self.images[g][k], self.signs[g][k]
        n = len(img)
        m = [[0] * n for _ in range(n)]
        for i, (j, s) in enumerate(zip(img, sgn)):
            m[j][i] = s
        return IntMatrix(m, n, n)


@dataclass(frozen=True)
class ChainComplex:
    """Plain chain complex of free modules; ``boundaries[k-1]`` is
    ``d_k : C_k -> C_{k-1}``.  ``modulus`` is 0 for integral complexes and
    ``p`` for complexes of ``Z/p`` vector spaces."""

    cell_counts: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]
    modulus: int = 0

    @property
    def dim(self) -> int:
        return len(self.cell_counts) - 1

    def boundary(self, k: int) -> IntMatrix:
        """``d_k`` for any integer ``k`` (zero maps outside the range)."""
        n = self.cell_counts
        if 1 <= k <= self.dim:
            return self.boundaries[k - 1]
        rows = n[k - 1] if 0 <= k - 1 <= self.dim else 0
        cols = n[k] if 0 <= k <= self.dim else 0
        return IntMatrix.zeros(rows, cols)

    def rank_at(self, k: int) -> int:
        return self.cell_counts[k] if 0 <= k <= self.dim else 0

    def diagnostics(self) -> list[str]:
        out = []
        for k in range(1, self.dim + 1):
            d = self.boundaries[k - 1]
            if d.shape != (self.cell_counts[k - 1], self.cell_counts[k]):
                out.append(f"boundary at dim {k} has shape {d.shape}, expected "
                           f"{(self.cell_counts[k - 1], self.cell_counts[k])}")
        if out:
            return out
        for k in range(2, self.dim + 1):
            dd = (self.boundaries[k - 2] @ self.boundaries[k - 1]).reduce(self.modulus)
            for j, col in enumerate(dd.columns()):
                if any(col):
                    out.append(f"square of boundary nonzero at dim {k}, cell {j}")
                    break
        return out


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    matrices: tuple[IntMatrix, ...]

    def matrix(self, k: int) -> IntMatrix:
        if 0 <= k < len(self.matrices):
            return self.matrices[k]
        return IntMatrix.zeros(self.target.rank_at(k), self.source.rank_at(k))

    def diagnostics(self) -> list[str]:
        out = []
        p = self.target.modulus
        top = max(self.source.dim, self.target.dim)
        for k in range(len(self.matrices)):
            if self.matrices[k].shape != (self.target.rank_at(k), self.source.rank_at(k)):
                out.append(f"chain map matrix at dim {k} has wrong shape")
        if out:
            return out
        for k in range(1, top + 1):
            lhs = self.target.boundary(k) @ self.matrix(k)
            rhs = self.matrix(k - 1) @ self.source.boundary(k)
            if not (lhs - rhs).is_zero(p):
                out.append(f"chain map does not commute with the boundary at dim {k}")
        return out

    def compose(self, inner: "ChainMap") -> "ChainMap":
        """``self o inner``."""
        n = max(len(self.matrices), len(inner.matrices))
        return ChainMap(inner.source, self.target,
                        tuple((self.matrix(k) @ inner.matrix(k)).reduce(self.target.modulus)
                              for k in range(n)))

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        return cls(c, c, tuple(IntMatrix.identity(n) for n in c.cell_counts))


@dataclass(frozen=True)
class EquivariantChainComplex:
    """Algebraic model of a finite G-CW complex.

    ``boundaries[k-1]`` is the integer matrix of ``d_k`` (rows are
    ``(k-1)``-cells, columns ``k``-cells); ``action`` is a signed permutation
    action of ``group`` on the cells of each dimension.
    """

    group: FiniteGroup
    cell_counts: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]
    action: SignedAction
    labels: tuple[tuple[str, ...], ...] | None = field(default=None, compare=False)

    def __hash__(self) -> int:
        # complexes key several caches; hashing the nested tuples each time is slow
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.group, self.cell_counts, self.boundaries, self.action))
            self.__dict__["_hash"] = h
        return h

    @property
    def dim(self) -> int:
        return len(self.cell_counts) - 1

    @property
    def total_cells(self) -> int:
        return sum(self.cell_counts)

    @cached_property
    def chain_complex(self) -> ChainComplex:
        return ChainComplex(self.cell_counts, self.boundaries)

    def boundary(self, k: int) -> IntMatrix:
        return self.chain_complex.boundary(k)

    def action_matrix(self, g: int, k: int) -> IntMatrix:
        return self._action_matrices[(g, k)]

    @cached_property
    def _action_matrices(self) -> dict:
        return {(g, k): self.action.matrix(g, k)
                for g in self.group.elements for k in range(self.dim + 1)}

    def action_chain_map(self, g: int) -> ChainMap:
        c = self.chain_complex
        return ChainMap(c, c, tuple(self.action_matrix(g, k) for k in range(self.dim + 1)))

    def stabilizer(self, k: int, i: int) -> tuple[int, ...]:
        return tuple(g for g in self.group.elements if self.action.images[g][k][i] == i)

    def fixed_cells(self, k: int) -> tuple[int, ...]:
        """Cells fixed by every group element."""
        n = self.group.order
        return tuple(i for i in range(self.cell_counts[k]) if len(self.stabilizer(k, i)) == n)

    def is_free(self) -> bool:
        return all(self.stabilizer(k, i) == (0,)
                   for k in range(self.dim + 1) for i in range(self.cell_counts[k]))

    def with_labels(self, labels) -> "EquivariantChainComplex":
        return EquivariantChainComplex(self.group, self.cell_counts, self.boundaries,
                                       self.action, labels)


def validate(X: EquivariantChainComplex) -> list[str]:
    """Diagnostics for every violated invariant; empty iff ``X`` is valid.

    Besides the chain-complex identities this checks the chain-level form of
    the G-CW conditions: a cell sent to plus or minus itself must be sent to
    exactly itself, and the boundary of a cell fixed by ``g`` may only
    involve cells fixed by ``g``.
    """
    G = X.group
    out = group_table_diagnostics(G.table)
    if out:
        return out
    out = X.chain_complex.diagnostics()
    if out:
        return out
    acts = X.action
    if len(acts.images) != G.order or len(acts.signs) != G.order:
        return [f"action lists {len(acts.images)} elements, group has order {G.order}"]
    for g in G.elements:
        if len(acts.images[g]) != X.dim + 1 or len(acts.signs[g]) != X.dim + 1:
            return [f"action of element {g} does not cover dims 0..{X.dim}"]
        for k in range(X.dim + 1):
            img, sgn = acts.images[g][k], acts.signs[g][k]
            n = X.cell_counts[k]
            if len(img) != n or len(sgn) != n:
                out.append(f"action of element {g} at dim {k} has {len(img)} entries, expected {n}")
            elif sorted(img) != list(range(n)):
                out.append(f"element {g} does not act bijectively on dim {k}")
            elif any(s not in (1, -1) for s in sgn):
                out.append(f"element {g} has a sign other than +1/-1 at dim {k}")
    if out:
        return out
    for k in range(X.dim + 1):
        for i in range(X.cell_counts[k]):
            if acts.act(0, k, i) != (i, 1):
                out.append(f"identity element does not act as identity on dim {k}, cell {i}")
                break
    for g in G.elements:
        for h in G.elements:
            gh = G.mul(g, h)
            for k in range(X.dim + 1):
                for i in range(X.cell_counts[k]):
                    j, s1 = acts.act(h, k, i)
                    l, s2 = acts.act(g, k, j)
                    if acts.act(gh, k, i) != (l, s1 * s2):
                        out.append(f"action of {gh} = {g}*{h} differs from {g} after {h} "
                                   f"at dim {k}, cell {i}")
                        break
    if out:
        return out
    for g in G.elements:
        for k in range(1, X.dim + 1):
            d = X.boundary(k)
            lhs = d @ X.action_matrix(g, k)
            rhs = X.action_matrix(g, k - 1) @ d
            for i, (a, b) in enumerate(zip(lhs.columns(), rhs.columns())):
                if a != b:
                    out.append(f"element {g} is not equivariant at dim {k}, cell {i}")
                    break
    for g in G.elements:
        for k in range(X.dim + 1):
            for i in range(X.cell_counts[k]):
                j, s = acts.act(g, k, i)
                if j == i and s == -1:
                    out.append(f"element {g} sends cell {i} in dim {k} to minus itself")
                    continue
                if j == i and k >= 1:
                    col = X.boundary(k).column(i)
                    bad = [r for r, c in enumerate(col) if c and acts.images[g][k - 1][r] != r]
                    if bad:
                        out.append(f"cell {i} in dim {k} is fixed by element {g} but its "
                                   f"boundary meets the non-fixed cell {bad[0]}")
    return out


def check_valid(X: EquivariantChainComplex) -> EquivariantChainComplex:
    diags = validate(X)
    if diags:
        raise InvalidComplex(diags)
    return X


def make_complex(group: FiniteGroup, boundaries: Sequence, action_images,
                 action_signs=None, cell_counts=None, labels=None,
                 check: bool = True) -> EquivariantChainComplex:
    """Convenience constructor taking nested lists."""
    bds = tuple(b if isinstance(b, IntMatrix) else IntMatrix(b) for b in boundaries)
    if cell_counts is None:
        if bds:
            cell_counts = [bds[0].rows] + [b.cols for b in bds]
        else:
            cell_counts = [len(action_images[0][0])]
    cell_counts = tuple(cell_counts)
    bds = tuple(IntMatrix(b.data, cell_counts[k], cell_counts[k + 1]) if b.rows == 0 else b
                for k, b in enumerate(bds))
    act = SignedAction.from_lists(action_images, action_signs)
    X = EquivariantChainComplex(group, cell_counts, bds, act, labels)
    return check_valid(X) if check else X


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def restrict_action(X: EquivariantChainComplex, H: Sequence[int]) -> EquivariantChainComplex:
    """The same complex viewed as an ``H``-complex."""
    sub, inc = X.group.subgroup(H)
    a = X.action
    act = SignedAction(tuple(a.images[g] for g in inc), tuple(a.signs[g] for g in inc))
    return EquivariantChainComplex(sub, X.cell_counts, X.boundaries, act, X.labels)


def tensor_product(X: EquivariantChainComplex, Y: EquivariantChainComplex) -> EquivariantChainComplex:
    """Cellular product with the diagonal action.

    Cells of dimension ``n`` are the pairs ``(x, y)`` with ``|x| + |y| = n``,
    ordered by ``|x|`` then ``x`` then ``y``; the boundary carries the Koszul
    sign ``d(x*y) = dx*y + (-1)^|x| x*dy``.
    """
    if X.group.table != Y.group.table:
        raise ValueError("tensor product needs both complexes over the same group")
    G = X.group
    dim = X.dim + Y.dim
    index: list[dict] = []
    cells: list[list] = []
    for n in range(dim + 1):
        lst = [(i, a, b) for i in range(max(0, n - Y.dim), min(n, X.dim) + 1)
               for a in range(X.cell_counts[i]) for b in range(Y.cell_counts[n - i])]
        cells.append(lst)
        index.append({c: j for j, c in enumerate(lst)})
    boundaries = []
    for n in range(1, dim + 1):
        m = [[0] * len(cells[n]) for _ in range(len(cells[n - 1]))]
        for col, (i, a, b) in enumerate(cells[n]):
            if i >= 1:
                dx = X.boundary(i)
                for r in range(X.cell_counts[i - 1]):
                    c = dx[r, a]
                    if c:
                        m[index[n - 1][(i - 1, r, b)]][col] += c
            j = n - i
            if j >= 1:
                dy = Y.boundary(j)
                sign = -1 if i % 2 else 1
                for r in range(Y.cell_counts[j - 1]):
                    c = dy[r, b]
                    if c:
                        m[index[n - 1][(i, a, r)]][col] += sign * c
        boundaries.append(IntMatrix(m, len(cells[n - 1]), len(cells[n])))
    images, signs = [], []
    for g in G.elements:
        gi, gs = [], []
        for n in range(dim + 1):
            ii, ss = [], []
            for (i, a, b) in cells[n]:
                a2, s1 = X.action.act(g, i, a)
                b2, s2 = Y.action.act(g, n - i, b)
                ii.append(index[n][(i, a2, b2)])
                ss.append(s1 * s2)
            gi.append(tuple(ii))
            gs.append(tuple(ss))
        images.append(tuple(gi))
        signs.append(tuple(gs))
    Z = EquivariantChainComplex(G, tuple(len(c) for c in cells), tuple(boundaries),
                                SignedAction(tuple(images), tuple(signs)))
    diags = validate(Z)
    if diags:
        raise NotAdmissible(diags)
    return Z


def disjoint_union(X: EquivariantChainComplex, Y: EquivariantChainComplex) -> EquivariantChainComplex:
    if X.group.table != Y.group.table:
        raise ValueError("disjoint union needs both complexes over the same group")
    dim = max(X.dim, Y.dim)

    def count(Z, k):
        return Z.cell_counts[k] if k <= Z.dim else 0

    counts = tuple(count(X, k) + count(Y, k) for k in range(dim + 1))
    boundaries = []
    for k in range(1, dim + 1):
        a, b = X.boundary(k), Y.boundary(k)
        top = IntMatrix.hstack(a, IntMatrix.zeros(a.rows, b.cols))
        bot = IntMatrix.hstack(IntMatrix.zeros(b.rows, a.cols), b)
        boundaries.append(IntMatrix.vstack(top, bot))
    images, signs = [], []
    for g in X.group.elements:
        gi, gs = [], []
        for k in range(dim + 1):
            off = count(X, k)
            xi = X.action.images[g][k] if k <= X.dim else ()
            xs = X.action.signs[g][k] if k <= X.dim else ()
            yi = Y.action.images[g][k] if k <= Y.dim else ()
            ys = Y.action.signs[g][k] if k <= Y.dim else ()
            gi.append(tuple(xi) + tuple(off + j for j in yi))
            gs.append(tuple(xs) + tuple(ys))
        images.append(tuple(gi))
        signs.append(tuple(gs))
    return EquivariantChainComplex(X.group, counts, tuple(boundaries),
                                   SignedAction(tuple(images), tuple(signs)))


def cone(X: EquivariantChainComplex) -> EquivariantChainComplex:
    """Chain-level cone: a fixed apex ``a`` (0-cell 0) and a cell ``c*x`` of
    dimension ``|x|+1`` for every cell ``x``, with ``d(c*v) = v - a`` and
    ``d(c*x) = x - c*(dx)`` in higher dimensions."""
    G = X.group
    n = X.cell_counts
    dim = X.dim + 1 if X.total_cells else 0
    # dim k cells: [x in X_k] + [c*y for y in X_{k-1}]; apex only in dim 0
    def xk(k):
        return n[k] if k <= X.dim else 0

    counts = [1 + xk(0)] + [xk(k) + xk(k - 1) for k in range(1, dim + 1)]
    boundaries = []
    for k in range(1, dim + 1):
        rows, cols = counts[k - 1], counts[k]
        m = [[0] * cols for _ in range(rows)]
        row_off = 1 if k == 1 else 0          # X_{k-1} block starts after the apex in dim 0
        cone_row_off = row_off + xk(k - 1)     # c*X_{k-2} block in dim k-1
        if k <= X.dim:
            d = X.boundary(k)
            for r in range(d.rows):
                for c in range(d.cols):
                    m[row_off + r][c] = d[r, c]
        base = xk(k)
        for y in range(xk(k - 1)):
            col = base + y
            m[row_off + y][col] += 1
            if k == 1:
                m[0][col] -= 1
            else:
                d = X.boundary(k - 1)
                for r in range(d.rows):
                    if d[r, y]:
                        m[cone_row_off + r][col] -= d[r, y]
        boundaries.append(IntMatrix(m, rows, cols))
    images, signs = [], []
    for g in G.elements:
        gi, gs = [], []
        for k in range(dim + 1):
            off = 1 if k == 0 else 0
            ii = ([0] if k == 0 else []) + [off + j for j in (X.action.images[g][k] if k <= X.dim else ())]
            ss = ([1] if k == 0 else []) + list(X.action.signs[g][k] if k <= X.dim else ())
            if k >= 1:
                ii += [xk(k) + j for j in X.action.images[g][k - 1]]
                ss += list(X.action.signs[g][k - 1])
            gi.append(tuple(ii))
            gs.append(tuple(ss))
        images.append(tuple(gi))
        signs.append(tuple(gs))
    return EquivariantChainComplex(G, tuple(counts), tuple(boundaries),
                                   SignedAction(tuple(images), tuple(signs)))
