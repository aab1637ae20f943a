"""Exact integer linear algebra and finitely generated abelian groups.

Everything here works over ``Z`` (``modulus=0``) or over the prime field
``Z/p`` (``modulus=p``).  Entries are Python integers throughout, so there
is no overflow and no floating point.

>>> smith_normal_form(IntMatrix([[2, 4], [6, 8]])).pivots
(2, 4)
>>> str(cokernel(IntMatrix([[2], [2]])))
'Z + Z/2'
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import CompositeModulus, IllDefined, NotASubgroup


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_modulus(modulus: int) -> int:
    if modulus != 0 and not is_prime(modulus):
        raise CompositeModulus(f"modulus must be 0 or a prime, got {modulus}")
    return modulus


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    The shape is stored explicitly so that ``0 x n`` and ``n x 0`` matrices
    keep their column/row counts.
    """

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, data: Iterable[Iterable[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if rows == 0:
            data = ()
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"ragged or mis-shaped matrix data for shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, entries: Sequence[int], rows: int | None = None,
             cols: int | None = None) -> "IntMatrix":
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, e in enumerate(entries):
            m[i][i] = e
        return cls(m, rows, cols)

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int) -> "IntMatrix":
        columns = [tuple(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length does not match row count")
        return cls(zip(*columns) if columns else [[] for _ in range(rows)],
                   rows, len(columns))

    @staticmethod
    def hstack(*blocks: "IntMatrix") -> "IntMatrix":
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("hstack: row counts differ")
        return IntMatrix([sum((b.data[i] for b in blocks), ()) for i in range(rows)],
                         rows, sum(b.cols for b in blocks))

    @staticmethod
    def vstack(*blocks: "IntMatrix") -> "IntMatrix":
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("vstack: column counts differ")
        return IntMatrix([r for b in blocks for r in b.data],
                         sum(b.rows for b in blocks), cols)

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for r in self.data for x in r)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(c) for c in zip(*self.data)] if self.rows else [()] * self.cols

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def select_rows(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix([self.data[i] for i in idx], len(idx), self.cols)

    def select_columns(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix([[r[j] for j in idx] for r in self.data], self.rows, len(idx))

    # -- arithmetic ---------------------------------------------------
    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self.data) if self.rows else [[] for _ in range(self.cols)],
                         self.cols, self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        odata = other.data
        for r in self.data:
            acc = [0] * other.cols
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(odata[k]):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return IntMatrix(out, self.rows, other.cols)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(r, vector) if a) for r in self.data)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in r] for r in self.data], self.rows, self.cols)

    def reduce(self, modulus: int) -> "IntMatrix":
        if not modulus:
            return self
        return IntMatrix([[a % modulus for a in r] for r in self.data], self.rows, self.cols)

    def is_zero(self, modulus: int = 0) -> bool:
        if modulus:
            return all(a % modulus == 0 for r in self.data for a in r)
        return not any(a for r in self.data for a in r)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    # -- identity -----------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"


def as_matrix(a) -> IntMatrix:
    return a if isinstance(a, IntMatrix) else IntMatrix(a)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` invertible over the ring.

    ``pivots`` lists the diagonal of ``D`` (length ``min(rows, cols)``);
    nonzero pivots come first and form a divisibility chain.  Over ``Z/p``
    every nonzero pivot is 1.  ``U_inv`` and ``V_inv`` are kept because
    column spans and lifts need them.
    """

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix
    pivots: tuple[int, ...]
    modulus: int = 0

    @property
    def rank(self) -> int:
        return sum(1 for d in self.pivots if d)


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@lru_cache(maxsize=4096)
def smith_normal_form(A: IntMatrix, modulus: int = 0) -> SmithForm:
    """Smith normal form with transformation matrices.

    Pivoting is deterministic: the entry of smallest absolute value (over
    ``Z/p``: smallest residue) in the active block, ties broken by lowest
    row then lowest column.
    """
    A = as_matrix(A)
    p = check_modulus(modulus)
    m, n = A.rows, A.cols
    D = [list(r) for r in A.reduce(p).data]
    U, Ui, V, Vi = _eye(m), _eye(m), _eye(n), _eye(n)

    def red(row):
        return [x % p for x in row] if p else row

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_addmul(dst, src, q):
        # row_dst += q * row_src
        D[dst] = red([a + q * b for a, b in zip(D[dst], D[src])])
        U[dst] = red([a + q * b for a, b in zip(U[dst], U[src])])
        for r in Ui:
            r[src] -= q * r[dst]
            if p:
                r[src] %= p

    def col_addmul(dst, src, q):
        # col_dst += q * col_src
        for r in D:
            r[dst] += q * r[src]
            if p:
                r[dst] %= p
        for r in V:
            r[dst] += q * r[src]
            if p:
                r[dst] %= p
        Vi[src] = red([a - q * b for a, b in zip(Vi[src], Vi[dst])])

    def row_scale(i, c, c_inv):
        D[i] = red([c * a for a in D[i]])
        U[i] = red([c * a for a in U[i]])
        for r in Ui:
            r[i] *= c_inv
            if p:
                r[i] %= p

    def size(x):
        return x if p else abs(x)

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or size(x) < best[0]):
                    best = (size(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            if p and D[t][t] != 1:
                c = D[t][t]
                row_scale(t, pow(c, -1, p), c)
            a = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_addmul(i, t, -(D[i][t] // a))
                    dirty = dirty or bool(D[i][t])
            for j in range(t + 1, n):
                if D[t][j]:
                    col_addmul(j, t, -(D[t][j] // a))
                    dirty = dirty or bool(D[t][j])
            if dirty:
                cands = [(size(D[i][t]), 0, i) for i in range(t + 1, m) if D[i][t]]
                cands += [(size(D[t][j]), 1, j) for j in range(t + 1, n) if D[t][j]]
                _, kind, k = min(cands)
                if kind == 0:
                    row_swap(k, t)
                else:
                    col_swap(k, t)
                continue
            if not p and abs(a) != 1:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % a), None)
                if bad is not None:
                    row_addmul(t, bad[0], 1)
                    continue
            break
        if D[t][t] < 0:
            row_scale(t, -1, -1)
        t += 1

    pivots = tuple(D[i][i] for i in range(min(m, n)))
    return SmithForm(IntMatrix(D, m, n), IntMatrix(U, m, m), IntMatrix(V, n, n),
                     IntMatrix(Ui, m, m), IntMatrix(Vi, n, n), pivots, p)


def rank(A: IntMatrix, modulus: int = 0) -> int:
    return smith_normal_form(as_matrix(A), modulus).rank


def kernel_basis(A: IntMatrix, modulus: int = 0) -> IntMatrix:
    """Columns form a basis of ``ker A``; over ``Z`` the basis is saturated."""
    A = as_matrix(A)
    snf = smith_normal_form(A, check_modulus(modulus))
    return snf.V.select_columns(range(snf.rank, A.cols))


def column_span_basis(A: IntMatrix, modulus: int = 0) -> IntMatrix:
    """A basis (as columns) of the column span of ``A``."""
    A = as_matrix(A)
    snf = smith_normal_form(A, modulus)
    cols = []
    for i in range(snf.rank):
        d = snf.pivots[i]
        c = [d * x for x in snf.U_inv.column(i)]
        cols.append([x % modulus for x in c] if modulus else c)
    return IntMatrix.from_columns(cols, A.rows)


def solve(A: IntMatrix, b: Sequence[int], modulus: int = 0) -> tuple[int, ...] | None:
    """An integer (or mod-p) solution of ``A x = b``, or ``None``.

    The solution is the canonical one with zero free coordinates in the
    Smith basis.
    """
    A = as_matrix(A)
    snf = smith_normal_form(A, modulus)
    y = snf.U.apply(b)
    if modulus:
        y = [v % modulus for v in y]
    r = snf.rank
    x = [0] * A.cols
    for i in range(r):
        d = snf.pivots[i]
        if y[i] % d:
            return None
        x[i] = y[i] // d
    if any(y[i] for i in range(r, A.rows)):
        return None
    x = snf.V.apply(x)
    return tuple(v % modulus for v in x) if modulus else x


def solve_columns(A: IntMatrix, B: IntMatrix, modulus: int = 0) -> IntMatrix | None:
    A = as_matrix(A)
    snf = smith_normal_form(A, modulus)
    Y = (snf.U @ B).reduce(modulus)
    r = snf.rank
    X = [[0] * B.cols for _ in range(A.cols)]
    for i in range(r):
        d = snf.pivots[i]
        for j, y in enumerate(Y.data[i]):
            if y % d:
                return None
            X[i][j] = y // d
    if any(any(row) for row in Y.data[r:]):
        return None
    return (snf.V @ IntMatrix(X, A.cols, B.cols)).reduce(modulus)


def in_span(A: IntMatrix, b: Sequence[int], modulus: int = 0) -> bool:
    return solve(A, b, modulus) is not None


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank + Z/t1 + Z/t2 + ...`` with ``t1 | t2 | ...``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(x < 2 for x in t):
            raise ValueError(f"torsion coefficients must be >= 2, got {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion coefficients do not form a divisibility chain: {t}")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "AbelianGroup":
        """Normalize a direct sum of cyclic groups (0 meaning ``Z``)."""
        orders = [abs(int(o)) for o in orders]
        free = sum(1 for o in orders if o == 0)
        snf = smith_normal_form(IntMatrix.diag([o for o in orders if o]))
        return cls(free, tuple(d for d in snf.pivots if d > 1))

    @classmethod
    def elementary(cls, p: int, dim: int) -> "AbelianGroup":
        return cls(0, (p,) * dim)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        o = 1
        for t in self.torsion:
            o *= t
        return o

    @property
    def exponent(self) -> int | None:
        if self.free_rank:
            return None
        e = 1
        for t in self.torsion:
            e = lcm(e, t)
        return e

    @property
    def num_generators(self) -> int:
        return self.free_rank + len(self.torsion)

    def p_torsion_count(self, p: int) -> int:
        return sum(1 for t in self.torsion if t % p == 0)

    def dim_mod(self, p: int) -> int:
        """Dimension of ``self (x) Z/p``."""
        return self.free_rank + self.p_torsion_count(p)

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts)


def cokernel(A: IntMatrix) -> AbelianGroup:
    """``Z^rows / column span of A``."""
    A = as_matrix(A)
    snf = smith_normal_form(A)
    return AbelianGroup(A.rows - snf.rank, tuple(d for d in snf.pivots if d > 1))


@dataclass(frozen=True)
class Presentation:
    """Generators ``0..n-1`` subject to the columns of ``relations``."""

    relations: IntMatrix

    @property
    def generators(self) -> int:
        return self.relations.rows

    @classmethod
    def diagonal(cls, orders: Sequence[int]) -> "Presentation":
        return cls(IntMatrix.diag(list(orders)))

    @classmethod
    def free(cls, n: int) -> "Presentation":
        return cls(IntMatrix.zeros(n, 0))

    def group(self) -> AbelianGroup:
        return cokernel(self.relations)

    def contains_relation(self, v: Sequence[int]) -> bool:
        return in_span(self.relations, v)


@dataclass(frozen=True)
class Subquotient:
    """``span(cycles) / span(boundaries)`` with coordinates.

    ``generators`` holds one ambient column per group generator, listed
    torsion first (in divisibility order) and then free.  ``project`` sends
    an ambient vector lying in ``span(cycles)`` to group coordinates,
    reduced modulo each generator's order.
    """

    group: AbelianGroup
    generators: IntMatrix
    orders: tuple[int, ...]
    modulus: int
    cycles: IntMatrix
    _snf: SmithForm
    _keep: tuple[int, ...]

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        x = solve(self.cycles, v, self.modulus)
        if x is None:
            raise NotASubgroup("vector does not lie in the span of the cycles")
        y = self._snf.U.apply(x)
        out = []
        for i, o in zip(self._keep, self.orders):
            out.append(y[i] % o if o else y[i])
        return tuple(out)

    def presentation(self) -> Presentation:
        return Presentation.diagonal(self.orders)

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self.project(v))


def subquotient(cycles: IntMatrix, boundaries: IntMatrix, modulus: int = 0) -> Subquotient:
    """Quotient of the lattice spanned by ``cycles`` by that of ``boundaries``.

    ``cycles`` must have independent columns (a basis).  Raises
    :class:`NotASubgroup` when some boundary column is outside the cycle span.
    """
    cycles = as_matrix(cycles).reduce(modulus)
    boundaries = as_matrix(boundaries).reduce(modulus)
    check_modulus(modulus)
    if cycles.rows != boundaries.rows:
        raise ValueError("cycles and boundaries live in different ambient spaces")
    k = cycles.cols
    if rank(cycles, modulus) != k:
        raise ValueError("cycle columns are not independent")
    X = solve_columns(cycles, boundaries, modulus)
    if X is None:
        raise NotASubgroup("boundary columns do not lie in the cycle span")
    snf = smith_normal_form(X, modulus)
    r = snf.rank
    keep, orders = [], []
    for i in range(k):
        d = snf.pivots[i] if i < r else 0
        if d == 1:
            continue
        keep.append(i)
        orders.append(modulus if modulus else d)
    gens = []
    for i in keep:
        g = cycles.apply(snf.U_inv.column(i))
        gens.append(tuple(x % modulus for x in g) if modulus else g)
    group = AbelianGroup.from_orders(orders)
    return Subquotient(group, IntMatrix.from_columns(gens, cycles.rows), tuple(orders),
                       modulus, cycles, snf, tuple(keep))


# ---------------------------------------------------------------------------
# Homomorphisms between presented groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupHom:
    domain: Presentation
    codomain: Presentation
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.codomain.generators, self.domain.generators):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match presentations "
                             f"({self.codomain.generators}, {self.domain.generators})")

    def check(self) -> "GroupHom":
        for j, rel in enumerate(self.domain.relations.columns()):
            if not self.codomain.contains_relation(self.matrix.apply(rel)):
                raise IllDefined(f"relation {j} of the domain is not sent to a relation")
        return self

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(x)

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self o inner``."""
        return GroupHom(inner.domain, self.codomain, self.matrix @ inner.matrix)

    def kernel_lattice(self) -> IntMatrix:
        """Basis of ``{x : f(x) is a relation}`` inside the domain generators."""
        k = self.domain.generators
        stacked = IntMatrix.hstack(self.matrix, self.codomain.relations)
        K = kernel_basis(stacked).select_rows(range(k))
        return column_span_basis(K)

    def is_zero(self) -> bool:
        return all(self.codomain.contains_relation(c) for c in self.matrix.columns())


@dataclass(frozen=True)
class HomAnalysis:
    kernel: AbelianGroup
    image: AbelianGroup
    cokernel: AbelianGroup
    kernel_exponent: int | None
    kernel_generators: IntMatrix

    @property
    def injective(self) -> bool:
        return self.kernel.is_trivial

    @property
    def surjective(self) -> bool:
        return self.cokernel.is_trivial

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective


def hom_on_presentations(f: GroupHom) -> HomAnalysis:
    """Kernel, image and cokernel of a homomorphism of presented groups."""
    f.check()
    ker = subquotient(f.kernel_lattice(), f.domain.relations)
    both = IntMatrix.hstack(f.matrix, f.codomain.relations)
    img = subquotient(column_span_basis(both), f.codomain.relations)
    return HomAnalysis(ker.group, img.group, cokernel(both), ker.group.exponent,
                       ker.generators)


def homology_at(f: GroupHom, g: GroupHom) -> Subquotient:
    """``ker g / im f`` for composable ``A -f-> B -g-> C``.

    Raises :class:`NotASubgroup` when ``g o f`` is not zero.
    """
    if f.codomain.relations != g.domain.relations:
        raise ValueError("maps are not composable")
    image = IntMatrix.hstack(f.matrix, g.domain.relations)
    return subquotient(g.kernel_lattice(), image)
