"""Hypercohomology of cyclic groups of prime order acting on chain complexes.

The double complex has ``C_s(X)`` at every ``(s, t)`` with ``0 <= s <= d`` and
``t <= 0``.  Horizontally it is the cellular boundary; vertically, out of
cochain degree ``q = -t`` of the 2-periodic resolution, it is ``g - 1`` when
``q`` is even and the norm ``N = 1 + g + ... + g^(p-1)`` when ``q`` is odd.
Total degree is ``n = s + t`` and the total differential is
``D = d_h + (-1)^s d_v``.

Filtration ``I`` filters by ``s`` and filtration ``II`` by ``t``.  Page
entries are indexed ``(level, n - level)``, so the page ``I`` index is
``(s, t)`` and the page ``II`` index is ``(t, s)``; in both the differential
``d_r`` has bidegree ``(-r, r - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import modp
from .abelian import (AbelianGroup, GroupHom, IntMatrix, Presentation, hom_on_presentations,
                      homology_at, kernel_basis, subquotient)
from .complexes import EquivariantChainComplex
from .errors import BadParameter, IllDefined, NotAnAutomorphism, NotPrimeOrder
from .functors import invariant_complex, quotient_D
from .homology import Coeff, CoeffLike, Z, as_coeff, homology, homology_action
from .report import Report


def cyclic_prime(X: EquivariantChainComplex) -> tuple[int, int]:
    """``(p, g)`` with ``g`` the designated generator, or :class:`NotPrimeOrder`."""
    p = X.group.prime_order
    if p is None:
        raise NotPrimeOrder(f"group of order {X.group.order} is not cyclic of prime order")
    return p, X.group.generators()[0]


# ---------------------------------------------------------------------------
# cohomology of a cyclic group with coefficients in a presented module
# ---------------------------------------------------------------------------

def cyclic_cohomology(relations: IntMatrix, g: IntMatrix, order: int, degree: int) -> AbelianGroup:
    """``H^degree(Z/order; M)`` for ``M = Z^k / im(relations)`` with the
    generator acting by ``g``."""
    if degree < 0:
        raise BadParameter("cohomological degree must be nonnegative")
    P = Presentation(relations)
    k = P.generators
    try:
        GroupHom(P, P, g).check()
    except IllDefined as exc:
        raise NotAnAutomorphism(f"matrix does not preserve the relations: {exc}") from None
    power = IntMatrix.identity(k)
    norm = IntMatrix.zeros(k, k)
    for _ in range(order):
        norm = norm + power
        power = g @ power
    if not GroupHom(P, P, power - IntMatrix.identity(k)).is_zero():
        raise NotAnAutomorphism(f"generator does not have order dividing {order} on the module")
    g1 = GroupHom(P, P, g - IntMatrix.identity(k))
    N = GroupHom(P, P, norm)
    if degree == 0:
        return hom_on_presentations(g1).kernel
    if degree % 2 == 0:
        return homology_at(N, g1).group
    return homology_at(g1, N).group


def cyclic_cohomology_trivial(M: AbelianGroup, order: int, degree: int) -> AbelianGroup:
    """Closed form for the trivial action."""
    rel = Presentation.diagonal(list(M.torsion) + [0] * M.free_rank).relations
    return cyclic_cohomology(rel, IntMatrix.identity(rel.rows), order, degree)


# ---------------------------------------------------------------------------
# the total complex
# ---------------------------------------------------------------------------

def _columns(X: EquivariantChainComplex, n: int) -> list[int]:
    """Values of ``s`` present in total degree ``n``."""
    return list(range(max(0, n), X.dim + 1))


@lru_cache(maxsize=64)
def _vertical(X: EquivariantChainComplex, s: int, parity: int) -> IntMatrix:
    p, g = cyclic_prime(X)
    n = X.cell_counts[s]
    if parity == 0:
        return X.action_matrix(g, s) - IntMatrix.identity(n)
    total = IntMatrix.zeros(n, n)
    for h in X.group.elements:
        total = total + X.action_matrix(h, s)
    return total


def _canon(n: int) -> int:
    # for n <= 0 the differential only depends on the parity of n
    return n if n > 0 else -(n % 2)


@lru_cache(maxsize=256)
def _total_differential(X: EquivariantChainComplex, n: int) -> IntMatrix:
    src, tgt = _columns(X, n), _columns(X, n - 1)
    cc = X.cell_counts
    roff, r = {}, 0
    for s in tgt:
        roff[s] = r
        r += cc[s]
    rows = [[0] * sum(cc[s] for s in src) for _ in range(r)]
    c0 = 0
    for s in src:
        q = s - n
        if s >= 1:
            B = X.boundary(s)
            for i in range(B.rows):
                for j in range(B.cols):
                    if B[i, j]:
                        rows[roff[s - 1] + i][c0 + j] += B[i, j]
        V = _vertical(X, s, q % 2)
        sign = -1 if s % 2 else 1
        for i in range(V.rows):
            for j in range(V.cols):
                if V[i, j]:
                    rows[roff[s] + i][c0 + j] += sign * V[i, j]
        c0 += cc[s]
    return IntMatrix(rows, r, c0)


def total_differential(X: EquivariantChainComplex, n: int) -> IntMatrix:
    """``D: Tot_n -> Tot_(n-1)``; coordinates ordered by ``s`` then cell."""
    cyclic_prime(X)
    if n > X.dim + 1:
        return IntMatrix.zeros(0, 0)
    return _total_differential(X, _canon(n))


def total_rank(X: EquivariantChainComplex, n: int) -> int:
    return sum(X.cell_counts[s] for s in _columns(X, n))


def _levels(X: EquivariantChainComplex, n: int, filtration: str) -> np.ndarray:
    out = []
    for s in _columns(X, n):
        out += [s if filtration == "I" else n - s] * X.cell_counts[s]
    return np.array(out, dtype=np.int64)


@lru_cache(maxsize=512)
def _diff_modp(X: EquivariantChainComplex, n: int, p: int) -> np.ndarray:
    D = total_differential(X, n)
    if D.rows == 0 or D.cols == 0:
        return np.zeros((total_rank(X, n - 1) if n <= X.dim + 1 else 0,
                         total_rank(X, n) if n <= X.dim else 0), dtype=np.int64)
    return modp.to_array(D, p)


def s_groups(X: EquivariantChainComplex, coeff: CoeffLike, a: int, b: int) -> list[AbelianGroup]:
    """``S_n(G, X; A)`` for ``a <= n <= b`` (exact; each total degree is finite)."""
    p, _ = cyclic_prime(X)
    coeff = as_coeff(coeff)
    if coeff.kind == "Q":
        raise BadParameter("hypercohomology is available over Z and Z/p only")
    if a > b:
        raise BadParameter(f"empty degree range {a}..{b}")
    return [_s_group(X, coeff, n) for n in range(a, b + 1)]


@lru_cache(maxsize=1024)
def _s_group(X, coeff: Coeff, n: int) -> AbelianGroup:
    if n < 0 and n != _canon(n) - 2:
        # 2-periodic below degree 0
        return _s_group(X, coeff, _canon(n) - 2)
    size = total_rank(X, n) if n <= X.dim else 0
    if size == 0:
        return AbelianGroup()
    if coeff.kind == "Zp":
        ell = coeff.p
        dim = size - modp.rank(_diff_modp(X, n, ell), ell) - modp.rank(_diff_modp(X, n + 1, ell), ell)
        return AbelianGroup.elementary(ell, dim)
    Dn = total_differential(X, n)
    Dn1 = total_differential(X, n + 1)
    cycles = kernel_basis(Dn) if Dn.rows else IntMatrix.identity(size)
    bounds = Dn1 if Dn1.cols else IntMatrix.zeros(size, 0)
    return subquotient(cycles, bounds).group


# ---------------------------------------------------------------------------
# spectral pages over Z/p
# ---------------------------------------------------------------------------

@dataclass
class SpectralPage:
    """Dimensions over ``Z/p`` on a window of a page, with the differentials.

    ``dims[(a, b)]`` is the dimension at filtration level ``a`` and
    complementary degree ``b``; ``differentials[(a, b)]`` is the matrix of
    ``d_r`` leaving that entry (towards ``(a - r, b + r - 1)``).
    """

    filtration: str
    r: int | None  # None for E-infinity
    p: int
    a_range: tuple[int, int]
    b_range: tuple[int, int]
    dims: dict[tuple[int, int], int]
    differentials: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)

    def __getitem__(self, ab: tuple[int, int]) -> int:
        return self.dims.get(ab, 0)

    def grid(self) -> list[list[int]]:
        """Rows for ``b`` from high to low, columns for ``a`` from low to high."""
        a0, a1 = self.a_range
        b0, b1 = self.b_range
        return [[self[(a, b)] for a in range(a0, a1 + 1)] for b in range(b1, b0 - 1, -1)]

    def to_text(self) -> str:
        a0, a1 = self.a_range
        b0, b1 = self.b_range
        name = "inf" if self.r is None else str(self.r)
        xa, xb = ("s", "t") if self.filtration == "I" else ("t", "s")
        width = max(3, max((len(str(v)) for v in self.dims.values()), default=1) + 1,
                    max(len(str(a)) for a in (a0, a1)) + 1)
        lines = [f"page {self.filtration} E^{name} over Z/{self.p} (columns {xa}, rows {xb})"]
        head = " " * 5 + "".join(f"{a:>{width}}" for a in range(a0, a1 + 1))
        lines.append(head)
        for b, row in zip(range(b1, b0 - 1, -1), self.grid()):
            lines.append(f"{b:>4} " + "".join(f"{v:>{width}}" for v in row))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "filtration": self.filtration,
            "page": "infinity" if self.r is None else self.r,
            "p": self.p,
            "a_range": list(self.a_range),
            "b_range": list(self.b_range),
            "grid": self.grid(),
            "differentials": {f"{a},{b}": m.tolist() for (a, b), m in sorted(self.differentials.items())
                              if m.size},
        }

    def total_by_degree(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (a, b), v in self.dims.items():
            out[a + b] = out.get(a + b, 0) + v
        return out


class _Filtered:
    """Mod-p bookkeeping for one filtration of the total complex."""

    def __init__(self, X: EquivariantChainComplex, p: int, filtration: str):
        self.X, self.p, self.filtration = X, p, filtration
        self._lv: dict[int, np.ndarray] = {}

    def levels(self, n: int) -> np.ndarray:
        if n not in self._lv:
            self._lv[n] = _levels(self.X, n, self.filtration) if n <= self.X.dim else \
                np.zeros(0, dtype=np.int64)
        return self._lv[n]

    def D(self, n: int) -> np.ndarray:
        rows = len(self.levels(n - 1))
        cols = len(self.levels(n))
        if rows == 0 or cols == 0:
            return np.zeros((rows, cols), dtype=np.int64)
        return _diff_modp(self.X, n, self.p)

    def embed(self, basis: np.ndarray, mask: np.ndarray) -> np.ndarray:
        full = np.zeros((len(mask), basis.shape[1]), dtype=np.int64)
        full[mask] = basis
        return full

    def Z(self, n: int, k: int, r: int) -> np.ndarray:
        """Basis of ``{x in F_k Tot_n : D x in F_(k-r)}``."""
        lv = self.levels(n)
        cols = lv <= k
        if not cols.any():
            return np.zeros((len(lv), 0), dtype=np.int64)
        D = self.D(n)
        rows = self.levels(n - 1) > k - r
        sub = D[np.ix_(rows, cols)]
        if sub.shape[0] == 0:
            basis = np.eye(int(cols.sum()), dtype=np.int64)
        else:
            basis = modp.nullspace(sub, self.p)
        return self.embed(basis, cols)

    def B(self, n: int, k: int, r: int) -> np.ndarray:
        """Spanning set of ``Z^(r-1)_(k-1) + D Z^(r-1)_(k+r-1)`` in degree ``n``."""
        lower = self.Z(n, k - 1, r - 1)
        if n + 1 <= self.X.dim:
            upper = self.Z(n + 1, k + r - 1, r - 1)
            image = (self.D(n + 1) @ upper) % self.p
        else:
            image = np.zeros((len(self.levels(n)), 0), dtype=np.int64)
        return np.hstack([lower, image])

    def entry(self, n: int, k: int, r: int) -> tuple[int, np.ndarray, np.ndarray]:
        """``(dim E^r, representatives, B)`` at level ``k`` in degree ``n``."""
        Zk = self.Z(n, k, r)
        Bk = self.B(n, k, r)
        reps = modp.complement_basis(Bk, Zk, self.p)
        return reps.shape[1], reps, Bk

    def e_infinity(self, n: int, k: int) -> int:
        lv = self.levels(n)
        if not len(lv):
            return 0
        D = self.D(n)
        image = (self.D(n + 1) % self.p) if n + 1 <= self.X.dim else \
            np.zeros((len(lv), 0), dtype=np.int64)

        def kernel_in(level):
            cols = lv <= level
            if not cols.any():
                return np.zeros((len(lv), 0), dtype=np.int64)
            sub = D[:, cols]
            basis = modp.nullspace(sub, self.p) if sub.shape[0] else \
                np.eye(int(cols.sum()), dtype=np.int64)
            return self.embed(basis, cols)

        hi = modp.span_dim(kernel_in(k), image, p=self.p)
        lo = modp.span_dim(kernel_in(k - 1), image, p=self.p)
        return hi - lo


def _window(X: EquivariantChainComplex, filtration: str, depth: int):
    d = X.dim
    if filtration == "I":
        return (0, d), (-depth, 0)
    return (-depth, 0), (0, d)


def _check_filtration(filtration: str) -> str:
    f = filtration.upper()
    if f not in ("I", "II"):
        raise BadParameter(f"filtration must be I or II, got {filtration!r}")
    return f


def default_depth(X: EquivariantChainComplex) -> int:
    return 2 * (X.dim + 2)


def page(X: EquivariantChainComplex, p: int, r: int, filtration: str = "I",
         depth: int | None = None, differentials: bool = True) -> SpectralPage:
    """Page ``E^r`` (``r >= 1``) of the chosen filtration on a window of
    ``depth + 1`` resolution rows, computed as ``Z^r / B^r`` on the filtered
    total complex."""
    gp, _ = cyclic_prime(X)
    if p != gp:
        raise NotPrimeOrder(f"pages are taken with coefficients Z/{gp}, got p = {p}")
    if r < 1:
        raise BadParameter("page index must be at least 1")
    filtration = _check_filtration(filtration)
    depth = default_depth(X) if depth is None else depth
    (a0, a1), (b0, b1) = _window(X, filtration, depth)
    F = _Filtered(X, p, filtration)
    dims, reps, bases = {}, {}, {}
    for a in range(a0, a1 + 1):
        for b in range(b0, b1 + 1):
            dim, R, B = F.entry(a + b, a, r)
            dims[(a, b)] = dim
            reps[(a, b)], bases[(a, b)] = R, B
    diffs = {}
    if differentials:
        for (a, b), R in reps.items():
            ta, tb = a - r, b + r - 1
            n = a + b
            if R.shape[1] == 0:
                continue
            if (ta, tb) in reps:
                TR, TB = reps[(ta, tb)], bases[(ta, tb)]
            else:
                _, TR, TB = F.entry(n - 1, ta, r)
            if TR.shape[1] == 0:
                diffs[(a, b)] = np.zeros((0, R.shape[1]), dtype=np.int64)
                continue
            img = (F.D(n) @ R) % p
            sol = modp.solve(np.hstack([TB, TR]), img, p)
            if sol is None:
                raise AssertionError(f"d_{r} from {(a, b)} leaves the target cycles")
            diffs[(a, b)] = sol[TB.shape[1]:] % p
    return SpectralPage(filtration, r, p, (a0, a1), (b0, b1), dims, diffs)


def page_I(X: EquivariantChainComplex, p: int, r: int, depth: int | None = None) -> SpectralPage:
    return page(X, p, r, "I", depth)


def page_II(X: EquivariantChainComplex, p: int, r: int, depth: int | None = None) -> SpectralPage:
    return page(X, p, r, "II", depth)


def e_infinity(X: EquivariantChainComplex, p: int, filtration: str = "I",
               depth: int | None = None) -> SpectralPage:
    """Associated graded of the filtration on ``H(Tot; Z/p)``, computed
    directly from kernels and images rather than by running the pages."""
    gp, _ = cyclic_prime(X)
    if p != gp:
        raise NotPrimeOrder(f"pages are taken with coefficients Z/{gp}, got p = {p}")
    filtration = _check_filtration(filtration)
    depth = default_depth(X) if depth is None else depth
    (a0, a1), (b0, b1) = _window(X, filtration, depth)
    F = _Filtered(X, p, filtration)
    dims = {(a, b): F.e_infinity(a + b, a) for a in range(a0, a1 + 1) for b in range(b0, b1 + 1)}
    return SpectralPage(filtration, None, p, (a0, a1), (b0, b1), dims)


def differential_squares(pg: SpectralPage) -> list[tuple[int, int]]:
    """Entries where ``d_r o d_r`` is nonzero."""
    bad = []
    r = pg.r
    for (a, b), M in pg.differentials.items():
        nxt = pg.differentials.get((a - r, b + r - 1))
        if nxt is None or not M.size or not nxt.size:
            continue
        if ((nxt @ M) % pg.p).any():
            bad.append((a, b))
    return bad


# ---------------------------------------------------------------------------
# closed-form oracles
# ---------------------------------------------------------------------------

def page_I_e2_expected(X: EquivariantChainComplex, p: int, depth: int | None = None) -> dict:
    """Row ``t = 0``: ``H_s(G, X; Z/p)``; rows ``t < 0``: ``H_s(X^G; Z/p)``."""
    from .functors import fixed_complex
    depth = default_depth(X) if depth is None else depth
    Fp = Coeff.mod(p)
    inv = homology(invariant_complex(X, p).complex, Fp).dims()
    fixed = homology(fixed_complex(X, p)[0], Fp).dims()
    out = {}
    for s in range(X.dim + 1):
        out[(s, 0)] = inv[s]
        for t in range(-depth, 0):
            out[(s, t)] = fixed[s]
    return out


def page_II_e2_expected(X: EquivariantChainComplex, p: int, depth: int | None = None) -> dict:
    """``H^(-a)(G, H_b(X; Z/p))`` with the induced action."""
    depth = default_depth(X) if depth is None else depth
    Fp = Coeff.mod(p)
    H = homology(X.chain_complex, Fp)
    action = homology_action(X, Fp, H)
    out = {}
    for b in range(X.dim + 1):
        P = H[b].presentation()
        g = action[b][0].matrix
        for a in range(-depth, 1):
            out[(a, b)] = len(cyclic_cohomology(P.relations, g, p, -a).torsion)
    return out


def integral_page_I(X: EquivariantChainComplex, r: int, depth: int = 4) -> dict:
    """Page ``I`` over ``Z`` for ``r`` in ``{1, 2}``.

    ``r = 1``: ``H^(-t)(G, C_s(X))`` from the cyclic-cohomology formula.
    ``r = 2``: homology of each row; row ``0`` is the invariant complex and
    the even rows below are the cokernel-of-norm complex.
    """
    p, g = cyclic_prime(X)
    if r not in (1, 2):
        raise BadParameter("integral pages are available for r = 1 and r = 2 only")
    out = {}
    if r == 1:
        for s in range(X.dim + 1):
            n = X.cell_counts[s]
            rel = IntMatrix.zeros(n, 0)
            gm = X.action_matrix(g, s)
            for t in range(-depth, 1):
                out[(s, t)] = cyclic_cohomology(rel, gm, p, -t)
        return out
    inv = homology(invariant_complex(X).complex, Z).groups()
    D = quotient_D(X, compare=False)
    row_even = []
    for s in range(X.dim + 1):
        P = D.presentations[s]
        into = D.boundary[s] if s < X.dim else GroupHom(Presentation.free(0), P,
                                                        IntMatrix.zeros(P.generators, 0))
        out_of = D.boundary[s - 1] if s >= 1 else GroupHom(P, Presentation.free(0),
                                                           IntMatrix.zeros(0, P.generators))
        row_even.append(homology_at(into, out_of).group)
    for s in range(X.dim + 1):
        for t in range(-depth, 1):
            if t == 0:
                out[(s, t)] = inv[s]
            elif t % 2 == 0:
                out[(s, t)] = row_even[s]
            else:
                out[(s, t)] = AbelianGroup()
    return out


def collapse_check(X: EquivariantChainComplex, p: int | None = None,
                   depth: int | None = None) -> Report:
    """Page ``I`` at ``r = 2`` against the directly computed ``E^infinity``."""
    gp, _ = cyclic_prime(X)
    p = gp if p is None else p
    rep = Report("collapse of filtration I at the second page")
    e2 = page(X, p, 2, "I", depth, differentials=False)
    einf = e_infinity(X, p, "I", depth)
    bad = [[a, b] for (a, b) in sorted(e2.dims) if e2[(a, b)] != einf[(a, b)]]
    rep.values["p"] = p
    rep.values["E2 = Einf window"] = {"s": list(e2.a_range), "t": list(e2.b_range)}
    rep.add("E^2 equals E^infinity entrywise", not bad,
            "" if not bad else f"{len(bad)} entries differ",
            witness=bad or None)
    return rep
