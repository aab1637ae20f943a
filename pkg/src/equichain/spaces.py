"""Builtin example spaces and a seeded generator of random admissible complexes.

Names take parenthesised parameters, e.g. ``circle_rotation(5)``,
``cross_polytope_sphere(2, antipodal)`` or ``cone_of(lens_sphere(3))``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Callable

from .abelian import IntMatrix, is_prime
from .complexes import (EquivariantChainComplex, FiniteGroup, check_valid, cone, disjoint_union,
                        make_complex, tensor_product, validate)
from .errors import BadParameter, InvalidComplex, UnknownName
from .simplicial import (SimplicialGComplex, barycentric_subdivision, join, point as simplicial_point,
                         to_chain_complex)
from .simplicial import cone as simplicial_cone


# ---------------------------------------------------------------------------
# name parsing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpaceSpec:
    name: str
    args: tuple

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|-?\d+|[(),])")


def parse_spec(text: str) -> SpaceSpec:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise BadParameter(f"cannot parse space name {text!r} at position {pos}")
        tokens.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def atom(i):
        tok = tokens[i]
        if re.fullmatch(r"-?\d+", tok):
            return int(tok), i + 1
        if i + 1 < len(tokens) and tokens[i + 1] == "(":
            args, j = [], i + 2
            while tokens[j] != ")":
                a, j = atom(j)
                args.append(a)
                if tokens[j] == ",":
                    j += 1
            return SpaceSpec(tok, tuple(args)), j + 1
        return SpaceSpec(tok, ()) if tok not in ("antipodal", "reflection") else tok, i + 1

    try:
        spec, end = atom(0)
    except IndexError:
        raise BadParameter(f"unbalanced parentheses in {text!r}") from None
    if end != len(tokens) or not isinstance(spec, SpaceSpec):
        raise BadParameter(f"cannot parse space name {text!r}")
    return spec


def spec_from_parts(name: str, params: list[str]) -> SpaceSpec:
    if not params:
        return parse_spec(name)
    return parse_spec(f"{name}({','.join(params)})")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _prime(p, what="p") -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise BadParameter(f"{what} must be a prime, got {p!r}")
    return p


def point_complex(p: int = 1) -> EquivariantChainComplex:
    """A single vertex with the trivial action of ``Z/p``."""
    G = FiniteGroup.cyclic(p)
    return make_complex(G, [], [[[0]] for _ in G.elements], cell_counts=(1,),
                        labels=(("pt",),))


def free_orbit(p: int) -> EquivariantChainComplex:
    G = FiniteGroup.cyclic(p)
    return make_complex(G, [], [[[(i + g) % p for i in range(p)]] for g in G.elements],
                        cell_counts=(p,), labels=(tuple(f"x{i}" for i in range(p)),))


def circle_reflection() -> EquivariantChainComplex:
    """Complex conjugation on the unit circle.

    Vertices ``v_-1`` (index 0) and ``v_1`` (index 1); arcs ``e_+`` and ``e_-``
    both oriented from ``v_1`` to ``v_-1`` so that conjugation swaps them
    without a sign.
    """
    G = FiniteGroup.cyclic(2)
    d1 = [[1, 1], [-1, -1]]
    images = [[[0, 1], [0, 1]], [[0, 1], [1, 0]]]
    return make_complex(G, [d1], images, labels=(("v_-1", "v_1"), ("e_+", "e_-")))


def circle_rotation(p: int) -> EquivariantChainComplex:
    """Rotation by ``2 pi / p`` on a circle with ``p`` vertices and ``p`` edges,
    ``d e_i = v_{i+1} - v_i``."""
    p = _prime(p)
    G = FiniteGroup.cyclic(p)
    d1 = [[0] * p for _ in range(p)]
    for i in range(p):
        d1[(i + 1) % p][i] += 1
        d1[i][i] -= 1
    images = [[[(i + g) % p for i in range(p)]] * 2 for g in G.elements]
    labels = (tuple(f"v_{i + 1}" for i in range(p)), tuple(f"e_{i + 1}" for i in range(p)))
    return make_complex(G, [d1], images, labels=labels)


def sphere_reflection() -> EquivariantChainComplex:
    """Reflection of the 2-sphere in the equatorial plane: one vertex ``v``,
    the equator ``e``, hemispheres ``f_+`` and ``f_-`` with ``d f_+ = d f_- = e``."""
    G = FiniteGroup.cyclic(2)
    d1 = [[0]]
    d2 = [[1, 1]]
    images = [[[0], [0], [0, 1]], [[0], [0], [1, 0]]]
    return make_complex(G, [d1, d2], images, labels=(("v",), ("e",), ("f_+", "f_-")))


def cross_polytope(n: int, action: str = "antipodal") -> SimplicialGComplex:
    """Boundary of the ``(n+1)``-dimensional cross-polytope, an ``n``-sphere.

    Vertex ``2i`` is ``+e_i`` and ``2i+1`` is ``-e_i``.  ``antipodal`` swaps
    every pair; ``reflection`` swaps only the last pair.
    """
    if not isinstance(n, int) or n < 0:
        raise BadParameter(f"sphere dimension must be a nonnegative integer, got {n!r}")
    if action not in ("antipodal", "reflection"):
        raise BadParameter(f"cross-polytope action must be antipodal or reflection, got {action!r}")
    G = FiniteGroup.cyclic(2)
    facets = []
    for signs in range(2 ** (n + 1)):
        facets.append([2 * i + ((signs >> i) & 1) for i in range(n + 1)])
    swap = list(range(2 * n + 2))
    for i in range(n + 1):
        if action == "antipodal" or i == n:
            swap[2 * i], swap[2 * i + 1] = 2 * i + 1, 2 * i
    return SimplicialGComplex.from_facets(2 * n + 2, facets, G, [list(range(2 * n + 2)), swap])


def polygon(m: int, p: int) -> SimplicialGComplex:
    """An ``m``-gon (``m >= 3``) with ``Z/p`` rotating by ``m/p`` steps."""
    if m < 3 or m % p:
        raise BadParameter(f"cannot rotate a {m}-gon by Z/{p}")
    G = FiniteGroup.cyclic(p)
    step = m // p
    perms = [[(v + g * step) % m for v in range(m)] for g in G.elements]
    return SimplicialGComplex.from_facets(m, [[i, (i + 1) % m] for i in range(m)], G, perms)


def lens_polygon(p: int) -> SimplicialGComplex:
    p = _prime(p)
    return polygon(p if p >= 3 else 4, p)


def lens_sphere(p: int) -> SimplicialGComplex:
    """Join of two polygons with the diagonal free rotation: a 3-sphere
    whose quotient is the lens space ``L(p, 1)``."""
    c = lens_polygon(p)
    return join(c, c)


def point_simplicial(p: int = 1) -> SimplicialGComplex:
    return simplicial_point(FiniteGroup.cyclic(p))


def torus_diagonal(p: int) -> EquivariantChainComplex:
    c = circle_rotation(p)
    return tensor_product(c, c)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: str
    description: str


CATALOG = (
    CatalogEntry("point", "[p]", "single vertex, trivial Z/p action (default p=1)"),
    CatalogEntry("circle_reflection", "", "S^1 with complex conjugation, 2+2 cells"),
    CatalogEntry("circle_rotation", "p", "S^1 rotated by 2pi/p, p+p cells, free"),
    CatalogEntry("sphere_reflection", "", "S^2 reflected in the equator, cells 1,1,2"),
    CatalogEntry("cp1_conjugation", "", "CP^1 with conjugation (alias of sphere_reflection)"),
    CatalogEntry("cross_polytope_sphere", "n, antipodal|reflection",
                 "simplicial S^n with Z/2 acting antipodally or by one reflection"),
    CatalogEntry("lens_sphere", "p", "polygon join polygon, free diagonal Z/p rotation on S^3"),
    CatalogEntry("cone_of", "NAME", "cone on a builtin, apex fixed"),
    CatalogEntry("torus_diagonal", "p", "circle_rotation(p) x circle_rotation(p), diagonal"),
)


def _args(spec: SpaceSpec, n_min: int, n_max: int):
    if not n_min <= len(spec.args) <= n_max:
        raise BadParameter(f"{spec.name} takes {n_min}..{n_max} parameters, got {len(spec.args)}")
    return spec.args


def _coerce(spec: SpaceSpec | str) -> SpaceSpec:
    return parse_spec(spec) if isinstance(spec, str) else spec


def builtin_simplicial(spec: SpaceSpec | str) -> SimplicialGComplex:
    """The simplicial model of a builtin, for names that have one."""
    spec = _coerce(spec)
    if spec.name == "point":
        (p,) = _args(spec, 0, 1) or (1,)
        return point_simplicial(p if p == 1 else _prime(p))
    if spec.name == "cross_polytope_sphere":
        args = _args(spec, 1, 2)
        n = args[0]
        action = args[1] if len(args) > 1 else "antipodal"
        if isinstance(action, SpaceSpec):
            action = action.name
        return cross_polytope(n, action)
    if spec.name == "lens_sphere":
        (p,) = _args(spec, 1, 1)
        return lens_sphere(p)
    if spec.name == "cone_of":
        (inner,) = _args(spec, 1, 1)
        if not isinstance(inner, SpaceSpec):
            raise BadParameter("cone_of takes a space name")
        return simplicial_cone(builtin_simplicial(inner))
    if spec.name in _BUILDERS:
        raise BadParameter(f"{spec.name} has no simplicial model")
    raise UnknownName(f"unknown space {spec.name!r}")


def _builtin_point(spec):
    args = _args(spec, 0, 1)
    p = args[0] if args else 1
    return point_complex(p if p == 1 else _prime(p))


def _builtin_cone(spec):
    (inner,) = _args(spec, 1, 1)
    if not isinstance(inner, SpaceSpec):
        raise BadParameter("cone_of takes a space name")
    return check_valid(cone(builtin(inner)))


def _from_simplicial(spec):
    return check_valid(builtin_simplicial(spec).to_chain_complex())


_BUILDERS: dict[str, Callable[[SpaceSpec], EquivariantChainComplex]] = {
    "point": _builtin_point,
    "circle_reflection": lambda s: (_args(s, 0, 0), circle_reflection())[1],
    "circle_rotation": lambda s: circle_rotation(*_args(s, 1, 1)),
    "sphere_reflection": lambda s: (_args(s, 0, 0), sphere_reflection())[1],
    "cp1_conjugation": lambda s: (_args(s, 0, 0), sphere_reflection())[1],
    "cross_polytope_sphere": _from_simplicial,
    "lens_sphere": _from_simplicial,
    "cone_of": _builtin_cone,
    "torus_diagonal": lambda s: torus_diagonal(*_args(s, 1, 1)),
}


def builtin(spec: SpaceSpec | str) -> EquivariantChainComplex:
    """Build (and validate) a builtin space by name."""
    spec = _coerce(spec)
    try:
        make = _BUILDERS[spec.name]
    except KeyError:
        raise UnknownName(f"unknown space {spec.name!r}; see `spaces list`") from None
    return make(spec)


# Representative corpus used by the checks and the acceptance suite.
BUILTIN_CORPUS = (
    "circle_reflection",
    "circle_rotation(2)",
    "circle_rotation(3)",
    "circle_rotation(5)",
    "sphere_reflection",
    "cp1_conjugation",
    "point(2)",
    "point(3)",
    "cross_polytope_sphere(1,antipodal)",
    "cross_polytope_sphere(2,antipodal)",
    "cross_polytope_sphere(3,antipodal)",
    "cross_polytope_sphere(1,reflection)",
    "cross_polytope_sphere(2,reflection)",
    "lens_sphere(2)",
    "lens_sphere(3)",
    "lens_sphere(5)",
    "cone_of(circle_rotation(2))",
    "cone_of(circle_rotation(3))",
    "cone_of(cross_polytope_sphere(1,antipodal))",
    "cone_of(cross_polytope_sphere(2,antipodal))",
    "cone_of(sphere_reflection)",
    "torus_diagonal(2)",
    "torus_diagonal(3)",
)

SIMPLICIAL_CORPUS = (
    "point(2)",
    "cross_polytope_sphere(1,antipodal)",
    "cross_polytope_sphere(2,antipodal)",
    "cross_polytope_sphere(1,reflection)",
    "cross_polytope_sphere(2,reflection)",
    "lens_sphere(2)",
    "lens_sphere(3)",
    "cone_of(cross_polytope_sphere(1,antipodal))",
    "cone_of(cross_polytope_sphere(2,reflection))",
)


# ---------------------------------------------------------------------------
# fuzzing
# ---------------------------------------------------------------------------

def random_simplicial(rng: random.Random, p: int, n_free: int, n_fixed: int,
                      n_simplices: int, max_dim: int = 2) -> SimplicialGComplex:
    """Random ``Z/p``-complex on ``n_free`` free vertex orbits and ``n_fixed``
    fixed vertices, closed under the action.  May need subdivision to be
    admissible."""
    G = FiniteGroup.cyclic(p)
    nv = n_free * p + n_fixed
    perms = []
    for g in G.elements:
        perm = [(v // p) * p + (v % p + g) % p for v in range(n_free * p)]
        perm += list(range(n_free * p, nv))
        perms.append(perm)
    if nv == 0:
        return simplicial_point(G)
    seeds = []
    for _ in range(n_simplices):
        k = rng.randint(1, min(max_dim + 1, nv))
        seeds.append(rng.sample(range(nv), k))
    facets = [[perms[g][v] for v in s] for s in seeds for g in G.elements]
    return SimplicialGComplex.from_facets(nv, facets, G, perms)


def fuzz(seed: int, budget: int = 40, p: int | None = None) -> EquivariantChainComplex:
    """A random admissible complex, deterministic in ``seed``.

    Built by composing small builtins and random simplicial complexes with
    cone, join, subdivision, tensor product and disjoint union while the
    cell count stays within ``budget``.
    """
    rng = random.Random(seed)
    if p is None:
        p = rng.choice((2, 2, 3, 3, 5))
    G = FiniteGroup.cyclic(p)

    def leaf_simplicial():
        kind = rng.randrange(4)
        if kind == 0:
            return polygon(p * rng.choice((1, 2)) if p >= 3 else 4, p)
        if kind == 1 and p == 2:
            return cross_polytope(rng.randint(0, 2), rng.choice(("antipodal", "reflection")))
        if kind == 2:
            return simplicial_point(G)
        return random_simplicial(rng, p, rng.randint(0, 2), rng.randint(0, 2), rng.randint(1, 2),
                                 max_dim=rng.randint(1, 2))

    def leaf_chain():
        kind = rng.randrange(5)
        if kind == 0:
            return point_complex(p)
        if kind == 1:
            return free_orbit(p)
        if kind == 2:
            return circle_rotation(p)
        if kind == 3 and p == 2:
            return rng.choice((circle_reflection, sphere_reflection))()
        return None

    def simplicial_piece(depth):
        K = leaf_simplicial()
        if depth > 0 and rng.random() < 0.5:
            op = rng.randrange(3)
            if op == 0:
                K = simplicial_cone(K)
            elif op == 1:
                L = leaf_simplicial()
                if len(K.simplices) * (len(L.simplices) + 1) <= budget * 2:
                    K = join(K, L)
            elif len(K.simplices) <= budget // 4:
                K = barycentric_subdivision(K)
        if not K.is_admissible():
            K = barycentric_subdivision(K)
        return to_chain_complex(K)

    def piece(depth):
        X = leaf_chain() if rng.random() < 0.4 else None
        if X is None:
            X = simplicial_piece(depth)
        if depth > 0:
            op = rng.randrange(4)
            if op == 0 and X.total_cells * 2 + 1 <= budget:
                X = cone(X)
            elif op == 1:
                Y = piece(depth - 1)
                if X.total_cells + Y.total_cells <= budget:
                    X = disjoint_union(X, Y)
            elif op == 2:
                Y = leaf_chain() or point_complex(p)
                if X.total_cells * Y.total_cells <= budget:
                    X = tensor_product(X, Y)
        return X

    for _ in range(50):
        X = piece(2)
        if X.total_cells <= budget * 2:
            break
    diags = validate(X)
    if diags:
        raise InvalidComplex(diags)
    return X
