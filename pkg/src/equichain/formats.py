"""JSON documents for equivariant chain complexes and simplicial G-complexes.

Chain-complex document::

    {"group": {"cyclic": 2} | {"order": n, "table": [[...], ...]},
     "cells": [c0, c1, ...],
     "boundaries": [d1, d2, ...],          # d_k: c_(k-1) rows by c_k columns
     "action": [[[[image, sign], ...] per dim] per element],
     "labels": [[...] per dim]}            # optional

Simplicial document::

    {"group": ..., "vertices": n, "simplices": [[v0, v1, ...], ...],
     "vertex_action": [[perm of 0..n-1] per element]}
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .abelian import IntMatrix
from .complexes import EquivariantChainComplex, FiniteGroup, SignedAction
from .errors import DocumentError, InvalidGroup
from .simplicial import SimplicialGComplex


def _need(doc: dict, key: str, where: str = "") -> Any:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where or 'document'}: expected a JSON object")
    if key not in doc:
        raise DocumentError(f"{where + '.' if where else ''}{key}: missing field")
    return doc[key]


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{where}: expected an integer, got {x!r}")
    return x


def parse_group(obj) -> FiniteGroup:
    if not isinstance(obj, dict):
        raise DocumentError("group: expected an object with 'cyclic' or 'order' and 'table'")
    if "cyclic" in obj:
        n = _int(obj["cyclic"], "group.cyclic")
        if n < 1:
            raise DocumentError("group.cyclic: order must be positive")
        return FiniteGroup.cyclic(n)
    table = _need(obj, "table", "group")
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise DocumentError("group.table: expected a list of rows")
    if "order" in obj and _int(obj["order"], "group.order") != len(table):
        raise DocumentError(f"group.order: {obj['order']} does not match the table size {len(table)}")
    try:
        return FiniteGroup.from_table(table, obj.get("label"))
    except InvalidGroup as exc:
        raise DocumentError(f"group.table: {exc}") from None


def group_to_json(G: FiniteGroup) -> dict:
    if G.label == f"cyclic:{G.order}" and G.table == FiniteGroup.cyclic(G.order).table:
        return {"cyclic": G.order}
    return {"order": G.order, "table": [list(r) for r in G.table]}


def parse_complex(doc: dict) -> EquivariantChainComplex:
    """Parse a chain-complex document.  The result is not validated; run
    :func:`equichain.complexes.validate` on it."""
    G = parse_group(_need(doc, "group"))
    cells = _need(doc, "cells")
    if not isinstance(cells, list) or not cells:
        raise DocumentError("cells: expected a nonempty list of counts")
    counts = tuple(_int(c, f"cells[{k}]") for k, c in enumerate(cells))
    if any(c < 0 for c in counts):
        raise DocumentError("cells: counts must be nonnegative")
    bds = _need(doc, "boundaries")
    if not isinstance(bds, list) or len(bds) != len(counts) - 1:
        raise DocumentError(f"boundaries: expected {len(counts) - 1} matrices")
    mats = []
    for k, m in enumerate(bds, start=1):
        where = f"boundaries[{k - 1}]"
        rows, cols = counts[k - 1], counts[k]
        if not isinstance(m, list) or len(m) != rows:
            raise DocumentError(f"{where}: expected {rows} rows (cells of dim {k - 1})")
        for i, row in enumerate(m):
            if not isinstance(row, list) or len(row) != cols:
                raise DocumentError(f"{where}[{i}]: expected {cols} entries (cells of dim {k})")
            for j, x in enumerate(row):
                _int(x, f"{where}[{i}][{j}]")
        mats.append(IntMatrix(m, rows, cols))
    act = _need(doc, "action")
    if not isinstance(act, list) or len(act) != G.order:
        raise DocumentError(f"action: expected one entry per group element ({G.order})")
    images, signs = [], []
    for g, per_dim in enumerate(act):
        if not isinstance(per_dim, list) or len(per_dim) != len(counts):
            raise DocumentError(f"action[{g}]: expected one list per dimension ({len(counts)})")
        gi, gs = [], []
        for k, pairs in enumerate(per_dim):
            where = f"action[{g}][{k}]"
            if not isinstance(pairs, list) or len(pairs) != counts[k]:
                raise DocumentError(f"{where}: expected {counts[k]} [image, sign] pairs")
            ii, ss = [], []
            for i, pair in enumerate(pairs):
                if not isinstance(pair, list) or len(pair) != 2:
                    raise DocumentError(f"{where}[{i}]: expected [image_index, sign]")
                img, sgn = _int(pair[0], f"{where}[{i}][0]"), _int(pair[1], f"{where}[{i}][1]")
                if not 0 <= img < counts[k]:
                    raise DocumentError(f"{where}[{i}][0]: image index {img} out of range")
                if sgn not in (1, -1):
                    raise DocumentError(f"{where}[{i}][1]: sign must be 1 or -1")
                ii.append(img)
                ss.append(sgn)
            gi.append(tuple(ii))
            gs.append(tuple(ss))
        images.append(tuple(gi))
        signs.append(tuple(gs))
    labels = doc.get("labels")
    if labels is not None:
        if (not isinstance(labels, list) or len(labels) != len(counts)
                or any(not isinstance(l, list) or len(l) != c for l, c in zip(labels, counts))):
            raise DocumentError("labels: expected one list of names per dimension")
        labels = tuple(tuple(str(x) for x in l) for l in labels)
    return EquivariantChainComplex(G, counts, tuple(mats),
                                   SignedAction(tuple(images), tuple(signs)), labels)


def complex_to_json(X: EquivariantChainComplex) -> dict:
    doc = {
        "group": group_to_json(X.group),
        "cells": list(X.cell_counts),
        "boundaries": [b.tolist() for b in X.boundaries],
        "action": [[[[X.action.images[g][k][i], X.action.signs[g][k][i]]
                     for i in range(X.cell_counts[k])]
                    for k in range(X.dim + 1)]
                   for g in X.group.elements],
    }
    if X.labels is not None:
        doc["labels"] = [list(l) for l in X.labels]
    return doc


def parse_simplicial(doc: dict) -> SimplicialGComplex:
    G = parse_group(_need(doc, "group"))
    n = _int(_need(doc, "vertices"), "vertices")
    simplices = _need(doc, "simplices")
    if not isinstance(simplices, list):
        raise DocumentError("simplices: expected a list of vertex lists")
    for i, s in enumerate(simplices):
        if not isinstance(s, list) or not s:
            raise DocumentError(f"simplices[{i}]: expected a nonempty vertex list")
        for v in s:
            if not 0 <= _int(v, f"simplices[{i}]") < n:
                raise DocumentError(f"simplices[{i}]: vertex {v} out of range")
    perms = doc.get("vertex_action")
    if perms is not None:
        if not isinstance(perms, list) or len(perms) != G.order:
            raise DocumentError(f"vertex_action: expected one permutation per element ({G.order})")
        for g, perm in enumerate(perms):
            if not isinstance(perm, list) or sorted(perm) != list(range(n)):
                raise DocumentError(f"vertex_action[{g}]: not a permutation of 0..{n - 1}")
    return SimplicialGComplex.from_facets(n, simplices, G, perms)


def simplicial_to_json(K: SimplicialGComplex) -> dict:
    return {
        "group": group_to_json(K.group),
        "vertices": K.n_vertices,
        "simplices": [list(s) for s in K.simplices],
        "vertex_action": [list(p) for p in K.vertex_action],
    }


def is_simplicial_document(doc) -> bool:
    return isinstance(doc, dict) and "simplices" in doc


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"document: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(doc: dict) -> str:
    return json.dumps(doc, separators=(",", ":"), sort_keys=False)


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
