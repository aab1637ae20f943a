"""Command-line interface.

Exit status: 0 when every verdict passes (or is inapplicable), 1 when a
mathematical check fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from . import formats, spaces
from .complexes import EquivariantChainComplex, validate
from .errors import (BadParameter, DocumentError, EquichainError, InapplicableHypothesis,
                     InvalidComplex, NotCoprime, NotFree)
from .functors import coinvariant_complex, fixed_complex, invariant_complex
from .homology import Coeff, as_coeff, homology
from .hyper import collapse_check, differential_squares, e_infinity, page, s_groups
from .les import build_les, check_exact
from .report import Report
from .simplicial import barycentric_subdivision
from .theorems import conner_check, coprime_check, free_action_check, smith_check

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadParameter(message)


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------

def read_source(source: str) -> tuple[str, dict | None, EquivariantChainComplex | None]:
    """``(text, document, builtin complex)`` for a path, ``-`` or ``builtin:NAME``."""
    if source.startswith("builtin:"):
        X = spaces.builtin(source[len("builtin:"):])
        return "", None, X
    if source == "-":
        text = sys.stdin.read()
    elif os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        try:
            X = spaces.builtin(source)
        except EquichainError:
            raise DocumentError(f"{source}: no such file or builtin space") from None
        return "", None, X
    return text, formats.loads(text), None


def load_complex(source: str, check: bool = True) -> EquivariantChainComplex:
    _, doc, X = read_source(source)
    if X is None:
        if formats.is_simplicial_document(doc):
            X = formats.parse_simplicial(doc).to_chain_complex()
        else:
            X = formats.parse_complex(doc)
    if check:
        diags = validate(X)
        if diags:
            raise InvalidComplex(diags)
    return X


def complex_digest(X: EquivariantChainComplex) -> str:
    # canonical re-encoding, so a builtin and its emitted document agree
    return formats.digest(formats.dumps(formats.complex_to_json(X)))


def _range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise BadParameter(f"--range: expected A..B, got {text!r}") from None


def _coeff(text: str) -> Coeff:
    try:
        return as_coeff(text)
    except EquichainError:
        raise
    except ValueError as exc:
        raise BadParameter(f"--coeff: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> Report:
    X = load_complex(args.file, check=False)
    rep = Report("validate")
    diags = validate(X)
    rep.values["cells"] = list(X.cell_counts)
    rep.values["group order"] = X.group.order
    rep.add("complex is a valid admissible equivariant chain complex", not diags,
            "; ".join(diags))
    rep.digest = complex_digest(X)
    if diags:
        raise InvalidComplex(diags)
    return rep


def cmd_homology(args) -> Report:
    X = load_complex(args.file)
    coeff = _coeff(args.coeff)
    which = args.which
    if which == "total":
        C = X.chain_complex
    elif which == "invariant":
        C = invariant_complex(X, coeff.modulus).complex
    elif which == "quotient":
        C = coinvariant_complex(X).complex
    else:
        C = fixed_complex(X, coeff.modulus)[0]
    H = homology(C, coeff)
    rep = Report(f"{which} homology over {coeff}", headline=str(H))
    rep.values["groups"] = {f"H_{h.degree}": str(h.group) for h in H.degrees}
    rep.digest = complex_digest(X)
    return rep


def cmd_les(args) -> Report:
    X = load_complex(args.file)
    L = build_les(X, args.top)
    rep = check_exact(L)
    rep.values["terms"] = [f"{t.label} = {t.group}" for t in L.terms[:-1]]
    rep.values["maps"] = [f"{L.terms[i].label} -> {L.terms[i + 1].label}: {m.matrix.tolist()}"
                          for i, m in enumerate(L.maps[:-1])]
    rep.digest = complex_digest(X)
    return rep


def cmd_hyper(args) -> Report:
    X = load_complex(args.file)
    a, b = _range(args.range)
    coeff = _coeff(args.coeff)
    S = s_groups(X, coeff, a, b)
    rep = Report(f"hypercohomology over {coeff}",
                 headline=", ".join(f"S_{n} = {g}" for n, g in zip(range(b, a - 1, -1), reversed(S))))
    rep.values["groups"] = {f"S_{n}": str(g) for n, g in zip(range(a, b + 1), S)}
    rep.digest = complex_digest(X)
    return rep


def cmd_pages(args) -> Report:
    X = load_complex(args.file)
    coeff = _coeff(args.coeff or f"zp:{X.group.order}")
    if coeff.kind != "Zp":
        raise BadParameter("--coeff: spectral pages are computed over zp:P only")
    if args.page in ("inf", "infinity"):
        pg = e_infinity(X, coeff.p, args.filtration, args.depth)
    else:
        try:
            r = int(args.page)
        except ValueError:
            raise BadParameter(f"--page: expected an integer or inf, got {args.page!r}") from None
        pg = page(X, coeff.p, r, args.filtration, args.depth)
    rep = Report(f"spectral page {pg.filtration}", headline=pg.to_text())
    rep.values["page"] = pg.to_dict()
    if pg.r is not None:
        bad = differential_squares(pg)
        rep.add("d_r squares to zero", not bad, witness=[list(x) for x in bad] or None)
    rep.digest = complex_digest(X)
    return rep


def _check_runner(kind: str) -> Callable[[EquivariantChainComplex], Report]:
    if kind == "smith":
        return smith_check
    if kind == "conner":
        return conner_check
    if kind == "free":
        return free_action_check
    if kind == "collapse":
        return collapse_check
    if kind.startswith("coprime:"):
        try:
            ell = int(kind.split(":", 1)[1])
        except ValueError:
            raise BadParameter(f"check: bad coprime prime in {kind!r}") from None
        return lambda X: coprime_check(X, ell)
    raise BadParameter(f"check: unknown check {kind!r} (smith, conner, coprime:L, free, collapse)")


def run_check(kind: str, X: EquivariantChainComplex) -> Report:
    """Run a check; unmet hypotheses become an inapplicable report."""
    fn = _check_runner(kind)
    try:
        return fn(X)
    except (InapplicableHypothesis, NotFree, NotCoprime) as exc:
        rep = Report(f"{kind} check")
        rep.add("hypothesis", None, str(exc))
        return rep


def cmd_check(args) -> Report:
    if args.all_builtins:
        if args.file:
            raise BadParameter("check: give either FILE or --all-builtins")
        _check_runner(args.kind)
        names = sorted(spaces.BUILTIN_CORPUS)

        def one(name):
            return name, run_check(args.kind, spaces.builtin(name))

        with ThreadPoolExecutor() as pool:
            results = dict(pool.map(one, names))
        rep = Report(f"{args.kind} check over the builtin corpus")
        for name in names:
            sub = results[name]
            failed = [v.name for v in sub.failures]
            rep.add(name, None if sub.status() == "inapplicable" else sub.passed,
                    "; ".join(failed))
        return rep
    if not args.file:
        raise BadParameter("check: FILE is required unless --all-builtins is given")
    X = load_complex(args.file)
    rep = run_check(args.kind, X)
    rep.digest = complex_digest(X)
    return rep


def cmd_spaces(args) -> Report:
    if args.action == "list":
        rep = Report("builtin spaces")
        lines = []
        for e in spaces.CATALOG:
            name = f"{e.name}({e.params})" if e.params else e.name
            lines.append(f"{name:<48} {e.description}")
        rep.headline = "\n".join(lines)
        rep.values["names"] = [e.name for e in spaces.CATALOG]
        return rep
    if not args.name:
        raise BadParameter("spaces emit: NAME is required")
    spec = spaces.spec_from_parts(args.name, args.params)
    if args.simplicial:
        doc = formats.simplicial_to_json(spaces.builtin_simplicial(spec))
    else:
        doc = formats.complex_to_json(spaces.builtin(spec))
    return Report("emit", headline=formats.dumps(doc), values={"document": doc})


def cmd_convert(args) -> Report:
    text, doc, _ = read_source(args.file)
    if doc is None or not formats.is_simplicial_document(doc):
        raise DocumentError("simplices: convert expects a simplicial document")
    K = formats.parse_simplicial(doc)
    for _ in range(args.subdivide):
        K = barycentric_subdivision(K)
    X = K.to_chain_complex()
    diags = validate(X)
    if diags:
        raise InvalidComplex(diags)
    out = formats.complex_to_json(X)
    return Report("convert", headline=formats.dumps(out), values={"document": out})


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="equichain", description="Homology of finite group actions on chain complexes.")
    ap.add_argument("--json", action="store_true", help="emit the report as JSON")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                       help="emit the report as JSON")
        return p

    p = add("validate", cmd_validate, "check a complex document")
    p.add_argument("file")
    p = add("homology", cmd_homology, "homology of the complex or a derived complex")
    p.add_argument("file")
    p.add_argument("--which", choices=("total", "invariant", "quotient", "fixed"), default="total")
    p.add_argument("--coeff", default="z", help="z, q or zp:P")
    p = add("les", cmd_les, "long exact sequence for a Z/p action")
    p.add_argument("file")
    p.add_argument("--top", type=int, default=None)
    p = add("hyper", cmd_hyper, "hypercohomology groups S_n")
    p.add_argument("file")
    p.add_argument("--range", default="-4..2")
    p.add_argument("--coeff", default="z")
    p = add("pages", cmd_pages, "spectral-sequence pages over Z/p")
    p.add_argument("file")
    p.add_argument("--filtration", default="I", choices=("I", "II"))
    p.add_argument("--page", default="2", help="page index, or inf")
    p.add_argument("--coeff", default=None, help="zp:P (default: the group order)")
    p.add_argument("--depth", type=int, default=None, help="number of resolution rows shown")
    p = add("check", cmd_check, "run a theorem check")
    p.add_argument("kind", help="smith, conner, coprime:L, free or collapse")
    p.add_argument("file", nargs="?")
    p.add_argument("--all-builtins", action="store_true")
    p = add("spaces", cmd_spaces, "list or emit builtin spaces")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.add_argument("params", nargs="*")
    p.add_argument("--simplicial", action="store_true", help="emit the simplicial model")
    p = add("convert", cmd_convert, "compile a simplicial document to a chain-complex document")
    p.add_argument("file")
    p.add_argument("--subdivide", type=int, default=0)
    return ap


def _command_echo(argv: Sequence[str], source: str | None) -> str:
    # the input is identified by its digest, not by its path
    out = ["equichain"]
    dropped = False
    for a in argv:
        if a == "--json":
            continue
        if not dropped and a == source:
            dropped = True
            continue
        out.append(a)
    return " ".join(out)


def _join_negative_values(argv: list[str]) -> list[str]:
    # let "--range -4..2" through argparse, which reads "-4..2" as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--range" and i + 1 < len(argv):
            out.append(f"--range={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "fn", None):
            raise BadParameter("a subcommand is required (see --help)")
        rep = args.fn(args)
    except InvalidComplex as exc:
        _emit_error(stdout, stderr, as_json, exc.diagnostics)
        return EXIT_INPUT
    except (EquichainError, ValueError) as exc:
        _emit_error(stdout, stderr, as_json, [str(exc)])
        return EXIT_INPUT
    if args.command not in ("spaces", "convert"):
        rep.command = _command_echo(argv, getattr(args, "file", None))
    if args.command in ("spaces", "convert") and not as_json:
        stdout.write(rep.headline + "\n")
    elif as_json and args.command in ("spaces", "convert") and "document" in rep.values:
        stdout.write(formats.dumps(rep.values["document"]) + "\n")
    else:
        stdout.write((rep.to_json() if as_json else rep.to_text()) + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _emit_error(stdout, stderr, as_json: bool, messages: list[str]) -> None:
    if as_json:
        import json
        stdout.write(json.dumps({"status": "error", "diagnostics": messages}, indent=2) + "\n")
    else:
        for m in messages:
            stderr.write(f"error: {m}\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
