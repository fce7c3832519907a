"""``f1rep`` command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import indecomposables
from .errors import ContractError, InputError, UnsupportedShapeError
from .euler import descent_check, euler_form
from .gldim import global_dimension
from .homology import ext
from .quiver import Quiver, Representation, enumerate_morphisms, hom_dim
from .structure import decompose, is_projective, tree_classification, verify_witness
from .verification import fixture_names, load_fixture_data, load_quiver, run_claims

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class Context:
    def __init__(self, quiver: Quiver, named: dict[str, Representation]):
        self.quiver = quiver
        self.named = named

    def rep(self, text: str, field: str) -> Representation:
        """A representation from a name, inline JSON, or a JSON file."""
        from .quiver import resolve_name

        try:
            if text.lstrip().startswith("{"):
                return Representation.from_json(self.quiver, _parse_json(text, field))
            path = Path(text)
            if path.suffix == ".json" and path.exists():
                return Representation.from_json(self.quiver, _parse_json(path.read_text(), field))
            return resolve_name(self.quiver, text, self.named)
        except InputError as exc:
            raise exc.nested(field) from None
        except UnsupportedShapeError as exc:
            raise InputError(field, str(exc)) from None


def _parse_json(text: str, field: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(field, f"invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_context(source: str) -> Context:
    """Quiver from a path or from a bundled fixture name such as ``A3``."""
    path = Path(source)
    if path.exists():
        data = _parse_json(path.read_text(), "quiver")
    elif source in fixture_names():
        data = load_fixture_data(source)
    else:
        raise InputError("quiver", f"no such file or bundled fixture: {source!r} (fixtures: {', '.join(fixture_names())})")
    if not isinstance(data, dict):
        raise InputError("quiver", "expected a JSON object")
    try:
        q, named = load_quiver(data)
    except InputError as exc:
        raise exc.nested("quiver") from None
    return Context(q, named)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# -- commands ----------------------------------------------------------------


def cmd_indec(args) -> int:
    ctx = load_context(args.quiver)
    try:
        cls = tree_classification(ctx.quiver)
        subs, reps = cls.subquivers, cls.representations
        shape = "tree"
    except UnsupportedShapeError:
        subs, reps = None, list(indecomposables(ctx.quiver, args.max_total))
        shape = f"brute force up to total dimension {args.max_total}"
    items = []
    lines = [f"{len(reps)} indecomposables ({shape})"]
    for i, R in enumerate(reps):
        item = {"representation": R.to_json()}
        if subs is not None:
            item["vertices"] = sorted(subs[i].vertices)
            item["arrows"] = sorted(ctx.quiver.arrows[a].id for a in subs[i].arrows)
            lines.append(f"  vertices {item['vertices']}  {R!r}")
        else:
            lines.append(f"  {R!r}")
        items.append(item)
    _emit(args, {"count": len(reps), "indecomposables": items}, "\n".join(lines))
    return EXIT_OK


def cmd_decompose(args) -> int:
    ctx = load_context(args.quiver)
    M = ctx.rep(args.M, "M")
    res = decompose(M)
    lines = [f"{len(res.summands)} summands"] + [f"  {S!r}" for S in res.summands]
    _emit(args, res.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_hom(args) -> int:
    ctx = load_context(args.quiver)
    M, N = ctx.rep(args.M, "M"), ctx.rep(args.N, "N")
    payload = {"hom_dim": hom_dim(M, N)}
    lines = [f"dim Hom = {payload['hom_dim']}"]
    if args.list:
        morphs = enumerate_morphisms(M, N)
        payload["morphisms"] = [h.to_json() for h in morphs]
        lines += [f"  {h.to_json()['components']}" for h in morphs]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_ext(args) -> int:
    ctx = load_context(args.quiver)
    N, L = ctx.rep(args.N, "N"), ctx.rep(args.L, "L")
    if args.degree < 0:
        raise InputError("degree", "must be non-negative")
    e = ext(args.degree, N, L, args.cap, threads=args.threads)
    payload = e.to_json(witnesses=args.witnesses)
    lines = [
        f"Ext^{e.degree}: {e.class_count} classes, dim {e.dim}",
        f"cap {e.cap}, saturated {str(e.saturated).lower()} (next cap: {e.next_class_count} classes)",
    ]
    if args.witnesses and e.degree > 0:
        for i, w in enumerate(e.witnesses):
            tag = " (zero)" if i == e.zero_class else ""
            lines.append(f"  class {i}{tag}: middles {[list(X.dims) for X in w.middles]}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_euler(args) -> int:
    ctx = load_context(args.quiver)
    L, N = ctx.rep(args.L, "L"), ctx.rep(args.N, "N")
    if args.max_degree is None and ctx.quiver.linear_order is None:
        raise InputError("max-degree", "required off the linear quiver")
    report = euler_form(L, N, args.max_degree, args.cap, args.threads)
    _emit(args, report.to_json(), report.to_text())
    return EXIT_OK


def cmd_projective(args) -> int:
    ctx = load_context(args.quiver)
    P = ctx.rep(args.P, "P")
    verdict = is_projective(P, args.cap, args.method)
    payload = verdict.to_json()
    lines = [f"{verdict.status} ({verdict.method})"]
    if verdict.cap is not None:
        lines.append(f"cap {list(verdict.cap)}, {verdict.cases_checked} epimorphisms searched")
    if verdict.witness is not None:
        ok = verify_witness(P, verdict.witness)
        payload["witness_verified"] = ok
        w = verdict.witness
        lines.append(f"witness: epi {w.epi.source!r} ->> {w.epi.target!r}")
        lines.append(f"  epi {w.epi.to_json()['components']}, g {w.g.to_json()['components']}, verified {str(ok).lower()}")
        if not ok:
            _emit(args, payload, "\n".join(lines))
            return EXIT_FAILED
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_gldim(args) -> int:
    ctx = load_context(args.quiver)
    report = global_dimension(ctx.quiver, args.max_degree, args.cap, threads=args.threads)
    _emit(args, report.to_json(), report.to_text())
    return EXIT_OK


def cmd_descent(args) -> int:
    ctx = load_context(args.quiver)
    if args.universe:
        path = Path(args.universe)
        if not path.exists():
            raise InputError("universe", f"no such file: {args.universe}")
        raw = _parse_json(path.read_text(), "universe")
        if not isinstance(raw, list):
            raise InputError("universe", "expected a JSON list")
        universe = []
        for i, item in enumerate(raw):
            text = item if isinstance(item, str) else json.dumps(item)
            universe.append(ctx.rep(text, f"universe[{i}]"))
    else:
        universe = list(ctx.named.values())
    if args.max_degree is None and ctx.quiver.linear_order is None:
        raise InputError("max-degree", "required off the linear quiver")
    res = descent_check(ctx.quiver, universe, args.max_degree, args.cap, args.threads)
    lines = [f"{len(res.pairs)} violations among {res.evaluated} evaluated pairs"]
    for p in res.pairs:
        lines.append(
            f"  classes {p.classes}: <{p.first.L!r}, {p.first.N!r}> = {p.first.value}"
            f" vs <{p.second.L!r}, {p.second.N!r}> = {p.second.value}"
        )
    _emit(args, res.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_claims(args.only or None)
    lines = [
        f"{'PASS' if r.ok else 'FAIL'}  [{r.claim.criterion}] {r.claim.id}: {r.claim.description} ({r.seconds:.2f}s) {r.detail}"
        for r in results
    ]
    ok = all(r.ok for r in results) and bool(results)
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} claims pass")
    _emit(args, {"ok": ok, "claims": [r.to_json() for r in results]}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAILED


# -- parser ------------------------------------------------------------------


def _cap(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("cap must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="f1rep", description="Quiver representations over F1.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, quiver=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if quiver:
            p.add_argument("quiver", help="quiver JSON file or bundled fixture name (A1..A5, Q3_2_1)")
        p.set_defaults(func=fn)
        return p

    p = add("indec", cmd_indec, "list indecomposables")
    p.add_argument("--max-total", type=int, default=4, help="size bound off trees")
    p = add("decompose", cmd_decompose, "Krull-Schmidt decomposition")
    p.add_argument("M")
    p = add("hom", cmd_hom, "Hom dimension")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("--list", action="store_true", help="print every morphism")
    p = add("ext", cmd_ext, "Yoneda Ext^n(N, L) for sequences L >-> ... ->> N")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("N")
    p.add_argument("L")
    p.add_argument("--cap", type=_cap, default=None, help="total dimension bound per middle term")
    p.add_argument("--witnesses", action="store_true")
    p = add("euler", cmd_euler, "Euler form <L, N>")
    p.add_argument("L")
    p.add_argument("N")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--cap", type=_cap, default=None)
    p = add("projective", cmd_projective, "projectivity verdict with witness")
    p.add_argument("P")
    p.add_argument("--cap", type=_cap, default=None, help="per-vertex dimension bound on searched epis")
    p.add_argument("--method", choices=["auto", "search", "exact"], default="auto")
    p = add("gldim", cmd_gldim, "global dimension scan")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--cap", type=_cap, default=None)
    p = add("descent-check", cmd_descent, "Euler form vs dimension-vector classes")
    p.add_argument("--universe", default=None, help="JSON list of representations (default: named ones)")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--cap", type=_cap, default=None)
    p = add("verify-paper", cmd_verify, "run the bundled claim suite", quiver=False)
    p.add_argument("--only", nargs="*", help="claim ids or criterion numbers")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.threads is not None and args.threads < 1:
        print("error: threads: must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc.path}: {exc.message}", file=sys.stderr)
        return EXIT_INPUT
    except (ContractError, UnsupportedShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
