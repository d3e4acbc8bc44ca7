"""Command line interface.

Exit codes: 0 ok, 1 verification failure, 2 valid but not tight,
3 usage error, 4 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .construct import construct_family
from .graphs import FamilySpec, Graph, SpecError, build_family
from .oracle import BUDGET, Budget, theta_search
from .represent import Representation, check_coloring_lemmas, color_triangles, verify
from .theta import UncoveredFamilyError, theta_formula

EXIT_OK, EXIT_VERIFY, EXIT_NOT_TIGHT, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3, 4

_SINGLE = ("path", "cycle", "complete", "ladder", "tent")
_MULTI = ("lforest", "cluster", "multipartite")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch: str):
        if self._peek() != ch:
            got = self._peek() or "end of input"
            raise SpecError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def _word(self) -> str:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalpha() or self.text[self.pos] == "-"):
            self.pos += 1
        if start == self.pos:
            raise SpecError("expected a family name", start)
        return self.text[start:self.pos].lower()

    def _int(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise SpecError("expected a nonnegative integer", start)
        return int(self.text[start:self.pos])

    def spec(self) -> FamilySpec:
        start = self.pos
        word = self._word()
        if word in ("complement", "complement-of"):
            self._expect("(")
            inner = self.spec()
            self._expect(")")
            return _resolve_complement(inner)
        if word in ("union", "union-of"):
            self._expect("(")
            kids = [self.spec()]
            while self._peek() == ";":
                self.pos += 1
                kids.append(self.spec())
            self._expect(")")
            return FamilySpec("union-of", (), tuple(kids))
        if word not in _SINGLE + _MULTI:
            raise SpecError(f"unknown family {word!r}", start)
        self._expect(":")
        params = [self._int()]
        while self._peek() == ",":
            self.pos += 1
            params.append(self._int())
        if word in _SINGLE and len(params) != 1:
            raise SpecError(f"{word} takes exactly one parameter", start)
        try:
            return FamilySpec(word, tuple(params))
        except SpecError as exc:
            raise SpecError(str(exc), start) from None

    def parse(self) -> FamilySpec:
        spec = self.spec()
        self._skip()
        if self.pos != len(self.text):
            raise SpecError("trailing input", self.pos)
        return spec


def _resolve_complement(inner: FamilySpec) -> FamilySpec:
    if inner.kind == "cluster" and sum(inner.params) >= 2:
        return FamilySpec("multipartite", inner.params)
    if inner.kind == "multipartite":
        return FamilySpec("cluster", inner.params)
    if inner.kind == "complement-of":
        return inner.children[0]
    return FamilySpec("complement-of", (), (inner,))


def parse_family_spec(text: str) -> FamilySpec:
    return _Parser(text).parse()


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _load_graph(path: str) -> Graph:
    obj = _load_json(path)
    return Graph.from_json(obj.get("graph", obj))


def _load_rep(path: str) -> Representation:
    obj = _load_json(path)
    return Representation.from_json(obj.get("representation", obj))


def _dump(obj, path: str | None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cluster_triangles(g: Graph) -> list[tuple[int, int, int]]:
    """Connected components that are exactly triangles."""
    adj = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, out = set(), []
    for v in range(g.n):
        if v in seen:
            continue
        comp, stack = {v}, [v]
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        if len(comp) == 3 and all(len(adj[x]) == 2 for x in comp):
            out.append(tuple(sorted(comp)))
    return out


def cmd_build(args) -> int:
    g = build_family(parse_family_spec(args.spec))
    if args.json or args.output:
        _dump(g.to_json(), args.output)
    else:
        print(f"{args.spec}: {g.n} vertices, {len(g.edges)} edges")
    return EXIT_OK


def cmd_construct(args) -> int:
    spec = parse_family_spec(args.spec)
    c = construct_family(spec)
    bundle = c.bundle()
    bundle["spec"] = str(spec)
    if args.json or args.output:
        _dump(bundle, args.output)
    else:
        print(f"{spec}: {c.graph.n} vertices, {c.k} thresholds, verified")
        for i, t in enumerate(c.representation.thresholds, 1):
            print(f"  theta_{i} = {t}")
        for v, r in enumerate(c.representation.ranks):
            print(f"  r({v}) = {r}")
        if c.note:
            print(f"  note: {c.note}")
    return EXIT_OK


def cmd_verify(args) -> int:
    g, rep = _load_graph(args.graph), _load_rep(args.rep)
    report = verify(g, rep)
    if args.json:
        _dump(report.to_json(), None)
    else:
        print("ok" if report.ok else f"{len(report.violations)} violations")
        for v in report.violations:
            print(f"  pair {v.pair}: sum {v.rank_sum}, region {v.region}, expected {v.expected_parity}")
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_certify(args) -> int:
    spec = parse_family_spec(args.spec)
    c = construct_family(spec)
    ok = verify(c.graph, c.representation).ok
    formula = theta_formula(spec)
    matches = formula.exact and c.k == formula.value
    code = EXIT_VERIFY if not ok else (EXIT_OK if matches else EXIT_NOT_TIGHT)
    out = {"spec": str(spec), "verified": ok, "thresholds": c.k,
           "formula": formula.to_json(), "tight": matches}
    if c.note:
        out["note"] = c.note
    if args.json:
        _dump(out, None)
    else:
        status = {EXIT_OK: "CERTIFIED", EXIT_VERIFY: "FAILED", EXIT_NOT_TIGHT: "VALID, NOT TIGHT"}[code]
        print(f"{status}: {spec} uses {c.k} thresholds; formula {formula.to_json()}")
    return code


def cmd_theta(args) -> int:
    if args.mode == "formula":
        if not args.spec:
            raise SpecError("theta formula needs a spec")
        res = theta_formula(parse_family_spec(args.spec))
        if args.json:
            _dump(res.to_json(), None)
        else:
            print(res.value if res.exact else f"[{res.lo}, {res.hi}] ({res.source})")
        return EXIT_OK
    if args.graph:
        g = _load_graph(args.graph)
    elif args.spec:
        g = build_family(parse_family_spec(args.spec))
    else:
        raise SpecError("theta oracle needs -g FILE or a spec")
    budget = Budget(args.budget_nodes, args.timeout)
    found = theta_search(g, args.max_k, budget, args.workers)
    res = found.result
    out = {"result": res.to_json(),
           "log": [{"k": k, "status": s, "nodes": n} for k, s, n in found.log]}
    if found.witness is not None:
        out["witness"] = found.witness.to_json()
    if args.json:
        _dump(out, None)
    else:
        print(res.value if res.exact else f"[{res.lo}, {res.hi}] ({res.source})")
    if any(status == BUDGET for _, status, _ in found.log):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_color(args) -> int:
    g, rep = _load_graph(args.graph), _load_rep(args.rep)
    report = verify(g, rep)
    if not report.ok:
        print("representation does not verify", file=sys.stderr)
        return EXIT_VERIFY
    tris = _cluster_triangles(g)
    colors = color_triangles(g, rep, tris)
    problem = check_coloring_lemmas(colors)
    if args.json:
        _dump({"triangles": [list(t) for t in tris], "colorings": [list(c) for c in colors],
               "lemmas_ok": problem is None, "problem": problem}, None)
    else:
        for t, c in zip(tris, colors):
            print(f"  {t}: {''.join(str(x) for x in c)}")
        print("lemmas ok" if problem is None else f"lemma violation: {problem}")
    return EXIT_OK if problem is None else EXIT_VERIFY


def cmd_export(args) -> int:
    g = _load_graph(args.graph)
    sys.stdout.write(g.to_dot())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    # the flags are accepted before or after the verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    p = _ArgParser(prog="mtg", description="Multithreshold graph representations.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_ArgParser)

    def verb(name, help):
        return sub.add_parser(name, parents=[common], help=help)

    s = verb("build", "build a family graph")
    s.add_argument("spec")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_build)

    s = verb("construct", "emit a verified representation bundle")
    s.add_argument("spec")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = verb("verify", "check a representation against a graph")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-r", "--rep", required=True)
    s.set_defaults(func=cmd_verify)

    s = verb("certify", "construct, verify and compare with the formula")
    s.add_argument("spec")
    s.set_defaults(func=cmd_certify)

    s = verb("theta", "threshold number by formula or oracle")
    s.add_argument("mode", choices=("formula", "oracle"))
    s.add_argument("spec", nargs="?")
    s.add_argument("-g", "--graph")
    s.add_argument("--max-k", type=int, default=8)
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--timeout", type=float)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_theta)

    s = verb("color", "color triangle clusters and check the coloring lemmas")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-r", "--rep", required=True)
    s.set_defaults(func=cmd_color)

    s = verb("export", "export a graph")
    s.add_argument("format", choices=("dot",))
    s.add_argument("-g", "--graph", required=True)
    s.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (SpecError, UncoveredFamilyError, ValueError, OSError) as exc:
        print(f"mtg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
