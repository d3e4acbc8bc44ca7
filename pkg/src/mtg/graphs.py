"""Finite simple graphs and builders for the named families.

Vertex numbering is deterministic per family so that certificates built from
the same spec are byte-identical:

* ``path:n`` / ``cycle:n`` / ``complete:n``: 0..n-1 in path order.
* ``ladder:n``: rail u_0..u_{n-1} is 0..n-1, rail v_0..v_{n-1} is n..2n-1.
* ``tent:n``: path 0..n-1, apex n.
* ``lforest:a1,a2,...``: a1 copies of P1, then a2 copies of P2, and so on.
* ``cluster:n1,n2,...``: all K1 clusters, then K2 (v_j before w_j), then K3, ...
* ``multipartite:n1,n2,...``: the same numbering as the cluster graph whose
  complement it is; parts play the role of clusters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

KINDS = ("path", "cycle", "complete", "ladder", "tent", "lforest",
         "cluster", "multipartite", "complement-of", "union-of")


class SpecError(ValueError):
    """Invalid family spec (arity, range or syntax)."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = frozenset()
    labels: tuple = ()

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            norm.add(_pair(u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        labels = tuple(self.labels)
        if labels and len(labels) != self.n:
            raise ValueError("labels must cover every vertex")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels: Sequence[str] = ()) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges), tuple(labels))

    def has_edge(self, u: int, v: int) -> bool:
        return _pair(u, v) in self.edges

    def pairs(self):
        return combinations(range(self.n), 2)

    def nonedges(self):
        return [p for p in self.pairs() if p not in self.edges]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def to_json(self) -> dict:
        out = {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}
        if self.labels:
            out["labels"] = {str(v): lab for v, lab in enumerate(self.labels)}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Graph":
        n = int(obj["n"])
        labels = obj.get("labels") or {}
        lab = tuple(labels.get(str(v), "") for v in range(n)) if labels else ()
        return cls.from_edges(n, (tuple(e) for e in obj["edges"]), lab)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            if self.labels and self.labels[v]:
                lines.append(f'  {v} [label="{v}:{self.labels[v]}"];')
            else:
                lines.append(f"  {v};")
        for u, v in self.sorted_edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple = ()
    children: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        object.__setattr__(self, "children", tuple(self.children))
        validate(self)

    def __str__(self):
        if self.kind == "complement-of":
            return f"complement({self.children[0]})"
        if self.kind == "union-of":
            return "union(" + "; ".join(str(c) for c in self.children) + ")"
        return f"{self.kind}:" + ",".join(str(p) for p in self.params)


_MIN_SINGLE = {"path": 1, "cycle": 3, "complete": 1, "ladder": 1, "tent": 1}


def validate(spec: FamilySpec) -> None:
    kind, params = spec.kind, spec.params
    if kind not in KINDS:
        raise SpecError(f"unknown family kind {kind!r}")
    if any(p < 0 for p in params):
        raise SpecError(f"{kind}: parameters must be nonnegative")
    if kind in _MIN_SINGLE:
        if len(params) != 1:
            raise SpecError(f"{kind} takes exactly one parameter")
        if params[0] < _MIN_SINGLE[kind]:
            raise SpecError(f"{kind}:{params[0]} out of range (need >= {_MIN_SINGLE[kind]})")
    elif kind in ("lforest", "cluster", "multipartite"):
        if not params:
            raise SpecError(f"{kind} needs at least one count")
        if kind == "lforest" and sum(params) < 1:
            raise SpecError("lforest needs at least one path")
        if kind == "cluster" and sum(params) < 1:
            raise SpecError("cluster needs at least one cluster")
        if kind == "multipartite" and sum(params) < 2:
            raise SpecError("multipartite needs at least two parts")
    elif kind == "complement-of":
        if len(spec.children) != 1 or params:
            raise SpecError("complement takes exactly one inner spec")
    elif kind == "union-of":
        if not spec.children or params:
            raise SpecError("union takes one or more inner specs")


def _cluster_layout(counts: Sequence[int]) -> list[tuple[int, int]]:
    """(size, index) for each cluster in vertex order."""
    out = []
    for size, cnt in enumerate(counts, start=1):
        out.extend((size, j) for j in range(cnt))
    return out


def cluster_blocks(counts: Sequence[int]) -> list[list[int]]:
    """Vertex lists of each cluster (or part) in numbering order."""
    blocks, v = [], 0
    for size, _ in _cluster_layout(counts):
        blocks.append(list(range(v, v + size)))
        v += size
    return blocks


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise SpecError(f"cycle:{n} out of range (need >= 3)")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph(n)


def ladder(n: int) -> Graph:
    edges = []
    for i in range(n - 1):
        edges += [(i, i + 1), (n + i, n + i + 1)]
    edges += [(i, n + i) for i in range(n)]
    labels = [f"u{i}" for i in range(n)] + [f"v{i}" for i in range(n)]
    return Graph.from_edges(2 * n, edges, labels)


def tent(n: int) -> Graph:
    edges = [(i, i + 1) for i in range(n - 1)] + [(i, n) for i in range(n)]
    labels = [f"b{i + 1}" for i in range(n)] + ["apex"]
    return Graph.from_edges(n + 1, edges, labels)


def linear_forest(counts: Sequence[int]) -> Graph:
    paths = []
    for order, cnt in enumerate(counts, start=1):
        paths.extend([path(order)] * cnt)
    g = disjoint_union(paths)
    labels, idx = [], 0
    for order, cnt in enumerate(counts, start=1):
        for _ in range(cnt):
            labels += [f"P{order}#{idx}"] * order
            idx += 1
    return Graph(g.n, g.edges, tuple(labels))


def cluster_graph(counts: Sequence[int]) -> Graph:
    edges, labels = [], []
    for (size, j), block in zip(_cluster_layout(counts), cluster_blocks(counts)):
        edges.extend(combinations(block, 2))
        labels += [f"K{size}#{j}"] * size
    return Graph.from_edges(len(labels), edges, labels)


def multipartite(counts: Sequence[int]) -> Graph:
    g = complement(cluster_graph(counts))
    return Graph(g.n, g.edges, tuple(lab.replace("K", "part", 1) for lab in cluster_graph(counts).labels))


def complement(g: Graph) -> Graph:
    return Graph(g.n, frozenset(p for p in g.pairs() if p not in g.edges), g.labels)


def disjoint_union(gs: Sequence[Graph]) -> Graph:
    edges, labels, offset = [], [], 0
    any_labels = any(g.labels for g in gs)
    for g in gs:
        edges += [(u + offset, v + offset) for u, v in g.edges]
        if any_labels:
            labels += list(g.labels) if g.labels else [""] * g.n
        offset += g.n
    return Graph.from_edges(offset, edges, labels)


def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
    vs = sorted(set(vs))
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(vs)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    labels = [g.labels[v] for v in vs] if g.labels else []
    return Graph.from_edges(len(vs), edges, labels)


def build_family(spec: FamilySpec) -> Graph:
    kind, p = spec.kind, spec.params
    if kind == "path":
        return path(p[0])
    if kind == "cycle":
        return cycle(p[0])
    if kind == "complete":
        return complete(p[0])
    if kind == "ladder":
        return ladder(p[0])
    if kind == "tent":
        return tent(p[0])
    if kind == "lforest":
        return linear_forest(p)
    if kind == "cluster":
        return cluster_graph(p)
    if kind == "multipartite":
        return multipartite(p)
    if kind == "complement-of":
        return complement(build_family(spec.children[0]))
    if kind == "union-of":
        return disjoint_union([build_family(c) for c in spec.children])
    raise SpecError(f"unknown family kind {kind!r}")
