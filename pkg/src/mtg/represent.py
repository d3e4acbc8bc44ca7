"""Representations (ranks + thresholds), the parity verifier, triangle
colorings and the complement transforms.

A pair uv is an edge iff r(u) + r(v) >= theta_i for an odd number of i.  All
of that is funnelled through :func:`region_index`, which counts thresholds
that are <= the pair sum.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import combinations
from typing import Sequence

from .exactnum import ExactReal, compare, min_positive_gap
from .graphs import Graph, complement


class VerificationError(ValueError):
    pass


class ColoringError(RuntimeError):
    """An edge sum landed in an even region; the representation is inconsistent."""


class _Key:
    # wrapper so bisect can use exact comparison
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return compare(self.x, other.x) < 0


@dataclass(frozen=True)
class Representation:
    ranks: tuple
    thresholds: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(ExactReal.coerce(r) for r in self.ranks))
        ths = tuple(ExactReal.coerce(t) for t in self.thresholds)
        for a, b in zip(ths, ths[1:]):
            if compare(a, b) >= 0:
                raise ValueError(f"thresholds not strictly increasing: {a} >= {b}")
        object.__setattr__(self, "thresholds", ths)
        object.__setattr__(self, "_keys", [_Key(t) for t in ths])

    @property
    def k(self) -> int:
        return len(self.thresholds)

    def to_json(self) -> dict:
        return {"thresholds": [t.to_json() for t in self.thresholds],
                "ranks": [r.to_json() for r in self.ranks]}

    @classmethod
    def from_json(cls, obj: dict) -> "Representation":
        return cls(tuple(ExactReal.from_json(r) for r in obj["ranks"]),
                   tuple(ExactReal.from_json(t) for t in obj.get("thresholds", [])))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def region_index(rep: Representation, s) -> int:
    """Number of thresholds <= s."""
    return bisect_right(rep._keys, _Key(ExactReal.coerce(s)))


@dataclass
class Violation:
    pair: tuple
    rank_sum: ExactReal
    region: int
    expected_parity: str

    def to_json(self) -> dict:
        return {"pair": list(self.pair), "rank_sum": self.rank_sum.to_json(),
                "region": self.region, "expected_parity": self.expected_parity}


@dataclass
class VerifyReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


def verify(g: Graph, rep: Representation) -> VerifyReport:
    if len(rep.ranks) != g.n:
        raise VerificationError(f"{len(rep.ranks)} ranks for a graph on {g.n} vertices")
    report = VerifyReport()
    r = rep.ranks
    for u, v in combinations(range(g.n), 2):
        s = r[u] + r[v]
        idx = region_index(rep, s)
        is_edge = (u, v) in g.edges
        if (idx % 2 == 1) != is_edge:
            report.violations.append(Violation((u, v), s, idx, "odd" if is_edge else "even"))
    return report


def check(g: Graph, rep: Representation) -> Representation:
    """Return rep unchanged if it realizes g, raise VerificationError otherwise."""
    report = verify(g, rep)
    if not report.ok:
        bad = report.violations[0]
        raise VerificationError(
            f"{len(report.violations)} violating pairs, first {bad.pair} "
            f"(sum {bad.rank_sum}, region {bad.region}, expected {bad.expected_parity})")
    return rep


def edge_color(rep: Representation, s) -> int:
    """Color i of an edge sum lying in [theta_{2i-1}, theta_{2i}); the odd-k tail
    [theta_k, inf) gets color ceil(k/2)."""
    idx = region_index(rep, s)
    if idx % 2 == 0:
        raise ColoringError(f"edge sum {s} lies in even region {idx}")
    return (idx + 1) // 2


def color_triangles(g: Graph, rep: Representation, triangles: Sequence[Sequence[int]]) -> list[tuple]:
    out = []
    for tri in triangles:
        x, y, z = tri
        colors = []
        for a, b in ((x, y), (x, z), (y, z)):
            if not g.has_edge(a, b):
                raise ValueError(f"{tuple(tri)} is not a triangle")
            colors.append(edge_color(rep, rep.ranks[a] + rep.ranks[b]))
        out.append(tuple(sorted(colors)))
    return out


def check_coloring_lemmas(colorings: Sequence[tuple]) -> str | None:
    """None if the triangle colorings are admissible, else a description.

    No color multiset may occur twice, and {i,j,j} and {i,l,l} with j != l
    may not both occur.
    """
    counts = Counter(tuple(sorted(c)) for c in colorings)
    for ms, cnt in sorted(counts.items()):
        if cnt > 1:
            return f"multiset {ms} appears {cnt} times"
    # every way of reading a multiset as {i, j, j}
    readings = {}
    for ms in counts:
        for pos in range(3):
            rest = ms[:pos] + ms[pos + 1:]
            if rest[0] == rest[1]:
                i, j = ms[pos], rest[0]
                readings.setdefault(i, {}).setdefault(j, ms)
    for i, by_j in sorted(readings.items()):
        if len(by_j) > 1:
            (j, a), (l, b) = sorted(by_j.items())[:2]
            return f"{a} (as i={i}, j={j}) and {b} (as i={i}, l={l}) both appear"
    return None


def complement_representation(g: Graph, rep: Representation) -> Representation:
    """Realize the complement by adding one sentinel threshold below every pair sum."""
    check(g, rep)
    low = min(rep.ranks, key=cmp_to_key(compare)) if rep.ranks else ExactReal.coerce(0)
    sentinel = low * 2 - 1
    if rep.thresholds and compare(sentinel, rep.thresholds[0]) >= 0:
        sentinel = rep.thresholds[0] - 1
    return check(complement(g), Representation(rep.ranks, (sentinel,) + rep.thresholds))


def reflect_representation(g: Graph, rep: Representation) -> Representation:
    """Negate ranks and mirror thresholds.

    With thresholds -theta_i + eta (eta below every positive theta_i - s), a pair
    sum's region becomes k - region, so an odd k realizes the complement with
    the same number of thresholds (an even k realizes g again).
    """
    check(g, rep)
    k = rep.k
    sums = {rep.ranks[u] + rep.ranks[v] for u, v in combinations(range(g.n), 2)}
    below = [s for s in sums if any(compare(s, t) < 0 for t in rep.thresholds)]
    gaps = []
    for t in rep.thresholds:
        under = [s for s in below if compare(s, t) < 0]
        if under:
            gaps.append(min_positive_gap(under, [t]))
    eta = min(gaps) if gaps else 1
    ranks = tuple(-r for r in rep.ranks)
    thresholds = tuple(-t + eta for t in reversed(rep.thresholds))
    target = complement(g) if k % 2 == 1 else g
    return check(target, Representation(ranks, thresholds))
