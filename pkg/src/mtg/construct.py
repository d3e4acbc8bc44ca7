"""Explicit representations for the named families.

Every constructor runs the parity verifier on its output before returning
it, so a bug surfaces as a VerificationError and never as a wrong
certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .exactnum import ExactReal, compare, min_positive_gap, next_prime_at_least, nth_prime
from .graphs import (FamilySpec, Graph, SpecError, build_family, cluster_blocks, cluster_graph,
                     complement, ladder, linear_forest, multipartite, tent)
from .represent import Representation, check, complement_representation, reflect_representation, verify
from .theta import cluster_theta, m_from_count, multipartite_theta, qp_values


@dataclass
class ClusterPlan:
    m: int
    a: list
    triples: list          # triple given to each K3 cluster, in order
    delta_lb: Fraction
    eps: Fraction
    boundary_case: bool
    colors_of_big: list = field(default_factory=list)   # color of each K_l, l >= 4

    def to_json(self) -> dict:
        return {"m": self.m, "a": [x.to_json() for x in self.a],
                "triples": [list(t) for t in self.triples],
                "delta_lb": f"{self.delta_lb.numerator}/{self.delta_lb.denominator}",
                "eps": f"{self.eps.numerator}/{self.eps.denominator}",
                "boundary_case": self.boundary_case,
                "colors_of_big": list(self.colors_of_big)}


@dataclass
class Construction:
    graph: Graph
    representation: Representation
    plan: Optional[ClusterPlan] = None
    tight: Optional[bool] = None
    note: str = ""

    @property
    def k(self) -> int:
        return self.representation.k

    def bundle(self) -> dict:
        out = {"graph": self.graph.to_json(),
               "representation": self.representation.to_json(),
               "report": verify(self.graph, self.representation).to_json()}
        if self.plan is not None:
            out["plan"] = self.plan.to_json()
        if self.tight is not None:
            out["tight"] = self.tight
        if self.note:
            out["note"] = self.note
        return out


HALF = Fraction(1, 2)


def construct_linear_forest(counts: Sequence[int]) -> Construction:
    """Thresholds (-3/2, 3/2); every edge sums to +-1, every nonedge to magnitude >= 2."""
    if sum(counts) < 1:
        raise SpecError("linear forest needs at least one path")
    g = linear_forest(counts)
    ranks = []
    start = 1
    for order, cnt in enumerate(counts, start=1):
        for _ in range(cnt):
            mags = range(start, start + order)
            ranks += [m if i % 2 == 0 else -m for i, m in enumerate(mags)]
            start = start + order - 1 + 2
    rep = Representation(tuple(ranks), (Fraction(-3, 2), Fraction(3, 2)))
    nontrivial = sum(counts[1:])
    note = "" if nontrivial >= 2 else "valid but possibly not minimal"
    return Construction(g, check(g, rep), note=note)


def construct_ladder(n: int) -> Construction:
    if n < 1:
        raise SpecError("ladder needs n >= 1")
    g = ladder(n)
    u = [(-1) ** i * (i + 1) for i in range(n)]
    rep = Representation(tuple(u) + tuple(-x for x in u), (Fraction(-3, 2), Fraction(3, 2)))
    note = "not minimal: ladder:1 is P2 with threshold number 1" if n == 1 else ""
    return Construction(g, check(g, rep), note=note)


def construct_tent(n: int) -> Construction:
    """Path ranks 1, -2, 3, ...; apex 6n puts every apex sum in [5n, 7n]."""
    if n < 2:
        raise SpecError("tent needs n >= 2")
    g = tent(n)
    b = [(-1) ** (i - 1) * i for i in range(1, n + 1)]
    rep = Representation(tuple(b) + (6 * n,), (Fraction(-3, 2), Fraction(3, 2), Fraction(5 * n)))
    note = f"not minimal: tent:{n} has threshold number 1" if n <= 3 else ""
    return Construction(g, check(g, rep), note=note)


def construct_cluster_small(n1: int, n2: int, n3: int) -> Construction:
    if n3 > 1 or min(n1, n2, n3) < 0 or n1 + n2 + n3 < 1:
        raise SpecError("construct_cluster_small needs n3 <= 1 and at least one cluster")
    g = cluster_graph([n1, n2, n3])
    if n2 + n3 == 0:
        rep = Representation(tuple(0 for _ in range(g.n)), ())
    elif n2 + n3 == 1:
        rep = Representation(tuple([-2] * n1 + [1] * (g.n - n1)), (0,))
    else:
        ranks = [i for i in range(1, n1 + 1)]
        for j in range(1, n2 + 1):
            ranks += [n1 + j, -n1 - j]
        ranks += [0] * (3 * n3)
        rep = Representation(tuple(ranks), (-HALF, HALF))
    return Construction(g, check(g, rep))


def select_triples(m: int, n3: int) -> list[tuple[int, int, int]]:
    """Edge-sum multisets (over colors 1..m) for n3 triangles, every pure one included."""
    if n3 < 2:
        raise SpecError("select_triples needs n3 >= 2")
    lo, hi = qp_values(m - 1).q, qp_values(m).q - 1
    if not lo <= n3 <= hi:
        raise SpecError(f"n3={n3} outside [{lo}, {hi}] for m={m}")
    pure = [(i, i, i) for i in range(1, m + 1)]
    if n3 == lo:
        return pure + list(combinations(range(1, m), 3))
    mixed = list(combinations(range(1, m + 1), 3))
    drop = hi - n3
    return pure + mixed[:len(mixed) - drop]


def _triangle_ranks(triple, a):
    i, j, l = triple
    if i == j == l:
        return [a[i - 1] / 2] * 3
    ai, aj, al = a[i - 1], a[j - 1], a[l - 1]
    return [(ai + aj - al) / 2, (ai + al - aj) / 2, (aj + al - ai) / 2]


def _choose_a(m: int, boundary: bool) -> list[ExactReal]:
    a = [ExactReal.sqrt(nth_prime(i)) for i in range(1, m + 1)]
    if boundary:
        # smallest prime P with sqrt(P) >= 2 a_{m-1}
        prev = nth_prime(m - 1)
        big = next_prime_at_least(4 * prev)
        a[-1] = ExactReal.sqrt(big)
        assert compare(a[-2], a[-1] / 2) <= 0
    return a


def construct_cluster_general(counts: Sequence[int], colors: Optional[int] = None) -> Construction:
    """n1 K1 + n2 K2 + n3 K3 + n4 K4 + ... with at least two clusters of size >= 3.

    Each cluster of size >= 4 gets its own color i and all ranks a_i / 2.
    ``colors`` forces more colors than the count formula asks for, which is
    how clusters of size >= 4 outnumbering m are handled (not minimal).
    """
    counts = list(counts) + [0] * (3 - len(counts))
    n1, n2 = counts[0], counts[1]
    big = sum(counts[2:])
    huge = sum(counts[3:])
    if big < 2:
        raise SpecError("need at least two clusters of size >= 3")
    m, boundary = m_from_count(big, "q")
    if colors is not None and colors > m:
        if big < colors:
            raise SpecError(f"{colors} colors need at least {colors} clusters of size >= 3")
        m, boundary = colors, False
        mixed = list(combinations(range(1, m + 1), 3))
        triples = [(i, i, i) for i in range(1, m + 1)] + mixed[:big - m]
    else:
        triples = select_triples(m, big)
    if huge > m:
        raise SpecError(f"{huge} clusters of size >= 4 but only {m} colors")

    a = _choose_a(m, boundary)
    g = cluster_graph(counts)
    blocks = cluster_blocks(counts)
    ranks: list = [None] * g.n

    big_blocks = blocks[n1 + n2:]
    sizes = [len(b) for b in big_blocks]
    big_colors = list(range(1, huge + 1))
    remaining = [t for t in triples if not (t[0] == t[1] == t[2] and t[0] <= huge)]
    tri_iter = iter(remaining)
    color_iter = iter(big_colors)
    used = []
    for block, size in zip(big_blocks, sizes):
        if size == 3:
            t = next(tri_iter)
            used.append(t)
            for v, r in zip(block, _triangle_ranks(t, a)):
                ranks[v] = r
        else:
            c = next(color_iter)
            for v in block:
                ranks[v] = a[c - 1] / 2

    core = [v for b in big_blocks for v in b]
    nonedge_sums = {ranks[u] + ranks[v] for u, v in combinations(core, 2) if not g.has_edge(u, v)}
    delta_lb = min_positive_gap(nonedge_sums, a)
    for x, y in combinations(a, 2):
        delta_lb = min(delta_lb, min_positive_gap([x], [y]))
    eps = delta_lb / (2 * max(1, n1 + n2))

    base = a[0] / 2
    for i in range(1, n1 + 1):
        ranks[blocks[i - 1][0]] = base + i * eps
    for j in range(1, n2 + 1):
        v, w = blocks[n1 + j - 1]
        ranks[v] = base + (n1 + j) * eps
        ranks[w] = base - (n1 + j) * eps

    thresholds = []
    for x in a:
        thresholds += [x, x + eps]
    if boundary:
        thresholds.pop()
    rep = Representation(tuple(ranks), tuple(thresholds))
    plan = ClusterPlan(m, a, used, delta_lb, eps, boundary, big_colors)
    return Construction(g, check(g, rep), plan)


def construct_cluster_main(n1: int, n2: int, n3: int) -> Construction:
    if n3 < 2:
        raise SpecError("construct_cluster_main needs n3 >= 2")
    return construct_cluster_general([n1, n2, n3])


def construct_cluster(counts: Sequence[int]) -> Construction:
    """Dispatch to the small-n3, main or general cluster constructions."""
    counts = list(counts) + [0] * (3 - len(counts))
    if sum(counts[2:]) >= 2:
        m, _ = m_from_count(sum(counts[2:]), "q")
        huge = sum(counts[3:])
        c = construct_cluster_general(counts, huge if huge > m else None)
        theta = cluster_theta(counts)
        if not (theta.exact and c.k == theta.value):
            c.note = f"valid but not known minimal: {c.k} thresholds, formula range {theta.lo}..{theta.hi}"
        return c
    if sum(counts[3:]) == 0:
        return construct_cluster_small(*counts[:3])
    # a single cluster of size >= 4: every vertex takes the triangle's common rank
    n1, n2 = counts[:2]
    g = cluster_graph(counts)
    small = construct_cluster_small(n1, n2, 1).representation
    ranks = small.ranks[:-3] + (small.ranks[-1],) * (g.n - (n1 + 2 * n2))
    return Construction(g, check(g, Representation(ranks, small.thresholds)))


def construct_multipartite(counts: Sequence[int]) -> Construction:
    """Complete multipartite graph with parts of sizes 1, 2, 3, ...

    Parts are the clusters of the complementary cluster graph.  Two parts of
    size >= 2 (n2 + n3 == 2, n3 <= 2) use a direct 2-threshold assignment.
    Otherwise the cluster representation is complemented: by reflection when
    its threshold count is odd (same count), by a sentinel threshold when even
    (one more).  ``tight`` says whether the count matches the formula.
    """
    counts = list(counts) + [0] * (3 - len(counts))
    if sum(counts) < 2:
        raise SpecError("complete multipartite graph needs at least two parts")
    g = multipartite(counts)
    formula = multipartite_theta(counts)
    n1, n2, n3 = counts[:3]
    if sum(counts[3:]) == 0 and n3 <= 2 and n2 + n3 == 2:
        blocks = cluster_blocks(counts)
        ranks = [0] * g.n
        for sign, block in zip((1, -1), blocks[n1:]):
            for v in block:
                ranks[v] = sign
        rep = check(g, Representation(tuple(ranks), (Fraction(-3, 2), Fraction(3, 2))))
        return Construction(g, rep, tight=rep.k == formula.lo)

    inner = construct_cluster(counts)
    if inner.k % 2 == 1:
        rep = reflect_representation(inner.graph, inner.representation)
    else:
        rep = complement_representation(inner.graph, inner.representation)
    rep = check(g, rep)
    tight = formula.exact and rep.k == formula.value
    note = "" if tight else f"{rep.k} thresholds; formula gives {formula.lo}" + (
        "" if formula.exact else f"..{formula.hi}")
    return Construction(g, rep, inner.plan, tight=tight, note=note)


def construct_family(spec: FamilySpec) -> Construction:
    kind, p = spec.kind, spec.params
    if kind == "lforest":
        return construct_linear_forest(p)
    if kind == "path":
        counts = [0] * p[0]
        counts[-1] = 1
        return construct_linear_forest(counts)
    if kind == "ladder":
        return construct_ladder(p[0])
    if kind == "cycle" and p[0] == 4:
        g = build_family(spec)
        return Construction(g, check(g, Representation((1, -1, 1, -1), (-HALF, HALF))))
    if kind == "cycle" and p[0] == 3:
        return construct_family(FamilySpec("complete", (3,)))
    if kind == "tent":
        return construct_tent(p[0])
    if kind == "cluster":
        return construct_cluster(p)
    if kind == "multipartite":
        return construct_multipartite(p)
    if kind == "complete":
        counts = [0] * p[0]
        counts[-1] = 1
        c = construct_cluster(counts)
        return Construction(c.graph, c.representation)
    if kind == "complement-of":
        inner = spec.children[0]
        if inner.kind == "cluster":
            return construct_multipartite(inner.params)
        if inner.kind == "multipartite":
            return construct_cluster(inner.params)
        if inner.kind == "complement-of":
            return construct_family(inner.children[0])
        c = construct_family(inner)
        if c.k % 2 == 1:
            rep = reflect_representation(c.graph, c.representation)
        else:
            rep = complement_representation(c.graph, c.representation)
        return Construction(complement(c.graph), rep)
    raise SpecError(f"no constructor for {spec}")
