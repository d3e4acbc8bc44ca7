"""Closed-form threshold numbers and the capacity sequences behind them."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .graphs import FamilySpec, SpecError


class UncoveredFamilyError(ValueError):
    pass


@dataclass(frozen=True)
class SequenceValues:
    m: int
    q: int
    p: int
    s: int
    t: int


def qp_values(m: int) -> SequenceValues:
    if m < 0:
        raise ValueError("m must be nonnegative")
    q = m + comb(m, 3) + 1
    s = m + comb(m // 2, 3) + comb((m + 1) // 2, 3) + 2
    return SequenceValues(m, q, q + 1, s, s - 1)


def seq_value(name: str, m: int) -> int:
    if name not in ("q", "p", "s", "t"):
        raise ValueError(f"unknown sequence {name!r}")
    return getattr(qp_values(m), name)


def m_from_count(n: int, sequence: str = "q") -> tuple[int, bool]:
    """The m with seq(m-1) <= n <= seq(m) - 1, and whether n == seq(m-1)."""
    if n < seq_value(sequence, 0):
        raise ValueError(f"count {n} is below the start of sequence {sequence}")
    m = 1
    while seq_value(sequence, m) <= n:
        m += 1
    return m, n == seq_value(sequence, m - 1)


@dataclass(frozen=True)
class ThetaResult:
    lo: int
    hi: int
    source: str
    boundary: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty theta interval")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"theta only bounded: [{self.lo}, {self.hi}]")
        return self.lo

    def to_json(self) -> dict:
        out = {"source": self.source, "boundary": self.boundary}
        if self.exact:
            out["value"] = self.lo
        else:
            out["lo"], out["hi"] = self.lo, self.hi
        return out


def _exact(v: int, source: str, boundary: bool = False) -> ThetaResult:
    return ThetaResult(v, v, source, boundary)


def _padded(counts, length: int) -> list[int]:
    counts = list(counts)
    return counts + [0] * (length - len(counts))


def path_theta(n: int) -> int:
    if n == 1:
        return 0
    return 1 if n <= 3 else 2


def cluster_theta(counts) -> ThetaResult:
    """Threshold number of n1 K1 + n2 K2 + n3 K3 + n4 K4 + ..."""
    c = _padded(counts, 3)
    if sum(c) < 1:
        raise SpecError("cluster graph needs at least one cluster")
    big = sum(c[2:])       # clusters of size >= 3
    huge = sum(c[3:])      # clusters of size >= 4
    if huge == 0:
        n1, n2, n3 = c[:3]
        if n3 <= 1:
            k = n2 + n3
            return _exact(0 if k == 0 else (1 if k == 1 else 2), "small clusters")
        m, boundary = m_from_count(n3, "q")
        return _exact(2 * m - 1 if boundary else 2 * m, "triangle clusters", boundary)
    if big <= 1:
        k = sum(c[1:])
        return _exact(0 if k == 0 else (1 if k == 1 else 2), "one big cluster")
    if sum(c[:3]) == 0 and all(x == 0 for x in c[4:]):
        # pure n K4
        m, boundary = m_from_count(c[3], "t")
        return _exact(2 * m - 1 if boundary else 2 * m, "K4 clusters", boundary)
    m, boundary = m_from_count(big, "q")
    base = 2 * m - 1 if boundary else 2 * m
    if huge <= m:
        return _exact(base, "big clusters", boundary)
    # collapsing every big cluster to a triangle gives the lower bound; giving
    # each of the `huge` clusters its own color gives a 2*huge construction
    return ThetaResult(base, 2 * huge, "bounds only", boundary)


def multipartite_theta(counts) -> ThetaResult:
    c = _padded(counts, 3)
    if sum(c) < 2:
        raise SpecError("complete multipartite graph needs at least two parts")
    if all(x == 0 for x in c[3:]):
        n1, n2, n3 = c[:3]
        if n3 <= 2:
            k = n2 + n3
            return _exact(1 if k <= 1 else (2 if k == 2 else 3), "small parts")
        m, boundary = m_from_count(n3, "p")
        return _exact(2 * m if boundary else 2 * m + 1, "triangle parts", boundary)
    if sum(c[:3]) == 0 and all(x == 0 for x in c[4:]) and c[3] >= 2:
        m, boundary = m_from_count(c[3], "s")
        return _exact(2 * m if boundary else 2 * m + 1, "K4 parts", boundary)
    inner = cluster_theta(c)
    return _complement_bounds(inner)


def _complement_bounds(inner: ThetaResult) -> ThetaResult:
    # |T(G) - T(G^c)| <= 1, refined by parity: odd T(G) -> {T, T-1}, even -> {T, T+1}
    if inner.exact:
        v = inner.value
        lo, hi = (v - 1, v) if v % 2 == 1 else (v, v + 1)
    else:
        lo, hi = max(inner.lo - 1, 0), inner.hi + 1
    if lo == hi:
        return _exact(lo, "complement bounds")
    return ThetaResult(lo, hi, "bounds only")


def lforest_theta(counts) -> ThetaResult:
    nontrivial = [(order, cnt) for order, cnt in enumerate(counts, start=1) if order >= 2 and cnt]
    total = sum(cnt for _, cnt in nontrivial)
    if total >= 2:
        return _exact(2, "linear forest")
    if total == 0:
        return _exact(0, "edgeless")
    return _exact(path_theta(nontrivial[0][0]), "path plus isolated vertices")


def theta_formula(spec: FamilySpec) -> ThetaResult:
    kind, p = spec.kind, spec.params
    if kind == "path":
        return _exact(path_theta(p[0]), "path")
    if kind == "complete":
        return _exact(0 if p[0] == 1 else 1, "complete")
    if kind == "cycle":
        if p[0] == 3:
            return _exact(1, "complete")
        if p[0] == 4:
            return _exact(2, "4-cycle")
        raise UncoveredFamilyError(f"no formula for cycle:{p[0]}")
    if kind == "ladder":
        return _exact(1 if p[0] == 1 else 2, "ladder")
    if kind == "tent":
        return _exact(1 if p[0] <= 3 else 3, "tent")
    if kind == "lforest":
        return lforest_theta(p)
    if kind == "cluster":
        return cluster_theta(p)
    if kind == "multipartite":
        return multipartite_theta(p)
    if kind == "complement-of":
        inner = spec.children[0]
        if inner.kind == "cluster":
            if sum(inner.params) < 2:
                return _exact(0, "edgeless")
            return multipartite_theta(inner.params)
        if inner.kind == "multipartite":
            return cluster_theta(inner.params)
        if inner.kind == "complete":
            return _exact(0, "edgeless")
        if inner.kind == "complement-of":
            return theta_formula(inner.children[0])
        return _complement_bounds(theta_formula(inner))
    if kind == "union-of":
        kids = spec.children
        if all(c.kind == "path" for c in kids):
            counts = [0] * max(c.params[0] for c in kids)
            for c in kids:
                counts[c.params[0] - 1] += 1
            return lforest_theta(counts)
        if all(c.kind == "complete" for c in kids):
            counts = [0] * max(c.params[0] for c in kids)
            for c in kids:
                counts[c.params[0] - 1] += 1
            return cluster_theta(counts)
        raise UncoveredFamilyError(f"no formula for {spec}")
    raise UncoveredFamilyError(f"no formula for {spec}")
