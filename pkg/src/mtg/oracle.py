"""Exact threshold numbers of small graphs.

For a fixed k every pair uv gets a region j in [0, k] (odd for edges, even
for nonedges), meaning theta_j <= r(u) + r(v) < theta_{j+1}.  A depth-first
search assigns regions pair by pair and asks the exact LP whether the partial
system still has a real solution.  theta_1 is pinned to 0: shifting every rank
by c shifts every pair sum by 2c.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .graphs import Graph
from .lp import LE, LT, Feasible, LinearSystem, feasible_linear_system
from .represent import Representation, check
from .theta import ThetaResult

log = logging.getLogger(__name__)

YES, NO, BUDGET = "yes", "no", "budget_exceeded"


@dataclass
class Budget:
    max_nodes: Optional[int] = None
    timeout: Optional[float] = None     # seconds

    def start(self) -> "_Meter":
        return _Meter(self)


class _Meter:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.nodes = 0
        self.t0 = time.monotonic()

    def tick(self) -> bool:
        """Count one node; False once the budget is spent."""
        self.nodes += 1
        b = self.budget
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            return False
        if b.timeout is not None and time.monotonic() - self.t0 > b.timeout:
            return False
        return True


@dataclass
class SearchResult:
    status: str
    representation: Optional[Representation] = None
    nodes: int = 0


def pair_order(g: Graph) -> list[tuple[int, int]]:
    deg = [0] * g.n
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    edges = sorted(g.edges, key=lambda p: (-(deg[p[0]] + deg[p[1]]), p))
    nonedges = sorted(g.nonedges(), key=lambda p: (-(deg[p[0]] + deg[p[1]]), p))
    return edges + nonedges


def allowed_regions(is_edge: bool, k: int) -> list[int]:
    return [j for j in range(k + 1) if (j % 2 == 1) == is_edge]


class RegionSystem:
    """Linear system over (r_0..r_{n-1}, theta_2..theta_k) with theta_1 = 0."""

    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        names = [f"r{v}" for v in range(n)] + [f"theta{i}" for i in range(2, k + 1)]
        self.system = LinearSystem(names)
        for i in range(1, k):
            row = {}
            self._theta(row, i, 1)
            self._theta(row, i + 1, -1)
            self.system.add_sparse(row, LT)

    def _theta(self, row: dict, i: int, coeff: int):
        if i > 1:
            idx = self.n + i - 2
            row[idx] = row.get(idx, 0) + coeff

    def constrain(self, u: int, v: int, j: int) -> int:
        """Add theta_j <= r_u + r_v < theta_{j+1}; returns the number of rows added."""
        added = 0
        if j >= 1:
            row = {u: -1, v: -1}
            self._theta(row, j, 1)
            self.system.add_sparse(row, LE)
            added += 1
        if j < self.k:
            row = {u: 1, v: 1}
            self._theta(row, j + 1, -1)
            self.system.add_sparse(row, LT)
            added += 1
        return added

    def pop(self, count: int):
        del self.system.constraints[len(self.system.constraints) - count:]

    def solve(self):
        return feasible_linear_system(self.system)

    def to_representation(self, witness) -> Representation:
        ranks = tuple(witness[:self.n])
        thresholds = (Fraction(0),) + tuple(witness[self.n:])
        return Representation(ranks, thresholds[:self.k])


def _dfs(g, k, order, prefix, meter, cancel=None):
    rs = RegionSystem(g.n, k)
    for (u, v), j in zip(order, prefix):
        rs.constrain(u, v, j)
    if not isinstance(rs.solve(), Feasible):
        return SearchResult(NO, nodes=meter.nodes)
    edges = g.edges

    def rec(depth):
        if depth == len(order):
            sol = rs.solve()
            return sol if isinstance(sol, Feasible) else None
        u, v = order[depth]
        for j in allowed_regions((u, v) in edges, k):
            if not meter.tick() or (cancel is not None and cancel.is_set()):
                raise _OutOfBudget
            added = rs.constrain(u, v, j)
            sol = rs.solve()
            if isinstance(sol, Feasible):
                if depth + 1 == len(order):
                    return sol
                found = rec(depth + 1)
                if found is not None:
                    return found
            rs.pop(added)
        return None

    try:
        sol = rec(len(prefix))
    except _OutOfBudget:
        return SearchResult(BUDGET, nodes=meter.nodes)
    if sol is None:
        return SearchResult(NO, nodes=meter.nodes)
    rep = check(g, rs.to_representation(sol.witness))
    return SearchResult(YES, rep, meter.nodes)


class _OutOfBudget(Exception):
    pass


def exists_representation(g: Graph, k: int, budget: Budget | None = None,
                          workers: int = 1) -> SearchResult:
    if k < 0:
        raise ValueError("k must be nonnegative")
    budget = budget or Budget()
    if not g.edges:
        # zero ranks, every threshold above the common pair sum 0
        zeros = tuple(Fraction(0) for _ in range(g.n))
        return SearchResult(YES, check(g, Representation(zeros, tuple(Fraction(i + 1) for i in range(k)))))
    if k == 0:
        return SearchResult(NO)
    order = pair_order(g)
    if workers > 1:
        return _parallel(g, k, order, budget, workers)
    return _dfs(g, k, order, (), budget.start())


def _worker(args):
    g, k, order, prefix, budget = args
    return prefix, _dfs(g, k, order, prefix, budget.start(), _CANCEL)


_CANCEL = None


def _init_worker(event):
    global _CANCEL
    _CANCEL = event


def _parallel(g, k, order, budget, workers) -> SearchResult:
    import multiprocessing

    u, v = order[0]
    prefixes = [(j,) for j in allowed_regions((u, v) in g.edges, k)]
    manager = multiprocessing.Manager()
    event = manager.Event()
    results = []
    try:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(event,)) as pool:
            futs = [pool.submit(_worker, (g, k, order, p, budget)) for p in prefixes]
            for fut in as_completed(futs):
                _, res = fut.result()
                results.append(res)
                if res.status == YES:
                    event.set()
                    for f in futs:
                        f.cancel()
                    break
    finally:
        manager.shutdown()
    nodes = sum(r.nodes for r in results)
    for r in results:
        if r.status == YES:
            return SearchResult(YES, r.representation, nodes)
    if any(r.status == BUDGET for r in results) or len(results) < len(prefixes):
        return SearchResult(BUDGET, nodes=nodes)
    return SearchResult(NO, nodes=nodes)


@dataclass
class ThetaSearch:
    result: ThetaResult
    witness: Optional[Representation] = None
    log: list = field(default_factory=list)


def theta_search(g: Graph, k_max: int = 8, budget: Budget | None = None,
                 workers: int = 1) -> ThetaSearch:
    """Smallest k with a representation, or a lower bound k_max + 1.

    The budget applies to each k separately.  A k that runs out of budget
    turns the answer into an interval starting at that k.
    """
    if not g.edges:
        zeros = tuple(Fraction(0) for _ in range(g.n))
        return ThetaSearch(ThetaResult(0, 0, "oracle"), Representation(zeros, ()))
    entries = []
    first_unknown = None
    for k in range(0, k_max + 1):
        res = exists_representation(g, k, budget, workers)
        entries.append((k, res.status, res.nodes))
        log.info("k=%d: %s (%d nodes)", k, res.status, res.nodes)
        if res.status == YES:
            lo = k if first_unknown is None else first_unknown
            return ThetaSearch(ThetaResult(lo, k, "oracle" if lo == k else "oracle bounds"),
                               res.representation, entries)
        if res.status == BUDGET and first_unknown is None:
            first_unknown = k
    lo = k_max + 1 if first_unknown is None else first_unknown
    return ThetaSearch(ThetaResult(lo, max(lo, g.n * (g.n - 1) // 2), "oracle lower bound"),
                       None, entries)


def enumerate_assignments(g: Graph, k: int):
    """Yield (regions, verdict) for every parity-consistent full assignment.

    No pruning; meant for small cases where the whole table is wanted.
    """
    pairs = list(g.pairs())
    choices = [allowed_regions(p in g.edges, k) for p in pairs]
    for regions in product(*choices):
        rs = RegionSystem(g.n, k)
        for (u, v), j in zip(pairs, regions):
            rs.constrain(u, v, j)
        sol = rs.solve()
        rep = None
        if isinstance(sol, Feasible):
            rep = check(g, rs.to_representation(sol.witness))
        yield dict(zip(pairs, regions)), rep
