"""Exact decision of ``dim(P) <= t`` by colouring critical pairs.

A colour class is admissible iff reversing all of its pairs keeps the order
acyclic (no alternating cycle inside the class).  Each class keeps the
reachability bitsets of its digraph so that testing a pair is one bit probe.
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field

from .poset import Poset, critical_pairs, reversing_extension, verify_realizer

YES, NO, TIMEOUT = "yes", "no", "timeout"

DEFAULT_BUDGET_NODES = 10_000_000
DEFAULT_BUDGET_SECS = 60.0


@dataclass
class OracleStats:
    nodes: int = 0
    seconds: float = 0.0
    critical_pairs: int = 0
    seed_clique: int = 0


@dataclass
class OracleVerdict:
    answer: str
    t: int
    realizer: list[list[str]] | None = None
    stats: OracleStats = field(default_factory=OracleStats)

    @property
    def yes(self) -> bool:
        return self.answer == YES

    @property
    def no(self) -> bool:
        return self.answer == NO


class _Timeout(Exception):
    pass


def conflict_graph(P: Poset, pairs: list[tuple[int, int]]) -> list[int]:
    """Bitset adjacency of pairs forming an alternating cycle of length 2."""
    down = P.down

    def leq(x, y):
        return x == y or bool(down[y] >> x & 1)

    m = len(pairs)
    adj = [0] * m
    for i in range(m):
        a, b = pairs[i]
        for j in range(i + 1, m):
            c, d = pairs[j]
            if leq(a, d) and leq(c, b):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _greedy_clique(adj: list[int]) -> list[int]:
    best: list[int] = []
    order = sorted(range(len(adj)), key=lambda i: (-bin(adj[i]).count("1"), i))
    for start in order[:64]:
        clique = [start]
        cand = adj[start]
        while cand:
            # pick the candidate with most neighbours among candidates
            nxt = max((j for j in _iter_bits(cand)), key=lambda j: (bin(adj[j] & cand).count("1"), -j))
            clique.append(nxt)
            cand &= adj[nxt]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def _iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def dim_at_most(P: Poset, t: int, budget_nodes: int = DEFAULT_BUDGET_NODES,
                budget_secs: float = DEFAULT_BUDGET_SECS) -> OracleVerdict:
    """Decide whether ``P`` has a realizer with ``t`` linear extensions.

    ``no`` is only returned after the search space is exhausted; running
    out of nodes or time gives ``timeout``.
    """
    if t < 1:
        raise ValueError("t must be positive")
    start = time.perf_counter()
    stats = OracleStats()
    cps = critical_pairs(P)
    stats.critical_pairs = len(cps)
    idx = P.index
    pairs = [(idx[a], idx[b]) for a, b in cps]
    m, n = len(pairs), len(P)

    def finish(answer, realizer=None):
        stats.seconds = time.perf_counter() - start
        return OracleVerdict(answer, t, realizer, stats)

    if m == 0:
        L = reversing_extension(P, [])
        return finish(YES, [L] * t)

    conflicts = conflict_graph(P, pairs)
    seed = _greedy_clique(conflicts)
    stats.seed_clique = len(seed)
    if len(seed) > t:
        return finish(NO)

    assign = [-1] * m
    reach = [[P.up[x] for x in range(n)] for _ in range(t)]
    used = 0

    def place(reach_c, k):
        # add arc b -> a to the class digraph
        a, b = pairs[k]
        ra = reach_c[a] | (1 << a)
        bbit = 1 << b
        for x in range(n):
            if x == b or reach_c[x] & bbit:
                reach_c[x] |= ra

    for c, k in enumerate(seed):
        assign[k] = c
        place(reach[c], k)
    used = len(seed)
    # the first pair is pinned when no clique was found
    if used == 0:
        assign[0] = 0
        place(reach[0], 0)
        used = 1

    nodes = [0]
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * m + 1000))

    def feasible(reach, k, used):
        a, b = pairs[k]
        out = [c for c in range(used) if not reach[c][a] >> b & 1]
        if used < t:
            out.append(used)
        return out

    def propagate(assign, reach, used):
        """Unit propagation; returns (ok, used, branch_pair, branch_domain)."""
        while True:
            best_k, best_dom = -1, None
            progress = False
            for k in range(m):
                if assign[k] >= 0:
                    continue
                dom = feasible(reach, k, used)
                if not dom:
                    return False, used, -1, None
                if len(dom) == 1:
                    c = dom[0]
                    assign[k] = c
                    place(reach[c], k)
                    if c == used:
                        used += 1
                    progress = True
                elif best_dom is None or len(dom) < len(best_dom):
                    best_k, best_dom = k, dom
            if not progress:
                return True, used, best_k, best_dom

    def search(assign, reach, used):
        nodes[0] += 1
        if nodes[0] > budget_nodes or (nodes[0] & 1023 == 0 and time.perf_counter() - start > budget_secs):
            raise _Timeout
        ok, used, k, dom = propagate(assign, reach, used)
        if not ok:
            return None
        if k < 0:
            return assign
        for c in dom:
            a2 = assign[:]
            r2 = [r[:] for r in reach]
            a2[k] = c
            place(r2[c], k)
            res = search(a2, r2, max(used, c + 1))
            if res is not None:
                return res
        return None

    try:
        result = search(assign, reach, used)
    except _Timeout:
        stats.nodes = nodes[0]
        return finish(TIMEOUT)
    stats.nodes = nodes[0]
    if result is None:
        return finish(NO)
    realizer = []
    for c in range(t):
        cls = [cps[k] for k in range(m) if result[k] == c]
        L = reversing_extension(P, cls)
        if L is None:
            raise AssertionError("colour class with an alternating cycle slipped through")
        realizer.append(L)
    check = verify_realizer(P, realizer)
    if not check:
        raise AssertionError(f"oracle produced an invalid realizer: {check.message}")
    return finish(YES, realizer)


@dataclass
class DimensionResult:
    dimension: int | None
    realizer: list[list[str]] | None
    verdicts: list[OracleVerdict]

    @property
    def timed_out(self) -> bool:
        return self.dimension is None


def dimension(P: Poset, budget_nodes: int = DEFAULT_BUDGET_NODES,
              budget_secs: float = DEFAULT_BUDGET_SECS, max_t: int | None = None) -> DimensionResult:
    """Smallest ``t`` with a ``t``-realizer, trying ``t = 1, 2, ...``."""
    verdicts = []
    t = 1
    limit = max_t if max_t is not None else max(1, len(P))
    while t <= limit:
        v = dim_at_most(P, t, budget_nodes, budget_secs)
        verdicts.append(v)
        if v.answer == YES:
            return DimensionResult(t, v.realizer, verdicts)
        if v.answer == TIMEOUT:
            return DimensionResult(None, None, verdicts)
        t += 1
    return DimensionResult(None, None, verdicts)
