"""Min-cost circulation with arc lower bounds, as an independent solver.

Network: source -> a_i [alpha_i, alpha_cap_i], a_i -> b_j [0, 1] at cost
cost[i][j], b_j -> sink [beta_j, beta_cap_j], sink -> source [0, sum(alpha_cap)].

Lower bounds are pushed into node imbalances. Negative-cost arcs start
saturated and are replaced by a reverse arc of positive cost, so every
residual cost is nonnegative before the first shortest-path search. The
imbalances are then routed from a super source to a super sink, by
successive shortest paths with Johnson potentials (optimum) or by
breadth-first augmentation (feasibility only).
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .instance import Infeasible, MatchResult, ProblemInstance, validate


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    lower: int
    upper: int
    cost: int


@dataclass(frozen=True)
class FlowNetwork:
    n_nodes: int
    source: int
    sink: int
    arcs: tuple[Arc, ...]
    pair_arcs: dict  # (i, j) -> index into arcs


def build_network(instance: ProblemInstance) -> FlowNetwork:
    s, t = instance.s, instance.t
    source, sink = s + t, s + t + 1
    arcs = []
    pair_arcs = {}
    for i in range(s):
        arcs.append(Arc(source, i, instance.alpha[i], instance.alpha_cap[i], 0))
    for i in range(s):
        for j in range(t):
            pair_arcs[(i, j)] = len(arcs)
            arcs.append(Arc(i, s + j, 0, 1, instance.cost[i][j]))
    for j in range(t):
        arcs.append(Arc(s + j, sink, instance.beta[j], instance.beta_cap[j], 0))
    arcs.append(Arc(sink, source, 0, sum(instance.alpha_cap), 0))
    return FlowNetwork(n_nodes=s + t + 2, source=source, sink=sink, arcs=tuple(arcs), pair_arcs=pair_arcs)


class _Residual:
    """Edge-list residual graph; edge ``e ^ 1`` is the reverse of ``e``."""

    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.head: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []

    def add(self, u: int, v: int, cap: int, cost: int) -> int:
        e = len(self.head)
        self.head += [v, u]
        self.cap += [cap, 0]
        self.cost += [cost, -cost]
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e


@dataclass
class _Reduced:
    graph: _Residual
    super_source: int
    super_sink: int
    required: int
    base_cost: int
    arc_edges: list  # per original arc: (residual edge index, flipped)
    arc_base: list  # per original arc: flow already committed


def _reduce(net: FlowNetwork) -> _Reduced:
    ss, tt = net.n_nodes, net.n_nodes + 1
    g = _Residual(net.n_nodes + 2)
    excess = [0] * net.n_nodes
    base_cost = 0
    arc_edges, arc_base = [], []
    for arc in net.arcs:
        if arc.cost < 0:
            committed = arc.upper
            e = g.add(arc.head, arc.tail, arc.upper - arc.lower, -arc.cost)
            arc_edges.append((e, True))
        else:
            committed = arc.lower
            e = g.add(arc.tail, arc.head, arc.upper - arc.lower, arc.cost)
            arc_edges.append((e, False))
        arc_base.append(committed)
        excess[arc.tail] -= committed
        excess[arc.head] += committed
        base_cost += committed * arc.cost
    required = 0
    for v, ex in enumerate(excess):
        if ex > 0:
            g.add(ss, v, ex, 0)
            required += ex
        elif ex < 0:
            g.add(v, tt, -ex, 0)
    return _Reduced(g, ss, tt, required, base_cost, arc_edges, arc_base)


def _arc_flows(red: _Reduced) -> list[int]:
    flows = []
    for (e, flipped), base in zip(red.arc_edges, red.arc_base):
        pushed = red.graph.cap[e ^ 1]
        flows.append(base - pushed if flipped else base + pushed)
    return flows


def _max_flow(red: _Reduced) -> int:
    g, src, dst = red.graph, red.super_source, red.super_sink
    total = 0
    while True:
        parent = [-1] * g.n
        parent[src] = -2
        queue = deque([src])
        while queue and parent[dst] == -1:
            u = queue.popleft()
            for e in g.adj[u]:
                v = g.head[e]
                if g.cap[e] > 0 and parent[v] == -1:
                    parent[v] = e
                    queue.append(v)
        if parent[dst] == -1:
            return total
        push, v = None, dst
        while v != src:
            e = parent[v]
            push = g.cap[e] if push is None else min(push, g.cap[e])
            v = g.head[e ^ 1]
        v = dst
        while v != src:
            e = parent[v]
            g.cap[e] -= push
            g.cap[e ^ 1] += push
            v = g.head[e ^ 1]
        total += push


def _min_cost_flow(red: _Reduced) -> int:
    """Route up to ``required`` units at minimum cost; return units routed."""
    g, src, dst = red.graph, red.super_source, red.super_sink
    potential = [0] * g.n  # all residual costs start nonnegative
    routed = 0
    while routed < red.required:
        dist = [None] * g.n
        via = [-1] * g.n
        dist[src] = 0
        heap = [(0, src)]
        while heap:
            d, u = heapq.heappop(heap)
            if d != dist[u]:
                continue
            for e in g.adj[u]:
                if g.cap[e] <= 0:
                    continue
                v = g.head[e]
                nd = d + g.cost[e] + potential[u] - potential[v]
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    via[v] = e
                    heapq.heappush(heap, (nd, v))
        if dist[dst] is None:
            break
        for v in range(g.n):
            if dist[v] is not None:
                potential[v] += dist[v]
        push, v = red.required - routed, dst
        while v != src:
            e = via[v]
            push = min(push, g.cap[e])
            v = g.head[e ^ 1]
        v = dst
        while v != src:
            e = via[v]
            g.cap[e] -= push
            g.cap[e ^ 1] += push
            v = g.head[e ^ 1]
        routed += push
    return routed


def feasible(instance: ProblemInstance) -> bool:
    """True iff some matching meets every demand and capacity."""
    validate(instance)
    red = _reduce(build_network(instance))
    return _max_flow(red) == red.required


def min_cost(instance: ProblemInstance) -> MatchResult:
    """Optimal matching via min-cost circulation; raises :class:`Infeasible`."""
    validate(instance)
    net = build_network(instance)
    red = _reduce(net)
    if _min_cost_flow(red) < red.required:
        raise Infeasible("lower bounds cannot all be met")
    flows = _arc_flows(red)
    pairs = [ij for ij, k in net.pair_arcs.items() if flows[k] == 1]
    for arc, f in zip(net.arcs, flows):
        assert arc.lower <= f <= arc.upper, (arc, f)
    return MatchResult.from_pairs(instance, pairs)
