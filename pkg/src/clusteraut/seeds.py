"""Seeds, seed mutation and breadth-first exchange-graph exploration.

Clusters are identified as unordered sets: the node key is the sorted list of
the canonical strings of the cluster variables.  Every node stores one
representative ordering of its cluster (the initial node keeps the natural
order ``x1..xn``, every other node is sorted by string) together with the
quiver in that ordering.  An edge ``(key, k)`` records the node reached by
mutating the representative at position ``k`` and the permutation ``perm``
with ``perm[j]`` = representative position, in the new node, of position
``j`` of the mutated seed.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exact_arith import RationalFn, parse_ratfn, variables
from .quiver import Quiver, mutate_quiver

__all__ = [
    "Seed",
    "ExchangeGraph",
    "Incomplete",
    "Unreachable",
    "GSVViolation",
    "initial_seed",
    "mutate_seed",
    "exchange_polynomial",
    "canonical_cluster_key",
    "explore",
    "cluster_variables",
    "is_cluster_variable",
    "is_cluster",
    "find_flip_path",
    "seed_along",
    "KEY_SEPARATOR",
]

KEY_SEPARATOR = " | "
DEFAULT_NODE_CAP = 20000
DEFAULT_DEPTH_CAP = 64


class Incomplete(RuntimeError):
    """A negative answer was requested from a partially explored graph."""


class Unreachable(LookupError):
    pass


class GSVViolation(AssertionError):
    """Two paths reached one cluster with different quivers."""


@dataclass(frozen=True)
class Seed:
    cluster: tuple[RationalFn, ...]
    quiver: Quiver

    def __post_init__(self):
        if len(self.cluster) != self.quiver.n:
            raise ValueError("cluster size differs from quiver size")

    @property
    def n(self) -> int:
        return self.quiver.n

    def key(self) -> str:
        return canonical_cluster_key(self.cluster)

    def mutate(self, k: int) -> "Seed":
        return mutate_seed(self, k)

    def strings(self) -> list[str]:
        return [str(x) for x in self.cluster]


def initial_seed(q: Quiver) -> Seed:
    return Seed(tuple(variables(q.n)), q)


def _monomial_product(cluster: Sequence[RationalFn], exps: Sequence[tuple[int, int]], n: int) -> RationalFn:
    out = RationalFn.const(n, 1)
    for j, e in exps:
        out = out * (cluster[j] ** e)
    return out


def exchange_polynomial(seed: Seed, k: int) -> RationalFn:
    """``prod_{b_kj>0} x_j^b_kj + prod_{b_kj<0} x_j^-b_kj`` for the cluster of ``seed``."""
    row = seed.quiver.b[k]
    n = seed.n
    outgoing = [(j, v) for j, v in enumerate(row) if v > 0]
    incoming = [(j, -v) for j, v in enumerate(row) if v < 0]
    return _monomial_product(seed.cluster, outgoing, n) + _monomial_product(seed.cluster, incoming, n)


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Exchange relation at position ``k`` (0-based) plus quiver mutation."""
    if not 0 <= k < seed.n:
        raise IndexError(f"position {k + 1} out of range 1..{seed.n}")
    new = exchange_polynomial(seed, k) / seed.cluster[k]
    cluster = seed.cluster[:k] + (new,) + seed.cluster[k + 1 :]
    return Seed(cluster, mutate_quiver(seed.quiver, k))


def seed_along(seed: Seed, word: Iterable[int]) -> Seed:
    for k in word:
        seed = mutate_seed(seed, k)
    return seed


def canonical_cluster_key(cluster: Iterable) -> str:
    return KEY_SEPARATOR.join(sorted(str(x) for x in cluster))


# ----------------------------------------------------------------------
# exchange graph


@dataclass
class ExchangeGraph:
    quiver: Quiver
    nodes: dict[str, Seed] = field(default_factory=dict)
    edges: dict[tuple[str, int], tuple[str, tuple[int, ...]]] = field(default_factory=dict)
    depth: dict[str, int] = field(default_factory=dict)
    initial_key: str = ""
    complete: bool = False
    depth_reached: int = 0

    @property
    def n(self) -> int:
        return self.quiver.n

    def initial(self) -> Seed:
        return self.nodes[self.initial_key]

    def neighbor(self, key: str, k: int) -> tuple[str, tuple[int, ...]]:
        try:
            return self.edges[(key, k)]
        except KeyError:
            raise Unreachable(f"edge ({k + 1}) of this node was not explored") from None

    def variable_keys(self) -> set[str]:
        out = set()
        for s in self.nodes.values():
            out.update(str(x) for x in s.cluster)
        return out

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "initial_key": self.initial_key,
            "complete": self.complete,
            "depth_reached": self.depth_reached,
            "nodes": [
                {"key": k, "cluster": s.strings(), "b": [list(r) for r in s.quiver.b], "depth": self.depth[k]}
                for k, s in sorted(self.nodes.items())
            ],
            "edges": [
                [k, pos + 1, k2, [p + 1 for p in perm]]
                for (k, pos), (k2, perm) in sorted(self.edges.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExchangeGraph":
        q = Quiver.from_json(data["quiver"])
        g = cls(q, initial_key=data["initial_key"], complete=bool(data["complete"]))
        g.depth_reached = int(data.get("depth_reached", 0))
        for node in data["nodes"]:
            cluster = tuple(parse_ratfn(t, q.n) for t in node["cluster"])
            seed = Seed(cluster, Quiver(tuple(tuple(r) for r in node["b"])))
            if seed.key() != node["key"]:
                raise ValueError(f"node key does not match its cluster: {node['key']}")
            g.nodes[node["key"]] = seed
            g.depth[node["key"]] = int(node["depth"])
        for k, pos, k2, perm in data["edges"]:
            g.edges[(k, pos - 1)] = (k2, tuple(p - 1 for p in perm))
        if g.initial_key not in g.nodes:
            raise ValueError("initial node missing from graph file")
        return g

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "ExchangeGraph":
        return cls.from_json(json.loads(text))


def _representative(seed: Seed) -> tuple[Seed, tuple[int, ...]]:
    """Sort a seed by variable string; returns the sorted seed and old->new positions."""
    strs = seed.strings()
    order = sorted(range(seed.n), key=lambda i: strs[i])
    pos = [0] * seed.n
    for new, old in enumerate(order):
        pos[old] = new
    pos = tuple(pos)
    cluster = tuple(seed.cluster[i] for i in order)
    return Seed(cluster, seed.quiver.relabel(pos)), pos


def explore(
    q: Quiver, node_cap: int = DEFAULT_NODE_CAP, depth_cap: int = DEFAULT_DEPTH_CAP, check_gsv: bool = True
) -> ExchangeGraph:
    """Breadth-first closure of seed mutation, deduplicated by unordered cluster."""
    if node_cap < 1 or depth_cap < 1:
        raise ValueError("caps must be positive")
    s0 = initial_seed(q)
    g = ExchangeGraph(q)
    g.initial_key = s0.key()
    g.nodes[g.initial_key] = s0
    g.depth[g.initial_key] = 0
    level = [g.initial_key]
    capped = False
    d = 0
    while level:
        if d >= depth_cap:
            capped = True
            break
        nxt = []
        for key in sorted(level):
            seed = g.nodes[key]
            for k in range(q.n):
                if (key, k) in g.edges:
                    continue
                m = mutate_seed(seed, k)
                mkey = m.key()
                if mkey not in g.nodes:
                    if len(g.nodes) >= node_cap:
                        capped = True
                        continue
                    rep, pos = _representative(m)
                    g.nodes[mkey] = rep
                    g.depth[mkey] = d + 1
                    nxt.append(mkey)
                    g.edges[(key, k)] = (mkey, pos)
                else:
                    stored = g.nodes[mkey]
                    where = {str(x): i for i, x in enumerate(stored.cluster)}
                    pos = tuple(where[str(x)] for x in m.cluster)
                    if check_gsv and m.quiver.relabel(pos) != stored.quiver:
                        raise GSVViolation(f"quiver mismatch at cluster {mkey}")
                    g.edges[(key, k)] = (mkey, pos)
                    # mutation is involutive: record the reverse edge too
                back = pos[k]
                if (mkey, back) not in g.edges:
                    inv = [0] * q.n
                    for j, p in enumerate(pos):
                        inv[p] = j
                    g.edges[(mkey, back)] = (key, tuple(inv))
        if nxt:
            d += 1
        level = nxt
    g.depth_reached = max(g.depth.values())
    g.complete = not capped and len(g.edges) == len(g.nodes) * q.n
    return g


def cluster_variables(g: ExchangeGraph) -> list[RationalFn]:
    seen: dict[str, RationalFn] = {}
    for s in g.nodes.values():
        for x in s.cluster:
            seen.setdefault(str(x), x)
    return [seen[k] for k in sorted(seen)]


def is_cluster_variable(g: ExchangeGraph, f: RationalFn | str) -> bool:
    key = str(f)
    if key in g.variable_keys():
        return True
    if g.complete:
        return False
    raise Incomplete("variable not found in a partially explored exchange graph")


def is_cluster(g: ExchangeGraph, cluster: Iterable) -> bool:
    key = canonical_cluster_key(cluster)
    if key in g.nodes:
        return True
    if g.complete:
        return False
    raise Incomplete("cluster not found in a partially explored exchange graph")


def _tree_path(g: ExchangeGraph, from_key: str, to_key: str) -> list[tuple[str, int]]:
    """Shortest list of ``(node, representative position)`` steps."""
    if from_key not in g.nodes or to_key not in g.nodes:
        raise Unreachable("node not in graph")
    parent: dict[str, tuple[str, int] | None] = {from_key: None}
    queue = deque([from_key])
    while queue:
        u = queue.popleft()
        if u == to_key:
            break
        for k in range(g.n):
            e = g.edges.get((u, k))
            if e and e[0] not in parent:
                parent[e[0]] = (u, k)
                queue.append(e[0])
    if to_key not in parent:
        raise Unreachable("target cluster not reachable in the explored graph")
    steps = []
    cur = to_key
    while parent[cur] is not None:
        u, k = parent[cur]
        steps.append((u, k))
        cur = u
    return steps[::-1]


def find_flip_path(g: ExchangeGraph, from_key: str, to_key: str) -> list[int]:
    """Shortest mutation sequence, as positions of the running seed.

    The running seed starts as the representative ordering of ``from_key``
    (natural order for the initial node) and keeps positions fixed while
    mutating, exactly as ``seed_along`` does.
    """
    word, _ = path_with_frame(g, from_key, to_key)
    return word


def path_with_frame(g: ExchangeGraph, from_key: str, to_key: str) -> tuple[list[int], tuple[int, ...]]:
    """Word in running positions and the final frame ``sigma``.

    ``sigma[i]`` is the representative position, in ``to_key``, of running position ``i``.
    """
    sigma = list(range(g.n))
    inv = list(range(g.n))
    word = []
    for u, k in _tree_path(g, from_key, to_key):
        word.append(inv[k])
        _, perm = g.edges[(u, k)]
        sigma = [perm[s] for s in sigma]
        for i, s in enumerate(sigma):
            inv[s] = i
    return word, tuple(sigma)
