"""Cluster automorphisms: certification, composition, inversion and enumeration.

An automorphism ``f`` is stored in word form: a mutation word ``w`` applied to
the initial seed (positions stay fixed while mutating) and a bijection ``perm``
with ``f(x_i)`` = the variable at position ``perm[i]`` of ``mu_w(x)``.  The
bijection is also the certificate: ``perm`` is a quiver isomorphism from ``Q``
(direct) or ``Q^op`` (inverse) onto the quiver of ``mu_w(x)``.

In word form composition and inversion are purely combinatorial, because
``f`` commutes with mutation and relabels positions by ``perm``::

    f o g = (w_f + perm_f(w_g), perm_f o perm_g)
    f^-1  = (perm_f^-1(reversed w_f), perm_f^-1)

The images of ``x1..xn`` are computed on demand by replaying the word.
Equality of automorphisms is equality of image lists.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exact_arith import RationalFn, substitute, variables
from .groups import FiniteGroup
from .quiver import Quiver, iter_isomorphisms, mutate_quiver, opposite
from .seeds import (
    ExchangeGraph,
    Incomplete,
    Seed,
    canonical_cluster_key,
    explore,
    initial_seed,
    path_with_frame,
    seed_along,
)

__all__ = [
    "DIRECT",
    "INVERSE",
    "NotACluster",
    "NoQuiverIso",
    "NotAnAutomorphism",
    "ClusterAutomorphism",
    "AutGroup",
    "check_cluster_automorphism",
    "oracle_check",
    "compose",
    "invert",
    "identity",
    "automorphism_from_word",
    "from_quiver_automorphism",
    "from_quiver_anti_automorphism",
    "aut_group",
    "find_automorphisms_bounded",
    "opposite_mutation_equivalent",
    "reduce_word",
    "powers",
]

DIRECT, INVERSE = 0, 1


class NotACluster(ValueError):
    pass


class NoQuiverIso(ValueError):
    """The images form a cluster whose quiver matches neither Q nor Q^op."""

    def __init__(self, msg: str, image_quiver: Quiver | None = None):
        super().__init__(msg)
        self.image_quiver = image_quiver


class NotAnAutomorphism(ValueError):
    pass


def reduce_word(word: Iterable[int]) -> tuple[int, ...]:
    """Cancel adjacent repeated mutations (each mutation is an involution)."""
    out: list[int] = []
    for k in word:
        if out and out[-1] == k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def _inverse_perm(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


@dataclass(eq=False)
class ClusterAutomorphism:
    quiver: Quiver
    word: tuple[int, ...]
    perm: tuple[int, ...]
    direction: int
    _seed: Seed | None = field(default=None, repr=False)

    def __post_init__(self):
        self.word = reduce_word(self.word)
        self.perm = tuple(self.perm)

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def certificate(self) -> tuple[int, ...]:
        return self.perm

    def target_seed(self) -> Seed:
        if self._seed is None:
            self._seed = seed_along(initial_seed(self.quiver), self.word)
        return self._seed

    @property
    def images(self) -> tuple[RationalFn, ...]:
        s = self.target_seed()
        return tuple(s.cluster[p] for p in self.perm)

    @property
    def target_key(self) -> str:
        return self.target_seed().key()

    def image_strings(self) -> tuple[str, ...]:
        return tuple(str(x) for x in self.images)

    def verify(self) -> None:
        """Re-check the quiver certificate against the replayed seed."""
        b = self.target_seed().quiver.b
        q = self.quiver.b
        sign = 1 if self.direction == DIRECT else -1
        n = self.n
        for i in range(n):
            for j in range(n):
                if b[self.perm[i]][self.perm[j]] != sign * q[i][j]:
                    raise NotAnAutomorphism("certificate is not a quiver (anti-)isomorphism")

    def __eq__(self, other):
        if not isinstance(other, ClusterAutomorphism):
            return NotImplemented
        if self.quiver != other.quiver:
            return False
        if self.word == other.word and self.perm == other.perm:
            return True
        return self.image_strings() == other.image_strings()

    def __hash__(self):
        return hash(self.image_strings())

    def __mul__(self, other: "ClusterAutomorphism") -> "ClusterAutomorphism":
        return compose(self, other)

    def inverse(self) -> "ClusterAutomorphism":
        return invert(self)

    def __pow__(self, k: int) -> "ClusterAutomorphism":
        if k < 0:
            return invert(self) ** (-k)
        out = identity(self.quiver)
        base = self
        while k:
            if k & 1:
                out = compose(out, base)
            k >>= 1
            if k:
                base = compose(base, base)
        return out

    def is_identity(self) -> bool:
        if not self.word and self.perm == tuple(range(self.n)):
            return True
        return self.image_strings() == tuple(f"x{i + 1}" for i in range(self.n))

    def describe(self) -> dict:
        return {
            "direction": "direct" if self.direction == DIRECT else "inverse",
            "images": list(self.image_strings()),
            "certificate": [p + 1 for p in self.perm],
            "word": [k + 1 for k in self.word],
        }

    def __repr__(self):
        kind = "direct" if self.direction == DIRECT else "inverse"
        return f"ClusterAutomorphism({kind}, word={[k + 1 for k in self.word]}, perm={[p + 1 for p in self.perm]})"


def identity(q: Quiver) -> ClusterAutomorphism:
    return ClusterAutomorphism(q, (), tuple(range(q.n)), DIRECT)


def powers(f: ClusterAutomorphism, count: int) -> list[ClusterAutomorphism]:
    """``[f, f^2, ..., f^count]``, replaying each extra copy of the word only once."""
    seed = initial_seed(f.quiver)
    word: tuple[int, ...] = ()
    perm = tuple(range(f.n))
    out = []
    for _ in range(count):
        step = tuple(perm[k] for k in f.word)
        seed = seed_along(seed, step)
        word += step
        perm = tuple(perm[p] for p in f.perm)
        direction = (out[-1].direction + f.direction) % 2 if out else f.direction
        out.append(ClusterAutomorphism(f.quiver, word, perm, direction, seed))
    return out


def compose(f: ClusterAutomorphism, g: ClusterAutomorphism) -> ClusterAutomorphism:
    """``f o g``: apply ``g`` first, then ``f``, as maps of the ambient field."""
    if f.quiver != g.quiver:
        raise ValueError("automorphisms of different cluster algebras")
    word = f.word + tuple(f.perm[k] for k in g.word)
    perm = tuple(f.perm[p] for p in g.perm)
    return ClusterAutomorphism(f.quiver, word, perm, (f.direction + g.direction) % 2)


def invert(f: ClusterAutomorphism) -> ClusterAutomorphism:
    inv = _inverse_perm(f.perm)
    word = tuple(inv[k] for k in reversed(f.word))
    return ClusterAutomorphism(f.quiver, word, inv, f.direction)


def compose_by_substitution(f: ClusterAutomorphism, g: ClusterAutomorphism) -> tuple[RationalFn, ...]:
    """Images of ``f o g`` computed as ``g(x_i)`` with ``x_j -> f(x_j)``."""
    fi = f.images
    return tuple(substitute(y, fi) for y in g.images)


def _certify(q: Quiver, target: Quiver, perm: Sequence[int] | None) -> tuple[tuple[int, ...], int] | None:
    n = q.n
    if perm is not None:
        for sign, d in ((1, DIRECT), (-1, INVERSE)):
            if all(target.b[perm[i]][perm[j]] == sign * q.b[i][j] for i in range(n) for j in range(n)):
                return tuple(perm), d
        return None
    for src, d in ((q, DIRECT), (opposite(q), INVERSE)):
        for iso in iter_isomorphisms(src, target):
            return iso, d
    return None


def automorphism_from_word(
    q: Quiver, word: Sequence[int], perm: Sequence[int] | None = None
) -> ClusterAutomorphism:
    """Automorphism induced by a mutation sequence ending in a copy of ``Q`` or ``Q^op``.

    Without ``perm`` the lexicographically least direct certificate is used,
    or the least inverse one when no direct one exists.
    """
    target = q
    for k in word:
        target = mutate_quiver(target, k)
    found = _certify(q, target, perm)
    if found is None:
        raise NoQuiverIso("the mutated quiver is isomorphic neither to Q nor to Q^op", target)
    p, d = found
    return ClusterAutomorphism(q, tuple(word), p, d)


def from_quiver_automorphism(q: Quiver, sigma: Sequence[int]) -> ClusterAutomorphism:
    """``x_i -> x_sigma(i)`` for a quiver automorphism or anti-automorphism ``sigma``."""
    found = _certify(q, q, sigma)
    if found is None:
        raise NotAnAutomorphism("sigma is neither an automorphism nor an anti-automorphism of Q")
    return ClusterAutomorphism(q, (), found[0], found[1])


def from_quiver_anti_automorphism(q: Quiver, sigma: Sequence[int]) -> ClusterAutomorphism:
    """``x_i -> x_sigma(i)`` for an isomorphism ``Q^op -> Q``; always inverse."""
    if any(q.b[sigma[i]][sigma[j]] != -q.b[i][j] for i in range(q.n) for j in range(q.n)):
        raise NotAnAutomorphism("sigma is not an anti-automorphism of Q")
    return ClusterAutomorphism(q, (), tuple(sigma), INVERSE)


# ----------------------------------------------------------------------
# certification against an explored exchange graph


def check_cluster_automorphism(g: ExchangeGraph, images: Sequence[RationalFn | str]) -> ClusterAutomorphism:
    """Decide whether ``x_i -> images[i]`` is a cluster automorphism."""
    n = g.n
    if len(images) != n:
        raise ValueError(f"expected {n} images, got {len(images)}")
    strs = [str(x) for x in images]
    if len(set(strs)) != n:
        raise NotACluster("images are not pairwise distinct")
    key = canonical_cluster_key(strs)
    node = g.nodes.get(key)
    if node is None:
        if g.complete:
            raise NotACluster("the images do not form a cluster")
        raise Incomplete("image cluster not found in the explored part of the exchange graph")
    where = {str(x): i for i, x in enumerate(node.cluster)}
    phi = tuple(where[s] for s in strs)
    q = g.quiver
    found = _certify(q, node.quiver, phi)
    if found is None:
        image_q = Quiver(tuple(tuple(node.quiver.b[phi[i]][phi[j]] for j in range(n)) for i in range(n)))
        raise NoQuiverIso(
            "the image cluster's quiver is isomorphic neither to Q nor to Q^op "
            "under the induced point bijection",
            image_q,
        )
    word, sigma = path_with_frame(g, g.initial_key, key)
    sigma_inv = _inverse_perm(sigma)
    perm = tuple(sigma_inv[p] for p in phi)
    return ClusterAutomorphism(q, tuple(word), perm, found[1])


def oracle_check(g: ExchangeGraph, images: Sequence[RationalFn]) -> bool:
    """Independent check: the substitution maps every cluster of ``g`` to a cluster."""
    if not g.complete:
        raise Incomplete("oracle check needs a complete exchange graph")
    imgs = list(images)
    keys = set(g.nodes)
    cache: dict[str, str] = {}
    for seed in g.nodes.values():
        out = []
        for x in seed.cluster:
            s = str(x)
            if s not in cache:
                cache[s] = str(substitute(x, imgs))
            out.append(cache[s])
        if len(set(out)) != len(out) or canonical_cluster_key(out) not in keys:
            return False
    return True


# ----------------------------------------------------------------------
# whole groups in finite type


@dataclass
class AutGroup:
    elements: list[ClusterAutomorphism]
    image_keys: list[tuple[str, ...]]
    table: list[list[int]]
    direct: list[int]
    group: FiniteGroup

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.order // len(self.direct)

    def index_of(self, f: ClusterAutomorphism) -> int:
        return self.image_keys.index(f.image_strings())

    def direct_group(self) -> FiniteGroup:
        return self.group.subgroup(self.direct)

    def inverse_elements(self) -> list[int]:
        d = set(self.direct)
        return [i for i in range(self.order) if i not in d]


def _variable_action(g: ExchangeGraph, target: str, phi: Sequence[int]) -> dict[str, str]:
    """Action on all cluster variables of the automorphism sending the initial
    representative position ``i`` to position ``phi[i]`` of node ``target``."""
    n = g.n
    frame = {g.initial_key: (target, tuple(phi))}
    queue = deque([g.initial_key])
    while queue:
        u = queue.popleft()
        fu, gu = frame[u]
        for k in range(n):
            v, p = g.edges[(u, k)]
            if v in frame:
                continue
            fv, pp = g.edges[(fu, gu[k])]
            gv = [0] * n
            for j in range(n):
                gv[p[j]] = pp[gu[j]]
            frame[v] = (fv, tuple(gv))
            queue.append(v)
    act: dict[str, str] = {}
    for u, (fu, gu) in frame.items():
        src, dst = g.nodes[u].cluster, g.nodes[fu].cluster
        for j in range(n):
            act[str(src[j])] = str(dst[gu[j]])
    return act


def aut_group(g: ExchangeGraph) -> AutGroup:
    """All cluster automorphisms of a finite-type algebra, with multiplication table."""
    if not g.complete:
        raise Incomplete("the full automorphism group needs a complete exchange graph")
    q = g.quiver
    qop = opposite(q)
    found: dict[tuple[str, ...], tuple[str, tuple[int, ...], int]] = {}
    for key in sorted(g.nodes):
        node = g.nodes[key]
        for src, d in ((q, DIRECT), (qop, INVERSE)):
            for phi in iter_isomorphisms(src, node.quiver):
                imgs = tuple(str(node.cluster[p]) for p in phi)
                found.setdefault(imgs, (key, phi, d))
    keys = sorted(found, key=lambda t: (found[t][2], g.depth[found[t][0]], t))
    ident = tuple(f"x{i + 1}" for i in range(q.n))
    keys.remove(ident)
    keys.insert(0, ident)
    index = {k: i for i, k in enumerate(keys)}
    elements = []
    actions = []
    for k in keys:
        key, phi, d = found[k]
        word, sigma = path_with_frame(g, g.initial_key, key)
        sigma_inv = _inverse_perm(sigma)
        elements.append(ClusterAutomorphism(q, tuple(word), tuple(sigma_inv[p] for p in phi), d))
        actions.append(_variable_action(g, key, phi))
    table = []
    for a in range(len(keys)):
        row = []
        act = actions[a]
        for b in range(len(keys)):
            prod = tuple(act[s] for s in keys[b])
            if prod not in index:
                raise AssertionError("computed automorphisms are not closed under composition")
            row.append(index[prod])
        table.append(row)
    direct = [i for i, k in enumerate(keys) if found[k][2] == DIRECT]
    return AutGroup(elements, keys, table, direct, FiniteGroup(table))


def find_automorphisms_bounded(
    q: Quiver, depth: int, node_cap: int = 20000
) -> list[ClusterAutomorphism]:
    """Automorphisms whose image cluster is within ``depth`` mutations of the initial one."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth == 0:
        out = []
        seen = set()
        for src, d in ((q, DIRECT), (opposite(q), INVERSE)):
            for iso in iter_isomorphisms(src, q):
                if iso not in seen:
                    seen.add(iso)
                    out.append(ClusterAutomorphism(q, (), iso, d))
        return out
    g = explore(q, node_cap=node_cap, depth_cap=depth)
    qop = opposite(q)
    out = []
    seen: set[tuple[str, ...]] = set()
    for key in sorted(g.nodes, key=lambda k: (g.depth[k], k)):
        if g.depth[key] > depth:
            continue
        node = g.nodes[key]
        for src, d in ((q, DIRECT), (qop, INVERSE)):
            for phi in iter_isomorphisms(src, node.quiver):
                imgs = tuple(str(node.cluster[p]) for p in phi)
                if imgs in seen:
                    continue
                seen.add(imgs)
                word, sigma = path_with_frame(g, g.initial_key, key)
                sigma_inv = _inverse_perm(sigma)
                out.append(ClusterAutomorphism(q, tuple(word), tuple(sigma_inv[p] for p in phi), d))
    return out


@dataclass(frozen=True)
class OppositeSearch:
    found: bool
    word: tuple[int, ...] = ()
    isomorphism: tuple[int, ...] = ()
    explored: int = 0


def opposite_mutation_equivalent(q: Quiver, node_cap: int = 20000, depth_cap: int = 64) -> OppositeSearch:
    """Search the labelled mutation class of ``Q`` for a copy of ``Q^op``.

    A negative answer only says that no witness lies within the caps.
    """
    qop = opposite(q)
    parent: dict[Quiver, tuple[Quiver, int] | None] = {q: None}
    level = [q]
    depth = 0
    while level:
        for r in level:
            iso = next(iter_isomorphisms(qop, r), None)
            if iso is not None:
                word = []
                cur = r
                while parent[cur] is not None:
                    cur, k = parent[cur]
                    word.append(k)
                return OppositeSearch(True, tuple(reversed(word)), iso, len(parent))
        if depth >= depth_cap:
            break
        nxt = []
        for r in level:
            for k in range(q.n):
                m = mutate_quiver(r, k)
                if m not in parent:
                    if len(parent) >= node_cap:
                        return OppositeSearch(False, explored=len(parent))
                    parent[m] = (r, k)
                    nxt.append(m)
        level = nxt
        depth += 1
    return OppositeSearch(False, explored=len(parent))
