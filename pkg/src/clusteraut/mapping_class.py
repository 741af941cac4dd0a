"""Mapping classes, marked mapping classes and their cluster automorphisms.

A mapping class ``f`` of a triangulated surface ``(T, base)`` is stored the same
way as a cluster automorphism: a flip word ``w`` and a slot bijection ``perm``
such that ``f`` carries the arc in slot ``i`` of ``T`` to the arc in slot
``perm[i]`` of ``flip_w(T)``, together with its action on marked points.
Such data is found by searching the flip graph for a triangulation
combinatorially isomorphic to ``T`` with a prescribed action on marked points.
The search deduplicates triangulations by a modular fingerprint of their
cluster, which is the true identity of a tagged triangulation; two
triangulations with the same combinatorics can carry different arcs.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .automorphisms import DIRECT, ClusterAutomorphism, compose, identity, invert, reduce_word
from .quiver import Quiver, mutate_quiver
from .seeds import ExchangeGraph, Unreachable
from .surface import (
    ClosedOncePunctured,
    ExcludedSurface,
    Triangulation,
    annulus_path,
    annulus_std,
    polygon_fan,
    punctured_disc_std,
    twice_punctured_disc_std,
)

__all__ = [
    "PRIME",
    "Fingerprinter",
    "MappingClass",
    "MarkedMappingClass",
    "SearchFailed",
    "search_flip_isomorphisms",
    "mcg_generators",
    "phi",
    "chi",
    "psi_z",
    "mmcg_product",
    "verify_presentation",
    "parse_relation",
    "presentation_G",
    "presentation_H",
    "twice_punctured_generators",
    "presentation_G_images",
    "automorphisms_equal",
    "rotation",
    "annulus_generators",
]

PRIME = (1 << 61) - 1
DEFAULT_SEED = 20240601


class SearchFailed(LookupError):
    pass


class Fingerprinter:
    """Evaluates cluster variables at a random point modulo a large prime."""

    def __init__(self, n: int, seed: int = DEFAULT_SEED, points: int = 2):
        rng = random.Random(seed)
        self.n = n
        self.points = [tuple(rng.randrange(2, PRIME - 1) for _ in range(n)) for _ in range(points)]

    def initial(self) -> list[tuple[int, ...]]:
        return [tuple(pt[i] for pt in self.points) for i in range(self.n)]

    @staticmethod
    def mutate(values: Sequence[tuple[int, ...]], b: Quiver, k: int) -> list[tuple[int, ...]]:
        row = b.b[k]
        new = []
        for t in range(len(values[0])):
            pos = neg = 1
            for j, e in enumerate(row):
                if e > 0:
                    pos = pos * pow(values[j][t], e, PRIME) % PRIME
                elif e < 0:
                    neg = neg * pow(values[j][t], -e, PRIME) % PRIME
            new.append((pos + neg) * pow(values[k][t], -1, PRIME) % PRIME)
        out = list(values)
        out[k] = tuple(new)
        return out

    def along(self, q: Quiver, word: Iterable[int]) -> list[tuple[int, ...]]:
        vals = self.initial()
        for k in word:
            vals = self.mutate(vals, q, k)
            q = mutate_quiver(q, k)
        return vals


def automorphism_fingerprint(f: ClusterAutomorphism, fp: Fingerprinter) -> tuple:
    vals = fp.along(f.quiver, f.word)
    return tuple(vals[p] for p in f.perm)


def automorphisms_equal(f: ClusterAutomorphism, g: ClusterAutomorphism, fp: Fingerprinter | None = None) -> bool:
    """Exact equality, with a cheap modular test to reject unequal pairs first."""
    if f.quiver != g.quiver:
        return False
    if f.word == g.word and f.perm == g.perm:
        return True
    fp = fp or Fingerprinter(f.n)
    if automorphism_fingerprint(f, fp) != automorphism_fingerprint(g, fp):
        return False
    return f.image_strings() == g.image_strings()


# ----------------------------------------------------------------------
# mapping classes


@dataclass(frozen=True)
class MappingClass:
    base: Triangulation = field(repr=False, compare=False)
    word: tuple[int, ...]
    perm: tuple[int, ...]
    vertex_map: tuple[tuple[str, str], ...]

    @classmethod
    def make(cls, base, word, perm, vertex_map: Mapping) -> "MappingClass":
        return cls(base, reduce_word(word), tuple(perm), tuple(sorted(vertex_map.items())))

    @classmethod
    def identity(cls, base: Triangulation) -> "MappingClass":
        return cls.make(base, (), range(base.n), {v: v for v in base.vertices()})

    def vmap(self) -> dict:
        return dict(self.vertex_map)

    def __call__(self, v):
        return self.vmap()[v]

    def __mul__(self, other: "MappingClass") -> "MappingClass":
        word = self.word + tuple(self.perm[k] for k in other.word)
        perm = tuple(self.perm[p] for p in other.perm)
        fm, gm = self.vmap(), other.vmap()
        return MappingClass.make(self.base, word, perm, {v: fm[gm[v]] for v in gm})

    def inverse(self) -> "MappingClass":
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        word = tuple(inv[k] for k in reversed(self.word))
        return MappingClass.make(self.base, word, inv, {b: a for a, b in self.vertex_map})

    def __pow__(self, k: int) -> "MappingClass":
        if k < 0:
            return self.inverse() ** (-k)
        out = MappingClass.identity(self.base)
        for _ in range(k):
            out = out * self
        return out

    def image_triangulation(self) -> Triangulation:
        t = self.base
        for k in self.word:
            t = t.flip(k)
        return t

    def verify(self) -> None:
        """Check that the stored data is a combinatorial isomorphism onto ``flip_w(T)``."""
        target = self.image_triangulation()
        for iso in self.base.isomorphisms(target, vertex_map=self.vmap()):
            if iso.slot_perm == self.perm:
                return
        raise ValueError("mapping-class data is not an isomorphism of triangulations")

    def same_as(self, other: "MappingClass", fp: Fingerprinter | None = None) -> bool:
        if self.vertex_map != other.vertex_map:
            return False
        return automorphisms_equal(phi(self), phi(other), fp)


def phi(mc: MappingClass, graph: ExchangeGraph | None = None) -> ClusterAutomorphism:
    """The direct cluster automorphism ``x_tau -> x_f(tau)``.

    With ``graph`` the image cluster must be one of its nodes.
    """
    return _reachable(ClusterAutomorphism(mc.base.b_matrix(), mc.word, mc.perm, DIRECT), graph)


def _reachable(f: ClusterAutomorphism, graph: ExchangeGraph | None) -> ClusterAutomorphism:
    if graph is not None and f.target_key not in graph.nodes:
        raise Unreachable("the image cluster is not in the explored exchange graph")
    return f


@dataclass(frozen=True)
class MarkedMappingClass:
    f: MappingClass
    punctures: frozenset = frozenset()

    def __mul__(self, other: "MarkedMappingClass") -> "MarkedMappingClass":
        return mmcg_product(self, other)

    def inverse(self) -> "MarkedMappingClass":
        finv = self.f.inverse()
        m = finv.vmap()
        return MarkedMappingClass(finv, frozenset(m[z] for z in self.punctures))

    def __pow__(self, k: int) -> "MarkedMappingClass":
        if k < 0:
            return self.inverse() ** (-k)
        out = MarkedMappingClass(MappingClass.identity(self.f.base))
        for _ in range(k):
            out = out * self
        return out

    def same_as(self, other: "MarkedMappingClass", fp: Fingerprinter | None = None) -> bool:
        return self.punctures == other.punctures and self.f.same_as(other.f, fp)


def mmcg_product(a: MarkedMappingClass, b: MarkedMappingClass) -> MarkedMappingClass:
    """``(f1 f2, P1 xor f1(P2))``."""
    m = a.f.vmap()
    return MarkedMappingClass(a.f * b.f, a.punctures ^ frozenset(m[z] for z in b.punctures))


# ----------------------------------------------------------------------
# flip-graph search


@dataclass
class SearchResult:
    depth: int
    found: list[tuple[tuple[int, ...], tuple[int, ...]]]
    explored: int


def search_flip_isomorphisms(
    base: Triangulation,
    vertex_map: Mapping,
    notched: Iterable = (),
    allowed: Iterable[int] | None = None,
    max_depth: int = 16,
    node_cap: int = 200000,
    seed: int = DEFAULT_SEED,
) -> SearchResult:
    """Shortest flip words ``w`` with an isomorphism ``base -> flip_w(base)``.

    The isomorphism must act on marked points by ``vertex_map`` and the target
    must be notched exactly at ``notched``.  All solutions at the minimal depth
    are returned as ``(word, slot_perm)`` pairs.
    """
    target_notched = frozenset(notched)
    allowed = sorted(set(range(base.n) if allowed is None else allowed))
    fp = Fingerprinter(base.n, seed)
    start = fp.initial()
    seen = {tuple(sorted(start))}
    level = [(base, base.b_matrix(), start, ())]
    explored = 1
    for depth in range(max_depth + 1):
        found = []
        for t, _, _, word in level:
            if t.notched != target_notched:
                continue
            plain = replace(t, notched=base.notched)
            for iso in base.isomorphisms(plain, vertex_map=vertex_map):
                found.append((word, iso.slot_perm))
        if found:
            return SearchResult(depth, sorted(set(found)), explored)
        if depth == max_depth:
            break
        nxt = []
        for t, b, vals, word in level:
            for k in allowed:
                if word and word[-1] == k:
                    continue
                v2 = Fingerprinter.mutate(vals, b, k)
                key = tuple(sorted(v2))
                if key in seen:
                    continue
                seen.add(key)
                explored += 1
                if explored > node_cap:
                    raise SearchFailed(f"flip search exceeded {node_cap} triangulations")
                t2 = t.flip(k)
                nxt.append((t2, mutate_quiver(b, k), v2, word + (k,)))
        level = nxt
        if not level:
            break
    raise SearchFailed(f"no isomorphic triangulation within {max_depth} flips")


def _shift_map(base: Triangulation, prefix: str, count: int, step: int, fixed: Mapping | None = None) -> dict:
    m = {f"{prefix}{i}": f"{prefix}{(i + step) % count}" for i in range(count)}
    if fixed:
        m.update(fixed)
    return m


def _first(base: Triangulation, vmap: Mapping, **kw) -> MappingClass:
    word, perm = search_flip_isomorphisms(base, vmap, **kw).found[0]
    return MappingClass.make(base, word, perm, vmap)


def _apply(t: Triangulation, word: Sequence[int]) -> Triangulation:
    for k in word:
        t = t.flip(k)
    return t


def rotation(base: Triangulation, boundary_points: int, step: int = 1, prefix: str = "V") -> MappingClass:
    fixed = {z: z for z in base.punctures}
    return _first(base, _shift_map(base, prefix, boundary_points, step, fixed))


# ----------------------------------------------------------------------
# annulus generators from lattice coordinates


def _lattice_norm(p: int, q: int, a: int, b: int) -> tuple[int, int]:
    k = -(a // p)
    return (a + k * p, b + k * q)


def _lattice_word(p: int, q: int, target: Mapping[int, tuple[int, int]]) -> list[int]:
    """Corner flips taking the standard path to the arc classes in ``target``.

    Returns a flip word in slot labels; ``target`` maps slot -> desired class of
    the image arc (only the set of classes matters for the search).
    """
    n = p + q
    start = tuple((k, pt) for k, pt in enumerate(annulus_path(p, q)))
    goal = frozenset(_lattice_norm(p, q, *c) for c in target.values())

    def classes(path):
        return frozenset(_lattice_norm(p, q, *pt) for _, pt in path)

    parent = {start: None}
    queue = deque([start])
    while queue:
        path = queue.popleft()
        if classes(path) == goal:
            word = []
            cur = path
            while parent[cur] is not None:
                cur, k = parent[cur]
                word.append(k)
            return word[::-1]
        for t in range(n):
            slot, pt = path[t]
            prev = path[t - 1][1] if t > 0 else (path[-1][1][0] - p, path[-1][1][1] - q)
            nxt = path[t + 1][1] if t + 1 < n else (path[0][1][0] + p, path[0][1][1] + q)
            d1 = (pt[0] - prev[0], pt[1] - prev[1])
            d2 = (nxt[0] - pt[0], nxt[1] - pt[1])
            if d1 == d2:
                continue
            new_pt = (prev[0] + d2[0], prev[1] + d2[1])
            new = list(path)
            new[t] = (slot, new_pt)
            new = tuple(new)
            # keep the path anchored: rotate so that the first entry has a in [0, p)
            if new not in parent:
                parent[new] = (path, slot)
                if len(parent) > 200000:
                    raise SearchFailed("lattice search too large")
                queue.append(new)
    raise SearchFailed("lattice target not reachable by corner flips")


def annulus_generators(p: int, q: int) -> dict[str, MappingClass]:
    """``r1`` shifts the outer boundary by one step, ``r2`` the inner one backwards.

    With these directions ``r1^p = r2^q`` (both are the Dehn twist about the core).
    For ``p == q`` the boundary swap ``(a, b) -> (-b, -a)`` is included.
    """
    base = annulus_std(p, q)
    path = annulus_path(p, q)
    maps = {
        "r1": (lambda a, b: (a + 1, b), {**{f"O{i}": f"O{(i + 1) % p}" for i in range(p)}, **{f"I{j}": f"I{j}" for j in range(q)}}),
        "r2": (lambda a, b: (a, b - 1), {**{f"O{i}": f"O{i}" for i in range(p)}, **{f"I{j}": f"I{(j - 1) % q}" for j in range(q)}}),
    }
    if p == q:
        maps["swap"] = (
            lambda a, b: (-b, -a),
            {**{f"O{i}": f"I{(-i) % q}" for i in range(p)}, **{f"I{j}": f"O{(-j) % p}" for j in range(q)}},
        )
    out = {}
    for name, (f, vmap) in maps.items():
        target = {k: f(*pt) for k, pt in enumerate(path)}
        word = _lattice_word(p, q, target)
        # slot of each image arc after replaying the corner flips
        final = _replay_lattice(p, q, word)
        where = {_lattice_norm(p, q, *pt): k for k, pt in final.items()}
        perm = tuple(where[_lattice_norm(p, q, *target[k])] for k in range(p + q))
        mc = MappingClass.make(base, word, perm, vmap)
        mc.verify()
        out[name] = mc
    return out


def _replay_lattice(p: int, q: int, word: Sequence[int]) -> dict[int, tuple[int, int]]:
    n = p + q
    path = [(k, pt) for k, pt in enumerate(annulus_path(p, q))]
    for slot in word:
        t = next(i for i, (s, _) in enumerate(path) if s == slot)
        pt = path[t][1]
        prev = path[t - 1][1] if t > 0 else (path[-1][1][0] - p, path[-1][1][1] - q)
        nxt = path[t + 1][1] if t + 1 < n else (path[0][1][0] + p, path[0][1][1] + q)
        path[t] = (slot, (prev[0] + nxt[0] - pt[0], prev[1] + nxt[1] - pt[1]))
    return {s: pt for s, pt in path}


# ----------------------------------------------------------------------
# tag changes


def psi_z(base: Triangulation, z, graph: ExchangeGraph | None = None, max_depth: int = 16) -> ClusterAutomorphism:
    """The direct cluster automorphism ``x_tau -> x_{tau^z}`` for a puncture ``z``.

    If ``z`` is enclosed by a self-folded triangle the loop and the radius
    swap places.  Otherwise the flip graph is searched for the triangulation
    notched at ``z`` with the identity action on marked points; this is only
    unambiguous when no nontrivial mapping class fixes every marked point,
    which holds for discs with at most one puncture.
    """
    if z not in base.punctures:
        raise ValueError(f"{z} is not a puncture")
    if base.is_closed_once_punctured():
        raise ClosedOncePunctured("tag change is undefined on a closed surface with one puncture")
    q = base.b_matrix()
    for loop, radius, pz in base.self_folded():
        if pz == z:
            perm = list(range(base.n))
            perm[loop], perm[radius] = radius, loop
            return _reachable(ClusterAutomorphism(q, (), tuple(perm), DIRECT), graph)
    surf = base.surface
    if surf is None or surf.family not in ("once-punctured disc",):
        raise ExcludedSurface("tag change by search is only supported on once-punctured discs")
    vmap = {v: v for v in base.vertices()}
    res = search_flip_isomorphisms(base, vmap, notched={z}, max_depth=max_depth)
    word, perm = res.found[0]
    return _reachable(ClusterAutomorphism(q, word, perm, DIRECT), graph)


def chi(mc: MarkedMappingClass, psis: Mapping | None = None, graph: ExchangeGraph | None = None) -> ClusterAutomorphism:
    """``(prod_{z in P} psi_z) o phi(f)``."""
    out = phi(mc.f)
    for z in sorted(mc.punctures, key=str):
        pz = psis[z] if psis and z in psis else psi_z(mc.f.base, z)
        out = compose(pz, out)
    return _reachable(out, graph)


# ----------------------------------------------------------------------
# named generators


def twice_punctured_generators(c: int) -> dict[str, MappingClass]:
    """Rotation ``r`` and half-twist ``s`` of the disc with ``c`` boundary points and two punctures.

    ``s`` swaps the punctures and fixes the boundary; it is found by flipping
    only inside the loop around both punctures.  Among rotations by one step,
    ``r`` is the one with ``r^c = s^2``.
    """
    base = twice_punctured_disc_std(c)
    l1, r1 = base.slot_named("L1"), base.slot_named("R1")
    fixed_b = {f"B{i}": f"B{i}" for i in range(c)}
    s = _first(base, {**fixed_b, "z1": "z2", "z2": "z1"}, allowed={l1, r1})
    rot = _first(base, {**{f"B{i}": f"B{(i + 1) % c}" for i in range(c)}, "z1": "z1", "z2": "z2"})
    s2 = s * s
    fp = Fingerprinter(base.n)
    for j in (0, -1, 1, -2, 2):
        cand = rot * (s2 ** j if j >= 0 else s2.inverse() ** (-j))
        if (cand**c).same_as(s2, fp):
            return {"r": cand, "s": s}
    raise SearchFailed("no rotation r with r^c = s^2 among the candidates")


def mcg_generators(base: Triangulation) -> dict[str, MappingClass]:
    surf = base.surface
    if surf is None:
        raise ExcludedSurface("triangulation carries no surface data")
    fam = surf.family
    if fam == "polygon":
        return {"rho": rotation(base, surf.boundary[0], 1, "V")}
    if fam == "once-punctured disc":
        return {"rho": rotation(base, surf.boundary[0], 1, "B")}
    if fam == "twice-punctured disc":
        return twice_punctured_generators(surf.boundary[0])
    if fam == "annulus":
        return annulus_generators(*surf.boundary)
    raise ExcludedSurface(f"no generator inventory for the {fam} family")


# ----------------------------------------------------------------------
# presentations


def parse_relation(text: str) -> tuple[list[tuple[str, int]], list[tuple[str, int]]]:
    """``"a*b^2 = b*a"`` -> ([(a,1),(b,2)], [(b,1),(a,1)]); ``1`` is the identity."""
    if "=" not in text:
        raise ValueError(f"relation {text!r} has no '='")
    lhs, rhs = text.split("=", 1)

    def side(s):
        out = []
        for tok in s.replace(" ", "").split("*"):
            if not tok or tok == "1":
                continue
            if "^" in tok:
                name, e = tok.split("^", 1)
                out.append((name, int(e)))
            else:
                out.append((tok, 1))
        return out

    return side(lhs), side(rhs)


def _evaluate(word, gens: Mapping[str, ClusterAutomorphism], q: Quiver) -> ClusterAutomorphism:
    out = identity(q)
    for name, e in word:
        if name not in gens:
            raise KeyError(f"unknown generator {name!r}")
        g = gens[name] if e >= 0 else invert(gens[name])
        for _ in range(abs(e)):
            out = compose(out, g)
    return out


@dataclass
class RelationCheck:
    relation: str
    holds: bool


def verify_presentation(gens: Mapping[str, ClusterAutomorphism], relations: Sequence[str]) -> list[RelationCheck]:
    """Evaluate each relation by composing automorphisms and comparing image lists exactly."""
    if not relations:
        return []
    q = next(iter(gens.values())).quiver
    fp = Fingerprinter(q.n)
    out = []
    for rel in relations:
        lhs, rhs = parse_relation(rel)
        a, b = _evaluate(lhs, gens, q), _evaluate(rhs, gens, q)
        out.append(RelationCheck(rel, automorphisms_equal(a, b, fp)))
    return out


def presentation_G(n: int) -> list[str]:
    return [
        "rho1^2 = 1",
        "rhon^2 = 1",
        "tau*rho1 = rho1*tau",
        "tau*rhon = rhon*tau",
        "tau*sigma = sigma*tau",
        f"sigma^2 = tau^{n - 3}",
        "rho1*sigma = sigma*rhon",
        "sigma*rho1 = rhon*sigma",
    ]


def presentation_H(p: int, q: int) -> list[str]:
    return ["r1*r2 = r2*r1", f"r1^{p} = r2^{q}"]


def presentation_G_images(c: int) -> tuple[dict[str, ClusterAutomorphism], dict[str, MarkedMappingClass]]:
    """Cluster automorphisms ``chi`` of the marked mapping classes assigned to the generators of G.

    ``n = c + 3``; ``sigma`` goes to ``(s, {})`` for odd ``n`` and ``(s, {z1})`` for even ``n``.
    """
    n = c + 3
    g = twice_punctured_generators(c)
    base = g["r"].base
    one = MappingClass.identity(base)
    marked = {
        "tau": MarkedMappingClass(g["r"], frozenset({"z1", "z2"})),
        "sigma": MarkedMappingClass(g["s"], frozenset() if n % 2 else frozenset({"z1"})),
        "rho1": MarkedMappingClass(one, frozenset({"z1"})),
        "rhon": MarkedMappingClass(one, frozenset({"z2"})),
    }
    psis = {z: psi_z(base, z) for z in ("z1", "z2")}
    return {k: chi(v, psis) for k, v in marked.items()}, marked
