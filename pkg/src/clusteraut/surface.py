"""Marked surfaces, ideal and tagged triangulations, flips and signed adjacency matrices.

A triangulation is stored abstractly as a list of triangles.  Each triangle
lists its three sides in clockwise order; a side is either an arc slot
(``int`` in ``0..n-1``) or a boundary segment (``str``).  ``corners[i]`` is the
vertex where side ``i`` starts when the triangle is walked clockwise.  Two
sides sharing a slot are glued, so the surface is implicit in the list.

Tagged triangulations are kept in a normal form: an ideal triangulation plus
the set ``notched`` of punctures at which every arc end is notched.  A
puncture enclosed by a self-folded triangle is never in ``notched``: toggling
it instead swaps the slots of the loop and the radius, because the loop
corresponds to the radius notched at the puncture.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from .quiver import Quiver

__all__ = [
    "MarkedSurface",
    "ExcludedSurface",
    "NotFlippable",
    "ClosedOncePunctured",
    "InvalidTriangulation",
    "Triangle",
    "Triangulation",
    "TriangulationIso",
    "make_surface",
    "b_matrix",
    "flip",
    "tag_toggle",
    "polygon_fan",
    "punctured_disc_std",
    "twice_punctured_disc_std",
    "annulus_std",
    "annulus_path",
    "figure2_left",
    "figure2_right",
    "once_punctured_torus",
    "TaggedArc",
    "iota",
    "compatible",
    "disc_tagged_arcs",
    "coordinate_flip",
    "polygon_triangulation_count",
]


class ExcludedSurface(ValueError):
    pass


class NotFlippable(ValueError):
    pass


class ClosedOncePunctured(ValueError):
    pass


class InvalidTriangulation(ValueError):
    pass


# ----------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class MarkedSurface:
    genus: int
    boundary: tuple[int, ...]
    punctures: int

    @property
    def rank(self) -> int:
        return 6 * self.genus + 3 * len(self.boundary) + 3 * self.punctures + sum(self.boundary) - 6

    @property
    def family(self) -> str:
        g, b, p = self.genus, len(self.boundary), self.punctures
        if g == 0 and b == 1 and p == 0:
            return "polygon"
        if g == 0 and b == 1 and p == 1:
            return "once-punctured disc"
        if g == 0 and b == 1 and p == 2:
            return "twice-punctured disc"
        if g == 0 and b == 2 and p == 0:
            return "annulus"
        return "other"


def make_surface(genus: int, boundary: Sequence[int], punctures: int) -> MarkedSurface:
    boundary = tuple(boundary)
    if genus < 0 or punctures < 0 or any(c < 1 for c in boundary):
        raise ExcludedSurface("negative genus or puncture count, or an unmarked boundary component")
    if genus == 0 and not boundary and punctures <= 3:
        raise ExcludedSurface(f"sphere with {punctures} punctures is excluded")
    if genus == 0 and len(boundary) == 1 and punctures == 0 and boundary[0] <= 3:
        raise ExcludedSurface(f"disc with {boundary[0]} marked points has no arcs")
    if genus == 0 and len(boundary) == 1 and punctures == 1 and boundary[0] == 1:
        raise ExcludedSurface("once-punctured disc with one marked point is excluded")
    s = MarkedSurface(genus, boundary, punctures)
    if s.rank < 1:
        raise ExcludedSurface("surface has no arcs")
    return s


# ----------------------------------------------------------------------
# triangles and triangulations


@dataclass(frozen=True)
class Triangle:
    sides: tuple
    corners: tuple

    def rotated(self, r: int) -> "Triangle":
        return Triangle(self.sides[r:] + self.sides[:r], self.corners[r:] + self.corners[:r])

    def is_self_folded(self) -> bool:
        s = self.sides
        return s[0] == s[1] or s[1] == s[2] or s[0] == s[2]

    def relabel(self, mapping: Mapping) -> "Triangle":
        return Triangle(tuple(mapping.get(x, x) for x in self.sides), self.corners)


def _ccw(vertices: Sequence[str], sides: Sequence) -> Triangle:
    """Triangle given counterclockwise: side ``i`` runs from ``vertices[i]`` to ``vertices[i+1]``."""
    v0, v1, v2 = vertices
    s0, s1, s2 = sides
    return Triangle((s2, s1, s0), (v0, v2, v1))


@dataclass(frozen=True)
class TriangulationIso:
    slot_perm: tuple[int, ...]
    vertex_map: dict
    boundary_map: dict


@dataclass(frozen=True)
class Triangulation:
    n: int
    triangles: tuple[Triangle, ...]
    punctures: frozenset
    notched: frozenset = frozenset()
    names: tuple[str, ...] | None = None
    surface: MarkedSurface | None = field(default=None, compare=False)

    # structure -----------------------------------------------------
    def occurrences(self, slot: int) -> list[tuple[int, int]]:
        return [(t, i) for t, tri in enumerate(self.triangles) for i, s in enumerate(tri.sides) if s == slot]

    def vertices(self) -> set:
        return {v for tri in self.triangles for v in tri.corners}

    def boundary_segments(self) -> list[str]:
        return sorted(s for tri in self.triangles for s in tri.sides if isinstance(s, str))

    def self_folded(self) -> list[tuple[int, int, object]]:
        """``(loop, radius, puncture)`` for every self-folded triangle."""
        out = []
        for tri in self.triangles:
            s = tri.sides
            for i in range(3):
                if s[i] == s[(i + 1) % 3]:
                    radius = s[i]
                    loop = s[(i + 2) % 3]
                    out.append((loop, radius, tri.corners[(i + 1) % 3]))
                    break
        return out

    def radius_loop(self) -> dict[int, int]:
        return {r: l for l, r, _ in self.self_folded()}

    def is_closed_once_punctured(self) -> bool:
        return not self.boundary_segments() and len(self.punctures) == 1

    def label(self, slot: int) -> str:
        return self.names[slot] if self.names else str(slot + 1)

    def slot_named(self, name: str) -> int:
        if self.names and name in self.names:
            return self.names.index(name)
        return int(name) - 1

    def validate(self) -> None:
        count: dict = {}
        for t, tri in enumerate(self.triangles):
            if len(tri.sides) != 3 or len(tri.corners) != 3:
                raise InvalidTriangulation(f"triangle {t} does not have three sides")
            for i, s in enumerate(tri.sides):
                if isinstance(s, int) and not 0 <= s < self.n:
                    raise InvalidTriangulation(f"arc slot {s} out of range")
                count.setdefault(s, []).append((tri.corners[i], tri.corners[(i + 1) % 3]))
        for s, ends in count.items():
            if isinstance(s, str):
                if len(ends) != 1:
                    raise InvalidTriangulation(f"boundary segment {s} used {len(ends)} times")
            else:
                if len(ends) != 2:
                    raise InvalidTriangulation(f"arc {self.label(s)} used {len(ends)} times")
                (a, b), (c, d) = ends
                if (a, b) != (d, c):
                    raise InvalidTriangulation(f"arc {self.label(s)} is glued with inconsistent orientation")
        missing = [s for s in range(self.n) if s not in count]
        if missing:
            raise InvalidTriangulation(f"arcs {missing} lie in no triangle")
        for v in self.notched:
            if v not in self.punctures:
                raise InvalidTriangulation(f"notched vertex {v} is not a puncture")

    # adjacency matrix -------------------------------------------------
    def b_matrix(self) -> Quiver:
        n = self.n
        pi = self.radius_loop()
        c = [[0] * n for _ in range(n)]
        for tri in self.triangles:
            if tri.is_self_folded():
                continue
            s = tri.sides
            for i in range(3):
                a, b = s[i], s[(i + 1) % 3]
                if isinstance(a, int) and isinstance(b, int):
                    c[a][b] += 1
                    c[b][a] -= 1
        m = [[c[pi.get(i, i)][pi.get(j, j)] for j in range(n)] for i in range(n)]
        for i in range(n):
            m[i][i] = 0
        return Quiver(tuple(map(tuple, m)))

    # flips -----------------------------------------------------------
    def ideal_flip(self, k: int) -> "Triangulation":
        if k in self.radius_loop():
            raise NotFlippable(f"arc {self.label(k)} is the radius of a self-folded triangle")
        occ = self.occurrences(k)
        if len(occ) != 2 or occ[0][0] == occ[1][0]:
            raise NotFlippable(f"arc {self.label(k)} does not separate two triangles")
        (t1, i1), (t2, i2) = occ
        a = self.triangles[t1].rotated(i1)
        b = self.triangles[t2].rotated(i2)
        _, sa, sb = a.sides
        p, q, r = a.corners
        _, sc, sd = b.sides
        q2, p2, s = b.corners
        if (p2, q2) != (p, q):
            raise InvalidTriangulation("triangles around the flipped arc disagree on its ends")
        new1 = Triangle((k, sb, sc), (s, r, p))
        new2 = Triangle((k, sd, sa), (r, s, q))
        tris = list(self.triangles)
        tris[t1], tris[t2] = new1, new2
        return replace(self, triangles=tuple(tris))

    def swap_slots(self, a: int, b: int) -> "Triangulation":
        m = {a: b, b: a}
        return replace(self, triangles=tuple(t.relabel(m) for t in self.triangles))

    def normalized(self) -> "Triangulation":
        t = self
        while True:
            sf = {z: (l, r) for l, r, z in t.self_folded()}
            hit = [z for z in sorted(t.notched, key=str) if z in sf]
            if not hit:
                return t
            z = hit[0]
            l, r = sf[z]
            t = replace(t.swap_slots(l, r), notched=t.notched - {z})

    def flip(self, k: int) -> "Triangulation":
        """Tagged flip of slot ``k``; every slot is flippable."""
        if not 0 <= k < self.n:
            raise IndexError(f"arc slot {k + 1} out of range")
        radii = {r: (l, z) for l, r, z in self.self_folded()}
        if k in radii:
            if self.is_closed_once_punctured():
                raise NotFlippable("radius of a closed once-punctured surface")
            l, z = radii[k]
            t = self.swap_slots(l, k).ideal_flip(k)
            return replace(t, notched=t.notched ^ {z}).normalized()
        return self.ideal_flip(k).normalized()

    def tag_toggle(self, z) -> "Triangulation":
        if z not in self.punctures:
            raise ValueError(f"{z} is not a puncture")
        if self.is_closed_once_punctured():
            raise ClosedOncePunctured("tag change is undefined on a closed surface with one puncture")
        return replace(self, notched=self.notched ^ {z}).normalized()

    # comparison ------------------------------------------------------
    def canonical(self) -> tuple:
        tris = []
        for tri in self.triangles:
            best = min(
                (tuple(map(str, tri.rotated(r).sides)), tuple(map(str, tri.rotated(r).corners))) for r in range(3)
            )
            tris.append(best)
        return (self.n, tuple(sorted(tris)), tuple(sorted(map(str, self.notched))))

    def same_as(self, other: "Triangulation") -> bool:
        return self.canonical() == other.canonical()

    def isomorphisms(
        self,
        other: "Triangulation",
        vertex_map: Mapping | None = None,
        boundary_map: Mapping | None = None,
    ) -> Iterator[TriangulationIso]:
        """Orientation-preserving combinatorial isomorphisms ``self -> other``."""
        if self.n != other.n or len(self.triangles) != len(other.triangles):
            return
        if not self.triangles:
            return
        occ_self = _partner_table(self)
        occ_other = _partner_table(other)
        for t2 in range(len(other.triangles)):
            for rot in range(3):
                iso = _propagate(self, other, occ_self, occ_other, t2, rot, vertex_map, boundary_map)
                if iso is not None:
                    yield iso

    def find_isomorphism(self, other, vertex_map=None, boundary_map=None) -> TriangulationIso | None:
        return next(self.isomorphisms(other, vertex_map, boundary_map), None)

    # serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "names": list(self.names) if self.names else None,
            "punctures": sorted(map(str, self.punctures)),
            "notched": sorted(map(str, self.notched)),
            "triangles": [
                {"sides": [s + 1 if isinstance(s, int) else s for s in t.sides], "corners": list(t.corners)}
                for t in self.triangles
            ],
            "self_folded": [[l + 1, r + 1] for l, r, _ in self.self_folded()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Triangulation":
        tris = []
        for t in data["triangles"]:
            if isinstance(t, dict):
                sides, corners = t["sides"], t.get("corners")
            else:
                sides, corners = t, None
            if corners is None:
                corners = ["v", "v", "v"]
            tris.append(Triangle(tuple(s - 1 if isinstance(s, int) else s for s in sides), tuple(corners)))
        n = data.get("n") or 1 + max(s for t in tris for s in t.sides if isinstance(s, int))
        names = tuple(data["names"]) if data.get("names") else None
        tri = cls(n, tuple(tris), frozenset(data.get("punctures", [])), frozenset(data.get("notched", [])), names)
        tri.validate()
        return tri

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _partner_table(t: Triangulation) -> dict[tuple[int, int], tuple[int, int]]:
    """Occurrence ``(triangle, side)`` of an arc -> the other occurrence of that arc."""
    where: dict[int, list] = {}
    for ti, tri in enumerate(t.triangles):
        for i, s in enumerate(tri.sides):
            if isinstance(s, int):
                where.setdefault(s, []).append((ti, i))
    out = {}
    for occ in where.values():
        if len(occ) == 2:
            out[occ[0]] = occ[1]
            out[occ[1]] = occ[0]
    return out


def _propagate(a, b, pa, pb, t2, rot, vmap, bmap):
    tmap = {0: (t2, rot)}
    stack = [0]
    slot: dict[int, int] = {}
    vert: dict = {}
    bnd: dict = {}

    def bind(d, x, y):
        if x in d:
            return d[x] == y
        d[x] = y
        return True

    while stack:
        ta = stack.pop()
        tb, r = tmap[ta]
        A, B = a.triangles[ta], b.triangles[tb]
        for i in range(3):
            j = (i + r) % 3
            sa, sb = A.sides[i], B.sides[j]
            if isinstance(sa, int) != isinstance(sb, int):
                return None
            ca, cb = A.corners[i], B.corners[j]
            if (ca in a.punctures) != (cb in b.punctures):
                return None
            if vmap is not None and ca in vmap and vmap[ca] != cb:
                return None
            if not bind(vert, ca, cb):
                return None
            if isinstance(sa, int):
                if not bind(slot, sa, sb):
                    return None
                oa = pa[(ta, i)]
                ob = pb[(tb, j)]
                # the glued neighbour must be matched with the same rotation offset
                nr = (ob[1] - oa[1]) % 3
                if oa[0] in tmap:
                    if tmap[oa[0]] != (ob[0], nr):
                        return None
                else:
                    tmap[oa[0]] = (ob[0], nr)
                    stack.append(oa[0])
            else:
                if bmap is not None and sa in bmap and bmap[sa] != sb:
                    return None
                if not bind(bnd, sa, sb):
                    return None
    if len(tmap) != len(a.triangles) or len({v for v in tmap.values()}) != len(b.triangles):
        return None
    if len(set(slot.values())) != a.n or len(slot) != a.n:
        return None
    if len(set(vert.values())) != len(vert):
        return None
    if {vert[z] for z in a.notched if z in vert} != set(b.notched):
        return None
    return TriangulationIso(tuple(slot[i] for i in range(a.n)), vert, bnd)


def b_matrix(t: Triangulation) -> Quiver:
    return t.b_matrix()


def flip(t: Triangulation, k: int) -> Triangulation:
    return t.flip(k)


def tag_toggle(t: Triangulation, z) -> Triangulation:
    return t.tag_toggle(z)


# ----------------------------------------------------------------------
# constructors


def polygon_fan(m: int) -> Triangulation:
    """Fan of chords from vertex ``V0`` in an ``m``-gon with vertices ``V0..V{m-1}`` counterclockwise."""
    if m < 4:
        raise ExcludedSurface("a polygon needs at least four vertices")
    v = [f"V{i}" for i in range(m)]
    chord = {j: j - 2 for j in range(2, m - 1)}
    tris = []
    for j in range(1, m - 1):
        s0 = "s0" if j == 1 else chord[j]
        s2 = f"s{m - 1}" if j + 1 == m - 1 else chord[j + 1]
        tris.append(_ccw((v[0], v[j], v[j + 1]), (s0, f"s{j}", s2)))
    names = tuple(f"(1,{j + 1})" for j in range(2, m - 1))
    return Triangulation(m - 3, tuple(tris), frozenset(), names=names, surface=make_surface(0, [m], 0))


def punctured_disc_std(c: int, punctures: int = 1) -> Triangulation:
    """Once-punctured disc with ``c`` boundary points: fan from ``B0`` plus two radii.

    The puncture ``z`` sits next to the segment from ``B{c-1}`` to ``B0``.
    """
    if punctures == 2:
        return twice_punctured_disc_std(c)
    if punctures != 1:
        raise ValueError("only one or two punctures are supported")
    if c < 3:
        raise ExcludedSurface("use at least three boundary points")
    b = [f"B{i}" for i in range(c)]
    chord = {j: j - 2 for j in range(2, c)}
    r0, rl = c - 2, c - 1
    tris = []
    for j in range(1, c - 1):
        s0 = "s0" if j == 1 else chord[j]
        tris.append(_ccw((b[0], b[j], b[j + 1]), (s0, f"s{j}", chord[j + 1])))
    tris.append(_ccw((b[c - 1], b[0], "z"), (f"s{c - 1}", r0, rl)))
    tris.append(_ccw((b[0], b[c - 1], "z"), (chord[c - 1], rl, r0)))
    names = tuple([f"(1,{j + 1})" for j in range(2, c)] + ["r1", f"r{c}"])
    return Triangulation(c, tuple(tris), frozenset({"z"}), names=names, surface=make_surface(0, [c], 1))


def twice_punctured_disc_std(c: int) -> Triangulation:
    """Disc with ``c`` boundary points and punctures ``z1``, ``z2``.

    Fan from ``B0``, a loop ``g`` at ``B0`` around both punctures, loops ``L1``,
    ``L2`` at ``B0`` around one puncture each, and radii ``R1``, ``R2``.
    """
    if c < 3:
        raise ExcludedSurface("use at least three boundary points")
    b = [f"B{i}" for i in range(c)]
    chord = {j: j - 2 for j in range(2, c)}
    g, l1, l2, r1, r2 = c - 2, c - 1, c, c + 1, c + 2
    tris = []
    for j in range(1, c - 1):
        s0 = "s0" if j == 1 else chord[j]
        tris.append(_ccw((b[0], b[j], b[j + 1]), (s0, f"s{j}", chord[j + 1])))
    tris.append(_ccw((b[c - 1], b[0], b[0]), (f"s{c - 1}", g, chord[c - 1])))
    tris.append(_ccw((b[0], b[0], b[0]), (g, l2, l1)))
    tris.append(_ccw((b[0], b[0], "z1"), (l1, r1, r1)))
    tris.append(_ccw((b[0], b[0], "z2"), (l2, r2, r2)))
    names = tuple([f"(1,{j + 1})" for j in range(2, c)] + ["g", "L1", "L2", "R1", "R2"])
    return Triangulation(
        c + 3, tuple(tris), frozenset({"z1", "z2"}), names=names, surface=make_surface(0, [c], 2)
    )


def annulus_path(p: int, q: int) -> list[tuple[int, int]]:
    """Lattice coordinates ``(a, b)`` of the bridging arcs of ``annulus_std(p, q)``.

    ``(a, b)`` joins outer point ``a mod p`` to inner point ``b mod q``; in the
    universal cover ``(a, b)`` and ``(a + p, b + q)`` are the same arc.
    """
    return [(a, 0) for a in range(p)] + [(p, b) for b in range(q)]


def _annulus_from_path(p: int, q: int, path: Sequence[tuple[int, int]]) -> Triangulation:
    n = p + q
    tris = []
    for k in range(n):
        a, b = path[k]
        a2, b2 = path[k + 1] if k + 1 < n else (path[0][0] + p, path[0][1] + q)
        nxt = (k + 1) % n
        if (a2, b2) == (a + 1, b):
            tris.append(Triangle((f"o{a % p}", nxt, k), (f"O{a % p}", f"O{(a + 1) % p}", f"I{b % q}")))
        elif (a2, b2) == (a, b + 1):
            tris.append(Triangle((nxt, f"i{b % q}", k), (f"O{a % p}", f"I{(b + 1) % q}", f"I{b % q}")))
        else:
            raise InvalidTriangulation("lattice path must move one step at a time")
    names = tuple(f"({a},{b})" for a, b in path)
    return Triangulation(n, tuple(tris), frozenset(), names=names, surface=make_surface(0, [p, q], 0))


def annulus_std(p: int, q: int) -> Triangulation:
    """Annulus with ``p`` outer and ``q`` inner points, triangulated by bridging arcs."""
    if p < 1 or q < 1:
        raise ExcludedSurface("both boundary components need a marked point")
    return _annulus_from_path(p, q, annulus_path(p, q))


def figure2_right() -> Triangulation:
    """Punctured annulus with one self-folded triangle formed by arcs 6 (loop) and 1 (radius).

    Outer boundary points ``P`` and ``a2``, inner boundary point ``w``, puncture ``z``.
    """
    s = {str(i): i - 1 for i in range(1, 7)}
    tris = (
        Triangle((s["6"], s["1"], s["1"]), ("P", "P", "z")),
        Triangle((s["6"], s["2"], "b1"), ("P", "P", "a2")),
        Triangle((s["2"], s["3"], s["5"]), ("a2", "P", "w")),
        Triangle((s["3"], s["4"], "b2"), ("w", "P", "w")),
        Triangle((s["5"], s["4"], "b3"), ("a2", "w", "P")),
    )
    return Triangulation(
        6, tris, frozenset({"z"}), names=tuple(map(str, range(1, 7))), surface=make_surface(0, [2, 1], 1)
    )


def figure2_left() -> Triangulation:
    """The triangulation obtained from ``figure2_right`` by replacing the loop 6."""
    s = {str(i): i - 1 for i in range(1, 7)}
    tris = (
        Triangle((s["6"], s["1"], s["2"]), ("a2", "z", "P")),
        Triangle((s["6"], "b1", s["1"]), ("z", "a2", "P")),
        Triangle((s["2"], s["3"], s["5"]), ("a2", "P", "w")),
        Triangle((s["3"], s["4"], "b2"), ("w", "P", "w")),
        Triangle((s["5"], s["4"], "b3"), ("a2", "w", "P")),
    )
    return Triangulation(
        6, tris, frozenset({"z"}), names=tuple(map(str, range(1, 7))), surface=make_surface(0, [2, 1], 1)
    )


def once_punctured_torus() -> Triangulation:
    """Two triangles with sides 1, 3, 2 in clockwise order, glued along all three arcs."""
    tris = (Triangle((0, 2, 1), ("z", "z", "z")), Triangle((0, 2, 1), ("z", "z", "z")))
    return Triangulation(3, tris, frozenset({"z"}), names=("1", "2", "3"), surface=make_surface(1, [], 1))


# ----------------------------------------------------------------------
# explicit tagged arcs in a disc with at most one puncture


@dataclass(frozen=True, order=True)
class TaggedArc:
    """Arc in a disc with boundary points ``0..c-1`` (counterclockwise) and at most one puncture.

    ``kind == "chord"``: the arc from ``i`` to ``j`` that cuts off the points
    ``i, i+1, ..., j`` on the side without the puncture.  ``kind == "radius"``:
    the arc from ``i`` to the puncture, with ``notched`` giving the tag there.
    ``kind == "loop"``: the loop at ``i`` cutting out a once-punctured monogon.
    Boundary ends are always plain.
    """

    kind: str
    i: int
    j: int = -1
    notched: bool = False


def iota(arc: TaggedArc) -> TaggedArc:
    """Plain arcs stay; a loop around the puncture becomes the radius notched at the puncture."""
    if arc.kind == "loop":
        return TaggedArc("radius", arc.i, -1, True)
    return arc


def _inside(c: int, i: int, j: int, k: int) -> bool:
    """Whether ``k`` lies strictly between ``i`` and ``j`` going counterclockwise."""
    return 0 < (k - i) % c < (j - i) % c


def _segments(c: int, a: TaggedArc) -> set:
    """Boundary segments ``t -> t+1`` cut off by a chord, on its puncture-free side."""
    return {(a.i + t) % c for t in range((a.j - a.i) % c)}


def _chords_cross(c: int, a: TaggedArc, b: TaggedArc) -> bool:
    i, j, k, l = a.i, a.j, b.i, b.j
    if len({i, j, k, l}) < 4:
        return False
    return _inside(c, i, j, k) != _inside(c, i, j, l)


def compatible(a: TaggedArc, b: TaggedArc, c: int, punctured: bool = True) -> bool:
    """Compatibility of two tagged arcs in a disc with ``c`` boundary points."""
    a, b = iota(a), iota(b)
    if a == b:
        return True
    if a.kind == "chord" and b.kind == "chord":
        if not punctured:
            return not _chords_cross(c, a, b)
        sa, sb = _segments(c, a), _segments(c, b)
        return sa <= sb or sb <= sa or not (sa & sb)
    if a.kind == "radius" and b.kind == "radius":
        if a.i == b.i:
            return True
        return a.notched == b.notched
    chord, rad = (a, b) if a.kind == "chord" else (b, a)
    if not punctured:
        raise ValueError("radii need a puncture")
    return not _inside(c, chord.i, chord.j, rad.i)


def disc_tagged_arcs(c: int, punctured: bool = True) -> list[TaggedArc]:
    """All tagged arcs of a ``c``-gon, with or without one puncture."""
    out = []
    for i in range(c):
        for d in range(2, c if punctured else c - 1):
            out.append(TaggedArc("chord", i, (i + d) % c))
    if not punctured:
        return sorted({a if a.i < a.j else TaggedArc("chord", a.j, a.i) for a in out})
    if punctured:
        for i in range(c):
            out.append(TaggedArc("radius", i, -1, False))
            out.append(TaggedArc("radius", i, -1, True))
    return sorted(out)


def coordinate_flip(arcs: Sequence[TaggedArc], k: int, c: int, punctured: bool = True) -> list[TaggedArc]:
    """Replace ``arcs[k]`` by the unique other tagged arc compatible with the rest."""
    rest = [a for t, a in enumerate(arcs) if t != k]
    cands = [
        x
        for x in disc_tagged_arcs(c, punctured)
        if x != arcs[k] and x not in rest and all(compatible(x, y, c, punctured) for y in rest)
    ]
    if len(cands) != 1:
        raise NotFlippable(f"found {len(cands)} replacement arcs")
    out = list(arcs)
    out[k] = cands[0]
    return out


def polygon_triangulation_count(m: int) -> int:
    """Number of triangulations of a convex ``m``-gon, by the standard recursion."""
    t = [1, 1]
    for k in range(2, m - 1):
        t.append(sum(t[i] * t[k - 1 - i] for i in range(k)))
    return t[m - 2]
