"""Small finite groups given by Cayley tables, and identification by brute force."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import product
from typing import Sequence

__all__ = [
    "FiniteGroup",
    "GroupTooLarge",
    "cyclic",
    "dihedral",
    "symmetric3",
    "direct_product",
    "are_isomorphic",
    "identify_group",
    "semidirect_check",
    "StructureReport",
    "SplitReport",
]

DEFAULT_ORDER_BOUND = 200


class GroupTooLarge(ValueError):
    pass


class FiniteGroup:
    """Group on ``0..m-1`` with ``table[a][b] = a*b``."""

    def __init__(self, table: Sequence[Sequence[int]]):
        self.table = [list(r) for r in table]
        m = len(self.table)
        if m == 0:
            raise ValueError("empty group")
        ids = [e for e in range(m) if all(self.table[e][x] == x and self.table[x][e] == x for x in range(m))]
        if len(ids) != 1:
            raise ValueError("table has no two-sided identity")
        self.identity = ids[0]
        self._inv = None
        self._orders = None

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        if self._inv is None:
            e = self.identity
            self._inv = [next(b for b in range(self.order) if self.table[a2][b] == e) for a2 in range(self.order)]
        return self._inv[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def element_orders(self) -> list[int]:
        if self._orders is None:
            self._orders = [self.element_order(a) for a in range(self.order)]
        return self._orders

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def center(self) -> list[int]:
        t = self.table
        return [a for a in range(self.order) if all(t[a][b] == t[b][a] for b in range(self.order))]

    def check_axioms(self) -> None:
        m, t = self.order, self.table
        for row in t:
            if sorted(row) != list(range(m)):
                raise ValueError("table rows are not permutations")
        for a, b, c in product(range(m), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError("multiplication is not associative")

    def generated(self, gens: Sequence[int]) -> list[int]:
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def subgroup(self, elems: Sequence[int]) -> "FiniteGroup":
        elems = list(elems)
        pos = {e: i for i, e in enumerate(elems)}
        try:
            return FiniteGroup([[pos[self.table[a][b]] for b in elems] for a in elems])
        except KeyError:
            raise ValueError("elements are not closed under multiplication") from None

    def is_normal(self, elems: Sequence[int]) -> bool:
        s = set(elems)
        t = self.table
        return all(t[t[g][h]][self.inverse(g)] in s for g in range(self.order) for h in s)

    def small_generating_set(self) -> list[int]:
        """Greedy generators, preferring elements of large order."""
        order = sorted(range(self.order), key=lambda a: (-self.element_orders()[a], a))
        gens: list[int] = []
        span = {self.identity}
        for a in order:
            if a not in span:
                gens.append(a)
                span = set(self.generated(gens))
            if len(span) == self.order:
                break
        return gens


def cyclic(m: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % m for b in range(m)] for a in range(m)])


def dihedral(m: int) -> FiniteGroup:
    """Symmetries of a regular m-gon, order ``2m``; element ``(s, k)`` is ``r^k s^s``."""
    elems = [(s, k) for s in (0, 1) for k in range(m)]
    idx = {e: i for i, e in enumerate(elems)}

    def mul(x, y):
        s1, k1 = x
        s2, k2 = y
        k = (k1 + (k2 if s1 == 0 else -k2)) % m
        return (s1 ^ s2, k)

    return FiniteGroup([[idx[mul(x, y)] for y in elems] for x in elems])


def symmetric3() -> FiniteGroup:
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]
    idx = {p: i for i, p in enumerate(perms)}
    return FiniteGroup([[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms])


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    m = h.order
    return FiniteGroup(
        [
            [g.table[a // m][b // m] * m + h.table[a % m][b % m] for b in range(g.order * m)]
            for a in range(g.order * m)
        ]
    )


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return find_isomorphism(g, h) is not None


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> list[int] | None:
    if g.order != h.order:
        return None
    if sorted(g.element_orders()) != sorted(h.element_orders()):
        return None
    if g.is_abelian() != h.is_abelian() or len(g.center()) != len(h.center()):
        return None
    gens = g.small_generating_set()
    ho = h.element_orders()
    go = g.element_orders()
    cands = [[y for y in range(h.order) if ho[y] == go[x]] for x in gens]
    for images in product(*cands):
        if len(set(images)) != len(images):
            continue
        phi = _extend(g, h, gens, images)
        if phi is not None:
            return phi
    return None


def _extend(g, h, gens, images):
    phi = {g.identity: h.identity}
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        for a, b in zip(gens, images):
            y = g.table[x][a]
            z = h.table[phi[x]][b]
            if y in phi:
                if phi[y] != z:
                    return None
            else:
                phi[y] = z
                queue.append(y)
    if len(phi) != g.order or len(set(phi.values())) != g.order:
        return None
    for x in range(g.order):
        for y in range(g.order):
            if phi[g.table[x][y]] != h.table[phi[x]][phi[y]]:
                return None
    return [phi[x] for x in range(g.order)]


def _candidates(m: int) -> list[tuple[str, callable]]:
    out = [(f"Z{m}", lambda: cyclic(m))]
    if m % 2 == 0 and m >= 4:
        out.append((f"D{m // 2}", lambda: dihedral(m // 2)))
    for a in range(1, m + 1):
        if m % a == 0:
            b = m // a
            if b == 2 and a > 1:
                out.append((f"Z{a}×Z2", lambda a=a: direct_product(cyclic(a), cyclic(2))))
            if b == 6 and a > 1:
                out.append((f"Z{a}×S3", lambda a=a: direct_product(cyclic(a), symmetric3())))
            if b == 6 and a % 2 == 0 and a >= 4:
                out.append((f"D{a // 2}×S3", lambda a=a: direct_product(dihedral(a // 2), symmetric3())))
            if b == 2 and a % 2 == 0 and a >= 4:
                out.append((f"D{a // 2}×Z2", lambda a=a: direct_product(dihedral(a // 2), cyclic(2))))
    if m == 6:
        out.append(("S3", symmetric3))
    return out


@dataclass
class StructureReport:
    order: int
    abelian: bool
    element_orders: dict[int, int]
    center_size: int
    matches: list[str]

    @property
    def name(self) -> str:
        return self.matches[0] if self.matches else f"unidentified group of order {self.order}"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "element_orders": {str(k): v for k, v in sorted(self.element_orders.items())},
            "center_size": self.center_size,
            "matches": self.matches,
            "name": self.name,
        }


def identify_group(g: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> StructureReport:
    """Order statistics plus every named candidate isomorphic to ``g``."""
    if g.order > bound:
        raise GroupTooLarge(f"group order {g.order} exceeds bound {bound}")
    matches = []
    seen = set()
    for name, build in _candidates(g.order):
        if name in seen:
            continue
        seen.add(name)
        if are_isomorphic(g, build()):
            matches.append(name)
    return StructureReport(
        g.order, g.is_abelian(), dict(Counter(g.element_orders())), len(g.center()), matches
    )


@dataclass(frozen=True)
class SplitReport:
    split: bool
    direct: bool
    witness: int | None


def semidirect_check(g: FiniteGroup, subgroup: Sequence[int]) -> SplitReport:
    """Whether ``g`` splits over the index-2 subgroup, and whether the product is direct."""
    sub = set(subgroup)
    if len(sub) * 2 != g.order:
        raise ValueError("the subgroup must have index two")
    outside = [a for a in range(g.order) if a not in sub and g.element_order(a) == 2]
    if not outside:
        return SplitReport(False, False, None)
    center = set(g.center())
    central = [a for a in outside if a in center]
    # a central complement gives a direct product
    return SplitReport(True, bool(central), (central or outside)[0])
