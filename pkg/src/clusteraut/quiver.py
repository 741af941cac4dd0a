"""Quivers without loops or 2-cycles, stored as skew-symmetric integer matrices.

``b[i][j] > 0`` means ``b[i][j]`` arrows ``i -> j``.  Points are 0-based in
the Python API; the JSON and text formats use 1-based point numbers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "Quiver",
    "QuiverError",
    "mutate_quiver",
    "mutate_by_arrows",
    "opposite",
    "quiver_isomorphisms",
    "quiver_automorphisms",
    "quiver_anti_automorphisms",
    "classify_type",
    "TypeInfo",
    "linear_a",
    "a_tilde_standard",
    "a_tilde_anti_automorphism",
]


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    b: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        b = tuple(tuple(int(v) for v in row) for row in self.b)
        object.__setattr__(self, "b", b)
        n = len(b)
        if n < 1:
            raise QuiverError("a quiver needs at least one point")
        for i, row in enumerate(b):
            if len(row) != n:
                raise QuiverError("exchange matrix is not square")
            if row[i]:
                raise QuiverError(f"loop at point {i + 1}")
            for j in range(i + 1, n):
                if row[j] != -b[j][i]:
                    raise QuiverError(f"matrix not skew-symmetric at ({i + 1},{j + 1})")

    @property
    def n(self) -> int:
        return len(self.b)

    @classmethod
    def from_arrows(cls, n: int, arrows: Sequence[Sequence[int]]) -> "Quiver":
        """Build from 0-based ``(source, target[, multiplicity])`` triples."""
        m = [[0] * n for _ in range(n)]
        for a in arrows:
            s, t = a[0], a[1]
            mult = a[2] if len(a) > 2 else 1
            if not (0 <= s < n and 0 <= t < n):
                raise QuiverError(f"arrow {s + 1}->{t + 1} out of range")
            if s == t:
                raise QuiverError(f"loop at point {s + 1}")
            m[s][t] += mult
            m[t][s] -= mult
        return cls(tuple(map(tuple, m)))

    @classmethod
    def empty(cls, n: int) -> "Quiver":
        return cls(tuple((0,) * n for _ in range(n)))

    def arrows(self) -> list[tuple[int, int, int]]:
        """0-based ``(source, target, multiplicity)`` triples."""
        return [(i, j, v) for i, row in enumerate(self.b) for j, v in enumerate(row) if v > 0]

    def out_degree(self, i: int) -> int:
        return sum(v for v in self.b[i] if v > 0)

    def in_degree(self, i: int) -> int:
        return -sum(v for v in self.b[i] if v < 0)

    def relabel(self, perm: Sequence[int]) -> "Quiver":
        """Quiver R with R[perm[i]][perm[j]] = b[i][j]."""
        n = self.n
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m[perm[i]][perm[j]] = self.b[i][j]
        return Quiver(tuple(map(tuple, m)))

    def to_json(self) -> dict:
        return {"n": self.n, "b": [list(r) for r in self.b]}

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        if "b" in data:
            q = cls(tuple(tuple(r) for r in data["b"]))
            if "n" in data and data["n"] != q.n:
                raise QuiverError("field n disagrees with the matrix size")
            return q
        if "arrows" in data:
            n = data.get("n")
            arrows = [(a[0] - 1, a[1] - 1, *(a[2:] or [1])) for a in data["arrows"]]
            if n is None:
                n = max((max(a[0], a[1]) for a in arrows), default=-1) + 1
            return cls.from_arrows(n, arrows)
        raise QuiverError("quiver JSON needs a 'b' matrix or an 'arrows' list")

    def __str__(self):
        parts = []
        for i, j, v in self.arrows():
            parts.append(f"{i + 1}->{j + 1}" + (f"x{v}" if v > 1 else ""))
        return f"Quiver(n={self.n}: " + (", ".join(parts) or "no arrows") + ")"


def mutate_quiver(q: Quiver, k: int) -> Quiver:
    """Matrix mutation at point ``k`` (0-based)."""
    n = q.n
    if not 0 <= k < n:
        raise IndexError(f"point {k + 1} out of range 1..{n}")
    b = q.b
    bk = b[k]
    m = []
    for i in range(n):
        row = list(b[i])
        if i == k:
            m.append([-v for v in row])
            continue
        bik = row[k]
        for j in range(n):
            if j == k:
                row[j] = -bik
            elif bik > 0 and bk[j] > 0:
                row[j] += bik * bk[j]
            elif bik < 0 and bk[j] < 0:
                row[j] -= bik * bk[j]
        m.append(row)
    return Quiver(tuple(map(tuple, m)))


def mutate_by_arrows(q: Quiver, k: int) -> Quiver:
    """Mutation by explicit arrow surgery: add composites, reverse at k, cancel 2-cycles."""
    n = q.n
    if not 0 <= k < n:
        raise IndexError(f"point {k + 1} out of range 1..{n}")
    arrows: Counter = Counter()
    for i, j, v in q.arrows():
        arrows[(i, j)] += v
    incoming = [(i, v) for (i, j), v in arrows.items() if j == k]
    outgoing = [(j, v) for (i, j), v in arrows.items() if i == k]
    for i, a in incoming:
        for j, c in outgoing:
            arrows[(i, j)] += a * c
    flipped: Counter = Counter()
    for (i, j), v in arrows.items():
        if i == k or j == k:
            flipped[(j, i)] += v
        else:
            flipped[(i, j)] += v
    m = [[0] * n for _ in range(n)]
    for (i, j), v in flipped.items():
        m[i][j] += v
        m[j][i] -= v
    return Quiver(tuple(map(tuple, m)))


def opposite(q: Quiver) -> Quiver:
    return Quiver(tuple(tuple(-v for v in row) for row in q.b))


def _signature(q: Quiver, i: int) -> tuple:
    return (q.out_degree(i), q.in_degree(i), tuple(sorted(q.b[i])))


def quiver_isomorphisms(q: Quiver, r: Quiver) -> list[tuple[int, ...]]:
    """All bijections ``s`` with ``r.b[s[i]][s[j]] == q.b[i][j]``, lexicographic."""
    return list(iter_isomorphisms(q, r))


def iter_isomorphisms(q: Quiver, r: Quiver) -> Iterator[tuple[int, ...]]:
    n = q.n
    if r.n != n:
        return
    sq = [_signature(q, i) for i in range(n)]
    sr = [_signature(r, i) for i in range(n)]
    if sorted(sq) != sorted(sr):
        return
    cands = [[j for j in range(n) if sr[j] == sq[i]] for i in range(n)]
    image = [-1] * n
    used = [False] * n
    qb, rb = q.b, r.b

    def extend(i):
        if i == n:
            yield tuple(image)
            return
        for j in cands[i]:
            if used[j]:
                continue
            ok = True
            for p in range(i):
                if rb[image[p]][j] != qb[p][i]:
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                yield from extend(i + 1)
                used[j] = False
        image[i] = -1

    yield from extend(0)


def quiver_automorphisms(q: Quiver) -> list[tuple[int, ...]]:
    return quiver_isomorphisms(q, q)


def quiver_anti_automorphisms(q: Quiver) -> list[tuple[int, ...]]:
    return quiver_isomorphisms(q, opposite(q))


# ----------------------------------------------------------------------
# classification of the underlying diagram


@dataclass(frozen=True)
class TypeInfo:
    kind: str  # "Dynkin", "Euclidean" or "Other"
    name: str = ""
    rank: int = 0

    def __str__(self):
        return self.name if self.kind != "Other" else "Other"


_ARMS_DYNKIN = {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}
_ARMS_EUCLID = {(2, 2, 2): "Ẽ6", (1, 3, 3): "Ẽ7", (1, 2, 5): "Ẽ8"}


def _arm_length(adj, start, prev):
    length, cur = 1, start
    while True:
        nxt = [v for v in adj[cur] if v != prev]
        if len(nxt) != 1:
            return length if not nxt else None
        prev, cur = cur, nxt[0]
        length += 1


def classify_type(q: Quiver) -> TypeInfo:
    n = q.n
    weights = [abs(q.b[i][j]) for i in range(n) for j in range(i + 1, n) if q.b[i][j]]
    if any(w >= 2 for w in weights):
        if n == 2 and weights == [2]:
            return TypeInfo("Euclidean", "Ã(1,1)", 2)
        return TypeInfo("Other")
    adj = [[j for j in range(n) if q.b[i][j]] for i in range(n)]
    # connectivity
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        return TypeInfo("Other")
    edges = len(weights)
    deg = [len(a) for a in adj]
    if edges == n - 1:
        branch = [v for v in range(n) if deg[v] >= 3]
        if not branch:
            return TypeInfo("Dynkin", f"A{n}", n)
        if len(branch) == 1:
            c = branch[0]
            arms = sorted(_arm_length(adj, w, c) or 0 for w in adj[c])
            if 0 in arms:
                return TypeInfo("Other")
            if deg[c] == 3:
                a = tuple(arms)
                if a[0] == 1 and a[1] == 1:
                    return TypeInfo("Dynkin", f"D{n}", n)
                if a in _ARMS_DYNKIN:
                    return TypeInfo("Dynkin", _ARMS_DYNKIN[a], n)
                if a in _ARMS_EUCLID:
                    return TypeInfo("Euclidean", _ARMS_EUCLID[a], n)
            if deg[c] == 4 and arms == [1, 1, 1, 1]:
                return TypeInfo("Euclidean", "D̃4", n)
            return TypeInfo("Other")
        if len(branch) == 2 and all(deg[c] == 3 for c in branch):
            leaves_ok = all(sum(1 for w in adj[c] if deg[w] == 1) >= 2 for c in branch)
            if leaves_ok and n >= 6:
                return TypeInfo("Euclidean", f"D̃{n - 1}", n)
        return TypeInfo("Other")
    if edges == n and all(d == 2 for d in deg) and n >= 3:
        # a cycle: count arrows going each way around it
        order = [0]
        prev = None
        while len(order) < n:
            cur = order[-1]
            nxt = [w for w in adj[cur] if w != prev][0]
            prev = cur
            order.append(nxt)
        fwd = sum(1 for t in range(n) if q.b[order[t]][order[(t + 1) % n]] > 0)
        bwd = n - fwd
        if fwd == 0 or bwd == 0:
            return TypeInfo("Other")
        p, r = max(fwd, bwd), min(fwd, bwd)
        return TypeInfo("Euclidean", f"Ã({p},{r})", n)
    return TypeInfo("Other")


# ----------------------------------------------------------------------
# standard quivers


def linear_a(n: int, reverse: bool = False) -> Quiver:
    """Path quiver ``1 <- 2 <- ... <- n`` (or ``1 -> ... -> n`` when ``reverse``)."""
    arrows = [(i + 1, i) if not reverse else (i, i + 1) for i in range(n - 1)]
    return Quiver.from_arrows(n, arrows)


def a_tilde_standard(p: int, q: int) -> Quiver:
    """Two paths from point 1 to point p+q, of lengths p and q (1-based description).

    1 -> 2 -> ... -> p -> p+q and 1 -> p+1 -> ... -> p+q-1 -> p+q.
    """
    n = p + q
    if p < 1 or q < 1:
        raise QuiverError("p and q must be positive")
    arrows = []
    first = list(range(1, p + 1)) + [n]
    second = [1] + list(range(p + 1, n)) + [n]
    for path in (first, second):
        for a, c in zip(path, path[1:]):
            arrows.append((a - 1, c - 1))
    return Quiver.from_arrows(n, arrows)


def a_tilde_anti_automorphism(p: int, q: int) -> tuple[int, ...]:
    """0-based point map of the standard anti-automorphism of ``a_tilde_standard(p, q)``.

    Swaps the source and the sink and reverses each of the two paths.
    """
    n = p + q
    img = {1: n, n: 1}
    for ell in range(2, p + 1):
        img[ell] = p + 2 - ell
    for m in range(1, q):
        img[p + m] = p + q - m
    return tuple(img[i + 1] - 1 for i in range(n))
