"""Exact multivariate polynomials and rational functions over the integers.

Every value lives in a fixed variable universe ``x1..xn``.  Polynomials are
sparse maps from exponent tuples to nonzero ``int`` coefficients, and the
canonical term order is graded lexicographic.  Rational functions are kept
reduced: the multivariate gcd of numerator and denominator is divided out
and the denominator's leading coefficient is positive.  The text form
returned by ``str`` is the canonical key used across the package.
"""

from __future__ import annotations

import ast
import heapq
from dataclasses import dataclass
from math import gcd as igcd
from typing import Iterable, Mapping, Sequence

__all__ = [
    "IntPoly",
    "RationalFn",
    "LaurentForm",
    "NotLaurent",
    "ParseError",
    "VariableMismatch",
    "poly_arith",
    "poly_gcd",
    "ratfn_make",
    "ratfn_arith",
    "substitute",
    "as_laurent",
    "is_positive_laurent",
    "parse_ratfn",
    "variables",
]


class VariableMismatch(ValueError):
    """Operands live over different variable universes."""


class ParseError(ValueError):
    pass


class NotLaurent(ValueError):
    """The reduced denominator is not a monic monomial."""


def _grlex(e: tuple) -> tuple:
    return (sum(e), e)


def _heap_key(e: tuple) -> tuple:
    # heapq pops the smallest key, so negate to pop the grlex-largest term
    return (-sum(e), tuple(-x for x in e))


class IntPoly:
    """Immutable sparse polynomial in ``nvars`` variables with int coefficients."""

    __slots__ = ("nvars", "terms", "_lead", "_str", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != nvars:
                        raise VariableMismatch(f"exponent {e} has wrong length for {nvars} variables")
                    clean[tuple(e)] = c
        self.terms = clean
        self._lead = None
        self._str = None
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "IntPoly":
        # trusted constructor: terms already has no zero coefficients
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._lead = None
        p._str = None
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "IntPoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c: int) -> "IntPoly":
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "IntPoly":
        """The monomial ``x_{i+1}^power`` (``i`` is 0-based)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = power
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "IntPoly":
        return cls._raw(len(exps), {tuple(exps): coeff} if coeff else {})

    # basic predicates -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()), 0)

    def lead(self) -> tuple[tuple, int]:
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            e = max(self.terms, key=_grlex)
            self._lead = (e, self.terms[e])
        return self._lead

    def lead_coeff(self) -> int:
        return self.lead()[1]

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = igcd(g, c)
            if g == 1:
                break
        return g

    def vars_used(self) -> set[int]:
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return used

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def degrees(self) -> tuple[int, ...]:
        d = [0] * self.nvars
        for e in self.terms:
            for i, x in enumerate(e):
                if x > d[i]:
                    d[i] = x
        return tuple(d)

    def min_exponents(self) -> tuple[int, ...]:
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    # arithmetic -------------------------------------------------------
    def _check(self, other: "IntPoly") -> None:
        if self.nvars != other.nvars:
            raise VariableMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(self.nvars, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return IntPoly._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "IntPoly":
        if not c:
            return IntPoly.zero(self.nvars)
        return IntPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def shift(self, exps: Sequence[int]) -> "IntPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        return IntPoly._raw(
            self.nvars, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return IntPoly.zero(self.nvars)
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            return IntPoly._raw(
                self.nvars, {tuple(x + y for x, y in zip(ea, eb)): ca * cb for ea, ca in a.items()}
            )
        t: dict = {}
        get = t.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                t[e] = get(e, 0) + ca * cb
        return IntPoly._raw(self.nvars, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def div_int(self, c: int) -> "IntPoly":
        return IntPoly._raw(self.nvars, {e: v // c for e, v in self.terms.items()})

    def div_monomial(self, exps: Sequence[int]) -> "IntPoly":
        return IntPoly._raw(
            self.nvars, {tuple(a - b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        )

    def divexact(self, other: "IntPoly") -> "IntPoly | None":
        """Quotient ``self / other`` if the division is exact, else ``None``."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if other.is_monomial():
            (eb, cb), = other.terms.items()
            out = {}
            for e, c in self.terms.items():
                if c % cb:
                    return None
                q = []
                for x, y in zip(e, eb):
                    if x < y:
                        return None
                    q.append(x - y)
                out[tuple(q)] = c // cb
            return IntPoly._raw(self.nvars, out)
        da, db = self.degrees(), other.degrees()
        if any(y > x for x, y in zip(da, db)):
            return None
        eb, cb = other.lead()
        rem = dict(self.terms)
        heap = [(_heap_key(e), e) for e in rem]
        heapq.heapify(heap)
        quot = {}
        others = [(e, c) for e, c in other.terms.items() if e != eb]
        while rem:
            _, e = heapq.heappop(heap)
            c = rem.get(e)
            if c is None:
                continue
            if c % cb:
                return None
            qe = []
            for x, y in zip(e, eb):
                if x < y:
                    return None
                qe.append(x - y)
            qe = tuple(qe)
            qc = c // cb
            quot[qe] = qc
            del rem[e]
            for e2, c2 in others:
                t = tuple(x + y for x, y in zip(qe, e2))
                v = rem.get(t, 0) - qc * c2
                if v:
                    if t not in rem:
                        heapq.heappush(heap, (_heap_key(t), t))
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return IntPoly._raw(self.nvars, quot)

    # substitution and evaluation ---------------------------------------
    def eval_mod(self, point: Sequence[int], prime: int) -> int:
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * pow(x, k, prime) % prime
            total += v
        return total % prime

    # comparison, hashing and text ------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other if other else self.is_zero()
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        return sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)

    def __str__(self):
        if self._str is None:
            self._str = _format_poly(self)
        return self._str

    def __repr__(self):
        return f"IntPoly({self})"


def _format_monomial(e: tuple) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k:
            parts.append(f"x{i + 1}^{k}")
    return "*".join(parts)


def _format_poly(p: IntPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = _format_monomial(e)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def poly_arith(a: IntPoly, b: IntPoly, op: str) -> IntPoly:
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


# ----------------------------------------------------------------------
# gcd


def _monomial_gcd_exps(a: IntPoly, b: IntPoly) -> tuple[int, ...]:
    ma, mb = a.min_exponents(), b.min_exponents()
    return tuple(min(x, y) for x, y in zip(ma, mb))


def _positive(p: IntPoly) -> IntPoly:
    return -p if p.terms and p.lead_coeff() < 0 else p


def _to_uni(p: IntPoly, v: int) -> dict[int, IntPoly]:
    """View ``p`` as a polynomial in ``x_v`` with coefficients free of ``x_v``."""
    buckets: dict[int, dict] = {}
    for e, c in p.terms.items():
        d = e[v]
        if d:
            e = e[:v] + (0,) + e[v + 1 :]
        buckets.setdefault(d, {})[e] = c
    return {d: IntPoly._raw(p.nvars, t) for d, t in buckets.items()}


def _from_uni(u: dict[int, IntPoly], v: int, nvars: int) -> IntPoly:
    t = {}
    for d, c in u.items():
        for e, x in c.terms.items():
            t[e[:v] + (d,) + e[v + 1 :]] = x
    return IntPoly._raw(nvars, t)


def _uni_scale(u: dict, c: IntPoly) -> dict:
    return {d: x * c for d, x in u.items()}


def _uni_sub_shifted(a: dict, b: dict, shift: int) -> dict:
    out = dict(a)
    for d, x in b.items():
        dd = d + shift
        y = out.get(dd)
        y = -x if y is None else y - x
        if y.is_zero():
            out.pop(dd, None)
        else:
            out[dd] = y
    return out


def _prem(a: dict, b: dict) -> dict:
    db = max(b)
    lcb = b[db]
    r = a
    e = max(a) - db + 1
    while r and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        r = _uni_sub_shifted(_uni_scale(r, lcb), _uni_scale(b, lcr), dr - db)
        e -= 1
    if r and e:
        r = _uni_scale(r, lcb**e)
    return r


def _content_in(p: IntPoly, v: int) -> IntPoly:
    g = None
    for c in sorted(_to_uni(p, v).values(), key=lambda q: len(q.terms)):
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            # the remaining coefficients can only shrink the integer part
            return IntPoly.const(p.nvars, igcd(abs(g.constant_value()), p.content()) or 1)
    return _positive(g)


def _exact(a: IntPoly, b: IntPoly) -> IntPoly:
    q = a.divexact(b)
    if q is None:
        raise ArithmeticError("internal error: expected exact division")
    return q


def _subresultant_gcd(a: dict, b: dict, nvars: int) -> dict:
    if max(a) < max(b):
        a, b = b, a
    one = IntPoly.const(nvars, 1)
    g = h = one
    while True:
        delta = max(a) - max(b)
        r = _prem(a, b)
        if not r:
            return b
        if max(r) == 0:
            return {0: one}
        a = b
        div = g * h**delta
        b = {d: _exact(x, div) for d, x in r.items()}
        g = a[max(a)]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _exact(g**delta, h ** (delta - 1))


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Greatest common divisor with positive leading coefficient."""
    a._check(b)
    n = a.nvars
    if a.is_zero():
        return _positive(b)
    if b.is_zero():
        return _positive(a)
    ci = igcd(a.content(), b.content())
    mono = _monomial_gcd_exps(a, b)
    if any(mono):
        a, b = a.div_monomial(mono), b.div_monomial(mono)
    if ci != 1:
        a, b = a.div_int(ci), b.div_int(ci)
    head = IntPoly.monomial(mono, ci) if n else IntPoly.const(0, ci)
    core = _gcd_primitive(a, b)
    return _positive(head * core)


def _gcd_primitive(a: IntPoly, b: IntPoly) -> IntPoly:
    # content and monomial factors already removed from the pair
    n = a.nvars
    one = IntPoly.const(n, 1)
    if a.is_constant() or b.is_constant():
        return IntPoly.const(n, igcd(a.content(), b.content()))
    if a == b or a == -b:
        return _positive(a)
    va, vb = a.vars_used(), b.vars_used()
    only_a, only_b = va - vb, vb - va
    if only_a:
        v = min(only_a)
        return poly_gcd(_content_in(a, v), b)
    if only_b:
        v = min(only_b)
        return poly_gcd(a, _content_in(b, v))
    # main variable: the one of smallest joint degree keeps the PRS short
    v = min(va, key=lambda i: (max(a.degree_in(i), b.degree_in(i)), i))
    ca, cb = _content_in(a, v), _content_in(b, v)
    pa = a if ca == one else _exact(a, ca)
    pb = b if cb == one else _exact(b, cb)
    c = poly_gcd(ca, cb) if (ca != one and cb != one) else one
    g = _from_uni(_subresultant_gcd(_to_uni(pa, v), _to_uni(pb, v), n), v, n)
    if g.is_constant():
        return c
    cg = _content_in(g, v)
    if cg != one:
        g = _exact(g, cg)
    return c * _positive(g)


# ----------------------------------------------------------------------
# rational functions


class RationalFn:
    """Reduced quotient ``num / den`` of integer polynomials."""

    __slots__ = ("num", "den", "_str", "_hash")

    def __init__(self, num: IntPoly, den: IntPoly | None = None):
        if den is None:
            den = IntPoly.const(num.nvars, 1)
        r = _reduce(num, den)
        self.num, self.den = r
        self._str = None
        self._hash = None

    @classmethod
    def _raw(cls, num: IntPoly, den: IntPoly) -> "RationalFn":
        f = cls.__new__(cls)
        f.num, f.den = num, den
        f._str = None
        f._hash = None
        return f

    @classmethod
    def var(cls, nvars: int, i: int) -> "RationalFn":
        return cls._raw(IntPoly.var(nvars, i), IntPoly.const(nvars, 1))

    @classmethod
    def const(cls, nvars: int, c: int) -> "RationalFn":
        return cls._raw(IntPoly.const(nvars, c), IntPoly.const(nvars, 1))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def _check(self, other: "RationalFn") -> None:
        if self.nvars != other.nvars:
            raise VariableMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, int):
            return RationalFn.const(self.nvars, other)
        if isinstance(other, IntPoly):
            return RationalFn(other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._raw(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return _make_from_factors(self.num * other.num, [self.den, other.den], extra_den=None)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return _make_from_factors(self.num * other.den, [self.den, other.num])

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFn._raw(self.num**k, self.den**k)

    def eval_mod(self, point: Sequence[int], prime: int) -> int:
        d = self.den.eval_mod(point, prime)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.eval_mod(point, prime) * pow(d, -1, prime) % prime

    def __eq__(self, other):
        if isinstance(other, int):
            return self.den == 1 and self.num == other
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(str(self))
        return self._hash

    def __str__(self):
        if self._str is None:
            n = str(self.num)
            if self.den == 1:
                self._str = n
            else:
                d = str(self.den)
                if len(self.num.terms) > 1:
                    n = f"({n})"
                if len(self.den.terms) > 1 or "*" in d:
                    d = f"({d})"
                self._str = f"{n} / {d}"
        return self._str

    def __repr__(self):
        return f"RationalFn({self})"


def _reduce(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    n = num.nvars
    if num.is_zero():
        return num, IntPoly.const(n, 1)
    mono = _monomial_gcd_exps(num, den)
    if any(mono):
        num, den = num.div_monomial(mono), den.div_monomial(mono)
    c = igcd(num.content(), den.content())
    if c != 1:
        num, den = num.div_int(c), den.div_int(c)
    if not den.is_monomial():
        q = num.divexact(den)
        if q is not None:
            num, den = q, IntPoly.const(n, 1)
        else:
            g = _gcd_primitive(num, den)
            if not g.is_constant():
                num, den = _exact(num, g), _exact(den, g)
    if den.lead_coeff() < 0:
        num, den = -num, -den
    return num, den


def _make_from_factors(num: IntPoly, den_factors: list[IntPoly], extra_den=None) -> RationalFn:
    """Build ``num / prod(den_factors)`` trying cheap exact cancellations first."""
    residual = []
    for f in den_factors:
        if f.is_monomial():
            residual.append(f)
            continue
        q = num.divexact(f)
        if q is not None:
            num = q
        else:
            residual.append(f)
    den = IntPoly.const(num.nvars, 1)
    for f in residual:
        den = den * f
    return RationalFn(num, den)


def ratfn_make(num: IntPoly, den: IntPoly) -> RationalFn:
    """Reduced rational function ``num / den``."""
    return RationalFn(num, den)


def ratfn_arith(a: RationalFn, b: RationalFn, op: str) -> RationalFn:
    """Apply ``op`` in {"add", "sub", "mul", "div"}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ----------------------------------------------------------------------
# substitution


def _eval_poly(p: IntPoly, nums, dens, powcache) -> tuple[IntPoly, list[int]]:
    """Evaluate ``p`` at ``nums[j]/dens[j]``.

    Returns ``(N, E)`` with ``p(...) = N / prod(dens[j]**E[j])``.
    """
    degs = p.degrees()
    n_out = nums[0].nvars if nums else 0
    total = IntPoly.zero(n_out)

    def pw(kind, j, k):
        key = (kind, j, k)
        v = powcache.get(key)
        if v is None:
            base = nums[j] if kind == 0 else dens[j]
            v = base**k
            powcache[key] = v
        return v

    for e, c in p.terms.items():
        term = IntPoly.const(n_out, c)
        for j, k in enumerate(e):
            if k:
                term = term * pw(0, j, k)
            rest = degs[j] - k
            if rest and not dens[j].is_constant():
                term = term * pw(1, j, rest)
            elif rest:
                term = term.scale(dens[j].constant_value() ** rest)
        total = total + term
    return total, list(degs)


def substitute(f: RationalFn, assignment: Mapping[int, RationalFn] | Sequence[RationalFn]) -> RationalFn:
    """Replace each variable ``x_{j+1}`` of ``f`` by ``assignment[j]`` and reduce."""
    n = f.nvars
    if isinstance(assignment, Mapping):
        missing = [j for j in range(n) if j not in assignment]
        used = f.num.vars_used() | f.den.vars_used()
        if any(j in used for j in missing):
            raise KeyError("assignment does not cover every variable of f")
        imgs = [assignment.get(j) for j in range(n)]
    else:
        imgs = list(assignment)
        if len(imgs) != n:
            raise VariableMismatch(f"assignment has {len(imgs)} images for {n} variables")
    ref = next((g for g in imgs if g is not None), None)
    if ref is None:
        return f
    m = ref.nvars
    for j, g in enumerate(imgs):
        if g is None:
            imgs[j] = RationalFn.var(m, j)
        elif g.nvars != m:
            raise VariableMismatch("images over different variable universes")
    nums = [g.num for g in imgs]
    dens = [g.den for g in imgs]
    cache: dict = {}
    top, e_top = _eval_poly(f.num, nums, dens, cache)
    bot, e_bot = _eval_poly(f.den, nums, dens, cache)
    if bot.is_zero():
        raise ZeroDivisionError("substituted denominator is identically zero")
    # f(g) = top * prod(d^e_bot) / (bot * prod(d^e_top)); cancel common powers
    num_factors = [top]
    den_factors = [bot]
    for j in range(n):
        k = e_bot[j] - e_top[j]
        if k > 0:
            num_factors.append(dens[j] ** k)
        elif k < 0:
            den_factors.extend([dens[j]] * (-k))
    num = num_factors[0]
    for x in num_factors[1:]:
        num = num * x
    # split the substituted denominator into the image numerators it came from
    # when f's denominator is a monomial, so exact division can cancel them
    if f.den.is_monomial():
        (eb, cb), = f.den.terms.items()
        pieces = [IntPoly.const(m, cb)]
        for j, k in enumerate(eb):
            pieces.extend([nums[j]] * k)
        den_factors = pieces + den_factors[1:]
    return _make_from_factors(num, den_factors)


# ----------------------------------------------------------------------
# Laurent forms


@dataclass(frozen=True)
class LaurentForm:
    """``numerator / (x1^e1 * ... * xn^en)`` with the monomial fully cancelled."""

    numerator: IntPoly
    denominator_exponents: tuple[int, ...]

    def __str__(self):
        mono = _format_monomial(self.denominator_exponents)
        return f"({self.numerator}) / {mono}" if mono else str(self.numerator)


def as_laurent(f: RationalFn) -> LaurentForm:
    den = f.den
    if not den.is_monomial():
        raise NotLaurent(f"denominator {den} has {len(den.terms)} terms")
    (e, c), = den.terms.items()
    if c != 1:
        raise NotLaurent(f"denominator coefficient {c} is not a unit")
    return LaurentForm(f.num, e)


def is_positive_laurent(f: RationalFn) -> bool:
    try:
        lf = as_laurent(f)
    except NotLaurent:
        return False
    return all(c > 0 for c in lf.numerator.terms.values())


# ----------------------------------------------------------------------
# parsing


def variables(n: int) -> list[RationalFn]:
    """The initial variables ``x1..xn``."""
    return [RationalFn.var(n, i) for i in range(n)]


def parse_ratfn(text: str, nvars: int) -> RationalFn:
    """Parse an arithmetic expression in ``x1..xn`` with ``+ - * / ^`` and parentheses."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return _walk(tree.body, nvars, text)


def _walk(node, n: int, text: str) -> RationalFn:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return RationalFn.const(n, node.value)
    if isinstance(node, ast.Name):
        name = node.id
        if name.startswith("x") and name[1:].isdigit():
            i = int(name[1:])
            if 1 <= i <= n:
                return RationalFn.var(n, i - 1)
        raise ParseError(f"unknown variable {name!r} in {text!r} (expected x1..x{n})")
    if isinstance(node, ast.UnaryOp):
        v = _walk(node.operand, n, text)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ParseError(f"exponents must be integer literals in {text!r}")
            return _walk(node.left, n, text) ** (sign * exp.value)
        left = _walk(node.left, n, text)
        right = _walk(node.right, n, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    raise ValueError(f"unsupported syntax in {text!r}")


def product(items: Iterable[RationalFn], nvars: int) -> RationalFn:
    out = RationalFn.const(nvars, 1)
    for x in items:
        out = out * x
    return out
