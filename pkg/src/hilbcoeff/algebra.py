"""Exact arithmetic over F_p: scalars, exponent-vector monomials, orders, polynomials.

Monomials are plain tuples of non-negative ints, one slot per ring variable.
Polynomials are immutable wrappers around a ``{monomial: coeff}`` dict whose
coefficients live in ``range(1, p)``; zero coefficients are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Iterable, Tuple

from .errors import InputError, RingMismatchError

if TYPE_CHECKING:
    from .groebner import Ring

Monomial = Tuple[int, ...]
Terms = Dict[Monomial, int]

DEFAULT_CHARACTERISTIC = 32003


def is_prime(n: int) -> bool:
    """Trial division primality test (characteristics are small)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldScalar:
    """An element of F_p.  Internals use bare ints; this is the public face."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other: FieldScalar) -> None:
        if self.p != other.p:
            raise RingMismatchError(f"F_{self.p} vs F_{other.p}")

    def __add__(self, other: FieldScalar) -> FieldScalar:
        self._check(other)
        return FieldScalar(self.value + other.value, self.p)

    def __sub__(self, other: FieldScalar) -> FieldScalar:
        self._check(other)
        return FieldScalar(self.value - other.value, self.p)

    def __mul__(self, other: FieldScalar) -> FieldScalar:
        self._check(other)
        return FieldScalar(self.value * other.value, self.p)

    def __neg__(self) -> FieldScalar:
        return FieldScalar(-self.value, self.p)

    def inverse(self) -> FieldScalar:
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return FieldScalar(pow(self.value, -1, self.p), self.p)


def symmetric(c: int, p: int) -> int:
    """Representative of c mod p in (-p/2, p/2]."""
    c %= p
    return c - p if c > p // 2 else c


# -- monomials ---------------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x + y for x, y in zip(a, b)])


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x - y for x, y in zip(a, b)])


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff a | b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def degree(m: Monomial) -> int:
    return sum(m)


# -- monomial orders ---------------------------------------------------------

class MonomialOrder:
    """A multiplicative well-order on monomials.

    ``kind`` is ``"degrevlex"``, ``"lex"`` or ``"elim"``; the elimination order
    compares the first ``split`` variables by degrevlex and breaks ties with
    degrevlex on the rest, so any monomial touching the first block beats every
    monomial that does not.

    ``key(m)`` grows with m.  ``heap_key(m)`` shrinks with m, which lets the
    reduction loop use ``heapq`` directly.
    """

    def __init__(self, kind: str = "degrevlex", split: int = 0):
        if kind not in ("degrevlex", "lex", "elim"):
            raise InputError(f"unknown monomial order {kind!r}")
        if kind == "elim" and split < 1:
            raise InputError("elimination order needs split >= 1")
        self.kind = kind
        self.split = split if kind == "elim" else 0
        if kind == "degrevlex":
            self.heap_key = _degrevlex_heap
        elif kind == "lex":
            self.heap_key = _lex_heap
        else:
            s = split
            self.heap_key = lambda m: _degrevlex_heap(m[:s]) + _degrevlex_heap(m[s:])

    @property
    def degree_compatible(self) -> bool:
        return self.kind == "degrevlex"

    def key(self, m: Monomial) -> Tuple[int, ...]:
        return tuple(-v for v in self.heap_key(m))

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0 or 1 as a is less than, equal to, or greater than b."""
        if len(a) != len(b):
            raise InputError(f"monomial length mismatch: {len(a)} vs {len(b)}")
        ka, kb = self.heap_key(a), self.heap_key(b)
        if ka == kb:
            return 0
        return 1 if ka < kb else -1

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.split) == (other.kind, other.split)

    def __hash__(self):
        return hash((self.kind, self.split))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {self.split})" if self.kind == "elim" else f"MonomialOrder({self.kind!r})"


def _degrevlex_heap(m: Monomial) -> Tuple[int, ...]:
    return (-sum(m),) + m[::-1]


def _lex_heap(m: Monomial) -> Tuple[int, ...]:
    return tuple([-e for e in m])


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


# -- raw term-dict arithmetic (shared with the Groebner core) ----------------

def terms_add(f: Terms, g: Terms, p: int, scale: int = 1) -> Terms:
    """f + scale*g."""
    out = dict(f)
    for m, c in g.items():
        v = (out.get(m, 0) + scale * c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def terms_mul(f: Terms, g: Terms, p: int) -> Terms:
    out: Terms = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple([x + y for x, y in zip(m1, m2)])
            out[m] = (out.get(m, 0) + c1 * c2) % p
    return {m: c for m, c in out.items() if c}


def terms_shift(f: Terms, m: Monomial, c: int, p: int) -> Terms:
    """c * m * f."""
    return {mono_mul(k, m): (v * c) % p for k, v in f.items()}


def leading(f: Terms, order: MonomialOrder) -> Monomial:
    return min(f, key=order.heap_key)


def terms_monic(f: Terms, order: MonomialOrder, p: int) -> Terms:
    if not f:
        return f
    inv = pow(f[leading(f, order)], -1, p)
    return {m: (c * inv) % p for m, c in f.items()}


def is_homogeneous(f: Terms) -> bool:
    degs = {sum(m) for m in f}
    return len(degs) <= 1


# -- polynomials ---------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial in a :class:`~hilbcoeff.groebner.Ring`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Terms | None = None):
        self.ring = ring
        p = ring.characteristic
        self.terms: Terms = {m: c % p for m, c in (terms or {}).items() if c % p}
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, ring: Ring, c: int) -> Polynomial:
        return cls(ring, {(0,) * ring.nvars: c})

    @classmethod
    def variable(cls, ring: Ring, index: int) -> Polynomial:
        m = [0] * ring.nvars
        m[index] = 1
        return cls(ring, {tuple(m): 1})

    @classmethod
    def monomial(cls, ring: Ring, exps: Iterable[int], c: int = 1) -> Polynomial:
        return cls(ring, {tuple(exps): c})

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring is not self.ring:
                raise RingMismatchError("polynomials belong to different rings")
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, terms_add(self.terms, other.terms, self.ring.characteristic))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.characteristic
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, terms_add(self.terms, other.terms, self.ring.characteristic, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, terms_mul(self.terms, other.terms, self.ring.characteristic))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative exponent")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return is_homogeneous(self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise InputError("zero polynomial has no leading monomial")
        return leading(self.terms, self.ring.order)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()]

    def monic(self) -> Polynomial:
        return Polynomial(self.ring, terms_monic(self.terms, self.ring.order, self.ring.characteristic))

    def sorted_terms(self):
        """Terms in decreasing monomial order."""
        return sorted(self.terms.items(), key=lambda t: self.ring.order.heap_key(t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        p = self.ring.characteristic
        pieces = []
        for m, c in self.sorted_terms():
            c = symmetric(c, p)
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"Polynomial({self})"
