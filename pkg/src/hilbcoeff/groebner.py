"""Buchberger's algorithm over F_p and the ideal toolbox built on it.

The core works on raw ``{monomial: coeff}`` dicts.  :class:`Ring` and
:class:`Ideal` wrap it with write-once caches.  Every ideal of ``R = S/J`` is
handled through its preimage ``I + J`` in the ambient polynomial ring ``S``.
"""

from __future__ import annotations

import heapq
import itertools
import math
import threading
from typing import Iterable, List, Sequence, Tuple

from .algebra import (
    DEFAULT_CHARACTERISTIC,
    DEGREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    Terms,
    is_homogeneous,
    is_prime,
    leading,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    terms_add,
    terms_monic,
    terms_mul,
    terms_shift,
)
from .errors import InputError, PreconditionError, ResourceError, RingMismatchError

DEFAULT_BUDGET = 200_000

INFINITE = math.inf


# -- reduction ---------------------------------------------------------------

Basis = List[Tuple[Monomial, List[Tuple[Monomial, int]]]]


def _as_basis(polys: Iterable[Terms], order: MonomialOrder) -> Basis:
    """Split monic polynomials into (leading monomial, tail terms)."""
    out = []
    for g in polys:
        lm = leading(g, order)
        out.append((lm, [(m, c) for m, c in g.items() if m != lm]))
    return out


def reduce_terms(f: Terms, basis: Basis, order: MonomialOrder, p: int) -> Terms:
    """Full multivariate division remainder of f by a monic basis."""
    if not f or not basis:
        return dict(f)
    hk = order.heap_key
    f = dict(f)
    heap = [(hk(m), m) for m in f]
    heapq.heapify(heap)
    rem: Terms = {}
    while heap:
        m = heapq.heappop(heap)[1]
        c = f.pop(m, None)
        if c is None:
            continue
        for lm, tail in basis:
            if mono_divides(lm, m):
                break
        else:
            rem[m] = c
            continue
        q = mono_div(m, lm)
        for tm, tc in tail:
            nm = tuple([a + b for a, b in zip(tm, q)])
            old = f.get(nm)
            if old is None:
                f[nm] = (-c * tc) % p
                heapq.heappush(heap, (hk(nm), nm))
            else:
                v = (old - c * tc) % p
                if v:
                    f[nm] = v
                else:
                    del f[nm]
    return rem


def s_polynomial(f: Terms, g: Terms, order: MonomialOrder, p: int) -> Terms:
    """S-polynomial of two monic polynomials."""
    lf, lg = leading(f, order), leading(g, order)
    lcm = mono_lcm(lf, lg)
    return terms_add(terms_shift(f, mono_div(lcm, lf), 1, p), terms_shift(g, mono_div(lcm, lg), 1, p), p, -1)


# -- staircase helpers ---------------------------------------------------------

def is_zero_dimensional(leads: Sequence[Monomial], nvars: int) -> bool:
    """Every variable has a pure power among the leading monomials."""
    seen = set()
    for m in leads:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            seen.add(support[0])
        elif not support:
            return True
    return len(seen) == nvars


def standard_monomials(leads: Sequence[Monomial], nvars: int):
    """Yield the monomials outside the monomial ideal generated by ``leads``.

    Only call on zero-dimensional staircases.  Each standard monomial is
    produced once: children only raise variables at or after the last raised one.
    """
    leads = list(leads)
    origin = (0,) * nvars
    if any(mono_divides(l, origin) for l in leads):
        return
    stack = [(origin, 0)]
    while stack:
        m, start = stack.pop()
        yield m
        for i in range(start, nvars):
            child = m[:i] + (m[i] + 1,) + m[i + 1:]
            if not any(mono_divides(l, child) for l in leads):
                stack.append((child, i))


def count_standard(leads: Sequence[Monomial], nvars: int):
    if not is_zero_dimensional(leads, nvars):
        return INFINITE
    return sum(1 for _ in standard_monomials(leads, nvars))


def _covers_degree(leads: Sequence[Monomial], nvars: int, t: int) -> bool:
    """Every monomial of degree t is divisible by some leading monomial."""
    for combo in itertools.combinations_with_replacement(range(nvars), t):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        m = tuple(m)
        if not any(mono_divides(l, m) for l in leads):
            return False
    return True


def dimension_of_staircase(leads: Sequence[Monomial], nvars: int) -> int:
    """Largest set of variables supporting no leading monomial; -1 for the unit ideal."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    if any(not s for s in supports):
        return -1
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            sub = set(subset)
            if not any(s <= sub for s in supports):
                return size
    return 0


# -- Buchberger ----------------------------------------------------------------

class GroebnerStats:
    def __init__(self):
        self.pairs = 0
        self.reductions_to_zero = 0
        self.truncated = False


def groebner_terms(
    gens: Iterable[Terms],
    order: MonomialOrder,
    p: int,
    budget: int = DEFAULT_BUDGET,
    stats: GroebnerStats | None = None,
) -> List[Terms]:
    """Reduced Groebner basis, monic, sorted by ascending leading monomial.

    Normal selection strategy with the Gebauer-Moeller installation of the
    coprime and chain criteria.  For homogeneous input under a degree order the
    loop stops early once the leading terms contain every monomial of a degree
    below all pending pairs: every remaining S-polynomial then reduces to zero.
    """
    stats = stats or GroebnerStats()
    gens = [dict(g) for g in gens if g]
    if not gens:
        return []
    nvars = len(next(iter(gens[0])))
    homogeneous = order.degree_compatible and all(is_homogeneous(g) for g in gens)
    key = order.key

    polys: List[Terms] = []
    lms: List[Monomial] = []
    G: set = set()
    B: set = set()
    heap: list = []

    def current_basis() -> Basis:
        idx = sorted(G, key=lambda i: sum(lms[i]))
        return [(lms[i], tails[i]) for i in idx]

    tails: List[List[Tuple[Monomial, int]]] = []

    def install(h: Terms) -> None:
        nonlocal G, B
        h = terms_monic(h, order, p)
        ih = len(polys)
        mh = leading(h, order)
        polys.append(h)
        lms.append(mh)
        tails.append([(m, c) for m, c in h.items() if m != mh])

        # new pairs (ih, ig)
        C = set(G)
        D = set()
        while C:
            ig = C.pop()
            mg = lms[ig]
            lcm_hg = mono_lcm(mh, mg)

            def lcm_divides(ix):
                return mono_divides(mono_lcm(mh, lms[ix]), lcm_hg)

            if mono_coprime(mh, mg) or (
                not any(lcm_divides(ix) for ix in C) and not any(lcm_divides(pr[1]) for pr in D)
            ):
                D.add((ih, ig))
        E = set()
        for ih_, ig in D:
            if not mono_coprime(mh, lms[ig]):
                E.add((ih_, ig))
        # prune old pairs
        B_new = set()
        for pair in B:
            i1, i2 = pair
            l12 = mono_lcm(lms[i1], lms[i2])
            if (
                not mono_divides(mh, l12)
                or mono_lcm(lms[i1], mh) == l12
                or mono_lcm(lms[i2], mh) == l12
            ):
                B_new.add(pair)
        for pair in E:
            B_new.add(pair)
            heapq.heappush(heap, (key(mono_lcm(lms[pair[0]], lms[pair[1]])), pair))
        B = B_new
        G = {ig for ig in G if not mono_divides(mh, lms[ig])}
        G.add(ih)

    for g in sorted(gens, key=lambda t: key(leading(t, order))):
        h = reduce_terms(g, current_basis(), order, p)
        if h:
            install(h)

    checked_degree = -1
    while B:
        _, pair = heapq.heappop(heap)
        if pair not in B:
            continue
        if homogeneous:
            d = sum(mono_lcm(lms[pair[0]], lms[pair[1]]))
            if d > checked_degree:
                checked_degree = d
                leads = [lms[i] for i in G]
                if d > 0 and is_zero_dimensional(leads, nvars) and _covers_degree(leads, nvars, d - 1):
                    stats.truncated = True
                    break
        B.discard(pair)
        stats.pairs += 1
        if stats.pairs > budget:
            raise ResourceError(f"Groebner basis exceeded the S-pair budget of {budget}")
        i, j = pair
        s = s_polynomial(polys[i], polys[j], order, p)
        h = reduce_terms(s, current_basis(), order, p)
        if h:
            install(h)
        else:
            stats.reductions_to_zero += 1

    # G is minimal; interreduce tails.
    basis = [polys[i] for i in G]
    reduced = []
    for k, g in enumerate(basis):
        others = _as_basis(basis[:k] + basis[k + 1:], order)
        lm = leading(g, order)
        tail = {m: c for m, c in g.items() if m != lm}
        tail = reduce_terms(tail, others, order, p)
        tail[lm] = 1
        reduced.append(tail)
    reduced.sort(key=lambda t: key(leading(t, order)))
    return reduced


def is_groebner(basis: Sequence[Terms], order: MonomialOrder, p: int) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    monic = [terms_monic(g, order, p) for g in basis if g]
    red = _as_basis(monic, order)
    for a, b in itertools.combinations(monic, 2):
        if reduce_terms(s_polynomial(a, b, order, p), red, order, p):
            return False
    return True


def _exact_quotient(g: Terms, f: Terms, order: MonomialOrder, p: int) -> Terms:
    """g / f for f dividing g in the polynomial ring."""
    lf = leading(f, order)
    inv = pow(f[lf], -1, p)
    q: Terms = {}
    r = dict(g)
    while r:
        lr = leading(r, order)
        if not mono_divides(lf, lr):
            raise ArithmeticError("polynomial division is not exact")
        m = mono_div(lr, lf)
        c = (r[lr] * inv) % p
        q[m] = c
        r = terms_add(r, terms_shift(f, m, c, p), p, -1)
    return q


def intersect_terms(a: Sequence[Terms], b: Sequence[Terms], nvars: int, order: MonomialOrder, p: int,
                    budget: int = DEFAULT_BUDGET) -> List[Terms]:
    """Generators of (a) ∩ (b) by eliminating t from t*(a) + (1-t)*(b)."""
    elim = MonomialOrder("elim", 1)
    t1 = (1,) + (0,) * nvars
    gens = []
    for f in a:
        gens.append({(1,) + m: c for m, c in f.items()})
    for f in b:
        lifted = {(0,) + m: c for m, c in f.items()}
        gens.append(terms_add(lifted, terms_shift(lifted, t1, 1, p), p, -1))
    gb = groebner_terms(gens, elim, p, budget)
    out = []
    for g in gb:
        if all(m[0] == 0 for m in g):
            out.append({m[1:]: c for m, c in g.items()})
    return out


# -- rings and ideals ----------------------------------------------------------

class Ring:
    """Quotient ring ``k[variables] / (relations)`` over F_p.

    Variables are indexed in declaration order.  The reduced Groebner basis of
    the relations and the Krull dimension are computed lazily and cached.
    """

    def __init__(
        self,
        variables: Sequence[str],
        characteristic: int = DEFAULT_CHARACTERISTIC,
        relations: Sequence = (),
        order: MonomialOrder = DEGREVLEX,
        budget: int = DEFAULT_BUDGET,
    ):
        if not is_prime(characteristic):
            raise InputError(f"characteristic {characteristic} is not prime")
        variables = tuple(variables)
        if not variables:
            raise InputError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            dup = next(v for v in variables if variables.count(v) > 1)
            raise InputError(f"duplicate variable {dup!r}")
        self.variables = variables
        self.characteristic = characteristic
        self.order = order
        self.budget = budget
        self._lock = threading.Lock()
        self._dim = None
        self._zero = None
        self.relations = tuple(self._as_poly(r) for r in relations)
        self.relations = tuple(r for r in self.relations if r)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def _as_poly(self, f) -> Polynomial:
        if isinstance(f, Polynomial):
            if f.ring is not self:
                raise RingMismatchError("polynomial from another ring")
            return f
        if isinstance(f, int):
            return Polynomial.constant(self, f)
        if isinstance(f, str):
            from .parser import parse_poly

            return parse_poly(f, self)
        raise InputError(f"cannot interpret {f!r} as a polynomial")

    def poly(self, text) -> Polynomial:
        return self._as_poly(text)

    def var(self, name: str) -> Polynomial:
        try:
            return Polynomial.variable(self, self.variables.index(name))
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None

    def gens(self) -> Tuple[Polynomial, ...]:
        return tuple(Polynomial.variable(self, i) for i in range(self.nvars))

    def ideal(self, *gens) -> Ideal:
        if len(gens) == 1 and isinstance(gens[0], (list, tuple)):
            gens = tuple(gens[0])
        return Ideal(self, [self._as_poly(g) for g in gens])

    @property
    def maximal_ideal(self) -> Ideal:
        return self.ideal(*self.gens())

    m = maximal_ideal

    @property
    def zero_ideal(self) -> Ideal:
        if self._zero is None:
            with self._lock:
                if self._zero is None:
                    self._zero = Ideal(self, [])
        return self._zero

    def relation_basis(self) -> Tuple[Polynomial, ...]:
        """Reduced Groebner basis of the defining ideal J."""
        return self.zero_ideal.groebner_basis()

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = self.zero_ideal.krull_dim()
        return self._dim

    def __repr__(self):
        rel = ", ".join(str(r) for r in self.relations)
        return f"Ring(F_{self.characteristic}[{', '.join(self.variables)}]/({rel}))"


class Ideal:
    """An ideal of a :class:`Ring`, given by generators.

    The cached Groebner basis is that of ``generators + J`` in the ambient
    polynomial ring, so it is unique for the ideal of R regardless of how the
    generators are listed.
    """

    def __init__(self, ring: Ring, gens: Sequence[Polynomial]):
        self.ring = ring
        seen = set()
        clean = []
        for g in gens:
            if not isinstance(g, Polynomial) or g.ring is not ring:
                raise RingMismatchError("generator from another ring")
            if g and g not in seen:
                seen.add(g)
                clean.append(g)
        self.generators: Tuple[Polynomial, ...] = tuple(clean)
        self._lock = threading.Lock()
        self._gb: List[Terms] | None = None
        self._basis: Basis | None = None
        self._powers = {1: self}
        self.stats = GroebnerStats()

    def _check(self, other: Ideal) -> None:
        if other.ring is not self.ring:
            raise RingMismatchError("ideals belong to different rings")

    # Groebner data
    def _gb_terms(self) -> List[Terms]:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    ring = self.ring
                    gens = [g.terms for g in self.generators]
                    gens += [r.terms for r in ring.relations]
                    self._gb = groebner_terms(gens, ring.order, ring.characteristic, ring.budget, self.stats)
                    self._basis = _as_basis(self._gb, ring.order)
        return self._gb

    def groebner_basis(self) -> Tuple[Polynomial, ...]:
        return tuple(Polynomial(self.ring, g) for g in self._gb_terms())

    def leading_monomials(self) -> List[Monomial]:
        return [leading(g, self.ring.order) for g in self._gb_terms()]

    def normal_form(self, f) -> Polynomial:
        f = self.ring._as_poly(f)
        self._gb_terms()
        return Polynomial(self.ring, reduce_terms(f.terms, self._basis, self.ring.order, self.ring.characteristic))

    def __contains__(self, f) -> bool:
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other: Ideal) -> bool:
        self._check(other)
        return all(g in self for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring is other.ring and self._gb_terms() == other._gb_terms()

    def __hash__(self):
        return hash(tuple(frozenset(g.items()) for g in self._gb_terms()))

    def is_unit(self) -> bool:
        return any(all(e == 0 for e in lm) for lm in self.leading_monomials())

    # invariants
    def length(self):
        """dim_k R/I as an int, or ``INFINITE`` when the quotient has positive dimension."""
        return count_standard(self.leading_monomials(), self.ring.nvars)

    def standard_monomials(self) -> List[Monomial]:
        leads = self.leading_monomials()
        if not is_zero_dimensional(leads, self.ring.nvars):
            raise PreconditionError("quotient is not finite-dimensional")
        return list(standard_monomials(leads, self.ring.nvars))

    def krull_dim(self) -> int:
        return dimension_of_staircase(self.leading_monomials(), self.ring.nvars)

    @property
    def is_m_primary(self) -> bool:
        return self.krull_dim() == 0

    @property
    def is_parameter(self) -> bool:
        return self.is_m_primary and len(self.generators) == self.ring.dim

    # ideal arithmetic
    def _tidy(self, polys: Iterable[Terms]) -> Ideal:
        """Reduce generators modulo J, make them monic, drop zeros and repeats."""
        ring = self.ring
        basis = ring.zero_ideal._gb_terms() and ring.zero_ideal._basis
        out = []
        for f in polys:
            if basis:
                f = reduce_terms(f, basis, ring.order, ring.characteristic)
            if f:
                out.append(Polynomial(ring, terms_monic(f, ring.order, ring.characteristic)))
        return Ideal(ring, out)

    def __add__(self, other: Ideal) -> Ideal:
        self._check(other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: Ideal) -> Ideal:
        self._check(other)
        p = self.ring.characteristic
        return self._tidy(terms_mul(f.terms, g.terms, p) for f in self.generators for g in other.generators)

    def power(self, k: int) -> Ideal:
        """I^k by repeated multiplication, tidying generators after each step."""
        if k < 0:
            raise InputError("negative power")
        if k == 0:
            return self.ring.ideal(1)
        with self._lock:
            have = max(e for e in self._powers if e <= k)
            cur = self._powers[have]
        while have < k:
            cur = cur * self
            have += 1
            with self._lock:
                self._powers.setdefault(have, cur)
        return cur

    __pow__ = power

    def intersection(self, other: Ideal) -> Ideal:
        self._check(other)
        ring = self.ring
        a = self._gb_terms()
        b = other._gb_terms()
        if not a:
            return self
        if not b:
            return other
        gens = intersect_terms(a, b, ring.nvars, ring.order, ring.characteristic, ring.budget)
        return Ideal(ring, [Polynomial(ring, g) for g in gens])

    def colon(self, f) -> Ideal:
        """I : f via I ∩ (f) divided by f."""
        ring = self.ring
        f = ring._as_poly(f)
        if f.is_zero():
            raise InputError("colon by the zero polynomial")
        p = ring.characteristic
        a = self._gb_terms()
        if not a:
            return Ideal(ring, [])
        inter = intersect_terms(a, [f.terms], ring.nvars, ring.order, p, ring.budget)
        quots = [_exact_quotient(g, f.terms, ring.order, p) for g in inter]
        return Ideal(ring, [Polynomial(ring, q) for q in quots])

    def saturation(self, f) -> Ideal:
        """I : f^∞ by iterating the colon until the reduced basis stabilises."""
        cur = self
        while True:
            nxt = cur.colon(f)
            if nxt._gb_terms() == cur._gb_terms():
                return cur
            cur = nxt

    def m_saturation(self) -> Ideal:
        """I : m^∞ = ∩_i (I : x_i^∞)."""
        sat = None
        for x in self.ring.gens():
            part = self.saturation(x)
            sat = part if sat is None else sat.intersection(part)
        return sat

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators)})"


def h0_length(ring: Ring) -> int:
    """Length of H^0_m(R) = J^sat / J, counted as LT(J^sat) minus LT(J)."""
    zero = ring.zero_ideal
    sat = zero.m_saturation()
    small = zero.leading_monomials()
    big = sat.leading_monomials()
    n = ring.nvars
    seen = set()
    stack = [m for m in big if not any(mono_divides(l, m) for l in small)]
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        for i in range(n):
            child = m[:i] + (m[i] + 1,) + m[i + 1:]
            if child not in seen and not any(mono_divides(l, child) for l in small):
                stack.append(child)
    return len(seen)


def normal_form(f: Polynomial, ideal: Ideal) -> Polynomial:
    if f.ring is not ideal.ring:
        raise RingMismatchError("polynomial and ideal live in different rings")
    return ideal.normal_form(f)


def groebner_basis(ideal: Ideal) -> Tuple[Polynomial, ...]:
    return ideal.groebner_basis()


def ideal_op(kind: str, ideal: Ideal, arg=None) -> Ideal:
    """Dispatch for sum, product, power(k), colon(f), saturation(f)."""
    if kind == "sum":
        return ideal + arg
    if kind == "product":
        return ideal * arg
    if kind == "power":
        return ideal.power(arg)
    if kind == "colon":
        return ideal.colon(arg)
    if kind == "saturation":
        return ideal.saturation(arg)
    if kind == "intersection":
        return ideal.intersection(arg)
    raise InputError(f"unknown ideal operation {kind!r}")
