"""One-dimensional backend: numerical semigroup rings and their monomial ideals.

A monomial ideal of k[[S]] is its valuation set E: a subset of the integers
closed under adding S.  Every such set here is cofinite, so it is stored as
the finite set of members below ``start`` plus "everything from ``start`` on".
Products become sumsets, division by x^c becomes a shift, and lengths are
sizes of finite set differences.  Nothing depends on the residue field.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import InputError, PreconditionError, ResourceError
from .hilbert import DEFAULT_NMAX, CoefficientVector, IdentityReport, SequenceOracle, extract_coeffs, identity_suite

DEFAULT_GAP_CAP = 20


class NumericalSemigroup:
    """A cofinite additive submonoid S of the natural numbers."""

    __slots__ = ("gaps", "_gapset", "frobenius", "conductor", "generators")

    def __init__(self, gens: Iterable[int]):
        gens = sorted(set(int(g) for g in gens))
        if not gens:
            raise InputError("a numerical semigroup needs at least one generator")
        if gens[0] <= 0:
            raise InputError("generators must be positive")
        if reduce(math.gcd, gens) != 1:
            raise InputError(f"generators {gens} are not coprime")
        bound = 2 * gens[-1] ** 2 + 1
        member = bytearray(bound)
        member[0] = 1
        for n in range(1, bound):
            for g in gens:
                if g > n:
                    break
                if member[n - g]:
                    member[n] = 1
                    break
        self._init_from_gaps(n for n in range(bound) if not member[n])

    def _init_from_gaps(self, gaps: Iterable[int]) -> None:
        self.gaps: Tuple[int, ...] = tuple(sorted(gaps))
        self._gapset = frozenset(self.gaps)
        self.frobenius = self.gaps[-1] if self.gaps else -1
        self.conductor = self.frobenius + 1
        self.generators = self._minimal_generators()

    @classmethod
    def from_gaps(cls, gaps: Iterable[int]) -> NumericalSemigroup:
        """Semigroup with the given gap set; raises if the complement is not closed."""
        gaps = sorted(set(gaps))
        if any(g <= 0 for g in gaps):
            raise InputError("gaps must be positive")
        gapset = set(gaps)
        top = (gaps[-1] + 1) if gaps else 0
        members = [n for n in range(1, top + 1) if n not in gapset]
        for a in members:
            for b in members:
                if a + b in gapset:
                    raise InputError(f"complement of {gaps} is not closed: {a} + {b}")
        obj = cls.__new__(cls)
        obj._init_from_gaps(gaps)
        return obj

    def _minimal_generators(self) -> Tuple[int, ...]:
        top = self.conductor + self.multiplicity
        out = []
        for n in range(1, top + 1):
            if n in self and not any(a in self and (n - a) in self for a in range(1, n // 2 + 1)):
                out.append(n)
        return tuple(out)

    @property
    def multiplicity(self) -> int:
        """Smallest positive element (e_0 of the maximal ideal)."""
        n = 1
        while n in self._gapset:
            n += 1
        return n

    def __contains__(self, n: int) -> bool:
        return n >= 0 and n not in self._gapset

    def is_closed(self, upto: Optional[int] = None) -> bool:
        """Exhaustive closure check on pairs below ``upto`` (default 2 * conductor)."""
        upto = 2 * self.conductor if upto is None else upto
        elems = [n for n in range(1, upto + 1) if n in self]
        return all(a + b in self for a in elems for b in elems if a + b <= upto)

    def __eq__(self, other):
        return isinstance(other, NumericalSemigroup) and self.gaps == other.gaps

    def __hash__(self):
        return hash(self.gaps)

    def __repr__(self):
        return f"NumericalSemigroup<{', '.join(map(str, self.generators))}>"

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "gaps": list(self.gaps),
            "frobenius": self.frobenius,
            "conductor": self.conductor,
            "multiplicity": self.multiplicity,
        }

    # ideals
    def ideal(self, gens: Iterable[int], fractional: bool = False) -> SemigroupIdeal:
        return SemigroupIdeal.from_gens(self, gens, fractional)

    @property
    def whole(self) -> SemigroupIdeal:
        return SemigroupIdeal(self, self.conductor, frozenset(n for n in range(self.conductor) if n in self))

    @property
    def maximal_ideal(self) -> SemigroupIdeal:
        return SemigroupIdeal(self, max(self.conductor, 1), frozenset(n for n in range(1, self.conductor) if n in self))

    m = maximal_ideal

    def as_module(self, other: NumericalSemigroup) -> SemigroupIdeal:
        """An oversemigroup B of self, viewed as a relative ideal over self."""
        if not all(g in self._gapset for g in other.gaps):
            raise InputError(f"{other} does not contain {self}")
        return SemigroupIdeal(self, other.conductor, frozenset(n for n in range(other.conductor) if n in other))


@dataclass(frozen=True)
class SemigroupIdeal:
    """A cofinite subset E of the integers with E + S contained in E.

    ``members`` lists the elements below ``start``; every n >= start lies in
    E, and ``start`` is as small as possible (so equality is structural).
    """

    owner: NumericalSemigroup
    start: int
    members: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        start, members = self.start, set(self.members)
        while start - 1 in members:
            start -= 1
            members.discard(start)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "members", frozenset(m for m in members if m < start))

    @classmethod
    def from_gens(cls, owner: NumericalSemigroup, gens: Iterable[int], fractional: bool = False) -> SemigroupIdeal:
        """The ideal generated by t^v for v in gens: the union of v + S.

        Generators must lie in S unless ``fractional`` is set.
        """
        gens = sorted(set(int(v) for v in gens))
        if not gens:
            raise InputError("an ideal needs at least one generator")
        if gens[0] < 0:
            raise InputError("ideal generators must be non-negative")
        if not fractional and any(v not in owner for v in gens):
            raise InputError(f"generators {[v for v in gens if v not in owner]} are not in {owner}")
        horizon = gens[0] + owner.conductor
        members = frozenset(n for n in range(horizon) if any(n - v in owner for v in gens if v <= n))
        return cls(owner, horizon, members)

    def __contains__(self, n: int) -> bool:
        return n >= self.start or n in self.members

    @property
    def min(self) -> int:
        return min(self.members) if self.members else self.start

    def elements_below(self, bound: int) -> List[int]:
        return [n for n in range(min(self.min, bound), bound) if n in self]

    @property
    def generators(self) -> Tuple[int, ...]:
        """Minimal generating set: elements not in E + (S minus 0)."""
        pos = [s for s in range(1, self.start + self.owner.multiplicity + 1) if s in self.owner]
        return tuple(e for e in self.elements_below(self.start + self.owner.multiplicity)
                     if not any(e - s in self for s in pos if s <= e))

    def _check(self, other: SemigroupIdeal) -> None:
        if self.owner != other.owner:
            raise InputError("ideals over different semigroups")

    def __add__(self, other: SemigroupIdeal) -> SemigroupIdeal:
        """Sumset E + F, the monomial model of the product of ideals."""
        self._check(other)
        horizon = self.start + other.start
        gens = self.generators
        members = frozenset(n for n in range(min(self.min + other.min, horizon), horizon)
                            if any(n - e in other for e in gens if e <= n - other.min))
        return SemigroupIdeal(self.owner, horizon, members)

    sumset = __add__

    def union(self, other: SemigroupIdeal) -> SemigroupIdeal:
        """E ∪ F, the model of the ideal sum."""
        self._check(other)
        horizon = min(self.start, other.start)
        members = frozenset(n for n in range(horizon) if n in self or n in other)
        return SemigroupIdeal(self.owner, horizon, members)

    def k_fold(self, k: int) -> SemigroupIdeal:
        """E + ... + E (k copies); k = 0 gives S."""
        if k < 0:
            raise InputError("k must be non-negative")
        out = self.owner.whole
        for _ in range(k):
            out = out + self
        return out

    power = k_fold

    def scale_shift(self, c: int) -> SemigroupIdeal:
        """E - c, the model of dividing by x^c."""
        if c > self.min:
            raise InputError(f"shift {c} exceeds min(E) = {self.min}")
        return SemigroupIdeal(self.owner, self.start - c, frozenset(m - c for m in self.members))

    def shift(self, c: int) -> SemigroupIdeal:
        """c + E."""
        if c < 0:
            return self.scale_shift(-c)
        return SemigroupIdeal(self.owner, self.start + c, frozenset(m + c for m in self.members))

    def issubset(self, other: SemigroupIdeal) -> bool:
        return self.start >= other.start and all(m in other for m in self.members) and \
            all(n in other for n in range(other.start, self.start) if n in self)

    def to_dict(self) -> dict:
        return {"generators": list(self.generators), "min": self.min, "start": self.start}

    def __repr__(self):
        return f"SemigroupIdeal({', '.join(map(str, self.generators))})"


def length_quotient(e: SemigroupIdeal, f: SemigroupIdeal) -> int:
    """l(E/F) = #(E minus F) for F inside E."""
    e._check(f)
    if not f.issubset(e):
        raise PreconditionError("F is not contained in E")
    top = max(e.start, f.start)
    return sum(1 for n in range(min(e.min, top), top) if n in e and n not in f)


@dataclass(frozen=True)
class Reduction:
    ideal: SemigroupIdeal
    reduction_number: int
    e0: int

    def to_dict(self) -> dict:
        return {"generator": self.ideal.min, "reduction_number": self.reduction_number, "e0": self.e0}


def minimal_reduction(e: SemigroupIdeal) -> Reduction:
    """J = min(E) + S and the least s with E^{s+1} = min(E) + E^s."""
    x = e.min
    j = SemigroupIdeal.from_gens(e.owner, [x])
    cap = x + e.owner.conductor + e.start + 2
    cur = e.owner.whole
    for s in range(cap + 1):
        nxt = cur + e
        if nxt == cur.shift(x):
            return Reduction(j, s, x)
        cur = nxt
    raise ResourceError("reduction number search did not terminate")


def blowup_module(i: SemigroupIdeal, module: SemigroupIdeal) -> SemigroupIdeal:
    """N = M[I/x] = (M + I^n) - n*x for n at the reduction number."""
    i._check(module)
    red = minimal_reduction(i)
    x, r = red.e0, red.reduction_number
    n_mod = (module + i.k_fold(r)).scale_shift(r * x)
    check = (module + i.k_fold(r + 1)).scale_shift((r + 1) * x)
    if n_mod != check:
        raise AssertionError("blow-up did not stabilise at the reduction number")
    return n_mod


def e1_via_blowup(i: SemigroupIdeal, module: Optional[SemigroupIdeal] = None) -> int:
    """e_1(I, M) as l(N/M) with N the blow-up module; M defaults to the ring."""
    module = module if module is not None else i.owner.whole
    return length_quotient(blowup_module(i, module), module)


# -- Hilbert functions ---------------------------------------------------------

def hs_value(i: SemigroupIdeal, module: SemigroupIdeal, n: int) -> int:
    """l(M / I^n M)."""
    if n == 0:
        return 0
    return length_quotient(module, module + i.k_fold(n))


def hk_value(k: SemigroupIdeal, i: SemigroupIdeal, n: int) -> int:
    """l(S / K I^n)."""
    return length_quotient(k.owner.whole, k + i.k_fold(n))


def fiber_value(k: SemigroupIdeal, i: SemigroupIdeal, n: int) -> int:
    """l(I^n / K I^n) as a direct set difference."""
    p = i.k_fold(n)
    return length_quotient(p, k + p)


def e_coeffs(i: SemigroupIdeal, module: Optional[SemigroupIdeal] = None, n_max: int = DEFAULT_NMAX) -> CoefficientVector:
    module = module if module is not None else i.owner.whole
    if i.min == 0:
        raise PreconditionError("I must be m-primary")
    return extract_coeffs(SequenceOracle(lambda n: hs_value(i, module, n)), 1, "e", n_max, kind="e")


def g_coeffs(k: SemigroupIdeal, i: SemigroupIdeal, n_max: int = DEFAULT_NMAX) -> CoefficientVector:
    if i.min == 0:
        raise PreconditionError("I must be m-primary")
    return extract_coeffs(SequenceOracle(lambda n: hk_value(k, i, n)), 1, "e", n_max, kind="g")


def check_identities(k: SemigroupIdeal, i: SemigroupIdeal, n_max: int = DEFAULT_NMAX) -> IdentityReport:
    """The coefficient identity suite in dimension one, fed by set arithmetic."""
    if i.min == 0:
        raise PreconditionError("I must be m-primary")
    colength = length_quotient(k.owner.whole, k)
    if colength == 0:
        raise PreconditionError("K must be a proper ideal")
    whole = k.owner.whole
    return identity_suite(
        SequenceOracle(lambda n: hs_value(i, whole, n)),
        SequenceOracle(lambda n: hk_value(k, i, n)),
        SequenceOracle(lambda n: fiber_value(k, i, n)),
        colength,
        1,
        n_max,
    )


def scaling_check(i: SemigroupIdeal, module: Optional[SemigroupIdeal] = None, k_max: int = 4,
                  n_max: int = DEFAULT_NMAX) -> List[dict]:
    """e_0(I^k) = k e_0(I) and e_1(I^k) = e_1(I) for k = 1..k_max."""
    base = e_coeffs(i, module, n_max)
    rows = []
    for k in range(1, k_max + 1):
        got = e_coeffs(i.k_fold(k), module, n_max)
        want = (k * base[0], base[1])
        rows.append({"k": k, "e0": got[0], "e1": got[1], "expected": list(want),
                     "holds": (got[0], got[1]) == want})
    return rows


# -- oversemigroups and Delta sets ---------------------------------------------

def _add_gap(b: NumericalSemigroup, h: int) -> Optional[NumericalSemigroup]:
    """B ∪ {h} when that set is a semigroup (h + b stays in B, 2h in B)."""
    if h in b or 2 * h not in b:
        return None
    if any((h + g) in b._gapset for g in range(1, b.conductor + 1) if g in b):
        return None
    return NumericalSemigroup.from_gaps(g for g in b.gaps if g != h)


def oversemigroups(s: NumericalSemigroup, cap: int = DEFAULT_GAP_CAP) -> List[NumericalSemigroup]:
    """All semigroups B with S ⊆ B ⊆ N, most gaps first.

    Every oversemigroup T of B other than B contains max(T minus B), and
    B plus that element is already closed, so single-gap additions from S
    reach each oversemigroup.
    """
    if len(s.gaps) > cap:
        raise ResourceError(f"{len(s.gaps)} gaps exceeds the enumeration cap {cap}")
    seen = {s.gaps: s}
    queue = deque([s])
    while queue:
        b = queue.popleft()
        for h in b.gaps:
            nb = _add_gap(b, h)
            if nb is not None and nb.gaps not in seen:
                seen[nb.gaps] = nb
                queue.append(nb)
    return sorted(seen.values(), key=lambda b: (-len(b.gaps), b.gaps))


def oversemigroups_bruteforce(s: NumericalSemigroup, cap: int = 14) -> List[NumericalSemigroup]:
    """Reference enumeration over every subset of gaps(S)."""
    if len(s.gaps) > cap:
        raise ResourceError(f"{len(s.gaps)} gaps exceeds the brute-force cap {cap}")
    out = []
    gaps = s.gaps
    for size in range(len(gaps) + 1):
        for added in combinations(gaps, size):
            try:
                out.append(NumericalSemigroup.from_gaps(set(gaps) - set(added)))
            except InputError:
                pass
    return sorted(out, key=lambda b: (-len(b.gaps), b.gaps))


@dataclass
class DeltaEntry:
    oversemigroup: NumericalSemigroup
    value: int
    witness_ideal: SemigroupIdeal
    g1: int

    def to_dict(self) -> dict:
        return {
            "oversemigroup": list(self.oversemigroup.generators),
            "gaps": list(self.oversemigroup.gaps),
            "value": self.value,
            "witness_ideal": list(self.witness_ideal.generators),
            "g1": self.g1,
        }


@dataclass
class DeltaReport:
    semigroup: NumericalSemigroup
    k: SemigroupIdeal
    entries: List[DeltaEntry]
    delta_k: List[int]
    delta_r: List[int]
    sup_expected: int
    checks: Dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "semigroup": self.semigroup.to_dict(),
            "k": self.k.to_dict(),
            "delta_k": self.delta_k,
            "delta_r": self.delta_r,
            "sup_delta_k": max(self.delta_k),
            "sup_expected": self.sup_expected,
            "entries": [e.to_dict() for e in self.entries],
            "checks": self.checks,
            "ok": self.ok,
        }


def delta_sets(s: NumericalSemigroup, k: SemigroupIdeal, cap: int = DEFAULT_GAP_CAP,
               n_max: int = DEFAULT_NMAX) -> DeltaReport:
    """Delta^K over all oversemigroups, with witnesses and the g_1 cross-check.

    For each B the value l((K+B)/K) - l(S/K) is compared with g_1^K(I) read
    off by interpolation for the witness ideal I = c + B, c >= conductor(S).
    """
    if k.owner != s:
        raise InputError("K lives over a different semigroup")
    if k.min == 0:
        raise PreconditionError("K must be m-primary")
    colength = length_quotient(s.whole, k)
    c = max(s.conductor, 1)
    entries = []
    for b in oversemigroups(s, cap):
        bm = s.as_module(b)
        value = length_quotient(k + bm, k) - colength
        witness = bm.shift(c)
        g1 = g_coeffs(k, witness, n_max)[1]
        entries.append(DeltaEntry(b, value, witness, g1))
    nat = s.as_module(NumericalSemigroup([1]))
    sup_expected = length_quotient(k + nat, k) - colength
    delta_k = sorted({e.value for e in entries})
    delta_r = sorted({len(s.gaps) - len(e.oversemigroup.gaps) for e in entries})
    checks = {
        "sup_delta_k": max(delta_k) == sup_expected,
        "min_delta_r_zero": min(delta_r) == 0,
        "sup_delta_r_gaps": max(delta_r) == len(s.gaps),
        "g1_bridge": all(e.g1 == e.value for e in entries),
    }
    return DeltaReport(s, k, entries, delta_k, delta_r, sup_expected, checks)
