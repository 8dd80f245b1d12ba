"""Hilbert-Samuel, K-relative and fiber functions and their coefficient vectors.

Conventions for n = 0: ``hs_value = 0``, ``hk_value = fiber_value = l(R/K)``.
Fits only ever look at n >= 1.

Coefficients live in the binomial bases

    e, g:  P(n) = sum_i (-1)^i c_i binom(n + deg - i - 1, deg - i)
    f:     P(n) = sum_i (-1)^i c_i binom(n + deg - i,     deg - i)

both of which are unimodular over the integers, so fitting is exact integer
arithmetic on forward differences.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import Terms, leading
from .errors import IdentityViolation, InputError, PostulationError, PreconditionError
from .groebner import INFINITE, Ideal, reduce_terms

DEFAULT_NMAX = 40
BASIS_SHIFT = {"e": -1, "g": -1, "f": 0}


def binom(n: int, k: int) -> int:
    """Polynomial binomial coefficient n(n-1)...(n-k+1)/k!, valid for negative n."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= n - i
    return num // math.factorial(k)


def basis_value(basis: str, n: int, degree: int, i: int) -> int:
    return binom(n + BASIS_SHIFT[basis] + degree - i, degree - i)


class SequenceOracle:
    """Memoised integer sequence n -> h(n)."""

    def __init__(self, func: Callable[[int], int], name: str = "h"):
        self.func = func
        self.name = name
        self.values: Dict[int, int] = {}

    def __call__(self, n: int) -> int:
        if n not in self.values:
            self.values[n] = self.func(n)
        return self.values[n]


@dataclass(frozen=True)
class CoefficientVector:
    """Integer coefficients of an eventually-polynomial function.

    ``postulation`` is the least n from which the fit was verified and
    ``window`` the closed range of n checked exactly.
    """

    kind: str
    values: Tuple[int, ...]
    degree: int
    postulation: int
    window: Tuple[int, int]
    basis: str = "e"

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def evaluate(self, n: int) -> int:
        return sum((-1) ** i * c * basis_value(self.basis, n, self.degree, i) for i, c in enumerate(self.values))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "values": list(self.values),
            "degree": self.degree,
            "postulation": self.postulation,
            "window": list(self.window),
        }


def _forward_difference(vals: Sequence[int], k: int) -> int:
    return sum((-1) ** (k - j) * binom(k, j) * vals[j] for j in range(k + 1))


def fit_at(h: Callable[[int], int], start: int, degree: int, basis: str = "e") -> Tuple[int, ...]:
    """Coefficients of the unique basis polynomial through h(start..start+degree)."""
    vals = [h(start + k) for k in range(degree + 1)]
    shift = BASIS_SHIFT[basis]
    coeffs: List[int] = []
    for j in range(degree + 1):
        diff = _forward_difference(vals, degree - j)
        acc = sum((-1) ** i * c * binom(start + shift + degree - i, j - i) for i, c in enumerate(coeffs))
        coeffs.append((-1) ** j * (diff - acc))
    return tuple(coeffs)


def extract_coeffs(
    h: Callable[[int], int],
    degree: int,
    basis: str = "e",
    n_max: int = DEFAULT_NMAX,
    kind: Optional[str] = None,
    start: int = 1,
) -> CoefficientVector:
    """Fit h in the given basis and verify on degree+3 further points.

    Scans start points N = start, start+1, ...; the first N whose fit
    reproduces h on [N, N + 2*degree + 3] is the postulation.
    """
    if degree < 0:
        raise InputError("degree must be non-negative")
    if basis not in BASIS_SHIFT:
        raise InputError(f"unknown basis {basis!r}")
    span = 2 * degree + 3
    for N in range(start, n_max + 1):
        if N + span > n_max:
            break
        coeffs = fit_at(h, N, degree, basis)
        vec = CoefficientVector(kind or basis, coeffs, degree, N, (N, N + span), basis)
        if all(vec.evaluate(n) == h(n) for n in range(N, N + span + 1)):
            return vec
    raise PostulationError(f"postulation not reached before n_max={n_max}", n_max)


# -- modules -------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleSpec:
    """The module M: the ring R, a cyclic quotient R/A, or an m-primary ideal K."""

    kind: str
    ideal: Optional[Ideal] = None

    @classmethod
    def ring(cls) -> ModuleSpec:
        return cls("ring")

    @classmethod
    def quotient(cls, a: Ideal) -> ModuleSpec:
        return cls("quotient", a)

    @classmethod
    def of_ideal(cls, k: Ideal) -> ModuleSpec:
        if not k.is_m_primary:
            raise PreconditionError("ideal modules must be m-primary")
        return cls("ideal", k)

    def dim(self, ring) -> int:
        if self.kind == "quotient":
            return self.ideal.krull_dim()
        return ring.dim

    def label(self) -> str:
        if self.kind == "ring":
            return "R"
        gens = ", ".join(str(g) for g in self.ideal.generators)
        return f"R/({gens})" if self.kind == "quotient" else f"({gens})"


def _require_m_primary(*ideals: Ideal) -> None:
    for q in ideals:
        if not q.is_m_primary:
            raise PreconditionError(f"{q} is not m-primary")


@functools.lru_cache(maxsize=4096)
def _product_length(k: Ideal, q: Ideal, n: int):
    return (k * q.power(n)).length()


def hs_value(q: Ideal, module: ModuleSpec, n: int) -> int:
    """l(M / Q^n M)."""
    if n < 0:
        raise InputError("n must be non-negative")
    _require_m_primary(q)
    if n == 0:
        return 0
    if module.kind == "ring":
        return q.power(n).length()
    if module.kind == "quotient":
        return (q.power(n) + module.ideal).length()
    k = module.ideal
    return _product_length(k, q, n) - k.length()


def hk_value(k: Ideal, q: Ideal, n: int) -> int:
    """l(R / K Q^n)."""
    if n < 0:
        raise InputError("n must be non-negative")
    _require_m_primary(k, q)
    if n == 0:
        return k.length()
    return _product_length(k, q, n)


def rank_mod_p(rows: Sequence[Terms], order, p: int) -> int:
    """Rank of sparse row vectors over F_p (columns indexed by monomials)."""
    pivots: Dict = {}
    basis = []
    for row in rows:
        r = dict(row)
        while r:
            lm = leading(r, order)
            piv = pivots.get(lm)
            if piv is None:
                inv = pow(r[lm], -1, p)
                r = {m: (c * inv) % p for m, c in r.items()}
                pivots[lm] = r
                basis.append(r)
                break
            c = r[lm]
            for m, v in piv.items():
                nv = (r.get(m, 0) - c * v) % p
                if nv:
                    r[m] = nv
                else:
                    r.pop(m, None)
    return len(basis)


def fiber_value(k: Ideal, q: Ideal, n: int) -> int:
    """l(Q^n / K Q^n), as the F_p-rank of Q^n modulo K Q^n.

    Q^n/KQ^n is spanned by u*g for g a generator of Q^n and u a standard
    monomial of R/K; the rank of their normal forms modulo KQ^n is computed
    without reference to l(R/Q^n), so additivity with hs/hk is a real check.
    """
    if n < 0:
        raise InputError("n must be non-negative")
    _require_m_primary(k, q)
    ring = q.ring
    p = ring.characteristic
    std_k = k.standard_monomials()
    qn = q.power(n) if n else ring.ideal(1)
    kqn = k * q.power(n) if n else k
    kqn._gb_terms()
    rows = []
    for g in qn.generators:
        for u in std_k:
            f = {tuple(a + b for a, b in zip(m, u)): c for m, c in g.terms.items()}
            f = reduce_terms(f, kqn._basis, ring.order, p)
            if f:
                rows.append(f)
    return rank_mod_p(rows, ring.order, p)


# -- coefficient vectors -------------------------------------------------------

def hs_oracle(q: Ideal, module: ModuleSpec) -> SequenceOracle:
    return SequenceOracle(lambda n: hs_value(q, module, n), "hs")


def hk_oracle(k: Ideal, q: Ideal) -> SequenceOracle:
    return SequenceOracle(lambda n: hk_value(k, q, n), "hk")


def e_coeffs(q: Ideal, module: ModuleSpec | None = None, n_max: int = DEFAULT_NMAX) -> CoefficientVector:
    """e_0..e_r(Q, M) with r = dim M."""
    module = module or ModuleSpec.ring()
    _require_m_primary(q)
    r = module.dim(q.ring)
    return extract_coeffs(hs_oracle(q, module), r, "e", n_max, kind="e")


def g_coeffs(k: Ideal, q: Ideal, n_max: int = DEFAULT_NMAX) -> CoefficientVector:
    """g_0..g_d of n -> l(R/KQ^n)."""
    _require_m_primary(k, q)
    return extract_coeffs(hk_oracle(k, q), q.ring.dim, "e", n_max, kind="g")


def f_coeffs(k: Ideal, q: Ideal, n_max: int = DEFAULT_NMAX) -> CoefficientVector:
    """f_0..f_{d-1} of n -> l(Q^n/KQ^n)."""
    _require_m_primary(k, q)
    d = q.ring.dim
    if d < 1:
        raise PreconditionError("fiber coefficients need dim R >= 1")
    return extract_coeffs(SequenceOracle(lambda n: fiber_value(k, q, n)), d - 1, "f", n_max, kind="f")


# -- identities ----------------------------------------------------------------

@dataclass
class IdentityCheck:
    name: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


@dataclass
class IdentityReport:
    dimension: int
    colength_k: int
    e_ring: CoefficientVector
    e_k: CoefficientVector
    g: CoefficientVector
    f: CoefficientVector
    checks: List[IdentityCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> List[IdentityCheck]:
        return [c for c in self.checks if not c.holds]

    def raise_on_failure(self) -> None:
        bad = self.failures()
        if bad:
            raise IdentityViolation("; ".join(f"{c.name}: {c.lhs} != {c.rhs}" for c in bad))

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "colength_k": self.colength_k,
            "e_ring": self.e_ring.to_dict(),
            "e_k": self.e_k.to_dict(),
            "g": self.g.to_dict(),
            "f": self.f.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
            "ok": self.ok,
        }


def identity_suite(
    hs: Callable[[int], int],
    hk: Callable[[int], int],
    fiber: Callable[[int], int],
    colength_k: int,
    d: int,
    n_max: int = DEFAULT_NMAX,
) -> IdentityReport:
    """Fit e(Q,R), e(Q,K), g^K(Q), f^K(Q) from value oracles and compare them.

    Backend-agnostic: the polynomial engine and the semigroup lab both feed
    their own oracles in here.
    """
    if d < 1:
        raise PreconditionError("identities need dim R >= 1")
    e_ring = extract_coeffs(hs, d, "e", n_max, kind="e")
    e_k = extract_coeffs(lambda n: hk(n) - colength_k, d, "e", n_max, kind="e")
    g = extract_coeffs(hk, d, "e", n_max, kind="g")
    f = extract_coeffs(fiber, d - 1, "f", n_max, kind="f")
    checks = [
        IdentityCheck("g_0 = e_0(Q,R)", g[0], e_ring[0]),
        IdentityCheck("e_0(Q,K) = e_0(Q,R)", e_k[0], e_ring[0]),
    ]
    for i in range(1, d):
        checks.append(IdentityCheck(f"g_{i} = e_{i}(Q,K)", g[i], e_k[i]))
    checks.append(IdentityCheck(f"g_{d} = e_{d}(Q,K) + (-1)^{d} l(R/K)", g[d], e_k[d] + (-1) ** d * colength_k))
    for i in range(d):
        rhs = e_ring[i + 1] - g[i + 1] + e_ring[i] - g[i]
        checks.append(IdentityCheck(f"f_{i} = e_{i + 1}(Q,R) - g_{i + 1} + e_{i}(Q,R) - g_{i}", f[i], rhs))
    lo = min(e_ring.window[0], g.window[0], f.window[0])
    hi = max(e_ring.window[1], g.window[1], f.window[1])
    for n in range(lo, hi + 1):
        checks.append(IdentityCheck(f"hk({n}) = hs({n}) + fiber({n})", hk(n), hs(n) + fiber(n)))
    return IdentityReport(d, colength_k, e_ring, e_k, g, f, checks)


def check_identities(k: Ideal, q: Ideal, n_max: int = DEFAULT_NMAX) -> IdentityReport:
    """Verify the K-relative/fiber/Hilbert-Samuel coefficient identities for (K, Q)."""
    ring = q.ring
    _require_m_primary(k, q)
    if not q.is_parameter:
        raise PreconditionError(f"{q} is not a parameter ideal")
    colength = k.length()
    if colength == 0:
        raise PreconditionError("K must be a proper ideal")
    hs = hs_oracle(q, ModuleSpec.ring())
    hk = hk_oracle(k, q)
    fib = SequenceOracle(lambda n: fiber_value(k, q, n), "fiber")
    return identity_suite(hs, hk, fib, colength, ring.dim, n_max)


# -- I(Q;M) --------------------------------------------------------------------

@dataclass(frozen=True)
class IInvariant:
    """I(Q;M) = l(M/QM) - e_0(Q,M)."""

    value: int
    colength: int
    e0: int

    def to_dict(self) -> dict:
        return {"value": self.value, "colength": self.colength, "e0": self.e0}


@dataclass
class IInvariantRecord:
    samples: List[Tuple[str, int]] = field(default_factory=list)

    def add(self, label: str, value: int) -> None:
        self.samples.append((label, value))

    @property
    def estimate(self) -> Optional[int]:
        """Largest observed I(Q;M): a lower bound for I(M)."""
        return max((v for _, v in self.samples), default=None)


def require_parameter_for(q: Ideal, module: ModuleSpec) -> int:
    """Check that Q is a parameter ideal for M; returns dim M."""
    r = module.dim(q.ring)
    if len(q.generators) != r:
        raise PreconditionError(f"{q} has {len(q.generators)} generators but dim M = {r}")
    if hs_value(q, module, 1) == INFINITE:
        raise PreconditionError(f"l(M/QM) is infinite for {q}")
    return r


def i_invariant(q: Ideal, module: ModuleSpec | None = None, n_max: int = DEFAULT_NMAX) -> IInvariant:
    module = module or ModuleSpec.ring()
    _require_m_primary(q)
    require_parameter_for(q, module)
    colength = hs_value(q, module, 1)
    e0 = e_coeffs(q, module, n_max)[0]
    return IInvariant(colength - e0, colength, e0)


# -- closed formulas for standard parameter ideals -----------------------------

def standard_coeff_prediction(lengths: Sequence[int], r: int, i: int, target: str = "e",
                              colength_k: Optional[int] = None) -> int:
    """Predicted e_i (or g_i^K) for a standard parameter ideal.

    ``lengths[j]`` is l(H^j_m) for j = 0..r-1 (of M for target "e", of K for
    target "g").  For g_d the colength l(R/K) is also required.
    """
    if len(lengths) != r:
        raise InputError(f"need {r} local cohomology lengths, got {len(lengths)}")
    if any(v < 0 for v in lengths):
        raise InputError("local cohomology lengths must be non-negative")
    if not 1 <= i <= r:
        raise InputError(f"index i must lie in 1..{r}")
    if target not in ("e", "g"):
        raise InputError(f"unknown target {target!r}")
    if i < r:
        return (-1) ** i * sum(binom(r - i - 1, j - 1) * lengths[j] for j in range(1, r - i + 1))
    if target == "e":
        return (-1) ** r * lengths[0]
    if colength_k is None or colength_k < 0:
        raise InputError("g_d prediction needs l(R/K)")
    return (-1) ** r * (lengths[0] + colength_k)
