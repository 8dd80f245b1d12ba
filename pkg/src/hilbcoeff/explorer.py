"""Seeded sampling of parameter ideals and empirical sweeps over them.

Sampled family: Q = (l_1^{a_1}, ..., l_d^{a_d}) with l_j linear forms whose
coefficients are drawn from {0} ∪ pool and exponents a_j drawn from the
power range.  Draws that are not parameter ideals are redrawn.  Each sample
index has its own RNG stream derived from the master seed, so sample k does
not depend on how many retries sample k-1 needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import HilbCoeffError, InputError, PostulationError, PreconditionError, ResourceError
from .groebner import Ideal, Ring
from .hilbert import (
    DEFAULT_NMAX,
    ModuleSpec,
    binom,
    e_coeffs,
    g_coeffs,
    hs_value,
    i_invariant,
)


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    samples: int = 20
    pool: Tuple[int, ...] = (1, 2, 3)
    power_range: Tuple[int, int] = (1, 2)
    require_subset_of_k: bool = False
    max_retries: int = 50

    def __post_init__(self):
        if self.samples < 0:
            raise InputError("sample count must be non-negative")
        lo, hi = self.power_range
        if not 1 <= lo <= hi:
            raise InputError(f"bad power range {self.power_range}")
        if not self.pool:
            raise InputError("coefficient pool is empty")

    def family(self) -> str:
        lo, hi = self.power_range
        return f"powers l^a of linear forms, coefficients in {{0, {', '.join(map(str, self.pool))}}}, a in [{lo}, {hi}]"

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "pool": list(self.pool),
            "power_range": list(self.power_range),
            "require_subset_of_k": self.require_subset_of_k,
            "max_retries": self.max_retries,
        }


@dataclass
class Sample:
    index: int
    ideal: Ideal
    attempts: int = 1

    def label(self) -> List[str]:
        return [str(g) for g in self.ideal.generators]


def _rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}/{index}")


def _draw(ring: Ring, cfg: SamplerConfig, rng: random.Random) -> Ideal:
    d = ring.dim
    choices = (0,) + tuple(cfg.pool)
    gens = []
    for _ in range(d):
        coeffs = [rng.choice(choices) for _ in range(ring.nvars)]
        form = sum((c * x for c, x in zip(coeffs, ring.gens())), ring.poly(0))
        gens.append(form ** rng.randint(*cfg.power_range))
    return ring.ideal(*gens)


def _is_valid(q: Ideal, d: int, k: Optional[Ideal]) -> bool:
    if len(q.generators) != d:
        return False
    if not q.is_m_primary:
        return False
    if k is not None and not all(g in k for g in q.generators):
        return False
    return True


def sample_parameter_ideals(ring: Ring, cfg: SamplerConfig, k: Optional[Ideal] = None) -> List[Sample]:
    """cfg.samples parameter ideals from the documented family.

    With ``cfg.require_subset_of_k`` every generator must also lie in K.
    """
    d = ring.dim
    if d < 1:
        raise PreconditionError("a ring of dimension 0 has no parameter ideals to sample")
    if cfg.require_subset_of_k and k is None:
        raise InputError("require_subset_of_k needs K")
    target = k if cfg.require_subset_of_k else None
    out = []
    for index in range(cfg.samples):
        rng = _rng(cfg.seed, index)
        for attempt in range(1, cfg.max_retries + 1):
            q = _draw(ring, cfg, rng)
            if _is_valid(q, d, target):
                out.append(Sample(index, q, attempt))
                break
        else:
            raise ResourceError(f"sample {index}: no parameter ideal after {cfg.max_retries} draws")
    return out


def explicit_samples(ideals: Sequence[Ideal]) -> List[Sample]:
    return [Sample(i, q) for i, q in enumerate(ideals)]


# -- reports -------------------------------------------------------------------

@dataclass
class ExplorationReport:
    target: str
    records: List[dict] = field(default_factory=list)
    violations: List[dict] = field(default_factory=list)
    failures: List[dict] = field(default_factory=list)
    seed: Optional[int] = None
    family: str = "explicit ideals"
    extra: Dict = field(default_factory=dict)

    @property
    def values(self) -> List[int]:
        return [r["value"] for r in self.records if r.get("value") is not None]

    @property
    def observed(self) -> List[int]:
        return sorted(set(self.values))

    @property
    def classification(self) -> str:
        """Window-relative label: constant, growing-in-window or bounded-in-window."""
        vals = self.values
        if not vals:
            return "empty"
        if len(set(vals)) == 1:
            return "constant"
        mags = [abs(v) for v in vals]
        if all(a < b for a, b in zip(mags, mags[1:])):
            return "growing-in-window"
        return "bounded-in-window"

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "observed": self.observed,
            "classification": self.classification,
            "records": self.records,
            "violations": self.violations,
            "failures": self.failures,
            "seed": self.seed,
            "family": self.family,
            "extra": self.extra,
        }


def _resolve(ring: Ring, cfg: Optional[SamplerConfig], ideals: Optional[Sequence[Ideal]],
             k: Optional[Ideal] = None) -> Tuple[List[Sample], Optional[int], str]:
    if ideals is not None:
        return explicit_samples(ideals), None, "explicit ideals"
    cfg = cfg or SamplerConfig()
    return sample_parameter_ideals(ring, cfg, k), cfg.seed, cfg.family()


def _sweep(report: ExplorationReport, samples: List[Sample], fn: Callable[[Sample], dict]) -> ExplorationReport:
    for s in samples:
        rec = {"index": s.index, "q": s.label()}
        try:
            rec.update(fn(s))
        except (PostulationError, ResourceError) as exc:
            report.failures.append({**rec, "error": type(exc).__name__, "message": str(exc)})
            continue
        report.records.append(rec)
        if rec.pop("violated", False):
            report.violations.append(rec)
    return report


# -- sweeps --------------------------------------------------------------------

def explore_lambda(ring: Ring, k: Optional[Ideal], i: int, cfg: Optional[SamplerConfig] = None,
                   target: str = "g", module: Optional[ModuleSpec] = None,
                   ideals: Optional[Sequence[Ideal]] = None, n_max: int = DEFAULT_NMAX) -> ExplorationReport:
    """Observed values of g_i^K(Q) (target "g") or e_i(Q,M) (target "e")."""
    d = ring.dim
    module = module or ModuleSpec.ring()
    top = d if target == "g" else module.dim(ring)
    if not 1 <= i <= top:
        raise InputError(f"index i must lie in 1..{top}")
    if target == "g":
        if k is None or not k.is_m_primary:
            raise PreconditionError("K must be an m-primary ideal")
        cfg_subset = cfg is not None and cfg.require_subset_of_k
        name = f"{'delta' if cfg_subset else 'Lambda'}_{i}^K"
    elif target == "e":
        name = f"Lambda_{i}({module.label()})"
    else:
        raise InputError(f"unknown target {target!r}")
    samples, seed, family = _resolve(ring, cfg, ideals, k)
    report = ExplorationReport(name, seed=seed, family=family)

    def one(s: Sample) -> dict:
        q = s.ideal
        e_vec = e_coeffs(q, module, n_max)
        rec = {"e": list(e_vec.values)}
        if target == "g":
            g_vec = g_coeffs(k, q, n_max)
            rec["g"] = list(g_vec.values)
            rec["value"] = g_vec[i]
        else:
            rec["value"] = e_vec[i]
        return rec

    return _sweep(report, samples, one)


def explore_delta(ring: Ring, k: Ideal, i: int, cfg: Optional[SamplerConfig] = None,
                  n_max: int = DEFAULT_NMAX) -> ExplorationReport:
    """delta_i^K: like Lambda_i^K but restricted to parameter ideals inside K."""
    cfg = cfg or SamplerConfig()
    cfg = SamplerConfig(cfg.seed, cfg.samples, cfg.pool, cfg.power_range, True, cfg.max_retries)
    return explore_lambda(ring, k, i, cfg, "g", n_max=n_max)


def g1_lower_bound(d: int, lh: Sequence[int], colength_k: int) -> int:
    """-sum_{i=1}^{d-1} binom(d-2, i-1) l(H^i) - l(R/K); lh[j] is l(H^{j+1})."""
    if len(lh) != max(d - 1, 0):
        raise InputError(f"need {d - 1} lengths l(H^1)..l(H^{d - 1}), got {len(lh)}")
    if any(v < 0 for v in lh):
        raise InputError("local cohomology lengths must be non-negative")
    return -sum(binom(d - 2, i - 1) * lh[i - 1] for i in range(1, d)) - colength_k


def check_g1_bounds(ring: Ring, k: Ideal, lh: Sequence[int], cfg: Optional[SamplerConfig] = None,
                    ideals: Optional[Sequence[Ideal]] = None, n_max: int = DEFAULT_NMAX) -> ExplorationReport:
    """lower <= g_1^K(Q) <= 0 for each sample (ring assumed generalized CM)."""
    d = ring.dim
    colength = k.length()
    lower = g1_lower_bound(d, lh, colength)
    samples, seed, family = _resolve(ring, cfg, ideals)
    report = ExplorationReport("g_1^K bounds", seed=seed, family=family,
                               extra={"lower": lower, "upper": 0, "lh": list(lh)})

    def one(s: Sample) -> dict:
        g1 = g_coeffs(k, s.ideal, n_max)[1]
        return {"value": g1, "violated": not lower <= g1 <= 0}

    return _sweep(report, samples, one)


def check_growth_envelope(q: Ideal, module: Optional[ModuleSpec], i_m: int, n_max: int = 6,
                          nmax_fit: int = DEFAULT_NMAX) -> ExplorationReport:
    """-r C I <= l(M/Q^{n+1}M) - e_0 binom(n+r, r) <= C I with C = binom(n+r-1, r-1)."""
    module = module or ModuleSpec.ring()
    r = module.dim(q.ring)
    e0 = e_coeffs(q, module, nmax_fit)[0]
    report = ExplorationReport("growth envelope", extra={"e0": e0, "I_M": i_m, "r": r,
                                                         "q": [str(g) for g in q.generators]})
    for n in range(n_max + 1):
        diff = hs_value(q, module, n + 1) - e0 * binom(n + r, r)
        c = binom(n + r - 1, r - 1)
        lo, hi = -r * c * i_m, c * i_m
        rec = {"n": n, "value": diff, "lower": lo, "upper": hi}
        report.records.append(rec)
        if not lo <= diff <= hi:
            report.violations.append(rec)
    return report


def check_e1_bound(ring: Ring, module: Optional[ModuleSpec], i_m: int, cfg: Optional[SamplerConfig] = None,
                   ideals: Optional[Sequence[Ideal]] = None, kappa: Optional[int] = None,
                   n_max: int = DEFAULT_NMAX) -> ExplorationReport:
    """|e_1(Q,M)| <= I(M); with a supplied regularity kappa also
    |e_i| <= (r+1) 2^{i-2} (kappa+1)^{i-1} I(M) for 2 <= i <= r."""
    module = module or ModuleSpec.ring()
    r = module.dim(ring)
    samples, seed, family = _resolve(ring, cfg, ideals)
    report = ExplorationReport("|e_1| <= I(M)", seed=seed, family=family, extra={"I_M": i_m, "kappa": kappa})

    def one(s: Sample) -> dict:
        e = e_coeffs(s.ideal, module, n_max)
        bad = [1] if abs(e[1]) > i_m else []
        if kappa is not None:
            for i in range(2, r + 1):
                bound = (r + 1) * 2 ** (i - 2) * (kappa + 1) ** (i - 1) * i_m
                if abs(e[i]) > bound:
                    bad.append(i)
        return {"value": e[1], "e": list(e.values), "violated": bool(bad), "failed_indices": bad}

    return _sweep(report, samples, one)


def scaling_prediction(e0: int, e1: int, r: int, k: int) -> Tuple[int, Fraction]:
    """Closed forms for (e_0, e_1)(I^k) given (e_0, e_1)(I) and r = dim M."""
    p0 = k ** r * e0
    p1 = Fraction(r - 1, 2) * e0 * k ** r + Fraction(2 * e1 - (r - 1) * e0, 2) * k ** (r - 1)
    return p0, p1


def power_scaling_check(i_ideal: Ideal, module: Optional[ModuleSpec] = None, k_max: int = 3,
                        n_max: int = DEFAULT_NMAX) -> ExplorationReport:
    """Compute (e_0, e_1)(I^k) by interpolation per k and compare with the closed forms."""
    module = module or ModuleSpec.ring()
    r = module.dim(i_ideal.ring)
    base = e_coeffs(i_ideal, module, n_max)
    report = ExplorationReport("power scaling", extra={"e0": base[0], "e1": base[1], "r": r})
    for k in range(1, k_max + 1):
        got = e_coeffs(i_ideal.power(k), module, n_max)
        p0, p1 = scaling_prediction(base[0], base[1], r, k)
        rec = {"k": k, "e0": got[0], "e1": got[1], "predicted": [p0, str(p1)], "value": got[1]}
        report.records.append(rec)
        if (got[0], Fraction(got[1])) != (p0, p1):
            report.violations.append(rec)
    return report


def buchsbaum_probe(ring: Ring, k: Ideal, cfg: Optional[SamplerConfig] = None,
                    ideals: Optional[Sequence[Ideal]] = None, n_max: int = DEFAULT_NMAX) -> ExplorationReport:
    """Per sample: I(Q;R), I(Q;m), l(R/QK), l(Q/QK) and three diagnostics.

    The diagnostics (I(Q;R) constant, I(Q;m) - I(Q;R) = d - 1,
    l(Q/QK) = d l(R/K)) are observations, not assertions.
    """
    d = ring.dim
    colength = k.length()
    m_mod = ModuleSpec.of_ideal(ring.maximal_ideal)
    samples, seed, family = _resolve(ring, cfg, ideals)
    report = ExplorationReport("buchsbaum probe", seed=seed, family=family)

    def one(s: Sample) -> dict:
        q = s.ideal
        i_r = i_invariant(q, ModuleSpec.ring(), n_max)
        i_m = i_invariant(q, m_mod, n_max)
        qk = (q * k).length()
        return {
            "value": i_r.value,
            "I_R": i_r.value,
            "I_m": i_m.value,
            "e0": i_r.e0,
            "l_R_QK": qk,
            "l_Q_QK": qk - i_r.colength,
        }

    _sweep(report, samples, one)
    recs = report.records
    report.extra = {
        "d": d,
        "l_R_K": colength,
        "I_R_constant": len({r["I_R"] for r in recs}) <= 1,
        "I_gap_matches": sum(r["I_m"] - r["I_R"] == d - 1 for r in recs),
        "l_Q_QK_matches": sum(r["l_Q_QK"] == d * colength for r in recs),
        "count": len(recs),
    }
    return report
