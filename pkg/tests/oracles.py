"""Reference computations that share no code with the package.

Every routine here is deliberately naive: dense linear algebra degree by
degree, lattice-point counting, explicit integer sets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from typing import Dict, Iterable, List, Sequence, Set, Tuple

Mono = Tuple[int, ...]


def monomials_of_degree(nvars: int, t: int) -> List[Mono]:
    if nvars == 1:
        return [(t,)]
    out = []
    for a in range(t, -1, -1):
        for rest in monomials_of_degree(nvars - 1, t - a):
            out.append((a,) + rest)
    return out


def _rank(rows: List[Dict[Mono, int]], p: int) -> int:
    cols = sorted({m for r in rows for m in r})
    index = {m: i for i, m in enumerate(cols)}
    mat = [[0] * len(cols) for _ in rows]
    for i, r in enumerate(rows):
        for m, c in r.items():
            mat[i][index[m]] = c % p
    rank = 0
    for col in range(len(cols)):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def poly_mul(f: Dict[Mono, int], g: Dict[Mono, int], p: int) -> Dict[Mono, int]:
    out: Dict[Mono, int] = {}
    for a, c in f.items():
        for b, d in g.items():
            m = tuple(x + y for x, y in zip(a, b))
            out[m] = (out.get(m, 0) + c * d) % p
    return {m: c for m, c in out.items() if c}


def graded_length(gens: Sequence[Dict[Mono, int]], nvars: int, p: int = 32003, max_degree: int = 60) -> int:
    """dim_k k[x]/(gens) for homogeneous gens, summing codimensions degree by degree."""
    total = 0
    for t in range(max_degree + 1):
        basis = monomials_of_degree(nvars, t)
        rows = []
        for g in gens:
            dg = sum(next(iter(g)))
            if dg <= t:
                for u in monomials_of_degree(nvars, t - dg):
                    rows.append({tuple(a + b for a, b in zip(m, u)): c for m, c in g.items()})
        codim = len(basis) - (_rank(rows, p) if rows else 0)
        total += codim
        if codim == 0:
            return total
    raise RuntimeError("quotient did not vanish below max_degree")


def linear(coeffs: Sequence[int]) -> Dict[Mono, int]:
    n = len(coeffs)
    return {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs) if c}


def mono(exps: Sequence[int]) -> Dict[Mono, int]:
    return {tuple(exps): 1}


def ideal_product(a: Sequence[Dict[Mono, int]], b: Sequence[Dict[Mono, int]], p: int) -> List[Dict[Mono, int]]:
    return [poly_mul(f, g, p) for f in a for g in b]


def ideal_power(a: Sequence[Dict[Mono, int]], k: int, nvars: int, p: int) -> List[Dict[Mono, int]]:
    out = [mono((0,) * nvars)]
    for _ in range(k):
        out = ideal_product(out, a, p)
    return out


def staircase_count(gens: Iterable[Mono], nvars: int) -> int:
    """Monomials outside a monomial ideal, counted inside the box cut out by pure powers."""
    gens = list(gens)
    bounds = []
    for i in range(nvars):
        pure = [g[i] for g in gens if all(g[j] == 0 for j in range(nvars) if j != i)]
        bounds.append(min(pure))
    return sum(1 for m in product(*(range(b) for b in bounds))
               if not any(all(x >= y for x, y in zip(m, g)) for g in gens))


def fit_binomial(values: Dict[int, int], degree: int, shift: int = -1) -> List[int]:
    """Solve sum_i (-1)^i c_i binom(n + shift + degree - i, degree - i) = values[n] by Fractions."""
    ns = sorted(values)[: degree + 1]
    mat = [[Fraction((-1) ** i * comb(n + shift + degree - i, degree - i)) for i in range(degree + 1)]
           + [Fraction(values[n])] for n in ns]
    size = degree + 1
    for col in range(size):
        piv = next(r for r in range(col, size) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        for r in range(size):
            if r != col and mat[r][col] != 0:
                f = mat[r][col] / mat[col][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    sol = [mat[i][-1] / mat[i][i] for i in range(size)]
    assert all(s.denominator == 1 for s in sol)
    return [int(s) for s in sol]


# -- semigroups as explicit sets ------------------------------------------------

def semigroup_set(gens: Sequence[int], bound: int) -> Set[int]:
    s = {0}
    for n in range(1, bound):
        if any(n - g in s for g in gens if g <= n):
            s.add(n)
    return s


def ideal_set(gens: Sequence[int], s: Set[int], bound: int) -> Set[int]:
    return {v + x for v in gens for x in s if v + x < bound}


def sumset(a: Set[int], b: Set[int], bound: int) -> Set[int]:
    return {x + y for x in a for y in b if x + y < bound}


def is_semigroup_with_gaps(gaps: Set[int]) -> bool:
    top = max(gaps, default=0) + 1
    members = [n for n in range(1, top + 1) if n not in gaps]
    return all(a + b not in gaps for a in members for b in members)


def all_oversemigroup_gapsets(gaps: Sequence[int]) -> List[Tuple[int, ...]]:
    out = []
    for mask in range(1 << len(gaps)):
        kept = {g for i, g in enumerate(gaps) if mask >> i & 1}
        if is_semigroup_with_gaps(kept):
            out.append(tuple(sorted(kept)))
    return sorted(out)
