"""Part patterns, blowups, and exact density machinery.

A pattern is (k, r, multisets): `multisets` lists the admissible
"profiles" of an edge as sorted r-tuples of part indices 1..k with
repetition — (1, 2, 2) means one vertex from part 1 and two from part 2.
The blowup along a composition (n_1, ..., n_k) places the parts on
consecutive vertex ranges and takes every r-set whose profile is
admissible; its edge count is the closed form sum over profiles Y of
prod_i C(n_i, mult_Y(i)).

Density values are exact `Fraction`s throughout.  The density polynomial
p(x) = sum_Y (r!/prod_i mult_Y(i)!) prod_i x_i^mult_Y(i) on the simplex
is the n -> infinity limit of blowup-count/C(n,r) along compositions with
n_i/n -> x_i, so sup p is bracketed from below by p at any rational point
and from above by max-blowup-count(N)/C(N,r) at any finite N (that ratio
is nonincreasing in N).  The optimizer that locates good simplex points
is the only floating-point code; its result is snapped to rationals and
re-evaluated exactly before anything is reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial
from typing import Optional, Sequence

from random import Random

from .core import Hypergraph
from .errors import BudgetExceededError, FormatError

Composition = tuple[int, ...]

_LAMBDA_MAX_K = 6
_LAMBDA_MAX_N = 200
_SUB_MAX_K = 4
_SUB_MAX_N = 24
_SNAP_DENOMINATOR = 10 ** 6


@dataclass(frozen=True)
class Pattern:
    """k parts, uniformity r, admissible profiles as sorted 1-based
    r-tuples with repetition."""
    k: int
    r: int
    multisets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.k < 0 or self.r < 1:
            raise ValueError("pattern needs k >= 0 and r >= 1")
        norm = tuple(sorted(tuple(sorted(y)) for y in self.multisets))
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate profile multiset")
        for y in norm:
            if len(y) != self.r:
                raise ValueError("profile size must equal the uniformity")
            if y and not (1 <= y[0] and y[-1] <= self.k):
                raise ValueError("profile references a part outside 1..k")
        object.__setattr__(self, "multisets", norm)

    def multiplicities(self, y: tuple[int, ...]) -> tuple[int, ...]:
        """Per-part multiplicities of a profile, index i-1 for part i."""
        out = [0] * self.k
        for part in y:
            out[part - 1] += 1
        return tuple(out)


def _check_composition(p: Pattern, c: Sequence[int]) -> Composition:
    c = tuple(c)
    if len(c) != p.k or any(x < 0 for x in c):
        raise ValueError("composition must have k nonnegative parts")
    return c


def blowup(p: Pattern, c: Sequence[int]) -> Hypergraph:
    """The blowup of the pattern along a composition: parts occupy
    consecutive vertex ranges, edges are r-sets with admissible profile."""
    c = _check_composition(p, c)
    starts = [0]
    for size in c:
        starts.append(starts[-1] + size)
    n = starts[-1]
    edges = []
    for y in p.multisets:
        mult = p.multiplicities(y)
        pools = [combinations(range(starts[i], starts[i + 1]), mult[i])
                 for i in range(p.k) if mult[i] > 0]
        for pick in product(*pools):
            edges.append(tuple(v for block in pick for v in block))
    return Hypergraph(n, p.r, tuple(sorted(edges)))


def blowup_count(p: Pattern, c: Sequence[int]) -> int:
    """Closed-form edge count of blowup(p, c)."""
    c = _check_composition(p, c)
    total = 0
    for y in p.multisets:
        mult = p.multiplicities(y)
        term = 1
        for i in range(p.k):
            term *= comb(c[i], mult[i])
        total += term
    return total


def lambda_n(p: Pattern, n: int) -> tuple[int, Composition]:
    """Exact maximum blowup count over all compositions of n, with the
    lexicographically largest maximizer."""
    if p.k > _LAMBDA_MAX_K or n > _LAMBDA_MAX_N:
        raise BudgetExceededError(
            f"lambda_n budget is k <= {_LAMBDA_MAX_K}, n <= {_LAMBDA_MAX_N}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if p.k == 0 or not p.multisets:
        if p.k == 0 and n > 0:
            raise ValueError("positive n with no parts")
        best = (n,) + (0,) * (p.k - 1) if p.k else ()
        return 0, best

    mults = [p.multiplicities(y) for y in p.multisets]
    # suffix[yi][i][R] = max over (n_i..n_k) summing to R of the partial
    # product for profile y; summing these over y bounds any completion.
    suffix = []
    for mult in mults:
        table = [[0] * (n + 1) for _ in range(p.k + 1)]
        for R in range(n + 1):
            table[p.k][R] = 1 if R == 0 else 0
        for i in range(p.k - 1, -1, -1):
            for R in range(n + 1):
                if i == p.k - 1:
                    table[i][R] = comb(R, mult[i])
                else:
                    table[i][R] = max(comb(s, mult[i]) * table[i + 1][R - s]
                                      for s in range(R + 1))
        suffix.append(table)

    best_value = -1
    best_comp: Composition = ()
    sizes = [0] * p.k

    def walk(i: int, remaining: int, partials: list[int]) -> None:
        nonlocal best_value, best_comp
        if i == p.k - 1:
            sizes[i] = remaining
            value = sum(partials[yi] * comb(remaining, mults[yi][i])
                        for yi in range(len(mults)))
            if value > best_value:
                best_value = value
                best_comp = tuple(sizes)
            return
        bound = sum(partials[yi] * suffix[yi][i][remaining]
                    for yi in range(len(mults)))
        if bound <= best_value:
            return
        for s in range(remaining, -1, -1):
            sizes[i] = s
            nxt = [partials[yi] * comb(s, mults[yi][i])
                   for yi in range(len(mults))]
            walk(i + 1, remaining - s, nxt)

    walk(0, n, [1] * len(mults))
    return best_value, best_comp


def density_poly_eval(p: Pattern, x: Sequence[Fraction]) -> Fraction:
    """Exact value of the density polynomial at a simplex point."""
    x = tuple(Fraction(v) for v in x)
    if len(x) != p.k or any(v < 0 for v in x) or (p.k and sum(x) != 1):
        raise ValueError("x must be k nonnegative rationals summing to 1")
    total = Fraction(0)
    for y in p.multisets:
        mult = p.multiplicities(y)
        coef = factorial(p.r)
        term = Fraction(1)
        for i in range(p.k):
            coef //= factorial(mult[i])
            term *= x[i] ** mult[i]
        total += coef * term
    return total


@dataclass(frozen=True)
class LagrangianEstimate:
    """Certified bracket lower <= sup p <= upper, with the exact rational
    witness attaining `lower` and the size N giving `upper`."""
    lower: Fraction
    upper: Fraction
    witness: tuple[Fraction, ...]
    N: int

    def width(self) -> Fraction:
        return self.upper - self.lower


def _snap_simplex(xs: Sequence[float]) -> tuple[Fraction, ...]:
    qs = [Fraction(v).limit_denominator(_SNAP_DENOMINATOR) for v in xs]
    qs = [max(q, Fraction(0)) for q in qs]
    total = sum(qs)
    if total == 0:
        return (Fraction(1),) + (Fraction(0),) * (len(xs) - 1)
    return tuple(q / total for q in qs)


def lagrangian(p: Pattern, tol: Fraction = Fraction(1, 10 ** 9),
               N: int = 120, rng_seed: int = 0) -> LagrangianEstimate:
    """Bracket sup of the density polynomial: multi-start replicator
    ascent (uniform, each vertex, two seeded random starts), exact
    re-evaluation at rational snaps for the lower bound, and the
    nonincreasing finite ratio lambda_n(p, N)/C(N, r) as upper bound."""
    if N < p.r:
        raise ValueError("bracket size N must be at least the uniformity")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.k == 0 or not p.multisets:
        witness = _uniform(p.k)
        return LagrangianEstimate(Fraction(0), Fraction(0), witness, N)

    coefs = []
    for y in p.multisets:
        mult = p.multiplicities(y)
        coef = factorial(p.r)
        for m in mult:
            coef //= factorial(m)
        coefs.append((float(coef), mult))

    def value_grad(xs):
        val = 0.0
        grad = [0.0] * p.k
        for coef, mult in coefs:
            term = coef
            for i in range(p.k):
                term *= xs[i] ** mult[i]
            val += term
            for i in range(p.k):
                if mult[i] > 0:
                    g = coef * mult[i] * xs[i] ** (mult[i] - 1)
                    for j in range(p.k):
                        if j != i:
                            g *= xs[j] ** mult[j]
                    grad[i] += g
        return val, grad

    rng = Random(rng_seed)
    starts = [[1.0 / p.k] * p.k]
    for i in range(p.k):
        starts.append([1.0 if j == i else 0.0 for j in range(p.k)])
    for _ in range(2):
        raw = [rng.random() + 1e-9 for _ in range(p.k)]
        s = sum(raw)
        starts.append([v / s for v in raw])

    tol_f = float(tol)
    candidates: list[tuple[Fraction, tuple[Fraction, ...]]] = []
    for xs in starts:
        xs = list(xs)
        for _ in range(10_000):
            val, grad = value_grad(xs)
            denom = sum(x * g for x, g in zip(xs, grad))
            if denom <= 0.0:
                break
            nxt = [x * g / denom for x, g in zip(xs, grad)]
            step = max(abs(a - b) for a, b in zip(nxt, xs))
            xs = nxt
            if step < tol_f:
                break
        witness = _snap_simplex(xs)
        candidates.append((density_poly_eval(p, witness), witness))

    lower, witness = max(candidates, key=lambda t: (t[0], [-v for v in t[1]]))
    upper = Fraction(lambda_n(p, N)[0], comb(N, p.r))
    return LagrangianEstimate(lower, upper, witness, N)


def _uniform(k: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1, k) for _ in range(k)) if k else ()


def remove_part(p: Pattern, i: int) -> Pattern:
    """Drop part i (1-based): profiles touching it vanish, higher parts
    shift down."""
    if not 1 <= i <= p.k:
        raise ValueError("part index out of range")
    kept = []
    for y in p.multisets:
        if i in y:
            continue
        kept.append(tuple(part - 1 if part > i else part for part in y))
    return Pattern(p.k - 1, p.r, tuple(kept))


@dataclass(frozen=True)
class PartCertificate:
    """Bracket evidence for one part removal."""
    part: int
    removed: LagrangianEstimate
    separated: bool   # removed.upper < full.lower
    dominates: bool   # removed.lower >= full.upper


@dataclass(frozen=True)
class MinimalityReport:
    status: str  # "minimal" | "not_minimal" | "indeterminate"
    bracket: LagrangianEstimate
    parts: tuple[PartCertificate, ...]


def is_minimal(p: Pattern, tol: Fraction = Fraction(1, 10 ** 9),
               N: int = 120, rng_seed: int = 0) -> MinimalityReport:
    """Certify that every part removal strictly lowers the pattern's
    density limit.  "minimal" and "not_minimal" are proved by bracket
    separation; overlapping brackets yield "indeterminate" (retry with a
    larger N) rather than a coerced answer."""
    full = lagrangian(p, tol, N, rng_seed)
    certs = []
    for i in range(1, p.k + 1):
        removed = lagrangian(remove_part(p, i), tol, N, rng_seed)
        certs.append(PartCertificate(
            part=i,
            removed=removed,
            separated=removed.upper < full.lower,
            dominates=removed.lower >= full.upper,
        ))
    if all(c.separated for c in certs):
        status = "minimal"
    elif any(c.dominates for c in certs):
        status = "not_minimal"
    else:
        status = "indeterminate"
    return MinimalityReport(status, full, tuple(certs))


def _assignment_search(h: Hypergraph, p: Pattern):
    """Backtracking vertex -> part assignment; yields assignments under
    which every edge profile is admissible, pruning partial edges whose
    profile no admissible profile dominates."""
    if p.k > _SUB_MAX_K or h.n > _SUB_MAX_N:
        raise BudgetExceededError(
            f"subconstruction budget is k <= {_SUB_MAX_K}, n <= {_SUB_MAX_N}")
    mults = [p.multiplicities(y) for y in p.multisets]
    incident: list[list[int]] = [[] for _ in range(h.n)]
    for ei, e in enumerate(h.edges):
        for v in e:
            incident[v].append(ei)
    assign = [0] * h.n

    def edge_ok(ei: int, upto: int) -> bool:
        counts = [0] * p.k
        pending = 0
        for v in h.edges[ei]:
            if v <= upto:
                counts[assign[v] - 1] += 1
            else:
                pending += 1
        if pending == 0:
            return counts in mults_exact
        return any(all(counts[i] <= m[i] for i in range(p.k)) for m in mults)

    mults_exact = [list(m) for m in mults]

    def place(v: int):
        if v == h.n:
            yield tuple(assign)
            return
        for part in range(1, p.k + 1):
            assign[v] = part
            if all(edge_ok(ei, v) for ei in incident[v]):
                yield from place(v + 1)
        assign[v] = 0

    yield from place(0)


def is_subconstruction(h: Hypergraph, p: Pattern) -> Optional[tuple[int, ...]]:
    """A vertex -> part map (1-based) sending every edge profile into the
    pattern's admissible set, or None."""
    for assignment in _assignment_search(h, p):
        return assignment
    return None


def full_construction_assignment(h: Hypergraph,
                                 p: Pattern) -> Optional[tuple[int, ...]]:
    """An assignment witnessing that h IS an entire blowup of the pattern
    (not merely a subgraph of one): the map is admissible and h has every
    edge the implied composition allows."""
    for assignment in _assignment_search(h, p):
        sizes = [0] * p.k
        for part in assignment:
            sizes[part - 1] += 1
        if h.edge_count == blowup_count(p, tuple(sizes)):
            return assignment
    return None


def dumps_pat(p: Pattern) -> str:
    """Serialize a pattern to its JSON text form."""
    return json.dumps({"k": p.k, "r": p.r,
                       "multisets": [list(y) for y in p.multisets]}) + "\n"


def loads_pat(text: str) -> Pattern:
    """Parse the JSON pattern format {"k":…, "r":…, "multisets":[[…]]}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid pattern JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormatError("pattern JSON must be an object")
    extra = set(data) - {"k", "r", "multisets"}
    if extra:
        raise FormatError(f"unknown pattern fields: {sorted(extra)}")
    try:
        k, r = data["k"], data["r"]
        multisets = tuple(tuple(y) for y in data["multisets"])
    except (KeyError, TypeError):
        raise FormatError("pattern JSON needs k, r, multisets") from None
    if not (isinstance(k, int) and isinstance(r, int)
            and all(isinstance(v, int) for y in multisets for v in y)):
        raise FormatError("pattern fields must be integers")
    try:
        return Pattern(k, r, multisets)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_pat(path) -> Pattern:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_pat(fh.read())


def dump_pat(p: Pattern, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_pat(p))
