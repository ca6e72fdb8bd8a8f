"""Pattern/blowup/Lagrangian tests.

Brute-force oracles used here: direct profile filtering for blowup edge
sets, exhaustive composition enumeration for the finite maxima, and
closed-form densities at known optima.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb

import pytest
from hypothesis import given, strategies as st

from turankit.core import Hypergraph, complete, empty
from turankit.errors import BudgetExceededError, FormatError
from turankit.patterns import (
    LagrangianEstimate, Pattern, blowup, blowup_count, density_poly_eval,
    dumps_pat, full_construction_assignment, is_minimal, is_subconstruction,
    lagrangian, lambda_n, loads_pat, remove_part,
)
from turankit.zoo import bipartite3, semibipartite, turan

S3 = Pattern(2, 3, ((1, 2, 2),))
B4_EVEN = Pattern(2, 4, ((1, 1, 2, 2),))
MANTEL = Pattern(2, 2, ((1, 2),))
B3_PAT = Pattern(2, 3, ((1, 1, 2), (1, 2, 2)))


def kl_pattern(l):
    return Pattern(l, 2, tuple((i, j) for i in range(1, l + 1)
                               for j in range(i + 1, l + 1)))


def compositions(n, k):
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(n + 1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def brute_blowup_edges(p, c):
    """All r-sets of the consecutive layout whose profile is admissible."""
    n = sum(c)
    part_of = []
    for i, size in enumerate(c, start=1):
        part_of.extend([i] * size)
    admissible = set(p.multisets)
    return tuple(e for e in combinations(range(n), p.r)
                 if tuple(sorted(part_of[v] for v in e)) in admissible)


def brute_lambda(p, n):
    best = max((blowup_count(p, c), c) for c in compositions(n, p.k))
    return best


def test_pattern_normalizes_and_validates():
    p = Pattern(2, 3, ((2, 2, 1), (2, 1, 1)))
    assert p.multisets == ((1, 1, 2), (1, 2, 2))
    with pytest.raises(ValueError):
        Pattern(2, 3, ((1, 2), ))
    with pytest.raises(ValueError):
        Pattern(2, 3, ((1, 2, 3),))
    with pytest.raises(ValueError):
        Pattern(2, 3, ((1, 2, 2), (2, 2, 1)))
    with pytest.raises(ValueError):
        Pattern(2, 0, ())
    with pytest.raises(ValueError):
        Pattern(-1, 2, ())


def test_blowup_examples():
    assert blowup(MANTEL, (2, 3)).edge_count == 6
    assert blowup(S3, (2, 4)).edge_count == 12
    assert blowup(Pattern(1, 2, ((1, 1),)), (6,)) == complete(6, 2)


def test_blowup_matches_profile_filter():
    cases = [(MANTEL, (3, 4)), (S3, (2, 5)), (B4_EVEN, (3, 3)),
             (B3_PAT, (4, 3)), (kl_pattern(3), (2, 3, 2)),
             (Pattern(2, 1, ((1,),)), (2, 3))]
    for p, c in cases:
        g = blowup(p, c)
        assert g.n == sum(c)
        assert g.edges == brute_blowup_edges(p, c)
        assert g.edge_count == blowup_count(p, c)


def test_blowup_empty_pattern():
    g = blowup(Pattern(2, 3, ()), (3, 2))
    assert g.n == 5 and g.edge_count == 0
    assert blowup(Pattern(0, 2, ()), ()) == empty(0, 2)


def test_lambda_examples():
    assert lambda_n(MANTEL, 9) == (20, (5, 4))
    assert lambda_n(B4_EVEN, 8) == (36, (4, 4))
    assert lambda_n(S3, 6) == (12, (2, 4))


def test_lambda_tie_breaks_lexicographically_largest():
    # every composition of the all-pairs pattern gives the complete graph
    full = Pattern(2, 2, ((1, 1), (1, 2), (2, 2)))
    assert lambda_n(full, 7) == (21, (7, 0))
    assert lambda_n(Pattern(1, 2, ()), 5) == (0, (5,))


def test_lambda_matches_brute_force():
    for p in (MANTEL, S3, B4_EVEN, B3_PAT, kl_pattern(3),
              Pattern(2, 3, ((1, 2, 2), (2, 2, 2)))):
        for n in (0, 1, 4, 7, 10):
            assert lambda_n(p, n) == brute_lambda(p, n)


def test_lambda_unbalanced_optimum():
    # one vertex from the first part, a pair from the second
    value, best = lambda_n(Pattern(2, 3, ((1, 2, 2),)), 9)
    assert (value, best) == (3 * comb(6, 2), (3, 6))
    assert semibipartite(9, 3).edge_count == value


def test_lambda_agrees_with_turan_counts():
    for l in (2, 3, 4):
        p = kl_pattern(l)
        for n in (5, 8, 13):
            assert lambda_n(p, n)[0] == turan(n, l, 2).edge_count


def test_lambda_budget():
    with pytest.raises(BudgetExceededError):
        lambda_n(kl_pattern(7), 10)
    with pytest.raises(BudgetExceededError):
        lambda_n(MANTEL, 201)


def test_density_poly_examples():
    third = Fraction(1, 3)
    half = Fraction(1, 2)
    assert density_poly_eval(S3, (third, 2 * third)) == Fraction(4, 9)
    assert density_poly_eval(B4_EVEN, (half, half)) == Fraction(3, 8)
    assert density_poly_eval(MANTEL, (half, half)) == half
    with pytest.raises(ValueError):
        density_poly_eval(MANTEL, (half, half, Fraction(0)))
    with pytest.raises(ValueError):
        density_poly_eval(MANTEL, (Fraction(2, 3), Fraction(2, 3)))


def test_density_ratio_nonincreasing():
    for p in (S3, B4_EVEN, MANTEL, kl_pattern(4)):
        prev = None
        for n in range(max(3, p.r), 61):
            ratio = Fraction(lambda_n(p, n)[0], comb(n, p.r))
            if prev is not None:
                assert ratio <= prev
            prev = ratio


def test_density_ratio_converges_to_polynomial():
    # count/C(n,r) approaches the polynomial at the normalized composition
    for p in (S3, B4_EVEN, MANTEL):
        for n in (20, 40, 80):
            value, c = lambda_n(p, n)
            x = tuple(Fraction(ci, n) for ci in c)
            gap = abs(Fraction(value, comb(n, p.r)) - density_poly_eval(p, x))
            assert gap <= Fraction(p.r * p.r * p.k, n)


def test_lagrangian_exact_targets():
    assert lagrangian(S3).lower == Fraction(4, 9)
    assert lagrangian(B4_EVEN).lower == Fraction(3, 8)
    for l in (2, 3, 4, 5):
        est = lagrangian(kl_pattern(l))
        assert est.lower == 1 - Fraction(1, l)
        assert est.width() <= Fraction(5, 100)


def test_lagrangian_bracket_structure():
    est = lagrangian(S3, N=60)
    assert isinstance(est, LagrangianEstimate)
    assert est.N == 60
    assert est.lower <= est.upper
    assert sum(est.witness) == 1 and all(v >= 0 for v in est.witness)
    assert density_poly_eval(S3, est.witness) == est.lower
    wide = lagrangian(S3, N=12)
    assert wide.upper >= est.upper


def test_lagrangian_degenerate_patterns():
    est = lagrangian(Pattern(2, 2, ()))
    assert (est.lower, est.upper) == (0, 0)
    vertexy = lagrangian(Pattern(2, 1, ((1,),)))
    assert vertexy.lower == 1 == vertexy.upper
    with pytest.raises(ValueError):
        lagrangian(S3, N=2)
    with pytest.raises(ValueError):
        lagrangian(S3, tol=Fraction(0))


def test_remove_part_examples():
    assert remove_part(MANTEL, 1) == Pattern(1, 2, ())
    assert remove_part(Pattern(2, 2, ((1, 2), (2, 2))), 1) == \
        Pattern(1, 2, ((1, 1),))
    assert remove_part(B3_PAT, 2) == Pattern(1, 3, ())
    with pytest.raises(ValueError):
        remove_part(MANTEL, 3)


def test_minimality_verdicts():
    assert is_minimal(MANTEL).status == "minimal"
    assert is_minimal(S3).status == "minimal"
    report = is_minimal(Pattern(2, 2, ((1, 1), (1, 2), (2, 2))))
    assert report.status == "not_minimal"
    assert any(c.dominates for c in report.parts)
    good = is_minimal(B3_PAT)
    assert good.status == "minimal"
    assert all(c.separated for c in good.parts)


def test_subconstruction_examples():
    split = is_subconstruction(turan(6, 2, 2), MANTEL)
    assert split == (1, 1, 1, 2, 2, 2)
    assert is_subconstruction(complete(3, 2), MANTEL) is None
    split = is_subconstruction(bipartite3(7), B3_PAT)
    assert split is not None
    assert sorted(split) == [1, 1, 1, 1, 2, 2, 2]


def test_subconstruction_of_own_blowup():
    for p, c in [(S3, (2, 4)), (B4_EVEN, (3, 3)), (kl_pattern(3), (2, 2, 3))]:
        g = blowup(p, c)
        assignment = is_subconstruction(g, p)
        assert assignment is not None
        # the assignment must send every edge to an admissible profile
        admissible = set(p.multisets)
        for e in g.edges:
            assert tuple(sorted(assignment[v] for v in e)) in admissible


def test_subconstruction_budget():
    with pytest.raises(BudgetExceededError):
        is_subconstruction(empty(3, 2), kl_pattern(5))
    with pytest.raises(BudgetExceededError):
        is_subconstruction(empty(25, 2), MANTEL)


def test_full_construction_recognition():
    t = turan(6, 2, 2)
    assert full_construction_assignment(t, MANTEL) == (1, 1, 1, 2, 2, 2)
    missing = Hypergraph(6, 2, tuple(e for e in t.edges if e != (0, 3)))
    assert full_construction_assignment(missing, MANTEL) is None
    assert is_subconstruction(missing, MANTEL) is not None
    b = blowup(B3_PAT, (4, 3))
    assert full_construction_assignment(b, B3_PAT) is not None


def test_pat_round_trip(tmp_path):
    from turankit.patterns import dump_pat, load_pat
    path = tmp_path / "s3.pat"
    dump_pat(S3, path)
    assert load_pat(path) == S3
    assert loads_pat(dumps_pat(B3_PAT)) == B3_PAT


def test_pat_format_errors():
    with pytest.raises(FormatError):
        loads_pat("not json")
    with pytest.raises(FormatError):
        loads_pat('{"k": 2, "r": 3}')
    with pytest.raises(FormatError):
        loads_pat('{"k": 2, "r": 3, "multisets": [[1,2,2]], "extra": 1}')
    with pytest.raises(FormatError):
        loads_pat('{"k": 2, "r": 3, "multisets": [[1,2]]}')
    with pytest.raises(FormatError):
        loads_pat('{"k": 2.5, "r": 3, "multisets": []}')


@st.composite
def small_patterns(draw):
    k = draw(st.integers(min_value=1, max_value=3))
    r = draw(st.integers(min_value=1, max_value=3))
    pool = list(combinations_with_replacement(range(1, k + 1), r))
    chosen = draw(st.lists(st.sampled_from(pool), min_size=0,
                           max_size=len(pool), unique=True))
    return Pattern(k, r, tuple(chosen))


@given(small_patterns(), st.integers(min_value=0, max_value=8))
def test_lambda_brute_property(p, n):
    assert lambda_n(p, n) == brute_lambda(p, n)


@given(small_patterns())
def test_lagrangian_bracket_property(p):
    est = lagrangian(p, N=30)
    assert est.lower <= est.upper
    assert density_poly_eval(p, est.witness) == est.lower


@given(small_patterns(), st.integers(min_value=0, max_value=6),
       st.integers(min_value=0, max_value=6))
def test_blowup_edges_property(p, a, b):
    c = tuple([a, b][:p.k]) + (0,) * max(0, p.k - 2)
    g = blowup(p, c)
    assert g.edges == brute_blowup_edges(p, c)
    assert g.edge_count == blowup_count(p, c)
