"""Acceptance gate: twelve end-to-end scenarios, one test each, covering
exact extremal values and extremal-family structure, the joined-construction
pipeline, counterexample arithmetic, matching formulas, Lagrangian
certificates, table smoothness, the lemma sweeps, rainbow matchings, oracle
equivalence, and monotonicity.  Each test prints one line with its elapsed
time and asserts the stated wall-clock budget."""

import time
from contextlib import contextmanager
from fractions import Fraction
from math import comb
from random import Random

import pytest

from oracles import brute_matching_number, relabel
from turankit.cli import run
from turankit.core import (
    Hypergraph,
    are_isomorphic,
    complete,
    canonical_form,
    dump_hg,
    join,
)
from turankit.matching import matching_number
from turankit.patterns import Pattern, lagrangian, lambda_n
from turankit.solver import TuranTable, config_of, enumerate_extremal, ex_table, max_edges
from turankit.verify import (
    check_lemmas,
    check_matching_theorems,
    check_rainbow,
    check_remark_2k3,
    check_smoothness,
    parse_growth,
)
from turankit.zoo import bipartite3, f32, fano, sunflower, turan

K3 = complete(3, 2)
K3_CFG = config_of([(K3, 1)])
K4_CFG = config_of([(complete(4, 2), 1)])
FANO_CFG = config_of([(fano(), 1)])
EDGE3 = Hypergraph(3, 3, ((0, 1, 2),))

S3_PAT = Pattern(2, 3, ((1, 2, 2),))
B4_PAT = Pattern(2, 4, ((1, 1, 2, 2),))


def kl_pattern(l: int) -> Pattern:
    return Pattern(l, 2, tuple((i, j) for i in range(1, l + 1)
                               for j in range(i + 1, l + 1)))


@contextmanager
def criterion(num: int, budget_s: float, label: str):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    print(f"criterion {num:2d} PASS {label} ({elapsed:.1f}s of {budget_s}s)")
    assert elapsed <= budget_s, f"criterion {num} blew its {budget_s}s budget"


@pytest.fixture(scope="module")
def k3_table():
    return ex_table(K3_CFG, 3, 10)


@pytest.fixture(scope="module")
def k4_table():
    return ex_table(K4_CFG, 4, 9)


@pytest.fixture(scope="module")
def fano_table():
    records = (max_edges(7, FANO_CFG, bipartite3(7)),
               max_edges(8, FANO_CFG, bipartite3(8)))
    return TuranTable(FANO_CFG, records)


def test_criterion_01_triangle_values_and_extremal(k3_table):
    with criterion(1, 60, "triangle-free maxima and unique extremal"):
        for n in range(3, 11):
            assert k3_table.value(n) == n * n // 4
        for n in range(3, 10):
            extremal = enumerate_extremal(n, K3_CFG)
            assert len(extremal) == 1
            assert are_isomorphic(extremal[0], turan(n, 2, 2))


def test_criterion_02_two_triangles_on_nine():
    with criterion(2, 300, "two disjoint triangles forbidden at n=9"):
        cfg = config_of([(K3, 2)])
        seed = join(1, turan(8, 2, 2))
        assert max_edges(9, cfg, seed).value == 24
        extremal = enumerate_extremal(9, cfg, seed)
        assert len(extremal) == 1
        assert are_isomorphic(extremal[0], seed)


def test_criterion_03_fano_on_seven():
    with criterion(3, 600, "fano-free maximum at n=7"):
        assert max_edges(7, FANO_CFG, bipartite3(7)).value == 30
        extremal = enumerate_extremal(7, FANO_CFG, bipartite3(7))
        assert any(are_isomorphic(g, bipartite3(7)) for g in extremal)


def test_criterion_04_joined_construction_pipeline(tmp_path):
    with criterion(4, 600, "apex-join pipeline for triangles, n=9, t=1"):
        path = str(tmp_path / "k3.hg")
        dump_hg(K3, path)
        code = run(["verify", "main-theorem",
                    "--F", path, "--n", "9", "--t", "1"])
        assert code == 0


def test_criterion_05_two_triangle_remark():
    with criterion(5, 1, "strict inequality of the 2-triangle remark"):
        report = check_remark_2k3(30, 2)
        assert report.status == "pass"


def test_criterion_06_matching_formulas():
    with criterion(6, 600, "matching formulas, graphs and triples"):
        for n, t in ((6, 1), (6, 2), (7, 1), (7, 2), (8, 2)):
            assert check_matching_theorems(n, t, 2).status == "pass"
        assert check_matching_theorems(7, 1, 3).status == "pass"
        assert max_edges(7, config_of([(EDGE3, 2)])).value == 15


def test_criterion_07_lagrangian_certificates():
    with criterion(7, 30, "lagrangian brackets hit exact targets"):
        targets = [(S3_PAT, Fraction(4, 9)), (B4_PAT, Fraction(3, 8))]
        targets += [(kl_pattern(l), Fraction(l - 1, l)) for l in range(2, 6)]
        for p, want in targets:
            est = lagrangian(p)
            assert est.lower == want
            assert est.width() <= Fraction(1, 20)
            assert est.N == 120


def test_criterion_08_smoothness(k3_table, k4_table, fano_table):
    with criterion(8, 900, "tables are 4*C(n-1,r-2)-smooth"):
        g = parse_growth("4*C(n-1,r-2)")
        for table in (k3_table, k4_table, fano_table):
            assert check_smoothness(table, g).status == "pass"


def test_criterion_09_lemma_suite(k3_table, k4_table, fano_table):
    with criterion(9, 60, "identity, ratio, and drift sweeps to n=200"):
        report = check_lemmas(200, tables=(k3_table, k4_table, fano_table))
        assert report.status == "pass"


def test_criterion_10_rainbow():
    with criterion(10, 600, "rainbow boundary + 200 sampled collections"):
        report = check_rainbow(K3, 9, 1, trials=200, rng_seed=42)
        assert report.status == "pass"


def _random_instance(rng: Random):
    from itertools import combinations
    r = rng.choice((2, 3))
    fn = rng.randint(r, 4)
    pool = list(combinations(range(fn), r))
    f_edges = tuple(e for e in pool if rng.random() < 0.6) or (pool[0],)
    hn = rng.randint(fn, 9)
    h_edges = tuple(e for e in combinations(range(hn), r)
                    if rng.random() < 0.4)
    return Hypergraph(fn, r, f_edges), Hypergraph(hn, r, h_edges)


def test_criterion_11_oracle_equivalence():
    with criterion(11, 300, "matching vs brute force; canonical stability"):
        rng = Random(2026)
        for _ in range(100):
            f, h = _random_instance(rng)
            assert matching_number(f, h)[0] == brute_matching_number(f, h)
        fixtures = (fano(), turan(7, 2, 2), f32(), sunflower(3, 3),
                    join(1, turan(6, 2, 2)))
        for g in fixtures:
            base = canonical_form(g)
            for _ in range(100):
                perm = list(range(g.n))
                rng.shuffle(perm)
                other = canonical_form(relabel(g, tuple(perm)))
                assert other.edges == base.edges
                assert other.hash64 == base.hash64


def test_criterion_12_monotone_densities(k3_table, k4_table, fano_table):
    with criterion(12, 60, "edge-density ratios never increase"):
        for table in (k3_table, k4_table, fano_table):
            r = table.config.r
            ratios = [Fraction(table.value(n), comb(n, r))
                      for n in table.ns]
            assert all(a >= b for a, b in zip(ratios, ratios[1:]))
        fixture_patterns = [S3_PAT, B4_PAT] + [kl_pattern(l)
                                               for l in range(2, 6)]
        for p in fixture_patterns:
            ratios = [Fraction(lambda_n(p, n)[0], comb(n, p.r))
                      for n in range(max(3, p.r), 61)]
            assert all(a >= b for a, b in zip(ratios, ratios[1:]))
