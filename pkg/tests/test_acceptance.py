"""End-to-end acceptance checks: exhaustive sweeps, exact-oracle agreement,
seeded statistics, and determinism, each with an explicit runtime budget.
"""
import json
import math
import random
import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from f2cayley import (
    ElemSet,
    ExperimentConfig,
    PreconditionError,
    Subspace,
    census_skl,
    check_dim_bound,
    check_even_zohar,
    chromatic_bracket,
    classify_n,
    coin_matrix,
    coset_coloring,
    density_measure,
    derive_seed,
    doubling_stats,
    enumerate_subspaces,
    eqkn_check,
    expected_M,
    freiman_dimension,
    from_generators,
    gaussian_binomial,
    kneser_check,
    max_clique,
    moment_report,
    rref,
    run_experiment,
    sample_cayley,
    sandwich_check,
    seq_nj,
    subspace_cliques,
    subspace_members,
    sumset,
    tail_exponent,
    universal_freiman_rank,
    variance_M,
    verify_clique,
    verify_coloring,
)


def _all_subsets_f23():
    return [ElemSet(3, m) for m in range(1, 256)]


def test_criterion_01_kneser_sweep_f23():
    t0 = time.perf_counter()
    sets = _all_subsets_f23()
    for A in sets:
        for B in sets:
            assert kneser_check(A, B).holds
    assert time.perf_counter() - t0 < 5.0


def test_criterion_02_sandwich_sweep_f23():
    t0 = time.perf_counter()
    sets = _all_subsets_f23()
    checked = 0
    for m in (1, 2, 4):
        bigger = [B for B in sets if B.size > m]
        for A in sets:
            for B in bigger:
                assert sandwich_check(A, B, m).holds
                checked += 1
    assert checked > 0
    assert time.perf_counter() - t0 < 10.0


def test_criterion_03_restricted_sumset_identity():
    rng = random.Random(30301)
    count = 0
    for i in range(10_000):
        n = 2 + i % 9  # cycles through 2..10
        mask = rng.getrandbits(1 << n)
        if mask == 0:
            mask = 1 << rng.getrandbits(n)
        st = doubling_stats(ElemSet(n, mask))
        assert st.sum_size == st.restricted_size + 1
        count += 1
    assert count == 10_000


def _random_invertible(rng, n):
    while True:
        cols = [rng.getrandbits(n) for _ in range(n)]
        if len(rref(cols)) == n:
            return cols


def _apply_linear(cols, v):
    out = 0
    for j, c in enumerate(cols):
        if v >> j & 1:
            out ^= c
    return out


def test_criterion_04_freiman_dimension_invariance_and_universal_model():
    t0 = time.perf_counter()
    rng = random.Random(40404)
    for _ in range(100):
        n = rng.choice((3, 4))
        k = rng.randrange(1, 6)
        X = ElemSet.from_elements(n, rng.sample(range(1 << n), k))
        r = freiman_dimension(X).r
        t = rng.getrandbits(n)
        assert freiman_dimension(X.translate(t)).r == r
        L = _random_invertible(rng, n)
        LX = ElemSet.from_elements(n, [_apply_linear(L, x) for x in X])
        assert freiman_dimension(LX).r == r
    # universal-model fast path agrees exhaustively on F_2^3, |X| <= 5
    for mask in range(1, 256):
        X = ElemSet(3, mask)
        if X.size <= 5:
            assert universal_freiman_rank(X) == freiman_dimension(X).r, X.elements()
    assert time.perf_counter() - t0 < 60.0


def test_criterion_05_dimension_bound_exhaustive_f23():
    for mask in range(1, 256):
        X = ElemSet(3, mask)
        if X.size <= 5:
            assert check_dim_bound(X).holds, X.elements()


def test_criterion_06_even_zohar_exhaustive_and_random():
    for mask in range(1, 256):
        assert check_even_zohar(ElemSet(3, mask)).holds
    rng = random.Random(60606)
    for _ in range(10_000):
        mask = rng.getrandbits(16)
        if mask:
            assert check_even_zohar(ElemSet(4, mask)).holds


def test_criterion_07_subspace_enumeration_totals():
    for n in range(0, 6):
        for m in range(0, n + 1):
            assert sum(1 for _ in enumerate_subspaces(n, m)) == gaussian_binomial(n, m)


def _mc_mean_subspace_count(n, m, trials, base_seed, chunk=20_000):
    """Mean of M_m over seeded samples, via the library's own coin stream."""
    triples = [tuple(subspace_members(V))[1:] for V in enumerate_subspaces(n, m)]
    total = 0
    first_chunk = None
    for lo in range(0, trials, chunk):
        seeds = [derive_seed(base_seed, i) for i in range(lo, min(trials, lo + chunk))]
        mat = coin_matrix(seeds, 1 << n)
        acc = np.zeros(len(seeds), dtype=np.int64)
        for tri in triples:
            prod = mat[:, tri[0]]
            for e in tri[1:]:
                prod = prod & mat[:, e]
            acc += prod
        total += int(acc.sum())
        if first_chunk is None:
            first_chunk = (seeds, acc)
    return total / trials, first_chunk


def test_criterion_08_moments_exact_and_monte_carlo():
    t0 = time.perf_counter()
    # exhaustive averaging over every generator set, n <= 3
    for n in (1, 2, 3):
        N = 1 << n
        for m in range(1, n + 1):
            masks = [subspace_members(V).mask & ~1 for V in enumerate_subspaces(n, m)]
            tot = sq = 0
            for bits in product((0, 1), repeat=N - 1):
                A = sum(b << (i + 1) for i, b in enumerate(bits))
                Mv = sum(1 for mk in masks if mk & ~A == 0)
                tot += Mv
                sq += Mv * Mv
            cnt = 1 << (N - 1)
            assert Fraction(tot, cnt) == expected_M(n, m)
            assert Fraction(sq, cnt) - Fraction(tot, cnt) ** 2 == variance_M(n, m)
    # seeded Monte Carlo at (6,2) and (8,2), 1e5 trials, within 4 SE
    trials = 100_000
    for n in (6, 8):
        mean, (seeds, acc) = _mc_mean_subspace_count(n, 2, trials, 80_000 + n)
        e = float(expected_M(n, 2))
        se = math.sqrt(float(variance_M(n, 2)) / trials)
        assert abs(mean - e) <= 4 * se, (n, mean, e, 4 * se)
        # the simulated counts agree with the graph pipeline on spot checks
        for s, a in list(zip(seeds, acc))[:3]:
            rep = subspace_cliques(sample_cayley(n, s))
            assert rep.counts.get(2, 0) == int(a)
    assert time.perf_counter() - t0 < 120.0


def test_criterion_09_expectation_lower_bound_exact():
    for n in range(2, 17):
        for m in range(1, min(n, 4) + 1):
            rep = moment_report(n, m)
            assert rep.holds_e, (n, m)
            assert rep.e_m >= rep.paper_e_lb


def test_criterion_10_eqkn_sweep_and_boundary_sequence():
    t0 = time.perf_counter()
    ns = np.arange(4, 10**6 + 1, dtype=np.int64)
    x = np.log2(ns.astype(np.float64))
    x = x + np.log2(x)
    m = np.floor(x).astype(np.int64)
    vals = (np.int64(1) << m) - ns * (m - 1) - 2
    assert int(vals.max()) <= 0
    # floats could misplace floor(x) only within 1e-9 of an integer; re-decide
    # those few exactly through the classifier
    risky = np.nonzero(np.abs(x - np.rint(x)) < 1e-9)[0]
    for i in risky:
        n_i = int(ns[i])
        assert eqkn_check(n_i, classify_n(n_i).m_pred).nonpositive
    # the classifier agrees with the vectorized floor on a sample
    rng = random.Random(10101)
    for _ in range(2000):
        i = rng.randrange(len(ns))
        assert classify_n(int(ns[i])).m_pred == int(m[i])
    # n_j = 2^(2^j - 1): one step above the prediction still closes the bound
    for j in (2, 3, 4, 5):
        n_j = seq_nj(j).n
        c = classify_n(n_j)
        assert eqkn_check(n_j, c.m_pred + 1).nonpositive, (j, n_j)
    assert time.perf_counter() - t0 < 30.0


def _brute_max_clique(adj, N):
    best = 1
    is_clique = [False] * (1 << N)
    is_clique[0] = True
    for mask in range(1, 1 << N):
        v = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        if is_clique[rest] and rest & ~adj[v] == 0:
            is_clique[mask] = True
            best = max(best, mask.bit_count())
    return best


def test_criterion_11_clique_oracle_and_subspace_graphs():
    rng = random.Random(111_111)
    for n in (2, 3, 4):
        for _ in range(50):
            G = sample_cayley(n, rng.getrandbits(63))
            out = max_clique(G)
            assert out.optimal
            assert out.size == _brute_max_clique(G.adjacency_masks(), 1 << n)
            assert verify_clique(G, out.witness)
    for n in range(2, 7):
        for dim in range(n + 1):
            for V in enumerate_subspaces(n, dim):
                G = from_generators(n, subspace_members(V))
                assert max_clique(G).size == 1 << dim


def _brute_chromatic(adj, N):
    colors = [-1] * N

    def go(v, k):
        if v == N:
            return True
        used = max(colors[:v], default=-1)
        for c in range(min(k, used + 2)):
            if all(colors[u] != c for u in range(v) if adj[v] >> u & 1):
                colors[v] = c
                if go(v + 1, k):
                    return True
                colors[v] = -1
        return False

    k = 1
    while not go(0, k):
        k += 1
    return k


def test_criterion_12_chromatic_consistency():
    rng = random.Random(121_212)
    for n in (2, 3, 4):
        for _ in range(10):
            G = sample_cayley(n, rng.getrandbits(63))
            br = chromatic_bracket(G)
            chi = _brute_chromatic(G.adjacency_masks(), 1 << n)
            assert br.lower <= chi <= br.upper
            if br.exact is not None:
                assert br.exact == chi
            # every coset coloring the bracket machinery can emit is proper
            comp_rep = subspace_cliques(G.complement())
            V = Subspace(n, comp_rep.witness_basis)
            if V.dim > 0:
                assert verify_coloring(G, coset_coloring(G, V))
    for n in (2, 3, 4):
        for dim in range(n + 1):
            for V in enumerate_subspaces(n, dim):
                G = from_generators(n, subspace_members(V))
                assert chromatic_bracket(G).exact == 1 << dim


def test_criterion_13_subspace_clique_statistics_n9():
    t0 = time.perf_counter()
    # thresholds are justified by the artifact's own expectations
    e4 = float(expected_M(9, 4))
    e5 = float(expected_M(9, 5))
    assert e4 > 50 and e5 < 0.01
    hits4 = hits5 = 0
    for i in range(100):
        rep = subspace_cliques(sample_cayley(9, derive_seed(913_913, i)))
        if rep.counts.get(4, 0) >= 1:
            hits4 += 1
        if rep.counts.get(5, 0) >= 1:
            hits5 += 1
    assert hits4 >= 95, hits4
    assert hits5 <= 5, hits5
    assert time.perf_counter() - t0 < 300.0


def test_criterion_14_tail_exponent_negative_at_scale():
    n = 1024
    k = math.ceil(n * math.log2(n))  # 10240
    for l in (10 * k, k * k, min(n * k, 2**20 * k)):
        t = tail_exponent(n, k, l)
        assert t.log2_bound < 0, (l, t)
    anchor = tail_exponent(n, k, 10 * k)
    assert abs(anchor.log2_bound + 7394.28) < 0.05
    # k^(31/30) ~ 13931 sits below the evaluator's l >= 10k domain
    with pytest.raises(PreconditionError):
        tail_exponent(n, k, round(k ** (31 / 30)))


def test_criterion_15_density_at_1e5():
    d_half = density_measure(10**5, 0.5)
    assert d_half.fraction >= Fraction(1, 2)
    d_tenth = density_measure(10**5, 0.1)
    assert float(d_tenth.fraction) >= 0.9 * 0.95


def _stripped_records(path):
    out = []
    with open(path) as fh:
        for line in fh:
            d = json.loads(line)
            d.pop("elapsed")
            out.append(json.dumps(d, sort_keys=True, separators=(",", ":")))
    return "\n".join(out).encode()


def test_criterion_16_experiment_determinism(tmp_path):
    def cfg(sub):
        return ExperimentConfig.from_dict(dict(
            ns=[4, 5], trials=5, base_seed=20240823,
            out_dir=str(tmp_path / sub)))

    r1 = run_experiment(cfg("one"), workers=1)
    r2 = run_experiment(cfg("two"), workers=1)
    r4 = run_experiment(cfg("four"), workers=4)
    b1 = _stripped_records(r1.records_path)
    assert b1 == _stripped_records(r2.records_path)
    assert b1 == _stripped_records(r4.records_path)
    # summaries carry no timestamps and must be bytewise equal as-is
    s1 = open(r1.summary_path, "rb").read()
    assert s1 == open(r2.summary_path, "rb").read()
    assert s1 == open(r4.summary_path, "rb").read()
