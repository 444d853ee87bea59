import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from negadesigns import corpus, equiv
from negadesigns import search as se
from negadesigns.search import Mode, Outcome

from oracles import all_ng_pairs, block2, gram_is, naf, poly_matrix, seq


def brute_nega_hadamard(n):
    return sorted(
        s for s in itertools.product((1, -1), repeat=n) if gram_is(poly_matrix(s, True), n)
    )


def brute_nega_conference(n):
    return sorted(
        (0,) + s
        for s in itertools.product((1, -1), repeat=n - 1)
        if gram_is(poly_matrix((0,) + s, True), n - 1)
    )


def brute_weighing(order, w):
    v = order // 2
    out = []
    for a in itertools.product((1, 0, -1), repeat=v):
        for b in itertools.product((1, 0, -1), repeat=v):
            if sum(map(abs, a + b)) != w:
                continue
            m = block2(poly_matrix(a, True), poly_matrix(b, True))
            if gram_is(m, w):
                out.append((a, b))
    return sorted(out)


# ------------------------------------------------------------- kernels


@given(st.lists(st.sampled_from((1, -1)), min_size=2, max_size=16), st.data())
def test_bit_parallel_naf_matches_oracle(a, data):
    n = len(a)
    k = data.draw(st.integers(1, n - 1))
    _, m = se.pack(a)
    assert int(se.naf_binary(np.array([m], dtype=np.int64), n, k)[0]) == naf(a, k)


@given(st.lists(st.sampled_from((1, 0, -1)), min_size=2, max_size=16), st.data())
def test_ternary_naf_matches_oracle(a, data):
    n = len(a)
    k = data.draw(st.integers(1, n - 1))
    s, x = se.pack(a)
    got = se.naf_ternary(np.array([s], dtype=np.int64), np.array([x], dtype=np.int64), n, k)
    assert int(got[0]) == naf(a, k)
    assert se.unpack(n, x, s) == tuple(a)


# -------------------------------------------------------- NG-pair search


@pytest.mark.parametrize("v", [1, 2, 4, 6, 8])
def test_ng_enumeration_matches_brute_force(v):
    rep = se.search_ng(v, Mode.ALL)
    assert rep.witnesses == sorted(all_ng_pairs(v))
    assert rep.outcome is Outcome.FOUND and rep.exhausted


def test_ng_counts_small():
    assert [se.search_ng(v).count for v in (2, 4, 6)] == [16, 128, 576]


def test_ng_rejects_odd_length():
    with pytest.raises(se.SearchError):
        se.search_ng(5)


def test_ng_exists_mode_returns_a_witness():
    rep = se.search_ng(10, Mode.EXISTS)
    assert rep.outcome is Outcome.FOUND and rep.count >= 1 and not rep.exhausted


@pytest.mark.parametrize("v", [2, 4, 6])
def test_ng_canonical_representatives_cover_orbits(v):
    reps = se.search_ng(v, Mode.CANONICAL).witnesses
    everything = set(all_ng_pairs(v))
    covered = set()
    for r in reps:
        assert equiv.canonical_form(r) == r
        orb = equiv.orbit(r)
        assert not orb & covered
        covered |= orb
    assert covered == everything


def test_corpus_pairs_appear_among_canonical_representatives():
    for v in (2, 4, 6, 8, 10, 12):
        reps = set(se.search_ng(v, Mode.CANONICAL).witnesses)
        for section in ("C", "D"):
            rec = corpus.pair_record(v, section)
            if rec is None or rec.status is corpus.Status.CORRUPT:
                continue
            pair = corpus.expand_record(rec)
            assert equiv.canonical_form((pair.a, pair.b)) in reps


def test_ng_budget():
    rep = se.search_ng(8, budget=10)
    assert rep.outcome is Outcome.BUDGET and not rep.exhausted


# ----------------------------------------------- negacyclic Hadamard search


def test_nega_hadamard_order2_has_four_witnesses():
    rep = se.search_negacyclic_hadamard(2)
    assert rep.witnesses == brute_nega_hadamard(2)
    assert rep.count == 4


@pytest.mark.parametrize("n", [1, 3, 4, 5, 6, 8, 10, 12])
def test_nega_hadamard_matches_brute_force(n):
    rep = se.search_negacyclic_hadamard(n)
    assert rep.witnesses == brute_nega_hadamard(n)
    assert rep.exhausted


def test_nega_hadamard_thread_and_chunk_invariance():
    a = se.search_negacyclic_hadamard(16, threads=1, chunk_bits=22)
    b = se.search_negacyclic_hadamard(16, threads=4, chunk_bits=3)
    assert a.witnesses == b.witnesses == []
    assert a.nodes == b.nodes == 1 << 15


def test_nega_hadamard_budget():
    assert se.search_negacyclic_hadamard(20, budget=100).outcome is Outcome.BUDGET


# --------------------------------------------- negacyclic conference search


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
def test_nega_conference_matches_brute_force(n):
    rep = se.search_negacyclic_conference(n)
    assert rep.witnesses == brute_nega_conference(n)


def test_nega_conference_order4_contains_example():
    assert seq("0++-") in se.search_negacyclic_conference(4).witnesses


@pytest.mark.parametrize("n", [6, 8, 18, 20, 24])
def test_nega_conference_exists_for_prime_power_plus_one(n):
    rep = se.search_negacyclic_conference(n, Mode.EXISTS)
    assert rep.outcome is Outcome.FOUND


@pytest.mark.parametrize("n", [16, 22])
def test_nega_conference_none_when_n_minus_1_not_prime_power(n):
    rep = se.search_negacyclic_conference(n)
    assert rep.outcome is Outcome.EXHAUSTED and rep.count == 0


def test_nega_conference_thread_invariance():
    a = se.search_negacyclic_conference(18, threads=1)
    b = se.search_negacyclic_conference(18, threads=3, chunk_bits=2)
    assert a.witnesses == b.witnesses and a.count > 0


def test_nega_conference_rejects_odd_order():
    with pytest.raises(se.SearchError):
        se.search_negacyclic_conference(7)


# ------------------------------------------------------ 2N weighing search


@pytest.mark.parametrize("order,w", [(2, 1), (2, 2), (4, 2), (4, 3), (4, 4), (6, 4), (6, 5), (8, 7)])
def test_weighing_enumeration_matches_brute_force(order, w):
    rep = se.search_2n_weighing(order, w, Mode.ALL)
    assert rep.witnesses == brute_weighing(order, w)


@pytest.mark.parametrize("order,w", [(4, 3), (4, 2), (8, 7), (10, 9), (12, 11)])
def test_weighing_exists(order, w):
    rep = se.search_2n_weighing(order, w)
    assert rep.outcome is Outcome.FOUND
    from negadesigns import matalg

    for a, b in rep.witnesses:
        assert matalg.verify(matalg.two_n_array(a, b), matalg.weighing(w))


def test_weighing_spec_validation():
    with pytest.raises(se.SearchError):
        se.search_2n_weighing(5, 3)
    with pytest.raises(se.SearchError):
        se.search_2n_weighing(4, 5)


def test_weighing_budget():
    assert se.search_2n_weighing(12, 10, Mode.ALL, budget=50).outcome is Outcome.BUDGET


# -------------------------------------------------------------- reports


def test_report_is_deterministic_without_timing():
    a = se.format_report(se.search_negacyclic_hadamard(2))
    b = se.format_report(se.search_negacyclic_hadamard(2))
    assert a == b and "seconds" not in a
    assert "seconds" in se.format_report(se.search_negacyclic_hadamard(2), timing=True)


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("NEGADESIGNS_THREADS", "3")
    assert se.thread_count() == 3
    assert se.thread_count(2) == 2
    monkeypatch.setenv("NEGADESIGNS_THREADS", "x")
    with pytest.raises(se.SearchError):
        se.thread_count()
