import hashlib
from importlib import resources

import pytest
import sympy

from negadesigns import corpus, matalg
from negadesigns import seqcore as sc
from negadesigns.corpus import Status

from oracles import is_ng, seq


def test_checksum_matches_shipped_data():
    base = resources.files("negadesigns") / "data"
    digest = hashlib.sha256((base / "corpus.txt").read_bytes()).hexdigest()
    assert digest == (base / "corpus.sha256").read_text().split()[0]


def test_record_counts():
    s = corpus.summarize(corpus.verify_all())
    assert s == {"records": 79, "ok": 48, "corrupt": 31, "corrupt_rows": 37, "failed": 1}


@pytest.mark.parametrize("section,ok,bad", [("R", 1, 11), ("B", 14, 5), ("C", 15, 2), ("D", 11, 5), ("E", 5, 6)])
def test_section_counts(section, ok, bad):
    recs = corpus.records(section)
    assert sum(r.status is Status.OK for r in recs) == ok
    assert sum(r.status is Status.CORRUPT for r in recs) == bad


def test_parse_line_flags_damage():
    r = corpus.parse_line("C:6|NGPairAbbrevC||||+-_+|+-+")
    assert r.status is Status.CORRUPT and r.row_status == (Status.CORRUPT, Status.OK)
    r = corpus.parse_line("C:6|NGPairAbbrevC||||+-++|+-")
    assert r.issues == ("row 1: 2 entries, expected 3",)
    with pytest.raises(corpus.CorpusError):
        corpus.parse_line("C:6|Bogus||||+|+")
    with pytest.raises(corpus.CorpusError):
        corpus.parse_line("C:6|NGPairAbbrevC")


def test_corrupt_records_are_not_expanded():
    with pytest.raises(corpus.CorpusError):
        corpus.expand_record(corpus.get("C:30"))


# -------------------------------------------------------------- expansion


def test_expand_abbreviated_length4():
    pair = corpus.expand_record(corpus.get("C:4"))
    assert (pair.a, pair.b) == (seq("+---"), seq("+-+-"))
    assert is_ng(pair.a, pair.b)
    pair = corpus.expand_record(corpus.get("D:4"))
    assert (pair.a, pair.b) == (seq("+-+-"), seq("++--"))


def test_expansion_helpers():
    assert corpus.expand_symmetric(seq("0-++"), 7) == seq("0-++++-")
    assert corpus.expand_quasi_symmetric(seq("+-+"), 4) == seq("+-+-")
    assert corpus.expand_reversal_negating(seq("++"), 4) == seq("++--")
    assert corpus.expand_alternative(seq("++"), 4) is None


def test_b14_blocks():
    a, b = corpus.expand_record(corpus.get("B:14"))
    assert a == seq("0-++++-") and b == seq("++-++-+")


@pytest.mark.parametrize("rec", [r for r in corpus.records("C") + corpus.records("D") if r.status is Status.OK],
                         ids=lambda r: r.source)
def test_pair_records_are_ng_and_skew(rec):
    pair = corpus.expand_record(rec)
    assert is_ng(pair.a, pair.b)
    h = pair.matrix().entries
    assert ((h + h.T) == 2 * matalg.np.eye(len(h), dtype=int)).all()


@pytest.mark.parametrize("rec", [r for r in corpus.records("B") if r.status is Status.OK], ids=lambda r: r.source)
def test_block_records_give_conference_matrices(rec):
    a, b = corpus.expand_record(rec)
    assert a == a[:1] + a[1:][::-1] and b == b[:1] + b[1:][::-1]
    assert matalg.verify(matalg.two_c_array(a, b), matalg.CONFERENCE)


@pytest.mark.parametrize("rec", [r for r in corpus.records("E") if r.status is Status.OK], ids=lambda r: r.source)
def test_weighing_quads(rec):
    rows = rec.seqs()
    m = matalg.williamson_array(*(matalg.circulant(x) for x in rows))
    assert matalg.verify(m, matalg.weighing(rec.key - 2))


def test_only_the_largest_conference_row_survives_intact():
    ok = [r.source for r in corpus.records("R") if r.status is Status.OK]
    assert ok == ["R:122"]
    row = corpus.expand_record(corpus.get("R:122"))
    assert matalg.verify(matalg.negacyclic(row.row), matalg.CONFERENCE)


# ------------------------------------------------------------ verification


def test_only_the_order35_record_fails_a_check():
    failing = [(v.record.source, v.failures) for v in corpus.verify_all() if v.failures]
    assert failing == [("Q:35", ("row a is of skew type",))]


def test_order35_row_a_has_one_transposition():
    a = corpus.get("Q:35").seqs()[0]
    t = len(a)
    bad = [i for i in range(1, t) if a[i] != -a[t - i]]
    assert bad == [6, 7, 28, 29]
    fixed = list(a)
    fixed[6], fixed[7] = fixed[7], fixed[6]
    assert all(fixed[i] == -fixed[t - i] for i in range(1, t))


def test_order35_corrupt_rows():
    r = corpus.get("Q:35")
    assert r.corrupt_rows == 3
    assert r.row_status == (Status.OK, Status.CORRUPT, Status.CORRUPT, Status.CORRUPT)


def test_worked_length10_quote_mismatch_is_reported():
    r = corpus.get("W:10")
    assert r.row_status[3] is Status.CORRUPT
    v = corpus.verify_record(r)
    assert v.passed and "multiplier 9 maps the tabulated d to d'" in v.checks


def test_format_verdict_states():
    lines = {v.record.source: corpus.format_verdict(v) for v in corpus.verify_all()}
    assert lines["C:30"].split("\t")[2] == "CORRUPT"
    assert lines["Q:35"].split("\t")[2] == "CORRUPT-FAIL"
    assert lines["W:10"].split("\t")[2] == "CORRUPT-PARTIAL"
    assert lines["B:14"].split("\t")[2] == "PASS"


def test_lookups():
    assert corpus.conference_row_for(13).row == corpus.get("W:14").seqs()[0]
    assert corpus.conference_row_for(53) is None
    assert corpus.polynomial_for(53) == "x^2+x+5"
    assert corpus.pair_record(10).source == "D:10"
    assert corpus.pair_record(7) is None


# --------------------------------------------------------------- gap lists


def test_gap_lists_recompute():
    first, second = corpus.gap_lists()
    assert corpus.recompute_gap_list() == first

    def is_pp(n):
        return n > 1 and len(sympy.factorint(n)) == 1

    assert first == tuple(t for t in range(1, 126, 2) if not is_pp(2 * t - 1) and not is_pp(4 * t - 1))
    assert second == tuple(t for t in first if t not in corpus.KNOWN_WILLIAMSON)
