import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from negadesigns import matalg as ma
from negadesigns import seqcore as sc
from negadesigns.matalg import Structure

from oracles import all_ng_pairs, block2, gram_is, poly_matrix, seq

PAIR6 = (seq("+--+--"), seq("+----+"))

ternary_rows = st.lists(st.sampled_from((1, 0, -1)), min_size=1, max_size=10).map(tuple)


def _order4_conference_rows():
    """All sign patterns (0, c1, c2, c3) whose explicit negacyclic matrix is a conference matrix."""
    out = []
    for signs in itertools.product((1, -1), repeat=3):
        m = poly_matrix((0,) + signs, nega=True)
        if gram_is(m, 3):
            out.append((0,) + signs)
    return out


# ------------------------------------------------------------ building


def test_from_first_row_second_row():
    m = ma.from_first_row(seq("0++-"), Structure.NEGACYCLIC)
    assert tuple(m.entries[1]) == seq("+0++")


def test_from_first_row_order2():
    m = ma.from_first_row((1, -1), Structure.NEGACYCLIC)
    assert m.entries.tolist() == [[1, -1], [1, 1]]


def test_from_first_row_cyclic_all_ones():
    assert (ma.from_first_row((1, 1, 1, 1), Structure.CYCLIC).entries == 1).all()


@given(ternary_rows, st.booleans())
def test_from_first_row_matches_polynomial_in_shift(row, nega):
    tag = Structure.NEGACYCLIC if nega else Structure.CYCLIC
    assert np.array_equal(ma.from_first_row(row, tag).entries, poly_matrix(row, nega))


def test_structure_claim_is_checked():
    with pytest.raises(ma.MatrixError):
        ma.StructuredMatrix(np.array([[1, 1], [1, 1]]), Structure.NEGACYCLIC)


@given(ternary_rows)
def test_negacyclic_transpose(row):
    v = len(row)
    expected = (row[0],) + tuple(-row[v - i] for i in range(1, v))
    t = ma.negacyclic(row).T
    assert np.array_equal(t.entries, ma.negacyclic(expected).entries)


# -------------------------------------------------------------- verify


def test_verify_order4_conference_against_oracle():
    rows = _order4_conference_rows()
    assert seq("0++-") in rows
    assert seq("0+++") not in rows
    assert ma.verify(ma.negacyclic(seq("0++-")), ma.CONFERENCE)
    assert not ma.verify(ma.negacyclic(seq("0+++")), ma.CONFERENCE)
    for signs in itertools.product((1, -1), repeat=3):
        row = (0,) + signs
        assert ma.verify(ma.negacyclic(row), ma.CONFERENCE) == (row in rows)


def test_verify_order2_hadamard():
    assert ma.verify(ma.negacyclic((1, 1)), ma.HADAMARD)


def test_verify_rejects_wrong_pattern():
    assert not ma.verify(np.eye(2, dtype=int), ma.CONFERENCE)
    assert ma.verify(np.eye(3, dtype=int), ma.weighing(1))
    assert not ma.verify(np.eye(3, dtype=int), ma.weighing(2))
    with pytest.raises(ma.MatrixError):
        ma.weighing(0)


# --------------------------------------------------------------- arrays


def test_two_block_array_from_ng_pair():
    h = ma.two_n_array(*PAIR6)
    assert h.order == 12
    assert ma.verify(h, ma.HADAMARD)
    oracle = block2(poly_matrix(PAIR6[0], True), poly_matrix(PAIR6[1], True))
    assert np.array_equal(h.entries, oracle)


def test_two_block_array_order2():
    one = ma.dense([[1]])
    assert ma.two_block_array(one, one).entries.tolist() == [[1, 1], [-1, 1]]


def test_two_block_array_circulant_pg_pair():
    a, b = (1, 1), (1, -1)
    assert sc.is_complementary([a, b], sc.Kind.PERIODIC)
    assert ma.verify(ma.two_c_array(a, b), ma.HADAMARD)


def test_two_block_array_order_mismatch():
    with pytest.raises(ma.MatrixError):
        ma.two_block_array(ma.dense([[1]]), ma.dense([[1, 1], [1, 1]]))


@pytest.mark.parametrize("v", [2, 4, 6])
def test_two_n_array_is_a_bijection_onto_hadamard(v):
    ng = set(all_ng_pairs(v))
    seqs = [tuple(s) for s in itertools.product((1, -1), repeat=v)]
    for a in seqs:
        for b in seqs:
            assert ma.verify(ma.two_n_array(a, b), ma.HADAMARD) == ((a, b) in ng)
    # distinct pairs give distinct matrices, and the blocks read back the pair
    mats = {ma.two_n_array(a, b).entries.tobytes() for a, b in ng}
    assert len(mats) == len(ng)
    for a, b in list(ng)[:20]:
        h = ma.two_n_array(a, b).entries
        assert tuple(h[0, :v]) == a and tuple(h[0, v:]) == b


def test_williamson_array_all_ones_order1():
    # t = 1 rows (+),(+),(+),(+) satisfy both quadruple identities, so the array is Hadamard
    one = ma.dense([[1]])
    h = ma.williamson_array(one, one, one, one).entries
    pattern = np.array([[1, 1, 1, 1], [-1, 1, -1, 1], [-1, 1, 1, -1], [-1, -1, 1, 1]])
    assert np.array_equal(h, pattern)
    assert gram_is(pattern, 4)
    assert ma.verify(h, ma.HADAMARD)


def test_williamson_array_detects_bad_quad():
    one, neg = ma.dense([[1]]), ma.dense([[-1]])
    three = [ma.circulant((1, 1, 1))] * 4
    assert not ma.verify(ma.williamson_array(*three), ma.HADAMARD)
    assert ma.verify(ma.williamson_array(one, neg, one, one), ma.HADAMARD)


def test_williamson_array_weighing_4_2():
    z, p = ma.circulant((0,)), ma.circulant((1,))
    assert ma.verify(ma.williamson_array(z, p, z, p), ma.weighing(2))


def test_williamson_array_order_mismatch():
    one = ma.dense([[1]])
    with pytest.raises(ma.MatrixError):
        ma.williamson_array(one, one, one, ma.dense([[1, 1], [1, 1]]))


# ----------------------------------------------------------- classifier


def test_classify_negacyclic_order2():
    assert ma.classify_toeplitz_hadamard(np.array([[1, 1], [-1, 1]])) is Structure.NEGACYCLIC


def test_classify_rejects_non_toeplitz():
    # [[+,+],[+,-]] is Hadamard but its diagonal is not constant
    m = np.array([[1, 1], [1, -1]])
    assert ma.verify(m, ma.HADAMARD)
    with pytest.raises(ma.MatrixError, match="Toeplitz"):
        ma.classify_toeplitz_hadamard(m)


def test_classify_rejects_non_hadamard():
    with pytest.raises(ma.MatrixError, match="Hadamard"):
        ma.classify_toeplitz_hadamard(np.ones((2, 2), dtype=int))


# ------------------------------------------------------ Gram decomposition


def test_gram_naf_examples():
    assert ma.gram_naf_decomposition(ma.negacyclic(seq("0++-"))) == [3, 0, 0, 0]
    assert ma.gram_naf_decomposition(ma.negacyclic((1, 1))) == [2, 0]
    assert ma.gram_naf_decomposition(ma.negacyclic(PAIR6[0])) == [6, 0, -2, 0, 2, 0]


@given(ternary_rows)
def test_gram_naf_equals_naf_vector(row):
    assert ma.gram_naf_decomposition(ma.negacyclic(row)) == sc.correlation_vector(row)


def test_gram_naf_rejects_dense():
    with pytest.raises(ma.MatrixError):
        ma.gram_naf_decomposition(ma.dense([[1, 1], [1, 1]]))


# ------------------------------------------------------------------ text


def test_matrix_text_round_trip():
    m = ma.negacyclic(seq("0++-"))
    assert ma.parse_matrix(ma.format_matrix(m)) == m
    assert ma.parse_matrix(ma.format_structured(m)) == m
    assert ma.parse_matrix("negacyclic:++").entries.tolist() == [[1, 1], [-1, 1]]
