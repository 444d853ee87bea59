import io

import pytest

from negadesigns import cli, corpus, equiv
from negadesigns import seqcore as sc

from oracles import is_ng


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


def data_lines(text):
    return [ln for ln in text.splitlines() if ln and not ln.startswith("#")]


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


# ------------------------------------------------------------- examples


def test_construct_ito_q11_gives_length6_pair():
    code, text = run("construct", "ng", "--series", "ito", "--q", "11")
    assert code == 0
    a, b = (sc.parse_seq(x) for x in data_lines(text))
    assert len(a) == len(b) == 6 and is_ng(a, b)
    ref = corpus.expand_record(corpus.get("D:6"))
    assert equiv.are_equivalent((a, b), ref.astuple())


def test_verify_order2_hadamard(write):
    assert run("verify", "--kind", "hadamard", "--file", write("h.txt", "++\n-+\n"))[0] == 0
    assert run("verify", "--kind", "hadamard", "--file", write("g.txt", "++\n++\n"))[0] == 2


def test_corpus_check_b_is_all_ok():
    code, text = run("corpus", "check", "--source", "B")
    assert code == 0
    rows = [ln.split("\t") for ln in data_lines(text) if not ln.startswith("summary")]
    assert {r[2] for r in rows} == {"PASS", "CORRUPT"}


def test_corpus_check_everything_reports_the_order35_failure():
    code, text = run("corpus", "check")
    assert code == 2
    assert "summary\trecords=79 ok=48 corrupt=31 corrupt_rows=37 failed=1" in text


def test_corpus_list():
    code, text = run("corpus", "list", "--source", "W")
    assert code == 0 and len(data_lines(text)) == 3


def test_pipeline_conference_to_williamson_hadamard():
    code, text = run("pipeline", "negacyclic-conference:13", "symmetric-2c", "turyn-williamson",
                     "williamson-array", "verify:hadamard")
    assert code == 0
    assert text.rstrip().endswith("PASS")


def test_pipeline_ito_double_gives_length8_ng_pair():
    code, text = run("pipeline", "ito-ng:7", "double", "verify:ng")
    assert code == 0
    lines = text.splitlines()
    a, b = (sc.parse_seq(x) for x in lines[1].split("\t")[3].split())
    assert len(a) == 8 and is_ng(a, b)


def test_pipeline_length10_pair_to_quasi_williamson(write):
    pair = corpus.expand_record(corpus.get("D:10"))
    f = write("p.txt", f"{sc.format_seq(pair.a)}\n{sc.format_seq(pair.b)}\n")
    assert run("pipeline", f"read-pair:{f}", "ng-to-qw", "verify:qw")[0] == 0
    assert run("pipeline", f"read-pair:{f}", "ng-to-qw", "qw-to-ng", "verify:ng")[0] == 0


def test_pipeline_type_mismatch_is_a_usage_error():
    assert run("pipeline", "ito-ng:7", "williamson-array")[0] == 1
    assert run("pipeline", "nonsense:3")[0] == 1


def test_pipeline_first_failure_aborts(write):
    f = write("p.txt", "++++\n++++\n")
    code, text = run("pipeline", f"read-pair:{f}", "verify:ng", "double")
    assert code == 2
    assert "double" not in text


# ------------------------------------------------------------ exit codes


def test_usage_errors_exit_1():
    assert run("bogus")[0] == 1
    assert run("construct", "ng", "--series", "ito")[0] == 1
    assert run("search", "weighing", "--order", "4")[0] == 1
    assert run("verify", "--kind", "ng", "--file", "/nonexistent/x")[0] == 1
    assert run("construct", "negacyclic-conference", "--q", "12")[0] == 1


def test_search_exit_codes():
    code, text = run("search", "nega-hadamard", "--order", "2")
    assert code == 0
    rows = [ln for ln in text.splitlines() if ln.startswith("row")]
    assert sorted(rows) == ["row\t++", "row\t+-", "row\t-+", "row\t--"]
    assert run("search", "nega-hadamard", "--order", "4")[0] == 3
    assert run("search", "ng", "--length", "8", "--budget", "5")[0] == 4
    assert run("search", "weighing", "--order", "4", "--weight", "3")[0] == 0


def test_equiv_exit_codes():
    p = "+----+----,+--+-+-++-"
    q = sc.format_seq(corpus.expand_record(corpus.get("D:10")).a) + "," + sc.format_seq(
        corpus.expand_record(corpus.get("D:10")).b)
    assert run("equiv", "--pair1", p, "--pair2", q)[0] == 0
    assert run("equiv", "--pair1", "++,+-", "--pair2", "+-,++")[0] == 0
    assert run("equiv", "--pair1", "+---,+-+-", "--pair2", "++++,++++")[0] == 3
    assert run("equiv", "--pair1", p, "--pair2", q, "--max-orbit", "10")[0] == 4


def test_paley_question_runs():
    code, text = run("equiv", "--paley-question", "5")
    assert code in (0, 3, 4)
    assert text.splitlines()[2].startswith("verdict\t")


# -------------------------------------------------------- determinism


@pytest.mark.parametrize("argv", [
    ("search", "ng", "--length", "4", "--canonical"),
    ("corpus", "check"),
    ("construct", "negacyclic-conference", "--q", "13"),
    ("equiv", "--pair1", "++,+-", "--pair2", "+-,++"),
])
def test_identical_invocations_are_byte_identical(argv):
    assert run(*argv) == run(*argv)
    code, text = run("--porcelain", *argv)
    assert not any(ln.startswith("#") for ln in text.splitlines())
    assert run(*argv, "--porcelain") == (code, text)


# ------------------------------------------------------- closed loop


@pytest.mark.parametrize("construct,kind", [
    (("paley-conference", "--q", "5"), "conference"),
    (("paley-conference", "--q", "9"), "conference"),
    (("negacyclic-conference", "--q", "9"), "conference-row"),
    (("negacyclic-conference", "--q", "13"), "conference-row"),
    (("ng", "--series", "first-paley", "--q", "5"), "ng"),
    (("ng", "--series", "second-paley", "--q", "7"), "ng"),
    (("ng", "--series", "ito", "--q", "19"), "ng"),
])
def test_construct_output_reverifies(construct, kind, write):
    code, text = run("construct", *construct, "--verify")
    assert code == 0
    f = write("out.txt", text)
    assert run("verify", "--kind", kind, "--file", f)[0] == 0


def test_construct_chain_through_files(write):
    _, pair = run("construct", "ng", "--series", "ito", "--q", "19")
    pf = write("pair.txt", pair)
    code, quad = run("construct", "ng-to-qw", "--pair", pf, "--verify")
    assert code == 0
    qf = write("quad.txt", quad)
    assert run("verify", "--kind", "qw", "--file", qf)[0] == 0
    code, back = run("construct", "qw-to-ng", "--rows", qf, "--verify")
    assert code == 0
    assert run("verify", "--kind", "ng", "--file", write("back.txt", back))[0] == 0
    code, dbl = run("construct", "double", "--pair", pf, "--verify")
    assert code == 0
    assert run("verify", "--kind", "ng", "--file", write("dbl.txt", dbl))[0] == 0


def test_weighing_construction_verifies():
    code, text = run("construct", "weighing", "--q", "7", "--verify")
    assert code == 0
    assert [ln.split("\t")[0] for ln in data_lines(text)][:2] == ["W(8,7)", "W(16,14)"]
