"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 verification failure,
3 negative search or equivalence result, 4 undecided or budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import constructions as cons
from . import corpus, equiv, gf, matalg, search, seqcore
from .seqcore import Kind, format_seq

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_NEGATIVE, EXIT_UNDECIDED = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ------------------------------------------------------------------ I/O


def _read_text(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def read_rows(path: str, count: int | None = None) -> list[seqcore.Seq]:
    rows = [seqcore.parse_seq(ln) for ln in _read_text(path).splitlines() if ln.strip() and not ln.startswith("#")]
    if count is not None and len(rows) != count:
        raise UsageError(f"{path}: expected {count} rows, found {len(rows)}")
    return rows


def read_pair(arg: str) -> tuple[seqcore.Seq, seqcore.Seq]:
    """A pair from a two-row file, or inline as 'a,b'."""
    if arg != "-" and not Path(arg).exists() and "," in arg:
        parts = [seqcore.parse_seq(x) for x in arg.split(",")]
        if len(parts) != 2:
            raise UsageError(f"{arg!r}: expected two comma-separated sequences")
        return parts[0], parts[1]
    a, b = read_rows(arg, 2)
    return a, b


def _emit(out, lines):
    for ln in lines:
        out.write(ln + "\n")


def _pair_lines(a, b) -> list[str]:
    return [format_seq(a), format_seq(b)]


# ------------------------------------------------------------ construct


def _construct(args, out) -> int:
    what = args.what
    ok = True
    if what == "paley-conference":
        m = cons.paley_conference(args.q)
        _emit(out, [matalg.format_matrix(m)])
        ok = matalg.verify(m, matalg.CONFERENCE)
    elif what == "negacyclic-conference":
        r = cons.negacyclic_conference(args.q, args.poly)
        lines = [f"negacyclic:{format_seq(r.row)}"]
        if not args.porcelain:
            lines.insert(0, f"# order {r.order}, q = {r.q}, polynomial {r.poly or '-'}, from {r.source}")
        _emit(out, lines)
        ok = matalg.verify(r.matrix(), matalg.CONFERENCE)
    elif what == "ng":
        if args.series == "ito":
            pair = cons.ito_ng(args.q, args.poly).pair
        else:
            want = 1 if args.series == "first-paley" else 3
            if args.q % 4 != want:
                raise UsageError(f"{args.series} series needs q = {want} mod 4")
            pair = cons.paley_ng(args.q, args.poly)
        _emit(out, _pair_lines(*pair.astuple()))
        ok = matalg.verify(pair.matrix(), matalg.HADAMARD)
    elif what == "symmetric-2c":
        a, b = cons.symmetric_2c_blocks(cons.negacyclic_conference(args.q, args.poly))
        _emit(out, _pair_lines(a, b))
        ok = matalg.verify(matalg.two_c_array(a, b), matalg.CONFERENCE)
    elif what == "turyn-mult":
        g = read_pair(args.golay)
        p = read_pair(args.pair)
        e, f = cons.turyn_multiply(g, p, Kind(args.kind))
        _emit(out, _pair_lines(e, f))
        ok = seqcore.is_complementary([e, f], Kind(args.kind))
    elif what == "double":
        e, f = cons.double(read_pair(args.pair))
        _emit(out, _pair_lines(e, f))
        ok = matalg.verify(matalg.two_n_array(e, f), matalg.weighing(seqcore.weight(e) + seqcore.weight(f)))
    elif what == "qw-to-ng":
        quad = cons.QuasiWilliamsonQuad(*read_rows(args.rows, 4))
        pair = cons.qw_to_ng(quad)
        _emit(out, _pair_lines(*pair.astuple()))
        ok = seqcore.is_ng_pair(*pair.astuple())
    elif what == "ng-to-qw":
        quad = cons.ng_to_qw(cons.NGPair(*read_pair(args.pair)))
        _emit(out, [format_seq(r) for r in quad.rows()])
        ok = matalg.verify(quad.matrix(), matalg.HADAMARD)
    elif what == "weighing":
        res = cons.weighing_from_ng(args.q)
        lines = []
        for w in res:
            lines.append(f"W({w.order},{w.weight})\t{w.label}\t" + "\t".join(format_seq(s) for s in w.blocks))
            ok = ok and matalg.verify(matalg.two_n_array(*w.blocks), matalg.weighing(w.weight))
        _emit(out, lines)
    else:
        raise UsageError(f"unknown construction {what!r}")
    if args.verify and not ok:
        _emit(sys.stderr, ["verification failed"])
        return EXIT_VERIFY
    return EXIT_OK


# --------------------------------------------------------------- verify


def _verify(args, out) -> int:
    kind = args.kind
    if kind in ("hadamard", "conference", "weighing", "skew-hadamard"):
        m = matalg.parse_matrix(_read_text(args.file))
        if kind == "hadamard":
            ok = matalg.verify(m, matalg.HADAMARD)
        elif kind == "skew-hadamard":
            ok = matalg.is_skew_hadamard(m)
        elif kind == "conference":
            ok = matalg.verify(m, matalg.CONFERENCE)
        else:
            if args.weight is None:
                raise UsageError("--weight is required for weighing matrices")
            ok = matalg.verify(m, matalg.weighing(args.weight))
        label = f"{kind} order {m.order}"
    elif kind == "ng":
        a, b = read_rows(args.file, 2)
        classes = seqcore.classify_pair(a, b)
        ok = seqcore.PairClass.NG in classes
        label = "pair classes " + ",".join(sorted(c.value for c in classes))
    elif kind == "qw":
        try:
            cons.QuasiWilliamsonQuad(*read_rows(args.file, 4))
            ok = True
        except cons.InvalidQuad as exc:
            ok, label = False, str(exc)
        else:
            label = "quasi-Williamson quadruple"
    elif kind == "conference-row":
        lines = [ln for ln in _read_text(args.file).splitlines() if ln.strip() and not ln.startswith("#")]
        if len(lines) != 1:
            raise UsageError(f"{args.file}: expected one row, found {len(lines)}")
        row = seqcore.parse_seq(lines[0].strip().removeprefix("negacyclic:"))
        try:
            cons.ConferenceRow(row)
            ok, label = True, "negacyclic conference row"
        except cons.ConstructionError as exc:
            ok, label = False, str(exc)
    else:
        raise UsageError(f"unknown kind {kind!r}")
    _emit(out, [f"{'PASS' if ok else 'FAIL'}\t{label}"])
    return EXIT_OK if ok else EXIT_VERIFY


# --------------------------------------------------------------- search


def _search(args, out) -> int:
    if args.what == "ng":
        mode = search.Mode.CANONICAL if args.canonical else search.Mode.ALL if args.all else search.Mode.EXISTS
        rep = search.search_ng(args.length, mode, args.budget, args.threads)
    elif args.what == "nega-hadamard":
        rep = search.search_negacyclic_hadamard(args.order, args.budget, args.threads)
    elif args.what == "nega-conference":
        rep = search.search_negacyclic_conference(args.order, budget=args.budget, threads=args.threads)
    else:
        mode = search.Mode.ALL if args.all else search.Mode.EXISTS
        rep = search.search_2n_weighing(args.order, args.weight, mode, args.budget, args.threads)
    _emit(out, [search.format_report(rep)])
    if not args.porcelain:
        print(f"# {rep.seconds:.3f} s", file=sys.stderr)
    return {search.Outcome.FOUND: EXIT_OK, search.Outcome.EXHAUSTED: EXIT_NEGATIVE}.get(rep.outcome, EXIT_UNDECIDED)


# ---------------------------------------------------------------- equiv


def _equiv(args, out) -> int:
    if args.paley_question is not None:
        q = args.paley_question
        if q % 4 != 1 or gf.prime_power(q) is None or gf.prime_power(2 * q + 1) is None:
            raise UsageError("needs q = 1 mod 4 with q and 2q+1 prime powers")
        p1 = cons.paley_ng(q).astuple()
        p2 = cons.paley_ng(2 * q + 1).astuple()
        _emit(out, [f"first\t{format_seq(p1[0])}\t{format_seq(p1[1])}", f"second\t{format_seq(p2[0])}\t{format_seq(p2[1])}"])
    else:
        if not args.pair1 or not args.pair2:
            raise UsageError("--pair1 and --pair2 are required")
        p1 = read_pair(args.pair1)
        p2 = read_pair(args.pair2)
    res = equiv.are_equivalent(p1, p2, args.max_orbit)
    _emit(out, [f"verdict\t{res.verdict.value}"])
    if res.verdict is equiv.Verdict.EQUIVALENT:
        _emit(out, [f"script\t{equiv.format_script(res.script) or '(identity)'}"])
    return {
        equiv.Verdict.EQUIVALENT: EXIT_OK,
        equiv.Verdict.INEQUIVALENT: EXIT_NEGATIVE,
        equiv.Verdict.UNDECIDED: EXIT_UNDECIDED,
    }[res.verdict]


# --------------------------------------------------------------- corpus


def _corpus(args, out) -> int:
    if args.what == "list":
        for r in corpus.records(args.source):
            meta = f"q={r.q} p={r.p} {r.poly or '-'}" if r.q else ""
            _emit(out, [f"{r.source}\t{r.kind}\t{r.status.value}\t{meta}".rstrip()])
        return EXIT_OK
    verdicts = corpus.verify_all(args.source)
    _emit(out, [corpus.format_verdict(v) for v in verdicts])
    s = corpus.summarize(verdicts)
    _emit(out, [f"summary\trecords={s['records']} ok={s['ok']} corrupt={s['corrupt']} corrupt_rows={s['corrupt_rows']} failed={s['failed']}"])
    return EXIT_VERIFY if any(v.failures for v in verdicts) else EXIT_OK


# ------------------------------------------------------------- pipeline


def _stage_value(kind: str, value) -> tuple[str, object]:
    return kind, value


def _pipe_verify(state, arg):
    kind, value = state
    if arg == "hadamard":
        if kind != "matrix":
            raise TypeError
        ok = matalg.verify(value, matalg.HADAMARD)
    elif arg == "conference":
        if kind == "row":
            value = value.matrix()
        elif kind == "blocks":
            value = matalg.two_c_array(*value)
        elif kind != "matrix":
            raise TypeError
        ok = matalg.verify(value, matalg.CONFERENCE)
    elif arg == "ng":
        if kind != "pair":
            raise TypeError
        ok = seqcore.is_ng_pair(*value)
    elif arg == "qw":
        if kind != "quad":
            raise TypeError
        ok = matalg.verify(value.matrix(), matalg.HADAMARD)
    else:
        raise UsageError(f"unknown verification {arg!r}")
    return ok


def _pipe_step(state, name: str, arg: str | None):
    kind = state[0] if state else None

    def need(*kinds):
        if kind not in kinds:
            raise UsageError(f"stage {name} expects {'/'.join(kinds)}, got {kind or 'nothing'}")

    if name == "negacyclic-conference":
        return "row", cons.negacyclic_conference(int(arg))
    if name == "ito-ng":
        return "pair", cons.ito_ng(int(arg)).pair.astuple()
    if name == "paley-ng":
        return "pair", cons.paley_ng(int(arg)).astuple()
    if name == "read-pair":
        return "pair", read_pair(arg)
    if name == "read-quad":
        return "quad", cons.QuasiWilliamsonQuad(*read_rows(arg, 4))
    if name == "symmetric-2c":
        need("row")
        return "blocks", cons.symmetric_2c_blocks(state[1])
    if name == "turyn-williamson":
        need("blocks")
        return "quad", cons.turyn_williamson(*state[1])
    if name == "williamson-array":
        need("quad")
        return "matrix", state[1].matrix()
    if name == "two-n-array":
        need("pair")
        return "matrix", matalg.two_n_array(*state[1])
    if name == "double":
        need("pair")
        return "pair", cons.double(state[1])
    if name == "ng-to-qw":
        need("pair")
        return "quad", cons.ng_to_qw(cons.NGPair(*state[1]))
    if name == "qw-to-ng":
        need("quad")
        return "pair", cons.qw_to_ng(state[1]).astuple()
    raise UsageError(f"unknown pipeline stage {name!r}")


def _describe(state) -> str:
    kind, value = state
    if kind == "row":
        return format_seq(value.row)
    if kind in ("pair", "blocks"):
        return " ".join(format_seq(s) for s in value)
    if kind == "quad":
        return " ".join(format_seq(s) for s in value.rows())
    return f"order {value.order}"


def _pipeline(args, out) -> int:
    state = None
    for i, step in enumerate(args.steps, 1):
        name, _, arg = step.partition(":")
        if name == "verify":
            if state is None:
                raise UsageError("verify stage needs an input")
            try:
                ok = _pipe_verify(state, arg)
            except TypeError:
                raise UsageError(f"verify:{arg} cannot check a {state[0]}") from None
            _emit(out, [f"{i}\tverify:{arg}\t{'PASS' if ok else 'FAIL'}"])
            if not ok:
                return EXIT_VERIFY
            continue
        state = _pipe_step(state, name, arg or None)
        _emit(out, [f"{i}\t{name}\t{state[0]}\t{_describe(state)}"])
    return EXIT_OK


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--porcelain", action="store_true", default=argparse.SUPPRESS,
                        help="line-stable output without comments")
    # the top-level flag is a separate action: set_defaults on a shared parent
    # action would also reset the subcommand copies
    p = _Parser(prog="negadesigns", description=__doc__.splitlines()[0])
    p.add_argument("--porcelain", action="store_true", help="line-stable output without comments")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def cmd(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    c = cmd("construct", "run a construction")
    c.add_argument("what", choices=[
        "paley-conference", "negacyclic-conference", "ng", "symmetric-2c", "turyn-mult",
        "double", "qw-to-ng", "ng-to-qw", "weighing",
    ])
    c.add_argument("--q", type=int)
    c.add_argument("--poly")
    c.add_argument("--series", choices=["first-paley", "second-paley", "ito"], default="ito")
    c.add_argument("--golay")
    c.add_argument("--pair")
    c.add_argument("--rows")
    c.add_argument("--kind", choices=["P", "N"], default="N")
    c.add_argument("--verify", action="store_true", help="re-check the output and set the exit code")

    v = cmd("verify", "verify a matrix, pair or quadruple from a file")
    v.add_argument("--kind", required=True,
                   choices=["hadamard", "skew-hadamard", "conference", "weighing", "ng", "qw", "conference-row"])
    v.add_argument("--file", required=True)
    v.add_argument("--weight", type=int)

    s = cmd("search", "exhaustive searches")
    s.add_argument("what", choices=["ng", "nega-hadamard", "nega-conference", "weighing"])
    s.add_argument("--length", type=int)
    s.add_argument("--order", type=int)
    s.add_argument("--weight", type=int)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--canonical", action="store_true")
    s.add_argument("--budget", type=int)
    s.add_argument("--threads", type=int)

    e = cmd("equiv", "decide equivalence of two NG-pairs")
    e.add_argument("--pair1")
    e.add_argument("--pair2")
    e.add_argument("--max-orbit", type=int, default=equiv.DEFAULT_MAX_ORBIT)
    e.add_argument("--paley-question", type=int, metavar="Q",
                   help="compare the first-Paley pair for q with the second-Paley pair for 2q+1")

    k = cmd("corpus", "list or check the tabulated data")
    k.add_argument("what", choices=["list", "check"])
    k.add_argument("--source", choices=["B", "C", "D", "E", "R", "Q", "W"])

    pl = cmd("pipeline", "chain stages, e.g. negacyclic-conference:13 symmetric-2c verify:conference")
    pl.add_argument("steps", nargs="+")
    return p


_REQUIRED = {
    ("construct", "paley-conference"): ["q"],
    ("construct", "negacyclic-conference"): ["q"],
    ("construct", "ng"): ["q"],
    ("construct", "symmetric-2c"): ["q"],
    ("construct", "turyn-mult"): ["golay", "pair"],
    ("construct", "double"): ["pair"],
    ("construct", "qw-to-ng"): ["rows"],
    ("construct", "ng-to-qw"): ["pair"],
    ("construct", "weighing"): ["q"],
    ("search", "ng"): ["length"],
    ("search", "nega-hadamard"): ["order"],
    ("search", "nega-conference"): ["order"],
    ("search", "weighing"): ["order", "weight"],
}

_HANDLERS: dict[str, Callable] = {
    "construct": _construct,
    "verify": _verify,
    "search": _search,
    "equiv": _equiv,
    "corpus": _corpus,
    "pipeline": _pipeline,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        for name in _REQUIRED.get((args.cmd, getattr(args, "what", None)), []):
            if getattr(args, name) is None:
                raise UsageError(f"{args.cmd} {args.what}: --{name} is required")
        return _HANDLERS[args.cmd](args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (seqcore.SequenceError, matalg.MatrixError, gf.FieldError, search.SearchError, cons.UnsupportedOrder) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (cons.ConstructionError, equiv.EquivError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def main() -> None:
    sys.exit(run())
