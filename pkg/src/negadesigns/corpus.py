"""Tabulated conference rows, NG-pairs, Williamson-type blocks and weighing quadruples.

The data ship as ``data/corpus.txt`` with a sha256 checksum. Rows whose
token count is wrong or that contain unreadable tokens are CORRUPT; they
are reported, never repaired.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable

from . import constructions as cons
from . import equiv, gf, matalg, seqcore
from .seqcore import Seq


class CorpusError(ValueError):
    pass


class Status(enum.Enum):
    OK = "OK"
    CORRUPT = "CORRUPT"


KINDS = (
    "NegacyclicConferenceRow",
    "SymmetricBlocksB",
    "NGPairAbbrevC",
    "NGPairAbbrevD",
    "WeighingQuadE",
    "QuasiWilliamson35",
    "WorkedExample",
)

# Odd t <= 125 with no prime power among 2t-1, 4t-1; the second list drops
# the orders where Williamson matrices are already known.
NO_PRIME_POWER_ORDERS = (23, 29, 39, 43, 47, 59, 65, 67, 73, 81, 89, 93, 101, 103, 107, 109, 113, 119)
OPEN_QW_ORDERS = (47, 59, 65, 67, 73, 81, 89, 93, 101, 103, 107, 109, 113, 119)
KNOWN_WILLIAMSON = (23, 29, 39, 43)


@dataclass(frozen=True)
class CorpusRecord:
    source: str
    kind: str
    q: int | None
    p: int | None
    poly: str | None
    rows: tuple[str, ...]
    row_status: tuple[Status, ...]
    issues: tuple[str, ...] = ()
    reading: str | None = field(default=None, compare=False)

    @property
    def section(self) -> str:
        return self.source.split(":")[0]

    @property
    def key(self) -> int:
        return int(self.source.split(":")[1])

    @property
    def status(self) -> Status:
        return Status.CORRUPT if Status.CORRUPT in self.row_status else Status.OK

    @property
    def corrupt_rows(self) -> int:
        return sum(s is Status.CORRUPT for s in self.row_status)

    def seqs(self) -> tuple[Seq | None, ...]:
        return tuple(
            seqcore.parse_seq(r) if s is Status.OK else None for r, s in zip(self.rows, self.row_status)
        )


# ------------------------------------------------------------------ load


def _expected_lengths(source: str, kind: str, nrows: int) -> list[int]:
    key = int(source.split(":")[1])
    if kind == "NegacyclicConferenceRow":
        return [key]
    if kind == "SymmetricBlocksB":
        return [(key + 2) // 4] * 2
    if kind in ("NGPairAbbrevC", "NGPairAbbrevD"):
        t = key // 2
        return [t + 1, t]
    if kind == "WeighingQuadE":
        return [key // 4] * 4
    if kind == "QuasiWilliamson35":
        return [key] * 4
    if source == "W:14":
        return [key] + [key // 2] * 5
    return [key] * nrows


def parse_line(line: str) -> CorpusRecord:
    parts = line.rstrip("\n").split("|")
    if len(parts) < 6:
        raise CorpusError(f"malformed corpus line: {line!r}")
    source, kind, q, p, poly, *rows = parts
    if kind not in KINDS:
        raise CorpusError(f"unknown record kind {kind!r}")
    expected = _expected_lengths(source, kind, len(rows))
    if len(expected) != len(rows):
        raise CorpusError(f"{source}: {len(rows)} rows, expected {len(expected)}")
    status, issues = [], []
    for i, (r, n) in enumerate(zip(rows, expected)):
        if "_" in r:
            status.append(Status.CORRUPT)
            issues.append(f"row {i}: {r.count('_')} empty token(s)")
        elif len(r) != n:
            status.append(Status.CORRUPT)
            issues.append(f"row {i}: {len(r)} entries, expected {n}")
        else:
            status.append(Status.OK)
    return CorpusRecord(
        source,
        kind,
        int(q) if q else None,
        int(p) if p else None,
        poly or None,
        tuple(rows),
        tuple(status),
        tuple(issues),
    )


def _data_text() -> tuple[str, str]:
    base = resources.files("negadesigns") / "data"
    text = (base / "corpus.txt").read_bytes()
    expected = (base / "corpus.sha256").read_text().split()[0]
    return text.decode(), expected if hashlib.sha256(text).hexdigest() == expected else ""


@lru_cache(maxsize=1)
def load() -> tuple[CorpusRecord, ...]:
    text, ok = _data_text()
    if not ok:
        raise CorpusError("corpus checksum mismatch")
    recs = [parse_line(ln) for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    return tuple(_cross_reference(r, recs) for r in recs)


def _cross_reference(r: CorpusRecord, recs: list[CorpusRecord]) -> CorpusRecord:
    """The length-10 worked pairs are quoted from the C and D tables; compare row by row."""
    if r.source != "W:10" or r.status is not Status.OK:
        return r
    ref = {x.source: x for x in recs}
    status, issues = list(r.row_status), list(r.issues)
    for idx, src in ((0, "C:10"), (1, "C:10"), (2, "D:10"), (3, "D:10")):
        other = ref.get(src)
        if other is None or other.status is not Status.OK:
            continue
        full = _expand_pair(other)[0].astuple()[idx % 2]
        if seqcore.parse_seq(r.rows[idx]) != full:
            status[idx] = Status.CORRUPT
            issues.append(f"row {idx} differs from the {src} record it is quoted from")
    return CorpusRecord(r.source, r.kind, r.q, r.p, r.poly, r.rows, tuple(status), tuple(issues))


def records(section: str | None = None) -> list[CorpusRecord]:
    return [r for r in load() if section is None or r.section == section]


def get(source: str) -> CorpusRecord:
    for r in load():
        if r.source == source:
            return r
    raise KeyError(source)


# -------------------------------------------------------------- expansion


def expand_symmetric(half: Seq, n: int) -> Seq:
    """Symmetric circulant row of odd length n from its first (n+1)/2 entries."""
    full = list(half) + [0] * (n - len(half))
    for i in range(len(half), n):
        full[i] = half[n - i]
    return tuple(full)


def expand_quasi_symmetric(head: Seq, v: int) -> Seq:
    """a_i = a_{v-i} from a_0..a_{v/2}."""
    full = list(head) + [0] * (v - len(head))
    for i in range(len(head), v):
        full[i] = head[v - i]
    return tuple(full)


def expand_reversal_negating(head: Seq, v: int) -> Seq:
    """b_{v-1-i} = -b_i from b_0..b_{v/2-1}."""
    full = list(head) + [0] * (v - len(head))
    for i in range(len(head), v):
        full[i] = -head[v - 1 - i]
    return tuple(full)


def expand_alternative(head: Seq, v: int) -> Seq | None:
    """b_{v-i} = -b_i (i >= 1); forces b_{v/2} = 0, so no binary sequence has this form."""
    full = list(head) + [0] * (v - len(head))
    for i in range(len(head), v):
        # the fixed point i = v - i = v/2 can only be 0
        full[i] = -full[v - i] if v - i != i else 0
    return tuple(full) if 0 not in full else None


def _expand_pair(r: CorpusRecord) -> tuple[cons.NGPair, str]:
    a_head, b_head = r.seqs()
    v = r.key
    a = expand_quasi_symmetric(a_head, v)
    b = expand_reversal_negating(b_head, v)
    if seqcore.is_ng_pair(a, b):
        return cons.NGPair(a, b), "reversal-negating"
    alt = expand_alternative(b_head, v)
    if alt is not None and seqcore.is_ng_pair(a, alt):
        return cons.NGPair(a, alt), "shifted-negating"
    raise CorpusError(f"{r.source}: no reading of the abbreviated pair is N-complementary")


def expand_record(r: CorpusRecord):
    """Full object behind a record: ConferenceRow, block rows, NGPair, quadruple or row tuple."""
    if r.status is not Status.OK and r.kind not in ("QuasiWilliamson35", "WorkedExample"):
        raise CorpusError(f"{r.source} is CORRUPT: {'; '.join(r.issues)}")
    seqs = r.seqs()
    if r.kind == "NegacyclicConferenceRow":
        return cons.ConferenceRow(seqs[0], r.q, r.p, r.poly, r.source)
    if r.kind == "SymmetricBlocksB":
        t = r.key // 2
        return expand_symmetric(seqs[0], t), expand_symmetric(seqs[1], t)
    if r.kind in ("NGPairAbbrevC", "NGPairAbbrevD"):
        return _expand_pair(r)[0]
    return seqs


# ---------------------------------------------------------- verification


@dataclass(frozen=True)
class Verdict:
    record: CorpusRecord
    passed: bool
    checks: tuple[str, ...]
    failures: tuple[str, ...] = ()

    @property
    def status(self) -> Status:
        return self.record.status


def _check(checks: list, failures: list, name: str, cond: bool) -> None:
    (checks if cond else failures).append(name)


def _verify_b(r, checks, failures):
    a, b = expand_record(r)
    v = r.key
    _check(checks, failures, f"2C array is a conference matrix of order {v}",
           matalg.verify(matalg.two_c_array(a, b), matalg.CONFERENCE))
    try:
        quad = cons.turyn_williamson(a, b)
        checks.append("(A+I, A-I, B, B) satisfies the Williamson equations")
        _check(checks, failures, f"array of the quadruple is Hadamard of order {2 * v}",
               matalg.verify(quad.matrix(), matalg.HADAMARD))
    except (cons.InvalidQuad, cons.ConstructionError) as exc:
        failures.append(f"Turyn quadruple: {exc}")


def _verify_cd(r, checks, failures):
    try:
        pair, reading = _expand_pair(r)
    except CorpusError as exc:
        failures.append(str(exc))
        return
    checks.append(f"NG-pair under the {reading} reading")
    if reading == "reversal-negating":
        checks.append("alternative reading b_(v-i) = -b_i is inapplicable (forces b_(v/2) = 0)")
    _check(checks, failures, "a_0 = + and a quasi-symmetric",
           pair.a[0] == 1 and seqcore.is_quasi_symmetric(pair.a))
    _check(checks, failures, "2N array is skew-Hadamard", matalg.is_skew_hadamard(pair.matrix()))


def _verify_e(r, checks, failures):
    rows = r.seqs()
    n = r.key
    m = matalg.williamson_array(*(matalg.circulant(x) for x in rows))
    _check(checks, failures, f"Williamson-array layout gives W({n},{n - 2})", matalg.verify(m, matalg.weighing(n - 2)))


def _verify_s9(r, checks, failures):
    a, b, c, d = r.seqs()
    t = r.key
    if a is not None:
        _check(checks, failures, "row a is of skew type", all(a[i] == -a[t - i] for i in range(1, t)))
    if b is not None:
        _check(checks, failures, "row b is symmetric", b[1:] == b[1:][::-1])
    if c is not None and d is not None:
        _check(checks, failures, "row d is the reverse of row c", d == c[::-1])
    if None not in (a, b, c, d):
        try:
            cons.QuasiWilliamsonQuad(a, b, c, d)
            checks.append("quasi-Williamson equations hold")
        except cons.InvalidQuad as exc:
            failures.append(str(exc))


def _verify_worked(r, checks, failures):
    seqs = r.seqs()
    if r.source == "W:6":
        _check(checks, failures, "NG-pair", seqcore.is_ng_pair(*seqs))
    elif r.source == "W:10":
        a, b, c, d, dp = seqs
        _check(checks, failures, "(a, b) is an NG-pair", seqcore.is_ng_pair(a, b))
        if c is not None:
            _check(checks, failures, "multiplier 9 maps c to a", seqcore.multiplier(c, 9) == a)
        if c is not None and d is not None:
            _check(checks, failures, "(c, d) is an NG-pair", seqcore.is_ng_pair(c, d))
        if d is None:
            ref = _expand_pair(get("D:10"))[0]
            _check(checks, failures, "multiplier 9 maps the tabulated d to d'", seqcore.multiplier(ref.b, 9) == dp)
        _check(checks, failures, "(a, d') is an NG-pair", seqcore.is_ng_pair(a, dp))
        _check(checks, failures, "(a, d') is equivalent to (a, b)", bool(equiv.are_equivalent((a, b), (a, dp))))
    elif r.source == "W:14":
        c, a, b, ap, bp, bpp = seqs
        row = cons.ConferenceRow(c, 13, 13)
        checks.append("c is a negacyclic conference row")
        _check(checks, failures, "c splits into (a, b)", cons.split_row(c) == (a, b))
        _check(checks, failures, "alternating negation gives (a', b')",
               (seqcore.alternating_negate(a), seqcore.alternating_negate(b)) == (ap, bp))
        _check(checks, failures, "symmetric 2C blocks are (a', b'')", cons.symmetric_2c_blocks(row) == (ap, bpp))
        b14 = get("B:14")
        if b14.status is Status.OK:
            _check(checks, failures, "agrees with the B:14 record", expand_record(b14) == (ap, bpp))


_VERIFIERS = {
    "SymmetricBlocksB": _verify_b,
    "NGPairAbbrevC": _verify_cd,
    "NGPairAbbrevD": _verify_cd,
    "WeighingQuadE": _verify_e,
    "QuasiWilliamson35": _verify_s9,
    "WorkedExample": _verify_worked,
}


def verify_record(r: CorpusRecord) -> Verdict:
    checks: list[str] = []
    failures: list[str] = []
    partial = r.kind in ("QuasiWilliamson35", "WorkedExample")
    if r.status is Status.CORRUPT and not partial:
        return Verdict(r, False, (), ())
    if r.kind == "NegacyclicConferenceRow":
        try:
            expand_record(r)
            checks.append("negacyclic conference row (Belevitch symmetry, Gram identity)")
        except cons.ConstructionError as exc:
            failures.append(str(exc))
    else:
        _VERIFIERS[r.kind](r, checks, failures)
    return Verdict(r, not failures, tuple(checks), tuple(failures))


def verify_all(section: str | None = None) -> list[Verdict]:
    return [verify_record(r) for r in records(section)]


# ------------------------------------------------------------- lookups


def conference_row_for(q: int) -> cons.ConferenceRow | None:
    for r in load():
        if r.q == q and r.status is Status.OK:
            if r.kind == "NegacyclicConferenceRow":
                return expand_record(r)
            if r.source == "W:14":
                return cons.ConferenceRow(r.seqs()[0], 13, 13, None, r.source)
    return None


def polynomial_for(q: int) -> str | None:
    """Polynomial recorded alongside any row for this q (the header survives row damage)."""
    for r in load():
        if r.q == q and r.poly:
            return r.poly
    return None


def pair_record(v: int, section: str = "D") -> CorpusRecord | None:
    for r in records(section):
        if r.key == v:
            return r
    return None


# ------------------------------------------------------------- gap lists


def gap_lists() -> tuple[tuple[int, ...], tuple[int, ...]]:
    return NO_PRIME_POWER_ORDERS, OPEN_QW_ORDERS


def recompute_gap_list(limit: int = 125) -> tuple[int, ...]:
    """Odd t <= limit for which neither 2t-1 nor 4t-1 is a prime power."""
    return tuple(
        t
        for t in range(1, limit + 1, 2)
        if gf.prime_power(2 * t - 1) is None and gf.prime_power(4 * t - 1) is None
    )


def format_verdict(v: Verdict) -> str:
    r = v.record
    if r.status is Status.CORRUPT and not v.checks and not v.failures:
        state = "CORRUPT"
    elif r.status is Status.CORRUPT:
        state = "CORRUPT-PARTIAL" if v.passed else "CORRUPT-FAIL"
    else:
        state = "PASS" if v.passed else "FAIL"
    detail = "; ".join(r.issues + v.failures) if (r.issues or v.failures) else f"{len(v.checks)} checks"
    return f"{r.source}\t{r.kind}\t{state}\t{detail}"


def summarize(verdicts: Iterable[Verdict]) -> dict[str, int]:
    out = {"records": 0, "ok": 0, "corrupt": 0, "corrupt_rows": 0, "failed": 0}
    for v in verdicts:
        out["records"] += 1
        out["corrupt_rows"] += v.record.corrupt_rows
        if v.record.status is Status.CORRUPT:
            out["corrupt"] += 1
        else:
            out["ok"] += 1
        if v.failures:
            out["failed"] += 1
    return out
