"""Exhaustive searches with bit-packed sequences.

A binary sequence of length n is an integer whose bit i is set iff entry i
is -1. Then AF(k) = (n-k) - 2 popcount((m ^ m>>k) & mask(n-k)) and
NAF(k) = AF(k) - AF(n-k). Ternary sequences carry a support mask and a sign
mask. Candidates are processed in numpy chunks, optionally on threads.
"""

from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from . import equiv, matalg, seqcore
from .seqcore import Seq


class SearchError(ValueError):
    pass


class Mode(enum.Enum):
    EXISTS = "exists"
    ALL = "enumerate-all"
    CANONICAL = "enumerate-canonical"


class Target(enum.Enum):
    NG_PAIR = "ng-pair"
    NEGA_HADAMARD = "negacyclic-hadamard"
    NEGA_CONFERENCE = "negacyclic-conference"
    WEIGHING_2N = "weighing-2n"


class Outcome(enum.Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    BUDGET = "budget-exceeded"


@dataclass(frozen=True)
class SearchSpec:
    target: Target
    n: int
    weight: int | None = None
    mode: Mode = Mode.ALL
    budget: int | None = None
    threads: int | None = None
    chunk_bits: int = 20

    def __post_init__(self):
        if self.n < 1:
            raise SearchError("size must be positive")
        if self.target is Target.NG_PAIR and self.n != 1 and self.n % 2:
            raise SearchError("NG-pairs have even length or length 1")
        if self.target is Target.NEGA_CONFERENCE and self.n % 2:
            raise SearchError("negacyclic conference matrices have even order")
        if self.target is Target.WEIGHING_2N:
            if self.n % 2 or self.weight is None or not 1 <= self.weight <= self.n:
                raise SearchError("2N weighing search needs even order and 1 <= w <= order")


@dataclass
class SearchReport:
    spec: SearchSpec
    outcome: Outcome
    witnesses: list = field(default_factory=list)
    nodes: int = 0
    seconds: float = 0.0
    exhausted: bool = False

    @property
    def count(self) -> int:
        return len(self.witnesses)


def thread_count(requested: int | None = None) -> int:
    if requested:
        return max(1, requested)
    env = os.environ.get("NEGADESIGNS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SearchError(f"NEGADESIGNS_THREADS={env!r} is not an integer") from None
    return os.cpu_count() or 1


# ---------------------------------------------------------- bit kernels


def _mask(k: int) -> int:
    return (1 << k) - 1


def _pc(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x).astype(np.int64)


def naf_binary(m: np.ndarray, n: int, k: int) -> np.ndarray:
    """NAF at lag k (0 < k < n) of packed binary sequences."""
    af_k = (n - k) - 2 * _pc((m ^ (m >> k)) & _mask(n - k))
    af_nk = k - 2 * _pc((m ^ (m >> (n - k))) & _mask(k))
    return af_k - af_nk


def _af_ternary(s: np.ndarray, x: np.ndarray, n: int, k: int) -> np.ndarray:
    both = s & (s >> k) & _mask(n - k)
    return _pc(both) - 2 * _pc(both & (x ^ (x >> k)))


def naf_ternary(s: np.ndarray, x: np.ndarray, n: int, k: int) -> np.ndarray:
    return _af_ternary(s, x, n, k) - _af_ternary(s, x, n, n - k)


def pack(seq: Iterable[int]) -> tuple[int, int]:
    """(support, sign) masks of a ternary sequence."""
    s = x = 0
    for i, e in enumerate(seq):
        if e:
            s |= 1 << i
        if e == -1:
            x |= 1 << i
    return s, x


def unpack(n: int, m: int, support: int | None = None) -> Seq:
    if support is None:
        support = _mask(n)
    return tuple(0 if not (support >> i) & 1 else (-1 if (m >> i) & 1 else 1) for i in range(n))


def naf_signature(m: np.ndarray, n: int) -> np.ndarray:
    """NAF at lags 1..n/2-1; the rest follow from NAF(n-k) = -NAF(k)."""
    lags = list(range(1, n // 2))
    if not lags:
        return np.zeros((len(m), 0), dtype=np.int64)
    return np.stack([naf_binary(m, n, k) for k in lags], axis=1)


# --------------------------------------------------------------- sharding


def _chunks(total_bits: int, chunk_bits: int) -> list[tuple[int, int]]:
    size = 1 << min(total_bits, chunk_bits)
    return [(lo, min(lo + size, 1 << total_bits)) for lo in range(0, 1 << total_bits, size)]


def _run_shards(shards, work: Callable, threads: int):
    if threads <= 1 or len(shards) <= 1:
        return [work(s) for s in shards]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(work, shards))


def _check_budget(spec: SearchSpec, nodes: int) -> bool:
    return spec.budget is not None and nodes > spec.budget


# ------------------------------------------------------ negacyclic Hadamard


def search_negacyclic_hadamard(
    n: int, budget: int | None = None, threads: int | None = None, chunk_bits: int = 22
) -> SearchReport:
    """All first rows a with NAF_a(k) = 0 for 0 < k < n.

    Only a_0 = + is scanned (negation is the negashift N^n); witnesses are
    expanded by negation afterwards and each is re-verified as a matrix.
    """
    spec = SearchSpec(Target.NEGA_HADAMARD, n, mode=Mode.ALL, budget=budget, threads=threads, chunk_bits=chunk_bits)
    t0 = time.perf_counter()
    free = n - 1
    if budget is not None and (1 << free) > budget:
        return SearchReport(spec, Outcome.BUDGET, [], 0, time.perf_counter() - t0, False)
    # NAF(n - k) = -NAF(k), and NAF(n/2) = 0 for even n
    lags = list(range(1, (n + 1) // 2))

    def work(bounds):
        lo, hi = bounds
        # bit 0 stays clear: a_0 = +
        m = np.arange(lo, hi, dtype=np.int64) << 1
        for k in lags:
            m = m[naf_binary(m, n, k) == 0]
            if not len(m):
                break
        return [int(x) for x in m]

    hits: list[int] = []
    for part in _run_shards(_chunks(free, chunk_bits), work, thread_count(threads)):
        hits.extend(part)
    wits = []
    for m in hits:
        a = unpack(n, m)
        for s in (a, tuple(-e for e in a)):
            if not matalg.verify(matalg.negacyclic(s), matalg.HADAMARD):
                raise AssertionError("search witness fails Gram verification")
            wits.append(s)
    wits.sort()
    outcome = Outcome.FOUND if wits else Outcome.EXHAUSTED
    return SearchReport(spec, outcome, wits, 1 << free, time.perf_counter() - t0, True)


# ------------------------------------------------------------- NG pairs


def _orbit_canonical(pairs: set, v: int) -> list:
    """One lexicographically least representative per equivalence class."""
    reps = []
    todo = set(pairs)
    while todo:
        p = min(todo)
        orb = equiv.orbit(p)
        if not orb <= pairs:
            raise AssertionError("orbit left the witness set")
        todo -= orb
        reps.append(min(orb, key=lambda q: (equiv._key(q[0]), equiv._key(q[1]))))
    return sorted(reps, key=lambda q: (equiv._key(q[0]), equiv._key(q[1])))


def search_ng(
    v: int, mode: Mode | str = Mode.ALL, budget: int | None = None, threads: int | None = None
) -> SearchReport:
    """NG-pairs of length v by meet-in-the-middle on NAF signatures."""
    mode = Mode(mode)
    spec = SearchSpec(Target.NG_PAIR, v, mode=mode, budget=budget, threads=threads)
    t0 = time.perf_counter()
    if budget is not None and (1 << v) > budget:
        return SearchReport(spec, Outcome.BUDGET, [], 0, time.perf_counter() - t0, False)
    m = np.arange(1 << v, dtype=np.int64)
    sig = naf_signature(m, v)
    index: dict[bytes, list[int]] = {}
    for i, row in enumerate(sig.astype(np.int16)):
        index.setdefault(row.tobytes(), []).append(i)
    pairs = []
    for key, members in index.items():
        partner = (-np.frombuffer(key, dtype=np.int16)).astype(np.int16).tobytes()
        for bm in index.get(partner, ()):
            for am in members:
                pairs.append((am, bm))
                if mode is Mode.EXISTS:
                    break
            if mode is Mode.EXISTS and pairs:
                break
        if mode is Mode.EXISTS and pairs:
            break
    wits = sorted((unpack(v, a), unpack(v, b)) for a, b in pairs)
    for a, b in wits:
        if not seqcore.is_ng_pair(a, b):
            raise AssertionError("search witness is not N-complementary")
    if mode is Mode.CANONICAL:
        wits = _orbit_canonical(set(wits), v)
    outcome = Outcome.FOUND if wits else Outcome.EXHAUSTED
    return SearchReport(spec, outcome, wits, 1 << v, time.perf_counter() - t0, mode is not Mode.EXISTS)


# ------------------------------------------------- negacyclic conference


def belevitch_completion(n: int, head: Seq) -> Seq:
    """(0, c_1, ..., c_{n/2}) extended by c_{n/2+j} = (-1)^j c_{n/2-j}."""
    h = n // 2
    row = list(head) + [0] * (n - len(head))
    for j in range(1, h):
        row[h + j] = (-1) ** j * row[h - j]
    return tuple(row)


def search_negacyclic_conference(
    n: int,
    mode: Mode | str = Mode.ALL,
    budget: int | None = None,
    threads: int | None = None,
    chunk_bits: int = 20,
) -> SearchReport:
    """Negacyclic conference rows of order n; c_1 .. c_{n/2} free, c_1 = + scanned, negation restores the rest."""
    mode = Mode(mode)
    spec = SearchSpec(Target.NEGA_CONFERENCE, n, mode=mode, budget=budget, threads=threads, chunk_bits=chunk_bits)
    t0 = time.perf_counter()
    h = n // 2
    if n == 2:
        wits = [(0, -1), (0, 1)]
        return SearchReport(spec, Outcome.FOUND, wits, 1, time.perf_counter() - t0, True)
    free = h - 1  # c_2 .. c_h
    if budget is not None and (1 << free) > budget:
        return SearchReport(spec, Outcome.BUDGET, [], 0, time.perf_counter() - t0, False)
    support = _mask(n) & ~1
    lags = list(range(1, h))

    def work(bounds):
        lo, hi = bounds
        heads = np.arange(lo, hi, dtype=np.int64)
        # sign bits: bit i for c_i; c_1 = + so bit 1 clear
        x = heads << 2
        for j in range(1, h):
            src = (x >> (h - j)) & 1
            flip = j & 1
            x = x | ((src ^ flip) << (h + j))
        keep = np.ones(len(x), dtype=bool)
        s = np.full(len(x), support, dtype=np.int64)
        for k in lags:
            idx = np.nonzero(keep)[0]
            keep[idx] = naf_ternary(s[idx], x[idx], n, k) == 0
        return [int(e) for e in x[keep]]

    found = []
    for part in _run_shards(_chunks(free, chunk_bits), work, thread_count(threads)):
        found.extend(part)
        if mode is Mode.EXISTS and found:
            break
    wits = []
    for x in found:
        row = unpack(n, x, support)
        for r in (row, tuple(-e for e in row)):
            if not matalg.verify(matalg.negacyclic(r), matalg.CONFERENCE):
                raise AssertionError("search witness fails Gram verification")
            wits.append(r)
    wits.sort()
    outcome = Outcome.FOUND if wits else Outcome.EXHAUSTED
    return SearchReport(spec, outcome, wits, 1 << free, time.perf_counter() - t0, mode is not Mode.EXISTS)


# ------------------------------------------------------- 2N weighing


def search_2n_weighing(
    order: int,
    weight: int,
    mode: Mode | str = Mode.EXISTS,
    budget: int | None = None,
    threads: int | None = None,
) -> SearchReport:
    """N-complementary ternary pairs (a, b) of length order/2 and total weight ``weight``.

    Zero positions are enumerated outside, signs inside; the first nonzero
    entry of a is fixed to + and restored by negating a afterwards.
    """
    mode = Mode(mode)
    spec = SearchSpec(Target.WEIGHING_2N, order, weight=weight, mode=mode, budget=budget, threads=threads)
    t0 = time.perf_counter()
    v = order // 2
    positions = range(2 * v)
    nodes = 0
    wits = []
    lags = list(range(1, v))
    for zeros in combinations(positions, 2 * v - weight):
        zs = set(zeros)
        sa = sum(1 << i for i in range(v) if i not in zs)
        sb = sum(1 << i for i in range(v) if i + v not in zs)
        wa, wb = bin(sa).count("1"), bin(sb).count("1")
        # signs: scatter a and b from a dense counter; the first nonzero entry
        # of a (of b when a = 0) is fixed to + and restored by negation
        abits = [i for i in range(v) if sa >> i & 1]
        bbits = [i for i in range(v) if sb >> i & 1]
        if wa:
            abits = abits[1:]
        else:
            bbits = bbits[1:]
        wb = len(bbits)
        nfree = len(abits) + wb
        nodes += 1 << nfree
        if budget is not None and nodes > budget:
            return SearchReport(spec, Outcome.BUDGET, wits, nodes, time.perf_counter() - t0, False)
        cnt = np.arange(1 << nfree, dtype=np.int64)
        xa = np.zeros_like(cnt)
        xb = np.zeros_like(cnt)
        for j, i in enumerate(abits):
            xa |= ((cnt >> j) & 1) << i
        for j, i in enumerate(bbits):
            xb |= ((cnt >> (j + len(abits))) & 1) << i
        keep = np.ones(len(cnt), dtype=bool)
        for k in lags:
            tot = naf_ternary(np.full(len(cnt), sa), xa, v, k) + naf_ternary(np.full(len(cnt), sb), xb, v, k)
            keep &= tot == 0
        for ia in np.nonzero(keep)[0]:
            a = unpack(v, int(xa[ia]), sa)
            b = unpack(v, int(xb[ia]), sb)
            flips = [(a, b), (tuple(-e for e in a), b)] if wa else [(a, b), (a, tuple(-e for e in b))]
            for aa, bb in flips:
                m = matalg.two_n_array(aa, bb)
                if not matalg.verify(m, matalg.weighing(weight)):
                    raise AssertionError("search witness fails Gram verification")
                wits.append((aa, bb))
            if mode is Mode.EXISTS:
                return SearchReport(spec, Outcome.FOUND, wits, nodes, time.perf_counter() - t0, False)
    wits.sort()
    outcome = Outcome.FOUND if wits else Outcome.EXHAUSTED
    return SearchReport(spec, outcome, wits, nodes, time.perf_counter() - t0, True)


def format_report(r: SearchReport, timing: bool = False) -> str:
    """Tab-separated report; timing is off by default so output is reproducible."""
    lines = [
        f"target\t{r.spec.target.value}",
        f"size\t{r.spec.n}" + (f"\nweight\t{r.spec.weight}" if r.spec.weight is not None else ""),
        f"verdict\t{r.outcome.value}",
        f"exhausted\t{str(r.exhausted).lower()}",
        f"witnesses\t{r.count}",
        f"nodes\t{r.nodes}",
    ]
    if timing:
        lines.append(f"seconds\t{r.seconds:.3f}")
    for w in r.witnesses:
        if isinstance(w[0], tuple):
            lines.append("pair\t" + "\t".join(seqcore.format_seq(s) for s in w))
        else:
            lines.append("row\t" + seqcore.format_seq(w))
    return "\n".join(lines)
