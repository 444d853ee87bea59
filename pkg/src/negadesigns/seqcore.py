"""Sequences over {-1, 0, +1}, their three autocorrelations and elementary motions.

Sequences are plain tuples of ints. Text form uses one character per entry
from the alphabet ``+ - 0``, index 0 leftmost.
"""

from __future__ import annotations

import enum
from math import gcd
from typing import Iterable, Sequence

Seq = tuple[int, ...]


class SequenceError(ValueError):
    pass


class LengthMismatch(SequenceError):
    pass


class InvalidMultiplier(SequenceError):
    pass


class Kind(enum.Enum):
    APERIODIC = "A"
    PERIODIC = "P"
    NEGAPERIODIC = "N"


class PairClass(enum.Enum):
    G = "G"
    PG = "PG"
    NG = "NG"


_CHAR = {1: "+", -1: "-", 0: "0"}
_VAL = {"+": 1, "-": -1, "0": 0, "−": -1}


def ternary(entries: Iterable[int]) -> Seq:
    s = tuple(int(e) for e in entries)
    if any(e not in (-1, 0, 1) for e in s):
        raise SequenceError(f"entries must lie in {{-1,0,1}}: {s}")
    return s


def binary(entries: Iterable[int]) -> Seq:
    s = tuple(int(e) for e in entries)
    if not s:
        raise SequenceError("binary sequences have length >= 1")
    if any(e not in (-1, 1) for e in s):
        raise SequenceError(f"entries must be +-1: {s}")
    return s


def weight(a: Sequence[int]) -> int:
    return sum(1 for e in a if e)


def parse_seq(text: str) -> Seq:
    """Parse ``+-0`` text; commas, brackets and blanks are ignored."""
    chars = [c for c in text if c not in " ,[]()\t\n"]
    try:
        return tuple(_VAL[c] for c in chars)
    except KeyError as exc:
        raise SequenceError(f"bad character {exc.args[0]!r} in {text!r}") from None


def format_seq(a: Sequence[int]) -> str:
    return "".join(_CHAR[e] for e in a)


# ------------------------------------------------------------ correlations


def aperiodic(a: Sequence[int], k: int) -> int:
    v = len(a)
    k = abs(k)
    if k >= v:
        return 0
    return sum(a[i] * a[i + k] for i in range(v - k))


def periodic(a: Sequence[int], k: int) -> int:
    v = len(a)
    k %= v
    return sum(a[i] * a[(i + k) % v] for i in range(v))


def negaperiodic(a: Sequence[int], k: int) -> int:
    """NAF_a(k) = a . aN^k for any integer k."""
    v = len(a)
    k %= 2 * v
    sign = 1
    if k >= v:
        k -= v
        sign = -1
    # a.(aN^k): (aN^k)_j = a_{j-k} for j >= k, -a_{j-k+v} for j < k
    s = sum(a[i] * a[i + k] for i in range(v - k)) - sum(a[i] * a[i + v - k] for i in range(k))
    return sign * s


_AUTO = {
    Kind.APERIODIC: aperiodic,
    Kind.PERIODIC: periodic,
    Kind.NEGAPERIODIC: negaperiodic,
}


def autocorrelation(a: Sequence[int], k: int, kind: Kind = Kind.NEGAPERIODIC) -> int:
    return _AUTO[Kind(kind)](a, k)


def correlation_vector(a: Sequence[int], kind: Kind = Kind.NEGAPERIODIC) -> list[int]:
    """Autocorrelation at lags 0..v-1."""
    f = _AUTO[Kind(kind)]
    return [f(a, k) for k in range(len(a))]


def complementarity_sum(
    seqs: Sequence[Sequence[int]], kind: Kind = Kind.NEGAPERIODIC, length: int | None = None
) -> list[int]:
    """Componentwise sum of the chosen autocorrelation over lags 1..v-1.

    With no sequences the result is the zero vector; ``length`` then fixes v.
    """
    if not seqs:
        if length is None:
            raise SequenceError("complementarity_sum of no sequences needs length")
        return [0] * max(length - 1, 0)
    v = len(seqs[0])
    if length is not None and length != v:
        raise LengthMismatch(f"declared length {length}, sequences have {v}")
    if any(len(s) != v for s in seqs):
        raise LengthMismatch(f"mixed lengths {[len(s) for s in seqs]}")
    f = _AUTO[Kind(kind)]
    return [sum(f(s, k) for s in seqs) for k in range(1, v)]


def is_complementary(seqs: Sequence[Sequence[int]], kind: Kind = Kind.NEGAPERIODIC) -> bool:
    return not any(complementarity_sum(seqs, kind))


def classify_pair(a: Sequence[int], b: Sequence[int]) -> set[PairClass]:
    binary(a), binary(b)
    if len(a) != len(b):
        raise LengthMismatch(f"lengths {len(a)} and {len(b)}")
    out = set()
    if is_complementary([a, b], Kind.APERIODIC):
        out.add(PairClass.G)
    if is_complementary([a, b], Kind.PERIODIC):
        out.add(PairClass.PG)
    if is_complementary([a, b], Kind.NEGAPERIODIC):
        out.add(PairClass.NG)
    return out


def is_ng_pair(a: Sequence[int], b: Sequence[int]) -> bool:
    return (
        len(a) == len(b)
        and all(e in (-1, 1) for e in a)
        and all(e in (-1, 1) for e in b)
        and is_complementary([a, b], Kind.NEGAPERIODIC)
    )


# ----------------------------------------------------------------- motions


def reverse(a: Sequence[int]) -> Seq:
    return tuple(reversed(a))


def cyclic_shift(a: Sequence[int], times: int = 1) -> Seq:
    """aP^times = (a_{v-1}, a_0, ..., a_{v-2}) for times=1."""
    v = len(a)
    times %= v
    return tuple(a[v - times :]) + tuple(a[: v - times])


def negacyclic_shift(a: Sequence[int], times: int = 1) -> Seq:
    """aN^times; aN = (-a_{v-1}, a_0, ..., a_{v-2})."""
    v = len(a)
    times %= 2 * v
    out = tuple(a)
    if times >= v:
        out = tuple(-e for e in out)
        times -= v
    return tuple(-e for e in out[v - times :]) + out[: v - times]


def alternating_negate(a: Sequence[int]) -> Seq:
    return tuple(-e if i % 2 else e for i, e in enumerate(a))


def multiplier(a: Sequence[int], k: int) -> Seq:
    """Entry i becomes z_i a_{ki mod v}, z_i = -1 iff ki mod 2v >= v."""
    v = len(a)
    if gcd(k, v) != 1:
        raise InvalidMultiplier(f"gcd({k}, {v}) != 1")
    out = []
    for i in range(v):
        r = (k * i) % (2 * v)
        out.append(a[r % v] if r < v else -a[r % v])
    return tuple(out)


MOTIONS = ("reverse", "cyclic-shift", "negacyclic-shift", "alternating-negate", "multiplier")


def transform(a: Sequence[int], motion: str, k: int | None = None) -> Seq:
    if motion == "reverse":
        return reverse(a)
    if motion == "cyclic-shift":
        return cyclic_shift(a, 1 if k is None else k)
    if motion == "negacyclic-shift":
        return negacyclic_shift(a, 1 if k is None else k)
    if motion == "alternating-negate":
        return alternating_negate(a)
    if motion == "multiplier":
        if k is None:
            raise InvalidMultiplier("multiplier needs k")
        return multiplier(a, k)
    raise SequenceError(f"unknown motion {motion!r}")


def is_quasi_symmetric(a: Sequence[int]) -> bool:
    v = len(a)
    return all(a[i] == a[v - i] for i in range(1, v))


def is_reversal_negating(a: Sequence[int]) -> bool:
    v = len(a)
    return all(a[v - 1 - i] == -a[i] for i in range(v))


def symmetry_kind(a: Sequence[int]) -> dict[str, bool]:
    return {
        "quasi-symmetric": is_quasi_symmetric(a),
        "reversal-negates": is_reversal_negating(a),
    }
