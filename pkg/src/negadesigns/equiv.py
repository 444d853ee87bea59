"""The map Phi_v into Z_2v, relative difference families, and equivalence of NG-pairs.

Equivalence is decided through an exact canonical form. Every elementary
transformation acts on Phi_v-images as an affine map of Z_2v: reversal is
``i -> v-1-i``, the negashift is ``i -> i+1``, the multiplier k is
``i -> k^{-1} i`` and the alternating negation is multiplication by
``v+1``. The group they generate is therefore

    (G1 x G1) semidirect (units of Z_2v  x  switch),

with G1 = {i -> +-i + c} acting on one sequence at a time. The lexicographic
minimum of an orbit is the minimum, over the 2*phi(2v) outer elements, of
the independent per-sequence minima under G1.
"""

from __future__ import annotations

import enum
from collections import Counter, deque
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from . import seqcore
from .seqcore import Seq

Pair = tuple[Seq, Seq]
Op = tuple[str, int]

PAIR_OPS = ("reverse-a", "reverse-b", "negashift-a", "negashift-b", "switch", "multiplier", "alternating-negate")


class EquivError(ValueError):
    pass


class NotInImage(EquivError):
    pass


# ------------------------------------------------------------------- Phi


def phi(a: Sequence[int]) -> tuple[int, ...]:
    """{i : a_i = 1} u {v + i : a_i = -1}, sorted."""
    v = len(a)
    seqcore.binary(a)
    return tuple(sorted(i if e == 1 else v + i for i, e in enumerate(a)))


def in_phi_image(xs: Iterable[int], v: int) -> bool:
    s = {x % (2 * v) for x in xs}
    return len(s) == v and all((x + v) % (2 * v) not in s for x in s)


def phi_inverse(xs: Iterable[int], v: int) -> Seq:
    s = {x % (2 * v) for x in xs}
    if not in_phi_image(s, v):
        raise NotInImage(f"{sorted(s)} is not the image of a binary sequence of length {v}")
    return tuple(1 if i in s else -1 for i in range(v))


# -------------------------------------------------------------------- RDF


@dataclass(frozen=True)
class RDFWitness:
    ok: bool
    lam: int | None
    counts: dict[int, int] = field(repr=False)
    reason: str = ""


def difference_counts(sets: Sequence[Iterable[int]], modulus: int) -> Counter:
    counts: Counter = Counter()
    for s in sets:
        s = list(s)
        for i in s:
            for j in s:
                if i != j:
                    counts[(i - j) % modulus] += 1
    return counts


def rdf_check(sets: Sequence[Iterable[int]], v: int) -> RDFWitness:
    """Relative difference family test in Z_2v w.r.t. the subgroup {0, v}."""
    modulus = 2 * v
    sets = [sorted({x % modulus for x in s}) for s in sets]
    counts = difference_counts(sets, modulus)
    table = {m: counts.get(m, 0) for m in range(1, modulus)}
    if table[v]:
        return RDFWitness(False, None, table, f"difference {v} occurs {table[v]} times")
    rest = {table[m] for m in table if m != v}
    if len(rest) != 1:
        return RDFWitness(False, None, table, f"counts vary: {sorted(rest)}")
    lam = rest.pop()
    ks = [len(s) for s in sets]
    if sum(k * (k - 1) for k in ks) != 2 * lam * (v - 1):
        raise AssertionError("difference count identity violated")
    return RDFWitness(True, lam, table)


# ------------------------------------------------------- transformations


def check_multiplier(k: int, v: int) -> None:
    if gcd(k, v) != 1:
        raise seqcore.InvalidMultiplier(f"gcd({k}, {v}) != 1")
    if v % 2 == 0 and gcd(k, 2 * v) != 1:
        raise AssertionError("k coprime to even v must be odd")


def pair_transform(p: Pair, op: str, k: int | None = None) -> Pair:
    """Elementary transformations (i)-(v) on a pair of sequences.

    ``negashift-*`` takes an optional repeat count ``k``.
    """
    a, b = p
    if op == "reverse-a":
        return seqcore.reverse(a), b
    if op == "reverse-b":
        return a, seqcore.reverse(b)
    if op == "negashift-a":
        return seqcore.negacyclic_shift(a, 1 if k is None else k), b
    if op == "negashift-b":
        return a, seqcore.negacyclic_shift(b, 1 if k is None else k)
    if op == "switch":
        return b, a
    if op == "multiplier":
        if k is None:
            raise seqcore.InvalidMultiplier("multiplier needs k")
        check_multiplier(k, len(a))
        return seqcore.multiplier(a, k), seqcore.multiplier(b, k)
    if op == "alternating-negate":
        return seqcore.alternating_negate(a), seqcore.alternating_negate(b)
    raise EquivError(f"unknown pair transformation {op!r}")


def apply_script(p: Pair, script: Sequence[Op]) -> Pair:
    for op, k in script:
        p = pair_transform(p, op, k)
    return p


FAMILY_OPS = ("reflect-X", "reflect-Y", "translate-X", "translate-Y", "switch", "multiply", "odd-swap")


def family_transform(f: tuple[Sequence[int], Sequence[int]], op: str, v: int, k: int | None = None):
    """Elementary transformations on a pair of subsets of Z_2v."""
    n = 2 * v
    x, y = f

    def image(s, g):
        return tuple(sorted(g(i) % n for i in s))

    if op == "reflect-X":
        return image(x, lambda i: v - 1 - i), tuple(y)
    if op == "reflect-Y":
        return tuple(x), image(y, lambda i: v - 1 - i)
    if op == "translate-X":
        return image(x, lambda i: i + 1), tuple(y)
    if op == "translate-Y":
        return tuple(x), image(y, lambda i: i + 1)
    if op == "switch":
        return tuple(y), tuple(x)
    if op == "multiply":
        if k is None or gcd(k, n) != 1:
            raise seqcore.InvalidMultiplier(f"multiplier {k} is not a unit mod {n}")
        return image(x, lambda i: k * i), image(y, lambda i: k * i)
    if op == "odd-swap":
        g = lambda i: i + v if (i % v) % 2 else i  # noqa: E731
        return image(x, g), image(y, g)
    raise EquivError(f"unknown family transformation {op!r}")


def family_counterpart(op: str, v: int, k: int | None = None) -> tuple[str, int | None]:
    """The subset-family move that Phi_v intertwines with a pair move."""
    table = {
        "reverse-a": "reflect-X",
        "reverse-b": "reflect-Y",
        "negashift-a": "translate-X",
        "negashift-b": "translate-Y",
        "switch": "switch",
        "alternating-negate": "odd-swap",
    }
    if op == "multiplier":
        return "multiply", pow(k, -1, 2 * v)
    return table[op], None


# --------------------------------------------------------- canonical form


def _key(s: Seq) -> tuple[int, ...]:
    # + sorts before -
    return tuple(0 if e == 1 else 1 for e in s)


def _single_min(s: Seq) -> tuple[Seq, bool, int]:
    """Lex-least image of s under reversal and negashifts, with the move used."""
    best = None
    for rev in (False, True):
        r = seqcore.reverse(s) if rev else s
        for shift in range(2 * len(s)):
            cand = seqcore.negacyclic_shift(r, shift)
            if best is None or _key(cand) < _key(best[0]):
                best = (cand, rev, shift)
    return best


def units(v: int) -> list[int]:
    return [k for k in range(1, 2 * v) if gcd(k, 2 * v) == 1]


def group_order_bound(v: int) -> int:
    """|(G1 x G1) x| (units x switch)| = 16 v^2 phi(2v)."""
    return 16 * v * v * len(units(v))


def _canonical_with_script(p: Pair) -> tuple[Pair, list[Op]]:
    a, b = p
    v = len(a)
    best = None
    for sw in (False, True):
        x, y = (b, a) if sw else (a, b)
        for k in units(v):
            xm, ym = seqcore.multiplier(x, k), seqcore.multiplier(y, k)
            ca, ra, sa = _single_min(xm)
            cb, rb, sb = _single_min(ym)
            key = (_key(ca), _key(cb))
            if best is None or key < best[0]:
                script = [("switch", 0)] if sw else []
                if k != 1:
                    script.append(("multiplier", k))
                if ra:
                    script.append(("reverse-a", 0))
                if sa:
                    script.append(("negashift-a", sa))
                if rb:
                    script.append(("reverse-b", 0))
                if sb:
                    script.append(("negashift-b", sb))
                best = (key, (ca, cb), script)
    return best[1], best[2]


def _invert_script(script: Sequence[Op], v: int) -> list[Op]:
    out = []
    for op, k in reversed(script):
        if op == "multiplier":
            out.append(("multiplier", pow(k, -1, 2 * v)))
        elif op.startswith("negashift"):
            out.append((op, (-k) % (2 * v)))
        else:
            out.append((op, k))
    return out


def _check_pair(p: Pair) -> Pair:
    a, b = seqcore.binary(p[0]), seqcore.binary(p[1])
    if len(a) != len(b):
        raise seqcore.LengthMismatch(f"lengths {len(a)} and {len(b)}")
    return a, b


DEFAULT_MAX_ORBIT = group_order_bound(32)


class Verdict(enum.Enum):
    EQUIVALENT = "equivalent"
    INEQUIVALENT = "inequivalent"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class EquivResult:
    verdict: Verdict
    script: tuple[Op, ...] = ()

    def __bool__(self):
        return self.verdict is Verdict.EQUIVALENT


def canonical_form(p: Pair, max_orbit: int = DEFAULT_MAX_ORBIT) -> Pair:
    """Lexicographically least pair (a then b, + before -) in the orbit of p."""
    p = _check_pair(p)
    if group_order_bound(len(p[0])) > max_orbit:
        raise EquivError(f"orbit bound {group_order_bound(len(p[0]))} exceeds cap {max_orbit}")
    return _canonical_with_script(p)[0]


def are_equivalent(p1: Pair, p2: Pair, max_orbit: int = DEFAULT_MAX_ORBIT) -> EquivResult:
    """Decide equivalence; the script maps p1 to p2 when they are equivalent."""
    p1, p2 = _check_pair(p1), _check_pair(p2)
    v = len(p1[0])
    if len(p2[0]) != v:
        return EquivResult(Verdict.INEQUIVALENT)
    if group_order_bound(v) > max_orbit:
        return EquivResult(Verdict.UNDECIDED)
    if p1 == p2:
        return EquivResult(Verdict.EQUIVALENT, ())
    c1, s1 = _canonical_with_script(p1)
    c2, s2 = _canonical_with_script(p2)
    if c1 != c2:
        return EquivResult(Verdict.INEQUIVALENT)
    script = s1 + _invert_script(s2, v)
    if apply_script(p1, script) != p2:
        raise AssertionError("equivalence script does not reproduce the target")
    return EquivResult(Verdict.EQUIVALENT, tuple(script))


def orbit(p: Pair, max_size: int | None = None) -> set[Pair] | None:
    """Breadth-first closure under the elementary generators.

    Independent of the canonical-form machinery; returns None when the orbit
    grows past ``max_size``.
    """
    p = _check_pair(p)
    v = len(p[0])
    gens: list[Op] = [
        ("reverse-a", 0),
        ("reverse-b", 0),
        ("negashift-a", 1),
        ("negashift-b", 1),
        ("switch", 0),
        ("alternating-negate", 0),
    ] + [("multiplier", k) for k in range(2, 2 * v) if gcd(k, v) == 1]
    seen = {p}
    todo = deque([p])
    while todo:
        cur = todo.popleft()
        for op, k in gens:
            nxt = pair_transform(cur, op, k)
            if nxt not in seen:
                seen.add(nxt)
                if max_size is not None and len(seen) > max_size:
                    return None
                todo.append(nxt)
    return seen


def format_script(script: Sequence[Op]) -> str:
    parts = []
    for op, k in script:
        parts.append(f"{op}({k})" if op in ("multiplier", "negashift-a", "negashift-b") else op)
    return " ; ".join(parts)
