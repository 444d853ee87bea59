"""Constructions of conference rows, NG-pairs, Williamson-type quadruples and 2N weighing matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import equiv, gf, matalg, seqcore
from .matalg import Structure
from .seqcore import Kind, Seq


class ConstructionError(ValueError):
    pass


class UnsupportedOrder(ConstructionError):
    pass


class InvalidQuad(ConstructionError):
    pass


# ------------------------------------------------------------------ types


@dataclass(frozen=True)
class NGPair:
    a: Seq
    b: Seq

    def __post_init__(self):
        a, b = seqcore.binary(self.a), seqcore.binary(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if len(a) != len(b):
            raise seqcore.LengthMismatch(f"lengths {len(a)} and {len(b)}")
        if len(a) != 1 and len(a) % 2:
            raise ConstructionError(f"NG-pairs have even length or length 1, got {len(a)}")
        if not seqcore.is_complementary([a, b], Kind.NEGAPERIODIC):
            raise ConstructionError("sequences are not N-complementary")

    @property
    def v(self) -> int:
        return len(self.a)

    def astuple(self) -> tuple[Seq, Seq]:
        return self.a, self.b

    def matrix(self) -> matalg.StructuredMatrix:
        return matalg.two_n_array(self.a, self.b)


def _circ(row: Sequence[int]) -> np.ndarray:
    return matalg.circulant(row).entries.astype(np.int64)


@dataclass(frozen=True)
class QuasiWilliamsonQuad:
    """First rows of four binary circulants of order t with
    AA^T + BB^T + CC^T + DD^T = 4tI and AB^T + CD^T = BA^T + DC^T."""

    a: Seq
    b: Seq
    c: Seq
    d: Seq

    def __post_init__(self):
        rows = [seqcore.binary(r) for r in (self.a, self.b, self.c, self.d)]
        for name, r in zip("abcd", rows):
            object.__setattr__(self, name, r)
        t = len(rows[0])
        if any(len(r) != t for r in rows):
            raise seqcore.LengthMismatch(f"row lengths {[len(r) for r in rows]}")
        A, B, C, D = (_circ(r) for r in rows)
        if not np.array_equal(A @ A.T + B @ B.T + C @ C.T + D @ D.T, 4 * t * np.eye(t, dtype=np.int64)):
            raise InvalidQuad("AA^T + BB^T + CC^T + DD^T != 4tI")
        if not np.array_equal(A @ B.T + C @ D.T, B @ A.T + D @ C.T):
            raise InvalidQuad("AB^T + CD^T != BA^T + DC^T")

    @property
    def t(self) -> int:
        return len(self.a)

    def rows(self) -> tuple[Seq, Seq, Seq, Seq]:
        return self.a, self.b, self.c, self.d

    def is_williamson(self) -> bool:
        return all(r[1:] == r[1:][::-1] for r in self.rows())

    def matrix(self) -> matalg.StructuredMatrix:
        return matalg.williamson_array(*(matalg.circulant(r) for r in self.rows()))


def belevitch_holds(row: Sequence[int]) -> bool:
    n = len(row)
    h = n // 2
    return n % 2 == 0 and all(row[h + j] == (-1) ** j * row[h - j] for j in range(1, h))


@dataclass(frozen=True)
class ConferenceRow:
    row: Seq
    q: int | None = None
    p: int | None = None
    poly: str | None = None
    source: str = field(default="", compare=False)

    def __post_init__(self):
        row = seqcore.ternary(self.row)
        object.__setattr__(self, "row", row)
        if len(row) < 2 or row[0] != 0 or 0 in row[1:]:
            raise ConstructionError("conference row must be (0, +-1, ..., +-1)")
        if not belevitch_holds(row):
            raise ConstructionError("row violates c_{n/2+j} = (-1)^j c_{n/2-j}")
        if not matalg.verify(matalg.negacyclic(row), matalg.CONFERENCE):
            raise ConstructionError("negacyclic matrix is not a conference matrix")

    @property
    def order(self) -> int:
        return len(self.row)

    def matrix(self) -> matalg.StructuredMatrix:
        return matalg.negacyclic(self.row)


# --------------------------------------------------------------- helpers


def _check_q(q: int) -> tuple[int, int]:
    pp = gf.prime_power(q)
    if pp is None or pp[0] == 2:
        raise UnsupportedOrder(f"q = {q} is not an odd prime power")
    return pp


def _quadratic_ext(q: int, poly) -> gf.FieldCtx:
    p, n = _check_q(q)
    ctx = gf.make_field(p, 2 * n, poly)
    if not ctx.primitive:
        raise ConstructionError(f"{gf.format_poly(ctx.modulus)} is not primitive over GF({p})")
    return ctx


# ----------------------------------------------------------------- Paley


def paley_conference(q: int) -> matalg.StructuredMatrix:
    """C_X = [chi(det(xi, eta))] with X = {(0,1)} u {(1,beta)}."""
    p, n = _check_q(q)
    ctx = gf.make_field(p, n)
    zero, one = ctx.elem(0), ctx.elem(1)
    xs = [(zero, one)] + [(one, beta) for beta in ctx.elements()]
    m = [[gf.quadratic_character(ctx, gf.det2(u, w)) for w in xs] for u in xs]
    return matalg.dense(m)


# ------------------------------------------------------ negacyclic rows


def projective_conference_row(q: int, poly=None) -> ConferenceRow:
    """Negacyclic conference row of order 1+q from the projective line over GF(q).

    With x primitive in GF(q^2) and delta = x^((q+1)/2), entry j is
    chi((x^(jq) - x^j) / delta), normalized so that c_1 = +1.
    """
    ctx = _quadratic_ext(q, poly)
    inv_delta = ctx.inv(ctx.exp((q + 1) // 2))
    row = []
    for j in range(q + 1):
        y = ctx.exp(j)
        diff = ctx.sub(ctx.pow(y, q), y)
        row.append(gf.subfield_character(ctx, ctx.mul(diff, inv_delta)))
    if row[1] == -1:
        row = [-e for e in row]
    return ConferenceRow(tuple(row), q, ctx.p, gf.format_poly(ctx.modulus), "projective")


def _corpus_row(q: int) -> ConferenceRow | None:
    from . import corpus  # corpus verifies through this module

    return corpus.conference_row_for(q)


def negacyclic_conference(q: int, poly=None) -> ConferenceRow:
    """A negacyclic conference row of order 1+q.

    q = 3 mod 4: interleave of the Ito pair. q = 1 mod 4: the verified corpus
    row of that order when one exists (and no other polynomial was asked
    for), otherwise the projective-line construction.
    """
    p, n = _check_q(q)
    if q % 4 == 3:
        res = ito_ng(q, poly)
        a, b = res.raw
        row = [0, b[0]]
        for i in range(1, len(a)):
            row += [a[i], b[i]]
        ctx_poly = res.poly
        return ConferenceRow(tuple(row), q, p, ctx_poly, "ito-interleave")
    if poly is None:
        hit = _corpus_row(q)
        if hit is not None:
            return hit
    elif isinstance(poly, str):
        hit = _corpus_row(q)
        if hit is not None and gf.parse_poly(hit.poly, p) == gf.parse_poly(poly, p):
            return hit
    if poly is None:
        poly = _corpus_poly(q)
    return projective_conference_row(q, poly)


def _corpus_poly(q: int):
    from . import corpus

    return corpus.polynomial_for(q)


# ------------------------------------------------------------- NG series


@dataclass(frozen=True)
class ItoResult:
    raw: tuple[Seq, Seq]
    pair: NGPair
    record: NGPair
    poly: str


def ito_ng(q: int, poly=None) -> ItoResult:
    """Trace-based NG-pair of length (1+q)/2 for q = 3 mod 4.

    ``raw`` has a_0 = -1; ``pair`` is (-a, b), whose 2N array is
    skew-Hadamard; ``record`` is (+, a_1, ..., a_{v-1}), b, the form in which
    such pairs are tabulated.
    """
    p, n = _check_q(q)
    if q % 4 != 3:
        raise ConstructionError(f"q = {q} is not 3 mod 4")
    if poly is None:
        poly = _corpus_poly(q)
    ctx = _quadratic_ext(q, poly)
    t = (1 + q) // 4
    v = 2 * t
    alpha = ctx.exp(2 * t)
    w = ctx.exp(2 * t - 1)

    def sign(k):
        y = ctx.mul(alpha, ctx.pow(w, k))
        return 1 if gf.subfield_character(ctx, gf.rel_trace(ctx, y)) == 1 else -1

    a = tuple(sign(2 * i) for i in range(v))
    b = tuple(sign(2 * i + 1) for i in range(v))
    if a[0] != -1:
        raise AssertionError("a_0 must be -1")
    if not (seqcore.is_quasi_symmetric(a) and seqcore.is_reversal_negating(b)):
        raise AssertionError(f"symmetry of the trace pair fails for q = {q}")
    pair = NGPair(tuple(-e for e in a), b)
    if not matalg.is_skew_hadamard(pair.matrix()):
        raise AssertionError("2N array of (-a, b) is not skew-Hadamard")
    record = NGPair((1,) + a[1:], b)
    return ItoResult((a, b), pair, record, gf.format_poly(ctx.modulus))


def split_row(row: Sequence[int]) -> tuple[Seq, Seq]:
    """(c_0, c_2, ...), (c_1, c_3, ...)."""
    return tuple(row[0::2]), tuple(row[1::2])


def paley_ng(q: int, poly=None) -> NGPair:
    """First-Paley pair of length 1+q (q = 1 mod 4), second-Paley pair of length (1+q)/2 otherwise."""
    c = negacyclic_conference(q, poly).row
    if q % 4 == 1:
        return NGPair((1,) + c[1:], (-1,) + c[1:])
    a, b = split_row(c)
    return NGPair((1,) + a[1:], b)


def symmetric_2c_blocks(row: ConferenceRow | Sequence[int]) -> tuple[Seq, Seq]:
    """Symmetric circulant blocks (a', b'') of a 2C conference matrix from a negacyclic row."""
    c = row.row if isinstance(row, ConferenceRow) else seqcore.ternary(row)
    v = len(c)
    if v % 4 != 2:
        raise ConstructionError(f"order {v} is not 2 mod 4")
    t = v // 2
    m = (v - 2) // 4
    a, b = split_row(c)
    ap = seqcore.alternating_negate(a)
    bp = seqcore.alternating_negate(b)
    bpp = tuple(bp[(j + m) % t] for j in range(t))
    for r in (ap, bpp):
        if r[1:] != r[1:][::-1]:
            raise AssertionError("block is not a symmetric circulant")
    if not matalg.verify(matalg.two_c_array(ap, bpp), matalg.CONFERENCE):
        raise AssertionError("2C array is not a conference matrix")
    return ap, bpp


def turyn_williamson(a: Sequence[int], b: Sequence[int]) -> QuasiWilliamsonQuad:
    """(A+I, A-I, B, B) from symmetric circulant rows a (a_0 = 0) and b."""
    a, b = seqcore.ternary(a), seqcore.ternary(b)
    for r in (a, b):
        if r[1:] != r[1:][::-1]:
            raise ConstructionError("rows must be symmetric circulant rows")
    if a[0] != 0:
        raise ConstructionError("first block must have zero diagonal")
    return QuasiWilliamsonQuad((1,) + a[1:], (-1,) + a[1:], b, b)


# ------------------------------------------------------ Turyn products


GOLAY_2 = ((1, -1), (1, 1))


def turyn_multiply(g: tuple[Sequence[int], Sequence[int]], pair, kind: Kind | str = Kind.NEGAPERIODIC):
    """(a, b) . (c, d) = (e, f) for a Golay pair (a, b) and a P- or N-complementary ternary pair."""
    kind = Kind(kind)
    if kind is Kind.APERIODIC:
        raise ConstructionError("kind must be periodic or negaperiodic")
    a, b = seqcore.binary(g[0]), seqcore.binary(g[1])
    c, d = seqcore.ternary(pair[0]), seqcore.ternary(pair[1])
    if len(a) != len(b) or len(c) != len(d):
        raise seqcore.LengthMismatch("pair members must have equal lengths")
    if not seqcore.is_complementary([a, b], Kind.APERIODIC):
        raise ConstructionError("first factor is not a Golay pair")
    if not seqcore.is_complementary([c, d], kind):
        raise ConstructionError(f"second factor is not {kind.name.lower()} complementary")
    gl, v = len(a), len(c)
    w = seqcore.weight(c) + seqcore.weight(d)
    s = [(x + y) // 2 for x, y in zip(a, b)]
    r = [(x - y) // 2 for x, y in zip(a, b)]
    e = [0] * (gl * v)
    f = [0] * (gl * v)
    # d(z^-g) z^(gv-g) = sum d_i z^(g(v-1-i)): no reduction is ever needed
    for i in range(gl):
        for j in range(v):
            e[i + gl * j] += s[i] * c[j] + r[i] * d[v - 1 - j]
            f[i + gl * j] += -r[i] * c[v - 1 - j] + s[i] * d[j]
    e, f = seqcore.ternary(e), seqcore.ternary(f)
    if seqcore.weight(e) + seqcore.weight(f) != gl * w:
        raise AssertionError("weight law violated")
    if not seqcore.is_complementary([e, f], kind):
        raise AssertionError("product is not complementary")
    return e, f


def double(pair) -> tuple[Seq, Seq]:
    """Multiplication by 2 of an N-complementary ternary pair."""
    return turyn_multiply(GOLAY_2, pair, Kind.NEGAPERIODIC)


# ------------------------------------------------- quasi-Williamson maps


def _z(t: int) -> int:
    return 1 if t % 4 == 1 else -1


def psi(i: int, j: int, t: int) -> int:
    """Psi_i(j) = j + t (z (i - j) mod 4): the element of Z_4t that is j mod t and i mod 4."""
    return j + t * ((_z(t) * (i - j)) % 4)


def qw_to_ng(quad: QuasiWilliamsonQuad) -> NGPair:
    t = quad.t
    if t % 2 == 0:
        raise ConstructionError("quasi-Williamson conversion needs odd t")
    v = 2 * t

    def build(x, y):
        s = set()
        for j in range(t):
            s.add(psi(0 if x[j] == 1 else 2, j, t))
            s.add(psi(1 if y[j] == 1 else 3, j, t))
        if not equiv.in_phi_image(s, v):
            raise InvalidQuad("set is not in the image of Phi")
        return equiv.phi_inverse(s, v)

    return NGPair(build(quad.a, quad.b), build(quad.c, quad.d))


def ng_to_qw(pair: NGPair | tuple) -> QuasiWilliamsonQuad:
    if not isinstance(pair, NGPair):
        pair = NGPair(*pair)
    v = pair.v
    if v % 4 != 2:
        raise ConstructionError(f"length {v} is not twice an odd number")
    t = v // 2

    def split(seq):
        x, y = [0] * t, [0] * t
        for s in equiv.phi(seq):
            j, i = s % t, s % 4
            if psi(i, j, t) != s:
                raise AssertionError("CRT lift mismatch")
            if i % 2 == 0:
                if x[j]:
                    raise ConstructionError("inconsistent pair: two even lifts")
                x[j] = 1 if i == 0 else -1
            else:
                if y[j]:
                    raise ConstructionError("inconsistent pair: two odd lifts")
                y[j] = 1 if i == 1 else -1
        if 0 in x or 0 in y:
            raise ConstructionError("inconsistent pair: missing lift")
        return tuple(x), tuple(y)

    a, b = split(pair.a)
    c, d = split(pair.b)
    return QuasiWilliamsonQuad(a, b, c, d)


# -------------------------------------------------------------- weighing


@dataclass(frozen=True)
class WeighingResult:
    label: str
    order: int
    weight: int
    blocks: tuple[Seq, Seq]
    matrix: matalg.StructuredMatrix = field(repr=False, compare=False)


def _weighing(label: str, blocks, n: int, w: int) -> WeighingResult:
    m = matalg.two_n_array(*blocks)
    if m.order != n or not matalg.verify(m, matalg.weighing(w)):
        raise AssertionError(f"{label} does not verify as W({n},{w})")
    return WeighingResult(label, n, w, (tuple(blocks[0]), tuple(blocks[1])), m)


def weighing_from_ng(q: int) -> list[WeighingResult]:
    """2N-type W(1+q, q), W(2+2q, 2q) and, for q = 3 mod 4, W(2+2q, 1+2q), W(4+4q, 2+4q)."""
    _check_q(q)
    out = []
    if q % 4 == 1:
        base = split_row(negacyclic_conference(q).row)
    else:
        a, b = ito_ng(q).pair.astuple()
        base = ((0,) + a[1:], b)
    out.append(_weighing("i", base, 1 + q, q))
    out.append(_weighing("ii", double(base), 2 + 2 * q, 2 * q))
    if q % 4 == 3:
        a, b = ito_ng(q).pair.astuple()
        # alternating negation makes the reversal-negating b symmetric, so the doubled a stays quasi-symmetric
        a, b = seqcore.alternating_negate(a), seqcore.alternating_negate(b)
        e, f = double((a, b))
        if not seqcore.is_quasi_symmetric(e) or e[0] != 1:
            raise AssertionError("doubled sequence is not (1, quasi-symmetric)")
        conf = ((0,) + e[1:], f)
        out.append(_weighing("iii-a", conf, 2 + 2 * q, 1 + 2 * q))
        out.append(_weighing("iii-b", double(conf), 4 + 4 * q, 2 + 4 * q))
    return out
