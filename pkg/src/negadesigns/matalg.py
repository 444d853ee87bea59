"""Structured {-1,0,+1} matrices, Gram checks and block arrays."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import seqcore
from .seqcore import Seq


class MatrixError(ValueError):
    pass


class Structure(enum.Enum):
    DENSE = "dense"
    TOEPLITZ = "toeplitz"
    CYCLIC = "cyclic"
    NEGACYCLIC = "negacyclic"


@dataclass(frozen=True)
class MatrixClass:
    """Hadamard, Conference, or Weighing(w)."""

    name: str
    weight: int | None = None

    def __post_init__(self):
        if self.name not in ("hadamard", "conference", "weighing"):
            raise MatrixError(f"unknown matrix class {self.name!r}")
        if self.name == "weighing" and (self.weight is None or self.weight < 1):
            raise MatrixError("weighing class needs a positive weight")

    def __str__(self):
        return f"W(.,{self.weight})" if self.name == "weighing" else self.name


HADAMARD = MatrixClass("hadamard")
CONFERENCE = MatrixClass("conference")


def weighing(w: int) -> MatrixClass:
    return MatrixClass("weighing", w)


@dataclass(frozen=True, eq=False)
class StructuredMatrix:
    entries: np.ndarray
    tag: Structure = Structure.DENSE
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        m = np.array(self.entries, dtype=np.int8)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise MatrixError(f"matrix must be square and non-empty, got shape {m.shape}")
        if not np.isin(m, (-1, 0, 1)).all():
            raise MatrixError("entries must lie in {-1,0,1}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        if not _has_structure(m, self.tag):
            raise MatrixError(f"matrix does not have claimed structure {self.tag.value}")

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    @property
    def first_row(self) -> Seq:
        return tuple(int(e) for e in self.entries[0])

    @property
    def T(self) -> StructuredMatrix:
        tag = self.tag
        return StructuredMatrix(self.entries.T, tag)

    def __eq__(self, other):
        return isinstance(other, StructuredMatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __repr__(self):
        return f"StructuredMatrix(order={self.order}, tag={self.tag.value})"


def is_toeplitz(m: np.ndarray) -> bool:
    return bool((m[1:, 1:] == m[:-1, :-1]).all())


def _shift_matrix(row: Sequence[int], sign: int) -> np.ndarray:
    v = len(row)
    out = np.empty((v, v), dtype=np.int8)
    cur = np.array(row, dtype=np.int8)
    for i in range(v):
        out[i] = cur
        cur = np.concatenate(([sign * cur[-1]], cur[:-1])).astype(np.int8)
    return out


def _has_structure(m: np.ndarray, tag: Structure) -> bool:
    if tag is Structure.DENSE:
        return True
    if tag is Structure.TOEPLITZ:
        return is_toeplitz(m)
    sign = 1 if tag is Structure.CYCLIC else -1
    return bool(np.array_equal(m, _shift_matrix(m[0], sign)))


def from_first_row(row: Sequence[int], tag: Structure = Structure.NEGACYCLIC) -> StructuredMatrix:
    """Row i is the i-th cyclic or negacyclic shift of ``row``."""
    tag = Structure(tag)
    if tag not in (Structure.CYCLIC, Structure.NEGACYCLIC):
        raise MatrixError("from_first_row builds cyclic or negacyclic matrices")
    row = seqcore.ternary(row)
    return StructuredMatrix(_shift_matrix(row, 1 if tag is Structure.CYCLIC else -1), tag)


def negacyclic(row: Sequence[int]) -> StructuredMatrix:
    return from_first_row(row, Structure.NEGACYCLIC)


def circulant(row: Sequence[int]) -> StructuredMatrix:
    return from_first_row(row, Structure.CYCLIC)


def dense(entries) -> StructuredMatrix:
    return StructuredMatrix(np.asarray(entries), Structure.DENSE)


def gram(m: StructuredMatrix | np.ndarray) -> np.ndarray:
    a = (m.entries if isinstance(m, StructuredMatrix) else np.asarray(m)).astype(np.int64)
    return a @ a.T


def verify(m: StructuredMatrix | np.ndarray, cls: MatrixClass) -> bool:
    """Exact Gram identity plus the entry pattern of the class."""
    a = m.entries if isinstance(m, StructuredMatrix) else np.asarray(m)
    n = a.shape[0]
    g = gram(a)
    if cls.name == "hadamard":
        return bool((a != 0).all() and np.array_equal(g, n * np.eye(n, dtype=np.int64)))
    if cls.name == "conference":
        off = ~np.eye(n, dtype=bool)
        return bool(
            (np.diag(a) == 0).all()
            and (a[off] != 0).all()
            and np.array_equal(g, (n - 1) * np.eye(n, dtype=np.int64))
        )
    w = cls.weight
    return bool(
        w <= n
        and ((a != 0).sum(axis=1) == w).all()
        and np.array_equal(g, w * np.eye(n, dtype=np.int64))
    )


def is_skew_hadamard(m: StructuredMatrix | np.ndarray) -> bool:
    a = (m.entries if isinstance(m, StructuredMatrix) else np.asarray(m)).astype(np.int64)
    n = a.shape[0]
    return verify(a, HADAMARD) and np.array_equal(a + a.T, 2 * np.eye(n, dtype=np.int64))


def two_block_array(a: StructuredMatrix, b: StructuredMatrix) -> StructuredMatrix:
    """[[A, B], [-B^T, A^T]]."""
    if a.order != b.order:
        raise MatrixError(f"block orders differ: {a.order} vs {b.order}")
    A, B = a.entries, b.entries
    h = np.block([[A, B], [-B.T, A.T]])
    kind = {Structure.NEGACYCLIC: "2N", Structure.CYCLIC: "2C"}.get(a.tag) if a.tag == b.tag else None
    return StructuredMatrix(h, Structure.DENSE, {"blocks": kind})


def two_n_array(a: Sequence[int], b: Sequence[int]) -> StructuredMatrix:
    return two_block_array(negacyclic(a), negacyclic(b))


def two_c_array(a: Sequence[int], b: Sequence[int]) -> StructuredMatrix:
    return two_block_array(circulant(a), circulant(b))


def williamson_array(
    a: StructuredMatrix, b: StructuredMatrix, c: StructuredMatrix, d: StructuredMatrix
) -> StructuredMatrix:
    orders = {x.order for x in (a, b, c, d)}
    if len(orders) != 1:
        raise MatrixError(f"block orders differ: {sorted(orders)}")
    A, B, C, D = (x.entries for x in (a, b, c, d))
    h = np.block(
        [
            [A, B, C, D],
            [-B, A, -D, C],
            [-C.T, D.T, A.T, -B.T],
            [-D.T, -C.T, B.T, A.T],
        ]
    )
    return StructuredMatrix(h, Structure.DENSE, {"blocks": "williamson"})


def classify_toeplitz_hadamard(h: StructuredMatrix | np.ndarray) -> Structure:
    """Decide cyclic vs negacyclic for a Toeplitz Hadamard matrix."""
    a = h.entries if isinstance(h, StructuredMatrix) else np.asarray(h, dtype=np.int8)
    if not is_toeplitz(a):
        raise MatrixError("matrix is not Toeplitz")
    if not verify(a, HADAMARD):
        raise MatrixError("matrix is not Hadamard")
    v = a.shape[0]
    if v == 1:
        tag = Structure.CYCLIC
    else:
        tag = Structure.CYCLIC if a[1, 0] == a[0, v - 1] else Structure.NEGACYCLIC
    if not _has_structure(a, tag):
        raise AssertionError(f"Toeplitz Hadamard matrix is not {tag.value}")
    return tag


def gram_naf_decomposition(a: StructuredMatrix) -> list[int]:
    """Coefficients of AA^T in powers of N; equals the NAF vector of the first row."""
    if a.tag is not Structure.NEGACYCLIC and not _has_structure(a.entries, Structure.NEGACYCLIC):
        raise MatrixError("matrix is not negacyclic")
    g = gram(a)
    # a polynomial in N is determined by its first row: (sum c_k N^k)[0, k] = c_k
    coeffs = [int(x) for x in g[0]]
    if not np.array_equal(g, _shift_matrix(coeffs, -1).astype(np.int64)):
        raise AssertionError("AA^T is not negacyclic")
    return coeffs


# ------------------------------------------------------------------- text


def format_matrix(m: StructuredMatrix | np.ndarray) -> str:
    a = m.entries if isinstance(m, StructuredMatrix) else np.asarray(m)
    return "\n".join(seqcore.format_seq(int(e) for e in row) for row in a)


def parse_matrix(text: str) -> StructuredMatrix:
    """Rows in the ``+-0`` alphabet, or ``cyclic:ROW`` / ``negacyclic:ROW``."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) == 1 and ":" in lines[0]:
        tag, row = lines[0].split(":", 1)
        return from_first_row(seqcore.parse_seq(row), Structure(tag.strip().lower()))
    rows = [seqcore.parse_seq(ln) for ln in lines]
    return dense(rows)


def format_structured(m: StructuredMatrix) -> str:
    if m.tag in (Structure.CYCLIC, Structure.NEGACYCLIC):
        return f"{m.tag.value}:{seqcore.format_seq(m.first_row)}"
    return format_matrix(m)
