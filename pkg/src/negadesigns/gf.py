"""Exact arithmetic in GF(p^n) for odd p.

Elements are stored as integers holding the base-p digits of their
coefficient vector (``c_0 + c_1 p + ... + c_{n-1} p^{n-1}``). A
:class:`FieldCtx` built from a primitive modulus keeps exp/log tables when
the field has at most ``2**16`` elements and falls back to plain polynomial
arithmetic above that.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product

TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------- integers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, n)`` with ``q == p**n`` and p prime, else None."""
    if q < 2:
        return None
    ps = prime_factors(q)
    if len(ps) != 1:
        return None
    p, n = ps[0], 0
    while q > 1:
        q //= p
        n += 1
    return p, n


def is_odd_prime_power(q: int) -> bool:
    pp = prime_power(q)
    return pp is not None and pp[0] != 2


# ------------------------------------------------------- polynomials mod p
# Coefficient lists, lowest degree first, no trailing zeros (zero poly = []).


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Rabin's test for a monic polynomial given lowest degree first."""
    m = _trim([c % p for c in modulus])
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**n, m, p) != _pmod(x, m, p):
        return False
    for r in prime_factors(n):
        h = _ppowmod(x, p ** (n // r), m, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(m, _trim(h), p)) != 1:
            return False
    return True


def is_primitive(modulus: tuple[int, ...], p: int) -> bool:
    m = _trim([c % p for c in modulus])
    n = len(m) - 1
    if n < 1 or m[0] == 0 or not is_irreducible(modulus, p):
        return False
    order = p**n - 1
    if n == 1:
        # the root of x + c is -c
        root = (-m[0]) % p
        return all(pow(root, order // r, p) != 1 for r in prime_factors(order))
    return all(_ppowmod([0, 1], order // r, m, p) != [1] for r in prime_factors(order))


def find_primitive_poly(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic primitive polynomial of degree n over Z_p.

    Candidates are ordered lexicographically by ``(c_0, c_1, ..., c_{n-1})``.
    """
    if not is_prime(p) or p == 2:
        raise FieldError(f"{p} is not an odd prime")
    for low in product(range(p), repeat=n):
        poly = (*low, 1)
        if low[0] != 0 and is_primitive(poly, p):
            return poly
    raise AssertionError("primitive polynomials always exist")


_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")
_TERM = re.compile(r"([+-])(\d*)\*?(x(?:\^(\d+))?)?$")


def parse_poly(text: str, p: int) -> tuple[int, ...]:
    """Parse ``x^2+x+5`` style text into coefficients (lowest first) mod p."""
    s = text.translate(_SUPERSCRIPTS).replace("−", "-").replace(" ", "")
    s = re.sub(r"x(\d+)", r"x^\1", s)
    if not s:
        raise FieldError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, int] = {}
    for raw in re.findall(r"[+-][^+-]+", s):
        m = _TERM.match(raw)
        if not m or (not m.group(2) and not m.group(3)):
            raise FieldError(f"cannot parse term {raw!r} in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        deg = 0 if not m.group(3) else int(m.group(4) or 1)
        coeffs[deg] = coeffs.get(deg, 0) + sign * c
    n = max(coeffs)
    return tuple(coeffs.get(i, 0) % p for i in range(n + 1))


def format_poly(coeffs: tuple[int, ...]) -> str:
    """Canonical text form, e.g. ``x^2+2x+2``."""
    parts = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == 0:
            continue
        cs = "" if (c == 1 and deg > 0) else str(c)
        xs = "" if deg == 0 else ("x" if deg == 1 else f"x^{deg}")
        parts.append(cs + xs)
    return "+".join(parts) or "0"


# ------------------------------------------------------------------ fields


class FieldCtx:
    """GF(p^n) defined by a monic irreducible ``modulus`` (lowest first)."""

    def __init__(self, p: int, n: int, modulus: tuple[int, ...] | str):
        if not is_prime(p) or p == 2:
            raise FieldError(f"characteristic must be an odd prime, got {p}")
        if isinstance(modulus, str):
            modulus = parse_poly(modulus, p)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {n}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"{format_poly(modulus)} is reducible over Z_{p}")
        self.p = p
        self.n = n
        self.modulus = modulus
        self.order = p**n
        self.primitive = is_primitive(modulus, p)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if self.primitive and self.order <= TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"FieldCtx(GF({self.p}^{self.n}), {format_poly(self.modulus)})"

    # encoding ---------------------------------------------------------

    def to_coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_coeffs(self, cs) -> int:
        v = 0
        for c in reversed(list(cs)[: self.n]):
            v = v * self.p + c % self.p
        return v

    def _build_tables(self):
        exp = [0] * (self.order - 1)
        log = [-1] * self.order
        cur = 1
        x = self.from_coeffs([0, 1]) if self.n > 1 else (-self.modulus[0]) % self.p
        for i in range(self.order - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._mul_poly(cur, x)
        self._exp, self._log = exp, log

    # arithmetic on encoded ints ------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.n == 1:
            return (a + b) % p
        out, mul = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mul
            a //= p
            b //= p
            mul *= p
        return out

    def neg(self, a: int) -> int:
        return self.from_coeffs([-c for c in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_poly(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        prod = _pmul(self.to_coeffs(a), self.to_coeffs(b), self.p)
        return self.from_coeffs(_pmod(prod, list(self.modulus), self.p))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mul_poly(a, b)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        e %= self.order - 1
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, -1)

    def log(self, a: int) -> int:
        """Discrete log to base x; needs a primitive modulus."""
        if not self.primitive:
            raise FieldError("discrete log needs a primitive modulus")
        if a == 0:
            raise FieldError("log of zero")
        if self._log is not None:
            return self._log[a]
        raise FieldError("field too large for log tables")

    @cached_property
    def gen(self) -> int:
        """The class of x (the root of the modulus)."""
        if self.n == 1:
            return (-self.modulus[0]) % self.p
        return self.from_coeffs([0, 1])

    def exp(self, k: int) -> int:
        """x**k."""
        if self._exp is not None:
            return self._exp[k % (self.order - 1)]
        return self.pow(self.gen, k)

    def elem(self, value) -> FieldElem:
        """An integer is read as a prime-field constant, a sequence as coefficients."""
        if isinstance(value, int):
            return FieldElem(self, value % self.p)
        return FieldElem(self, self.from_coeffs(value))

    def elements(self) -> list[FieldElem]:
        return [FieldElem(self, i) for i in range(self.order)]

    def multiplicative_order(self, a: int) -> int:
        n = self.order - 1
        for r in prime_factors(self.order - 1):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self.ctx.inv(self._coerce(other))))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.ctx.p
        return isinstance(other, FieldElem) and other.ctx is self.ctx and other.value == self.value

    def __hash__(self):
        return hash((id(self.ctx), self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElem({self.ctx.to_coeffs(self.value)})"


Vec2 = tuple[FieldElem, FieldElem]


def make_field(p: int, n: int, modulus: tuple[int, ...] | str | None = None) -> FieldCtx:
    """Build GF(p^n); the modulus defaults to :func:`find_primitive_poly`."""
    if modulus is None:
        modulus = find_primitive_poly(p, n)
    return FieldCtx(p, n, modulus)


def field_of_order(q: int, modulus=None) -> FieldCtx:
    pp = prime_power(q)
    if pp is None or pp[0] == 2:
        raise FieldError(f"{q} is not an odd prime power")
    return make_field(pp[0], pp[1], modulus)


def quadratic_character(ctx: FieldCtx, y: FieldElem | int) -> int:
    """Quadratic character of GF(ctx.order): 0, +1 or -1."""
    v = y.value if isinstance(y, FieldElem) else y
    if v == 0:
        return 0
    r = ctx.pow(v, (ctx.order - 1) // 2)
    if r == 1:
        return 1
    if r == ctx.p - 1:
        return -1
    raise AssertionError("y^((q-1)/2) must be +-1")


def subfield_order(ctx2: FieldCtx) -> int:
    if ctx2.n % 2:
        raise FieldError("relative trace needs a field of even degree")
    return ctx2.p ** (ctx2.n // 2)


def in_subfield(ctx2: FieldCtx, y: int) -> bool:
    return ctx2.pow(y, subfield_order(ctx2)) == y


def rel_trace(ctx2: FieldCtx, y: FieldElem | int) -> FieldElem:
    """Relative trace GF(q^2) -> GF(q), returned as an element of ``ctx2``."""
    v = y.value if isinstance(y, FieldElem) else y
    q = subfield_order(ctx2)
    t = ctx2.add(v, ctx2.pow(v, q))
    if not in_subfield(ctx2, t):
        raise AssertionError("trace left the subfield")
    return FieldElem(ctx2, t)


def subfield_character(ctx2: FieldCtx, y: FieldElem | int) -> int:
    """Quadratic character of GF(q) evaluated on a fixed element of GF(q^2)."""
    v = y.value if isinstance(y, FieldElem) else y
    if v == 0:
        return 0
    if not in_subfield(ctx2, v):
        raise FieldError("element is not in GF(q)")
    q = subfield_order(ctx2)
    return 1 if ctx2.pow(v, (q - 1) // 2) == 1 else -1


def det2(u: Vec2, v: Vec2) -> FieldElem:
    return u[0] * v[1] - u[1] * v[0]
