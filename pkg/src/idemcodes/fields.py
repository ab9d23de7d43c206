"""Finite fields F_{p^k}, their extensions, Frobenius maps, traces and normal bases.

Elements are plain ints: the coefficient vector (c_0, ..., c_{k-1}) of the
residue class of sum c_i t^i is encoded as sum c_i p^i.  That encoding is also
the canonical element order used by every deterministic search in the
package.  ``FieldElem`` wraps an int for callers that want operators.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ContextMismatch,
    DivisionByZero,
    NotASubfieldDegree,
    NotCoprime,
    OrderNotAvailable,
)

__all__ = [
    "FieldCtx",
    "FieldElem",
    "ExtensionCtx",
    "get_field",
    "extension",
    "factorize",
    "is_prime",
    "multiplicative_order_mod",
    "is_irreducible",
    "smallest_irreducible",
    "field_arith",
    "frobenius",
    "trace_to_subfield",
    "root_of_unity",
    "normal_element",
]


# -- integers -----------------------------------------------------------------


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def multiplicative_order_mod(s: int, m: int) -> int:
    """Smallest o >= 1 with s^o = 1 mod m."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(s, m) != 1:
        raise NotCoprime(f"gcd({s}, {m}) != 1")
    if m == 1:
        return 1
    o, x = 1, s % m
    while x != 1:
        x = x * s % m
        o += 1
    return o


# -- polynomials over F_p (coefficient lists, constant term first) ------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, f, p)


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(p: int, f: Sequence[int]) -> bool:
    """Rabin's test for a monic polynomial ``f`` over F_p."""
    f = _trim([c % p for c in f])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**k, f, p), x, p):
        return False
    for r in factorize(k):
        h = _psub(_ppowmod(x, p ** (k // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Candidates are ranked by the integer encoding of their low coefficients
    (constant term least significant).
    """
    if k == 1:
        return (0, 1)
    for code in range(1, p**k):
        low = [(code // p**i) % p for i in range(k)]
        if low[0] == 0:
            continue
        f = tuple(low) + (1,)
        if is_irreducible(p, f):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


# -- the field context ----------------------------------------------------------


class FieldCtx:
    """Arithmetic context for F_s, s = p^k, realised as F_p[t]/(modulus)."""

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None) -> None:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.k = k
        self.modulus = tuple(modulus) if modulus is not None else smallest_irreducible(p, k)
        if len(self.modulus) != k + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible(p, self.modulus):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{p}")
        self.s = p**k
        self._build_tables()

    # tables ---------------------------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        pa, pb = self.coeffs(a), self.coeffs(b)
        prod = _pmulmod(list(pa), list(pb), list(self.modulus), self.p)
        return self.from_coeffs(prod)

    def _build_tables(self) -> None:
        q = self.s
        order = q - 1
        primes = list(factorize(order)) if order > 1 else []
        gen = None
        for g in range(1, q):
            if all(self._pow_slow(g, order // r) != 1 for r in primes):
                gen = g
                break
        assert gen is not None
        exp = [0] * (2 * order) if order else [1, 1]
        log = [0] * q
        val = 1
        for i in range(order):
            exp[i] = val
            log[val] = i
            val = self._mul_slow(val, gen)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self.generator = gen
        self._exp = exp
        self._log = log

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    # encoding -----------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.s

    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, cs: Sequence[int]) -> int:
        cs = list(cs)
        if len(cs) > self.k:
            cs = _pmod([c % self.p for c in cs], list(self.modulus), self.p)
        v = 0
        for c in reversed(cs):
            v = v * self.p + c % self.p
        return v

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_s."""
        return n % self.p

    def elem(self, a: int | Sequence[int]) -> FieldElem:
        if not isinstance(a, int):
            a = self.from_coeffs(a)
        if not 0 <= a < self.s:
            raise ValueError(f"{a} is not an element of F_{self.s}")
        return FieldElem(self, a)

    def elements(self) -> range:
        return range(self.s)

    # arithmetic on ints ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % p
        out, w = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * w
            w *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.k == 1:
            return -a % p
        out, w = 0, 1
        while a:
            a, r = divmod(a, p)
            out += (-r % p) * w
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        order = self.s - 1
        return self._exp[(order - self._log[a]) % order] if order else 1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if e == 0 else 0
        order = self.s - 1
        return self._exp[(self._log[a] * e) % order] if order else 1

    def log(self, a: int) -> int:
        """Discrete log with respect to ``generator``."""
        if a == 0:
            raise DivisionByZero("log of zero")
        return self._log[a]

    def exp(self, e: int) -> int:
        order = self.s - 1
        return self._exp[e % order] if order else 1

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("order of zero")
        order = self.s - 1
        return order // math.gcd(order, self._log[a]) if order else 1

    def sum(self, xs) -> int:
        out = 0
        for x in xs:
            out = self.add(out, x)
        return out

    # numpy tables for the vectorised group-algebra kernels ---------------------

    @functools.cached_property
    def add_table(self) -> np.ndarray:
        s = self.s
        if self.p == 2:
            idx = np.arange(s)
            return (idx[:, None] ^ idx[None, :]).astype(np.int64)
        t = np.empty((s, s), dtype=np.int64)
        for a in range(s):
            for b in range(s):
                t[a, b] = self.add(a, b)
        return t

    @functools.cached_property
    def mul_table(self) -> np.ndarray:
        s = self.s
        t = np.zeros((s, s), dtype=np.int64)
        for a in range(1, s):
            for b in range(1, s):
                t[a, b] = self.mul(a, b)
        return t

    @functools.cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.s)], dtype=np.int64)

    @functools.cached_property
    def inv_table(self) -> np.ndarray:
        return np.array([0] + [self.inv(a) for a in range(1, self.s)], dtype=np.int64)

    @functools.cached_property
    def digit_table(self) -> np.ndarray:
        """Row a holds the F_p coefficient vector of element a."""
        return np.array([self.coeffs(a) for a in range(self.s)], dtype=np.int64).reshape(self.s, self.k)

    # display ---------------------------------------------------------------

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.coeffs(a)):
            if not c:
                continue
            mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(reversed(terms)) if terms else "0"

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __str__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))


@functools.lru_cache(maxsize=None)
def get_field(p: int, k: int = 1) -> FieldCtx:
    """Cached field with the default (smallest irreducible) modulus."""
    return FieldCtx(p, k)


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.value)

    def _other(self, other: FieldElem | int) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{other.ctx} vs {self.ctx}")
            return other.value
        return self.ctx.from_int(other)

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def inverse(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return self.ctx.format(self.value)


def field_arith(a: FieldElem, b: FieldElem | None, op: str) -> FieldElem:
    """Dispatch one of add, sub, mul, div, pow, inv, neg.

    For ``pow`` the exponent is passed as ``b`` (a plain int).
    """
    if op in ("inv", "neg"):
        return a.inverse() if op == "inv" else -a
    if op == "pow":
        return a ** int(b)  # type: ignore[arg-type]
    if not isinstance(b, FieldElem) or b.ctx != a.ctx:
        raise ContextMismatch("operands live in different fields")
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    try:
        return ops[op](b)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


# -- extensions -------------------------------------------------------------------


class ExtensionCtx:
    """F_{s^o} over F_s, realised as a single degree k*o extension of F_p.

    ``embed`` maps base-field ints to top-field ints; the base generator t is
    sent to the first root of its modulus in canonical order.
    """

    def __init__(self, base: FieldCtx, degree: int) -> None:
        if degree < 1:
            raise ValueError("degree must be positive")
        self.base = base
        self.degree = degree
        self.top = base if degree == 1 else get_field(base.p, base.k * degree)
        self.embed_table = self._embedding()
        self._restrict = {y: x for x, y in enumerate(self.embed_table)}

    def _embedding(self) -> list[int]:
        base, top = self.base, self.top
        if base.k == 1 or top is base:
            return list(range(base.s))
        f = base.modulus
        root = None
        for r in range(top.s):
            acc = 0
            for c in reversed(f):
                acc = top.add(top.mul(acc, r), c)
            if acc == 0:
                root = r
                break
        assert root is not None
        table = []
        for a in range(base.s):
            acc = 0
            for c in reversed(base.coeffs(a)):
                acc = top.add(top.mul(acc, root), c)
            table.append(acc)
        return table

    @property
    def s(self) -> int:
        return self.base.s

    def embed(self, a: int) -> int:
        return self.embed_table[a]

    def in_base(self, x: int) -> bool:
        return x in self._restrict

    def restrict(self, x: int) -> int:
        """Inverse of ``embed``; the argument must lie in the image."""
        from .errors import CoefficientsNotInBaseField

        try:
            return self._restrict[x]
        except KeyError:
            raise CoefficientsNotInBaseField(f"{x} is not in the base field F_{self.s}") from None

    def frobenius(self, x: int, i: int = 1) -> int:
        """x^(s^i) with i taken mod the degree."""
        i %= self.degree
        if i == 0 or x == 0:
            return x
        top = self.top
        e = pow(self.s, i, top.s - 1)
        return top.pow(x, e)

    def trace(self, x: int, d: int | None = None) -> int:
        """Trace from F_{s^o} down to F_{s^d}, returned as a top-field int."""
        o = self.degree
        d = o if d is None else d
        if d < 1 or o % d:
            raise NotASubfieldDegree(f"{d} does not divide {o}")
        if d == o:
            return x
        top = self.top
        acc = 0
        for i in range(o // d):
            acc = top.add(acc, self.frobenius(x, d * i))
        return acc

    def base_trace(self, x: int) -> int:
        """Trace to F_s, as a base-field int."""
        d = 1
        return self.restrict(self.trace(x, d))

    @functools.lru_cache(maxsize=None)
    def root_of_unity(self, m: int) -> int:
        q1 = self.top.s - 1
        if m < 1 or (q1 % m if q1 else m != 1):
            raise OrderNotAvailable(f"{m} does not divide {self.top.s} - 1")
        return self.top.exp(q1 // m) if q1 else 1

    def matrix_inverse(self, rows: list[list[int]]) -> list[list[int]]:
        from .linalg import inverse

        return inverse(self.top, rows)

    def is_normal(self, w: int, n: int) -> bool:
        """Frobenius orbit of w under x -> x^(s^(o/n)) is independent over F_{s^(o/n)}."""
        from .linalg import rank

        if n < 1 or self.degree % n:
            raise NotASubfieldDegree(f"{n} does not divide {self.degree}")
        step = self.degree // n
        orbit = [self.frobenius(w, step * j) for j in range(n)]
        moore = [[self.frobenius(b, step * i) for b in orbit] for i in range(n)]
        return rank(self.top, moore) == n

    @functools.lru_cache(maxsize=None)
    def normal_element(self, n: int) -> int:
        if n < 1 or self.degree % n:
            raise NotASubfieldDegree(f"{n} does not divide {self.degree}")
        for w in range(1, self.top.s):
            if self.is_normal(w, n):
                return w
        raise AssertionError("normal element search exhausted the field")

    def __repr__(self) -> str:
        return f"ExtensionCtx(base={self.base!s}, degree={self.degree}, top={self.top!s})"


@functools.lru_cache(maxsize=None)
def extension(base: FieldCtx, degree: int) -> ExtensionCtx:
    return ExtensionCtx(base, degree)


def frobenius(ext: ExtensionCtx, x: FieldElem | int, i: int = 1):
    if isinstance(x, FieldElem):
        return FieldElem(ext.top, ext.frobenius(x.value, i))
    return ext.frobenius(x, i)


def trace_to_subfield(ext: ExtensionCtx, x: FieldElem | int, d: int):
    if isinstance(x, FieldElem):
        return FieldElem(ext.top, ext.trace(x.value, d))
    return ext.trace(x, d)


def root_of_unity(ext: ExtensionCtx, m: int) -> FieldElem:
    return FieldElem(ext.top, ext.root_of_unity(m))


def normal_element(ext: ExtensionCtx, n: int) -> FieldElem:
    return FieldElem(ext.top, ext.normal_element(n))
