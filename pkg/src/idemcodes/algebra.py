"""Group algebras FG (finite-field coefficients) and QG (exact rationals).

Both element types are dense coefficient vectors indexed by the group's
canonical ordering.  FG coefficients are field ints stored in a read-only
numpy array; products go through the field's add/mul tables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import CharacteristicDividesOrder, ContextMismatch
from .fields import FieldCtx
from .groups import Group, Subgroup


class AlgElem:
    __slots__ = ("group", "field", "coeffs")

    def __init__(self, group: Group, field: FieldCtx, coeffs) -> None:
        c = np.asarray(coeffs, dtype=np.int64)
        if c.shape != (group.n,):
            raise ValueError(f"expected {group.n} coefficients, got {c.shape}")
        if c.size and (c.min() < 0 or c.max() >= field.s):
            raise ValueError("coefficient outside the field")
        c = c.copy()
        c.setflags(write=False)
        self.group = group
        self.field = field
        self.coeffs = c

    # constructors -------------------------------------------------------------

    @classmethod
    def zero(cls, G: Group, F: FieldCtx) -> AlgElem:
        return cls(G, F, np.zeros(G.n, dtype=np.int64))

    @classmethod
    def one(cls, G: Group, F: FieldCtx) -> AlgElem:
        return cls.basis(G, F, 0)

    @classmethod
    def basis(cls, G: Group, F: FieldCtx, g: int, coeff: int = 1) -> AlgElem:
        c = np.zeros(G.n, dtype=np.int64)
        c[g] = coeff
        return cls(G, F, c)

    @classmethod
    def from_terms(cls, G: Group, F: FieldCtx, terms: Iterable[tuple[int, int]]) -> AlgElem:
        """Sum of coeff*g over (g, coeff) pairs."""
        c = np.zeros(G.n, dtype=np.int64)
        for g, a in terms:
            c[g] = F.add(int(c[g]), a)
        return cls(G, F, c)

    # arithmetic -----------------------------------------------------------------

    def _check(self, other: AlgElem) -> None:
        if not isinstance(other, AlgElem) or other.group is not self.group or other.field != self.field:
            raise ContextMismatch("group algebra elements over different groups or fields")

    def __add__(self, other: AlgElem) -> AlgElem:
        self._check(other)
        return AlgElem(self.group, self.field, self.field.add_table[self.coeffs, other.coeffs])

    def __neg__(self) -> AlgElem:
        return AlgElem(self.group, self.field, self.field.neg_table[self.coeffs])

    def __sub__(self, other: AlgElem) -> AlgElem:
        return self + (-other)

    def scale(self, a: int) -> AlgElem:
        return AlgElem(self.group, self.field, self.field.mul_table[a, self.coeffs])

    def __mul__(self, other: AlgElem | int) -> AlgElem:
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        self._check(other)
        F = self.field
        add, mul = F.add_table, F.mul_table
        t = self.group.table
        out = np.zeros(self.group.n, dtype=np.int64)
        b = other.coeffs
        if not b.any():
            return AlgElem(self.group, F, out)
        if F.k == 1:
            p = F.p
            for x in np.nonzero(self.coeffs)[0]:
                out[t[x]] += int(self.coeffs[x]) * b
            return AlgElem(self.group, F, out % p)
        for x in np.nonzero(self.coeffs)[0]:
            perm = t[x]
            out[perm] = add[out[perm], mul[self.coeffs[x], b]]
        return AlgElem(self.group, F, out)

    def __rmul__(self, other: int) -> AlgElem:
        return self.scale(int(other))

    def __pow__(self, e: int) -> AlgElem:
        out = AlgElem.one(self.group, self.field)
        for _ in range(e):
            out = out * self
        return out

    def left_mul_basis(self, g: int) -> AlgElem:
        """g * self."""
        out = np.empty_like(self.coeffs)
        out[self.group.table[g]] = self.coeffs
        return AlgElem(self.group, self.field, out)

    def right_mul_basis(self, g: int) -> AlgElem:
        """self * g."""
        out = np.empty_like(self.coeffs)
        out[self.group.table[:, g]] = self.coeffs
        return AlgElem(self.group, self.field, out)

    def conjugate(self, g: int) -> AlgElem:
        """g^-1 * self * g."""
        out = np.empty_like(self.coeffs)
        out[self.group.conj[g]] = self.coeffs
        return AlgElem(self.group, self.field, out)

    # predicates ----------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AlgElem)
            and other.group is self.group
            and other.field == self.field
            and bool(np.array_equal(other.coeffs, self.coeffs))
        )

    def __hash__(self) -> int:
        return hash(self.coeffs.tobytes())

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def support(self) -> list[int]:
        return [int(x) for x in np.nonzero(self.coeffs)[0]]

    def key(self) -> bytes:
        return self.coeffs.tobytes()

    def format(self) -> str:
        """``coeff*label`` terms joined by ``+`` in canonical order."""
        F, G = self.field, self.group
        terms = []
        for x in self.support():
            c = F.format(int(self.coeffs[x]))
            if F.k > 1 and not c.isdigit():
                c = f"({c})"
            terms.append(f"{c}*{G.label(x)}")
        return "+".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"AlgElem({self.format()})"


class RatAlgElem:
    """Element of QG with Fraction coefficients (always in lowest terms)."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: Group, coeffs: Sequence[Fraction | int]) -> None:
        if len(coeffs) != group.n:
            raise ValueError(f"expected {group.n} coefficients")
        self.group = group
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @classmethod
    def zero(cls, G: Group) -> RatAlgElem:
        return cls(G, [0] * G.n)

    @classmethod
    def one(cls, G: Group) -> RatAlgElem:
        return cls(G, [1] + [0] * (G.n - 1))

    def _check(self, other: RatAlgElem) -> None:
        if not isinstance(other, RatAlgElem) or other.group is not self.group:
            raise ContextMismatch("rational group algebra elements over different groups")

    def __add__(self, other: RatAlgElem) -> RatAlgElem:
        self._check(other)
        return RatAlgElem(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: RatAlgElem) -> RatAlgElem:
        self._check(other)
        return RatAlgElem(self.group, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> RatAlgElem:
        return RatAlgElem(self.group, [-a for a in self.coeffs])

    def scale(self, a: Fraction | int) -> RatAlgElem:
        return RatAlgElem(self.group, [a * c for c in self.coeffs])

    def __mul__(self, other: RatAlgElem | Fraction | int) -> RatAlgElem:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        t = self.group.table
        out = [Fraction(0)] * self.group.n
        right = [(y, b) for y, b in enumerate(other.coeffs) if b]
        for x, a in enumerate(self.coeffs):
            if not a:
                continue
            row = t[x]
            for y, b in right:
                z = int(row[y])
                out[z] += a * b
        return RatAlgElem(self.group, out)

    def conjugate(self, g: int) -> RatAlgElem:
        out = [Fraction(0)] * self.group.n
        row = self.group.conj[g]
        for x, a in enumerate(self.coeffs):
            out[int(row[x])] = a
        return RatAlgElem(self.group, out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RatAlgElem) and other.group is self.group and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def support(self) -> list[int]:
        return [x for x, a in enumerate(self.coeffs) if a]

    def reduce(self, F: FieldCtx) -> AlgElem:
        """Image in FG; denominators must be units mod p."""
        p = F.p
        out = []
        for c in self.coeffs:
            if c.denominator % p == 0:
                raise CharacteristicDividesOrder(f"denominator {c.denominator} vanishes mod {p}")
            out.append(F.from_int(c.numerator * pow(c.denominator, -1, p)))
        return AlgElem(self.group, F, out)

    def format(self) -> str:
        terms = [f"{a}*{self.group.label(x)}" for x, a in enumerate(self.coeffs) if a]
        return "+".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"RatAlgElem({self.format()})"


AnyElem = AlgElem | RatAlgElem


# -- operations ---------------------------------------------------------------------


def alg_arith(a: AnyElem, b, op: str) -> AnyElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scalar_mul":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def tilde(H: Subgroup | Iterable[int], domain: FieldCtx | None = None, group: Group | None = None) -> AnyElem:
    """|H|^-1 * sum of the elements of H (over Q when ``domain`` is None).

    ``H`` may also be a plain collection of distinct elements (a transversal,
    say), in which case ``group`` must be given.
    """
    if isinstance(H, Subgroup):
        G, elems = H.parent, H.elems
    else:
        if group is None:
            raise ValueError("group is required for a bare element set")
        G, elems = group, tuple(H)
    n = len(elems)
    if domain is None:
        c = [Fraction(0)] * G.n
        for h in elems:
            c[h] = Fraction(1, n)
        return RatAlgElem(G, c)
    if n % domain.p == 0:
        raise CharacteristicDividesOrder(f"{n} is divisible by the characteristic {domain.p}")
    inv_n = domain.from_int(pow(n, -1, domain.p))
    c = np.zeros(G.n, dtype=np.int64)
    c[list(elems)] = inv_n
    return AlgElem(G, domain, c)


def conjugate(c: AnyElem, g: int) -> AnyElem:
    return c.conjugate(g)


def is_idempotent(c: AnyElem) -> bool:
    return c * c == c


def are_orthogonal(c: AnyElem, d: AnyElem) -> bool:
    return (c * d).is_zero() and (d * c).is_zero()


def is_central(c: AnyElem) -> bool:
    return all(c.conjugate(g) == c for g in c.group.gens)


def left_ideal_matrix(e: AlgElem) -> np.ndarray:
    """Row g is the coefficient vector of g*e."""
    G = e.group
    M = np.empty((G.n, G.n), dtype=np.int64)
    for g in range(G.n):
        M[g, G.table[g]] = e.coeffs
    return M


def right_mult_matrix(e: AlgElem) -> np.ndarray:
    """Matrix of x -> x*e, built through the general convolution product.

    Deliberately avoids the permutation shortcut of ``left_ideal_matrix`` so
    the two can check each other.
    """
    G, F = e.group, e.field
    return np.array([(AlgElem.basis(G, F, x) * e).coeffs for x in range(G.n)], dtype=np.int64)


def two_sided_span_matrix(e: AlgElem) -> np.ndarray:
    """Rows g*e*h for all g, h; spans the two-sided ideal generated by e."""
    G = e.group
    rows = []
    for h in range(G.n):
        eh = e.right_mul_basis(h)
        M = left_ideal_matrix(eh)
        rows.append(M)
    return np.vstack(rows)
