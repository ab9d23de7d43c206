"""Finite groups as Cayley tables, with the subgroup calculus used downstream.

Element indices are the canonical ordering: index 0 is the identity and the
order never changes after construction, because it is also the coordinate
order of every code the package emits.
"""

from __future__ import annotations

import functools
import math
import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import BadParameters, GroupTooLarge, NotCyclic, NotNilpotent, NotNormal
from .fields import factorize

DEFAULT_BOUND = 200


class Group:
    """A finite group given by its multiplication table.

    ``table[x, y]`` is the index of ``x*y``.  ``gen_names``/``words`` are only
    used for labels: ``words[i]`` is the exponent vector of element i in the
    named generators, or ``None`` for tables loaded without a presentation.
    """

    def __init__(
        self,
        table,
        gens: Sequence[int] = (),
        gen_names: Sequence[str] = (),
        words: Sequence[Sequence[int]] | None = None,
        name: str = "",
        labels: Sequence[str] | None = None,
    ) -> None:
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise BadParameters("Cayley table must be a non-empty square matrix")
        n = t.shape[0]
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise BadParameters("index 0 must be the identity")
        for row in t:
            if not np.array_equal(np.sort(row), ar):
                raise BadParameters("Cayley table rows must be permutations")
        t.setflags(write=False)
        self.table = t
        self.n = n
        inv = np.empty(n, dtype=np.int64)
        for x in range(n):
            inv[x] = int(np.nonzero(t[x] == 0)[0][0])
        inv.setflags(write=False)
        self.inv = inv
        self.gens = tuple(gens) if gens else self._default_gens()
        self.gen_names = tuple(gen_names)
        self.words = [tuple(w) for w in words] if words is not None else None
        self.name = name
        self._labels = tuple(labels) if labels is not None else None
        self._cache: dict = {}

    def _default_gens(self) -> tuple[int, ...]:
        gens: list[int] = []
        span = {0}
        for x in range(self.n):
            if x not in span:
                gens.append(x)
                span = set(self.closure(gens))
        return tuple(gens)

    # basic operations -------------------------------------------------------

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Group({self.name or '?'}, order={self.n})"

    @property
    def order(self) -> int:
        return self.n

    @property
    def ordering(self) -> tuple[int, ...]:
        return tuple(range(self.n))

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inverse(self, x: int) -> int:
        return int(self.inv[x])

    def power(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inverse(x), -e
        out = 0
        while e:
            if e & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            e >>= 1
        return out

    def conjugate(self, x: int, g: int) -> int:
        """x^g = g^-1 x g."""
        return int(self.conj[g, x])

    def commutator(self, x: int, y: int) -> int:
        """[x, y] = x^-1 y^-1 x y."""
        return self.mul(self.mul(self.inverse(x), self.inverse(y)), self.mul(x, y))

    @functools.cached_property
    def conj(self) -> np.ndarray:
        """conj[g, x] = g^-1 x g."""
        t = self.table
        out = np.empty((self.n, self.n), dtype=np.int64)
        for g in range(self.n):
            out[g] = t[self.inv[g], t[:, g]]
        out.setflags(write=False)
        return out

    @functools.cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for x in range(self.n):
            k, y = 1, x
            while y != 0:
                y = self.mul(y, x)
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, x: int) -> int:
        return self.element_orders[x]

    @functools.cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @functools.cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    def label(self, x: int) -> str:
        if self._labels is not None:
            return self._labels[x]
        if self.words is None or not self.gen_names:
            return f"g{x}"
        parts = []
        for name, e in zip(self.gen_names, self.words[x]):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    @property
    def labels(self) -> list[str]:
        return [self.label(x) for x in range(self.n)]

    def check_axioms(self) -> bool:
        """Exhaustive associativity check (cost n^3 via numpy)."""
        t = self.table
        left = t[t[:, :, None], np.arange(self.n)[None, None, :]]  # (xy)z
        right = t[np.arange(self.n)[:, None, None], t[None, :, :]]  # x(yz)
        return bool(np.array_equal(left, right))

    # subgroups ----------------------------------------------------------------

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        gens = [g for g in set(gens) if g != 0]
        elems = {0}
        frontier = [0]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        return frozenset(elems)

    def subgroup(self, elems: Iterable[int]) -> Subgroup:
        return Subgroup(self, tuple(sorted(set(elems))))

    def generated(self, *gens: int) -> Subgroup:
        return self.subgroup(self.closure(gens))

    @property
    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.n)))

    @property
    def trivial(self) -> Subgroup:
        return Subgroup(self, (0,))


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group
    elems: tuple[int, ...]
    _set: frozenset = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_set", frozenset(self.elems))

    @property
    def order(self) -> int:
        return len(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __iter__(self):
        return iter(self.elems)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subgroup) and other.parent is self.parent and other.elems == self.elems

    def __hash__(self) -> int:
        return hash(self.elems)

    def __le__(self, other: Subgroup) -> bool:
        return self._set <= other._set

    def __lt__(self, other: Subgroup) -> bool:
        return self._set < other._set

    @property
    def set(self) -> frozenset[int]:
        return self._set

    def sort_key(self) -> tuple:
        return (len(self.elems), self.elems)

    def is_closed(self) -> bool:
        G = self.parent
        if 0 not in self._set:
            return False
        for x in self.elems:
            if G.inverse(x) not in self._set:
                return False
            for y in self.elems:
                if G.mul(x, y) not in self._set:
                    return False
        return True

    def conjugate(self, g: int) -> Subgroup:
        """H^g = g^-1 H g."""
        row = self.parent.conj[g]
        return Subgroup(self.parent, tuple(sorted(int(row[x]) for x in self.elems)))

    def intersection(self, other: Subgroup) -> Subgroup:
        return Subgroup(self.parent, tuple(sorted(self._set & other._set)))

    def join(self, other: Subgroup | Iterable[int]) -> Subgroup:
        extra = other.elems if isinstance(other, Subgroup) else tuple(other)
        return self.parent.subgroup(self.parent.closure(self.elems + tuple(extra)))

    def labels(self) -> list[str]:
        return [self.parent.label(x) for x in self.elems]

    def __repr__(self) -> str:
        return f"Subgroup(order={len(self.elems)}, elems={list(self.elems)})"


# -- constructors -------------------------------------------------------------------


def _letters(skip: Iterable[str], count: int) -> list[str]:
    used = set(skip)
    out = [c for c in string.ascii_lowercase if c not in used]
    return out[:count]


def cyclic_group(n: int) -> Group:
    if n < 1:
        raise BadParameters("cyclic group order must be positive")
    ar = np.arange(n)
    table = (ar[:, None] + ar[None, :]) % n
    return Group(table, gens=(1,) if n > 1 else (), gen_names=("a",), words=[(i,) for i in range(n)], name=f"cyclic({n})")


def group_metacyclic(m: int, n: int, r: int) -> Group:
    """<a, b | a^m = 1 = b^n, b a = a^r b>, element a^i b^j at index j*m + i."""
    if m < 1 or n < 1:
        raise BadParameters("orders must be positive")
    if math.gcd(r, m) != 1:
        raise BadParameters(f"gcd({r}, {m}) != 1")
    if pow(r, n, m) != 1 % m:
        raise BadParameters(f"{r}^{n} is not 1 mod {m}")
    N = m * n
    rpow = [pow(r, j, m) for j in range(n)]
    table = np.empty((N, N), dtype=np.int64)
    for j1 in range(n):
        for i1 in range(m):
            x = j1 * m + i1
            for j2 in range(n):
                j = (j1 + j2) % n
                base = j * m
                shift = rpow[j1]
                for i2 in range(m):
                    table[x, j2 * m + i2] = base + (i1 + i2 * shift) % m
    words = [(i, j) for j in range(n) for i in range(m)]
    gens = tuple(g for g, keep in ((1, m > 1), (m, n > 1)) if keep)
    return Group(table, gens=gens, gen_names=("a", "b"), words=words, name=f"metacyclic({m},{n},{r})")


def group_dicyclic(n: int) -> Group:
    """Q_{4n} = <x, y | x^{2n} = y^4 = 1, x^n = y^2, x^y = x^-1>, x^i y^j at index j*2n + i (j < 2)."""
    if n < 1:
        raise BadParameters("n must be positive")
    m = 2 * n
    N = 2 * m

    def split(z: int) -> tuple[int, int]:
        return z % m, z // m

    table = np.empty((N, N), dtype=np.int64)
    for a in range(N):
        i1, j1 = split(a)
        for b in range(N):
            i2, j2 = split(b)
            # y x^i = x^-i y ; y^2 = x^n
            i = i1 + (i2 if j1 == 0 else -i2)
            j = j1 + j2
            if j == 2:
                i += n
                j = 0
            table[a, b] = j * m + i % m
    words = [(i, j) for j in range(2) for i in range(m)]
    return Group(table, gens=(1, m), gen_names=("x", "y"), words=words, name=f"dicyclic({n})")


def group_direct(A: Group, B: Group) -> Group:
    """A x B with element (a, b) at index a*|B| + b."""
    na, nb = A.n, B.n
    ta, tb = A.table, B.table
    table = (ta[:, None, :, None] * nb + tb[None, :, None, :]).reshape(na * nb, na * nb)
    gens = tuple(g * nb for g in A.gens) + tuple(g for g in B.gens)
    if A.words is not None and B.words is not None and A.gen_names and B.gen_names:
        names_b = _letters(A.gen_names, len(B.gen_names))
        if len(names_b) < len(B.gen_names):
            names_b = [f"{c}{len(A.gen_names)}" for c in B.gen_names]
        gen_names = tuple(A.gen_names) + tuple(names_b)
        words = [A.words[a] + B.words[b] for a in range(na) for b in range(nb)]
    else:
        gen_names, words = (), None
    return Group(table, gens=gens, gen_names=gen_names, words=words, name=f"direct({A.name},{B.name})")


def group_from_table(table, name: str = "cayley") -> Group:
    G = Group(table, name=name)
    if G.n <= DEFAULT_BOUND and not G.check_axioms():
        raise BadParameters("table is not associative")
    return G


def load_cayley(path: str | Path) -> Group:
    rows = [line.split() for line in Path(path).read_text().splitlines() if line.strip() and not line.lstrip().startswith("#")]
    try:
        table = [[int(x) for x in row] for row in rows]
    except ValueError as exc:
        raise BadParameters(f"non-integer entry in {path}") from exc
    if any(len(r) != len(table) for r in table):
        raise BadParameters("Cayley table must be square")
    return group_from_table(table, name=f"cayley({path})")


def dump_cayley(G: Group) -> str:
    return "\n".join(" ".join(str(int(v)) for v in row) for row in G.table) + "\n"


# -- subgroup lattice -------------------------------------------------------------


def _check_bound(G: Group, bound: int) -> None:
    if G.n > bound:
        raise GroupTooLarge(f"|G| = {G.n} exceeds the bound {bound}")


def cyclic_subgroups(G: Group) -> list[Subgroup]:
    seen: dict[frozenset, Subgroup] = {}
    for g in range(G.n):
        c = G.closure([g])
        if c not in seen:
            seen[c] = G.subgroup(c)
    return sorted(seen.values(), key=Subgroup.sort_key)


def subgroups(G: Group, bound: int = DEFAULT_BOUND) -> list[Subgroup]:
    """All subgroups by closure-BFS over joins with cyclic subgroups."""
    _check_bound(G, bound)
    cached = G._cache.get("subgroups")
    if cached is not None:
        return cached
    cyc = cyclic_subgroups(G)
    cyc_gens = []
    for C in cyc:
        gen = next(g for g in C.elems if G.element_order(g) == C.order)
        cyc_gens.append((gen, C.set))
    found: dict[frozenset, None] = {C.set: None for C in cyc}
    frontier = [C.set for C in cyc]
    while frontier:
        new = []
        for S in frontier:
            for gen, cs in cyc_gens:
                if cs <= S:
                    continue
                J = G.closure(tuple(S) + (gen,))
                if J not in found:
                    found[J] = None
                    new.append(J)
        frontier = new
    out = sorted((G.subgroup(S) for S in found), key=Subgroup.sort_key)
    G._cache["subgroups"] = out
    return out


def is_normal(G: Group, K: Subgroup, within: Subgroup | None = None) -> bool:
    """K normal in ``within`` (default: all of G)."""
    ambient = within.elems if within is not None else range(G.n)
    for g in ambient:
        row = G.conj[g]
        if any(int(row[x]) not in K for x in K.elems):
            return False
    return True


def normalizer(G: Group, K: Subgroup, within: Subgroup | None = None) -> Subgroup:
    ambient = within.elems if within is not None else range(G.n)
    out = []
    for g in ambient:
        row = G.conj[g]
        if all(int(row[x]) in K for x in K.elems):
            out.append(g)
    return G.subgroup(out)


def centralizer(G: Group, S: Subgroup | Iterable[int], within: Subgroup | None = None) -> Subgroup:
    elems = S.elems if isinstance(S, Subgroup) else tuple(S)
    ambient = within.elems if within is not None else range(G.n)
    t = G.table
    out = [g for g in ambient if all(t[g, x] == t[x, g] for x in elems)]
    return G.subgroup(out)


def center(G: Group) -> Subgroup:
    return centralizer(G, range(G.n))


def commutator_subgroup(G: Group, H: Subgroup | None = None) -> Subgroup:
    """Derived subgroup of H (default G)."""
    elems = H.elems if H is not None else tuple(range(G.n))
    comms = {G.commutator(x, y) for x in elems for y in elems}
    return G.subgroup(G.closure(comms))


def is_nilpotent(G: Group) -> bool:
    """Finite G is nilpotent iff every Sylow subgroup is normal (hence unique)."""
    for p, e in factorize(G.n).items():
        count = sum(1 for x in range(G.n) if _is_p_power(G.element_order(x), p))
        if count != p**e:
            return False
    return True


def _is_p_power(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def order_mod(G: Group, g: int, K: Subgroup) -> int:
    """Order of gK in N_G(K)/K."""
    k, y = 1, g
    while y not in K:
        y = G.mul(y, g)
        k += 1
    return k


# -- quotients and transversals ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuotientMap:
    source: Subgroup
    kernel: Subgroup
    quotient: Group
    proj: dict
    section: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.proj[x]


def quotient(N: Subgroup, K: Subgroup) -> QuotientMap:
    G = N.parent
    if not K <= N or not is_normal(G, K, within=N):
        raise NotNormal("kernel is not a normal subgroup of the source")
    reps: list[int] = []
    proj: dict[int, int] = {}
    for x in N.elems:
        if x in proj:
            continue
        idx = len(reps)
        reps.append(x)
        for k in K.elems:
            proj[G.mul(x, k)] = idx
    m = len(reps)
    table = np.empty((m, m), dtype=np.int64)
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            table[i, j] = proj[G.mul(x, y)]
    Q = Group(table, name=f"quotient({len(N)}/{len(K)})", labels=[G.label(r) for r in reps])
    return QuotientMap(N, K, Q, proj, tuple(reps))


def transversal(G: Group, H: Subgroup, side: str = "right") -> list[int]:
    """Smallest-index representative of each coset (Hg for right, gH for left)."""
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    seen: set[int] = set()
    reps = []
    for g in range(G.n):
        if g in seen:
            continue
        reps.append(g)
        if side == "right":
            seen.update(G.mul(h, g) for h in H.elems)
        else:
            seen.update(G.mul(g, h) for h in H.elems)
    return reps


def primary_decomposition(Q: Group, p: int = 2) -> tuple[Subgroup, Subgroup]:
    """(p-part, p'-part) of a nilpotent group as internal direct factors."""
    orders = Q.element_orders
    pp = [x for x in range(Q.n) if _is_p_power(orders[x], p)]
    pq = [x for x in range(Q.n) if orders[x] % p != 0]
    P, R = Q.subgroup(pp), Q.subgroup(pq)
    if len(P) * len(R) != Q.n or not P.is_closed() or not R.is_closed():
        raise NotNilpotent(f"group of order {Q.n} does not split into {p}- and {p}'-parts")
    return P, R


def is_cyclic(Q: Group) -> tuple[bool, int | None]:
    orders = Q.element_orders
    for x in range(Q.n):
        if orders[x] == Q.n:
            return True, x
    return False, None


def minimal_prime_subgroups(Q: Group) -> list[Subgroup]:
    ok, g = is_cyclic(Q)
    if not ok:
        raise NotCyclic("group is not cyclic")
    assert g is not None
    return [Q.generated(Q.power(g, Q.n // p)) for p in sorted(factorize(Q.n))] if Q.n > 1 else []
