"""Strong Shoda pairs, cyclotomic classes and primitive central idempotents of FG.

For a pair (H, K) with H/K cyclic of order m, a faithful s-cyclotomic class C
mod m picks the character chi of H/K sending the fixed generator y*K to
xi_m^j (j = smallest residue of C).  eps_C(H, K) is then

    |H|^-1 * sum_{h in H} tr(chi(hK)) * h^-1,

with tr the trace F(xi_m) -> F, and e_C(G, H, K) is the sum of its distinct
G-conjugates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import AlgElem, RatAlgElem, is_central, is_idempotent, tilde
from .errors import (
    CharacteristicDividesOrder,
    NotCoprime,
    NotFaithfulClass,
    NotNormal,
    QuotientNotCyclic,
)
from .fields import ExtensionCtx, FieldCtx, extension, factorize, multiplicative_order_mod
from .groups import (
    DEFAULT_BOUND,
    Group,
    Subgroup,
    commutator_subgroup,
    is_normal,
    normalizer,
    order_mod,
    quotient,
    subgroups,
    transversal,
)


# -- cyclotomic classes --------------------------------------------------------------


@dataclass(frozen=True)
class CyclotomicClass:
    modulus: int
    residues: tuple[int, ...]

    @property
    def faithful(self) -> bool:
        return math.gcd(self.residues[0], self.modulus) == 1

    @property
    def representative(self) -> int:
        return self.residues[0]

    def __contains__(self, j: int) -> bool:
        return j % self.modulus in self.residues

    def __len__(self) -> int:
        return len(self.residues)

    def scaled(self, i: int) -> CyclotomicClass:
        return CyclotomicClass(self.modulus, tuple(sorted({i * j % self.modulus for j in self.residues})))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.residues)) + "}"


def cyclotomic_classes(s: int, m: int) -> list[CyclotomicClass]:
    """Orbits of Z_m under j -> s*j, sorted by smallest member."""
    if math.gcd(s, m) != 1:
        raise NotCoprime(f"gcd({s}, {m}) != 1")
    seen: set[int] = set()
    out = []
    for j in range(m):
        if j in seen:
            continue
        orbit = []
        x = j
        while x not in orbit:
            orbit.append(x)
            x = x * s % m
        seen.update(orbit)
        out.append(CyclotomicClass(m, tuple(sorted(orbit))))
    return out


def faithful_classes(s: int, m: int) -> list[CyclotomicClass]:
    return [C for C in cyclotomic_classes(s, m) if C.faithful]


# -- the quotient H/K ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CyclicSection:
    """H/K cyclic: fixed generator y and the discrete log of every h in H."""

    H: Subgroup
    K: Subgroup
    m: int
    gen: int
    dlog: dict

    def power(self, e: int) -> int:
        return self.H.parent.power(self.gen, e)


def cyclic_section(H: Subgroup, K: Subgroup) -> CyclicSection:
    G = H.parent
    key = ("cyclic_section", H.elems, K.elems)
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    if not K <= H or not is_normal(G, K, within=H):
        raise NotNormal("K is not normal in H")
    m = len(H) // len(K)
    gen = next((h for h in H.elems if order_mod(G, h, K) == m), None)
    if gen is None:
        raise QuotientNotCyclic(f"H/K of order {m} is not cyclic")
    dlog: dict[int, int] = {}
    y = 0
    for e in range(m):
        for k in K.elems:
            dlog[G.mul(y, k)] = e
        y = G.mul(y, gen)
    out = CyclicSection(H, K, m, gen, dlog)
    G._cache[key] = out
    return out



def eps_rational(H: Subgroup, K: Subgroup) -> RatAlgElem:
    """epsilon(H, K) in QH: K~ if H = K, else prod over minimal M/K of (K~ - M~)."""
    G = H.parent
    Kt = tilde(K)
    if H == K:
        return Kt  # type: ignore[return-value]
    sec = cyclic_section(H, K)
    out = None
    for p in sorted(factorize(sec.m)):
        y = G.power(sec.gen, sec.m // p)
        M = G.subgroup(G.closure(K.elems + (y,)))
        factor = Kt - tilde(M)  # type: ignore[operator]
        out = factor if out is None else out * factor
    assert out is not None
    return out


# -- epsilon_C and e_C over a finite field --------------------------------------------------


def _check_char(G: Group, F: FieldCtx) -> None:
    if G.n % F.p == 0:
        raise CharacteristicDividesOrder(f"characteristic {F.p} divides |G| = {G.n}")


def character_values(sec: CyclicSection, C: CyclotomicClass, F: FieldCtx) -> tuple[ExtensionCtx, int, list[int]]:
    """(ext, zeta, [zeta^e for e < m]) where zeta = chi(yK) = xi_m^j lives in F(xi_m)."""
    m = sec.m
    o = multiplicative_order_mod(F.s, m)
    ext = extension(F, o)
    xi = ext.root_of_unity(m)
    zeta = ext.top.pow(xi, C.representative)
    return ext, zeta, [ext.top.pow(zeta, e) for e in range(m)]


def eps_C(H: Subgroup, K: Subgroup, C: CyclotomicClass, F: FieldCtx, j: int | None = None) -> AlgElem:
    """epsilon_C(H, K) in FH.  ``j`` overrides the residue of C used for chi."""
    G = H.parent
    _check_char(G, F)
    sec = cyclic_section(H, K)
    if C.modulus != sec.m:
        raise ValueError(f"class modulus {C.modulus} != [H:K] = {sec.m}")
    if not C.faithful:
        raise NotFaithfulClass(f"class {C} is not faithful")
    if j is not None and j not in C:
        raise ValueError(f"{j} is not in {C}")
    m = sec.m
    o = multiplicative_order_mod(F.s, m)
    ext = extension(F, o)
    zeta = ext.top.pow(ext.root_of_unity(m), C.representative if j is None else j)
    traces = [ext.base_trace(ext.top.pow(zeta, e)) for e in range(m)]
    inv_h = F.from_int(pow(len(H), -1, F.p))
    c = np.zeros(G.n, dtype=np.int64)
    for h in H.elems:
        c[G.inverse(h)] = F.mul(inv_h, traces[sec.dlog[h]])
    return AlgElem(G, F, c)


def distinct_conjugates(c: AlgElem | RatAlgElem) -> list:
    G = c.group
    seen: dict = {}
    for g in range(G.n):
        d = c.conjugate(g)
        k = d.key() if isinstance(d, AlgElem) else d.coeffs
        if k not in seen:
            seen[k] = d
    return list(seen.values())


def element_centralizer(c: AlgElem | RatAlgElem) -> Subgroup:
    """Cen_G(c) = {g : c^g = c}."""
    G = c.group
    return G.subgroup(g for g in range(G.n) if c.conjugate(g) == c)


def e_C(G: Group, H: Subgroup, K: Subgroup, C: CyclotomicClass, F: FieldCtx) -> AlgElem:
    eps = eps_C(H, K, C, F)
    out = AlgElem.zero(G, F)
    for d in distinct_conjugates(eps):
        out = out + d
    return out


def e_rational(G: Group, H: Subgroup, K: Subgroup) -> RatAlgElem:
    """e(G, H, K): sum of the distinct G-conjugates of epsilon(H, K)."""
    eps = eps_rational(H, K)
    out = RatAlgElem.zero(G)
    for d in distinct_conjugates(eps):
        out = out + d
    return out


# -- stabiliser and twisting ----------------------------------------------------------------


def conjugation_exponent(sec: CyclicSection, g: int) -> int:
    """i with g y g^-1 = y^i mod K."""
    G = sec.H.parent
    return sec.dlog[G.mul(G.mul(g, sec.gen), G.inverse(g))]


def stabilizer_E(G: Group, H: Subgroup, K: Subgroup, s: int) -> Subgroup:
    """E_G(H/K): elements of N_G(H) & N_G(K) fixing a faithful s-cyclotomic class.

    Computed for every faithful class; a disagreement raises.
    """
    sec = cyclic_section(H, K)
    NH = normalizer(G, H)
    NHK = normalizer(G, K, within=NH)
    classes = faithful_classes(s, sec.m)
    result = None
    for C in classes:
        E = G.subgroup(g for g in NHK.elems if C.scaled(conjugation_exponent(sec, g)) == C)
        if result is None:
            result = E
        elif E != result:
            raise AssertionError("stabiliser depends on the cyclotomic class")
    assert result is not None
    return result


@dataclass(frozen=True)
class Twisting:
    trivial: bool
    n: int
    section_gen: int | None = None
    T1: tuple[int, ...] = ()
    cocycle: dict | None = None


def twisting(G: Group, H: Subgroup, K: Subgroup, E: Subgroup) -> Twisting:
    """Look for a complement of H/K in E/K; its elements give a homomorphic section.

    E/H is cyclic, so a complement is generated by some q with qH of order
    [E:H] and q^[E:H] in K.  The smallest such q is used and T_1 = {q^i}.
    Otherwise the cocycle of the smallest-representative section is returned
    (values are discrete logs in H/K).
    """
    n = len(E) // len(H)
    if n == 1:
        return Twisting(True, 1, 0, (0,))
    for q in E.elems:
        if order_mod(G, q, H) == n and G.power(q, n) in K:
            T1 = tuple(G.power(q, i) for i in range(n))
            return Twisting(True, n, q, T1)
    sec = cyclic_section(H, K)
    reps = transversal(G, H, side="left")
    reps = [r for r in reps if r in E]
    coset = {}
    for r in reps:
        for h in H.elems:
            coset[G.mul(r, h)] = r
    table = {}
    for a in reps:
        for b in reps:
            phi_ab = coset[G.mul(a, b)]
            z = G.mul(G.inverse(phi_ab), G.mul(a, b))
            table[(a, b)] = sec.dlog[z]
    return Twisting(False, n, None, tuple(reps), table)


# -- strong Shoda pairs ----------------------------------------------------------------------


def _centralizes_quotient(G: Group, sec: CyclicSection, N: Subgroup) -> list[int]:
    """Elements of N centralising H/K."""
    y = sec.gen
    K = sec.K
    out = []
    for g in N.elems:
        z = G.mul(G.inverse(y), G.conjugate(y, g))
        if z in K:
            out.append(g)
    return out


def satisfies_ss1_ss2(G: Group, H: Subgroup, K: Subgroup, N: Subgroup | None = None) -> bool:
    if not K <= H:
        return False
    N = normalizer(G, K) if N is None else N
    if not H <= N or not is_normal(G, H, within=N):
        return False
    try:
        sec = cyclic_section(H, K)
    except QuotientNotCyclic:
        return False
    # for abelian H/K, maximal abelian in N/K <=> self-centralising in N/K
    return set(_centralizes_quotient(G, sec, N)) == H.set


def maximal_abelian_literal(G: Group, H: Subgroup, K: Subgroup, N: Subgroup) -> bool:
    """SS2 by enumerating the subgroups of N/K (test oracle for the centraliser shortcut)."""
    qm = quotient(N, K)
    Q = qm.quotient
    image = frozenset(qm.proj[h] for h in H.elems)
    img_sub = Q.subgroup(image)
    if not _abelian(Q, img_sub):
        return False
    for S in subgroups(Q):
        if img_sub < S and _abelian(Q, S):
            return False
    return True


def _abelian(Q: Group, S: Subgroup) -> bool:
    t = Q.table
    return all(t[x, y] == t[y, x] for x in S.elems for y in S.elems)


def satisfies_ss3(G: Group, H: Subgroup, K: Subgroup, N: Subgroup | None = None) -> bool:
    N = normalizer(G, K) if N is None else N
    if len(N) == G.n:
        return True
    eps = eps_rational(H, K)
    for g in transversal(G, N, side="right"):
        if g in N:
            continue
        if not (eps * eps.conjugate(g)).is_zero():
            return False
    return True


def is_strong_shoda_pair(G: Group, H: Subgroup, K: Subgroup) -> bool:
    N = normalizer(G, K)
    return satisfies_ss1_ss2(G, H, K, N) and satisfies_ss3(G, H, K, N)


@dataclass(eq=False)
class StrongShodaPair:
    G: Group
    H: Subgroup
    K: Subgroup
    N: Subgroup
    section: CyclicSection
    s: int | None = None
    E: Subgroup | None = None
    o: int | None = None
    twist: Twisting | None = None
    _field: FieldCtx | None = field(default=None, repr=False)

    @property
    def m(self) -> int:
        return self.section.m

    @property
    def hk_gen(self) -> int:
        return self.section.gen

    @property
    def index(self) -> int:
        """[G:H]."""
        return self.G.n // len(self.H)

    @property
    def twisting_trivial(self) -> bool | None:
        return None if self.twist is None else self.twist.trivial

    def sort_key(self) -> tuple:
        return (-len(self.H), len(self.K), self.H.elems, self.K.elems)

    def classes(self) -> list[CyclotomicClass]:
        if self.s is None:
            raise ValueError("pair was built without a field")
        return faithful_classes(self.s, self.m)

    def describe(self) -> str:
        E = "-" if self.E is None else ",".join(map(str, self.E.elems))
        tw = "-" if self.twist is None else ("trivial" if self.twist.trivial else "nontrivial")
        return (
            f"H={','.join(map(str, self.H.elems))} K={','.join(map(str, self.K.elems))} "
            f"[H:K]={self.m} o={self.o if self.o is not None else '-'} E={E} twisting={tw}"
        )

    def to_json(self) -> dict:
        return {
            "H": list(self.H.elems),
            "K": list(self.K.elems),
            "H_labels": self.H.labels(),
            "K_labels": self.K.labels(),
            "index_HK": self.m,
            "o": self.o,
            "E": list(self.E.elems) if self.E is not None else None,
            "twisting": None if self.twist is None else ("trivial" if self.twist.trivial else "nontrivial"),
        }


def make_pair(G: Group, H: Subgroup, K: Subgroup, F: FieldCtx | None = None, check: bool = False) -> StrongShodaPair:
    """Attach the cached data (N, E, o, twisting) to a pair of subgroups."""
    if check and not is_strong_shoda_pair(G, H, K):
        from .errors import NotStrongShodaPair

        raise NotStrongShodaPair("(H, K) is not a strong Shoda pair")
    N = normalizer(G, K)
    sec = cyclic_section(H, K)
    pair = StrongShodaPair(G, H, K, N, sec)
    if F is not None:
        _check_char(G, F)
        pair.s = F.s
        pair._field = F
        pair.o = multiplicative_order_mod(F.s, sec.m)
        pair.E = stabilizer_E(G, H, K, F.s)
        pair.twist = twisting(G, H, K, pair.E)
    return pair


def _pair_key(G: Group, H: Subgroup, K: Subgroup, F: FieldCtx | None) -> frozenset:
    if F is None:
        return frozenset([e_rational(G, H, K).coeffs])
    sec = cyclic_section(H, K)
    return frozenset(e_C(G, H, K, C, F).key() for C in faithful_classes(F.s, sec.m))


def _candidates_general(G: Group, bound: int) -> list[tuple[Subgroup, Subgroup]]:
    subs = subgroups(G, bound)
    out = []
    for K in subs:
        N = normalizer(G, K)
        for H in subs:
            if len(H) % len(K) or not K <= H or not H <= N:
                continue
            if satisfies_ss1_ss2(G, H, K, N) and satisfies_ss3(G, H, K, N):
                out.append((H, K))
    return out


def is_metabelian(G: Group) -> bool:
    D = commutator_subgroup(G)
    return _abelian(G, D)


def maximal_abelian_containing(G: Group, A0: Subgroup, bound: int = DEFAULT_BOUND) -> Subgroup:
    """A maximal abelian subgroup containing A0; largest order first, then element set."""
    cands = [S for S in subgroups(G, bound) if A0 <= S and _abelian(G, S)]
    maximal = [S for S in cands if not any(S < T for T in cands)]
    return min(maximal, key=lambda S: (-len(S), S.elems))


def _candidates_metabelian(G: Group, bound: int) -> list[tuple[Subgroup, Subgroup]]:
    if not is_metabelian(G):
        raise ValueError("group is not metabelian")
    subs = subgroups(G, bound)
    A = maximal_abelian_containing(G, commutator_subgroup(G), bound)
    derived = {S.elems: commutator_subgroup(G, S) for S in subs if A <= S}
    over_A = [S for S in subs if A <= S]
    out = []
    for K in subs:
        family = [B for B in over_A if K <= B and derived[B.elems] <= K]
        for H in family:
            if any(H < B for B in family):
                continue
            try:
                cyclic_section(H, K)
            except QuotientNotCyclic:
                continue
            out.append((H, K))
    return out


def strong_shoda_pairs(
    G: Group,
    field: FieldCtx | None = None,
    method: str = "general",
    bound: int = DEFAULT_BOUND,
) -> list[StrongShodaPair]:
    """Complete, non-redundant list of strong Shoda pairs.

    ``method`` is ``general`` (SS1-SS3 over all subgroup pairs) or
    ``metabelian`` (maximal-element characterisation relative to a maximal
    abelian A containing G').  Pairs producing the same set of central
    idempotents over ``field`` (over Q when no field is given) are merged,
    keeping the first in (|H| desc, |K| asc, element sets) order.
    """
    if method == "general":
        cands = _candidates_general(G, bound)
    elif method == "metabelian":
        cands = _candidates_metabelian(G, bound)
    elif method == "auto":
        cands = _candidates_metabelian(G, bound) if is_metabelian(G) else _candidates_general(G, bound)
    else:
        raise ValueError(f"unknown method {method!r}")
    if field is not None:
        _check_char(G, field)
    cands.sort(key=lambda hk: (-len(hk[0]), len(hk[1]), hk[0].elems, hk[1].elems))
    seen: set = set()
    out = []
    for H, K in cands:
        key = _pair_key(G, H, K, field)
        if key & seen:
            if not key <= seen:
                raise AssertionError("strong Shoda pairs with partially overlapping components")
            continue
        seen |= key
        out.append(make_pair(G, H, K, field))
    return out


# -- Wedderburn components ----------------------------------------------------------------


@dataclass(eq=False)
class ComponentInfo:
    pair: StrongShodaPair
    cls: CyclotomicClass
    e: AlgElem

    @property
    def matrix_size(self) -> int:
        return self.pair.index

    @property
    def center_degree(self) -> int:
        """o/[E:H]: degree of the centre over F."""
        assert self.pair.o is not None and self.pair.E is not None
        return self.pair.o // (len(self.pair.E) // len(self.pair.H))

    @property
    def field_order(self) -> int:
        assert self.pair.s is not None
        return self.pair.s**self.center_degree

    @property
    def component_dim(self) -> int:
        return self.matrix_size**2 * self.center_degree

    @property
    def left_ideal_dim(self) -> int:
        """F-dimension of a minimal left ideal: [G:H] * o/[E:H]."""
        return self.matrix_size * self.center_degree

    def describe(self) -> str:
        return f"M_{self.matrix_size}(GF({self.field_order})) dim={self.component_dim} class={self.cls}"


@dataclass
class WedderburnReport:
    components: list[ComponentInfo]
    sum_is_one: bool
    orthogonal: bool
    all_central_idempotents: bool

    @property
    def complete(self) -> bool:
        return self.sum_is_one and self.orthogonal and self.all_central_idempotents

    @property
    def total_dim(self) -> int:
        return sum(c.component_dim for c in self.components)


def components(G: Group, F: FieldCtx, pairs: Sequence[StrongShodaPair] | None = None) -> list[ComponentInfo]:
    pairs = strong_shoda_pairs(G, F) if pairs is None else pairs
    out = []
    for pair in pairs:
        seen: set[bytes] = set()
        for C in pair.classes():
            e = e_C(G, pair.H, pair.K, C, F)
            if e.key() in seen:
                continue
            seen.add(e.key())
            out.append(ComponentInfo(pair, C, e))
    return out


def wedderburn_report(G: Group, F: FieldCtx, pairs: Sequence[StrongShodaPair] | None = None) -> WedderburnReport:
    _check_char(G, F)
    comps = components(G, F, pairs)
    total = AlgElem.zero(G, F)
    for c in comps:
        total = total + c.e
    orth = all(
        (comps[i].e * comps[j].e).is_zero() for i in range(len(comps)) for j in range(len(comps)) if i != j
    )
    ok = all(is_idempotent(c.e) and is_central(c.e) for c in comps)
    return WedderburnReport(comps, total == AlgElem.one(G, F), orth, ok)
