"""Minimal left group codes: the left ideal F G e read as a subspace of F^|G|.

The coordinate of ``g`` is its index in the group's canonical ordering
(optionally permuted by an explicit ``ordering``).  Minimum distance and
weight distribution are exact, by enumerating all s^k codewords.
"""

from __future__ import annotations

import hashlib
import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import AlgElem, left_ideal_matrix
from .errors import BudgetExceeded, CoefficientsNotInBaseField, IdemcodesError
from .fields import FieldCtx
from .groups import Group, is_nilpotent
from .idempotents import (
    PrimSet,
    normal_element_variants,
    primitive_idempotents_nilpotent,
    primitive_idempotents_trivial_twisting,
)
from .linalg import rref
from .shoda import ComponentInfo, StrongShodaPair, components, strong_shoda_pairs

DEFAULT_BUDGET = 2**24
_CHUNK = 2**14


@dataclass(eq=False)
class LinearCode:
    field: FieldCtx
    length: int
    genmat: np.ndarray
    pivots: tuple[int, ...] = ()
    d: int | None = None
    d_is_bound: bool = False
    weights: list[int] | None = None
    provenance: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return int(self.genmat.shape[0])

    @property
    def n(self) -> int:
        return self.length

    @property
    def size(self) -> int:
        return self.field.s**self.k

    def params(self) -> tuple[int, int, int | None]:
        return (self.length, self.k, self.d)

    def __repr__(self) -> str:
        d = "?" if self.d is None else (f"<={self.d}" if self.d_is_bound else str(self.d))
        return f"[{self.length},{self.k},{d}] code over {self.field}"


def ordering_hash(ordering: Sequence[int]) -> str:
    return hashlib.sha256(",".join(map(str, ordering)).encode()).hexdigest()[:16]


def code_from_idempotent(
    G: Group,
    e: AlgElem,
    ordering: Sequence[int] | None = None,
    base: FieldCtx | None = None,
    provenance: dict | None = None,
) -> LinearCode:
    """Row-reduce the matrix whose g-th row is g*e.

    ``base``, when given, must be a subfield description of ``e.field`` with the
    same cardinality; any mismatch raises CoefficientsNotInBaseField.
    """
    if e.group is not G:
        raise ValueError("idempotent lives in a different group algebra")
    F = e.field
    if base is not None and base != F:
        raise CoefficientsNotInBaseField(f"coefficients lie in {F}, not in {base}")
    M = left_ideal_matrix(e)
    if ordering is not None:
        order = list(ordering)
        if sorted(order) != list(range(G.n)):
            raise ValueError("ordering must be a permutation of the group indices")
        M = M[:, order]
    else:
        order = list(range(G.n))
    R, pivots = rref(F, M)
    prov = {"ordering_hash": ordering_hash(order)}
    prov.update(provenance or {})
    return LinearCode(F, G.n, R, tuple(pivots), provenance=prov)


# -- enumeration kernels ------------------------------------------------------------------


def _gray_steps(s: int, k: int):
    """s-ary reflected Gray code: yields (position, old digit, new digit) per step."""
    digits = [0] * k
    direction = [1] * k
    for _ in range(s**k - 1):
        i = 0
        while True:
            nxt = digits[i] + direction[i]
            if 0 <= nxt < s:
                old = digits[i]
                digits[i] = nxt
                yield i, old, nxt
                break
            direction[i] = -direction[i]
            i += 1


def _split(F: FieldCtx, k: int) -> int:
    """Number of rows handled by the inner (vectorised) block."""
    inner = 0
    while inner < k and F.s ** (inner + 1) <= _CHUNK:
        inner += 1
    return inner


def _inner_block_exhaustive(F: FieldCtx, rows: np.ndarray) -> np.ndarray:
    """All F-combinations of ``rows``, each computed from its own message."""
    j = rows.shape[0]
    n = rows.shape[1]
    if j == 0:
        return np.zeros((1, n), dtype=np.int64)
    msgs = np.array(list(itertools.product(range(F.s), repeat=j)), dtype=np.int64)
    if F.k == 1:
        return msgs @ rows % F.p
    add, mul = F.add_table, F.mul_table
    out = np.zeros((msgs.shape[0], n), dtype=np.int64)
    for i in range(j):
        out = add[out, mul[msgs[:, i][:, None], rows[i][None, :]]]
    return out


def _inner_block_gray(F: FieldCtx, rows: np.ndarray) -> np.ndarray:
    """Same word set as the exhaustive block, built one row-multiple update at a time."""
    j, n = rows.shape
    out = np.zeros((F.s**j, n), dtype=np.int64)
    if j == 0:
        return out
    add, mul = F.add_table, F.mul_table
    cur = np.zeros(n, dtype=np.int64)
    for t, (i, old, new) in enumerate(_gray_steps(F.s, j), start=1):
        delta = F.sub(new, old)
        cur = add[cur, mul[delta, rows[i]]]
        out[t] = cur
    return out


def _outer_offsets(F: FieldCtx, rows: np.ndarray, method: str) -> list[np.ndarray]:
    j, n = rows.shape
    if j == 0:
        return [np.zeros(n, dtype=np.int64)]
    if method == "gray":
        return list(_inner_block_gray(F, rows))
    return list(_inner_block_exhaustive(F, rows))


def _weights_of_block(F: FieldCtx, block: np.ndarray, offset: np.ndarray) -> np.ndarray:
    if F.k == 1:
        words = (block + offset) % F.p
    else:
        words = F.add_table[block, offset]
    return np.count_nonzero(words, axis=1)


def _check_budget(c: LinearCode, budget: int) -> None:
    if c.size > budget:
        bound = _cheap_upper_bound(c)
        raise BudgetExceeded(
            f"{c.field.s}^{c.k} codewords exceed the enumeration budget {budget}; "
            f"best found upper bound d <= {bound}",
            bound,
        )


def _cheap_upper_bound(c: LinearCode) -> int:
    F = c.field
    R = c.genmat
    best = int(np.count_nonzero(R, axis=1).min()) if c.k else c.length
    for i in range(c.k):
        for j in range(i + 1, c.k):
            for a in range(1, F.s):
                w = F.add_table[R[i], F.mul_table[a, R[j]]]
                best = min(best, int(np.count_nonzero(w)))
    return best


def _enumerate(c: LinearCode, method: str, threads: int, budget: int) -> np.ndarray:
    """Weight histogram (length n+1) over all s^k codewords, zero word included."""
    if method not in ("gray", "exhaustive"):
        raise ValueError(f"unknown method {method!r}")
    _check_budget(c, budget)
    F, n = c.field, c.length
    if c.k == 0:
        hist = np.zeros(n + 1, dtype=np.int64)
        hist[0] = 1
        return hist
    inner = _split(F, c.k)
    outer_rows = c.genmat[: c.k - inner]
    inner_rows = c.genmat[c.k - inner :]
    block = _inner_block_gray(F, inner_rows) if method == "gray" else _inner_block_exhaustive(F, inner_rows)
    offsets = _outer_offsets(F, outer_rows, method)

    def work(part: list[np.ndarray]) -> np.ndarray:
        hist = np.zeros(n + 1, dtype=np.int64)
        for off in part:
            hist += np.bincount(_weights_of_block(F, block, off), minlength=n + 1)
        return hist

    threads = max(1, int(threads))
    if threads == 1 or len(offsets) == 1:
        return work(offsets)
    parts = [offsets[i::threads] for i in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(work, parts), np.zeros(n + 1, dtype=np.int64))


def minimum_distance(
    c: LinearCode, method: str = "gray", budget: int = DEFAULT_BUDGET, threads: int = 1
) -> int:
    """Exact minimum weight of a nonzero codeword (stored on ``c``)."""
    if c.k == 0:
        raise ValueError("the zero code has no minimum distance")
    hist = _enumerate(c, method, threads, budget)
    d = int(np.nonzero(hist[1:])[0][0]) + 1
    c.d, c.d_is_bound = d, False
    return d


def weight_distribution(
    c: LinearCode, method: str = "gray", budget: int = DEFAULT_BUDGET, threads: int = 1
) -> list[int]:
    hist = _enumerate(c, method, threads, budget)
    c.weights = [int(x) for x in hist]
    if c.k:
        c.d = int(np.nonzero(hist[1:])[0][0]) + 1
        c.d_is_bound = False
    return c.weights


def analyse(c: LinearCode, method: str = "gray", budget: int = DEFAULT_BUDGET, threads: int = 1) -> LinearCode:
    """Fill in d and the weight distribution, or an upper bound when over budget."""
    try:
        weight_distribution(c, method, budget, threads)
    except BudgetExceeded as exc:
        c.d, c.d_is_bound = exc.upper_bound, True
    return c


# -- export ---------------------------------------------------------------------------------


def export_generator_matrix(c: LinearCode) -> str:
    """Header ``n k s`` then one line per row.

    Each entry is written as its base-p digit group (constant term first), so
    prime fields give plain space-separated digits.
    """
    F = c.field
    lines = [f"{c.length} {c.k} {F.s}"]
    digits = F.digit_table
    for row in c.genmat:
        if F.k == 1:
            lines.append(" ".join(str(int(x)) for x in row))
        else:
            lines.append(" ".join("".join(str(int(t)) for t in digits[int(x)]) for x in row))
    return "\n".join(lines) + "\n"


def expand_to_prime_field(c: LinearCode) -> np.ndarray:
    """The F_p image: each row r and each F_p-basis element t^i of F give t^i * r, digits expanded."""
    F = c.field
    if F.k == 1:
        return c.genmat.copy()
    digits = F.digit_table
    rows = []
    for row in c.genmat:
        for i in range(F.k):
            scaled = F.mul_table[F.p**i, row]
            rows.append(digits[scaled].reshape(-1))
    return np.array(rows, dtype=np.int64)


# -- search -----------------------------------------------------------------------------------


@dataclass
class ComponentResult:
    component: ComponentInfo
    construction: str | None
    codes: list[LinearCode]
    skipped: str | None = None
    notes: tuple[str, ...] = ()
    variants: int = 1

    def to_json(self) -> dict:
        pair = self.component.pair
        return {
            "pair": {
                "H": list(pair.H.elems),
                "K": list(pair.K.elems),
                "H_labels": pair.H.labels(),
                "K_labels": pair.K.labels(),
            },
            "class": list(self.component.cls.residues),
            "matrix_size": self.component.matrix_size,
            "field_order": self.component.field_order,
            "construction": self.construction,
            "skipped": self.skipped,
            "notes": list(self.notes),
            "codes": [code_json(c) for c in self.codes],
        }


def code_json(c: LinearCode) -> dict:
    p = c.provenance
    return {
        "n": c.length,
        "k": c.k,
        "d": c.d,
        "d_is_upper_bound": c.d_is_bound,
        "weights": c.weights,
        "idempotent_index": p.get("idempotent_index"),
        "normal_element": p.get("normal_element"),
        "variant": p.get("variant", 0),
    }


@dataclass
class SearchReport:
    group: str
    field: str
    order: int
    results: list[ComponentResult]
    ordering_hash: str
    timing: dict = field(default_factory=dict)

    def all_codes(self) -> list[LinearCode]:
        return [c for r in self.results for c in r.codes]

    def best(self) -> dict[int, int]:
        """Largest exact d for each dimension k."""
        out: dict[int, int] = {}
        for c in self.all_codes():
            if c.d is not None and not c.d_is_bound:
                out[c.k] = max(out.get(c.k, 0), c.d)
        return dict(sorted(out.items()))

    def has(self, k: int, d: int) -> bool:
        return any(c.k == k and c.d == d and not c.d_is_bound for c in self.all_codes())

    @property
    def supported(self) -> bool:
        return any(r.skipped is None for r in self.results)

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "group": self.group,
            "field": self.field,
            "order": self.order,
            "ordering_hash": self.ordering_hash,
            "components": [r.to_json() for r in self.results],
            "best": [{"k": k, "d": d} for k, d in self.best().items()],
        }
        if timing:
            out["timing"] = self.timing
        return out


def _primsets(
    G: Group, comp: ComponentInfo, F: FieldCtx, normal_elements: int | None, prefer: str
) -> tuple[list[PrimSet], str | None]:
    pair = comp.pair
    trivial = pair.twist is not None and pair.twist.trivial
    nilpotent = is_nilpotent(G)
    if trivial and (prefer == "trivial_twisting" or not nilpotent):
        ws = normal_element_variants(pair, F, limit=normal_elements)
        return [primitive_idempotents_trivial_twisting(G, pair, comp.cls, F, w=w) for w in ws], None
    if nilpotent:
        return [primitive_idempotents_nilpotent(G, pair, comp.cls, F)], None
    return [], "nontrivial twisting outside the nilpotent construction"


def code_search(
    G: Group,
    F: FieldCtx,
    strategy: str = "all_idempotents",
    *,
    pairs: Sequence[StrongShodaPair] | None = None,
    normal_elements: int | None = 1,
    method: str = "gray",
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    prefer: str = "trivial_twisting",
    group_name: str | None = None,
) -> SearchReport:
    """Codes of every supported component.

    ``all_components`` takes the first idempotent of each set,
    ``all_idempotents`` every one.  ``normal_elements`` (None = all) repeats
    the trivial-twisting construction for that many normal elements, one per
    scaling orbit.  Codes are sorted by k, then d descending.  Failures are
    recorded per component.
    """
    if strategy not in ("all_components", "all_idempotents"):
        raise ValueError(f"unknown strategy {strategy!r}")
    t0 = time.perf_counter()
    if pairs is None:
        pairs = strong_shoda_pairs(G, F)
    comps = components(G, F, pairs)
    t1 = time.perf_counter()
    results = []
    for comp in comps:
        try:
            sets, reason = _primsets(G, comp, F, normal_elements, prefer)
        except IdemcodesError as exc:
            results.append(ComponentResult(comp, None, [], f"{exc.code}: {exc}"))
            continue
        if reason is not None:
            results.append(ComponentResult(comp, None, [], reason))
            continue
        codes = []
        seen: set[bytes] = set()
        for v, ps in enumerate(sets):
            idems = ps.idems if strategy == "all_idempotents" else ps.idems[:1]
            for i, e in enumerate(idems):
                if e.key() in seen:
                    continue
                seen.add(e.key())
                prov = {
                    "idempotent_index": i,
                    "variant": v,
                    "normal_element": None if ps.w is None else ps.w,
                    "construction": ps.construction,
                }
                c = code_from_idempotent(G, e, provenance=prov)
                analyse(c, method, budget, threads)
                codes.append(c)
        codes.sort(key=lambda c: (c.k, -(c.d or 0), c.provenance["variant"], c.provenance["idempotent_index"]))
        notes = tuple(n for ps in sets[:1] for n in ps.notes)
        results.append(ComponentResult(comp, sets[0].construction, codes, None, notes, len(sets)))
    t2 = time.perf_counter()
    return SearchReport(
        group_name or G.name or "",
        str(F),
        G.n,
        results,
        ordering_hash(range(G.n)),
        {"pairs_seconds": round(t1 - t0, 6), "codes_seconds": round(t2 - t1, 6)},
    )
