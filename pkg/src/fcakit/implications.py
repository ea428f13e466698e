"""Attribute implications and basis machinery: the two interchangeable
closure engines, lectic NextClosure, the Duquenne-Guigues basis (plain and
optimized), pseudo-intent testing, minimal generators, and the canonical
direct basis of proper premises via minimal hypergraph transversals.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from .bitset import (bit_count, full_mask, highest_bit, iter_bits, lectic_key,
                     lowest_bit, mask_of, to_frozenset)
from .contexts import Context
from .errors import FcaError

IndexSet = frozenset[int]

PSEUDO_INTENT_WIDTH_GUARD = 20
_VECTOR_THRESHOLD = 16


@dataclass(frozen=True)
class Implication:
    """Premise/conclusion pair of attribute index sets."""

    premise: IndexSet
    conclusion: IndexSet

    def display_conclusion(self) -> IndexSet:
        """Premise-disjoint form of the conclusion."""
        return self.conclusion - self.premise

    def full_conclusion(self) -> IndexSet:
        return self.conclusion | self.premise


@dataclass(frozen=True)
class ImplicationSet:
    """Implications over a shared attribute universe of `width` indices."""

    width: int
    implications: tuple[Implication, ...]

    def __post_init__(self):
        object.__setattr__(self, "implications", tuple(self.implications))
        limit = full_mask(self.width)
        for imp in self.implications:
            if mask_of(imp.premise) & ~limit or mask_of(imp.conclusion) & ~limit:
                raise FcaError("implication outside the attribute universe")

    def __len__(self) -> int:
        return len(self.implications)

    def __iter__(self):
        return iter(self.implications)

    @cached_property
    def mask_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((mask_of(i.premise), mask_of(i.conclusion)) for i in self.implications)

    def premises(self) -> set[IndexSet]:
        return {i.premise for i in self.implications}


def make_implication(premise: Iterable[int], conclusion: Iterable[int]) -> Implication:
    return Implication(frozenset(premise), frozenset(conclusion))


def is_valid(ctx: Context, imp: Implication) -> bool:
    """A -> B is valid when every object with all of A has all of B."""
    limit = full_mask(ctx.n_attributes)
    p = mask_of(imp.premise)
    c = mask_of(imp.conclusion)
    if (p | c) & ~limit:
        raise FcaError("implication universe does not match the context")
    return ctx.extent_mask(p) & ~ctx.extent_mask(c) == 0


def respects(t: Iterable[int], imps: Implication | ImplicationSet | Iterable[Implication]) -> bool:
    """T is a model: for each implication, premise not within T or conclusion within T."""
    tm = mask_of(t)
    if isinstance(imps, Implication):
        imps = [imps]
    for imp in imps:
        p = mask_of(imp.premise)
        if tm & p == p and mask_of(imp.conclusion) & ~tm:
            return False
    return True


# -- closure engines ----------------------------------------------------------


def _simp_closure_mask(x: int, pairs: Sequence[tuple[int, int]]) -> int:
    """Iterate implication application until stable, dropping each implication
    once applied.
    """
    pending = list(pairs)
    stable = False
    while not stable:
        stable = True
        rest = []
        for p, c in pending:
            if x & p == p:
                x |= c
                stable = False
            else:
                rest.append((p, c))
        pending = rest
    return x


def _lin_closure_mask(x: int, pairs: Sequence[tuple[int, int]], width: int) -> int:
    """Counter-based closure: one counter per implication initialized to the
    premise size, one implication list per attribute; zero-premise
    implications fire immediately.
    """
    counts = []
    by_attr: list[list[int]] = [[] for _ in range(width)]
    for idx, (p, c) in enumerate(pairs):
        counts.append(bit_count(p))
        if counts[idx] == 0:
            x |= c
        for a in iter_bits(p):
            by_attr[a].append(idx)
    update = x
    while update:
        m = lowest_bit(update)
        update &= update - 1  # clear lowest bit
        for idx in by_attr[m]:
            counts[idx] -= 1
            if counts[idx] == 0:
                add = pairs[idx][1] & ~x
                if add:
                    x |= add
                    update |= add
    return x


def simp_closure(x: Iterable[int], imps: ImplicationSet) -> IndexSet:
    """Least superset of x respecting every implication."""
    return to_frozenset(_simp_closure_mask(mask_of(x), imps.mask_pairs))


def lin_closure(x: Iterable[int], imps: ImplicationSet) -> IndexSet:
    """Same result as simp_closure via the linear-time counter protocol."""
    return to_frozenset(_lin_closure_mask(mask_of(x), imps.mask_pairs, imps.width))


def follows_semantically(imps: ImplicationSet, imp: Implication) -> bool:
    """A -> B follows from the set when B lands in the closure of A."""
    closure = _simp_closure_mask(mask_of(imp.premise), imps.mask_pairs)
    return mask_of(imp.conclusion) & ~closure == 0


# -- lectic enumeration ---------------------------------------------------------


def _next_closure_mask(a: int, width: int, close: Callable[[int], int],
                       start: int | None = None) -> int | None:
    """Lectically next closed set after `a`, scanning pivots downward from
    `start` (defaults to the top attribute); None when exhausted.
    """
    if start is None:
        start = width - 1
    for m in range(start, -1, -1):
        bit = 1 << m
        if a & bit:
            a &= ~bit
        else:
            b = close(a | bit)
            if (b & ~a) & (bit - 1) == 0:
                return b
    return None


def next_closure(a: Iterable[int], width: int,
                 closure: Callable[[IndexSet], IndexSet],
                 verify: bool = False) -> IndexSet | None:
    """Lectically next closed set of an arbitrary closure operator.

    Iterating from closure(empty) visits every closed set exactly once in
    lectic order.  With verify=True the operator's three laws are spot-checked
    on a few deterministic samples first.
    """
    am = mask_of(a)
    if am & ~full_mask(width):
        raise FcaError("set out of range")

    def close(mask: int) -> int:
        return mask_of(closure(to_frozenset(mask)))

    if verify:
        samples = [0, full_mask(width)] + [1 << (i % width) for i in range(min(width, 3))]
        for s in samples:
            c = close(s)
            if s & ~c:
                raise FcaError("closure handle is not extensive")
            if close(c) != c:
                raise FcaError("closure handle is not idempotent")
            for extra in range(min(width, 4)):
                if c & ~close(s | (1 << extra)):
                    raise FcaError("closure handle is not monotone")
    out = _next_closure_mask(am, width, close)
    return None if out is None else to_frozenset(out)


def lectic_closed_sets(width: int, closure: Callable[[IndexSet], IndexSet]) -> list[IndexSet]:
    """All closed sets in lectic order, starting from closure(empty)."""
    out = []
    current: IndexSet | None = closure(frozenset())
    while current is not None:
        out.append(current)
        current = next_closure(current, width, closure)
    return out


# -- the closure engine used while the basis is under construction -------------


class _StemEngine:
    """Closure under the running partial basis where an implication fires only
    on proper supersets of its premise, so already-found premises stay closed.
    Vectorizes once the basis is big enough and the universe fits a word.
    """

    def __init__(self, width: int):
        self.width = width
        self.pairs: list[tuple[int, int]] = []
        self._prem: np.ndarray | None = None
        self._concl: np.ndarray | None = None

    def add(self, premise: int, conclusion: int) -> None:
        self.pairs.append((premise, conclusion))
        self._prem = None

    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._prem is None:
            self._prem = np.array([p for p, _ in self.pairs], dtype=np.uint64)
            self._concl = np.array([c for _, c in self.pairs], dtype=np.uint64)
        return self._prem, self._concl

    def close(self, x: int) -> int:
        if len(self.pairs) >= _VECTOR_THRESHOLD and self.width <= 63:
            return self._close_vector(x)
        return self._close_plain(x)

    def _close_plain(self, x: int) -> int:
        pending = self.pairs
        while True:
            grew = False
            rest = []
            for pc in pending:
                p, c = pc
                if x & p == p:
                    if x != p:
                        if c & ~x:
                            x |= c
                            grew = True
                    else:
                        rest.append(pc)
                else:
                    rest.append(pc)
            if not grew:
                return x
            pending = rest

    def _close_vector(self, x: int) -> int:
        prem, concl = self._arrays()
        while True:
            xv = np.uint64(x)
            fire = (prem & xv) == prem
            np.logical_and(fire, prem != xv, out=fire)
            if not fire.any():
                return x
            add = int(np.bitwise_or.reduce(concl[fire]))
            new = x | add
            if new == x:
                return x
            x = new


def duquenne_guigues(ctx: Context, variant: str = "optimized") -> ImplicationSet:
    """The minimum implication basis: premises are exactly the pseudo-intents,
    found by walking the lectic order of sets closed under the partial basis.

    The optimized variant applies the two skip rules: jump straight to the
    closure when it only adds attributes past the premise's maximum, and
    restart the pivot scan at that maximum otherwise.
    """
    if variant not in ("plain", "optimized"):
        raise FcaError(f"unknown variant {variant!r}")
    width = ctx.n_attributes
    engine = _StemEngine(width)
    found: list[tuple[int, int]] = []
    a: int | None = 0
    while a is not None:
        closure = ctx.close_attributes_mask(a)
        if closure != a:
            found.append((a, closure))
            engine.add(a, closure)
            if variant == "optimized":
                j = lowest_bit(closure & ~a)
                if a == 0 or highest_bit(a) < j:
                    a = closure
                else:
                    a = _next_closure_mask(a, width, engine.close, start=highest_bit(a))
                continue
        a = _next_closure_mask(a, width, engine.close)
    found.sort(key=lambda pc: lectic_key(pc[0], width))
    return ImplicationSet(width, tuple(Implication(to_frozenset(p), to_frozenset(c))
                                       for p, c in found))


def pseudo_intents(ctx: Context, variant: str = "optimized") -> list[IndexSet]:
    return [imp.premise for imp in duquenne_guigues(ctx, variant)]


def is_pseudo_intent(ctx: Context, attrs: Iterable[int]) -> bool:
    """Recursive definition, bottom-up over the subsets of the candidate:
    not closed, and the closure of every pseudo-intent strictly inside stays
    inside.
    """
    if ctx.n_attributes > PSEUDO_INTENT_WIDTH_GUARD:
        raise FcaError(f"pseudo-intent test limited to {PSEUDO_INTENT_WIDTH_GUARD} attributes")
    target = mask_of(attrs)
    if target & ~full_mask(ctx.n_attributes):
        raise FcaError("attribute index out of range")
    bits = list(iter_bits(target))
    subs: list[int] = [0]
    for b in bits:
        subs.extend(s | (1 << b) for s in list(subs))
    subs.sort(key=bit_count)
    pseudo_below: list[tuple[int, int]] = []
    verdict = False
    for s in subs:
        closure = ctx.close_attributes_mask(s)
        if closure == s:
            continue
        ok = all(qc & ~s == 0 for q, qc in pseudo_below if q & s == q and q != s)
        if ok:
            if s == target:
                verdict = True
            pseudo_below.append((s, closure))
    return verdict


# -- generators and proper premises ---------------------------------------------


def minimal_generators(ctx: Context, closed: Iterable[int]) -> list[IndexSet]:
    """All inclusion-minimal subsets of a closed attribute set with the same
    closure.
    """
    target = mask_of(closed)
    if ctx.close_attributes_mask(target) != target:
        raise FcaError("input attribute set is not closed")
    bits = sorted(iter_bits(target))
    found: list[int] = []
    for size in range(len(bits) + 1):
        for combo in combinations(bits, size):
            mask = mask_of(combo)
            if any(mask & f == f for f in found):
                continue
            if ctx.close_attributes_mask(mask) == target:
                found.append(mask)
    return [to_frozenset(f) for f in found]


def nontrivial_minimal_generators(ctx: Context) -> set[IndexSet]:
    """Minimal generators distinct from their closure, across all intents."""
    out: set[IndexSet] = set()
    seen: set[int] = set()
    for b in range(1 << ctx.n_attributes):
        closure = ctx.close_attributes_mask(b)
        if closure in seen:
            continue
        seen.add(closure)
        for gen in minimal_generators(ctx, to_frozenset(closure)):
            if mask_of(gen) != closure:
                out.add(gen)
    return out


def arrow_down(ctx: Context, g: int, m: int) -> bool:
    """g lacks m, but every object with a strictly larger intent has it."""
    if ctx.rows[g] >> m & 1:
        return False
    row = ctx.rows[g]
    for h in range(ctx.n_objects):
        other = ctx.rows[h]
        if other != row and other & row == row and not other >> m & 1:
            return False
    return True


@dataclass(frozen=True)
class Hypergraph:
    """Vertex count plus a family of edges (vertex index sets)."""

    n_vertices: int
    edges: tuple[IndexSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(frozenset(e) for e in self.edges))
        for e in self.edges:
            if e and (max(e) >= self.n_vertices or min(e) < 0):
                raise FcaError("edge vertex out of range")


def minimal_transversals(h: Hypergraph) -> list[IndexSet]:
    """All inclusion-minimal vertex sets meeting every edge, built edge by
    edge with minimality filtering after each extension step.
    """
    trans: list[int] = [0]
    for edge in h.edges:
        em = mask_of(edge)
        if em == 0:
            return []
        extended: set[int] = set()
        for t in trans:
            if t & em:
                extended.add(t)
            else:
                for v in iter_bits(em):
                    extended.add(t | (1 << v))
        trans = [t for t in extended
                 if not any(o != t and t & o == o for o in extended)]
    trans.sort(key=lambda t: lectic_key(t, h.n_vertices))
    return [to_frozenset(t) for t in trans]


def proper_premises(ctx: Context) -> ImplicationSet:
    """Canonical direct basis: for each attribute m, the premises implying m
    are the minimal transversals of the hypergraph of complements of object
    intents at objects with the down-arrow to m; conclusions are closures.
    """
    width = ctx.n_attributes
    limit = full_mask(width)
    premises: set[int] = set()
    for m in range(width):
        bit = 1 << m
        edges = []
        for g in range(ctx.n_objects):
            if arrow_down(ctx, g, m):
                edges.append(to_frozenset(limit & ~ctx.rows[g] & ~bit))
        graph = Hypergraph(width, tuple(edges))
        premises.update(mask_of(t) for t in minimal_transversals(graph))
    out = []
    for p in sorted(premises, key=lambda p: lectic_key(p, width)):
        out.append(Implication(to_frozenset(p), to_frozenset(ctx.close_attributes_mask(p))))
    return ImplicationSet(width, tuple(out))


def proper_premises_by_definition(ctx: Context) -> set[IndexSet]:
    """Direct filter on the defining inequality; exponential, for cross-checks."""
    width = ctx.n_attributes
    out: set[IndexSet] = set()
    for b in range(1 << width):
        union = b
        for n in iter_bits(b):
            union |= ctx.close_attributes_mask(b & ~(1 << n))
        if ctx.close_attributes_mask(b) != union:
            out.add(to_frozenset(b))
    return out


# -- text format ----------------------------------------------------------------


def parse_implications(text: str, attributes: Sequence[str]) -> ImplicationSet:
    """One implication per line: premise names, "->", conclusion names,
    all whitespace-separated.
    """
    lookup = {m: i for i, m in enumerate(attributes)}
    imps = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if "->" not in line:
            raise FcaError(f"line {lineno}: missing '->'")
        left, right = line.split("->", 1)
        try:
            premise = frozenset(lookup[t] for t in left.split())
            conclusion = frozenset(lookup[t] for t in right.split())
        except KeyError as e:
            raise FcaError(f"line {lineno}: unknown attribute {e.args[0]!r}") from None
        imps.append(Implication(premise, conclusion))
    return ImplicationSet(len(attributes), tuple(imps))


def format_implication(imp: Implication, attributes: Sequence[str]) -> str:
    left = " ".join(attributes[i] for i in sorted(imp.premise))
    right = " ".join(attributes[i] for i in sorted(imp.display_conclusion()))
    return f"{left} -> {right}"
