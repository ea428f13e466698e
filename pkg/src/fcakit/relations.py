"""Binary relations as square bit-matrices, with the relational algebra,
property checks, and finite-poset utilities built on top of them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .bitset import full_mask, iter_bits, mask_of, to_frozenset
from .errors import FcaError, FormatError, NotAnEquivalenceError, NotAPartialOrderError

MAX_LINEAR_EXTENSION_SIZE = 10


@dataclass(frozen=True)
class Relation:
    """Relation on {0..size-1}; rows[i] is the mask of j with (i, j) in R."""

    size: int
    rows: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != self.size:
            raise FcaError("matrix is not size x size")
        width = full_mask(self.size)
        for r in self.rows:
            if r & ~width:
                raise FcaError("matrix is not size x size")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.size or len(set(labels)) != self.size:
                raise FcaError("labels must be unique and size-many")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "Relation":
        rows = [0] * size
        for a, b in pairs:
            if not (0 <= a < size and 0 <= b < size):
                raise FcaError(f"pair {(a, b)} out of range")
            rows[a] |= 1 << b
        return cls(size, tuple(rows), tuple(labels) if labels else None)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for a, row in enumerate(self.rows):
            for b in iter_bits(row):
                yield a, b

    def has(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return self.has(*pair)

    def is_subrelation(self, other: "Relation") -> bool:
        return all(r & ~s == 0 for r, s in zip(self.rows, other.rows))

    def union(self, other: "Relation") -> "Relation":
        self._check_size(other)
        return Relation(self.size, tuple(a | b for a, b in zip(self.rows, other.rows)), self.labels)

    def intersection(self, other: "Relation") -> "Relation":
        self._check_size(other)
        return Relation(self.size, tuple(a & b for a, b in zip(self.rows, other.rows)), self.labels)

    def _check_size(self, other: "Relation"):
        if self.size != other.size:
            raise FcaError(f"size mismatch: {self.size} vs {other.size}")


def identity(size: int) -> Relation:
    return Relation(size, tuple(1 << i for i in range(size)))


def universal(size: int) -> Relation:
    return Relation(size, tuple(full_mask(size) for _ in range(size)))


def empty(size: int) -> Relation:
    return Relation(size, tuple(0 for _ in range(size)))


def inverse(r: Relation) -> Relation:
    rows = [0] * r.size
    for a, b in r.pairs():
        rows[b] |= 1 << a
    return Relation(r.size, tuple(rows), r.labels)


def complement(r: Relation) -> Relation:
    width = full_mask(r.size)
    return Relation(r.size, tuple(~row & width for row in r.rows), r.labels)


def compose(p: Relation, r: Relation) -> Relation:
    """Boolean matrix product: (x, y) with some z, (x, z) in P and (z, y) in R."""
    p._check_size(r)
    rows = []
    for row in p.rows:
        acc = 0
        for z in iter_bits(row):
            acc |= r.rows[z]
        rows.append(acc)
    return Relation(p.size, tuple(rows), p.labels)


def kernel(r: Relation) -> Relation:
    """R composed with its inverse; a tolerance on the domain of R."""
    return compose(r, inverse(r))


def incomparability(r: Relation) -> Relation:
    return complement(r.union(inverse(r)))


def transitive_closure(r: Relation, reflexive: bool = False) -> Relation:
    """Least transitive superset, by squaring to a fixpoint; optionally also
    reflexive (union with the identity).
    """
    rows = list(r.rows)
    if reflexive:
        for i in range(r.size):
            rows[i] |= 1 << i
    changed = True
    while changed:
        changed = False
        # one squaring pass: rows := rows | rows*rows
        new_rows = []
        for row in rows:
            acc = row
            for z in iter_bits(row):
                acc |= rows[z]
            new_rows.append(acc)
        if new_rows != rows:
            rows = new_rows
            changed = True
    return Relation(r.size, tuple(rows), r.labels)


@dataclass(frozen=True)
class RelationProperties:
    reflexive: bool
    antireflexive: bool
    symmetric: bool
    asymmetric: bool
    antisymmetric: bool
    transitive: bool
    linear: bool

    def flags(self) -> dict[str, bool]:
        return dict(self.__dict__)


def check_properties(r: Relation) -> RelationProperties:
    """Each flag by its matrix-algebra characterization, e.g. transitivity as
    R*R being contained in R.
    """
    i = identity(r.size)
    inv = inverse(r)
    rr = compose(r, r)
    return RelationProperties(
        reflexive=i.is_subrelation(r),
        antireflexive=all(not r.has(a, a) for a in range(r.size)),
        symmetric=r.rows == inv.rows,
        asymmetric=r.intersection(inv).rows == empty(r.size).rows,
        antisymmetric=r.intersection(inv).is_subrelation(i),
        transitive=rr.is_subrelation(r),
        linear=r.union(i).union(inv).rows == universal(r.size).rows,
    )


@dataclass(frozen=True)
class Partition:
    """Disjoint covering family of nonempty blocks over {0..size-1}."""

    size: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(frozenset(b) for b in self.blocks))
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise FcaError("empty block")
            if b & seen:
                raise FcaError("blocks are not disjoint")
            seen |= b
        if seen != set(range(self.size)):
            raise FcaError("blocks do not cover the ground set")

    def to_relation(self) -> Relation:
        rows = [0] * self.size
        for b in self.blocks:
            mask = mask_of(b)
            for i in b:
                rows[i] = mask
        return Relation(self.size, tuple(rows))


def equivalence_classes(r: Relation) -> Partition:
    props = check_properties(r)
    if not (props.reflexive and props.symmetric and props.transitive):
        raise NotAnEquivalenceError("relation is not an equivalence")
    blocks = []
    seen = 0
    for i, row in enumerate(r.rows):
        if not seen >> i & 1:
            blocks.append(to_frozenset(row))
            seen |= row
    return Partition(r.size, tuple(blocks))


@dataclass(frozen=True)
class Poset:
    """A Relation checked to be reflexive, antisymmetric, and transitive."""

    relation: Relation

    def __post_init__(self):
        props = check_properties(self.relation)
        if not (props.reflexive and props.antisymmetric and props.transitive):
            raise NotAPartialOrderError("relation is not a partial order")

    @property
    def size(self) -> int:
        return self.relation.size

    def le(self, a: int, b: int) -> bool:
        return self.relation.has(a, b)

    def up_mask(self, a: int) -> int:
        return self.relation.rows[a]

    def down_mask(self, a: int) -> int:
        return inverse(self.relation).rows[a]


def covering_relation(p: Poset) -> Relation:
    """x covered by y: x < y with nothing strictly between, i.e. the strict
    order minus its composition with itself.
    """
    strict_rows = tuple(row & ~(1 << i) for i, row in enumerate(p.relation.rows))
    strict = Relation(p.size, strict_rows, p.relation.labels)
    redundant = compose(strict, strict)
    return Relation(p.size, tuple(s & ~t for s, t in zip(strict.rows, redundant.rows)),
                    p.relation.labels)


def topological_sort(p: Poset) -> tuple[int, ...]:
    """Enumeration with x <= y implying position(x) <= position(y), taking at
    every step the minimal element with the least original index.
    """
    remaining = set(range(p.size))
    down = [set(iter_bits(inverse(p.relation).rows[i])) - {i} for i in range(p.size)]
    order = []
    while remaining:
        minimal = [i for i in sorted(remaining) if not (down[i] & remaining)]
        if not minimal:
            raise NotAPartialOrderError("cycle detected")
        q = minimal[0]
        order.append(q)
        remaining.remove(q)
    return tuple(order)


def linear_extensions(p: Poset) -> list[tuple[int, ...]]:
    """All topological sortings; factorial growth, so guarded to small posets."""
    if p.size > MAX_LINEAR_EXTENSION_SIZE:
        raise FcaError(f"linear extension enumeration limited to size {MAX_LINEAR_EXTENSION_SIZE}")
    down = [set(iter_bits(inverse(p.relation).rows[i])) - {i} for i in range(p.size)]
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], remaining: set[int]):
        if not remaining:
            out.append(tuple(prefix))
            return
        for i in sorted(remaining):
            if not (down[i] & remaining):
                prefix.append(i)
                extend(prefix, remaining - {i})
                prefix.pop()

    extend([], set(range(p.size)))
    return out


def order_ideal(p: Poset, q: Iterable[int]) -> frozenset[int]:
    """Down-set of q: everything below some element of q."""
    acc = 0
    inv = inverse(p.relation)
    for i in q:
        if not 0 <= i < p.size:
            raise FcaError(f"element {i} out of range")
        acc |= inv.rows[i]
    return to_frozenset(acc)


def order_filter(p: Poset, q: Iterable[int]) -> frozenset[int]:
    acc = 0
    for i in q:
        if not 0 <= i < p.size:
            raise FcaError(f"element {i} out of range")
        acc |= p.relation.rows[i]
    return to_frozenset(acc)


# -- text format ---------------------------------------------------------------


def read_relation(text: str) -> Relation:
    """First line n, then n lines of n characters '0'/'1'."""
    lines = [ln for ln in text.split("\n")]
    try:
        size = int(lines[0])
    except (IndexError, ValueError):
        raise FormatError("first line must be the matrix size") from None
    rows = []
    for i in range(size):
        try:
            line = lines[1 + i]
        except IndexError:
            raise FormatError(f"missing row {i}") from None
        if len(line) != size:
            raise FormatError(f"row {i} has {len(line)} cells, expected {size}")
        mask = 0
        for j, ch in enumerate(line):
            if ch == "1":
                mask |= 1 << j
            elif ch != "0":
                raise FormatError(f"bad cell character {ch!r} in row {i}")
        rows.append(mask)
    return Relation(size, tuple(rows))


def write_relation(r: Relation) -> str:
    lines = [str(r.size)]
    for row in r.rows:
        lines.append("".join("1" if row >> j & 1 else "0" for j in range(r.size)))
    return "\n".join(lines) + "\n"
