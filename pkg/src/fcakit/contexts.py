"""Formal contexts: derivation operators, clarification, reduction, sorting,
many-valued contexts with scaling, and the pair-context / many-valued-context
constructions that translate between implications and functional dependencies.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .bitset import bit_count, full_mask, iter_bits, mask_of, to_frozenset
from .errors import FcaError, FormatError

IndexSet = frozenset[int]


def _as_mask(items: Iterable[int] | int, width: int, what: str) -> int:
    if isinstance(items, int):
        mask = items
    else:
        mask = mask_of(items)
    if mask & ~full_mask(width):
        raise FcaError(f"{what} index out of range (width {width})")
    return mask


def _check_names(names: Sequence[str], what: str) -> tuple[str, ...]:
    names = tuple(names)
    if len(set(names)) != len(names):
        raise FcaError(f"duplicate {what} names")
    return names


@dataclass(frozen=True)
class Context:
    """A formal context: objects, attributes, and an incidence bit-matrix.

    `rows[g]` is the attribute mask of object g; columns are derived.
    Instances are immutable and safe to share.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "objects", _check_names(self.objects, "object"))
        object.__setattr__(self, "attributes", _check_names(self.attributes, "attribute"))
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != len(self.objects):
            raise FcaError("row count does not match object count")
        width = full_mask(self.n_attributes)
        for r in self.rows:
            if r & ~width:
                raise FcaError("row wider than attribute count")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        cols = [0] * self.n_attributes
        for g, row in enumerate(self.rows):
            for m in iter_bits(row):
                cols[m] |= 1 << g
        return tuple(cols)

    @classmethod
    def from_table(cls, objects: Sequence[str], attributes: Sequence[str],
                   table: Sequence[Sequence[bool | int]]) -> "Context":
        rows = [mask_of(m for m, cell in enumerate(row) if cell) for row in table]
        if any(len(row) != len(attributes) for row in table):
            raise FcaError("table row length does not match attribute count")
        return cls(tuple(objects), tuple(attributes), tuple(rows))

    @classmethod
    def from_pairs(cls, objects: Sequence[str], attributes: Sequence[str],
                   pairs: Iterable[tuple[str, str]]) -> "Context":
        gi = {g: i for i, g in enumerate(objects)}
        mi = {m: i for i, m in enumerate(attributes)}
        rows = [0] * len(objects)
        for g, m in pairs:
            rows[gi[g]] |= 1 << mi[m]
        return cls(tuple(objects), tuple(attributes), tuple(rows))

    def incidence(self, g: int, m: int) -> bool:
        return bool(self.rows[g] >> m & 1)

    # -- derivation operators ------------------------------------------------

    def intent_mask(self, object_mask: int) -> int:
        """A' as a mask: attributes common to all objects in the mask."""
        out = full_mask(self.n_attributes)
        for g in iter_bits(object_mask):
            out &= self.rows[g]
        return out

    def extent_mask(self, attribute_mask: int) -> int:
        """B' as a mask: objects having all attributes in the mask."""
        out = full_mask(self.n_objects)
        for m in iter_bits(attribute_mask):
            out &= self.columns[m]
        return out

    def close_attributes_mask(self, attribute_mask: int) -> int:
        return self.intent_mask(self.extent_mask(attribute_mask))

    def close_objects_mask(self, object_mask: int) -> int:
        return self.extent_mask(self.intent_mask(object_mask))

    def derive_objects(self, objs: Iterable[int]) -> IndexSet:
        """A' = the attributes shared by every object of A; A'=M for A=empty."""
        return to_frozenset(self.intent_mask(_as_mask(objs, self.n_objects, "object")))

    def derive_attributes(self, attrs: Iterable[int]) -> IndexSet:
        return to_frozenset(self.extent_mask(_as_mask(attrs, self.n_attributes, "attribute")))

    def close_attributes(self, attrs: Iterable[int]) -> IndexSet:
        """B'' — the closure of an attribute set."""
        return to_frozenset(self.close_attributes_mask(_as_mask(attrs, self.n_attributes, "attribute")))

    def close_objects(self, objs: Iterable[int]) -> IndexSet:
        return to_frozenset(self.close_objects_mask(_as_mask(objs, self.n_objects, "object")))

    # -- name helpers --------------------------------------------------------

    def attribute_indices(self, names: Iterable[str]) -> IndexSet:
        lookup = {m: i for i, m in enumerate(self.attributes)}
        try:
            return frozenset(lookup[n] for n in names)
        except KeyError as e:
            raise FcaError(f"unknown attribute {e.args[0]!r}") from None

    def object_indices(self, names: Iterable[str]) -> IndexSet:
        lookup = {g: i for i, g in enumerate(self.objects)}
        try:
            return frozenset(lookup[n] for n in names)
        except KeyError as e:
            raise FcaError(f"unknown object {e.args[0]!r}") from None

    def attribute_names(self, attrs: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.attributes[i] for i in sorted(attrs))

    def object_names(self, objs: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.objects[i] for i in sorted(objs))

    def transpose(self) -> "Context":
        """The dual context (M, G, I^-1)."""
        return Context(self.attributes, self.objects, self.columns)


# -- clarification and reduction ---------------------------------------------


def clarify(ctx: Context) -> tuple[Context, dict[int, tuple[int, ...]], dict[int, tuple[int, ...]]]:
    """Drop duplicate rows and columns, keeping the smallest index of each
    duplicate class.  Returns (context, object merge map, attribute merge map);
    each map sends a kept index to all original indices it absorbed.
    """
    obj_groups: dict[int, list[int]] = {}
    for g, row in enumerate(ctx.rows):
        obj_groups.setdefault(row, []).append(g)
    kept_objects = sorted(min(grp) for grp in obj_groups.values())
    obj_merge = {min(grp): tuple(grp) for grp in obj_groups.values()}

    col_groups: dict[int, list[int]] = {}
    for m, col in enumerate(ctx.columns):
        col_groups.setdefault(col, []).append(m)
    kept_attrs = sorted(min(grp) for grp in col_groups.values())
    attr_merge = {min(grp): tuple(grp) for grp in col_groups.values()}

    rows = []
    for g in kept_objects:
        rows.append(mask_of(j for j, m in enumerate(kept_attrs) if ctx.rows[g] >> m & 1))
    out = Context(tuple(ctx.objects[g] for g in kept_objects),
                  tuple(ctx.attributes[m] for m in kept_attrs),
                  tuple(rows))
    return out, obj_merge, attr_merge


def _reducible_columns(cols: Sequence[int], n_rows: int) -> list[int]:
    full = full_mask(n_rows)
    out = []
    for m, col in enumerate(cols):
        if col == full:
            out.append(m)
            continue
        inter = full
        for n, other in enumerate(cols):
            if n != m and other != col and other & col == col:
                inter &= other
        if inter == col:
            out.append(m)
    return out


def reduce_attributes(ctx: Context) -> tuple[Context, tuple[str, ...]]:
    """Remove every reducible attribute: a full column, or one whose extent is
    the intersection of strictly larger column extents.  Clarifies first, so
    duplicate columns count as removed too.
    """
    clarified, _, _ = clarify(ctx)
    reducible = set(_reducible_columns(clarified.columns, clarified.n_objects))
    kept = [m for m in range(clarified.n_attributes) if m not in reducible]
    rows = [mask_of(j for j, m in enumerate(kept) if clarified.rows[g] >> m & 1)
            for g in range(clarified.n_objects)]
    out = Context(clarified.objects, tuple(clarified.attributes[m] for m in kept), tuple(rows))
    removed = tuple(m for m in ctx.attributes if m not in set(out.attributes))
    return out, removed


def reduce_objects(ctx: Context) -> tuple[Context, tuple[str, ...]]:
    reduced, removed = reduce_attributes(ctx.transpose())
    return reduced.transpose(), removed


def sort_by_cardinality(ctx: Context, axis: str = "objects",
                        descending: bool = False) -> tuple[Context, tuple[int, ...]]:
    """Stable sort of rows (axis="objects") or columns (axis="attributes") by
    their number of incidences.  Returns (context, permutation) where
    permutation[i] is the original index now at position i.
    """
    if axis == "objects":
        perm = sorted(range(ctx.n_objects), key=lambda g: bit_count(ctx.rows[g]),
                      reverse=descending)
        out = Context(tuple(ctx.objects[g] for g in perm), ctx.attributes,
                      tuple(ctx.rows[g] for g in perm))
    elif axis == "attributes":
        perm = sorted(range(ctx.n_attributes), key=lambda m: bit_count(ctx.columns[m]),
                      reverse=descending)
        rows = [mask_of(j for j, m in enumerate(perm) if ctx.rows[g] >> m & 1)
                for g in range(ctx.n_objects)]
        out = Context(ctx.objects, tuple(ctx.attributes[m] for m in perm), tuple(rows))
    else:
        raise FcaError(f"unknown axis {axis!r}")
    return out, tuple(perm)


# -- many-valued contexts ----------------------------------------------------


@dataclass(frozen=True)
class ManyValuedContext:
    """Complete many-valued context: every cell holds exactly one value token."""

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    values: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "objects", _check_names(self.objects, "object"))
        object.__setattr__(self, "attributes", _check_names(self.attributes, "attribute"))
        object.__setattr__(self, "values", tuple(tuple(row) for row in self.values))
        if len(self.values) != len(self.objects):
            raise FcaError("value row count does not match object count")
        for row in self.values:
            if len(row) != len(self.attributes):
                raise FcaError("value row length does not match attribute count")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    def value(self, g: int, m: int) -> str:
        return self.values[g][m]

    def observed_values(self, m: int) -> tuple[str, ...]:
        return tuple(sorted({row[m] for row in self.values}))


def scale(mv: ManyValuedContext, method: str = "nominal",
          orders: Mapping[str, Sequence[str]] | None = None) -> Context:
    """Translate a many-valued context into a binary one.

    nominal: one attribute "m=w" per observed value of m.
    interordinal: attributes "m<=w" and "m>=w" per observed value, with the
    per-attribute value order taken from `orders` or lexicographic by default.
    """
    if method == "nominal":
        names: list[str] = []
        rows = [0] * mv.n_objects
        for m, attr in enumerate(mv.attributes):
            for w in mv.observed_values(m):
                col = len(names)
                names.append(f"{attr}={w}")
                for g in range(mv.n_objects):
                    if mv.value(g, m) == w:
                        rows[g] |= 1 << col
        return Context(mv.objects, tuple(names), tuple(rows))
    if method == "interordinal":
        names = []
        rows = [0] * mv.n_objects
        for m, attr in enumerate(mv.attributes):
            order = list(orders[attr]) if orders and attr in orders else list(mv.observed_values(m))
            rank = {w: i for i, w in enumerate(order)}
            for g in range(mv.n_objects):
                if mv.value(g, m) not in rank:
                    raise FcaError(f"value {mv.value(g, m)!r} missing from order of {attr!r}")
            for w in order:
                le_col = len(names)
                names.append(f"{attr}<={w}")
                for g in range(mv.n_objects):
                    if rank[mv.value(g, m)] <= rank[w]:
                        rows[g] |= 1 << le_col
            for w in order:
                ge_col = len(names)
                names.append(f"{attr}>={w}")
                for g in range(mv.n_objects):
                    if rank[mv.value(g, m)] >= rank[w]:
                        rows[g] |= 1 << ge_col
        return Context(mv.objects, tuple(names), tuple(rows))
    raise FcaError(f"unknown scaling method {method!r}")


# -- functional dependencies -------------------------------------------------


def functional_dependency_holds(mv: ManyValuedContext, xs: Iterable[int], ys: Iterable[int]) -> bool:
    """X -> Y holds when every pair of objects agreeing on all of X agrees on Y."""
    xs, ys = tuple(xs), tuple(ys)
    for g in range(mv.n_objects):
        for h in range(g + 1, mv.n_objects):
            if all(mv.value(g, m) == mv.value(h, m) for m in xs):
                if not all(mv.value(g, m) == mv.value(h, m) for m in ys):
                    return False
    return True


def build_kn(mv: ManyValuedContext) -> Context:
    """Pair context: objects are unordered pairs of distinct objects, and a
    pair carries attribute m when both members agree on m.  Functional
    dependencies of the input are exactly the valid implications here.
    """
    if mv.n_objects < 2:
        raise FcaError("pair context needs at least two objects")
    names = []
    rows = []
    for g in range(mv.n_objects):
        for h in range(g + 1, mv.n_objects):
            names.append(f"{{{mv.objects[g]},{mv.objects[h]}}}")
            rows.append(mask_of(m for m in range(mv.n_attributes)
                                if mv.value(g, m) == mv.value(h, m)))
    return Context(tuple(names), mv.attributes, tuple(rows))


def build_kw(ctx: Context, include_row0: bool = True) -> ManyValuedContext:
    """Many-valued context whose functional dependencies are the valid
    implications of `ctx`: an extra object "0" shares token "0" everywhere,
    object g shares it exactly where g has the attribute and otherwise gets a
    token private to g (its 1-based index).  `include_row0=False` drops the
    shared row, which breaks the correspondence (kept for regression tests).
    """
    objects = []
    values = []
    if include_row0:
        objects.append("0")
        values.append(tuple("0" for _ in range(ctx.n_attributes)))
    for g in range(ctx.n_objects):
        objects.append(ctx.objects[g])
        values.append(tuple("0" if ctx.rows[g] >> m & 1 else str(g + 1)
                            for m in range(ctx.n_attributes)))
    return ManyValuedContext(tuple(objects), ctx.attributes, tuple(values))


# -- file formats --------------------------------------------------------------


def read_burmeister(text: str) -> Context:
    """Parse the Burmeister layout: "B", blank, |G|, |M|, blank, object names,
    attribute names, then |G| rows of 'X'/'.' cells.
    """
    lines = text.split("\n")
    try:
        if lines[0].strip() != "B":
            raise FormatError("missing 'B' header line")
        if lines[1].strip():
            raise FormatError("expected blank line after header")
        n_g = int(lines[2])
        n_m = int(lines[3])
        if lines[4].strip():
            raise FormatError("expected blank line after sizes")
        objects = [lines[5 + i] for i in range(n_g)]
        attributes = [lines[5 + n_g + i] for i in range(n_m)]
        rows = []
        for i in range(n_g):
            cells = lines[5 + n_g + n_m + i]
            if len(cells) != n_m:
                raise FormatError(f"row {i} has {len(cells)} cells, expected {n_m}")
            mask = 0
            for m, ch in enumerate(cells):
                if ch == "X":
                    mask |= 1 << m
                elif ch != ".":
                    raise FormatError(f"bad cell character {ch!r} in row {i}")
            rows.append(mask)
    except (IndexError, ValueError) as e:
        raise FormatError(f"truncated or malformed context file: {e}") from None
    return Context(tuple(objects), tuple(attributes), tuple(rows))


def write_burmeister(ctx: Context) -> str:
    lines = ["B", "", str(ctx.n_objects), str(ctx.n_attributes), ""]
    lines.extend(ctx.objects)
    lines.extend(ctx.attributes)
    for row in ctx.rows:
        lines.append("".join("X" if row >> m & 1 else "." for m in range(ctx.n_attributes)))
    return "\n".join(lines) + "\n"


def read_csv_context(text: str) -> Context:
    """CSV with a header of attribute names and object names in column one;
    cells are "1"/"0".
    """
    reader = csv.reader(io.StringIO(text))
    table = [row for row in reader if row]
    if not table:
        raise FormatError("empty CSV")
    attributes = tuple(table[0][1:])
    objects = []
    rows = []
    for line in table[1:]:
        if len(line) != len(attributes) + 1:
            raise FormatError(f"row {line[0]!r} has wrong cell count")
        objects.append(line[0])
        mask = 0
        for m, cell in enumerate(line[1:]):
            if cell == "1":
                mask |= 1 << m
            elif cell != "0":
                raise FormatError(f"bad binary cell {cell!r}; use --many-valued for value tables")
        rows.append(mask)
    return Context(tuple(objects), attributes, tuple(rows))


def read_csv_many_valued(text: str) -> ManyValuedContext:
    reader = csv.reader(io.StringIO(text))
    table = [row for row in reader if row]
    if not table:
        raise FormatError("empty CSV")
    attributes = tuple(table[0][1:])
    objects = []
    values = []
    for line in table[1:]:
        if len(line) != len(attributes) + 1:
            raise FormatError(f"row {line[0]!r} has wrong cell count")
        objects.append(line[0])
        values.append(tuple(line[1:]))
    return ManyValuedContext(tuple(objects), attributes, tuple(values))


def write_csv_context(ctx: Context) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(ctx.attributes))
    for g in range(ctx.n_objects):
        writer.writerow([ctx.objects[g]] + ["1" if ctx.rows[g] >> m & 1 else "0"
                                            for m in range(ctx.n_attributes)])
    return buf.getvalue()


def write_csv_many_valued(mv: ManyValuedContext) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(mv.attributes))
    for g in range(mv.n_objects):
        writer.writerow([mv.objects[g]] + list(mv.values[g]))
    return buf.getvalue()
