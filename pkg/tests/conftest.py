"""Shared fixtures and independent oracles.

Oracles here are deliberately naive (powerset scans, triple loops) so they
never share code paths with the implementations they check.
"""
from __future__ import annotations

import random
from itertools import combinations

import pytest

from fcakit import Context, Poset, Relation
from fcakit.bitset import full_mask, iter_bits, to_frozenset


@pytest.fixture
def shapes() -> Context:
    # objects: triangle kinds and rectangles; attributes: vertex counts, right
    # angle, equilateral
    return Context.from_table(
        ("1", "2", "3", "4"), ("a", "b", "c", "d"),
        [[1, 0, 0, 1],
         [1, 0, 1, 0],
         [0, 1, 1, 0],
         [0, 1, 1, 1]])


@pytest.fixture
def shapes_extended() -> Context:
    # same plus attribute e held by objects 1, 2, 4
    return Context.from_table(
        ("1", "2", "3", "4"), ("a", "b", "c", "d", "e"),
        [[1, 0, 0, 1, 1],
         [1, 0, 1, 0, 1],
         [0, 1, 1, 0, 0],
         [0, 1, 1, 1, 1]])


@pytest.fixture
def grid() -> Context:
    return Context.from_table(
        ("1", "2", "3", "4"), ("a", "b", "c", "d"),
        [[1, 1, 0, 0],
         [1, 0, 1, 0],
         [0, 1, 0, 1],
         [1, 0, 1, 0]])


def contranominal(n: int) -> Context:
    full = full_mask(n)
    return Context(tuple(f"g{i}" for i in range(n)), tuple(f"m{i}" for i in range(n)),
                   tuple(full & ~(1 << i) for i in range(n)))


def k_exp(n: int) -> Context:
    """Family with 2^n pseudo-intents: m0 plus n complementary attribute pairs."""
    width = 2 * n + 1
    full = full_mask(width)
    rows = [full & ~1 & ~(1 << i) & ~(1 << (n + i)) for i in range(1, n + 1)]
    rows += [full & ~(1 << j) for j in range(1, 2 * n + 1)]
    return Context(tuple(f"g{i}" for i in range(1, 3 * n + 1)),
                   tuple(f"m{i}" for i in range(width)), tuple(rows))


def random_context(rng: random.Random, n_objects: int, n_attributes: int) -> Context:
    return Context(tuple(f"g{i}" for i in range(n_objects)),
                   tuple(f"m{j}" for j in range(n_attributes)),
                   tuple(rng.getrandbits(n_attributes) for _ in range(n_objects)))


def poset_from_pairs(n: int, pairs) -> Poset:
    from fcakit import transitive_closure
    rel = Relation.from_pairs(n, pairs)
    return Poset(transitive_closure(rel, reflexive=True))


def chain_poset(n: int) -> Poset:
    return poset_from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def antichain_poset(n: int) -> Poset:
    return poset_from_pairs(n, [])


def powerset_lattice_poset(k: int) -> Poset:
    subsets = list(range(1 << k))
    pairs = [(i, j) for i in subsets for j in subsets if i & ~j == 0]
    return Poset(Relation.from_pairs(len(subsets), pairs))


# -- oracles -------------------------------------------------------------------


def oracle_concepts(ctx: Context) -> set[tuple[frozenset[int], frozenset[int]]]:
    """All concepts by scanning every attribute subset for closedness."""
    out = set()
    for b in range(1 << ctx.n_attributes):
        intent = to_frozenset(b)
        extent = ctx.derive_attributes(intent)
        if ctx.derive_objects(extent) == intent:
            out.add((extent, intent))
    return out


def oracle_pseudo_intents(ctx: Context) -> list[frozenset[int]]:
    """Recursive definition evaluated bottom-up over the whole powerset."""
    found: list[tuple[frozenset[int], frozenset[int]]] = []
    n = ctx.n_attributes
    for size in range(n + 1):
        for combo in combinations(range(n), size):
            s = frozenset(combo)
            closure = ctx.close_attributes(s)
            if closure == s:
                continue
            if all(qc <= s for q, qc in found if q < s):
                found.append((s, closure))
    return [p for p, _ in found]


def oracle_properties(rel: Relation) -> dict[str, bool]:
    """Triple-loop reading of the definitions."""
    n = rel.size
    has = rel.has
    return {
        "reflexive": all(has(a, a) for a in range(n)),
        "antireflexive": all(not has(a, a) for a in range(n)),
        "symmetric": all(has(b, a) for a in range(n) for b in range(n) if has(a, b)),
        "asymmetric": all(not has(b, a) for a in range(n) for b in range(n) if has(a, b)),
        "antisymmetric": all(a == b for a in range(n) for b in range(n)
                             if has(a, b) and has(b, a)),
        "transitive": all(has(a, c) for a in range(n) for b in range(n) for c in range(n)
                          if has(a, b) and has(b, c)),
        "linear": all(a == b or has(a, b) or has(b, a) for a in range(n) for b in range(n)),
    }


def oracle_transversals(n_vertices: int, edges: list[frozenset[int]]) -> set[frozenset[int]]:
    hitting = []
    for b in range(1 << n_vertices):
        t = to_frozenset(b)
        if all(t & e for e in edges):
            hitting.append(t)
    return {t for t in hitting if not any(o < t for o in hitting)}


def oracle_transitive_closure(rel: Relation) -> Relation:
    """Union of all powers, one composition at a time."""
    from fcakit import compose
    acc = rel
    power = rel
    for _ in range(rel.size):
        power = compose(power, rel)
        acc = acc.union(power)
    return acc


def all_posets(n: int):
    """Every labeled poset on {0..n-1}, as Poset relation row tuples.

    Element k is added with a choice of (strictly-below, strictly-above) sets;
    the below set must be a down-set, the above an up-set, and every below
    element must already sit under every above element.
    """

    def down_sets(up, down, k):
        out = []
        for mask in range(1 << k):
            if all((down[d] & ~(1 << d)) & ~mask == 0 for d in iter_bits(mask)):
                out.append(mask)
        return out

    def up_sets(up, down, k):
        out = []
        for mask in range(1 << k):
            if all((up[u] & ~(1 << u)) & ~mask == 0 for u in iter_bits(mask)):
                out.append(mask)
        return out

    def extend(k, up, down):
        if k == n:
            yield tuple(up)
            return
        downs = down_sets(up, down, k)
        ups = up_sets(up, down, k)
        for d_mask in downs:
            for u_mask in ups:
                if d_mask & u_mask:
                    continue
                ok = all(u_mask & ~up[d] == 0 for d in iter_bits(d_mask))
                if not ok:
                    continue
                bit = 1 << k
                new_up = [up[i] | bit if d_mask >> i & 1 else up[i] for i in range(k)]
                new_up.append(bit | u_mask)
                new_down = [down[i] | bit if u_mask >> i & 1 else down[i] for i in range(k)]
                new_down.append(bit | d_mask)
                yield from extend(k + 1, new_up, new_down)

    yield from extend(0, [], [])
