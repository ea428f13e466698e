"""Finite-lattice analysis of posets: meet/join tables, the algebraic axioms,
irreducible elements, distributivity/modularity (by identity and by forbidden
sublattice), and the closure-system/closure-operator correspondence.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .bitset import full_mask, iter_bits, mask_of, to_frozenset
from .errors import FcaError, NotAClosureOperatorError, NotALatticeError
from .relations import Poset, covering_relation, inverse

EXHAUSTIVE_OPERATOR_CHECK = 12
MAX_OPERATOR_GROUND_SET = 16


def _least(candidates: int, up_rows: Sequence[int]) -> int | None:
    """Element of the candidate mask below every candidate, or None."""
    for i in iter_bits(candidates):
        if candidates & ~up_rows[i] == 0:
            return i
    return None


def _greatest(candidates: int, down_rows: Sequence[int]) -> int | None:
    for i in iter_bits(candidates):
        if candidates & ~down_rows[i] == 0:
            return i
    return None


@dataclass(frozen=True)
class FiniteLattice:
    """Poset together with its meet/join tables and bounds."""

    poset: Poset
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return self.poset.size

    def meet_of(self, items: Iterable[int]) -> int:
        acc = self.top
        for x in items:
            acc = self.meet[acc][x]
        return acc

    def join_of(self, items: Iterable[int]) -> int:
        acc = self.bottom
        for x in items:
            acc = self.join[acc][x]
        return acc


def lattice_from_poset(p: Poset) -> FiniteLattice:
    """Compute meet and join tables, or fail on the first pair without a
    unique infimum or supremum.
    """
    n = p.size
    if n == 0:
        raise NotALatticeError("supremum", (0, 0))
    up = p.relation.rows
    down = inverse(p.relation).rows
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            sup = _least(up[x] & up[y], up)
            if sup is None:
                raise NotALatticeError("supremum", (x, y))
            inf = _greatest(down[x] & down[y], down)
            if inf is None:
                raise NotALatticeError("infimum", (x, y))
            join[x][y] = join[y][x] = sup
            meet[x][y] = meet[y][x] = inf
    bottom = _least(full_mask(n), up)
    top = _greatest(full_mask(n), down)
    if bottom is None or top is None:
        # unreachable once all pairs have bounds, kept as a guard
        raise NotALatticeError("bound", (0, n - 1))
    return FiniteLattice(p, tuple(map(tuple, meet)), tuple(map(tuple, join)), bottom, top)


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[str, ...]
    checks: int

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_axioms(lat: FiniteLattice) -> AxiomReport:
    """Exhaustive idempotence/commutativity/associativity/absorption check,
    plus consistency of the tables with the poset's natural order.
    """
    n = lat.size
    meet, join = lat.meet, lat.join
    bad: list[str] = []
    checks = 0
    for x in range(n):
        checks += 1
        if join[x][x] != x or meet[x][x] != x:
            bad.append(f"idempotence fails at {x}")
    for x in range(n):
        for y in range(n):
            checks += 1
            if join[x][y] != join[y][x] or meet[x][y] != meet[y][x]:
                bad.append(f"commutativity fails at ({x},{y})")
            if (meet[x][y] == x or join[x][y] == y) and not lat.poset.le(x, y):
                bad.append(f"natural order: tables say {x}<={y}, poset disagrees")
            if lat.poset.le(x, y) and (meet[x][y] != x or join[x][y] != y):
                bad.append(f"natural order fails at ({x},{y})")
            if join[x][meet[x][y]] != x or meet[x][join[x][y]] != x:
                bad.append(f"absorption fails at ({x},{y})")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                checks += 1
                if join[x][join[y][z]] != join[join[x][y]][z]:
                    bad.append(f"join associativity fails at ({x},{y},{z})")
                if meet[x][meet[y][z]] != meet[meet[x][y]][z]:
                    bad.append(f"meet associativity fails at ({x},{y},{z})")
    return AxiomReport(tuple(bad), checks)


def irreducibles(lat: FiniteLattice) -> tuple[frozenset[int], frozenset[int]]:
    """(join-irreducible, meet-irreducible) elements: exactly one lower
    (upper) cover and distinct from the bottom (top).
    """
    covers = covering_relation(lat.poset)
    lower_count = [0] * lat.size
    upper_count = [0] * lat.size
    for a, b in covers.pairs():
        upper_count[a] += 1
        lower_count[b] += 1
    join_irr = frozenset(x for x in range(lat.size) if x != lat.bottom and lower_count[x] == 1)
    meet_irr = frozenset(x for x in range(lat.size) if x != lat.top and upper_count[x] == 1)
    return join_irr, meet_irr


def _is_sublattice(lat: FiniteLattice, subset: tuple[int, ...]) -> bool:
    s = set(subset)
    return all(lat.meet[x][y] in s and lat.join[x][y] in s
               for x, y in combinations(subset, 2))


def _comparable(lat: FiniteLattice, x: int, y: int) -> bool:
    return lat.poset.le(x, y) or lat.poset.le(y, x)


def _classify_five(lat: FiniteLattice, subset: tuple[int, ...]) -> str | None:
    """Shape of a 5-element sublattice: "pentagon", "diamond", or None."""
    least = [v for v in subset if all(lat.poset.le(v, w) for w in subset)]
    greatest = [v for v in subset if all(lat.poset.le(w, v) for w in subset)]
    if len(least) != 1 or len(greatest) != 1:
        return None
    middles = [v for v in subset if v != least[0] and v != greatest[0]]
    if len(middles) != 3:
        return None
    comp = [(x, y) for x, y in combinations(middles, 2) if _comparable(lat, x, y)]
    if not comp:
        return "diamond"
    if len(comp) == 1:
        return "pentagon"
    return None


def find_sublattice(lat: FiniteLattice, shape: str) -> tuple[int, ...] | None:
    """Brute-force search for a pentagon or diamond sublattice; returns its
    element indices in ascending order, or None.
    """
    for subset in combinations(range(lat.size), 5):
        if _is_sublattice(lat, subset) and _classify_five(lat, subset) == shape:
            return subset
    return None


@dataclass(frozen=True)
class LawCheck:
    holds: bool
    identity_witness: tuple[int, int, int] | None
    sublattice_witness: tuple[int, ...] | None


def is_distributive(lat: FiniteLattice) -> LawCheck:
    """Distributivity by the identity over all triples, cross-checked against
    the absence of pentagon and diamond sublattices; the two routes must agree.
    """
    witness = None
    for x in range(lat.size):
        for y in range(lat.size):
            for z in range(lat.size):
                if lat.meet[x][lat.join[y][z]] != lat.join[lat.meet[x][y]][lat.meet[x][z]]:
                    witness = tuple(sorted((x, y, z)))
                    break
            if witness:
                break
        if witness:
            break
    sub = find_sublattice(lat, "pentagon") or find_sublattice(lat, "diamond")
    if (witness is None) != (sub is None):
        raise FcaError(f"distributivity checks disagree: identity witness {witness}, sublattice {sub}")
    return LawCheck(witness is None, witness, sub)


def is_modular(lat: FiniteLattice) -> LawCheck:
    """Modularity: x <= z implies x v (y ^ z) = (x v y) ^ z; cross-checked
    against the absence of a pentagon sublattice.
    """
    witness = None
    for x in range(lat.size):
        for z in range(lat.size):
            if not lat.poset.le(x, z):
                continue
            for y in range(lat.size):
                if lat.join[x][lat.meet[y][z]] != lat.meet[lat.join[x][y]][z]:
                    witness = tuple(sorted((x, y, z)))
                    break
            if witness:
                break
        if witness:
            break
    sub = find_sublattice(lat, "pentagon")
    if (witness is None) != (sub is None):
        raise FcaError(f"modularity checks disagree: identity witness {witness}, sublattice {sub}")
    return LawCheck(witness is None, witness, sub)


# -- closure systems -------------------------------------------------------------


@dataclass(frozen=True)
class ClosureSystem:
    """Family of closed subsets: contains the ground set, closed under
    pairwise intersection.
    """

    size: int
    family: tuple[frozenset[int], ...]

    def __post_init__(self):
        fam = tuple(sorted({frozenset(f) for f in self.family},
                           key=lambda f: (len(f), sorted(f))))
        object.__setattr__(self, "family", fam)
        ground = frozenset(range(self.size))
        if ground not in fam:
            raise FcaError("closure system must contain the ground set")
        members = set(fam)
        for a, b in combinations(fam, 2):
            if a & b not in members:
                raise FcaError(f"family not intersection-closed at {sorted(a)} and {sorted(b)}")


def closure_system_to_operator(cs: ClosureSystem) -> Callable[[frozenset[int]], frozenset[int]]:
    """The operator sending A to the intersection of all members above A."""
    masks = [mask_of(f) for f in cs.family]
    width = cs.size

    def close(a: Iterable[int]) -> frozenset[int]:
        am = mask_of(a)
        if am & ~full_mask(width):
            raise FcaError("subset out of range")
        acc = full_mask(width)
        for fm in masks:
            if am & ~fm == 0:
                acc &= fm
        return to_frozenset(acc)

    return close


def operator_to_system(phi: Callable[[frozenset[int]], frozenset[int]], size: int) -> ClosureSystem:
    """Collect the closed sets of phi over the whole powerset, validating
    idempotence, extensivity and monotonicity along the way (exhaustively for
    small ground sets, on a stride sample beyond).
    """
    if size > MAX_OPERATOR_GROUND_SET:
        raise FcaError(f"ground set too large for powerset enumeration ({size} > {MAX_OPERATOR_GROUND_SET})")
    total = 1 << size
    check_every = 1 if size <= EXHAUSTIVE_OPERATOR_CHECK else max(1, total // (1 << EXHAUSTIVE_OPERATOR_CHECK))
    closed: set[frozenset[int]] = set()
    for am in range(total):
        a = to_frozenset(am)
        fa = frozenset(phi(a))
        closed.add(fa)
        if am % check_every:
            continue
        if not a <= fa:
            raise NotAClosureOperatorError("extensivity", sorted(a))
        if frozenset(phi(fa)) != fa:
            raise NotAClosureOperatorError("idempotence", sorted(a))
        for extra in range(size):
            if extra in a:
                continue
            if not fa <= frozenset(phi(a | {extra})):
                raise NotAClosureOperatorError("monotonicity", (sorted(a), extra))
    return ClosureSystem(size, tuple(closed))
