"""Finitely generated abelian groups as ``Z^n`` modulo a relation lattice.

A group, its elements and its subgroups all live in the same ambient
coordinates.  A subgroup ``H`` of ``G = Z^n / L`` is stored as the lattice
``M`` with ``L <= M <= Z^n``, so quotients and pull-backs never change
coordinates: the quotient ``G/H`` is just ``Z^n / M``.

Every lattice is kept as the nonzero rows of its canonical Hermite form,
which makes equality of groups and subgroups a tuple comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd, isqrt, prod
from typing import Iterable, Sequence

from .intlinalg import DimensionMismatch, IntMatrix, hnf_basis, in_echelon_lattice, snf

DEFAULT_ORDER_BOUND = 10**6


class InfiniteGroup(ValueError):
    """The group has positive free rank, hence infinitely many subgroups."""

    def __init__(self, torsion: Sequence[int], free_rank: int, msg: str | None = None):
        self.torsion = tuple(torsion)
        self.free_rank = free_rank
        super().__init__(msg or f"group {_describe(self.torsion, free_rank)} is infinite")


class InfinitelyMany(InfiniteGroup):
    """Raised when the intermediate subgroups form an infinite family."""

    def __init__(self, torsion: Sequence[int], free_rank: int):
        super().__init__(
            torsion,
            free_rank,
            f"quotient {_describe(tuple(torsion), free_rank)} has free rank "
            f"{free_rank}: infinitely many intermediate subgroups",
        )


class BoundExceeded(ValueError):
    pass


class GroupMismatch(ValueError):
    pass


def _describe(torsion: tuple[int, ...], free_rank: int) -> str:
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts += [f"Z/{d}" for d in torsion]
    return " + ".join(parts) if parts else "0"


def _key(lattice: IntMatrix) -> tuple:
    return tuple(lattice.row(i) for i in range(lattice.rows))


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^ambient_rank`` modulo the row lattice of ``relations``.

    Construct through :func:`group_from_relations` so ``relations`` is in
    canonical form.
    """

    ambient_rank: int
    relations: IntMatrix

    @cached_property
    def _smith(self):
        return snf(self.relations)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self._smith.invariant_factors if d > 1)

    @property
    def free_rank(self) -> int:
        return self.ambient_rank - self._smith.rank

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        return prod(self.torsion) if self.is_finite else None

    def element(self, coords: Sequence[int]) -> GroupElement:
        if len(coords) != self.ambient_rank:
            raise DimensionMismatch(
                f"element of length {len(coords)} in a group of ambient rank {self.ambient_rank}"
            )
        return GroupElement(self, tuple(int(x) for x in coords))

    def zero(self) -> GroupElement:
        return self.element((0,) * self.ambient_rank)

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Canonical coset representative of ``coords``."""
        return _reduce(self.relations, coords)

    def elements(self) -> list[GroupElement]:
        """All elements as canonical representatives (finite groups only).

        For a full-rank Hermite basis the pivots sit on the diagonal, and
        the canonical representatives are exactly the boxes ``0 <= x_i < p_i``.
        """
        if not self.is_finite:
            raise InfiniteGroup(self.torsion, self.free_rank)
        diag = [self.relations[i, i] for i in range(self.ambient_rank)]
        return [GroupElement(self, c) for c in product(*(range(p) for p in diag))]

    def full(self) -> Subgroup:
        return Subgroup(self, IntMatrix.identity(self.ambient_rank))

    def trivial(self) -> Subgroup:
        return Subgroup(self, self.relations)

    def to_json(self) -> dict:
        return {"ambient_rank": self.ambient_rank, "relations": self.relations.tolist()}

    def __str__(self) -> str:
        return _describe(self.torsion, self.free_rank)


def _reduce(h: IntMatrix, coords: Sequence[int]) -> tuple[int, ...]:
    v = list(coords)
    for i in range(h.rows):
        row = h.row(i)
        c = next(j for j, x in enumerate(row) if x)
        q = v[c] // row[c]
        if q:
            for j, x in enumerate(row):
                v[j] -= q * x
    return tuple(v)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A coset ``coords + L``; equality is equality of cosets."""

    group: FgAbelianGroup
    coords: tuple[int, ...]

    @cached_property
    def canonical(self) -> tuple[int, ...]:
        return self.group.reduce(self.coords)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group == other.group and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __add__(self, other: GroupElement) -> GroupElement:
        _same_group(self.group, other.group)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __rmul__(self, k: int) -> GroupElement:
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.canonical)

    def __repr__(self):
        return f"GroupElement({list(self.coords)})"


@dataclass(frozen=True)
class Subgroup:
    """Intermediate lattice ``L <= lattice <= Z^n`` in canonical Hermite form."""

    group: FgAbelianGroup
    lattice: IntMatrix

    def key(self) -> tuple:
        return _key(self.lattice)

    def __lt__(self, other: Subgroup) -> bool:
        return self.key() < other.key()

    def index(self) -> int | None:
        """``[G : H]``, or None when infinite."""
        return quotient(self.group, self).order()

    def order(self) -> int | None:
        g = self.group.order()
        return None if g is None else g // self.index()

    def generators(self) -> list[GroupElement]:
        return [self.group.element(self.lattice.row(i)) for i in range(self.lattice.rows)]

    def to_json(self) -> dict:
        return {"lattice": self.lattice.tolist(), "index": self.index(), "order": self.order()}

    def __str__(self):
        if not self.lattice.rows:
            return "<0>"
        return "<" + ", ".join(str(list(self.lattice.row(i))) for i in range(self.lattice.rows)) + ">"


def _same_group(a: FgAbelianGroup, b: FgAbelianGroup) -> None:
    if a != b:
        raise GroupMismatch("elements or subgroups belong to different groups")


def group_from_relations(n: int, relations: IntMatrix | Sequence[Sequence[int]]) -> FgAbelianGroup:
    """The group ``Z^n`` modulo the rows of ``relations``."""
    if not isinstance(relations, IntMatrix):
        relations = IntMatrix.from_rows(relations, cols=n)
    if relations.cols != n:
        raise DimensionMismatch(f"relations have {relations.cols} columns, expected {n}")
    return FgAbelianGroup(n, hnf_basis(relations))


def invariant_factors(G: FgAbelianGroup) -> tuple[tuple[int, ...], int]:
    return G.torsion, G.free_rank


def has_finitely_many_subgroups(G: FgAbelianGroup) -> bool:
    # a f.g. abelian group has finitely many subgroups iff it is finite
    return G.free_rank == 0


def _lattice_of(G: FgAbelianGroup, rows: Iterable[Sequence[int]]) -> IntMatrix:
    rows = [tuple(r) for r in rows]
    for r in rows:
        if len(r) != G.ambient_rank:
            raise DimensionMismatch(
                f"generator of length {len(r)} in a group of ambient rank {G.ambient_rank}"
            )
    extra = IntMatrix.from_rows(rows, cols=G.ambient_rank)
    return hnf_basis(G.relations.vstack(extra))


def subgroup_generated(G: FgAbelianGroup, gens: Iterable[GroupElement | Sequence[int]]) -> Subgroup:
    rows = []
    for g in gens:
        if isinstance(g, GroupElement):
            _same_group(G, g.group)
            g = g.coords
        rows.append(g)
    return Subgroup(G, _lattice_of(G, rows))


def join(H: Subgroup, K: Subgroup) -> Subgroup:
    _same_group(H.group, K.group)
    return Subgroup(H.group, hnf_basis(H.lattice.vstack(K.lattice)))


def contains(H: Subgroup, e: GroupElement | Sequence[int]) -> bool:
    if isinstance(e, GroupElement):
        _same_group(H.group, e.group)
        e = e.coords
    if len(e) != H.group.ambient_rank:
        raise DimensionMismatch("element length does not match the ambient rank")
    return in_echelon_lattice(H.lattice.tolist(), e)


def quotient(G: FgAbelianGroup, H: Subgroup) -> FgAbelianGroup:
    """``G / H`` as ``Z^n / M``; representatives carry over unchanged."""
    if H.group.ambient_rank != G.ambient_rank:
        raise GroupMismatch("subgroup lives in a different ambient group")
    return FgAbelianGroup(G.ambient_rank, H.lattice)


def _cyclic_subgroups(G: FgAbelianGroup) -> list[IntMatrix]:
    """Distinct cyclic subgroups, one lattice each.

    ``k*e`` generates the same subgroup as ``e`` whenever ``k`` is prime to
    the order of ``e``; those multiples are skipped instead of reduced.
    """
    order = G.order()
    seen: set[tuple[int, ...]] = set()
    found: dict[tuple, IntMatrix] = {}
    for e in G.elements():
        c = e.canonical
        if c in seen:
            continue
        lat = _lattice_of(G, [c])
        found.setdefault(_key(lat), lat)
        k_order = order // prod(lat[i, i] for i in range(lat.rows))
        for k in range(1, k_order + 1):
            if gcd(k, k_order) == 1:
                seen.add(G.reduce([k * x for x in c]))
    return list(found.values())


def enumerate_subgroups(G: FgAbelianGroup, bound: int = DEFAULT_ORDER_BOUND) -> list[Subgroup]:
    """Every subgroup of a finite group, sorted by canonical lattice.

    Each subgroup is a join of cyclic subgroups, so closing the set of
    cyclic subgroups under joins with a cyclic one reaches all of them.
    """
    if not has_finitely_many_subgroups(G):
        raise InfiniteGroup(G.torsion, G.free_rank)
    if G.order() > bound:
        raise BoundExceeded(f"group order {G.order()} exceeds the enumeration bound {bound}")
    cyclic = _cyclic_subgroups(G)
    found = {_key(c): c for c in cyclic}
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for lat in frontier:
            for c in cyclic:
                j = hnf_basis(lat.vstack(c))
                k = _key(j)
                if k not in found:
                    found[k] = j
                    nxt.append(j)
        frontier = nxt
    return [Subgroup(G, found[k]) for k in sorted(found)]


def subgroups_containing(
    G: FgAbelianGroup, N: Subgroup, bound: int = DEFAULT_ORDER_BOUND
) -> list[Subgroup]:
    """Subgroups of ``G`` containing ``N``, via the subgroups of ``G/N``."""
    Q = quotient(G, N)
    if not Q.is_finite:
        raise InfinitelyMany(Q.torsion, Q.free_rank)
    return [Subgroup(G, S.lattice) for S in enumerate_subgroups(Q, bound)]


def count_divisors(l: int) -> int:
    if l < 1:
        raise ValueError(f"count_divisors needs a positive integer, got {l}")
    count = 0
    for d in range(1, isqrt(l) + 1):
        if l % d == 0:
            count += 1 if d * d == l else 2
    return count


def group_from_json(data: dict) -> tuple[FgAbelianGroup, list[GroupElement]]:
    """Parse ``{"ambient_rank": n, "relations": [...], "generators": [...]}``."""
    n = data["ambient_rank"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"ambient_rank must be a nonnegative integer, got {n!r}")
    G = group_from_relations(n, IntMatrix.from_rows(data.get("relations", []), cols=n))
    gens = [G.element(g) for g in data.get("generators", [])]
    return G, gens
