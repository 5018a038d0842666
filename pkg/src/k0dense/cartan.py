"""Monomial quiver algebras: path bases, Cartan matrices, dense class counts.

For a quiver with monomial relations the paths that avoid every relation as
a contiguous subpath form a basis of the algebra, so ``dim e_i A e_j`` is a
path count.  Paths compose left to right (the first arrow is applied
first) and the Cartan entry ``(i, j)`` counts nonzero paths from ``i`` to
``j``.  Every count reported here is invariant under transposing the
matrix, so that convention never changes a result.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Mapping, Sequence

from .abelian import (
    FgAbelianGroup,
    count_divisors,
    group_from_relations,
    subgroup_generated,
    subgroups_containing,
)
from .intlinalg import IntMatrix, snf

__all__ = [
    "Arrow",
    "Path",
    "QuiverAlgebra",
    "CartanReport",
    "InfiniteDimensional",
    "QuiverError",
    "nonzero_paths",
    "cartan_matrix",
    "dense_resolving_count",
    "enumeration_count",
]


class QuiverError(ValueError):
    pass


class InfiniteDimensional(ValueError):
    """The relations leave infinitely many nonzero paths.

    ``cycle`` is an arrow sequence that can be repeated forever without
    ever containing a relation.
    """

    def __init__(self, cycle: Sequence[str]):
        self.cycle = tuple(cycle)
        super().__init__(
            "algebra is infinite-dimensional: the cycle "
            + " ".join(self.cycle)
            + " can be repeated without hitting a relation"
        )


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return " ".join(self.arrows) if self.arrows else f"e{self.source}"


@dataclass(frozen=True)
class QuiverAlgebra:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    relations: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex names must be distinct")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("arrow names must be distinct")
        verts = set(self.vertices)
        for a in self.arrows:
            if a.source not in verts or a.target not in verts:
                raise QuiverError(f"arrow {a.name} joins unknown vertices")
        by_name = self.arrow_map
        for rel in self.relations:
            if len(rel) < 2:
                raise QuiverError(
                    f"relation {list(rel)} has length < 2; relations must lie in the square of the arrow ideal"
                )
            for x in rel:
                if x not in by_name:
                    raise QuiverError(f"relation {list(rel)} uses unknown arrow {x!r}")
            for x, y in zip(rel, rel[1:]):
                if by_name[x].target != by_name[y].source:
                    raise QuiverError(f"relation {list(rel)} is not a composable path")

    @property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @classmethod
    def from_json(cls, data: Mapping) -> QuiverAlgebra:
        try:
            verts = tuple(str(v) for v in data["vertices"])
            arrows = tuple(Arrow(str(a["name"]), str(a["from"]), str(a["to"]))
                           for a in data.get("arrows", ()))
        except (KeyError, TypeError) as exc:
            raise QuiverError(f"malformed quiver: {exc}") from exc
        rels = []
        for r in data.get("relations", ()):
            if not isinstance(r, list) or not all(isinstance(x, str) for x in r):
                raise QuiverError(
                    f"relation {r!r} is not a list of arrow names; only monomial relations are supported"
                )
            rels.append(tuple(r))
        return cls(verts, arrows, tuple(rels))

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in self.arrows],
            "relations": [list(r) for r in self.relations],
        }


class _Automaton:
    """Tracks the longest suffix of the current path that is a proper prefix
    of some relation; a step is dead when it completes a relation."""

    def __init__(self, Q: QuiverAlgebra):
        self.out: dict[str, list[Arrow]] = {v: [] for v in Q.vertices}
        for a in Q.arrows:
            self.out[a.source].append(a)
        self.relations = set(Q.relations)
        self.prefixes = {r[:i] for r in Q.relations for i in range(len(r))}

    def step(self, state: tuple[str, ...], arrow: str) -> tuple[str, ...] | None:
        w = state + (arrow,)
        if any(w[i:] in self.relations for i in range(len(w))):
            return None
        for i in range(len(w) + 1):
            if w[i:] in self.prefixes:
                return w[i:]
        return ()

    def moves(self, vertex: str, state: tuple[str, ...]):
        for a in self.out[vertex]:
            nxt = self.step(state, a.name)
            if nxt is not None:
                yield a, nxt


def _find_cycle(Q: QuiverAlgebra, auto: _Automaton) -> list[str] | None:
    white, grey, black = 0, 1, 2
    colour: dict = {}
    for v in Q.vertices:
        start = (v, ())
        if colour.get(start, white) != white:
            continue
        colour[start] = grey
        stack = [(start, iter(auto.moves(*start)))]
        trail: list[str] = []
        while stack:
            node, it = stack[-1]
            step = next(it, None)
            if step is None:
                colour[node] = black
                stack.pop()
                if trail:
                    trail.pop()
                continue
            arrow, state = step
            child = (arrow.target, state)
            c = colour.get(child, white)
            if c == grey:
                pos = next(i for i, (n, _) in enumerate(stack) if n == child)
                return trail[pos:] + [arrow.name]
            if c == white:
                colour[child] = grey
                trail.append(arrow.name)
                stack.append((child, iter(auto.moves(*child))))
    return None


def nonzero_paths(Q: QuiverAlgebra) -> list[Path]:
    """Basis paths of the algebra, trivial paths included.

    Raises :class:`InfiniteDimensional` when the path automaton has a cycle.
    """
    auto = _Automaton(Q)
    cycle = _find_cycle(Q, auto)
    if cycle is not None:
        raise InfiniteDimensional(cycle)
    paths = []
    for v in Q.vertices:
        stack = [(v, (), ())]
        while stack:
            here, state, arrows = stack.pop()
            paths.append(Path(v, here, arrows))
            for a, nxt in auto.moves(here, state):
                stack.append((a.target, nxt, arrows + (a.name,)))
    order = {v: i for i, v in enumerate(Q.vertices)}
    paths.sort(key=lambda p: (order[p.source], len(p), p.arrows))
    return paths


def cartan_matrix(Q: QuiverAlgebra) -> IntMatrix:
    idx = {v: i for i, v in enumerate(Q.vertices)}
    n = len(Q.vertices)
    c = [[0] * n for _ in range(n)]
    for p in nonzero_paths(Q):
        c[idx[p.source]][idx[p.target]] += 1
    return IntMatrix.from_rows(c, cols=n)


@dataclass(frozen=True)
class CartanReport:
    matrix: IntMatrix
    invariant_factors: tuple[int, ...]
    determinant: int
    count: int | None
    cokernel: FgAbelianGroup

    @property
    def finite(self) -> bool:
        return self.count is not None

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.tolist(),
            "determinant": self.determinant,
            "invariant_factors": list(self.invariant_factors),
            "count": self.count if self.finite else "INFINITE",
            "cokernel": {"torsion": list(self.cokernel.torsion),
                         "free_rank": self.cokernel.free_rank},
        }


def dense_resolving_count(Q: QuiverAlgebra) -> CartanReport:
    """Number of dense resolving subcategories of ``mod A``.

    Finite exactly when the Cartan determinant is nonzero, and then equal
    to the product of ``d(m)`` over the elementary divisors ``m``.
    """
    C = cartan_matrix(Q)
    factors = snf(C).invariant_factors
    det = C.det()
    count = prod(count_divisors(m) for m in factors) if det else None
    return CartanReport(C, factors, det, count, group_from_relations(C.cols, C))


def enumeration_count(report: CartanReport, bound: int = 10**4) -> int | None:
    """Count the same classes by listing subgroups of ``Z^n`` over the rows
    of the Cartan matrix; None when the cokernel is infinite or too big."""
    Q = report.cokernel
    if not Q.is_finite or Q.order() > bound:
        return None
    n = report.matrix.cols
    free = group_from_relations(n, IntMatrix.zeros(0, n))
    N = subgroup_generated(free, [report.matrix.row(i) for i in range(report.matrix.rows)])
    return len(subgroups_containing(free, N, bound))
