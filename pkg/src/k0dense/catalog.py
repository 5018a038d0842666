"""Grothendieck groups of the two-dimensional simple singularities.

Each entry stores ``K0(mod R)`` as ``Z + torsion`` with the free summand
generated by ``[R]``, plus the expected number of dense resolving
subcategories.  The expected number is never returned as the answer; it
is compared against a fresh count of subgroups containing ``[R]``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    FgAbelianGroup,
    count_divisors,
    group_from_relations,
    subgroup_generated,
    subgroups_containing,
)

TYPES = ("a_n", "d_n", "e6", "e7", "e8")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class SingularityEntry:
    type_tag: str
    parameter: int | None
    k0: FgAbelianGroup
    expected_count: int

    @property
    def name(self) -> str:
        if self.parameter is None:
            return self.type_tag.upper()
        return f"{self.type_tag.split('_')[0].upper()}{self.parameter}"

    def r_class(self):
        return self.k0.element((1,) + (0,) * (self.k0.ambient_rank - 1))

    def count(self) -> int:
        N = subgroup_generated(self.k0, [self.r_class()])
        return len(subgroups_containing(self.k0, N))

    def to_json(self) -> dict:
        got = self.count()
        return {
            "type": self.type_tag,
            "n": self.parameter,
            "k0": str(self.k0),
            "count": got,
            "expected": self.expected_count,
            "agrees": got == self.expected_count,
        }


def _k0(torsion: tuple[int, ...]) -> FgAbelianGroup:
    n = 1 + len(torsion)
    rows = [[0] * n for _ in torsion]
    for i, t in enumerate(torsion):
        rows[i][i + 1] = t
    return group_from_relations(n, rows)


def entry(type_tag: str, n: int | None = None) -> SingularityEntry:
    """Catalog row for ``a_n`` (n >= 1), ``d_n`` (n >= 4), ``e6``, ``e7``, ``e8``."""
    if type_tag == "a_n":
        if n is None or n < 1:
            raise CatalogError("a_n needs n >= 1")
        return SingularityEntry("a_n", n, _k0((n + 1,)), count_divisors(n + 1))
    if type_tag in ("d_n", "d_n_even", "d_n_odd"):
        if n is None or n < 4:
            raise CatalogError("d_n needs n >= 4")
        if type_tag != "d_n" and type_tag != ("d_n_even" if n % 2 == 0 else "d_n_odd"):
            raise CatalogError(f"{type_tag} does not match the parity of n = {n}")
        if n % 2 == 0:
            return SingularityEntry("d_n_even", n, _k0((2, 2)), 5)
        return SingularityEntry("d_n_odd", n, _k0((4,)), 3)
    fixed = {"e6": ((3,), 2), "e7": ((2,), 2), "e8": ((), 1)}
    if type_tag in fixed:
        if n is not None:
            raise CatalogError(f"{type_tag} takes no parameter")
        torsion, expected = fixed[type_tag]
        return SingularityEntry(type_tag, None, _k0(torsion), expected)
    raise CatalogError(f"unknown singularity type {type_tag!r}")


def full_table(max_n: int) -> list[SingularityEntry]:
    rows = [entry("a_n", n) for n in range(1, max_n + 1)]
    rows += [entry("d_n", n) for n in range(4, max_n + 1)]
    rows += [entry(t) for t in ("e6", "e7", "e8")]
    return rows
