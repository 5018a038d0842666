"""Finitely presented exact categories and their dense (co)resolving classes.

Objects are multiplicity vectors over a fixed list of indecomposables, as in
a Krull-Schmidt category.  A presentation lists short exact sequences as
triples ``(sub, mid, ext)`` of such vectors together with a generator
family.  From that data we get K0, the image of the generators in it, and
the subgroups of K0 containing that image; each such subgroup ``H``
corresponds to the dense subcategory of objects whose class lies in ``H``.

Verification works on the finite box of objects with every multiplicity at
most some bound, and is only sound when the SES list is known to be
exhaustive on that box (``ses_complete_bound``).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .abelian import (
    DEFAULT_ORDER_BOUND,
    FgAbelianGroup,
    GroupElement,
    Subgroup,
    contains,
    group_from_relations,
    subgroup_generated,
    subgroups_containing,
)
from .intlinalg import DimensionMismatch, IntMatrix

log = logging.getLogger(__name__)

VARIANTS = ("resolving", "coresolving")

Vector = tuple[int, ...]


class PresentationError(ValueError):
    pass


class IncompleteSES(ValueError):
    pass


@dataclass(frozen=True)
class SES:
    sub: Vector
    mid: Vector
    ext: Vector

    def relation(self) -> Vector:
        return tuple(a - b + c for a, b, c in zip(self.sub, self.mid, self.ext))

    def within(self, bound: int) -> bool:
        return all(x <= bound for v in (self.sub, self.mid, self.ext) for x in v)


@dataclass(frozen=True)
class ExactCatPresentation:
    indecomposables: tuple[str, ...]
    ses_list: tuple[SES, ...] = ()
    generators: tuple[Vector, ...] = ()
    ses_complete_bound: int | None = None

    def __post_init__(self):
        n = len(self.indecomposables)
        if len(set(self.indecomposables)) != n:
            raise PresentationError("indecomposable names must be distinct")
        vecs = [v for s in self.ses_list for v in (s.sub, s.mid, s.ext)] + list(self.generators)
        for v in vecs:
            _check_vector(v, n)
        if self.ses_complete_bound is not None and self.ses_complete_bound < 0:
            raise PresentationError("ses_complete_bound must be nonnegative")

    @property
    def rank(self) -> int:
        return len(self.indecomposables)

    def with_split(self, bound: int | None = None) -> ExactCatPresentation:
        """Add every split sequence ``a -> a+c -> c`` with ``a+c`` inside the bound."""
        bound = self.ses_complete_bound if bound is None else bound
        if bound is None:
            raise PresentationError("split sequences need a bound")
        split = [SES(a, tuple(x + y for x, y in zip(a, c)), c)
                 for a in box(self.rank, bound) for c in box(self.rank, bound)
                 if all(x + y <= bound for x, y in zip(a, c))]
        seen = set(self.ses_list)
        extra = tuple(s for s in split if s not in seen)
        return ExactCatPresentation(
            self.indecomposables, self.ses_list + extra, self.generators, self.ses_complete_bound
        )

    def vector(self, obj: Mapping[str, int]) -> Vector:
        """Multiplicity vector of ``{"name": multiplicity}``; missing names count 0."""
        unknown = set(obj) - set(self.indecomposables)
        if unknown:
            raise PresentationError(f"unknown indecomposables: {sorted(unknown)}")
        return tuple(obj.get(name, 0) for name in self.indecomposables)

    def describe(self, v: Sequence[int]) -> str:
        parts = []
        for name, m in zip(self.indecomposables, v):
            if m == 1:
                parts.append(name)
            elif m:
                parts.append(f"{name}^{m}")
        return " + ".join(parts) if parts else "0"

    @classmethod
    def from_json(cls, data: Mapping) -> ExactCatPresentation:
        names = tuple(data.get("indecomposables", ()))
        if not all(isinstance(x, str) for x in names):
            raise PresentationError("indecomposables must be a list of names")
        bound = data.get("ses_complete_bound")
        if bound is not None and (isinstance(bound, bool) or not isinstance(bound, int)):
            raise PresentationError("ses_complete_bound must be an integer")
        shell = cls(names, ses_complete_bound=bound)
        try:
            ses = tuple(
                SES(shell.vector(s.get("sub", {})), shell.vector(s.get("mid", {})),
                    shell.vector(s.get("ext", {})))
                for s in data.get("ses", ())
            )
            gens = tuple(shell.vector(g) for g in data.get("generators", ()))
        except (AttributeError, TypeError, ValueError) as exc:
            raise PresentationError(f"malformed presentation: {exc}") from exc
        P = cls(names, ses, gens, bound)
        if data.get("include_split"):
            P = P.with_split()
        return P

    def to_json(self) -> dict:
        def obj(v):
            return {k: m for k, m in zip(self.indecomposables, v) if m}

        return {
            "indecomposables": list(self.indecomposables),
            "ses": [{"sub": obj(s.sub), "mid": obj(s.mid), "ext": obj(s.ext)} for s in self.ses_list],
            "generators": [obj(g) for g in self.generators],
            "ses_complete_bound": self.ses_complete_bound,
        }


def _check_vector(v: Sequence[int], n: int) -> None:
    if len(v) != n:
        raise PresentationError(f"vector {list(v)} has length {len(v)}, expected {n}")
    for x in v:
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise PresentationError(f"multiplicities must be nonnegative integers: {list(v)}")


def box(n: int, bound: int) -> list[Vector]:
    """All multiplicity vectors of length n with entries in ``[0, bound]``."""
    if bound < 0:
        return []
    return list(product(range(bound + 1), repeat=n))


@dataclass(frozen=True)
class K0Result:
    group: FgAbelianGroup

    def class_of(self, v: Sequence[int]) -> GroupElement:
        return self.group.element(v)


@dataclass(frozen=True)
class DenseClass:
    subgroup: Subgroup

    def __str__(self):
        return str(self.subgroup)


def k0(P: ExactCatPresentation) -> K0Result:
    """Grothendieck group: ``Z^n`` modulo ``[sub] - [mid] + [ext]`` for every SES."""
    rel = IntMatrix.from_rows([s.relation() for s in P.ses_list], cols=P.rank)
    return K0Result(group_from_relations(P.rank, rel))


def generator_image(P: ExactCatPresentation, k: K0Result | None = None) -> Subgroup:
    k = k0(P) if k is None else k
    return subgroup_generated(k.group, [k.class_of(g) for g in P.generators])


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def classify(
    P: ExactCatPresentation, variant: str = "resolving", order_bound: int = DEFAULT_ORDER_BOUND
) -> list[DenseClass]:
    """Dense classes, one per subgroup of K0 containing the generator image.

    Dense resolving and dense coresolving subcategories are both exactly the
    dense subcategories closed under the relation ``[A] - [B] + [C] = 0`` in
    every direction, so ``variant`` only selects the label.  Raises
    :class:`~k0dense.abelian.InfinitelyMany` when K0 modulo the generator
    image is infinite.
    """
    _check_variant(variant)
    k = k0(P)
    return [DenseClass(H) for H in subgroups_containing(k.group, generator_image(P, k), order_bound)]


def g_membership(P: ExactCatPresentation, cls: DenseClass, obj: Sequence[int],
                 k: K0Result | None = None) -> bool:
    """Whether the object lies in the dense subcategory attached to ``cls``."""
    if len(obj) != P.rank:
        raise DimensionMismatch(f"object of length {len(obj)}, expected {P.rank}")
    k = k0(P) if k is None else k
    return contains(cls.subgroup, k.class_of(obj))


def f_subgroup(P: ExactCatPresentation, objects: Iterable[Sequence[int]],
               k: K0Result | None = None) -> Subgroup:
    k = k0(P) if k is None else k
    return subgroup_generated(k.group, [k.class_of(v) for v in objects])


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    class_index: int | None = None

    def to_json(self) -> dict:
        return {"check": self.name, "class": self.class_index, "passed": self.passed,
                "detail": self.detail}


@dataclass
class VerificationReport:
    bound: int
    members: list[list[Vector]] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self, name: str) -> bool:
        return any(not c.passed for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {"bound": self.bound, "passed": self.passed,
                "members": [[list(v) for v in S] for S in self.members],
                "checks": [c.to_json() for c in self.checks]}


def _require_complete(P: ExactCatPresentation, bound: int) -> None:
    if P.ses_complete_bound is None or P.ses_complete_bound < bound:
        raise IncompleteSES(
            f"SES list is exhaustive only up to {P.ses_complete_bound}, need {bound}"
        )


def verify_bijection(P: ExactCatPresentation, bound: int,
                     classes: Sequence[DenseClass] | None = None) -> VerificationReport:
    """Brute-force check of the class/subgroup correspondence on a bounded box.

    For each class ``H`` the bounded member set ``S = g(H) ∩ box`` is tested
    for: generator containment, closure under listed sequences inside the
    box (two terms in S force the third), closure under direct sums,
    bounded density, ``f(S) = H``, ``g(f(S)) ∩ box = S``, and maximality.
    Distinct classes must give distinct member sets.  The roundtrip,
    maximality and injectivity checks are skipped (and say so) when the
    bound is below twice the largest generator multiplicity.  ``classes``
    may be passed explicitly, e.g. to run a negative control.
    """
    _require_complete(P, bound)
    k = k0(P)
    if classes is None:
        classes = classify(P)
    objs = box(P.rank, bound)
    ses = [s for s in P.ses_list if s.within(bound)]
    half = bound // 2
    report = VerificationReport(bound)
    # below twice the largest generator the box may be too small to see H
    need = 2 * max((x for g in P.generators for x in g), default=0)
    exhaustive = bound >= need
    skip = f"skipped: bound {bound} is below {need}"

    for idx, cls in enumerate(classes):
        H = cls.subgroup
        members = [v for v in objs if g_membership(P, cls, v, k)]
        mset = set(members)
        report.members.append(members)

        def add(name, bad, fmt):
            detail = fmt(bad) if bad is not None else ""
            report.checks.append(Check(name, bad is None, detail, idx))

        add("generators",
            next((g for g in P.generators if max(g, default=0) <= bound and g not in mset), None),
            lambda g: f"generator {P.describe(g)} is not a member")
        add("ses_closure",
            next((s for s in ses if sum(v in mset for v in (s.sub, s.mid, s.ext)) == 2), None),
            lambda s: f"{P.describe(s.sub)} -> {P.describe(s.mid)} -> {P.describe(s.ext)} "
                      "has exactly two terms in the class")

        def sum_failure():
            for v in members:
                for w in members:
                    u = tuple(a + b for a, b in zip(v, w))
                    if max(u, default=0) <= bound and u not in mset:
                        return v, w
            return None

        add("direct_sum", sum_failure(),
            lambda vw: f"{P.describe(vw[0])} + {P.describe(vw[1])} is not a member")

        def density_failure():
            for v in box(P.rank, half):
                if not any(tuple(a + b for a, b in zip(v, w)) in mset
                           for w in objs if all(a + b <= bound for a, b in zip(v, w))):
                    return v
            return None

        add("density", density_failure(),
            lambda v: f"no complement for {P.describe(v)} inside the box")

        if not exhaustive:
            for name in ("roundtrip_fg", "roundtrip_gf", "maximality"):
                report.checks.append(Check(name, True, skip, idx))
            continue
        fS = f_subgroup(P, members, k)
        add("roundtrip_fg", None if fS == H else fS,
            lambda s: f"f(S) = {s}, expected {H}")
        gf = [v for v in objs if contains(fS, k.class_of(v))]
        add("roundtrip_gf", None if gf == members else gf,
            lambda s: f"g(f(S)) has {len(s)} bounded members, S has {len(members)}")
        add("maximality",
            next((v for v in objs if v not in mset and f_subgroup(P, members + [v], k) == H), None),
            lambda v: f"adding {P.describe(v)} does not change f")

    if not exhaustive:
        report.checks.append(Check("injectivity", True, skip))
        return report
    seen: dict[tuple, int] = {}
    clash = None
    for idx, members in enumerate(report.members):
        key = tuple(members)
        if key in seen:
            clash = (seen[key], idx)
            break
        seen[key] = idx
    report.checks.append(Check(
        "injectivity", clash is None,
        f"classes {clash[0]} and {clash[1]} have the same bounded members" if clash else "",
    ))
    log.debug("verified %d classes at bound %d", len(classes), bound)
    return report


def verify_generator(P: ExactCatPresentation) -> bool:
    """Whether every object up to the checkable bound has a listed SES
    ``A -> G -> X`` with ``G`` a direct sum of generators.

    Objects are checked up to ``ses_complete_bound`` minus the largest
    generator multiplicity.  The zero object is covered by ``0 -> 0 -> 0``.
    """
    if P.ses_complete_bound is None:
        raise IncompleteSES("verify_generator needs ses_complete_bound")
    top = max((x for g in P.generators for x in g), default=0)
    limit = P.ses_complete_bound - top
    gens = tuple(sorted({g for g in P.generators if any(g)}))

    @lru_cache(maxsize=None)
    def in_span(t: Vector, start: int = 0) -> bool:
        if not any(t):
            return True
        for i in range(start, len(gens)):
            r = tuple(a - b for a, b in zip(t, gens[i]))
            if min(r) >= 0 and in_span(r, i):
                return True
        return False

    by_ext: dict[Vector, list[SES]] = {}
    for s in P.ses_list:
        by_ext.setdefault(s.ext, []).append(s)
    for v in box(P.rank, limit):
        if any(v) and not any(in_span(s.mid) for s in by_ext.get(v, ())):
            log.debug("no generator cover listed for %s", P.describe(v))
            return False
    return True
