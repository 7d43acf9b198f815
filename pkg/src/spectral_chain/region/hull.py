"""Connected hull, hole enumeration and the nested-pair check.

The hull of ``K`` is the complement of the unbounded component of ``C \\ K``.
Filling every circle to its disk gives a set ``F`` with ``K ⊆ F ⊆ ηK``; when
``F`` itself has no holes, ``ηK = F``. Holes of ``F`` are detected through the
nerve of the (convex) filled primitives: by the nerve theorem ``F`` has the
first homology of that simplicial complex, and a compact plane set has no
holes exactly when that group vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from ..errors import PreconditionViolated, UnsupportedConfiguration
from ..linalg import ExactMatrix, rank
from .core import (
    SpectralRegion,
    boundary,
    canonicalize,
    primitive_in_region,
    subset,
    union,
)
from .primitives import (
    Circle,
    ClosedDisk,
    Primitive,
    filled,
    in_open_disk,
    meets_open_disk,
    prim_intersection,
    prim_intersects,
    prim_subset,
    probe_points,
)


@dataclass(frozen=True)
class Hole:
    """A bounded component of the complement: the open disk inside ``boundary``
    minus the closed set ``excluded`` (the filled primitives lying inside it)."""

    boundary: Circle
    excluded: SpectralRegion
    open: bool = True

    @property
    def outer_closure(self) -> SpectralRegion:
        return SpectralRegion((ClosedDisk(self.boundary.center, self.boundary.radius),), _trusted=True)

    def contains(self, z) -> bool:
        from .primitives import _pt

        pt = _pt(z) if not isinstance(z, tuple) else z
        return in_open_disk(self.boundary, pt) and not self.excluded.contains(pt)

    def to_json(self) -> dict:
        return {
            "open": True,
            "outer_closure": self.outer_closure.to_json(),
            "excluded": self.excluded.to_json(),
        }


@dataclass(frozen=True)
class HullReport:
    hull: SpectralRegion
    holes: tuple[Hole, ...]
    component_count: int

    def to_json(self) -> dict:
        return {
            "hull": self.hull.to_json(),
            "holes": [h.to_json() for h in self.holes],
            "component_count": self.component_count,
        }


def _components(prims: Sequence[Primitive]) -> list[list[int]]:
    n = len(prims)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in combinations(range(n), 2):
        if find(i) != find(j) and prim_intersects(prims[i], prims[j]):
            parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _triple_meets(x: Primitive, y: Primitive, z: Primitive) -> bool | None:
    """Whether three pairwise-meeting convex primitives share a point (None if undecided)."""
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        if prim_subset(a, c) or prim_subset(b, c):
            return True
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        try:
            pieces = prim_intersection(a, b)
        except UnsupportedConfiguration:
            continue
        return any(prim_intersects(p, c) for p in pieces)
    return None


def _first_homology_rank(prims: Sequence[Primitive], assume_filled: bool) -> tuple[int, bool]:
    """Rank of H1 of the nerve; undecided triangles count as filled iff ``assume_filled``."""
    n = len(prims)
    edges = [(i, j) for i, j in combinations(range(n), 2) if prim_intersects(prims[i], prims[j])]
    if not edges:
        return 0, False
    comps = len(_components(prims))
    cycles = len(edges) - n + comps
    if cycles == 0:
        return 0, False
    edge_index = {e: k for k, e in enumerate(edges)}
    adjacent = set(edges)
    rows = []
    undecided = False
    for i, j, k in combinations(range(n), 3):
        if (i, j) in adjacent and (i, k) in adjacent and (j, k) in adjacent:
            meets = _triple_meets(prims[i], prims[j], prims[k])
            if meets is None:
                undecided = True
                meets = assume_filled
            if meets:
                row = [0] * len(edges)
                row[edge_index[(j, k)]] = 1
                row[edge_index[(i, k)]] = -1
                row[edge_index[(i, j)]] = 1
                rows.append(row)
    r2 = rank(ExactMatrix.from_rows(rows)) if rows else 0
    return cycles - r2, undecided


def _holes_of(prims: Sequence[Primitive]) -> list[Hole]:
    holes = []
    for c in prims:
        if not isinstance(c, Circle):
            continue
        disk = ClosedDisk(c.center, c.radius)
        inside: list[Primitive] = []
        for p in prims:
            if p is c or not meets_open_disk(p, c):
                continue
            if prim_subset(p, disk):
                inside.append(p)
            else:
                raise UnsupportedConfiguration("a primitive crosses a circle", circle=c, primitive=p)
        fill = [filled(p) for p in inside]
        for group in _components(fill):
            touch = set()
            for idx in group:
                for piece in prim_intersection(inside[idx], c):
                    touch.add(piece)
            if len(touch) >= 2:
                raise UnsupportedConfiguration(
                    "a cluster inside a circle touches it more than once, splitting the hole", circle=c
                )
        holes.append(Hole(boundary=c, excluded=canonicalize(fill)))
    holes.sort(key=lambda h: h.boundary.sort_key())
    return holes


def connected_hull(r: SpectralRegion) -> HullReport:
    prims = r.primitives
    if not prims:
        return HullReport(hull=r, holes=(), component_count=0)
    fill = [filled(p) for p in prims]
    h1, undecided = _first_homology_rank(fill, assume_filled=True)
    if h1 > 0:
        raise UnsupportedConfiguration("the filled region has holes not bounded by a single circle")
    if undecided and _first_homology_rank(fill, assume_filled=False)[0] > 0:
        raise UnsupportedConfiguration("cannot decide whether three primitives share a point")
    holes = _holes_of(prims)
    return HullReport(hull=canonicalize(fill), holes=tuple(holes), component_count=len(_components(prims)))


def hull(r: SpectralRegion) -> SpectralRegion:
    return connected_hull(r).hull


def has_no_holes(r: SpectralRegion) -> bool:
    return not connected_hull(r).holes


# ---------------------------------------------------------------- nested pairs


def hole_inside(hole: Hole, k: SpectralRegion) -> bool:
    """``Ω ⊆ K`` for the hole ``Ω``; exact because ``Ω ∩ excluded = ∅``."""
    disk = ClosedDisk(hole.boundary.center, hole.boundary.radius)
    return primitive_in_region(disk, union(k, hole.excluded))


def hole_misses(hole: Hole, k: SpectralRegion, h: SpectralRegion) -> bool:
    """``Ω ∩ K = ∅`` where ``Ω`` is a hole of ``h``."""
    for p in k.primitives:
        if not meets_open_disk(p, hole.boundary):
            continue
        if primitive_in_region(p, h) or primitive_in_region(p, hole.excluded):
            continue
        for z in probe_points(p):
            if hole.contains(z):
                return False
        raise UnsupportedConfiguration("cannot decide whether a hole meets a region", primitive=p)
    return True


@dataclass(frozen=True)
class PocetnaReport:
    conclusions: dict[str, bool]
    filled_holes: tuple[int, ...]
    holes: tuple[Hole, ...]
    hull: SpectralRegion
    passed: bool = field(default=False)

    def to_json(self) -> dict:
        return {
            "conclusions": dict(sorted(self.conclusions.items())),
            "filled_holes": list(self.filled_holes),
            "holes": [h.to_json() for h in self.holes],
            "hull": self.hull.to_json(),
            "passed": self.passed,
        }


def check_pocetna(h: SpectralRegion, k: SpectralRegion) -> PocetnaReport:
    """Given ``∂K ⊆ H ⊆ K``, check every consequence of that nesting.

    Conclusions: ``∂K ⊆ ∂H``, ``∂H ⊆ H``, ``H ⊆ K``, ``K ⊆ ηK``, ``ηK = ηH``,
    each hole of ``H`` lies in ``K`` or misses it, and ``K`` is ``H`` with
    some of those holes filled in.
    """
    bk = boundary(k)
    if not subset(bk, h):
        raise PreconditionViolated("boundary of K is not contained in H")
    if not subset(h, k):
        raise PreconditionViolated("H is not contained in K")
    bh = boundary(h)
    hk, hh = connected_hull(k), connected_hull(h)
    filled_idx = []
    dichotomy = True
    for i, hole in enumerate(hh.holes):
        if hole_inside(hole, k):
            filled_idx.append(i)
        elif not hole_misses(hole, k, h):
            dichotomy = False
    refill = h
    for i in filled_idx:
        refill = union(refill, hh.holes[i].outer_closure)
    conclusions = {
        "boundary_K_in_boundary_H": subset(bk, bh),
        "boundary_H_in_H": subset(bh, h),
        "H_in_K": True,
        "K_in_hull_K": subset(k, hk.hull),
        "hull_K_equals_hull_H": hk.hull == hh.hull,
        "holes_inside_or_outside_K": dichotomy,
        "K_is_H_with_holes_filled": dichotomy and subset(k, refill) and subset(k, hh.hull),
    }
    return PocetnaReport(
        conclusions=conclusions,
        filled_holes=tuple(filled_idx),
        holes=hh.holes,
        hull=hh.hull,
        passed=all(conclusions.values()),
    )
