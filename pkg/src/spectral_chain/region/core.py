"""Compact plane regions as finite unions of primitives, in canonical form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from ..errors import InvalidInput, UnsupportedConfiguration
from ..scalar import ExactScalar
from .primitives import (
    Circle,
    ClosedDisk,
    Point,
    Primitive,
    Pt,
    Segment,
    _param,
    _pt,
    _scalar,
    collinear,
    contains_point,
    cross,
    dist2,
    in_open_disk,
    lerp,
    meets_open_disk,
    prim_intersection,
    prim_intersects,
    prim_subset,
    primitive_from_json,
    probe_points,
    seg_circle_params,
)


class SpectralRegion:
    """A compact subset of the plane: a canonical finite union of primitives.

    Build values through ``canonicalize`` (or ``SpectralRegion.from_primitives``);
    two canonical regions are equal as point sets iff their primitive tuples are.
    """

    __slots__ = ("primitives", "_hash")

    def __init__(self, primitives: tuple[Primitive, ...] = (), _trusted: bool = False) -> None:
        if not _trusted:
            primitives = canonicalize(primitives).primitives
        self.primitives: tuple[Primitive, ...] = tuple(primitives)
        self._hash: int | None = None

    canonical = True

    @classmethod
    def from_primitives(cls, primitives: Iterable[Primitive]) -> "SpectralRegion":
        return canonicalize(list(primitives))

    @classmethod
    def empty(cls) -> "SpectralRegion":
        return cls((), _trusted=True)

    @classmethod
    def from_json(cls, data: object) -> "SpectralRegion":
        if not isinstance(data, dict) or not isinstance(data.get("primitives"), list):
            raise InvalidInput("region JSON must be an object with a 'primitives' list")
        return canonicalize([primitive_from_json(p) for p in data["primitives"]])

    def to_json(self) -> dict:
        return {"primitives": [p.to_json() for p in self.primitives]}

    def is_empty(self) -> bool:
        return not self.primitives

    def contains(self, z: ExactScalar | Pt) -> bool:
        pt = _pt(z) if isinstance(z, ExactScalar) else z
        return any(contains_point(p, pt) for p in self.primitives)

    def is_finite(self) -> bool:
        return all(isinstance(p, Point) for p in self.primitives)

    def points(self) -> list[ExactScalar]:
        return [p.center for p in self.primitives if isinstance(p, Point)]

    def __iter__(self):
        return iter(self.primitives)

    def __len__(self) -> int:
        return len(self.primitives)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpectralRegion):
            return NotImplemented
        return self.primitives == other.primitives

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.primitives)
        return self._hash

    def __repr__(self) -> str:
        return f"SpectralRegion({describe(self)})"

    def __or__(self, other: "SpectralRegion") -> "SpectralRegion":
        return union(self, other)

    def __le__(self, other: "SpectralRegion") -> bool:
        return subset(self, other)


def _fmt(p: Primitive) -> str:
    if isinstance(p, Point):
        return f"{{{p.center}}}"
    if isinstance(p, Segment):
        return f"[{p.a}, {p.b}]"
    if isinstance(p, Circle):
        return f"C({p.center}, {p.radius})"
    return f"D({p.center}, {p.radius})"


def describe(r: "SpectralRegion | OpenRegion") -> str:
    if isinstance(r, OpenRegion):
        return "open " + (" ∪ ".join(_fmt(p) for p in r.closures) or "∅")
    return " ∪ ".join(_fmt(p) for p in r.primitives) or "∅"


# ---------------------------------------------------------------- canonical form


def _merge_segments(segs: list[Segment]) -> list[Segment]:
    segs = list(dict.fromkeys(segs))
    changed = True
    while changed:
        changed = False
        for i, j in combinations(range(len(segs)), 2):
            s, t = segs[i], segs[j]
            if collinear(s, t) and prim_intersects(s, t):
                ends = sorted([s.a, s.b, t.a, t.b], key=lambda z: _param(s, _pt(z)))
                merged = Segment(ends[0], ends[-1])
                segs = [x for k, x in enumerate(segs) if k not in (i, j)] + [merged]
                changed = True
                break
    return segs


def _interval_cover(intervals: list[tuple[Fraction, Fraction]]) -> bool:
    """Do closed intervals cover [0, 1]?"""
    reach = Fraction(0)
    for lo, hi in sorted(intervals):
        if lo > reach:
            return False
        reach = max(reach, hi)
        if reach >= 1:
            return True
    return reach >= 1


def covered_by_union(p: Primitive, others: Sequence[Primitive]) -> bool:
    """Is ``p`` inside the union of ``others``, given no single one contains it?

    Segments are decided by exact interval cover. Circles and disks can only
    be covered by several disks; a rational probe point outside every
    primitive certifies "no", otherwise the configuration is unsupported.
    """
    if isinstance(p, Point):
        return False
    if isinstance(p, Segment):
        intervals: list[tuple[Fraction, Fraction]] = []
        inexact = []
        for q in others:
            if isinstance(q, Segment) and collinear(p, q):
                lo, hi = sorted((_param(p, q.pa), _param(p, q.pb)))
                intervals.append((lo, hi))
            elif isinstance(q, ClosedDisk) and meets_open_disk(p, q):
                try:
                    roots = seg_circle_params(p, q.xy, q.radius)
                except UnsupportedConfiguration:
                    inexact.append(q)
                    continue
                if roots is not None:
                    intervals.append(roots)
        if not inexact:
            return _interval_cover(intervals)
        relevant = [q for q in others if isinstance(q, (Segment, ClosedDisk))]
    else:
        relevant = [q for q in others if isinstance(q, ClosedDisk) and meets_open_disk(p, q)]
        if len(relevant) <= 1:
            return False
    for z in probe_points(p):
        if not any(contains_point(q, z) for q in relevant):
            return False
    raise UnsupportedConfiguration(
        "cannot decide whether a primitive is covered by a union of others", primitive=p
    )


def canonicalize(primitives: Iterable[Primitive]) -> SpectralRegion:
    prims = list(dict.fromkeys(primitives))
    for p in prims:
        if not isinstance(p, (Point, Segment, Circle, ClosedDisk)):
            raise InvalidInput(f"not a region primitive: {p!r}")
    segs = [p for p in prims if isinstance(p, Segment)]
    if len(segs) > 1:
        prims = [p for p in prims if not isinstance(p, Segment)] + _merge_segments(segs)
    # drop anything inside a single other primitive
    kept = [p for p in prims if not any(q is not p and q != p and prim_subset(p, q) for q in prims)]
    # then anything covered only by several others, lowest rank first
    kept.sort(key=lambda p: p.sort_key())
    result = list(kept)
    for p in kept:
        others = [q for q in result if q is not p]
        if any(prim_intersects(p, q) for q in others) and covered_by_union(p, others):
            result.remove(p)
    result.sort(key=lambda p: p.sort_key())
    return SpectralRegion(tuple(result), _trusted=True)


# ---------------------------------------------------------------- set operations


def union(a: SpectralRegion, b: SpectralRegion) -> SpectralRegion:
    if not b.primitives:
        return a
    if not a.primitives:
        return b
    return canonicalize(a.primitives + b.primitives)


def union_all(regions: Iterable[SpectralRegion]) -> SpectralRegion:
    prims: list[Primitive] = []
    for r in regions:
        prims.extend(r.primitives)
    return canonicalize(prims)


def primitive_in_region(p: Primitive, b: SpectralRegion) -> bool:
    if any(prim_subset(p, q) for q in b.primitives):
        return True
    touching = [q for q in b.primitives if prim_intersects(p, q)]
    if not touching:
        return False
    return covered_by_union(p, touching)


def subset(a: SpectralRegion, b: SpectralRegion) -> bool:
    return all(primitive_in_region(p, b) for p in a.primitives)


def intersection(a: SpectralRegion, b: SpectralRegion) -> SpectralRegion:
    pieces: list[Primitive] = []
    for p in a.primitives:
        for q in b.primitives:
            pieces.extend(prim_intersection(p, q))
    return canonicalize(pieces)


def accumulation(r: SpectralRegion) -> SpectralRegion:
    # canonical points lie on no other primitive, so they are isolated
    return SpectralRegion(tuple(p for p in r.primitives if not isinstance(p, Point)), _trusted=True)


def isolated_points(r: SpectralRegion) -> SpectralRegion:
    return SpectralRegion(tuple(p for p in r.primitives if isinstance(p, Point)), _trusted=True)


def is_line_contained(r: SpectralRegion) -> bool:
    """Every primitive is a point or segment on one common straight line."""
    pts: list[Pt] = []
    for p in r.primitives:
        if isinstance(p, Point):
            pts.append(p.xy)
        elif isinstance(p, Segment):
            pts.extend((p.pa, p.pb))
        else:
            return False
    distinct = list(dict.fromkeys(pts))
    if len(distinct) <= 2:
        return True
    o, a = distinct[0], distinct[1]
    return all(cross(o, a, z) == 0 for z in distinct[2:])


# ---------------------------------------------------------------- open sets


@dataclass(frozen=True)
class OpenRegion:
    """A finite union of open disks, stored as the closed disks with an open flag."""

    closures: tuple[ClosedDisk, ...] = ()
    open: bool = True

    def contains(self, z: ExactScalar | Pt) -> bool:
        pt = _pt(z) if isinstance(z, ExactScalar) else z
        return any(in_open_disk(d, pt) for d in self.closures)

    def is_empty(self) -> bool:
        return not self.closures

    def closure(self) -> SpectralRegion:
        return canonicalize(self.closures)

    def subset_of(self, b: SpectralRegion) -> bool:
        # b is closed, so an open disk lies in b iff its closure does
        return subset(self.closure(), b)

    def to_json(self) -> dict:
        return {"open": True, "primitives": [d.to_json() for d in self.closures]}


def _radical_value(c1: ClosedDisk, c2: ClosedDisk) -> tuple[Fraction, Fraction, Fraction]:
    # radical axis of two circles: 2 (c2 - c1) . x = |c2|^2 - r2^2 - |c1|^2 + r1^2
    (x1, y1), (x2, y2) = c1.xy, c2.xy
    return (
        2 * (x2 - x1),
        2 * (y2 - y1),
        x2 * x2 + y2 * y2 - c2.radius**2 - x1 * x1 - y1 * y1 + c1.radius**2,
    )


def _three_circles_concurrent(a: ClosedDisk, b: ClosedDisk, c: ClosedDisk) -> bool:
    l1, l2 = _radical_value(a, b), _radical_value(a, c)
    det = l1[0] * l2[1] - l1[1] * l2[0]
    if det:
        x = (l1[2] * l2[1] - l1[1] * l2[2]) / det
        y = (l1[0] * l2[2] - l1[2] * l2[0]) / det
        return dist2(a.xy, (x, y)) == a.radius**2
    # collinear centers: the radical axes are parallel; they coincide iff proportional
    same = l1[0] * l2[2] == l2[0] * l1[2] and l1[1] * l2[2] == l2[1] * l1[2]
    return same and prim_intersects(a.circle, b.circle)


def interior(r: SpectralRegion) -> OpenRegion:
    """Union of the open disks of ``r``.

    Lower-dimensional primitives add no interior. A point where three or more
    disk boundaries meet could be an interior point of the union that no open
    disk contains, so that configuration is rejected.
    """
    disks = [p for p in r.primitives if isinstance(p, ClosedDisk)]
    if len(disks) >= 3:
        for a, b, c in combinations(disks, 3):
            if (
                prim_intersects(a, b)
                and prim_intersects(a, c)
                and prim_intersects(b, c)
                and _three_circles_concurrent(a, b, c)
            ):
                raise UnsupportedConfiguration("three disk boundaries meet in one point", disks=[a, b, c])
    return OpenRegion(tuple(disks))


def union_with_open(closed: SpectralRegion, opened: OpenRegion) -> SpectralRegion | None:
    """``closed ∪ opened`` when it is closed, None when it is provably not closed."""
    if opened.is_empty():
        return closed
    missing = [d for d in opened.closures if not primitive_in_region(d.circle, closed)]
    if not missing:
        return canonicalize(closed.primitives + opened.closures)
    pairwise_apart = all(not prim_intersects(d, e) for d, e in combinations(opened.closures, 2))
    if pairwise_apart:
        return None
    raise UnsupportedConfiguration("cannot decide closedness of a union with overlapping open disks")


# ---------------------------------------------------------------- boundary


def _trim_segment(s: Segment, disks: Sequence[ClosedDisk]) -> list[Primitive]:
    """``s`` minus the open disks, as closed pieces."""
    cuts: list[tuple[Fraction, Fraction]] = []
    for d in disks:
        if meets_open_disk(s, d):
            roots = seg_circle_params(s, d.xy, d.radius)
            assert roots is not None
            cuts.append(roots)
    if not cuts:
        return [s]
    pieces: list[Primitive] = []
    start = Fraction(0)
    for lo, hi in sorted(cuts) + [(Fraction(2), Fraction(2))]:
        end = min(lo, Fraction(1))
        if start < end:
            pieces.append(Segment(_scalar(lerp(s.pa, s.pb, start)), _scalar(lerp(s.pa, s.pb, end))))
        elif start == end and start <= 1:
            pieces.append(Point(_scalar(lerp(s.pa, s.pb, start))))
        start = max(start, hi)
        if start > 1:
            break
    return pieces


def boundary(r: SpectralRegion) -> SpectralRegion:
    disks = [p for p in r.primitives if isinstance(p, ClosedDisk)]
    out: list[Primitive] = []
    for p in r.primitives:
        if isinstance(p, Point):
            out.append(p)
        elif isinstance(p, Segment):
            out.extend(_trim_segment(p, disks))
        else:
            ring = p.circle if isinstance(p, ClosedDisk) else p
            for d in disks:
                if d is not p and meets_open_disk(ring, d):
                    raise UnsupportedConfiguration(
                        "boundary would need an arc of a circle", circle=ring, disk=d
                    )
            out.append(ring)
    return canonicalize(out)


# ---------------------------------------------------------------- difference


@dataclass(frozen=True)
class SymbolicDifference:
    """``minuend \\ subtrahend`` when the result is not a closed primitive union.

    Only membership, emptiness and (supported) closure queries are offered.
    """

    minuend: SpectralRegion
    subtrahend: SpectralRegion
    closed: bool = False

    def contains(self, z: ExactScalar | Pt) -> bool:
        return self.minuend.contains(z) and not self.subtrahend.contains(z)

    def is_empty(self) -> bool:
        return subset(self.minuend, self.subtrahend)

    def closure(self) -> SpectralRegion:
        kept: list[Primitive] = []
        for p in self.minuend.primitives:
            if primitive_in_region(p, self.subtrahend):
                continue
            meets = [q for q in self.subtrahend.primitives if prim_intersects(p, q)]
            if not meets:
                kept.append(p)
            elif isinstance(p, ClosedDisk) and not any(
                isinstance(q, ClosedDisk) and meets_open_disk(q, p) for q in meets
            ):
                # removing a nowhere-dense set leaves the closure of a disk unchanged
                kept.append(p)
            elif isinstance(p, (Segment, Circle)) and all(
                isinstance(x, Point) for q in meets for x in prim_intersection(p, q)
            ):
                kept.append(p)
            else:
                raise UnsupportedConfiguration("closure of this difference is not expressible", primitive=p)
        return canonicalize(kept)

    def to_json(self) -> dict:
        return {"closed": False, "minuend": self.minuend.to_json(), "subtrahend": self.subtrahend.to_json()}


def difference(a: SpectralRegion, b: SpectralRegion) -> SpectralRegion | SymbolicDifference:
    """Exact ``a \\ b``.

    For a connected primitive ``P`` and closed ``b``, ``P \\ b`` is closed only
    when ``P ⊆ b`` or ``P ∩ b = ∅``; otherwise a symbolic value is returned.
    """
    kept: list[Primitive] = []
    for p in a.primitives:
        if not any(prim_intersects(p, q) for q in b.primitives):
            kept.append(p)
        elif not primitive_in_region(p, b):
            return SymbolicDifference(a, b)
    return SpectralRegion(tuple(kept), _trusted=True)


def region(*prims: Primitive) -> SpectralRegion:
    return canonicalize(prims)
