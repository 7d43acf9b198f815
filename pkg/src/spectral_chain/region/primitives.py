"""Planar primitives and their exact pairwise predicates.

Every predicate is decided with rational arithmetic on coordinates and
squared distances. Where an answer would need an irrational intersection
point, the functions raise UnsupportedConfiguration instead of guessing.

Extension point: pairwise behaviour is looked up in the ``_SUBSET``,
``_INTERSECTS`` and ``_INTERSECTION`` tables keyed by ``(kind, kind)``. A new
primitive kind (an annulus, a polygon) registers its rows there, together
with ``contains_point`` and ``probe_points``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Iterator, Union

from ..errors import InvalidInput, UnsupportedConfiguration
from ..scalar import ExactScalar, parse_fraction

Pt = tuple[Fraction, Fraction]


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _radius(value: object) -> Fraction:
    if isinstance(value, ExactScalar):
        if not value.is_real():
            raise InvalidInput("radius must be real")
        value = value.re
    r = parse_fraction(value) if not isinstance(value, Fraction) else value
    if r <= 0:
        raise InvalidInput(f"radius must be positive, got {r}")
    return r


def _pt(z: ExactScalar) -> Pt:
    return (z.re, z.im)


def _scalar(p: Pt) -> ExactScalar:
    return ExactScalar(p[0], p[1])


def dist2(p: Pt, q: Pt) -> Fraction:
    dx, dy = p[0] - q[0], p[1] - q[1]
    return dx * dx + dy * dy


def cross(o: Pt, a: Pt, b: Pt) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dot(o: Pt, a: Pt, b: Pt) -> Fraction:
    return (a[0] - o[0]) * (b[0] - o[0]) + (a[1] - o[1]) * (b[1] - o[1])


def lerp(a: Pt, b: Pt, t: Fraction) -> Pt:
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


@dataclass(frozen=True)
class Point:
    center: ExactScalar
    kind = "point"
    rank = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", ExactScalar.coerce(self.center))

    @property
    def xy(self) -> Pt:
        return _pt(self.center)

    def sort_key(self) -> tuple:
        return (0, self.center.re, self.center.im)

    def to_json(self) -> dict:
        return {"kind": "point", "center": self.center.to_json()}


@dataclass(frozen=True)
class Segment:
    a: ExactScalar
    b: ExactScalar
    kind = "segment"
    rank = 1

    def __post_init__(self) -> None:
        a, b = ExactScalar.coerce(self.a), ExactScalar.coerce(self.b)
        if a == b:
            raise InvalidInput("segment endpoints must be distinct")
        if b.sort_key() < a.sort_key():
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def pa(self) -> Pt:
        return _pt(self.a)

    @property
    def pb(self) -> Pt:
        return _pt(self.b)

    def sort_key(self) -> tuple:
        return (1, self.a.re, self.a.im, self.b.re, self.b.im)

    def to_json(self) -> dict:
        return {"kind": "segment", "endpoints": [self.a.to_json(), self.b.to_json()]}


@dataclass(frozen=True)
class Circle:
    center: ExactScalar
    radius: Fraction
    kind = "circle"
    rank = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", ExactScalar.coerce(self.center))
        object.__setattr__(self, "radius", _radius(self.radius))

    @property
    def xy(self) -> Pt:
        return _pt(self.center)

    def sort_key(self) -> tuple:
        return (2, self.center.re, self.center.im, self.radius)

    def to_json(self) -> dict:
        return {"kind": "circle", "center": self.center.to_json(), "radius": str(self.radius)}


@dataclass(frozen=True)
class ClosedDisk:
    center: ExactScalar
    radius: Fraction
    kind = "disk"
    rank = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", ExactScalar.coerce(self.center))
        object.__setattr__(self, "radius", _radius(self.radius))

    @property
    def xy(self) -> Pt:
        return _pt(self.center)

    @property
    def circle(self) -> Circle:
        return Circle(self.center, self.radius)

    def sort_key(self) -> tuple:
        return (3, self.center.re, self.center.im, self.radius)

    def to_json(self) -> dict:
        return {"kind": "disk", "center": self.center.to_json(), "radius": str(self.radius)}


Primitive = Union[Point, Segment, Circle, ClosedDisk]


def primitive_from_json(data: object) -> Primitive:
    if not isinstance(data, dict) or "kind" not in data:
        raise InvalidInput(f"primitive must be an object with a 'kind': {data!r}")
    kind = data["kind"]
    try:
        if kind == "point":
            return Point(ExactScalar.from_json(data["center"]))
        if kind == "segment":
            a, b = data["endpoints"]
            return Segment(ExactScalar.from_json(a), ExactScalar.from_json(b))
        if kind == "circle":
            return Circle(ExactScalar.from_json(data["center"]), parse_fraction(data["radius"]))
        if kind == "disk":
            return ClosedDisk(ExactScalar.from_json(data["center"]), parse_fraction(data["radius"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed {kind} primitive: {data!r}") from exc
    raise InvalidInput(f"unknown primitive kind {kind!r}")


def filled(p: Primitive) -> Primitive:
    """Fill a circle to its disk; other primitives are their own hull."""
    return ClosedDisk(p.center, p.radius) if isinstance(p, Circle) else p


# ---------------------------------------------------------------- membership


def contains_point(p: Primitive, z: Pt) -> bool:
    if isinstance(p, Point):
        return p.xy == z
    if isinstance(p, Segment):
        a, b = p.pa, p.pb
        return cross(a, b, z) == 0 and dot(z, a, b) <= 0
    if isinstance(p, Circle):
        return dist2(p.xy, z) == p.radius * p.radius
    return dist2(p.xy, z) <= p.radius * p.radius


def in_open_disk(d: ClosedDisk | Circle, z: Pt) -> bool:
    return dist2(d.xy, z) < d.radius * d.radius


def seg_min_dist2(s: Segment, c: Pt) -> Fraction:
    a, b = s.pa, s.pb
    ab2 = dist2(a, b)
    t = dot(a, c, b) / ab2
    t = min(max(t, Fraction(0)), Fraction(1))
    return dist2(lerp(a, b, t), c)


def seg_max_dist2(s: Segment, c: Pt) -> Fraction:
    return max(dist2(s.pa, c), dist2(s.pb, c))


def collinear(s: Segment, t: Segment) -> bool:
    return cross(s.pa, s.pb, t.pa) == 0 and cross(s.pa, s.pb, t.pb) == 0


def _param(s: Segment, z: Pt) -> Fraction:
    """Parameter of a point on the line of ``s`` (0 at ``a``, 1 at ``b``)."""
    return dot(s.pa, z, s.pb) / dist2(s.pa, s.pb)


def seg_circle_params(s: Segment, c: Pt, r: Fraction) -> tuple[Fraction, Fraction] | None:
    """Rational roots ``t1 <= t2`` of ``|a + t(b-a) - c|^2 = r^2``.

    Returns None when the line misses the circle; raises when roots are irrational.
    """
    a, b = s.pa, s.pb
    A = dist2(a, b)
    B = -2 * dot(a, c, b)  # 2 (a - c).(b - a)
    C = dist2(a, c) - r * r
    disc = B * B - 4 * A * C
    if disc < 0:
        return None
    root = rational_sqrt(disc)
    if root is None:
        raise UnsupportedConfiguration(
            "segment meets a circle at irrational points", segment=s, center=_scalar(c), radius=str(r)
        )
    return ((-B - root) / (2 * A), (-B + root) / (2 * A))


# ---------------------------------------------------------------- subset


def _sub_point(p: Point, q: Primitive) -> bool:
    return contains_point(q, p.xy)


def _sub_segment(p: Segment, q: Primitive) -> bool:
    if isinstance(q, (Point, Circle)):
        return False
    # segments and disks are convex
    return contains_point(q, p.pa) and contains_point(q, p.pb)


def _sub_round(p: Circle | ClosedDisk, q: Primitive) -> bool:
    if isinstance(q, ClosedDisk):
        if p.radius > q.radius:
            return False
        return dist2(p.xy, q.xy) <= (q.radius - p.radius) ** 2
    if isinstance(q, Circle) and isinstance(p, Circle):
        return p == q
    return False


def prim_subset(p: Primitive, q: Primitive) -> bool:
    """Exact ``p ⊆ q`` for single primitives."""
    return _SUBSET[p.kind](p, q)


_SUBSET: dict[str, Callable[..., bool]] = {
    "point": _sub_point,
    "segment": _sub_segment,
    "circle": _sub_round,
    "disk": _sub_round,
}


# ---------------------------------------------------------------- intersects


def _meet_seg_seg(s: Segment, t: Segment) -> bool:
    a, b, c, d = s.pa, s.pb, t.pa, t.pb
    d1, d2 = cross(a, b, c), cross(a, b, d)
    d3, d4 = cross(c, d, a), cross(c, d, b)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return (
        contains_point(s, c) or contains_point(s, d) or contains_point(t, a) or contains_point(t, b)
    )


def _meet_seg_circle(s: Segment, c: Circle) -> bool:
    r2 = c.radius * c.radius
    return seg_min_dist2(s, c.xy) <= r2 <= seg_max_dist2(s, c.xy)


def _meet_seg_disk(s: Segment, d: ClosedDisk) -> bool:
    return seg_min_dist2(s, d.xy) <= d.radius * d.radius


def _meet_circle_circle(c: Circle, e: Circle) -> bool:
    d2 = dist2(c.xy, e.xy)
    return (c.radius - e.radius) ** 2 <= d2 <= (c.radius + e.radius) ** 2


def _meet_circle_disk(c: Circle, d: ClosedDisk) -> bool:
    d2 = dist2(c.xy, d.xy)
    if d2 > (c.radius + d.radius) ** 2:
        return False
    # the circle strictly surrounds the disk
    return not (c.radius > d.radius and d2 < (c.radius - d.radius) ** 2)


def _meet_disk_disk(d: ClosedDisk, e: ClosedDisk) -> bool:
    return dist2(d.xy, e.xy) <= (d.radius + e.radius) ** 2


def _flip(fn: Callable[[Primitive, Primitive], object]) -> Callable[[Primitive, Primitive], object]:
    return lambda p, q: fn(q, p)


_INTERSECTS: dict[tuple[str, str], Callable[..., bool]] = {
    ("segment", "segment"): _meet_seg_seg,
    ("segment", "circle"): _meet_seg_circle,
    ("segment", "disk"): _meet_seg_disk,
    ("circle", "circle"): _meet_circle_circle,
    ("circle", "disk"): _meet_circle_disk,
    ("disk", "disk"): _meet_disk_disk,
}
for (_k1, _k2), _fn in list(_INTERSECTS.items()):
    if (_k2, _k1) not in _INTERSECTS:
        _INTERSECTS[(_k2, _k1)] = _flip(_fn)  # type: ignore[assignment]


def prim_intersects(p: Primitive, q: Primitive) -> bool:
    if isinstance(p, Point):
        return contains_point(q, p.xy)
    if isinstance(q, Point):
        return contains_point(p, q.xy)
    return _INTERSECTS[(p.kind, q.kind)](p, q)


def meets_open_disk(p: Primitive, d: ClosedDisk | Circle) -> bool:
    """Whether ``p`` meets the open disk bounded by ``d``."""
    c, r2 = d.xy, d.radius * d.radius
    if isinstance(p, Point):
        return dist2(p.xy, c) < r2
    if isinstance(p, Segment):
        return seg_min_dist2(p, c) < r2
    d2 = dist2(p.xy, c)
    if isinstance(p, ClosedDisk):
        return d2 < (p.radius + d.radius) ** 2
    # circle of radius rp: nearest point at distance |dist - rp|; need it < r
    rp = p.radius
    if d2 >= (rp + d.radius) ** 2:
        return False
    # |sqrt(d2) - rp| < r  <=>  d2 + rp^2 - r^2 < 2 rp sqrt(d2)
    lhs = d2 + rp * rp - r2
    return lhs < 0 or lhs * lhs < 4 * rp * rp * d2


def inside_closed_exterior(p: Primitive, d: ClosedDisk | Circle) -> bool:
    """``p`` avoids the open disk bounded by ``d``."""
    return not meets_open_disk(p, d)


# ---------------------------------------------------------------- intersection


def _points(*pts: Pt) -> list[Primitive]:
    return [Point(_scalar(z)) for z in dict.fromkeys(pts)]


def _segment_piece(s: Segment, t0: Fraction, t1: Fraction) -> list[Primitive]:
    t0, t1 = max(t0, Fraction(0)), min(t1, Fraction(1))
    if t0 > t1:
        return []
    p0, p1 = lerp(s.pa, s.pb, t0), lerp(s.pa, s.pb, t1)
    if t0 == t1:
        return _points(p0)
    return [Segment(_scalar(p0), _scalar(p1))]


def _cap_seg_seg(s: Segment, t: Segment) -> list[Primitive]:
    if collinear(s, t):
        u0, u1 = sorted((_param(s, t.pa), _param(s, t.pb)))
        return _segment_piece(s, max(u0, Fraction(0)), min(u1, Fraction(1)))
    a, b, c, d = s.pa, s.pb, t.pa, t.pb
    den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
    u = ((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0])) / den
    return _points(lerp(a, b, u))


def _cap_seg_circle(s: Segment, c: Circle) -> list[Primitive]:
    roots = seg_circle_params(s, c.xy, c.radius)
    if roots is None:
        return []
    return _points(*(lerp(s.pa, s.pb, t) for t in roots if 0 <= t <= 1))


def _cap_seg_disk(s: Segment, d: ClosedDisk) -> list[Primitive]:
    roots = seg_circle_params(s, d.xy, d.radius)
    if roots is None:
        return []
    return _segment_piece(s, roots[0], roots[1])


def _tangent_point(c1: Pt, r1: Fraction, c2: Pt, r2: Fraction, internal: bool) -> Pt:
    f = r1 / (r1 - r2) if internal else r1 / (r1 + r2)
    return (c1[0] + f * (c2[0] - c1[0]), c1[1] + f * (c2[1] - c1[1]))


def _circle_circle_points(c1: Pt, r1: Fraction, c2: Pt, r2: Fraction) -> list[Pt]:
    d2 = dist2(c1, c2)
    if d2 == (r1 + r2) ** 2:
        return [_tangent_point(c1, r1, c2, r2, internal=False)]
    if d2 == (r1 - r2) ** 2:
        return [_tangent_point(c1, r1, c2, r2, internal=True)]
    # along the center line at a fraction alpha of d, offset by beta of the normal
    alpha = (d2 + r1 * r1 - r2 * r2) / (2 * d2)
    beta = rational_sqrt(r1 * r1 / d2 - alpha * alpha)
    if beta is None:
        raise UnsupportedConfiguration(
            "circles cross at irrational points", centers=[_scalar(c1), _scalar(c2)], radii=[str(r1), str(r2)]
        )
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    mx, my = c1[0] + alpha * dx, c1[1] + alpha * dy
    return [(mx - beta * dy, my + beta * dx), (mx + beta * dy, my - beta * dx)]


def _cap_circle_circle(c: Circle, e: Circle) -> list[Primitive]:
    return _points(*_circle_circle_points(c.xy, c.radius, e.xy, e.radius))


def _cap_circle_disk(c: Circle, d: ClosedDisk) -> list[Primitive]:
    d2 = dist2(c.xy, d.xy)
    if d2 == (c.radius + d.radius) ** 2 or (c.radius > d.radius and d2 == (c.radius - d.radius) ** 2):
        return _points(*_circle_circle_points(c.xy, c.radius, d.xy, d.radius))
    raise UnsupportedConfiguration("circle crosses a disk along an arc", circle=c, disk=d)


def _cap_disk_disk(d: ClosedDisk, e: ClosedDisk) -> list[Primitive]:
    if dist2(d.xy, e.xy) == (d.radius + e.radius) ** 2:
        return _points(*_circle_circle_points(d.xy, d.radius, e.xy, e.radius))
    raise UnsupportedConfiguration("disks overlap in a lens", disks=[d, e])


_INTERSECTION: dict[tuple[str, str], Callable[..., list[Primitive]]] = {
    ("segment", "segment"): _cap_seg_seg,
    ("segment", "circle"): _cap_seg_circle,
    ("segment", "disk"): _cap_seg_disk,
    ("circle", "circle"): _cap_circle_circle,
    ("circle", "disk"): _cap_circle_disk,
    ("disk", "disk"): _cap_disk_disk,
}
for (_k1, _k2), _fn2 in list(_INTERSECTION.items()):
    if (_k2, _k1) not in _INTERSECTION:
        _INTERSECTION[(_k2, _k1)] = _flip(_fn2)  # type: ignore[assignment]


def prim_intersection(p: Primitive, q: Primitive) -> list[Primitive]:
    """``p ∩ q`` as a list of primitives (not canonicalized)."""
    if prim_subset(p, q):
        return [p]
    if prim_subset(q, p):
        return [q]
    if not prim_intersects(p, q):
        return []
    return _INTERSECTION[(p.kind, q.kind)](p, q)


# ---------------------------------------------------------------- probes

_PARAMS = sorted(
    {Fraction(k, m) for m in range(1, 9) for k in range(-3 * m, 3 * m + 1)},
    key=lambda t: (t.denominator, abs(t.numerator), t),
)


def circle_probe_points(c: Pt, r: Fraction) -> Iterator[Pt]:
    """Rational points on a circle via ``((1-t^2)/(1+t^2), 2t/(1+t^2))``."""
    yield (c[0] - r, c[1])
    for t in _PARAMS:
        s = 1 + t * t
        yield (c[0] + r * (1 - t * t) / s, c[1] + r * 2 * t / s)


def probe_points(p: Primitive) -> Iterator[Pt]:
    """Deterministic rational sample points of ``p``."""
    if isinstance(p, Point):
        yield p.xy
    elif isinstance(p, Segment):
        for m in (1, 2, 3, 4, 5, 7, 8, 11, 16, 32):
            for k in range(m + 1):
                yield lerp(p.pa, p.pb, Fraction(k, m))
    elif isinstance(p, Circle):
        yield from circle_probe_points(p.xy, p.radius)
    else:
        yield p.xy
        for frac in (Fraction(1), Fraction(1, 2), Fraction(3, 4), Fraction(1, 4), Fraction(7, 8), Fraction(15, 16)):
            yield from circle_probe_points(p.xy, p.radius * frac)


def prim_contains_scalar(p: Primitive, z: ExactScalar) -> bool:
    return contains_point(p, _pt(z))
