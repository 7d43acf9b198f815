"""Memoized region operations used by the engine.

Regions are immutable and hashable, so guard and fragment evaluations repeated
across fixed-point sweeps are served from these caches.
"""

from __future__ import annotations

from functools import lru_cache

from .. import region as R

_SIZE = 4096


@lru_cache(maxsize=_SIZE)
def boundary(r: R.SpectralRegion) -> R.SpectralRegion:
    return R.boundary(r)


@lru_cache(maxsize=_SIZE)
def accumulation(r: R.SpectralRegion) -> R.SpectralRegion:
    return R.accumulation(r)


@lru_cache(maxsize=_SIZE)
def interior(r: R.SpectralRegion) -> R.OpenRegion:
    return R.interior(r)


@lru_cache(maxsize=_SIZE)
def subset(a: R.SpectralRegion, b: R.SpectralRegion) -> bool:
    return R.subset(a, b)


@lru_cache(maxsize=_SIZE)
def union(a: R.SpectralRegion, b: R.SpectralRegion) -> R.SpectralRegion:
    return R.union(a, b)


@lru_cache(maxsize=_SIZE)
def intersection(a: R.SpectralRegion, b: R.SpectralRegion) -> R.SpectralRegion:
    return R.intersection(a, b)


@lru_cache(maxsize=_SIZE)
def connected_hull(r: R.SpectralRegion) -> R.HullReport:
    return R.connected_hull(r)


def hull(r: R.SpectralRegion) -> R.SpectralRegion:
    return connected_hull(r).hull


def has_no_holes(r: R.SpectralRegion) -> bool:
    return not connected_hull(r).holes


@lru_cache(maxsize=_SIZE)
def is_line_contained(r: R.SpectralRegion) -> bool:
    return R.is_line_contained(r)


@lru_cache(maxsize=_SIZE)
def difference_closure(a: R.SpectralRegion, b: R.SpectralRegion) -> R.SpectralRegion:
    """Closure of ``a \\ b``."""
    d = R.difference(a, b)
    return d if isinstance(d, R.SpectralRegion) else d.closure()


def union_all(regions) -> R.SpectralRegion:
    out = R.SpectralRegion.empty()
    for r in regions:
        out = union(out, r)
    return out
